#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

#include <doctest.h>

#include "coxlab/coxeter_matrix.hpp"
#include "coxlab/group.hpp"

namespace coxlab::test {

// Triangle matrix with 0 standing for infinity.
inline CoxeterMatrix tri(unsigned a, unsigned b, unsigned c) {
  return triangle_matrix(Order::from_code(a), Order::from_code(b), Order::from_code(c));
}

inline CoxeterMatrix affine_a1() { return parse_matrix("rank 2\n1 2 0\n"); }
inline CoxeterMatrix a_n(int n) {
  std::string text = "rank " + std::to_string(n) + "\n";
  for (int i = 1; i < n; ++i) text += std::to_string(i) + " " + std::to_string(i + 1) + " 3\n";
  return parse_matrix(text);
}
inline CoxeterMatrix h3() { return parse_matrix("rank 3\n1 2 5\n2 3 3\n"); }
inline CoxeterMatrix b3() { return parse_matrix("rank 3\n1 2 4\n2 3 3\n"); }
inline CoxeterMatrix i2(unsigned m) { return parse_matrix("rank 2\n1 2 " + std::to_string(m) + "\n"); }
// m12 = inf, s3 commuting with both.
inline CoxeterMatrix remark_decomposable() { return tri(0, 2, 2); }

inline Element el(CoxeterGroup& g, std::string_view w) { return g.normal_form(g.parse_word(w)); }

inline std::vector<Element> els(CoxeterGroup& g, std::initializer_list<std::string_view> ws) {
  std::vector<Element> out;
  for (auto w : ws) out.push_back(el(g, w));
  std::sort(out.begin(), out.end());
  return out;
}

inline Wall wall(CoxeterGroup& g, std::string_view w) {
  auto r = g.as_reflection(el(g, w));
  REQUIRE(r.has_value());
  return *r;
}

inline std::vector<std::string> words(const std::vector<Element>& es) {
  std::vector<std::string> out;
  for (const auto& e : es) out.push_back(CoxeterGroup::format(e));
  return out;
}

}  // namespace coxlab::test
