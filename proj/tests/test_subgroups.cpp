#include <set>

#include <doctest.h>

#include "coxlab/diagram.hpp"
#include "coxlab/errors.hpp"
#include "coxlab/subgroups.hpp"
#include "support.hpp"

using namespace coxlab;
using namespace coxlab::test;

namespace {

std::vector<Wall> walls(CoxeterGroup& g, std::initializer_list<std::string_view> ws) {
  std::vector<Wall> out;
  for (auto w : ws) out.push_back(wall(g, w));
  return out;
}

std::vector<std::string> generator_words(const std::vector<Wall>& ws) {
  std::vector<std::string> out;
  for (const auto& w : ws) out.push_back(CoxeterGroup::format(w.reflection));
  return out;
}

std::vector<Order> sig(std::initializer_list<unsigned> codes) {
  std::vector<Order> out;
  for (unsigned c : codes) out.push_back(Order::from_code(c));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("canonical generators by descent") {
  CoxeterGroup a1(affine_a1());
  CHECK(generator_words(canonical_generators(a1, walls(a1, {"1", "2", "1 2 1"}))) ==
        std::vector<std::string>{"1", "2"});
  CHECK(generator_words(canonical_generators(a1, walls(a1, {"1", "2 1 2"}))) ==
        std::vector<std::string>{"1", "2 1 2"});
  CHECK(generator_words(canonical_generators(a1, walls(a1, {"1"}))) == std::vector<std::string>{"1"});
  CHECK_THROWS_AS(canonical_generators(a1, {}), InputError);

  CoxeterGroup g(tri(2, 3, 0));
  // s1 s2 s1 = s2 collapses by normal form
  CHECK(generator_words(canonical_generators(g, walls(g, {"2", "3", "1 3 1", "1 2 1"}))) ==
        std::vector<std::string>{"2", "3", "1 3 1"});
}

TEST_CASE("canonical sets admit no descent") {
  CoxeterGroup g(tri(2, 3, 7));
  const auto refl = g.enumerate_reflections(7);
  for (std::size_t i = 0; i + 2 < refl.size(); i += 3) {
    const auto canon = canonical_generators(g, {refl[i], refl[i + 1], refl[i + 2]});
    for (const auto& a : canon)
      for (const auto& b : canon)
        if (!(a == b)) CHECK(g.conjugate(a.reflection, b.reflection).length() >= b.reflection.length());
    // same subgroup: each original lies in <canon>
    for (std::size_t k = i; k < i + 3; ++k) CHECK(contains_reflection_checked(g, canon, refl[k]));
  }
}

TEST_CASE("reflection membership") {
  CoxeterGroup g(tri(2, 3, 0));
  const auto s = walls(g, {"2", "3", "1 3 1"});
  CHECK(contains_reflection(g, s, wall(g, "1 2 1")));
  CHECK_FALSE(contains_reflection(g, s, wall(g, "1")));
  CHECK(contains_reflection_by_enumeration(g, s, wall(g, "1 2 1"), 10000));
  CHECK_FALSE(contains_reflection_by_enumeration(g, s, wall(g, "1"), 10000));
  CHECK(contains_reflection(g, walls(g, {"1"}), wall(g, "1")));
}

TEST_CASE("descent and enumeration agree on every short reflection") {
  struct Case {
    CoxeterMatrix m;
    std::vector<std::string> gens;
  };
  const std::vector<Case> cases{
      {tri(2, 3, 0), {"2", "3", "1 3 1"}},
      {tri(2, 3, 0), {"1", "3 1 3", "2 3 2"}},
      {tri(2, 3, 0), {"1 3 1", "3", "2 3 2"}},
      {tri(3, 3, 3), {"1", "2", "3 1 2 1 3"}},
      {tri(2, 4, 4), {"1", "2", "3 1 3"}},
      {tri(2, 3, 7), {"1", "2"}},
      {tri(0, 0, 0), {"1", "2 3 2"}},
      {affine_a1(), {"1", "2 1 2"}},
  };
  for (const auto& c : cases) {
    CoxeterGroup g(c.m);
    std::vector<Wall> r;
    for (const auto& w : c.gens) r.push_back(wall(g, w));
    const auto canon = canonical_generators(g, r);
    for (const auto& t : g.enumerate_reflections(9)) CHECK_NOTHROW(contains_reflection_checked(g, canon, t));
  }
}

TEST_CASE("fundamental polytope and induced matrix of the index-2 subgroup") {
  CoxeterGroup g(tri(2, 3, 0));
  const auto h = make_subgroup(g, walls(g, {"2", "3", "1 3 1"}), 100);
  REQUIRE(h.index.has_value());
  CHECK(*h.index == 2);
  CHECK(words(h.polytope->chambers) == std::vector<std::string>{"e", "1"});
  CHECK(signature(h.induced) == sig({3, 3, 0}));
  CHECK(is_coxeter_polytope(g, *h.polytope));
  // facet walls are the canonical generators
  std::set<Root> facet_roots, gen_roots;
  for (const auto& [w, side] : h.polytope->facets) facet_roots.insert(w.root);
  for (const auto& w : h.generators) gen_roots.insert(w.root);
  CHECK(facet_roots == gen_roots);

  const auto all = make_subgroup(g, walls(g, {"1", "2", "3"}), 100);
  CHECK(*all.index == 1);
  CHECK(all.induced == g.matrix());

  const auto pair = make_subgroup(g, walls(g, {"1", "2"}), 50);
  CHECK_FALSE(pair.index.has_value());
  CHECK(pair.induced == g.matrix().restrict_to(0b011u));
}

TEST_CASE("affine A1 subgroup of index two") {
  CoxeterGroup g(affine_a1());
  const auto h = make_subgroup(g, walls(g, {"1", "2 1 2"}), 100);
  CHECK(*h.index == 2);
  CHECK(words(h.polytope->chambers) == std::vector<std::string>{"e", "2"});
  CHECK(h.induced(0, 1).is_infinite());
  const auto r = verify_rank_theorem(g, h);
  CHECK(r.applicable);
  CHECK(r.ok());
}

TEST_CASE("rank theorem report") {
  CoxeterGroup g(tri(2, 3, 0));
  const auto h = make_subgroup(g, walls(g, {"2", "3", "1 3 1"}), 100);
  const auto r = verify_rank_theorem(g, h);
  CHECK(r.applicable);
  CHECK(r.finite_index);
  CHECK(r.generators_ok);
  CHECK(r.facets_ok);
  CHECK(r.span_rank == 3);

  CoxeterGroup d(remark_decomposable());
  const auto k = make_subgroup(d, walls(d, {"1", "2"}), 100);
  CHECK(*k.index == 2);
  CHECK(k.rank() == 2);
  const auto rk = verify_rank_theorem(d, k);
  CHECK_FALSE(rk.applicable);
  CHECK_FALSE(rk.generators_ok);
  CHECK(rk.span_rank == 2);
  CHECK(rk.ok());  // skipped by precondition, not a violation
}

TEST_CASE("nerve deletion") {
  const auto m = tri(2, 3, 0);
  auto w1 = nerve_deletion_witness(tri(3, 3, 0), m);
  REQUIRE(w1.has_value());
  auto w2 = nerve_deletion_witness(tri(2, 0, 0), m);
  REQUIRE(w2.has_value());
  CHECK(nerve_deletion_witness(tri(0, 0, 0), m).has_value());
  // three edges cannot fit into two
  CHECK_FALSE(nerve_deletion_witness(tri(3, 3, 3), m).has_value());
  CHECK_THROWS_AS(nerve_deletion_witness(affine_a1(), m), InputError);

  // the witness maps simplices to simplices
  const Nerve small(tri(2, 0, 0)), big(m);
  for (GeneratorSet s : small.simplices()) {
    GeneratorSet image = 0;
    for (int i = 0; i < 3; ++i)
      if (s >> i & 1u) image |= GeneratorSet{1} << (*w2)[i];
    CHECK(big.contains(image));
  }
}

TEST_CASE("commutation conditions") {
  const auto c = comm_condition(tri(2, 3, 0));
  CHECK(c.both());
  CHECK(*c.via1 == 0);
  CHECK(*c.via2 == 1);
  CHECK(std::string(comm_condition(tri(0, 0, 0)).name()) == "none");
  CHECK(comm_condition(tri(2, 5, 5)).both());
  CHECK(std::string(comm_condition(tri(3, 3, 3)).name()) == "holds_via_2");
  CHECK(std::string(comm_condition(tri(2, 0, 0)).name()) == "holds_via_1");
}

TEST_CASE("index-two construction for even or infinite exponents") {
  for (const auto& m : {tri(2, 3, 0), tri(2, 4, 4), tri(2, 0, 0), tri(2, 3, 6)}) {
    CoxeterGroup g(m);
    const auto check = index_two_construction(g);
    CHECK(check.applicable);
    CHECK(check.canonical);
    CHECK(check.index == std::optional<std::size_t>(2));
  }
  CoxeterGroup odd(tri(2, 3, 7));  // s1 meets s3 with exponent 7, s3 meets both
  CHECK_FALSE(index_two_construction(odd).applicable);
}

TEST_CASE("equal-rank search on (2,3,inf)") {
  CoxeterGroup g(tri(2, 3, 0));
  const auto found = search_equal_rank_subgroups(g, 6);
  std::vector<std::size_t> indices;
  for (const auto& h : found.subgroups) {
    indices.push_back(*h.index);
    CHECK(h.rank() == 3);
    CHECK(is_coxeter_polytope(g, *h.polytope));
    CHECK(nerve_deletion_witness(h.induced, g.matrix()).has_value());
  }
  // one class per index 1, 2, 3, 4 and two classes of index 6
  CHECK(indices == std::vector<std::size_t>{1, 2, 3, 4, 6, 6});
  CHECK(signature(found.subgroups[1].induced) == sig({3, 3, 0}));
  CHECK(signature(found.subgroups[2].induced) == sig({2, 0, 0}));
  CHECK(signature(found.subgroups[3].induced) == sig({3, 0, 0}));
  CHECK(signature(found.subgroups[4].induced) == sig({0, 0, 0}));
  CHECK(signature(found.subgroups[5].induced) == sig({0, 0, 0}));
  CHECK(Nerve(found.subgroups[1].induced).count_of_size(2) == 2);
  CHECK(Nerve(found.subgroups[2].induced).count_of_size(2) == 1);
  CHECK(Nerve(found.subgroups[4].induced).count_of_size(2) == 0);
}

TEST_CASE("index multiplies along a chain of subgroups") {
  CoxeterGroup g(tri(2, 3, 0));
  const auto found = search_equal_rank_subgroups(g, 6);
  auto conjugate = [&](const ReflectionSubgroup& h, const Element& x) {
    std::vector<Wall> out;
    for (const auto& w : h.generators) out.push_back(*g.as_reflection(g.conjugate(x, w.reflection)));
    return out;
  };
  // The chambers reachable from x without crossing a mirror of <gens>.
  auto tile = [&](const std::vector<Wall>& gens, const Element& x) {
    std::vector<Element> out{x};
    for (std::size_t head = 0; head < out.size(); ++head)
      for (Generator s = 0; s < g.rank(); ++s) {
        const Element y = g.times_generator(out[head], s);
        if (std::find(out.begin(), out.end(), y) != out.end()) continue;
        if (contains_reflection(g, gens, g.panel_wall(out[head], s))) continue;
        out.push_back(y);
      }
    std::sort(out.begin(), out.end());
    return out;
  };

  std::set<std::pair<std::size_t, std::size_t>> chains;
  for (const auto& k : found.subgroups)
    for (const auto& h : found.subgroups) {
      if (*h.index <= 1 || *h.index >= *k.index) continue;
      for (const auto& x : h.polytope->chambers) {
        const auto hx = conjugate(h, x);  // x H x^-1, still in the list's conjugacy class
        const bool inside = std::all_of(k.generators.begin(), k.generators.end(), [&](const Wall& w) {
          return contains_reflection_checked(g, canonical_generators(g, hx), w);
        });
        if (!inside) continue;
        // P_K is tiled by H-tiles of size [G:H]
        const auto canon = canonical_generators(g, hx);
        std::set<Element> covered;
        std::size_t tiles = 0;
        for (const auto& y : k.polytope->chambers) {
          if (covered.count(y)) continue;
          const auto t = tile(canon, y);
          CHECK(t.size() == *h.index);
          for (const auto& z : t) {
            CHECK(k.polytope->contains(z));
            covered.insert(z);
          }
          ++tiles;
        }
        CHECK(tiles * *h.index == *k.index);
        chains.emplace(*h.index, *k.index);
      }
    }
  // (inf,inf,inf) of index 6 sits inside (2,inf,inf) of index 3: 6 = 3 * 2
  CHECK(chains.count({3, 6}) == 1);
  // the index-2 subgroup is normal and holds only conjugates of s2 and s3,
  // while every ideal triangle has a side in the class of s1
  CHECK(chains.count({2, 6}) == 0);
}

TEST_CASE("(2,5,5) has no proper equal-rank subgroup up to 8 chambers") {
  CoxeterGroup g(tri(2, 5, 5));
  const auto found = search_equal_rank_subgroups(g, 8);
  REQUIRE(found.subgroups.size() == 1);
  CHECK(*found.subgroups[0].index == 1);
}
