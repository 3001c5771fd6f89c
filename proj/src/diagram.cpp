#include "coxlab/diagram.hpp"

#include <algorithm>
#include <bit>

namespace coxlab {

namespace {

bool is_edge(const CoxeterMatrix& m, int i, int j) {
  return i != j && (m(i, j).is_infinite() || m(i, j).value() >= 3);
}

std::vector<int> members(GeneratorSet s) {
  std::vector<int> out;
  for (int i = 0; s >> i; ++i)
    if (s >> i & 1u) out.push_back(i);
  return out;
}

}  // namespace

std::vector<DiagramComponent> components(const CoxeterMatrix& m, GeneratorSet subset) {
  std::vector<DiagramComponent> out;
  GeneratorSet seen = 0;
  for (int start : members(subset)) {
    if (seen >> start & 1u) continue;
    GeneratorSet comp = GeneratorSet{1} << start;
    std::vector<int> stack{start};
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : members(subset)) {
        if (!(comp >> w & 1u) && is_edge(m, v, w)) {
          comp |= GeneratorSet{1} << w;
          stack.push_back(w);
        }
      }
    }
    seen |= comp;
    out.push_back({comp, finite_type(m, comp)});
  }
  return out;
}

std::vector<DiagramComponent> components(const CoxeterMatrix& m) {
  return components(m, m.all_generators());
}

bool is_indecomposable(const CoxeterMatrix& m) { return components(m).size() == 1; }

std::optional<std::string> finite_type(const CoxeterMatrix& m, GeneratorSet subset) {
  const auto v = members(subset);
  const int n = static_cast<int>(v.size());
  if (n == 0) return std::nullopt;
  if (n == 1) return "A1";

  int edges = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const Order& o = m(v[a], v[b]);
      if (o.is_infinite()) return std::nullopt;
      if (o.value() >= 3) ++edges;
    }
  // Connected finite diagrams are trees.
  if (edges != n - 1) return std::nullopt;

  if (n == 2) {
    const auto k = m(v[0], v[1]).value();
    if (k == 3) return "A2";
    if (k == 4) return "B2";
    return "I2(" + std::to_string(k) + ")";
  }

  std::vector<std::vector<int>> adj(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (is_edge(m, v[a], v[b])) {
        if (m(v[a], v[b]).value() > 5) return std::nullopt;
        adj[a].push_back(b);
      }

  std::vector<int> branch;
  for (int a = 0; a < n; ++a) {
    if (adj[a].size() > 3) return std::nullopt;
    if (adj[a].size() == 3) branch.push_back(a);
  }
  if (branch.size() > 1) return std::nullopt;

  if (branch.size() == 1) {
    const int c = branch[0];
    std::vector<int> arms;
    for (int first : adj[c]) {
      int len = 0, prev = c, cur = first;
      while (true) {
        ++len;
        if (m(v[prev], v[cur]).value() != 3) return std::nullopt;
        int next = -1;
        for (int w : adj[cur])
          if (w != prev) next = w;
        if (next < 0) break;
        prev = cur;
        cur = next;
      }
      arms.push_back(len);
    }
    std::sort(arms.begin(), arms.end());
    if (arms[0] != 1) return std::nullopt;
    if (arms[1] == 1) return "D" + std::to_string(n);
    if (arms[1] == 2 && arms[2] <= 4) return "E" + std::to_string(n);
    return std::nullopt;
  }

  // A path: read labels from one end to the other.
  int end = 0;
  while (adj[end].size() != 1) ++end;
  std::vector<std::uint32_t> labels;
  for (int prev = -1, cur = end;;) {
    int next = -1;
    for (int w : adj[cur])
      if (w != prev) next = w;
    if (next < 0) break;
    labels.push_back(m(v[cur], v[next]).value());
    prev = cur;
    cur = next;
  }
  const auto heavy = std::count_if(labels.begin(), labels.end(), [](auto k) { return k > 3; });
  if (heavy == 0) return "A" + std::to_string(n);
  if (heavy > 1) return std::nullopt;
  const auto pos = std::find_if(labels.begin(), labels.end(), [](auto k) { return k > 3; }) - labels.begin();
  const bool at_end = pos == 0 || pos == static_cast<long>(labels.size()) - 1;
  if (labels[pos] == 4) {
    if (at_end) return "B" + std::to_string(n);
    if (n == 4) return "F4";
    return std::nullopt;
  }
  // label 5
  if (at_end && (n == 3 || n == 4)) return "H" + std::to_string(n);
  return std::nullopt;
}

bool is_spherical(const CoxeterMatrix& m, GeneratorSet subset) {
  for (const auto& c : components(m, subset))
    if (!c.is_finite()) return false;
  return true;
}

bool is_finite(const CoxeterMatrix& m) { return is_spherical(m, m.all_generators()); }

Nerve::Nerve(const CoxeterMatrix& m) : rank_(m.rank()) {
  // Grow simplices by adding larger-index vertices; spherical sets are downward closed.
  std::vector<GeneratorSet> frontier;
  for (int i = 0; i < rank_; ++i) frontier.push_back(GeneratorSet{1} << i);
  while (!frontier.empty()) {
    simplices_.insert(simplices_.end(), frontier.begin(), frontier.end());
    std::vector<GeneratorSet> next;
    for (GeneratorSet s : frontier) {
      const int top = 31 - std::countl_zero(s);
      for (int j = top + 1; j < rank_; ++j) {
        GeneratorSet t = s | GeneratorSet{1} << j;
        if (is_spherical(m, t)) next.push_back(t);
      }
    }
    frontier = std::move(next);
  }
  std::sort(simplices_.begin(), simplices_.end(), [](GeneratorSet a, GeneratorSet b) {
    const int pa = std::popcount(a), pb = std::popcount(b);
    return pa != pb ? pa < pb : a < b;
  });
}

bool Nerve::contains(GeneratorSet s) const {
  if (s == 0) return false;
  return std::find(simplices_.begin(), simplices_.end(), s) != simplices_.end();
}

int Nerve::count_of_size(int k) const {
  return static_cast<int>(std::count_if(simplices_.begin(), simplices_.end(),
                                        [k](GeneratorSet s) { return std::popcount(s) == k; }));
}

int Nerve::dimension() const {
  int d = -1;
  for (auto s : simplices_) d = std::max(d, std::popcount(s) - 1);
  return d;
}

bool has_finite_index_standard(const CoxeterMatrix& m, GeneratorSet subset) {
  for (const auto& c : components(m))
    if (!c.is_finite() && (c.vertices & ~subset) != 0) return false;
  return true;
}

std::string format_set(const CoxeterMatrix& m, GeneratorSet subset) {
  std::string out = "{";
  bool first = true;
  for (int i : members(subset)) {
    if (!first) out += ",";
    out += m.label(i);
    first = false;
  }
  return out + "}";
}

}  // namespace coxlab
