#include "coxlab/subgroups.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include "coxlab/diagram.hpp"
#include "coxlab/errors.hpp"

namespace coxlab {

namespace {

void sort_walls(std::vector<Wall>& walls) {
  std::sort(walls.begin(), walls.end(),
            [](const Wall& a, const Wall& b) { return a.reflection < b.reflection; });
  walls.erase(std::unique(walls.begin(), walls.end()), walls.end());
}

std::set<Root> roots_of(const std::vector<Wall>& walls) {
  std::set<Root> out;
  for (const auto& w : walls) out.insert(w.root);
  return out;
}

std::string format_walls(const std::vector<Wall>& walls) {
  std::string out;
  for (const auto& w : walls) {
    if (!out.empty()) out += "; ";
    out += CoxeterGroup::format(w.reflection);
  }
  return out;
}

}  // namespace

std::vector<Wall> canonical_generators(CoxeterGroup& g, std::vector<Wall> r, std::size_t max_steps) {
  if (r.empty()) throw InputError("canonical_generators needs at least one reflection");
  sort_walls(r);
  std::size_t steps = 0;
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t a = 0; a < r.size() && !changed; ++a)
      for (std::size_t b = 0; b < r.size() && !changed; ++b) {
        if (a == b) continue;
        Element c = g.conjugate(r[a].reflection, r[b].reflection);
        if (c.length() >= r[b].reflection.length()) continue;
        if (++steps > max_steps) throw BudgetError("canonical generator descent exceeded its step budget");
        auto w = g.as_reflection(c);
        if (!w) throw ConsistencyError("conjugate of a reflection is not a reflection: " + CoxeterGroup::format(c));
        r[b] = *w;
        sort_walls(r);
        changed = true;
      }
  }
  return r;
}

bool contains_reflection(CoxeterGroup& g, const std::vector<Wall>& canonical, const Wall& r) {
  const auto mirrors = roots_of(canonical);
  Element cur = r.reflection;
  while (true) {
    auto w = g.as_reflection(cur);
    if (w && mirrors.count(w->root)) return true;
    bool moved = false;
    for (const auto& t : canonical) {
      Element c = g.conjugate(t.reflection, cur);
      if (c.length() < cur.length()) {
        cur = std::move(c);
        moved = true;
        break;
      }
    }
    if (!moved) return false;
  }
}

bool contains_reflection_by_enumeration(CoxeterGroup& g, const std::vector<Wall>& canonical,
                                        const Wall& r, std::size_t max_elements) {
  const int depth = r.reflection.length() / 2;
  std::vector<Element> layer{g.identity()};
  std::unordered_set<Element, ElementHash> seen{g.identity()};
  for (int d = 0;; ++d) {
    for (const auto& w : layer)
      for (const auto& t : canonical)
        if (g.conjugate(w, t.reflection) == r.reflection) return true;
    if (d == depth) return false;
    std::vector<Element> next;
    for (const auto& w : layer)
      for (const auto& t : canonical) {
        Element x = g.multiply(w, t.reflection);
        if (seen.insert(x).second) next.push_back(std::move(x));
      }
    if (seen.size() > max_elements)
      throw BudgetError("subgroup enumeration exceeds " + std::to_string(max_elements) + " elements");
    layer = std::move(next);
  }
}

bool contains_reflection_checked(CoxeterGroup& g, const std::vector<Wall>& canonical, const Wall& r) {
  const bool fast = contains_reflection(g, canonical, r);
  const bool slow = contains_reflection_by_enumeration(g, canonical, r, g.budget().max_elements);
  if (fast != slow)
    throw ConsistencyError("reflection membership disagrees for " + CoxeterGroup::format(r.reflection) +
                           " in <" + format_walls(canonical) + ">");
  return fast;
}

std::optional<ChamberPolytope> fundamental_polytope(CoxeterGroup& g, const std::vector<Wall>& canonical,
                                                    std::size_t max_chambers) {
  std::map<Root, bool> mirror;
  std::vector<Element> chambers{g.identity()};
  std::unordered_set<Element, ElementHash> seen{g.identity()};
  for (std::size_t head = 0; head < chambers.size(); ++head) {
    const Element x = chambers[head];
    for (Generator s = 0; s < g.rank(); ++s) {
      Element y = g.times_generator(x, s);
      if (seen.count(y)) continue;
      const Root root = g.panel_root(x, s);
      auto it = mirror.find(root);
      if (it == mirror.end())
        it = mirror.emplace(root, contains_reflection(g, canonical, g.panel_wall(x, s))).first;
      if (it->second) continue;
      seen.insert(y);
      chambers.push_back(std::move(y));
      if (chambers.size() > max_chambers) return std::nullopt;
    }
  }
  return make_polytope(g, std::move(chambers));
}

CoxeterMatrix induced_matrix(CoxeterGroup& g, const std::vector<Wall>& canonical) {
  const std::size_t n = canonical.size();
  std::vector<std::vector<Order>> m(n, std::vector<Order>(n, Order(1)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) m[i][j] = m[j][i] = g.order_of_product(canonical[i], canonical[j]);
  std::vector<std::string> labels;
  for (const auto& w : canonical) labels.push_back(CoxeterGroup::format(w.reflection));
  return CoxeterMatrix(std::move(m), std::move(labels));
}

ReflectionSubgroup make_subgroup(CoxeterGroup& g, const std::vector<Wall>& reflections,
                                 std::size_t max_chambers) {
  ReflectionSubgroup h;
  h.generators = canonical_generators(g, reflections);
  h.induced = induced_matrix(g, h.generators);
  h.polytope = fundamental_polytope(g, h.generators, max_chambers);
  if (h.polytope) h.index = h.polytope->size();
  return h;
}

std::vector<Order> signature(const CoxeterMatrix& m) {
  std::vector<Order> out;
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j) out.push_back(m(i, j));
  std::sort(out.begin(), out.end());
  return out;
}

RankTheoremReport verify_rank_theorem(CoxeterGroup& g, const ReflectionSubgroup& h) {
  RankTheoremReport r;
  const auto& m = g.matrix();
  r.applicable = !is_finite(m) && is_indecomposable(m);
  r.finite_index = h.index.has_value();
  r.generators_ok = h.rank() >= g.rank();
  r.facets_ok = h.polytope && h.polytope->facet_count() >= static_cast<std::size_t>(g.rank());
  std::vector<RootVector> vs;
  for (const auto& w : h.generators) vs.push_back(g.root_vector(w.root));
  r.span_rank = g.span_dimension(vs);
  r.span_ok = r.span_rank == g.rank();
  return r;
}

std::optional<std::vector<Generator>> nerve_deletion_witness(const CoxeterMatrix& induced,
                                                             const CoxeterMatrix& m) {
  if (induced.rank() != m.rank()) throw InputError("nerve deletion needs equal ranks");
  if (m.rank() > 9) throw BudgetError("nerve deletion brute force limited to rank 9");
  const Nerve small(induced);
  const Nerve big(m);
  std::vector<Generator> sigma(m.rank());
  for (int i = 0; i < m.rank(); ++i) sigma[i] = static_cast<Generator>(i);
  do {
    bool good = true;
    for (GeneratorSet simplex : small.simplices()) {
      GeneratorSet image = 0;
      for (int i = 0; i < m.rank(); ++i)
        if (simplex >> i & 1u) image |= GeneratorSet{1} << sigma[i];
      if (!big.contains(image)) {
        good = false;
        break;
      }
    }
    if (good) return sigma;
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return std::nullopt;
}

const char* CommCondition::name() const {
  if (both()) return "both";
  if (via1) return "holds_via_1";
  if (via2) return "holds_via_2";
  return "none";
}

CommCondition comm_condition(const CoxeterMatrix& m) {
  CommCondition c;
  for (int s0 = 0; s0 < m.rank(); ++s0) {
    int non_commuting = 0;
    bool all_finite = true;
    for (int s = 0; s < m.rank(); ++s) {
      if (s == s0) continue;
      if (m(s0, s) != Order(2)) ++non_commuting;
      if (m(s0, s).is_infinite()) all_finite = false;
    }
    if (non_commuting == 1 && !c.via1) c.via1 = static_cast<Generator>(s0);
    if (all_finite && !c.via2) c.via2 = static_cast<Generator>(s0);
  }
  return c;
}

SubgroupCensus subgroups_from_census(CoxeterGroup& g, const Census& census) {
  SubgroupCensus out;
  out.max_chambers = census.max_chambers;
  out.truncated = census.truncated;
  std::set<std::vector<Element>> classes;
  for (const auto& p : census.polytopes) {
    if (!is_coxeter_polytope(g, p)) continue;
    if (!classes.insert(congruence_key(g, p)).second) continue;

    std::vector<Wall> walls;
    for (const auto& [w, side] : p.facets) walls.push_back(w);
    ReflectionSubgroup h = make_subgroup(g, walls, p.size());
    auto describe = [&] {
      std::string chambers;
      for (const auto& c : p.chambers) chambers += " [" + CoxeterGroup::format(c) + "]";
      return " for polytope" + chambers;
    };
    if (roots_of(h.generators) != roots_of(walls))
      throw ConsistencyError("canonical generators differ from the facet walls" + describe());
    if (!h.polytope || h.polytope->chambers != p.chambers)
      throw ConsistencyError("fundamental chamber set differs from the Coxeter polytope" + describe());
    out.subgroups.push_back(std::move(h));
  }
  std::stable_sort(out.subgroups.begin(), out.subgroups.end(),
                   [](const ReflectionSubgroup& a, const ReflectionSubgroup& b) { return *a.index < *b.index; });
  return out;
}

SubgroupCensus equal_rank_only(const CoxeterGroup& g, SubgroupCensus all) {
  std::erase_if(all.subgroups, [&](const ReflectionSubgroup& h) { return h.rank() != g.rank(); });
  return all;
}

SubgroupCensus search_equal_rank_subgroups(CoxeterGroup& g, std::size_t max_chambers) {
  return equal_rank_only(g, subgroups_from_census(g, enumerate_convex_polytopes(g, max_chambers)));
}

IndexTwoCheck index_two_construction(CoxeterGroup& g) {
  IndexTwoCheck out;
  const auto& m = g.matrix();
  for (int s0 = 0; s0 < m.rank() && !out.applicable; ++s0) {
    int partner = -1, non_commuting = 0;
    for (int s = 0; s < m.rank(); ++s)
      if (s != s0 && m(s0, s) != Order(2)) {
        ++non_commuting;
        partner = s;
      }
    if (non_commuting != 1) continue;
    const Order e = m(s0, partner);
    if (e.is_finite() && e.value() % 2 != 0) continue;
    out.applicable = true;
    out.s0 = static_cast<Generator>(s0);
    out.partner = static_cast<Generator>(partner);
  }
  if (!out.applicable) return out;

  std::vector<Wall> r;
  for (Generator s = 0; s < g.rank(); ++s)
    if (s != out.s0) r.push_back(g.wall_from(g.identity(), s));
  r.push_back(g.wall_from(g.generator(out.s0), out.partner));
  sort_walls(r);
  const auto canon = canonical_generators(g, r);
  out.canonical = roots_of(canon) == roots_of(r);
  if (auto p = fundamental_polytope(g, canon, 2)) out.index = p->size();
  return out;
}

}  // namespace coxlab
