#include "coxlab/davis.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "coxlab/diagram.hpp"
#include "coxlab/errors.hpp"

namespace coxlab {

namespace {

using ChamberSet = std::unordered_set<Element, ElementHash>;

std::vector<Element> sorted(std::vector<Element> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

// The residue g W_{s,t} as its 2m-cycle starting at the shortest element.
std::vector<Element> residue_cycle(CoxeterGroup& g, const Element& base, Generator s, Generator t,
                                   std::uint32_t m) {
  std::vector<Element> cycle{base};
  for (std::uint32_t k = 1; k < 2 * m; ++k)
    cycle.push_back(g.times_generator(cycle.back(), k % 2 == 1 ? s : t));
  return cycle;
}

Element residue_base(CoxeterGroup& g, Element x, Generator s, Generator t) {
  while (true) {
    if (g.is_right_descent(x, s))
      x = g.times_generator(x, s);
    else if (g.is_right_descent(x, t))
      x = g.times_generator(x, t);
    else
      return x;
  }
}

}  // namespace

bool ChamberPolytope::contains(const Element& g) const {
  return std::binary_search(chambers.begin(), chambers.end(), g);
}

std::optional<Side> ChamberPolytope::facet_side(Root wall_root) const {
  for (const auto& [w, s] : facets)
    if (w.root == wall_root) return s;
  return std::nullopt;
}

Side side(CoxeterGroup& g, const Wall& t, const Element& chamber) { return g.side(t, chamber); }

std::vector<Element> interval(CoxeterGroup& g, const Element& from, const Element& to) {
  // Walk from `from` toward `to`: a step by s is geodesic iff s is a left
  // descent of the remaining x^-1 * to.
  std::vector<Element> out{from};
  std::vector<Element> rest{g.multiply(g.inverse(from), to)};
  ChamberSet seen{from};
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Element x = out[head];
    const Element v = rest[head];
    for (Generator s = 0; s < g.rank(); ++s) {
      if (!g.is_left_descent(v, s)) continue;
      Element y = g.times_generator(x, s);
      if (!seen.insert(y).second) continue;
      Word sv{s};
      sv.insert(sv.end(), v.word().begin(), v.word().end());
      out.push_back(std::move(y));
      rest.push_back(g.normal_form(sv));
    }
  }
  return out;
}

std::optional<ChamberPolytope> try_convex_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                                               std::size_t max_chambers) {
  if (chambers.empty()) throw InputError("convex hull of an empty chamber set");
  std::vector<Element> list;
  ChamberSet members;
  for (const auto& c : chambers)
    if (members.insert(c).second) list.push_back(c);
  if (list.size() > max_chambers) return std::nullopt;
  // Each unordered pair is closed exactly once; pairs with new members are
  // picked up as the list grows.
  for (std::size_t j = 1; j < list.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      const Element a = list[i], b = list[j];
      for (auto& x : interval(g, a, b)) {
        if (members.insert(x).second) {
          list.push_back(std::move(x));
          if (list.size() > max_chambers) return std::nullopt;
        }
      }
    }
  }
  return make_polytope(g, std::move(list));
}

ChamberPolytope convex_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                            std::size_t max_chambers) {
  auto p = try_convex_hull(g, chambers, max_chambers);
  if (!p) throw BudgetError("convex hull exceeds " + std::to_string(max_chambers) + " chambers");
  return std::move(*p);
}

std::vector<Element> halfspace_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                                    std::size_t max_chambers) {
  std::vector<Element> out;
  ChamberSet seen;
  for (const auto& c : chambers)
    if (seen.insert(c).second) out.push_back(c);
  for (std::size_t head = 0; head < out.size(); ++head) {
    const Element x = out[head];
    for (Generator s = 0; s < g.rank(); ++s) {
      Element y = g.times_generator(x, s);
      if (seen.count(y)) continue;
      const Root wall = g.panel_root(x, s);
      const Side far = g.side(wall, y);
      const bool reachable = std::any_of(chambers.begin(), chambers.end(),
                                         [&](const Element& c) { return g.side(wall, c) == far; });
      if (!reachable) continue;
      seen.insert(y);
      out.push_back(std::move(y));
      if (out.size() > max_chambers)
        throw BudgetError("halfspace hull exceeds " + std::to_string(max_chambers) + " chambers");
    }
  }
  return sorted(std::move(out));
}

bool is_convex(CoxeterGroup& g, const std::vector<Element>& chambers) {
  if (chambers.empty()) return false;
  ChamberSet members(chambers.begin(), chambers.end());
  // connectivity
  std::vector<Element> stack{chambers.front()};
  ChamberSet reached{chambers.front()};
  while (!stack.empty()) {
    Element x = stack.back();
    stack.pop_back();
    for (Generator s = 0; s < g.rank(); ++s) {
      Element y = g.times_generator(x, s);
      if (members.count(y) && reached.insert(y).second) stack.push_back(std::move(y));
    }
  }
  if (reached.size() != members.size()) return false;
  for (const auto& x : members)
    for (Generator s = 0; s < g.rank(); ++s) {
      if (members.count(g.times_generator(x, s))) continue;
      const Root wall = g.panel_root(x, s);
      const Side inside = g.side(wall, x);
      for (const auto& z : members)
        if (g.side(wall, z) != inside) return false;
    }
  return true;
}

ChamberPolytope make_polytope(CoxeterGroup& g, std::vector<Element> chambers) {
  ChamberPolytope p;
  p.chambers = sorted(std::move(chambers));
  std::set<Root> seen;
  for (const auto& x : p.chambers)
    for (Generator s = 0; s < g.rank(); ++s) {
      if (p.contains(g.times_generator(x, s))) continue;
      const Root r = g.panel_root(x, s);
      if (!seen.insert(r).second) continue;
      p.facets.emplace_back(g.panel_wall(x, s), g.side(r, x));
    }
  std::sort(p.facets.begin(), p.facets.end(),
            [](const auto& a, const auto& b) { return a.first.reflection < b.first.reflection; });
  p.convex = is_convex(g, p.chambers);
  return p;
}

std::vector<AngleSite> angle_sites(CoxeterGroup& g, const ChamberPolytope& p) {
  std::vector<AngleSite> out;
  std::set<std::tuple<Element, Generator, Generator>> done;
  const auto& mat = g.matrix();
  for (const auto& x : p.chambers)
    for (Generator s = 0; s < g.rank(); ++s)
      for (Generator t = s + 1; t < g.rank(); ++t) {
        if (mat(s, t).is_infinite()) continue;
        Element base = residue_base(g, x, s, t);
        if (!done.emplace(base, s, t).second) continue;
        const std::uint32_t m = mat(s, t).value();
        const auto cycle = residue_cycle(g, base, s, t, m);
        const int len = static_cast<int>(cycle.size());
        std::vector<bool> in(len);
        int j = 0;
        for (int k = 0; k < len; ++k) j += (in[k] = p.contains(cycle[k]));

        AngleSite site{base, s, t, m, {}, std::nullopt};
        if (j == len) {
          site.arc = cycle;
          out.push_back(std::move(site));
          continue;
        }
        int start = 0;
        while (!(in[start] && !in[(start + len - 1) % len])) ++start;
        for (int k = 0; k < j; ++k) {
          const int idx = (start + k) % len;
          if (!in[idx])
            throw ConsistencyError("angle arc not contiguous at residue " + CoxeterGroup::format(base));
          site.arc.push_back(cycle[idx]);
        }
        // panel between cycle[k] and cycle[k+1] is crossed by generator s (k even) or t (k odd)
        auto panel = [&](int k) {
          const int a = (k + len) % len;
          return g.panel_wall(cycle[a], a % 2 == 0 ? s : t);
        };
        site.boundary_walls = std::make_pair(panel(start - 1), panel(start + j - 1));
        out.push_back(std::move(site));
      }
  return out;
}

bool is_coxeter_polytope(CoxeterGroup& g, const ChamberPolytope& p) {
  for (const auto& site : angle_sites(g, p))
    if (!site.interior() && site.m % site.j() != 0) return false;
  return true;
}

bool is_acute_angled(CoxeterGroup& g, const ChamberPolytope& p) {
  for (const auto& site : angle_sites(g, p))
    if (!site.interior() && 2 * static_cast<std::uint32_t>(site.j()) > site.m) return false;
  return true;
}

std::vector<AngleSite> decomposed_angles(CoxeterGroup& g, const ChamberPolytope& p) {
  std::vector<AngleSite> out;
  for (auto& site : angle_sites(g, p))
    if (!site.interior() && site.j() >= 2) out.push_back(std::move(site));
  return out;
}

bool walls_intersect(CoxeterGroup& g, const Wall& a, const Wall& b) {
  return g.order_of_product(a, b).is_finite();
}

bool facets_intersect(CoxeterGroup& g, const ChamberPolytope& p, const Wall& a, const Wall& b) {
  const auto& mat = g.matrix();
  for (const auto& x : p.chambers) {
    const Element xi = g.inverse(x);
    const GeneratorSet support =
        g.conjugate(xi, a.reflection).support() | g.conjugate(xi, b.reflection).support();
    if (is_spherical(mat, support)) return true;
  }
  return false;
}

StacanOutcome check_stacan(CoxeterGroup& g, const ChamberPolytope& p1, const ChamberPolytope& p2) {
  StacanOutcome out;
  auto fail = [&out](std::string why) {
    out.kind = StacanOutcome::Kind::PreconditionFailed;
    out.detail = std::move(why);
    return out;
  };
  if (!p1.convex || !p2.convex) return fail("operand not convex");
  for (const auto& x : p1.chambers)
    if (p2.contains(x)) return fail("operands share a chamber");

  // The panels of a polytope on a wall, as the chambers just across them.
  auto across = [&g](const ChamberPolytope& p, Root wall) {
    std::vector<Element> out;
    for (const auto& x : p.chambers)
      for (Generator s = 0; s < g.rank(); ++s) {
        Element y = g.times_generator(x, s);
        if (!p.contains(y) && g.panel_root(x, s) == wall) out.push_back(std::move(y));
      }
    return sorted(std::move(out));
  };
  auto on_wall = [&g](const ChamberPolytope& p, Root wall) {
    std::vector<Element> out;
    for (const auto& x : p.chambers)
      for (Generator s = 0; s < g.rank(); ++s)
        if (!p.contains(g.times_generator(x, s)) && g.panel_root(x, s) == wall) {
          out.push_back(x);
          break;
        }
    return sorted(std::move(out));
  };

  std::optional<Wall> common;
  for (const auto& [w, s1] : p1.facets) {
    auto s2 = p2.facet_side(w.root);
    if (!s2 || *s2 == s1) continue;
    if (across(p1, w.root) == on_wall(p2, w.root) && across(p2, w.root) == on_wall(p1, w.root)) {
      common = w;
      break;
    }
  }
  if (!common) return fail("no common facet");
  out.common_wall = common;

  for (const auto* p : {&p1, &p2})
    for (const auto& site : angle_sites(g, *p)) {
      if (!site.boundary_walls) continue;
      const auto& [w1, w2] = *site.boundary_walls;
      const bool touches = w1.root == common->root || w2.root == common->root;
      if (!touches || w1.root == w2.root) continue;
      if (2 * static_cast<std::uint32_t>(site.j()) > site.m) return fail("non-acute angle at the common facet");
    }

  std::vector<Element> uni = p1.chambers;
  uni.insert(uni.end(), p2.chambers.begin(), p2.chambers.end());
  out.kind = is_convex(g, uni) ? StacanOutcome::Kind::UnionConvex : StacanOutcome::Kind::UnionNotConvex;
  return out;
}

std::vector<AndreevViolation> check_andreev(CoxeterGroup& g, const ChamberPolytope& p) {
  if (!p.convex || !is_acute_angled(g, p)) throw InputError("check_andreev needs a convex acute-angled polytope");
  std::vector<AndreevViolation> out;
  for (std::size_t i = 0; i < p.facets.size(); ++i)
    for (std::size_t k = i + 1; k < p.facets.size(); ++k) {
      const Wall& a = p.facets[i].first;
      const Wall& b = p.facets[k].first;
      if (walls_intersect(g, a, b) && !facets_intersect(g, p, a, b)) out.push_back({a, b});
    }
  return out;
}

Census enumerate_convex_polytopes(CoxeterGroup& g, std::size_t max_chambers) {
  Census census;
  census.max_chambers = max_chambers;
  if (max_chambers == 0) return census;
  std::set<std::vector<Element>> seen;
  std::vector<ChamberPolytope> queue{make_polytope(g, {g.identity()})};
  seen.insert(queue.front().chambers);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    if (queue[head].size() == max_chambers) continue;
    const std::vector<Element> base = queue[head].chambers;
    std::set<Element> neighbours;
    for (const auto& x : base)
      for (Generator s = 0; s < g.rank(); ++s) {
        Element y = g.times_generator(x, s);
        if (!std::binary_search(base.begin(), base.end(), y)) neighbours.insert(std::move(y));
      }
    for (const auto& y : neighbours) {
      std::vector<Element> seed = base;
      seed.push_back(y);
      std::optional<ChamberPolytope> hull;
      try {
        hull = try_convex_hull(g, seed, max_chambers);
      } catch (const BudgetError&) {
        census.truncated = true;
        continue;
      }
      if (!hull) continue;
      if (seen.insert(hull->chambers).second) queue.push_back(std::move(*hull));
    }
  }
  std::sort(queue.begin(), queue.end(), [](const ChamberPolytope& a, const ChamberPolytope& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a.chambers < b.chambers;
  });
  census.polytopes = std::move(queue);
  return census;
}

FacetBoundReport verify_facet_bound(CoxeterGroup& g, const Census& census) {
  FacetBoundReport r;
  const auto& mat = g.matrix();
  r.applicable = !is_finite(mat) && is_indecomposable(mat);
  r.polytopes = census.polytopes.size();
  r.bounded = true;
  r.min_facets = census.polytopes.empty() ? 0 : census.polytopes.front().facet_count();
  for (const auto& p : census.polytopes) {
    r.min_facets = std::min(r.min_facets, p.facet_count());
    if (p.facet_count() < static_cast<std::size_t>(g.rank())) r.violations.push_back(p);
  }
  return r;
}

FacetBoundReport verify_facet_bound(CoxeterGroup& g, std::size_t max_chambers) {
  return verify_facet_bound(g, enumerate_convex_polytopes(g, max_chambers));
}

std::string census_json_line(CoxeterGroup& g, const ChamberPolytope& p) {
  nlohmann::json j;
  j["chambers"] = nlohmann::json::array();
  for (const auto& c : p.chambers) j["chambers"].push_back(CoxeterGroup::format(c));
  j["facets"] = p.facet_count();
  const auto sites = angle_sites(g, p);
  bool coxeter = true, acute = true;
  j["angles"] = nlohmann::json::array();
  for (const auto& s : sites) {
    if (s.interior()) continue;
    coxeter = coxeter && s.m % s.j() == 0;
    acute = acute && 2 * static_cast<std::uint32_t>(s.j()) <= s.m;
    j["angles"].push_back({{"m", s.m}, {"j", s.j()}});
  }
  j["coxeter"] = coxeter;
  j["acute"] = acute;
  return j.dump();
}

std::vector<Element> congruence_key(CoxeterGroup& g, const ChamberPolytope& p) {
  std::vector<Element> best;
  for (const auto& x : p.chambers) {
    const Element xi = g.inverse(x);
    std::vector<Element> translate;
    translate.reserve(p.chambers.size());
    for (const auto& y : p.chambers) translate.push_back(g.multiply(xi, y));
    translate = sorted(std::move(translate));
    if (best.empty() || translate < best) best = std::move(translate);
  }
  return best;
}

}  // namespace coxlab
