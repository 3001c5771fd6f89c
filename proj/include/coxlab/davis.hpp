#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coxlab/group.hpp"

namespace coxlab {

/// A finite convex set of chambers together with its minimal defining walls.
struct ChamberPolytope {
  std::vector<Element> chambers;                // sorted ShortLex
  std::vector<std::pair<Wall, Side>> facets;    // wall and the side P lies on
  bool convex = false;

  bool contains(const Element& g) const;
  std::size_t size() const { return chambers.size(); }
  std::size_t facet_count() const { return facets.size(); }
  std::optional<Side> facet_side(Root wall_root) const;
};

/// A rank-2 spherical residue g W_{s,t} meeting a polytope, with the arc of
/// the 2m-cycle lying inside it. Angle = j*pi/m.
struct AngleSite {
  Element base;  // shortest element of the residue
  Generator s = 0, t = 0;
  std::uint32_t m = 0;
  std::vector<Element> arc;  // in cycle order
  std::optional<std::pair<Wall, Wall>> boundary_walls;

  int j() const { return static_cast<int>(arc.size()); }
  bool interior() const { return arc.size() == 2 * static_cast<std::size_t>(m); }
  /// Both boundary panels lie on one wall (angle pi).
  bool flat() const { return arc.size() == m; }
};

Side side(CoxeterGroup& g, const Wall& t, const Element& chamber);

/// Closure under the interval rule: adds x whenever l(g^-1 x) + l(x^-1 h) =
/// l(g^-1 h) for g, h already present. Throws BudgetError past max_chambers.
ChamberPolytope convex_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                            std::size_t max_chambers);
/// Same, returning nullopt instead of throwing when the budget is exceeded.
std::optional<ChamberPolytope> try_convex_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                                               std::size_t max_chambers);

/// Chambers x between g and h: l(g^-1 x) + l(x^-1 h) = l(g^-1 h).
std::vector<Element> interval(CoxeterGroup& g, const Element& from, const Element& to);

/// Chambers not separated from all of C by any wall, grown by crossing
/// panels whose wall has some chamber of C on the far side. Independent of
/// the interval rule; used to cross-check it.
std::vector<Element> halfspace_hull(CoxeterGroup& g, const std::vector<Element>& chambers,
                                    std::size_t max_chambers);

/// Gallery-connected and on one side of every boundary panel's wall.
bool is_convex(CoxeterGroup& g, const std::vector<Element>& chambers);

/// Builds the polytope record (facets, convexity flag) for a chamber set.
ChamberPolytope make_polytope(CoxeterGroup& g, std::vector<Element> chambers);

std::vector<AngleSite> angle_sites(CoxeterGroup& g, const ChamberPolytope& p);
bool is_coxeter_polytope(CoxeterGroup& g, const ChamberPolytope& p);
bool is_acute_angled(CoxeterGroup& g, const ChamberPolytope& p);
std::vector<AngleSite> decomposed_angles(CoxeterGroup& g, const ChamberPolytope& p);

bool walls_intersect(CoxeterGroup& g, const Wall& a, const Wall& b);
/// Whether P meets the intersection of the two walls: some chamber x of P
/// and spherical T with x^-1 r_a x and x^-1 r_b x both in W_T.
bool facets_intersect(CoxeterGroup& g, const ChamberPolytope& p, const Wall& a, const Wall& b);

struct StacanOutcome {
  enum class Kind { UnionConvex, UnionNotConvex, PreconditionFailed };
  Kind kind = Kind::PreconditionFailed;
  std::string detail;
  std::optional<Wall> common_wall;
};

/// Tests that gluing two convex polytopes along a common facet with acute
/// angles at it gives a convex polytope.
StacanOutcome check_stacan(CoxeterGroup& g, const ChamberPolytope& p1, const ChamberPolytope& p2);

struct AndreevViolation {
  Wall a, b;
};

/// Pairs of facet walls that intersect as walls but whose facets do not meet.
/// Requires P acute-angled; throws InputError otherwise.
std::vector<AndreevViolation> check_andreev(CoxeterGroup& g, const ChamberPolytope& p);

struct Census {
  std::vector<ChamberPolytope> polytopes;  // sorted by size, then chamber list
  std::size_t max_chambers = 0;
  bool truncated = false;  // an element or hull budget cut the search short
};

/// Every convex chamber set containing the identity with at most K chambers.
/// Grows by adding a neighbouring chamber and closing under hulls.
Census enumerate_convex_polytopes(CoxeterGroup& g, std::size_t max_chambers);

struct FacetBoundReport {
  bool applicable = false;  // G infinite and indecomposable
  std::size_t polytopes = 0;
  std::size_t min_facets = 0;
  std::vector<ChamberPolytope> violations;  // fewer facets than the rank
  bool bounded = true;
  bool ok() const { return violations.empty(); }
};

FacetBoundReport verify_facet_bound(CoxeterGroup& g, const Census& census);
FacetBoundReport verify_facet_bound(CoxeterGroup& g, std::size_t max_chambers);

/// One census line: {"chambers":[...],"facets":k,"coxeter":b,"acute":b,"angles":[{"m":m,"j":j},...]}.
std::string census_json_line(CoxeterGroup& g, const ChamberPolytope& p);

/// Left translates x^-1 P (x in P) all contain the identity; the ShortLex
/// least chamber list among them names the congruence class.
std::vector<Element> congruence_key(CoxeterGroup& g, const ChamberPolytope& p);

}  // namespace coxlab
