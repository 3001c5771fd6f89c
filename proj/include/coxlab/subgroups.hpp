#pragma once

#include <optional>
#include <vector>

#include "coxlab/davis.hpp"
#include "coxlab/group.hpp"

namespace coxlab {

/// A reflection subgroup given by its canonical (Dyer) generators.
struct ReflectionSubgroup {
  std::vector<Wall> generators;  // canonical, sorted ShortLex by reflection
  CoxeterMatrix induced = CoxeterMatrix({{Order(1)}});
  std::optional<ChamberPolytope> polytope;  // fundamental chamber set, when within budget
  std::optional<std::size_t> index;         // nullopt: exceeds the chamber budget

  int rank() const { return static_cast<int>(generators.size()); }
};

/// Descent fixpoint: while some t1 != t2 has l(t1 t2 t1) < l(t2), replace t2
/// by t1 t2 t1. Throws BudgetError after max_steps replacements.
std::vector<Wall> canonical_generators(CoxeterGroup& g, std::vector<Wall> reflections,
                                       std::size_t max_steps = 100000);

/// Membership of a reflection in the group generated by a canonical set,
/// by conjugation descent.
bool contains_reflection(CoxeterGroup& g, const std::vector<Wall>& canonical, const Wall& r);

/// The same question answered by listing w t w^-1 over subgroup elements w
/// of subgroup length <= l(r)/2. Throws BudgetError past max_elements.
bool contains_reflection_by_enumeration(CoxeterGroup& g, const std::vector<Wall>& canonical,
                                        const Wall& r, std::size_t max_elements);

/// Both methods; throws ConsistencyError if they disagree.
bool contains_reflection_checked(CoxeterGroup& g, const std::vector<Wall>& canonical, const Wall& r);

/// The chambers reachable from e without crossing a mirror. nullopt when the
/// search passes max_chambers.
std::optional<ChamberPolytope> fundamental_polytope(CoxeterGroup& g, const std::vector<Wall>& canonical,
                                                    std::size_t max_chambers);

CoxeterMatrix induced_matrix(CoxeterGroup& g, const std::vector<Wall>& canonical);

/// Canonical generators, induced matrix and fundamental polytope of <R>.
/// Throws InputError if R is empty.
ReflectionSubgroup make_subgroup(CoxeterGroup& g, const std::vector<Wall>& reflections,
                                 std::size_t max_chambers);

/// Off-diagonal entries of a Coxeter matrix, sorted: (2,3,inf) style.
std::vector<Order> signature(const CoxeterMatrix& m);

struct RankTheoremReport {
  bool applicable = false;  // G infinite and indecomposable
  bool finite_index = false;
  bool generators_ok = false;  // |S'| >= |S|
  bool facets_ok = false;      // facet walls of the fundamental polytope >= |S|
  int span_rank = 0;
  bool span_ok = false;  // canonical roots span the whole space
  bool ok() const { return !applicable || !finite_index || (generators_ok && facets_ok && span_ok); }
};

RankTheoremReport verify_rank_theorem(CoxeterGroup& g, const ReflectionSubgroup& h);

/// A bijection sigma (canonical generator i -> generator sigma[i]) carrying
/// every simplex of the induced nerve into the nerve of M, if one exists.
/// Requires equal ranks; throws BudgetError above rank 9.
std::optional<std::vector<Generator>> nerve_deletion_witness(const CoxeterMatrix& induced,
                                                             const CoxeterMatrix& m);

struct CommCondition {
  std::optional<Generator> via1;  // s0 commuting with all but exactly one generator
  std::optional<Generator> via2;  // s0 with m(s0, s) finite for every s
  bool any() const { return via1 || via2; }
  bool both() const { return via1 && via2; }
  const char* name() const;  // "both", "holds_via_1", "holds_via_2", "none"
};

CommCondition comm_condition(const CoxeterMatrix& m);

struct SubgroupCensus {
  std::vector<ReflectionSubgroup> subgroups;  // one per congruence class of Coxeter polytope
  std::size_t max_chambers = 0;
  bool truncated = false;
};

/// Every Coxeter polytope of the census is the fundamental chamber set of the
/// subgroup generated by its facet walls. One representative per congruence
/// class (left translates give conjugate subgroups). Throws ConsistencyError
/// if a polytope and its subgroup disagree.
SubgroupCensus subgroups_from_census(CoxeterGroup& g, const Census& census);

/// Those with exactly rank(M) canonical generators, ordered by index. The
/// group itself (index 1) is included.
SubgroupCensus search_equal_rank_subgroups(CoxeterGroup& g, std::size_t max_chambers);
SubgroupCensus equal_rank_only(const CoxeterGroup& g, SubgroupCensus all);

struct IndexTwoCheck {
  bool applicable = false;  // condition (1) holds with even or infinite exponent
  Generator s0 = 0, partner = 0;
  bool canonical = false;
  std::optional<std::size_t> index;
  bool ok() const { return !applicable || (canonical && index == 2u); }
};

/// For s0 commuting with all generators but s' and m(s0,s') even or infinite,
/// checks that (S minus s0) plus s0 s' s0 is canonical of index 2.
IndexTwoCheck index_two_construction(CoxeterGroup& g);

}  // namespace coxlab
