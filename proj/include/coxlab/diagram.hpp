#pragma once

#include <optional>
#include <string>
#include <vector>

#include "coxlab/coxeter_matrix.hpp"

namespace coxlab {

/// A connected component of the Coxeter diagram (edges where m_ij >= 3,
/// infinity included) with its finite type, if any.
struct DiagramComponent {
  GeneratorSet vertices = 0;
  std::optional<std::string> finite_type;  // "A3", "H3", "I2(5)", ...; empty if infinite

  bool is_finite() const { return finite_type.has_value(); }
};

std::vector<DiagramComponent> components(const CoxeterMatrix& m);
std::vector<DiagramComponent> components(const CoxeterMatrix& m, GeneratorSet subset);
bool is_indecomposable(const CoxeterMatrix& m);

/// Finite-type tag of a connected diagram on `subset`, or nullopt if the
/// standard subgroup on it is infinite. Pure diagram matching.
std::optional<std::string> finite_type(const CoxeterMatrix& m, GeneratorSet subset);

bool is_finite(const CoxeterMatrix& m);
/// Whether the standard subgroup W_T is finite.
bool is_spherical(const CoxeterMatrix& m, GeneratorSet subset);

/// The simplicial complex of spherical subsets.
class Nerve {
 public:
  explicit Nerve(const CoxeterMatrix& m);

  int vertex_count() const { return rank_; }
  /// All nonempty spherical subsets, ordered by size then mask.
  const std::vector<GeneratorSet>& simplices() const { return simplices_; }
  bool contains(GeneratorSet s) const;
  /// Number of simplices with `k` vertices (k = 2 gives edges).
  int count_of_size(int k) const;
  int dimension() const;

 private:
  int rank_;
  std::vector<GeneratorSet> simplices_;
};

/// Whether the standard subgroup generated by `subset` has finite index:
/// every infinite component must lie inside `subset`.
bool has_finite_index_standard(const CoxeterMatrix& m, GeneratorSet subset);

std::string format_set(const CoxeterMatrix& m, GeneratorSet subset);

}  // namespace coxlab
