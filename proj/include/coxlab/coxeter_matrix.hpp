#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace coxlab {

/// Order of a product s_i s_j: a positive integer or infinity.
///
/// Infinity is its own state, not a large integer; asking an infinite order
/// for its value throws.
class Order {
 public:
  constexpr Order() = default;
  constexpr explicit Order(std::uint32_t m) : value_(m) {}
  static constexpr Order infinity() { return Order{}; }

  constexpr bool is_finite() const { return value_.has_value(); }
  constexpr bool is_infinite() const { return !value_.has_value(); }
  std::uint32_t value() const;

  // File encoding: 0 stands for infinity.
  static Order from_code(std::uint32_t code) { return code == 0 ? infinity() : Order(code); }
  std::uint32_t code() const { return value_.value_or(0); }

  std::string to_string() const;

  friend constexpr bool operator==(const Order&, const Order&) = default;
  // Finite orders sort before infinity.
  friend std::strong_ordering operator<=>(const Order& a, const Order& b);

 private:
  std::optional<std::uint32_t> value_;
};

using Generator = std::uint8_t;
using GeneratorSet = std::uint32_t;  // bitmask over generator indices

inline constexpr int kMaxRank = 24;

/// The Coxeter system (G,S) as its symmetric order matrix.
class CoxeterMatrix {
 public:
  /// Validates symmetry, unit diagonal, off-diagonal orders >= 2, rank >= 1.
  /// Throws InputError naming the offending indices.
  CoxeterMatrix(std::vector<std::vector<Order>> m, std::vector<std::string> labels = {});

  int rank() const { return static_cast<int>(m_.size()); }
  const Order& operator()(int i, int j) const { return m_[i][j]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(int i) const;

  /// Restriction to the generators in `subset`, in increasing index order.
  CoxeterMatrix restrict_to(GeneratorSet subset) const;

  GeneratorSet all_generators() const { return (GeneratorSet{1} << rank()) - 1; }

  /// Largest finite off-diagonal order (1 if none).
  std::uint32_t largest_finite_order() const;

  std::vector<std::vector<std::uint32_t>> codes() const;

  /// Stable 64-bit FNV-1a digest of the order codes, as 16 hex digits.
  std::string digest() const;

  friend bool operator==(const CoxeterMatrix& a, const CoxeterMatrix& b) { return a.m_ == b.m_; }

 private:
  std::vector<std::vector<Order>> m_;
  std::vector<std::string> labels_;
};

/// Triangle-group matrix with m12 = a, m23 = b, m13 = c.
CoxeterMatrix triangle_matrix(Order a, Order b, Order c);

/// Parses the JSON document {"rank":n,"m":[[...]],"labels":[...]} or the line
/// format ("rank n" then "i j m" lines, 1-based, unlisted pairs default to 2).
/// In both, 0 encodes infinity.
CoxeterMatrix parse_matrix(std::string_view text);
CoxeterMatrix load_matrix(const std::string& path);

std::string to_json_text(const CoxeterMatrix& m);

}  // namespace coxlab
