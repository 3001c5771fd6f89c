#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "coxlab/coxeter_matrix.hpp"

namespace coxlab {

using Rational = mpq_class;
using Integer = mpz_class;

enum class Sign : std::int8_t { Negative = -1, Zero = 0, Positive = 1 };

/// Element of Q(c), c = 2cos(pi/N), as rational coefficients of powers of c
/// reduced modulo the minimal polynomial. Trailing zeros are trimmed, so the
/// zero element has no coefficients and equality is coefficient equality.
class AlgebraicReal {
 public:
  AlgebraicReal() = default;
  AlgebraicReal(const Rational& q);  // NOLINT(google-explicit-constructor)
  AlgebraicReal(long q) : AlgebraicReal(Rational(q)) {}  // NOLINT
  explicit AlgebraicReal(std::vector<Rational> coeffs);

  const std::vector<Rational>& coefficients() const { return coeffs_; }
  bool is_zero() const { return coeffs_.empty(); }
  /// Whether the value is a rational number (no c-terms).
  bool is_rational() const { return coeffs_.size() <= 1; }

  AlgebraicReal operator-() const;
  AlgebraicReal& operator+=(const AlgebraicReal& o);
  AlgebraicReal& operator-=(const AlgebraicReal& o);
  AlgebraicReal& operator*=(const Rational& q);
  friend AlgebraicReal operator+(AlgebraicReal a, const AlgebraicReal& b) { return a += b; }
  friend AlgebraicReal operator-(AlgebraicReal a, const AlgebraicReal& b) { return a -= b; }
  friend AlgebraicReal operator*(AlgebraicReal a, const Rational& q) { return a *= q; }
  friend AlgebraicReal operator*(const Rational& q, AlgebraicReal a) { return a *= q; }
  friend bool operator==(const AlgebraicReal& a, const AlgebraicReal& b) { return a.coeffs_ == b.coeffs_; }

  /// Canonical text, e.g. "1/2 + -1*c^1". Used as a hashing key.
  std::string to_string() const;

 private:
  void trim();
  std::vector<Rational> coeffs_;
};

struct SignStats {
  std::uint64_t decisions = 0;        // sign() calls answered
  std::uint64_t refinements = 0;      // interval bisection steps taken
  std::uint64_t float_fallbacks = 0;  // decisions not settled exactly; must stay 0
};

/// Process-wide instrumentation for sign determination.
SignStats sign_stats();
void reset_sign_stats();

/// The real cyclotomic field Q(2cos(pi/N)) with an exact isolating interval
/// for its distinguished real embedding. Immutable once built.
class Field {
 public:
  /// Throws BudgetError if N exceeds `max_n`.
  explicit Field(std::uint32_t n, std::uint32_t max_n = 420);

  std::uint32_t n() const { return n_; }
  int degree() const { return static_cast<int>(minpoly_.size()) - 1; }
  /// Monic minimal polynomial of c, coefficients from the constant term up.
  const std::vector<Integer>& minimal_polynomial() const { return minpoly_; }
  const Rational& interval_low() const { return lo_; }
  const Rational& interval_high() const { return hi_; }

  AlgebraicReal generator() const;  // c itself
  AlgebraicReal mul(const AlgebraicReal& a, const AlgebraicReal& b) const;

  /// 2cos(pi/m); requires m | N, throws FieldError otherwise.
  AlgebraicReal two_cos_pi_over(std::uint32_t m) const;
  /// cos(pi/m); requires m | N.
  AlgebraicReal cos_pi_over(std::uint32_t m) const;

  /// Exact sign: zero by coefficient test, otherwise interval refinement
  /// with rational endpoints.
  Sign sign(const AlgebraicReal& x) const;
  int compare(const AlgebraicReal& a, const AlgebraicReal& b) const;

  /// Floating approximation for display only; never used for decisions.
  double approximate(const AlgebraicReal& x) const;

 private:
  AlgebraicReal reduce(std::vector<Rational> poly) const;

  std::uint32_t n_;
  std::vector<Integer> minpoly_;
  Rational lo_, hi_;
};

/// Smallest N with every finite m_ij dividing N (N = 1 when there are none).
std::uint32_t field_level_for(const CoxeterMatrix& m);
std::shared_ptr<const Field> field_for(const CoxeterMatrix& m, std::uint32_t max_n = 420);

/// 2cos(k*theta) as a polynomial in 2cos(theta): P0 = 2, P1 = x, P(k+1) = x P(k) - P(k-1).
std::vector<Integer> chebyshev_two_cos(int k);
/// n-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic(std::uint32_t n);

}  // namespace coxlab
