#include "coxlab/algebraic.hpp"

#include <atomic>
#include <cmath>
#include <numeric>
#include <sstream>

#include "coxlab/errors.hpp"

namespace coxlab {

namespace {

std::atomic<std::uint64_t> g_decisions{0};
std::atomic<std::uint64_t> g_refinements{0};
std::atomic<std::uint64_t> g_fallbacks{0};

constexpr int kMaxRefinements = 4096;

using QPoly = std::vector<Rational>;

void trim(QPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

QPoly to_qpoly(const std::vector<Integer>& p) {
  QPoly q(p.begin(), p.end());
  trim(q);
  return q;
}

Rational eval(const QPoly& p, const Rational& x) {
  Rational acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sgn(const Rational& q) { return mpq_sgn(q.get_mpq_t()); }

QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * Rational(static_cast<long>(k)));
  trim(d);
  return d;
}

QPoly remainder(QPoly a, const QPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational f = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= f * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

std::vector<QPoly> sturm_chain(const QPoly& p) {
  std::vector<QPoly> chain{p, derivative(p)};
  while (chain.back().size() > 1) {
    QPoly r = remainder(chain[chain.size() - 2], chain.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  return chain;
}

int variations(const std::vector<QPoly>& chain, const Rational& x) {
  int count = 0, last = 0;
  for (const auto& p : chain) {
    const int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

}  // namespace

AlgebraicReal::AlgebraicReal(const Rational& q) {
  if (q != 0) coeffs_.push_back(q);
}

AlgebraicReal::AlgebraicReal(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

void AlgebraicReal::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

AlgebraicReal AlgebraicReal::operator-() const {
  AlgebraicReal r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

AlgebraicReal& AlgebraicReal::operator+=(const AlgebraicReal& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] += o.coeffs_[k];
  trim();
  return *this;
}

AlgebraicReal& AlgebraicReal::operator-=(const AlgebraicReal& o) {
  if (coeffs_.size() < o.coeffs_.size()) coeffs_.resize(o.coeffs_.size());
  for (std::size_t k = 0; k < o.coeffs_.size(); ++k) coeffs_[k] -= o.coeffs_[k];
  trim();
  return *this;
}

AlgebraicReal& AlgebraicReal::operator*=(const Rational& q) {
  if (q == 0) {
    coeffs_.clear();
    return *this;
  }
  for (auto& c : coeffs_) c *= q;
  return *this;
}

std::string AlgebraicReal::to_string() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) out << " + ";
    out << coeffs_[k].get_str();
    if (k > 0) out << "*c^" << k;
    first = false;
  }
  return out.str();
}

SignStats sign_stats() { return {g_decisions.load(), g_refinements.load(), g_fallbacks.load()}; }

void reset_sign_stats() {
  g_decisions = 0;
  g_refinements = 0;
  g_fallbacks = 0;
}

std::vector<Integer> chebyshev_two_cos(int k) {
  std::vector<Integer> prev{2}, cur{0, 1};
  if (k == 0) return prev;
  for (int i = 1; i < k; ++i) {
    std::vector<Integer> next(cur.size() + 1, 0);
    for (std::size_t j = 0; j < cur.size(); ++j) next[j + 1] += cur[j];
    for (std::size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

std::vector<Integer> cyclotomic(std::uint32_t n) {
  // z^n - 1 divided by every Phi_d with d | n, d < n.
  std::vector<Integer> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (std::uint32_t d = 1; d < n; ++d) {
    if (n % d) continue;
    const auto q = cyclotomic(d);
    // exact division by a monic polynomial
    std::vector<Integer> quot(p.size() - q.size() + 1, 0);
    for (std::size_t i = quot.size(); i-- > 0;) {
      quot[i] = p[i + q.size() - 1];
      for (std::size_t j = 0; j < q.size(); ++j) p[i + j] -= quot[i] * q[j];
    }
    p = std::move(quot);
  }
  return p;
}

std::uint32_t field_level_for(const CoxeterMatrix& m) {
  std::uint64_t n = 1;
  for (int i = 0; i < m.rank(); ++i)
    for (int j = i + 1; j < m.rank(); ++j)
      if (m(i, j).is_finite()) {
        n = std::lcm(n, static_cast<std::uint64_t>(m(i, j).value()));
        if (n > (1u << 30)) throw BudgetError("field level overflow (lcm of orders too large)");
      }
  return static_cast<std::uint32_t>(n);
}

std::shared_ptr<const Field> field_for(const CoxeterMatrix& m, std::uint32_t max_n) {
  return std::make_shared<const Field>(field_level_for(m), max_n);
}

Field::Field(std::uint32_t n, std::uint32_t max_n) : n_(n) {
  if (n == 0) throw FieldError("field level must be positive");
  if (n > max_n)
    throw BudgetError("field level " + std::to_string(n) + " exceeds cap " + std::to_string(max_n));

  // c = z + 1/z for a primitive 2N-th root of unity z. Fold the palindromic
  // cyclotomic polynomial into a polynomial in c.
  if (n == 1) {
    minpoly_ = {2, 1};  // c = 2cos(pi) = -2
  } else {
    const auto phi = cyclotomic(2 * n);
    const std::size_t d = (phi.size() - 1) / 2;
    std::vector<Integer> psi(d + 1, 0);
    psi[0] = phi[d];
    for (std::size_t k = 1; k <= d; ++k) {
      const auto pk = chebyshev_two_cos(static_cast<int>(k));
      for (std::size_t j = 0; j < pk.size(); ++j) psi[j] += phi[d + k] * pk[j];
    }
    minpoly_ = std::move(psi);
  }
  if (minpoly_.back() != 1) throw ConsistencyError("minimal polynomial is not monic");

  const QPoly p = to_qpoly(minpoly_);
  if (degree() == 1) {
    lo_ = hi_ = Rational(-minpoly_[0]);
    return;
  }

  // Seed an interval from the floating value, then certify it exactly.
  const double pi = std::acos(-1.0);
  const double c0 = 2.0 * std::cos(pi / n);
  const double gap = c0 - 2.0 * std::cos(3.0 * pi / n);
  const double delta = std::min(1e-6, gap / 4.0);
  lo_ = Rational(c0 - delta);
  hi_ = Rational(std::min(2.0, c0 + delta));
  if (sgn(eval(p, lo_)) * sgn(eval(p, hi_)) >= 0)
    throw ConsistencyError("isolating interval seed has no sign change for N=" + std::to_string(n));

  const auto chain = sturm_chain(p);
  if (chain.back().size() != 1) throw ConsistencyError("minimal polynomial is not square-free");
  if (variations(chain, lo_) - variations(chain, hi_) != 1)
    throw ConsistencyError("isolating interval holds more than one root for N=" + std::to_string(n));

  // Tighten to ~2^-80 so that most sign queries settle without refinement.
  const Rational target(Integer(1), Integer(1) << 80);
  const int s_lo = sgn(eval(p, lo_));
  while (hi_ - lo_ > target) {
    Rational mid = (lo_ + hi_) / 2;
    if (sgn(eval(p, mid)) == s_lo)
      lo_ = mid;
    else
      hi_ = mid;
  }
}

AlgebraicReal Field::generator() const {
  if (degree() == 1) return AlgebraicReal(lo_);
  return AlgebraicReal(std::vector<Rational>{0, 1});
}

AlgebraicReal Field::reduce(std::vector<Rational> poly) const {
  const std::size_t d = minpoly_.size() - 1;
  for (std::size_t k = poly.size(); k-- > d;) {
    if (poly[k] == 0) continue;
    const Rational f = poly[k];
    for (std::size_t j = 0; j <= d; ++j) poly[k - d + j] -= f * Rational(minpoly_[j]);
  }
  if (poly.size() > d) poly.resize(d);
  return AlgebraicReal(std::move(poly));
}

AlgebraicReal Field::mul(const AlgebraicReal& a, const AlgebraicReal& b) const {
  const auto& x = a.coefficients();
  const auto& y = b.coefficients();
  if (x.empty() || y.empty()) return {};
  if (x.size() == 1) return b * x[0];
  if (y.size() == 1) return a * y[0];
  std::vector<Rational> prod(x.size() + y.size() - 1, 0);
  for (std::size_t i = 0; i < x.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j) prod[i + j] += x[i] * y[j];
  return reduce(std::move(prod));
}

AlgebraicReal Field::two_cos_pi_over(std::uint32_t m) const {
  if (m == 0 || n_ % m != 0)
    throw FieldError("2cos(pi/" + std::to_string(m) + ") is not in Q(2cos(pi/" + std::to_string(n_) + "))");
  const auto pk = chebyshev_two_cos(static_cast<int>(n_ / m));
  if (degree() == 1) {
    Rational acc = 0;
    for (auto it = pk.rbegin(); it != pk.rend(); ++it) acc = acc * lo_ + Rational(*it);
    return AlgebraicReal(acc);
  }
  return reduce(std::vector<Rational>(pk.begin(), pk.end()));
}

AlgebraicReal Field::cos_pi_over(std::uint32_t m) const { return two_cos_pi_over(m) * Rational(1, 2); }

Sign Field::sign(const AlgebraicReal& x) const {
  ++g_decisions;
  const auto& q = x.coefficients();
  if (q.empty()) return Sign::Zero;
  if (q.size() == 1) return sgn(q[0]) > 0 ? Sign::Positive : Sign::Negative;

  // Nonzero and of degree < deg(minpoly), so x(c) != 0 and refinement ends.
  // For degree >= 2 the embedding c lies in [sqrt 2, 2], so powers are monotone.
  const QPoly p = to_qpoly(minpoly_);
  Rational lo = lo_, hi = hi_;
  const int s_lo = sgn(eval(p, lo));
  for (int step = 0; step <= kMaxRefinements; ++step) {
    Rational vlo = 0, vhi = 0, plo = 1, phi = 1;
    for (const auto& c : q) {
      if (sgn(c) >= 0) {
        vlo += c * plo;
        vhi += c * phi;
      } else {
        vlo += c * phi;
        vhi += c * plo;
      }
      plo *= lo;
      phi *= hi;
    }
    if (sgn(vlo) > 0) return Sign::Positive;
    if (sgn(vhi) < 0) return Sign::Negative;
    ++g_refinements;
    Rational mid = (lo + hi) / 2;
    if (sgn(eval(p, mid)) == s_lo)
      lo = mid;
    else
      hi = mid;
  }
  // No floating fallback exists: an unsettled sign is a hard error.
  ++g_fallbacks;
  throw ConsistencyError("sign refinement did not settle for " + x.to_string());
}

int Field::compare(const AlgebraicReal& a, const AlgebraicReal& b) const {
  return static_cast<int>(sign(a - b));
}

double Field::approximate(const AlgebraicReal& x) const {
  const double c = degree() == 1 ? lo_.get_d() : Rational((lo_ + hi_) / 2).get_d();
  double acc = 0;
  const auto& q = x.coefficients();
  for (auto it = q.rbegin(); it != q.rend(); ++it) acc = acc * c + it->get_d();
  return acc;
}

}  // namespace coxlab
