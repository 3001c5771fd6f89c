#include "coxlab/group.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <unordered_set>

#include "coxlab/errors.hpp"

namespace coxlab {

namespace {

std::string word_key(const Word& w) { return std::string(w.begin(), w.end()); }

}  // namespace

GeneratorSet Element::support() const {
  GeneratorSet s = 0;
  for (auto g : word_) s |= GeneratorSet{1} << g;
  return s;
}

std::strong_ordering operator<=>(const Element& a, const Element& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  return a.word_ <=> b.word_;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  const auto& w = e.word();
  return std::hash<std::string_view>{}(
      std::string_view(reinterpret_cast<const char*>(w.data()), w.size()));
}

CoxeterGroup::CoxeterGroup(CoxeterMatrix m, Budget budget)
    : matrix_(std::move(m)), budget_(budget), field_(field_for(matrix_, budget.max_field_level)) {
  const int n = rank();
  form_.assign(n, RootVector(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j)
        form_[i][j] = AlgebraicReal(1);
      else if (matrix_(i, j).is_infinite())
        form_[i][j] = AlgebraicReal(-1);
      else
        form_[i][j] = -field_->cos_pi_over(matrix_(i, j).value());
    }
  for (int i = 0; i < n; ++i) {
    RootVector e(n);
    e[i] = AlgebraicReal(1);
    intern(std::move(e));
  }
}

AlgebraicReal CoxeterGroup::bilinear(const RootVector& x, const RootVector& y) const {
  AlgebraicReal acc;
  const int n = rank();
  for (int i = 0; i < n; ++i) {
    if (x[i].is_zero()) continue;
    AlgebraicReal row;
    for (int j = 0; j < n; ++j)
      if (!y[j].is_zero() && !form_[i][j].is_zero()) row += field_->mul(form_[i][j], y[j]);
    acc += field_->mul(x[i], row);
  }
  return acc;
}

RootVector CoxeterGroup::reflect(const RootVector& x, Generator i) const {
  AlgebraicReal b;
  for (int j = 0; j < rank(); ++j)
    if (!x[j].is_zero() && !form_[i][j].is_zero()) b += field_->mul(form_[i][j], x[j]);
  RootVector y = x;
  y[i] -= b * Rational(2);
  return y;
}

Sign CoxeterGroup::root_sign(const RootVector& v) const {
  Sign s = Sign::Zero;
  for (const auto& c : v) {
    const Sign t = field_->sign(c);
    if (t == Sign::Zero) continue;
    if (s == Sign::Zero)
      s = t;
    else if (s != t)
      throw ConsistencyError("root with mixed-sign coordinates encountered");
  }
  if (s == Sign::Zero) throw ConsistencyError("zero vector in the root table");
  return s;
}

Root CoxeterGroup::intern(RootVector v) {
  const bool negative = root_sign(v) == Sign::Negative;
  if (negative)
    for (auto& c : v) c = -c;
  std::string key;
  for (const auto& c : v) {
    key += c.to_string();
    key += '|';
  }
  auto it = root_index_.find(key);
  std::uint32_t idx;
  if (it != root_index_.end()) {
    idx = it->second;
  } else {
    idx = static_cast<std::uint32_t>(roots_.size());
    roots_.push_back(std::move(v));
    transitions_.resize(roots_.size() * rank(), -1);
    root_index_.emplace(std::move(key), idx);
  }
  Root r = Root::positive(idx);
  return negative ? -r : r;
}

Root CoxeterGroup::reflect(Root r, Generator i) {
  const std::uint32_t idx = r.index();
  if (idx == i) return -r;
  auto& slot = transitions_[static_cast<std::size_t>(idx) * rank() + i];
  if (slot < 0) {
    RootVector y = reflect(roots_[idx], i);
    Root image = intern(std::move(y));
    // intern may reallocate transitions_
    transitions_[static_cast<std::size_t>(idx) * rank() + i] =
        static_cast<std::int64_t>(image.is_negative() ? (image.index() << 1 | 1u) : image.index() << 1);
  }
  const auto code = static_cast<std::uint32_t>(transitions_[static_cast<std::size_t>(idx) * rank() + i]);
  Root image = Root::positive(code >> 1);
  if (code & 1u) image = -image;
  return r.is_negative() ? -image : image;
}

const RootVector& CoxeterGroup::root_vector(Root r) const { return roots_.at(r.index()); }

RootVector CoxeterGroup::signed_root_vector(Root r) const {
  RootVector v = root_vector(r);
  if (r.is_negative())
    for (auto& c : v) c = -c;
  return v;
}

Root CoxeterGroup::apply(const Word& w, Root r) {
  for (auto it = w.rbegin(); it != w.rend(); ++it) r = reflect(r, *it);
  return r;
}

Root CoxeterGroup::apply_inverse(const Word& w, Root r) {
  for (auto g : w) r = reflect(r, g);
  return r;
}

// Deletion-condition reduction: append letters one at a time, cancelling
// the letter whose tracked root turns negative.
Word CoxeterGroup::reduce(const Word& w) {
  Word v;
  v.reserve(w.size());
  for (Generator s : w) {
    if (s >= rank()) throw InputError("generator index out of range");
    Root rho = simple_root(s);
    bool deleted = false;
    for (std::size_t p = v.size(); p-- > 0;) {
      rho = reflect(rho, v[p]);
      if (rho.is_negative()) {
        v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
        deleted = true;
        break;
      }
    }
    if (!deleted) v.push_back(s);
  }
  return v;
}

// Greedy ShortLex: the first letter is the smallest left descent; deleting
// it by the exchange condition leaves a reduced word for the rest.
Element CoxeterGroup::shortlex(Word v) {
  Word out;
  out.reserve(v.size());
  while (!v.empty()) {
    bool found = false;
    for (Generator i = 0; i < rank() && !found; ++i) {
      Root rho = simple_root(i);
      for (std::size_t p = 0; p < v.size(); ++p) {
        rho = reflect(rho, v[p]);
        if (rho.is_negative()) {
          out.push_back(i);
          v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
          found = true;
          break;
        }
      }
    }
    if (!found) throw ConsistencyError("reduced word without a left descent");
  }
  return Element(std::move(out));
}

Element CoxeterGroup::normal_form(const Word& w) {
  std::string key = word_key(w);
  if (auto it = nf_cache_.find(key); it != nf_cache_.end()) return it->second;
  Element e = shortlex(reduce(w));
  nf_cache_.emplace(std::move(key), e);
  return e;
}

Element CoxeterGroup::multiply(const Element& g, const Element& h) {
  Word w = g.word();
  w.insert(w.end(), h.word().begin(), h.word().end());
  return normal_form(w);
}

Element CoxeterGroup::inverse(const Element& g) {
  return normal_form(Word(g.word().rbegin(), g.word().rend()));
}

Element CoxeterGroup::times_generator(const Element& g, Generator s) {
  Word w = g.word();
  w.push_back(s);
  return normal_form(w);
}

Element CoxeterGroup::conjugate(Generator s, const Element& g) {
  Word w;
  w.reserve(g.word().size() + 2);
  w.push_back(s);
  w.insert(w.end(), g.word().begin(), g.word().end());
  w.push_back(s);
  return normal_form(w);
}

Element CoxeterGroup::conjugate(const Element& x, const Element& g) {
  Word w = x.word();
  w.insert(w.end(), g.word().begin(), g.word().end());
  w.insert(w.end(), x.word().rbegin(), x.word().rend());
  return normal_form(w);
}

bool CoxeterGroup::is_left_descent(const Element& g, Generator s) {
  return apply_inverse(g.word(), simple_root(s)).is_negative();
}

bool CoxeterGroup::is_right_descent(const Element& g, Generator s) {
  return apply(g.word(), simple_root(s)).is_negative();
}

std::optional<Wall> CoxeterGroup::as_reflection(const Element& g) {
  if (g.length() % 2 == 0) return std::nullopt;
  Element cur = g;
  Word conjugators;
  while (cur.length() > 1) {
    bool stepped = false;
    for (Generator s = 0; s < rank(); ++s) {
      if (!is_left_descent(cur, s)) continue;
      Element next = conjugate(s, cur);
      if (next.length() == cur.length() - 2) {
        conjugators.push_back(s);
        cur = std::move(next);
        stepped = true;
        break;
      }
    }
    if (!stepped) return std::nullopt;
  }
  Root r = apply(conjugators, simple_root(cur.word()[0]));
  return Wall{g, r.abs()};
}

Root CoxeterGroup::panel_root(const Element& g, Generator s) { return apply(g.word(), simple_root(s)).abs(); }

Wall CoxeterGroup::panel_wall(const Element& g, Generator s) { return wall_from(g, s); }

Wall CoxeterGroup::wall_from(const Element& w, Generator s) {
  Word word = w.word();
  word.push_back(s);
  word.insert(word.end(), w.word().rbegin(), w.word().rend());
  return Wall{normal_form(word), panel_root(w, s)};
}

Side CoxeterGroup::side(Root positive_root, const Element& g) {
  return apply_inverse(g.word(), positive_root).is_positive() ? Side::Plus : Side::Minus;
}

int CoxeterGroup::order_cap() const {
  if (budget_.order_cap > 0) return budget_.order_cap;
  return static_cast<int>(2 * matrix_.largest_finite_order() * rank() * 8);
}

Order CoxeterGroup::order_of_product(const Wall& t1, const Wall& t2) {
  if (t1.root == t2.root) return Order(1);
  const AlgebraicReal b = bilinear(root_vector(t1.root), root_vector(t2.root));
  const AlgebraicReal one(1);
  if (field_->sign(b - one) != Sign::Negative || field_->sign(-b - one) != Sign::Negative)
    return Order::infinity();
  const Element prod = multiply(t1.reflection, t2.reflection);
  Element power = prod;
  const int cap = order_cap();
  for (int k = 1; k <= cap; ++k) {
    if (power.is_identity()) return Order(static_cast<std::uint32_t>(k));
    power = multiply(power, prod);
  }
  throw ConsistencyError("|B(r1,r2)| < 1 but no finite order up to " + std::to_string(cap) +
                         "; t1 = " + format(t1.reflection) + ", t2 = " + format(t2.reflection) +
                         ", B = " + b.to_string() + ", matrix = " + to_json_text(matrix_));
}

std::vector<Element> CoxeterGroup::enumerate_elements(int max_length, std::size_t cap) {
  std::vector<Element> out{identity()};
  std::unordered_set<Element, ElementHash> seen{identity()};
  std::size_t head = 0;
  while (head < out.size()) {
    const Element g = out[head++];
    if (max_length >= 0 && g.length() >= max_length) continue;
    for (Generator s = 0; s < rank(); ++s) {
      if (is_right_descent(g, s)) continue;
      Element h = times_generator(g, s);
      if (seen.insert(h).second) {
        if (out.size() >= cap)
          throw BudgetError("element enumeration exceeded cap " + std::to_string(cap));
        out.push_back(std::move(h));
      }
    }
  }
  return out;
}

std::vector<Wall> CoxeterGroup::enumerate_reflections(int max_length) {
  if (max_length < 1) throw InputError("reflection length budget must be >= 1");
  const auto conjugators = enumerate_elements((max_length - 1) / 2, budget_.max_elements);
  std::vector<Wall> out;
  std::set<Root> seen;
  for (const auto& w : conjugators)
    for (Generator s = 0; s < rank(); ++s) {
      if (is_right_descent(w, s)) continue;
      Wall t = wall_from(w, s);
      if (t.reflection.length() <= max_length && seen.insert(t.root).second) out.push_back(std::move(t));
    }
  std::sort(out.begin(), out.end(),
            [](const Wall& a, const Wall& b) { return a.reflection < b.reflection; });
  return out;
}

int CoxeterGroup::span_dimension(const std::vector<RootVector>& vectors) const {
  // Expand over Q: the Q-span of {c^j v} has dimension degree * dim_K span.
  const int d = field_->degree();
  const int n = rank();
  const AlgebraicReal c = field_->generator();
  std::vector<std::vector<Rational>> rows;
  for (const auto& v : vectors) {
    RootVector cur = v;
    for (int j = 0; j < d; ++j) {
      std::vector<Rational> row(static_cast<std::size_t>(n * d), 0);
      for (int i = 0; i < n; ++i) {
        const auto& q = cur[i].coefficients();
        for (std::size_t k = 0; k < q.size(); ++k) row[i * d + k] = q[k];
      }
      rows.push_back(std::move(row));
      for (auto& x : cur) x = field_->mul(x, c);
    }
  }
  int r = 0;
  const int cols = n * d;
  for (int col = 0; col < cols && r < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int i = r; i < static_cast<int>(rows.size()); ++i)
      if (rows[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = 0; i < static_cast<int>(rows.size()); ++i) {
      if (i == r || rows[i][col] == 0) continue;
      const Rational f = rows[i][col] / rows[r][col];
      for (int k = col; k < cols; ++k) rows[i][k] -= f * rows[r][k];
    }
    ++r;
  }
  if (r % d != 0) throw ConsistencyError("rational rank not a multiple of the field degree");
  return r / d;
}

Word CoxeterGroup::parse_word(std::string_view text) const {
  std::istringstream in{std::string(text)};
  std::string tok;
  Word w;
  while (in >> tok) {
    if (tok == "e") continue;
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw InputError("bad generator token \"" + tok + "\"");
    }
    if (used != tok.size() || v < 1 || v > rank())
      throw InputError("generator index \"" + tok + "\" out of range 1.." + std::to_string(rank()));
    w.push_back(static_cast<Generator>(v - 1));
  }
  return w;
}

std::string CoxeterGroup::format_word(const Word& w) {
  if (w.empty()) return "e";
  std::string out;
  for (std::size_t k = 0; k < w.size(); ++k) {
    if (k) out += ' ';
    out += std::to_string(w[k] + 1);
  }
  return out;
}

std::string CoxeterGroup::format(const Element& g) { return format_word(g.word()); }

}  // namespace coxlab
