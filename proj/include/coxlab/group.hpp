#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coxlab/algebraic.hpp"
#include "coxlab/coxeter_matrix.hpp"

namespace coxlab {

using Word = std::vector<Generator>;
using RootVector = std::vector<AlgebraicReal>;

/// A group element in ShortLex normal form. Also a chamber of the Davis
/// complex; the identity is the base chamber.
class Element {
 public:
  Element() = default;

  const Word& word() const { return word_; }
  int length() const { return static_cast<int>(word_.size()); }
  bool is_identity() const { return word_.empty(); }
  /// Bitmask of generators occurring in the word (an invariant of the element).
  GeneratorSet support() const;

  /// ShortLex order: length first, then lexicographic.
  friend std::strong_ordering operator<=>(const Element& a, const Element& b);
  friend bool operator==(const Element& a, const Element& b) = default;

 private:
  friend class CoxeterGroup;
  explicit Element(Word w) : word_(std::move(w)) {}
  Word word_;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

/// A root of the Tits representation, interned in a group's root table.
/// Stored as positive-root index plus a sign bit.
class Root {
 public:
  Root() = default;
  static Root positive(std::uint32_t index) { return Root(index << 1); }

  std::uint32_t index() const { return code_ >> 1; }
  bool is_negative() const { return code_ & 1u; }
  bool is_positive() const { return !is_negative(); }
  Root operator-() const { return Root(code_ ^ 1u); }
  Root abs() const { return Root(code_ & ~1u); }

  friend auto operator<=>(const Root&, const Root&) = default;

 private:
  explicit Root(std::uint32_t code) : code_(code) {}
  std::uint32_t code_ = 0;
};

/// A wall of the Davis complex: a reflection with its positive root.
struct Wall {
  Element reflection;
  Root root;  // always positive

  friend bool operator==(const Wall& a, const Wall& b) { return a.root == b.root; }
};

enum class Side : std::int8_t { Minus = -1, Plus = 1 };

inline Side opposite(Side s) { return s == Side::Plus ? Side::Minus : Side::Plus; }

/// Explicit computational caps. Every bounded search takes one of these.
struct Budget {
  std::size_t max_elements = 100000;
  int max_reflection_length = 12;
  std::size_t max_chambers = 8;
  std::uint32_t max_field_level = 2520;
  int order_cap = 0;  // 0: derive from the matrix
};

/// A Coxeter system with its exact Tits representation and word problem.
///
/// Holds lazily-filled caches (root table, normal forms) that are
/// semantically transparent. An instance is meant to be owned by one thread;
/// parallel callers each build their own.
class CoxeterGroup {
 public:
  explicit CoxeterGroup(CoxeterMatrix m, Budget budget = {});

  const CoxeterMatrix& matrix() const { return matrix_; }
  int rank() const { return matrix_.rank(); }
  const Field& field() const { return *field_; }
  const Budget& budget() const { return budget_; }

  /// Gram matrix of the Tits form: B(e_i,e_i) = 1, -cos(pi/m_ij), -1 for infinity.
  const std::vector<RootVector>& tits_form() const { return form_; }
  AlgebraicReal bilinear(const RootVector& x, const RootVector& y) const;
  /// x - 2 B(e_i, x) e_i
  RootVector reflect(const RootVector& x, Generator i) const;

  // Root table.
  Root simple_root(Generator i) const { return Root::positive(i); }
  Root reflect(Root r, Generator i);
  const RootVector& root_vector(Root r) const;  // of r.abs()
  RootVector signed_root_vector(Root r) const;
  std::size_t root_count() const { return roots_.size(); }
  /// w(r) for w given by the word t1...tk: t1(t2(...tk(r))).
  Root apply(const Word& w, Root r);
  /// w^{-1}(r) = tk(...t1(r)).
  Root apply_inverse(const Word& w, Root r);

  // Word problem.
  Element identity() const { return Element{}; }
  Element generator(Generator i) const { return Element(Word{i}); }
  Element normal_form(const Word& w);
  Element multiply(const Element& g, const Element& h);
  Element inverse(const Element& g);
  /// g s
  Element times_generator(const Element& g, Generator s);
  /// s g s
  Element conjugate(Generator s, const Element& g);
  /// x g x^{-1}
  Element conjugate(const Element& x, const Element& g);
  bool is_left_descent(const Element& g, Generator s);
  bool is_right_descent(const Element& g, Generator s);

  // Reflections and walls.
  std::optional<Wall> as_reflection(const Element& g);
  /// The wall of the panel between chambers g and g*s.
  Wall panel_wall(const Element& g, Generator s);
  /// The positive root of that wall, without building the reflection element.
  Root panel_root(const Element& g, Generator s);
  /// Wall from a generator conjugate: w s w^{-1}.
  Wall wall_from(const Element& w, Generator s);
  Side side(const Wall& t, const Element& g) { return side(t.root, g); }
  Side side(Root positive_root, const Element& g);

  /// Order of t1 t2: infinity iff |B(r1,r2)| >= 1, otherwise found by search.
  Order order_of_product(const Wall& t1, const Wall& t2);
  int order_cap() const;

  /// All reflections of length <= max_length, sorted ShortLex.
  std::vector<Wall> enumerate_reflections(int max_length);
  /// Elements in BFS order up to `max_length` (-1: unbounded); throws
  /// BudgetError past `cap` elements.
  std::vector<Element> enumerate_elements(int max_length, std::size_t cap);

  /// Dimension over the field of the span of the given vectors.
  int span_dimension(const std::vector<RootVector>& vectors) const;

  // Text forms: 1-based whitespace-separated indices, "e" for the identity.
  Word parse_word(std::string_view text) const;
  static std::string format(const Element& g);
  static std::string format_word(const Word& w);

 private:
  Root intern(RootVector v);
  Sign root_sign(const RootVector& v) const;
  Word reduce(const Word& w);
  Element shortlex(Word reduced);

  CoxeterMatrix matrix_;
  Budget budget_;
  std::shared_ptr<const Field> field_;
  std::vector<RootVector> form_;

  std::vector<RootVector> roots_;            // positive roots
  std::vector<std::int64_t> transitions_;    // roots_.size() * rank; -1 unknown
  std::unordered_map<std::string, std::uint32_t> root_index_;
  std::unordered_map<std::string, Element> nf_cache_;
};

}  // namespace coxlab
