#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "parind/matrix.hpp"

namespace parind {

enum class CartanType { A, B, C, D, G, F };

char to_char(CartanType t);
/// Accepts "A".."G" (case-insensitive); throws ConfigError otherwise.
CartanType parse_cartan_type(const std::string& s);

/// Finite crystallographic root system realized on h* with the basis of
/// fundamental weights. In that basis the simple roots are the rows of the
/// Cartan matrix and every reflection matrix is integral.
struct RootSystem {
  CartanType type = CartanType::A;
  int rank = 0;
  /// Human-readable name, e.g. "A2" or "A3|1,2" for a parabolic subsystem.
  std::string label;
  /// cartan[i][j] = <alpha_i, alpha_j^vee>.
  std::vector<std::vector<int>> cartan;
  /// simple_roots[i] in fundamental weight coordinates.
  std::vector<std::vector<Rational>> simple_roots;
  /// reflections[i] acts on column vectors of fundamental weight coordinates.
  std::vector<Matrix> reflections;
  /// Positive roots in simple-root coordinates.
  std::vector<std::vector<int>> positive_roots;

  /// Order of s_i s_j, read off from the Cartan matrix.
  int coxeter_m(int i, int j) const;
  /// The root alpha_i in fundamental weight coordinates, as integers.
  std::vector<int> simple_root_weights(int i) const;
};

/// Supports A_n (1 <= n <= 5), B_n and C_n (2 <= n <= 4), D4, G2, F4, i.e.
/// every finite crystallographic type with |W| <= 1152.
RootSystem build_root_system(CartanType type, int rank);
/// Root system attached to an arbitrary Cartan matrix (used for parabolic
/// subsystems). The type field is inherited from `parent_type`.
RootSystem root_system_from_cartan(const std::vector<std::vector<int>>& cartan, CartanType parent_type,
                                   std::string label);
/// Cartan submatrix on `subset`, as a standalone root system.
RootSystem parabolic_subsystem(const RootSystem& rs, const std::vector<int>& subset);

class WeylGroup;

/// Handle to an element of an enumerated Weyl group. The canonical form is
/// the integral matrix of the element acting on h*; two handles are equal
/// iff they refer to the same group and the same canonical form.
class WeylElement {
 public:
  WeylElement() = default;
  WeylElement(const WeylGroup* group, int index) : group_(group), index_(index) {}

  const WeylGroup* group() const { return group_; }
  int index() const { return index_; }
  int length() const;
  /// Lexicographically smallest reduced word, 0-based generator indices.
  const std::vector<int>& reduced_word() const;
  const std::vector<int>& canonical_form() const;
  bool is_identity() const { return index_ == 0; }

  WeylElement operator*(const WeylElement& other) const;
  WeylElement inverse() const;
  bool bruhat_leq(const WeylElement& other) const;

  friend bool operator==(const WeylElement& a, const WeylElement& b) {
    return a.group_ == b.group_ && a.index_ == b.index_;
  }
  friend bool operator!=(const WeylElement& a, const WeylElement& b) { return !(a == b); }
  /// Orders by (length, reduced word).
  friend bool operator<(const WeylElement& a, const WeylElement& b);

  std::string to_string() const;

 private:
  const WeylGroup* group_ = nullptr;
  int index_ = 0;
};

/// Finite Weyl group enumerated by breadth-first closure of the reflection
/// matrices. Immutable after construction apart from lazily built caches.
class WeylGroup {
 public:
  explicit WeylGroup(RootSystem rs);
  WeylGroup(const WeylGroup&) = delete;
  WeylGroup& operator=(const WeylGroup&) = delete;

  const RootSystem& root_system() const { return rs_; }
  int rank() const { return rs_.rank; }
  std::size_t order() const { return canon_.size(); }

  WeylElement element(int index) const { return WeylElement(this, index); }
  WeylElement identity() const { return element(0); }
  WeylElement generator(int s) const;
  WeylElement longest() const { return element(longest_); }
  /// Product of the generators in `word` (0-based); need not be reduced.
  WeylElement from_word(const std::vector<int>& word) const;
  /// Element with the given canonical form, if it is in the group.
  std::optional<WeylElement> find(const std::vector<int>& canonical) const;
  /// All elements sorted by (length, reduced word).
  std::vector<WeylElement> elements() const;

  int mul_right(int w, int s) const { return right_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)]; }
  int mul_left(int s, int w) const { return left_[static_cast<std::size_t>(w)][static_cast<std::size_t>(s)]; }
  int multiply(int u, int w) const;
  int inverse(int w) const { return inverse_[static_cast<std::size_t>(w)]; }
  int length(int w) const { return length_[static_cast<std::size_t>(w)]; }
  const std::vector<int>& word(int w) const { return word_[static_cast<std::size_t>(w)]; }
  const std::vector<int>& canonical(int w) const { return canon_[static_cast<std::size_t>(w)]; }
  bool has_left_descent(int w, int s) const { return length(mul_left(s, w)) < length(w); }
  bool has_right_descent(int w, int s) const { return length(mul_right(w, s)) < length(w); }

  /// Number of positive roots sent to negative roots by w.
  int inversion_count(int w) const;
  /// Subword criterion on the reduced word of w.
  bool bruhat_leq(int u, int w) const;
  /// Matrix of w acting on h*.
  Matrix matrix(int w) const;

 private:
  RootSystem rs_;
  std::vector<std::vector<int>> canon_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<int>> right_;
  std::vector<std::vector<int>> left_;
  std::vector<int> inverse_;
  std::vector<int> length_;
  std::vector<std::vector<int>> word_;
  int longest_ = 0;
  std::vector<std::vector<int>> positive_root_weights_;
  std::vector<std::vector<int>> positive_sorted_;

  mutable std::once_flag bruhat_once_;
  mutable std::vector<std::vector<bool>> lower_;
};

/// W_I and the shortest right coset representatives W^I of W_I \ W.
struct ParabolicDatum {
  const WeylGroup* group = nullptr;
  std::vector<int> subset;  // sorted, 0-based
  std::vector<WeylElement> elements_WI;
  std::vector<WeylElement> min_reps_WI;

  bool in_WI(const WeylElement& w) const;
  bool is_min_rep(const WeylElement& w) const;
  bool contains_generator(int s) const;

  std::vector<bool> in_WI_mask;
  std::vector<bool> min_rep_mask;
};

ParabolicDatum minimal_coset_reps(const WeylGroup& group, std::vector<int> subset);

/// A reduced word s_1...s_n of w with every prefix in W^I, chosen
/// lexicographically smallest among all such words; nullopt if none exists.
/// Throws PreconditionError when w is not in W^I.
std::optional<std::vector<int>> admissible_chain(const ParabolicDatum& datum, const WeylElement& w);

/// Every reduced word of w (exponential; intended for small groups).
std::vector<std::vector<int>> all_reduced_words(const WeylElement& w);

/// 1-based rendering "s1 s2 s1"; "e" for the identity.
std::string word_to_string(const std::vector<int>& word);

}  // namespace parind
