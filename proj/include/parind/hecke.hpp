#pragma once

#include <map>
#include <string>
#include <vector>

#include "parind/coxeter.hpp"
#include "parind/rational.hpp"

namespace parind {

/// Exact Laurent polynomial in v. Zero coefficients are never stored.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  LaurentPoly(const Rational& c);  // NOLINT(google-explicit-constructor)
  LaurentPoly(int c) : LaurentPoly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  static LaurentPoly monomial(const Rational& c, int exponent);
  /// v^e
  static LaurentPoly v(int e = 1) { return monomial(1, e); }

  const std::map<int, Rational>& terms() const { return c_; }
  Rational coefficient(int e) const;
  bool is_zero() const { return c_.empty(); }
  int min_degree() const;
  int max_degree() const;

  /// v -> v^{-1}
  LaurentPoly bar() const;
  /// v -> 1
  Rational at_one() const;
  Rational evaluate(const Rational& v) const;
  bool has_nonnegative_integer_coefficients() const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const LaurentPoly& o);
  LaurentPoly operator-() const;
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) { return !(a == b); }

  /// e.g. "v^-1 + 2v^2", "0"
  std::string to_string() const;

 private:
  void add_term(int e, const Rational& c);
  std::map<int, Rational> c_;
};

/// Element of the Hecke algebra of a finite Weyl group, expanded in the
/// standard basis {H_w}. Normalization: H_s^2 = (v^{-1} - v) H_s + 1.
class HeckeElement {
 public:
  HeckeElement() = default;
  explicit HeckeElement(const WeylGroup* group) : group_(group) {}
  /// p * H_w
  static HeckeElement standard(const WeylElement& w, const LaurentPoly& p = LaurentPoly(1));

  const WeylGroup* group() const { return group_; }
  /// Keyed by element index.
  const std::map<int, LaurentPoly>& terms() const { return terms_; }
  LaurentPoly coefficient(const WeylElement& w) const;
  LaurentPoly coefficient(int w) const;
  bool is_zero() const { return terms_.empty(); }
  void add(int w, const LaurentPoly& p);

  /// this * H_s
  HeckeElement times_generator(int s) const;
  /// Semilinear bar involution: v -> v^{-1}, H_w -> H_{w^{-1}}^{-1}.
  HeckeElement bar() const;
  /// Coefficientwise v -> 1 (an element of the group algebra).
  std::map<int, Rational> at_one() const;

  HeckeElement& operator+=(const HeckeElement& o);
  HeckeElement& operator-=(const HeckeElement& o);
  friend HeckeElement operator+(HeckeElement a, const HeckeElement& b) { return a += b; }
  friend HeckeElement operator-(HeckeElement a, const HeckeElement& b) { return a -= b; }
  friend HeckeElement operator*(const HeckeElement& a, const HeckeElement& b);
  friend HeckeElement operator*(const LaurentPoly& p, const HeckeElement& a);
  friend bool operator==(const HeckeElement& a, const HeckeElement& b);
  friend bool operator!=(const HeckeElement& a, const HeckeElement& b) { return !(a == b); }

  /// e.g. "H(s1 s2) + (v)H(s2)"
  std::string to_string() const;

 private:
  void check_group(const HeckeElement& o) const;
  const WeylGroup* group_ = nullptr;
  std::map<int, LaurentPoly> terms_;
};

HeckeElement hecke_multiply(const HeckeElement& a, const HeckeElement& b);

/// The Kazhdan-Lusztig basis {b_w} of one group, computed for every element
/// by right multiplication with b_s = H_s + v and subtraction of lower terms.
class KLBasis {
 public:
  explicit KLBasis(const WeylGroup& group);
  const WeylGroup& group() const { return *group_; }
  const HeckeElement& b(int w) const { return basis_[static_cast<std::size_t>(w)]; }
  const HeckeElement& b(const WeylElement& w) const { return b(w.index()); }
  /// h_{x,w}: coefficient of H_x in b_w.
  LaurentPoly h(int x, int w) const { return b(w).coefficient(x); }
  /// Coefficient of v^1 in h_{x,w}.
  Rational mu(int x, int w) const { return h(x, w).coefficient(1); }
  /// Expresses a bar-invariant element in the KL basis (unitriangular solve).
  std::map<int, LaurentPoly> expand(const HeckeElement& h) const;

 private:
  const WeylGroup* group_;
  std::vector<HeckeElement> basis_;
};

HeckeElement kl_basis(const WeylElement& w);

/// Coefficients h_{z,x} of the KL basis element b_x of W_I, computed in the
/// Hecke algebra of W_I and reported on elements of W.
std::map<WeylElement, LaurentPoly> parabolic_kl(const ParabolicDatum& datum, const WeylElement& x);

/// Sum over z of h_{z,x}(v) H_{zw}.
HeckeElement predicted_class(const ParabolicDatum& datum, const WeylElement& x, const WeylElement& w);

/// The graded dimension dictionary: H_x -> t^{-l(x)}, v -> t. Turns a K_0
/// class into the Poincare series of the corresponding module.
LaurentPoly graded_rank(const HeckeElement& h);

}  // namespace parind
