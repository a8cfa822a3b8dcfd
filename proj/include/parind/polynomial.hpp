#pragma once

#include <map>
#include <string>
#include <vector>

#include "parind/coxeter.hpp"
#include "parind/rational.hpp"

namespace parind {

using Exponent = std::vector<int>;

/// Polynomial in the fundamental weights omega_1..omega_n, i.e. an element
/// of S = Sym(h*). A Weyl group element with weight-space matrix M acts by
/// the ring automorphism omega_j -> sum_k M[k][j] omega_k.
class Polynomial {
 public:
  Polynomial() = default;
  explicit Polynomial(int nvars) : nvars_(nvars) {}
  static Polynomial constant(int nvars, const Rational& c);
  static Polynomial variable(int nvars, int j);
  static Polynomial monomial(const Exponent& e, const Rational& c = 1);
  /// sum_j coeffs[j] omega_j
  static Polynomial linear(const std::vector<Rational>& coeffs);

  int nvars() const { return nvars_; }
  const std::map<Exponent, Rational>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  bool is_homogeneous() const;
  Rational coefficient(const Exponent& e) const;
  void add_term(const Exponent& e, const Rational& c);

  /// Image under the automorphism given by an n x n weight-space matrix
  /// (row-major integer canonical form).
  Polynomial act(const std::vector<int>& matrix) const;
  /// Exact quotient by a nonzero linear form; throws InternalError when the
  /// division leaves a remainder.
  Polynomial divide_by_linear(const std::vector<Rational>& form) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  std::string to_string() const;

 private:
  int nvars_ = 0;
  std::map<Exponent, Rational> terms_;
};

/// Monomials of total degree d in n variables, in decreasing graded-lex order.
std::vector<Exponent> monomials_of_degree(int nvars, int d);

/// alpha_s as a linear form in the fundamental weights.
Polynomial simple_root(const RootSystem& rs, int s);
Polynomial reflect(const RootSystem& rs, int s, const Polynomial& f);
/// (f - s.f) / alpha_s
Polynomial demazure(const RootSystem& rs, int s, const Polynomial& f);

}  // namespace parind
