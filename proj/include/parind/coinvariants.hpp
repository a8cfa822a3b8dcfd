#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "parind/coxeter.hpp"
#include "parind/matrix.hpp"
#include "parind/polynomial.hpp"

namespace parind {

/// S / (S^{W_I}_+) for a subset I of the simple reflections; I = all gives
/// the coinvariant algebra C of W, a proper I gives C_I. Both are quotients
/// of the same polynomial ring S on h*.
///
/// Degrees in this interface are algebraic (a variable has degree 1);
/// modules over the algebra use cohomological degrees, twice as large.
class CoinvariantAlgebra {
 public:
  /// Serialized state; see the cache functions in serialize.hpp.
  struct Data {
    RootSystem root_system;
    std::vector<int> subset;
    std::vector<std::vector<Exponent>> basis;
    /// normal_form[k]: dim C_k x dim S_k
    std::vector<Matrix> normal_form;
    /// Invariants that generate the ideal, degree by degree.
    std::vector<Polynomial> ideal_generators;
  };

  CoinvariantAlgebra(const WeylGroup& group, std::vector<int> subset);
  explicit CoinvariantAlgebra(Data data);

  const RootSystem& root_system() const { return data_.root_system; }
  int nvars() const { return data_.root_system.rank; }
  const std::vector<int>& subset() const { return data_.subset; }
  bool is_full() const { return static_cast<int>(data_.subset.size()) == nvars(); }
  /// Highest nonzero algebraic degree.
  int top_degree() const { return static_cast<int>(data_.basis.size()) - 1; }
  std::size_t dim(int k) const;
  std::size_t total_dim() const;
  /// Standard monomials of degree k, decreasing graded-lex order.
  const std::vector<Exponent>& basis(int k) const;
  const std::vector<Polynomial>& ideal_generators() const { return data_.ideal_generators; }
  const Data& data() const { return data_; }

  /// Coordinates of a homogeneous polynomial of degree k in basis(k).
  std::vector<Rational> normal_form(const Polynomial& f) const;
  std::vector<Rational> normal_form(const Polynomial& f, int k) const;
  Polynomial lift(int k, const std::vector<Rational>& coords) const;
  /// Product of basis(k1)[i] and basis(k2)[j], in basis(k1 + k2).
  std::vector<Rational> multiply_basis(int k1, std::size_t i, int k2, std::size_t j) const;

  /// Multiplication by a homogeneous polynomial: C_k -> C_{k + deg f}.
  Matrix multiplication_matrix(const Polynomial& f, int k) const;
  Matrix variable_action(int j, int k) const;
  /// Action of a simple reflection s of W_I on C_k.
  Matrix reflection_action(int s, int k) const;
  /// Demazure operator of s in W_I, C_k -> C_{k-1}.
  Matrix demazure_matrix(int s, int k) const;

  /// c = f + g alpha_s with f = (c + s c)/2 and g = demazure(c)/2; c, f in
  /// degree k and g in degree k - 1.
  std::pair<std::vector<Rational>, std::vector<Rational>> frobenius_decompose(int s, int k,
                                                                             const std::vector<Rational>& c) const;

  /// FNV-1a hash of the root-system record and subset.
  std::uint64_t content_hash() const;

 private:
  void check_generator(int s) const;
  Data data_;
};

/// Hash of the canonical record used for cache keys.
std::uint64_t coinvariant_key(const RootSystem& rs, const std::vector<int>& subset);

/// The quotient map C -> C_I in degree k. Both algebras must come from the
/// same root system and the subset of `target` must be contained in that
/// of `source`.
Matrix restriction_surjection(const CoinvariantAlgebra& source, const CoinvariantAlgebra& target, int k);

}  // namespace parind
