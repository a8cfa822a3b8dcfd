#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "parind/coinvariants.hpp"
#include "parind/hecke.hpp"
#include "parind/matrix.hpp"

namespace parind {

class GradedModule;
using ModulePtr = std::shared_ptr<const GradedModule>;
using AlgebraPtr = std::shared_ptr<const CoinvariantAlgebra>;

/// Finite-dimensional graded module over a coinvariant algebra, stored as
/// the action of the variables omega_1..omega_n (cohomological degree 2).
///
/// Degrees are cohomological and the shift convention is M<n>_d = M_{d+n}.
class GradedModule {
 public:
  GradedModule() = default;
  /// actions[j] maps degree d to the matrix M_d -> M_{d+2}; missing entries
  /// are zero. Throws InternalError on shape mismatches.
  GradedModule(AlgebraPtr algebra, const std::map<int, std::size_t>& dims,
               const std::vector<std::map<int, Matrix>>& actions);

  const CoinvariantAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  int nvars() const { return algebra_->nvars(); }

  bool is_zero() const { return dims_.empty(); }
  std::size_t dim(int d) const;
  std::size_t total_dim() const;
  /// Lowest and highest degree with a nonzero piece; 0 for the zero module.
  int min_degree() const { return lo_; }
  int max_degree() const { return lo_ + 2 * (static_cast<int>(dims_.size()) - 1); }
  /// Nonzero pieces only.
  std::map<int, std::size_t> graded_dims() const;
  /// sum_d dim(M_d) t^d
  LaurentPoly graded_dimension() const;

  /// omega_j : M_d -> M_{d+2}
  Matrix action(int j, int d) const;
  /// Action of a homogeneous polynomial of algebraic degree k: M_d -> M_{d+2k}.
  Matrix act(const Polynomial& f, int d) const;
  /// alpha_s : M_d -> M_{d+2}
  Matrix alpha_action(int s, int d) const;

  GradedModule shifted(int n) const;
  /// Same actions, regarded over another algebra on the same polynomial ring.
  GradedModule with_algebra(AlgebraPtr algebra) const;

  /// Empty string when the actions commute and every ideal generator of
  /// the algebra acts as zero; otherwise a description of the failure.
  std::string relation_defect() const;
  void validate() const;

  /// Data used by hom_space: for each degree, a basis of M_d made of
  /// products omega_j * (basis of M_{d-2}) completed by new generators.
  struct Presentation {
    struct Degree {
      int d = 0;
      std::size_t dim = 0;
      /// Column indices (j * dim M_{d-2} + i) of omega_j e_i kept in the basis.
      std::vector<std::size_t> spanning;
      /// Number of fresh generators completing the basis.
      std::size_t generators = 0;
      /// Inverse of the basis matrix [spanning | generators].
      Matrix basis_inverse;
      /// Coordinates of every omega_j e_i in the basis, one column each.
      Matrix span_coords;
    };
    std::vector<Degree> degrees;  // from min_degree to max_degree + 2
  };
  const Presentation& presentation() const;

 private:
  std::size_t index(int d) const { return static_cast<std::size_t>((d - lo_) / 2); }
  bool in_range(int d) const { return !dims_.empty() && d >= lo_ && d <= max_degree() && (d - lo_) % 2 == 0; }

  AlgebraPtr algebra_;
  int lo_ = 0;
  std::vector<std::size_t> dims_;
  /// actions_[j][i] : degree lo+2i -> lo+2i+2
  std::vector<std::vector<Matrix>> actions_;

  struct PresentationCache {
    std::once_flag once;
    Presentation value;
  };
  std::shared_ptr<PresentationCache> presentation_ = std::make_shared<PresentationCache>();
};

/// Morphism of graded modules raising degrees by `degree`: blocks map M_d to
/// N_{d+degree}.
class ModuleMap {
 public:
  ModuleMap() = default;
  /// The zero map.
  ModuleMap(ModulePtr source, ModulePtr target, int degree);
  static ModuleMap identity(const ModulePtr& m);

  const ModulePtr& source() const { return source_; }
  const ModulePtr& target() const { return target_; }
  int degree() const { return degree_; }

  Matrix block(int d) const;
  void set_block(int d, Matrix b);
  const std::map<int, Matrix>& blocks() const { return blocks_; }

  bool is_zero() const;
  /// Degree 0 and every block square and invertible.
  bool is_isomorphism() const;
  ModuleMap inverse() const;
  /// Empty string when the map commutes with every variable.
  std::string intertwining_defect() const;
  /// Entries of all blocks in degree order, row-major.
  std::vector<Rational> flatten() const;

  /// (*this) o other
  ModuleMap compose(const ModuleMap& other) const;
  ModuleMap& operator+=(const ModuleMap& o);
  ModuleMap& operator-=(const ModuleMap& o);
  ModuleMap& operator*=(const Rational& c);
  friend ModuleMap operator+(ModuleMap a, const ModuleMap& b) { return a += b; }
  friend ModuleMap operator-(ModuleMap a, const ModuleMap& b) { return a -= b; }
  friend ModuleMap operator*(ModuleMap a, const Rational& c) { return a *= c; }

  /// Reinterpret between other modules with the same graded pieces
  /// (shifted copies, restrictions).
  ModuleMap retarget(ModulePtr source, ModulePtr target, int degree) const;

 private:
  ModulePtr source_;
  ModulePtr target_;
  int degree_ = 0;
  std::map<int, Matrix> blocks_;  // only degrees where both sides are nonzero
};

/// A basis of Hom(M, N) in one degree together with a way to read off
/// coordinates of arbitrary maps.
struct HomBasis {
  std::vector<ModuleMap> basis;
  std::size_t dim() const { return basis.size(); }
  /// Coordinates of f in `basis`; throws InternalError if f is not in the span.
  std::vector<Rational> coordinates(const ModuleMap& f) const;

  std::vector<std::size_t> pivot_rows;
  Matrix pivot_inverse;
};

ModulePtr trivial_module(const AlgebraPtr& algebra);
/// C (x)_{C^s} M with basis 1 (x) M in the degrees of M and alpha_s (x) M two
/// degrees higher.
ModulePtr induce_frobenius(int s, const ModulePtr& m);
/// The unit M -> C (x)_{C^s} M, m -> alpha_s (x) m + 1 (x) alpha_s m, of degree 2.
/// `theta` must be induce_frobenius(s, m).
ModuleMap frobenius_unit(int s, const ModulePtr& m, const ModulePtr& theta);
/// id (x) f between induced modules.
ModuleMap theta_map(const ModuleMap& f, const ModulePtr& theta_source, const ModulePtr& theta_target);
/// Iterated induction of the trivial module; word[0] is applied last.
ModulePtr bott_samelson(const AlgebraPtr& algebra, const std::vector<int>& word);
/// Inflation of a C_I-module along C -> C_I.
ModulePtr restrict_module(const AlgebraPtr& target_algebra, const ModulePtr& m);
ModulePtr shift_module(const ModulePtr& m, int n);
ModulePtr direct_sum(const std::vector<ModulePtr>& parts);
/// Submodule spanned per degree by the columns of basis[d].
ModulePtr submodule(const ModulePtr& m, const std::map<int, Matrix>& basis);

HomBasis hom_space(const ModulePtr& m, const ModulePtr& n, int degree);

/// dim End^0(M) / rad, computed with the trace form.
std::size_t semisimple_end_dim(const ModulePtr& m);

/// Summand of a module with inclusion into and projection from it.
struct Piece {
  ModulePtr module;
  ModuleMap inclusion;   // piece -> M
  ModuleMap projection;  // M -> piece
};

/// Generic Krull-Schmidt splitting by Fitting decompositions of elements of
/// End^0; every piece has End^0 / rad = Q. Throws ClassificationError when no
/// split is found for a decomposable module.
std::vector<Piece> split_indecomposables(const ModulePtr& m, std::mt19937_64& rng);

/// Some isomorphism M -> N, or nullopt. A negative answer is certain when
/// graded dimensions or hom dimensions rule it out and otherwise rests on
/// `attempts` random elements of Hom^0(M, N) all being singular.
std::optional<ModuleMap> is_isomorphic(const ModulePtr& m, const ModulePtr& n, std::mt19937_64& rng,
                                       int attempts = 24);

/// Summand D_y<shift> of a module, with the maps realized on the unshifted
/// catalog module: inclusion D_y -> M of degree -shift and projection
/// M -> D_y of degree shift.
struct CatalogPiece {
  int y = 0;  // index in the ambient Weyl group
  int shift = 0;
  ModuleMap inclusion;
  ModuleMap projection;
};

struct ThetaData {
  ModulePtr theta;   // induce_frobenius(s, D_y)
  ModuleMap unit;    // D_y -> theta, degree 2
  std::vector<CatalogPiece> pieces;
};

/// Indecomposable Soergel modules D_y for y in W_I (or W), built by peeling
/// known summands off C (x)_{C^s} D_{ys}.
class Catalog {
 public:
  /// `group` is the ambient Weyl group; the entries are indexed by elements
  /// of the parabolic subgroup generated by the algebra's subset.
  Catalog(AlgebraPtr algebra, const WeylGroup& group);

  const CoinvariantAlgebra& algebra() const { return *algebra_; }
  const AlgebraPtr& algebra_ptr() const { return algebra_; }
  const WeylGroup& group() const { return *group_; }
  const ParabolicDatum& datum() const { return datum_; }
  bool contains(int y) const { return datum_.in_WI_mask[static_cast<std::size_t>(y)]; }
  const ModulePtr& module(int y) const;
  const ModulePtr& module(const WeylElement& y) const { return module(y.index()); }
  const std::vector<WeylElement>& elements() const { return datum_.elements_WI; }
  /// KL basis of the ambient group.
  const KLBasis& kl() const { return *kl_; }
  /// How D_y was obtained, e.g. "theta_s2(D[s1]) minus D[e]<-2>".
  const std::string& provenance(int y) const;

  /// Decomposition of C (x)_{C^s} D_y into catalog summands (cached).
  const ThetaData& theta(int s, int y) const;
  /// Hom(D_y, D_z) in the given degree (cached).
  const HomBasis& hom(int y, int z, int degree) const;

  /// Complete decomposition of M into shifted catalog modules, by peeling.
  /// Throws ClassificationError if a non-catalog remainder is left.
  std::vector<CatalogPiece> decompose(const ModulePtr& m) const;
  /// (y, shift) with M isomorphic to D_y<shift>, for indecomposable M.
  std::optional<std::pair<int, int>> identify(const ModulePtr& m, std::mt19937_64& rng) const;

 private:
  struct Peeled {
    std::vector<CatalogPiece> pieces;
    ModulePtr remainder;
    ModuleMap remainder_inclusion;
    ModuleMap remainder_projection;
  };
  Peeled peel(const ModulePtr& m, int max_length) const;

  AlgebraPtr algebra_;
  const WeylGroup* group_;
  ParabolicDatum datum_;
  std::shared_ptr<const KLBasis> kl_;
  std::vector<ModulePtr> modules_;
  std::vector<std::string> provenance_;

  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, int>, std::shared_ptr<ThetaData>> theta_cache_;
  mutable std::map<std::tuple<int, int, int>, std::shared_ptr<HomBasis>> hom_cache_;
};

std::shared_ptr<const Catalog> build_catalog(const AlgebraPtr& algebra, const WeylGroup& group);

}  // namespace parind
