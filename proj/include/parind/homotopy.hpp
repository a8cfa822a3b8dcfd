#pragma once

#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "parind/hecke.hpp"
#include "parind/smod.hpp"

namespace parind {

/// D_y<shift> for y in the catalog.
struct Summand {
  int y = 0;
  int shift = 0;
  friend bool operator==(const Summand& a, const Summand& b) { return a.y == b.y && a.shift == b.shift; }
  friend bool operator<(const Summand& a, const Summand& b) {
    return a.y != b.y ? a.y < b.y : a.shift < b.shift;
  }
};

/// Bounded complex whose terms are formal direct sums of shifted catalog
/// modules. A differential component from D_a<k> to D_b<l> is stored as a map
/// D_a -> D_b of degree l - k.
///
/// `twist` is a formal power of v carried along with the complex: the class
/// of the complex is v^twist times the alternating sum of its summands.
class ComplexOfModules {
 public:
  explicit ComplexOfModules(std::shared_ptr<const Catalog> catalog);
  static ComplexOfModules single(std::shared_ptr<const Catalog> catalog, std::vector<Summand> summands,
                                 int degree = 0);

  const Catalog& catalog() const { return *catalog_; }
  const std::shared_ptr<const Catalog>& catalog_ptr() const { return catalog_; }
  int twist() const { return twist_; }
  void set_twist(int t) { twist_ = t; }

  /// Adds a summand in cohomological degree n; returns its id.
  int add(int n, Summand s);
  /// Sets the component from summand id `from` (degree n) to `to` (degree n+1).
  void set_component(int from, int to, ModuleMap f);

  bool is_zero() const;
  /// Cohomological degrees with nonzero terms, ascending.
  std::vector<int> degrees() const;
  /// Summand ids in degree n, in insertion order.
  std::vector<int> ids(int n) const;
  const Summand& summand(int id) const { return summands_.at(id).first; }
  int degree_of(int id) const { return summands_.at(id).second; }
  /// Component from -> to, or nullptr when it is zero.
  const ModuleMap* component(int from, int to) const;
  /// Nonzero components leaving `from`.
  std::vector<std::pair<int, const ModuleMap*>> out_components(int from) const;
  std::vector<std::pair<int, const ModuleMap*>> in_components(int to) const;
  std::size_t size() const { return summands_.size(); }

  /// Summands per degree, sorted.
  std::map<int, std::vector<Summand>> terms() const;
  /// sum_d dim t^d of each term.
  std::map<int, LaurentPoly> graded_characters() const;

  /// Empty when d o d = 0; otherwise the first failing position.
  std::string d_squared_defect() const;

  /// Canonical text rendering (sorted summands, no matrices).
  std::string summary() const;

 private:
  friend ComplexOfModules gaussian_eliminate(const ComplexOfModules& x, std::mt19937_64* rng);
  void remove(int id);

  std::shared_ptr<const Catalog> catalog_;
  int twist_ = 0;
  int next_id_ = 0;
  std::map<int, std::pair<Summand, int>> summands_;            // id -> (summand, degree)
  std::map<int, std::map<int, ModuleMap>> out_;                // from -> to -> map
  std::map<int, std::set<int>> in_;                            // to -> sources
};

/// The complex C (x)_{C^s} X <2>, term by term; twist unchanged.
ComplexOfModules apply_theta(int s, const ComplexOfModules& x);
/// Total complex of X -> C (x)_{C^s} X <2> with X in relative degree -1;
/// the differential on the X row is negated. Twist increases by one.
ComplexOfModules tensor_rouquier(int s, const ComplexOfModules& x);
/// Minimal complex by repeated Gaussian elimination of invertible components.
/// With an rng the eliminations are done in random order. The K_0 class is
/// compared before and after (InternalError on mismatch).
ComplexOfModules gaussian_eliminate(const ComplexOfModules& x, std::mt19937_64* rng = nullptr);

/// v^twist * sum_n (-1)^n sum_{D_y<k> in X^n} v^{l(y)-k} b_y
HeckeElement k0_class(const ComplexOfModules& x);
/// The same without the twist.
HeckeElement raw_k0_class(const ComplexOfModules& x);

/// dim H^p of the complex Hom(X, Y), summed over all internal shifts of Y.
std::size_t hom_cohomology_dim(const ComplexOfModules& x, const ComplexOfModules& y, int p);
/// Homotopy classes of chain maps X -> Y<g> for any g vanish.
bool hom_complex_vanishing(const ComplexOfModules& x, const ComplexOfModules& y);
/// A chain isomorphism X -> Y of degree 0 between minimal complexes, searched
/// among random chain maps; returns false if none is found.
bool find_chain_isomorphism(const ComplexOfModules& x, const ComplexOfModules& y, std::mt19937_64& rng,
                            int attempts = 12);

/// Complex of assembled modules, used to cross-check the summand form.
struct RawComplex {
  std::map<int, ModulePtr> terms;
  std::map<int, ModuleMap> differentials;  // n -> (X^n -> X^{n+1})
  int twist = 0;

  std::string d_squared_defect() const;
  /// sum_n (-1)^n gdim(X^n) in t, times t^twist.
  LaurentPoly euler_characteristic() const;
};

RawComplex to_raw(const ComplexOfModules& x);
RawComplex raw_single(const ModulePtr& m);
/// Same construction as tensor_rouquier on assembled modules, without
/// decomposing.
RawComplex raw_tensor_rouquier(int s, const RawComplex& x);

}  // namespace parind
