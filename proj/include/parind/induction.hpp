#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "parind/homotopy.hpp"

namespace parind {

/// Group, coinvariant algebras and catalogs for one Cartan type. Parabolic
/// catalogs and induced complexes are built on demand and cached; all
/// accessors are thread-safe.
class Workspace {
 public:
  /// An empty cache_dir disables the on-disk coinvariant cache.
  Workspace(CartanType type, int rank, std::string cache_dir = "");
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const WeylGroup& group() const { return *group_; }
  const std::string& label() const { return label_; }
  const AlgebraPtr& algebra() const { return algebra_; }
  const std::shared_ptr<const Catalog>& catalog() const { return catalog_; }

  AlgebraPtr parabolic_algebra(const std::vector<int>& subset) const;
  std::shared_ptr<const Catalog> parabolic_catalog(const std::vector<int>& subset) const;
  const ParabolicDatum& datum(const std::vector<int>& subset) const;

  /// One-term complex D_x over C, identified with the restriction of D^I_x
  /// by an explicit isomorphism, with twist -l(x) so that its class is b_x.
  ComplexOfModules restricted_input(const std::vector<int>& subset, const WeylElement& x) const;
  /// ind_w(D^I_x) along the admissible chain of w (cached).
  const ComplexOfModules& induced(const std::vector<int>& subset, const WeylElement& x, const WeylElement& w) const;

 private:
  std::string label_;
  std::string cache_dir_;
  std::unique_ptr<WeylGroup> group_;
  AlgebraPtr algebra_;
  std::shared_ptr<const Catalog> catalog_;

  mutable std::mutex mutex_;
  mutable std::map<std::vector<int>, AlgebraPtr> algebras_;
  mutable std::map<std::vector<int>, std::shared_ptr<const Catalog>> catalogs_;
  mutable std::map<std::vector<int>, std::shared_ptr<const ParabolicDatum>> data_;
  mutable std::map<std::tuple<std::vector<int>, int, int>, std::shared_ptr<const ComplexOfModules>> induced_;
  mutable std::map<std::pair<std::vector<int>, int>, bool> restriction_checked_;
};

/// Dictionary between the formal v-twist of R_s (x) - and module shifts:
/// the theta term of R_s (x) D_e sits at shift `shift`, and the calibrated
/// class of a complex built with n Rouquier factors is
/// sign^n v^{twist * n} times its raw class.
struct CalibrationRecord {
  int shift = 2;
  int sign = 1;
  int twist = 1;
  friend bool operator==(const CalibrationRecord&, const CalibrationRecord&) = default;
};

struct CalibrationResult {
  struct Candidate {
    int shift = 0;
    int sign = 1;
    bool unit_is_chain_map = false;
    std::optional<int> twist;  // set when sign v^twist raw = H_s H_e
  };
  std::vector<Candidate> grid;
  std::vector<CalibrationRecord> valid;
  bool unique() const { return valid.size() == 1; }
};

/// Searches shift in {-2, 0, 2} and sign in {1, -1} for every simple
/// reflection of the workspace.
CalibrationResult calibrate_shift(const Workspace& ws);

/// R_{s_n} (x) ... (x) R_{s_1} (x) input, minimized after each factor.
/// Throws PreconditionError unless the chain is a reduced word with every
/// prefix in W^I.
ComplexOfModules ind_w(const ComplexOfModules& input, const ParabolicDatum& datum, const std::vector<int>& chain,
                       std::mt19937_64* rng = nullptr);

struct Report {
  std::string check;
  std::string instance;
  bool passed = false;
  std::string computed;
  std::string predicted;
  std::string detail;
  std::string complex_summary;
  double seconds = 0;
};

Report verify_theorem(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                      const WeylElement& w);
Report verify_base_case(const Workspace& ws, const std::vector<int>& subset);
/// Res(C_I (x)_{C_I^s} M) and C (x)_{C^s} Res(M) are isomorphic for every catalog
/// module M, one random shifted sum and every s in I.
Report verify_restriction_commutes(const Workspace& ws, const std::vector<int>& subset, std::uint64_t seed = 1);
/// Preconditions: w and ws in W^I with ws > w.
Report verify_wall_crossing(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                            const WeylElement& w, int s);
Report verify_hom_vanishing(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                            const WeylElement& y, const WeylElement& w, int s);
/// Hom(ind_w D^I_x, ind_w D^I_x) is nonzero.
Report verify_positive_control(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                               const WeylElement& w);
/// All admissible chains of w give isomorphic minimal complexes.
Report verify_chain_independence(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                                 const WeylElement& w, std::uint64_t seed = 1);

/// Every admissible chain of w (reduced words with all prefixes in W^I).
std::vector<std::vector<int>> admissible_chains(const ParabolicDatum& datum, const WeylElement& w);
/// Proper subsets of {0..rank-1}, by size then lexicographically.
std::vector<std::vector<int>> proper_subsets(int rank);
std::string instance_key(const Workspace& ws, const std::vector<int>& subset, const std::string& rest);

struct CorpusOptions {
  std::vector<std::pair<CartanType, int>> types;
  int jobs = 1;
  bool theorem = true;
  bool base_case = true;
  bool restriction_commutes = true;
  bool wall_crossing = true;
  bool hom_vanishing = true;
  bool positive_control = true;
  std::string cache_dir;
};

CorpusOptions quick_corpus();
CorpusOptions full_corpus();
/// Runs every check of the corpus; reports are sorted by (check, instance).
std::vector<Report> run_corpus(const CorpusOptions& options);

}  // namespace parind
