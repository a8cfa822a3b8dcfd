#include "parind/induction.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <functional>
#include <sstream>
#include <thread>

#include "parind/errors.hpp"
#include "parind/serialize.hpp"

namespace parind {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string subset_string(const std::vector<int>& subset) {
  std::string s = "{";
  for (std::size_t i = 0; i < subset.size(); ++i) s += (i ? "," : "") + std::to_string(subset[i] + 1);
  return s + "}";
}

std::string elem(const WeylElement& w) { return word_to_string(w.reduced_word()); }

std::uint64_t seed_of(const std::string& key) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::map<int, Rational> at_one(const HeckeElement& h) { return h.at_one(); }

}  // namespace

// ---------------------------------------------------------------------------
// Workspace

Workspace::Workspace(CartanType type, int rank, std::string cache_dir) : cache_dir_(std::move(cache_dir)) {
  group_ = std::make_unique<WeylGroup>(build_root_system(type, rank));
  label_ = group_->root_system().label;
  std::vector<int> all;
  for (int i = 0; i < rank; ++i) all.push_back(i);
  algebra_ = load_or_build_algebra(*group_, all, cache_dir_);
  catalog_ = build_catalog(algebra_, *group_);
  algebras_[all] = algebra_;
  catalogs_[all] = catalog_;
}

AlgebraPtr Workspace::parabolic_algebra(const std::vector<int>& subset) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = algebras_.find(subset);
    if (it != algebras_.end()) return it->second;
  }
  auto a = load_or_build_algebra(*group_, subset, cache_dir_);
  std::lock_guard<std::mutex> lock(mutex_);
  return algebras_.emplace(subset, a).first->second;
}

std::shared_ptr<const Catalog> Workspace::parabolic_catalog(const std::vector<int>& subset) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = catalogs_.find(subset);
    if (it != catalogs_.end()) return it->second;
  }
  auto c = build_catalog(parabolic_algebra(subset), *group_);
  std::lock_guard<std::mutex> lock(mutex_);
  return catalogs_.emplace(subset, c).first->second;
}

const ParabolicDatum& Workspace::datum(const std::vector<int>& subset) const {
  std::lock_guard<std::mutex> lock(mutex_);
  auto it = data_.find(subset);
  if (it == data_.end())
    it = data_.emplace(subset, std::make_shared<const ParabolicDatum>(minimal_coset_reps(*group_, subset))).first;
  return *it->second;
}

ComplexOfModules Workspace::restricted_input(const std::vector<int>& subset, const WeylElement& x) const {
  const auto& d = datum(subset);
  if (!d.in_WI(x)) throw PreconditionError("restricted_input: " + x.to_string() + " is not in W_I");
  const auto key = std::make_pair(subset, x.index());
  bool checked;
  {
    std::lock_guard<std::mutex> lock(mutex_);
    checked = restriction_checked_.count(key) > 0;
  }
  if (!checked) {
    auto small = parabolic_catalog(subset);
    auto r = restrict_module(algebra_, small->module(x));
    std::mt19937_64 rng(seed_of(label_ + subset_string(subset) + elem(x)));
    if (!is_isomorphic(r, catalog_->module(x), rng))
      throw ClassificationError("restricted_input: restriction of D^I[" + elem(x) + "] is not isomorphic to D[" +
                                elem(x) + "]");
    std::lock_guard<std::mutex> lock(mutex_);
    restriction_checked_[key] = true;
  }
  auto c = ComplexOfModules::single(catalog_, {Summand{x.index(), 0}});
  c.set_twist(-x.length());
  return c;
}

const ComplexOfModules& Workspace::induced(const std::vector<int>& subset, const WeylElement& x,
                                           const WeylElement& w) const {
  const auto key = std::make_tuple(subset, x.index(), w.index());
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = induced_.find(key);
    if (it != induced_.end()) return *it->second;
  }
  const auto& d = datum(subset);
  auto chain = admissible_chain(d, w);
  if (!chain) throw PreconditionError("induced: " + w.to_string() + " has no admissible chain");
  auto c = std::make_shared<const ComplexOfModules>(ind_w(restricted_input(subset, x), d, *chain));
  std::lock_guard<std::mutex> lock(mutex_);
  return *induced_.emplace(key, std::move(c)).first->second;
}

// ---------------------------------------------------------------------------
// Calibration

CalibrationResult calibrate_shift(const Workspace& ws) {
  CalibrationResult out;
  const auto& cat = ws.catalog();
  const auto& g = ws.group();
  for (int shift : {-2, 0, 2})
    for (int sign : {1, -1}) {
      CalibrationResult::Candidate cand{shift, sign, true, std::nullopt};
      bool consistent = true;
      for (int s = 0; s < g.rank(); ++s) {
        // D_e in degree -1 mapped by the unit to theta_s D_e <shift> in degree 0.
        const auto& th = cat->theta(s, 0);
        ComplexOfModules x(cat);
        const int lower = x.add(-1, Summand{0, 0});
        for (const auto& p : th.pieces) {
          const int id = x.add(0, Summand{p.y, p.shift + shift});
          ModuleMap comp = p.projection.compose(th.unit);
          if (comp.is_zero()) continue;
          if (comp.degree() != p.shift + shift) {
            cand.unit_is_chain_map = false;
            continue;
          }
          x.set_component(lower, id, comp);
        }
        const HeckeElement target = HeckeElement::standard(g.generator(s));
        const HeckeElement raw = raw_k0_class(x);
        std::optional<int> found;
        for (int t = -4; t <= 4; ++t)
          if (LaurentPoly(Rational(sign)) * LaurentPoly::v(t) * raw == target) found = t;
        if (!found || (cand.twist && *cand.twist != *found)) consistent = false;
        cand.twist = found;
      }
      if (!consistent) cand.twist = std::nullopt;
      out.grid.push_back(cand);
      if (cand.unit_is_chain_map && cand.twist) out.valid.push_back(CalibrationRecord{shift, sign, *cand.twist});
    }
  return out;
}

// ---------------------------------------------------------------------------
// ind_w

ComplexOfModules ind_w(const ComplexOfModules& input, const ParabolicDatum& datum, const std::vector<int>& chain,
                       std::mt19937_64* rng) {
  const auto& g = *datum.group;
  if (&input.catalog().group() != &g) throw IncompatibleError("ind_w: input and datum use different groups");
  if (!input.catalog().algebra().is_full()) throw PreconditionError("ind_w: input must be a complex over C");
  int cur = 0;
  for (int s : chain) {
    if (s < 0 || s >= g.rank()) throw PreconditionError("ind_w: letter out of range");
    const int next = g.mul_right(cur, s);
    if (g.length(next) <= g.length(cur)) throw PreconditionError("ind_w: chain is not a reduced word");
    if (!datum.min_rep_mask[static_cast<std::size_t>(next)])
      throw PreconditionError("ind_w: prefix " + word_to_string(g.word(next)) + " of the chain is not in W^I");
    cur = next;
  }
  ComplexOfModules x = input;
  for (int s : chain) x = gaussian_eliminate(tensor_rouquier(s, x), rng);
  return x;
}

std::vector<std::vector<int>> admissible_chains(const ParabolicDatum& datum, const WeylElement& w) {
  std::vector<std::vector<int>> out;
  for (auto& word : all_reduced_words(w)) {
    int cur = 0;
    bool ok = true;
    for (int s : word) {
      cur = datum.group->mul_right(cur, s);
      if (!datum.min_rep_mask[static_cast<std::size_t>(cur)]) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(word);
  }
  return out;
}

std::vector<std::vector<int>> proper_subsets(int rank) {
  std::vector<std::vector<int>> out;
  for (int size = 0; size < rank; ++size)
    for (unsigned mask = 0; mask < (1u << rank); ++mask) {
      if (__builtin_popcount(mask) != size) continue;
      std::vector<int> s;
      for (int i = 0; i < rank; ++i)
        if (mask & (1u << i)) s.push_back(i);
      out.push_back(s);
    }
  for (auto it = out.begin(); it != out.end();) {
    auto next = std::find_if(it, out.end(), [&](const auto& v) { return v.size() != it->size(); });
    std::sort(it, next);
    it = next;
  }
  return out;
}

std::string instance_key(const Workspace& ws, const std::vector<int>& subset, const std::string& rest) {
  return ws.label() + " I=" + subset_string(subset) + (rest.empty() ? "" : " " + rest);
}

// ---------------------------------------------------------------------------
// Checks

Report verify_theorem(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                      const WeylElement& w) {
  const auto t0 = Clock::now();
  Report r;
  r.check = "theorem";
  r.instance = instance_key(ws, subset, "x=" + elem(x) + " w=" + elem(w));
  const auto& d = ws.datum(subset);
  const auto& c = ws.induced(subset, x, w);
  HeckeElement computed = k0_class(c);
  HeckeElement predicted = predicted_class(d, x, w);
  r.computed = computed.to_string();
  r.predicted = predicted.to_string();
  r.complex_summary = c.summary();

  // v = 1 specialization, computed separately from KL values at 1 and
  // parabolic KL polynomials at 1.
  std::map<int, Rational> computed_one, predicted_one;
  for (const auto& [n, v] : c.terms())
    for (const auto& s : v)
      for (const auto& [z, val] : ws.catalog()->kl().b(s.y).at_one()) {
        computed_one[z] += n % 2 == 0 ? val : -val;
      }
  for (const auto& [z, p] : parabolic_kl(d, x)) predicted_one[ws.group().multiply(z.index(), w.index())] += p.at_one();
  auto strip = [](std::map<int, Rational>& m) {
    for (auto it = m.begin(); it != m.end();) it = it->second.is_zero() ? m.erase(it) : std::next(it);
  };
  strip(computed_one);
  strip(predicted_one);
  const bool graded_ok = computed == predicted;
  const bool ungraded_ok = computed_one == predicted_one && at_one(computed) == computed_one;
  const auto defect = c.d_squared_defect();
  r.passed = graded_ok && ungraded_ok && defect.empty();
  std::ostringstream os;
  os << "graded " << (graded_ok ? "ok" : "MISMATCH") << "; v=1 " << (ungraded_ok ? "ok" : "MISMATCH");
  if (!defect.empty()) os << "; " << defect;
  if (!graded_ok) os << "; difference " << (computed - predicted).to_string();
  r.detail = os.str();
  r.seconds = seconds_since(t0);
  return r;
}

Report verify_base_case(const Workspace& ws, const std::vector<int>& subset) {
  const auto t0 = Clock::now();
  Report r;
  r.check = "base_case";
  r.instance = instance_key(ws, subset, "");
  auto small = ws.parabolic_catalog(subset);
  const auto& big = *ws.catalog();
  std::mt19937_64 rng(seed_of(r.instance));
  std::ostringstream os;
  bool ok = true;
  std::size_t isos = 0, homs = 0;
  for (const auto& x : small->elements()) {
    auto res = restrict_module(ws.algebra(), small->module(x));
    if (!is_isomorphic(res, big.module(x), rng)) {
      ok = false;
      os << "no isomorphism for x=" << elem(x) << " (" << res->graded_dimension().to_string() << " vs "
         << big.module(x)->graded_dimension().to_string() << "); ";
    } else {
      ++isos;
    }
  }
  for (const auto& x : small->elements())
    for (const auto& y : small->elements()) {
      const int lo = -small->module(x)->max_degree(), hi = small->module(y)->max_degree();
      for (int g = lo; g <= hi; g += 2) {
        const auto a = small->hom(x.index(), y.index(), g).dim();
        const auto b = big.hom(x.index(), y.index(), g).dim();
        ++homs;
        if (a != b) {
          ok = false;
          os << "dim Hom(D[" << elem(x) << "], D[" << elem(y) << "]) in degree " << g << ": " << a << " over C_I, "
             << b << " over C; ";
        }
      }
    }
  r.passed = ok;
  r.computed = std::to_string(isos) + " isomorphisms, " + std::to_string(homs) + " hom dimensions";
  r.predicted = std::to_string(small->elements().size()) + " isomorphisms";
  r.detail = ok ? "all restrictions isomorphic and hom dimensions equal" : os.str();
  r.seconds = seconds_since(t0);
  return r;
}

Report verify_restriction_commutes(const Workspace& ws, const std::vector<int>& subset, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Report r;
  r.check = "restriction_commutes";
  r.instance = instance_key(ws, subset, "");
  auto small = ws.parabolic_catalog(subset);
  std::mt19937_64 rng(seed ^ seed_of(r.instance));
  std::vector<std::pair<std::string, ModulePtr>> tests;
  for (const auto& y : small->elements()) tests.emplace_back("D[" + elem(y) + "]", small->module(y));
  if (!subset.empty()) {
    std::uniform_int_distribution<std::size_t> pick(0, small->elements().size() - 1);
    const auto& a = small->elements()[pick(rng)];
    const auto& b = small->elements()[pick(rng)];
    tests.emplace_back("D[" + elem(a) + "] + D[" + elem(b) + "]<2>",
                       direct_sum({small->module(a), shift_module(small->module(b), 2)}));
  }
  std::ostringstream os;
  bool ok = true;
  std::size_t found = 0, total = 0;
  for (int s : subset)
    for (const auto& [name, m] : tests) {
      ++total;
      auto left = restrict_module(ws.algebra(), induce_frobenius(s, m));
      auto right = induce_frobenius(s, restrict_module(ws.algebra(), m));
      if (left->graded_dims() != right->graded_dims()) {
        ok = false;
        os << "graded characters differ for s" << s + 1 << ", " << name << "; ";
        continue;
      }
      if (!is_isomorphic(left, right, rng)) {
        ok = false;
        os << "no isomorphism for s" << s + 1 << ", " << name << "; ";
        continue;
      }
      ++found;
    }
  r.passed = ok;
  r.computed = std::to_string(found) + " isomorphisms";
  r.predicted = std::to_string(total) + " isomorphisms";
  r.detail = ok ? "explicit isomorphisms found" : os.str();
  r.seconds = seconds_since(t0);
  return r;
}

namespace {

void check_wall_crossing_preconditions(const Workspace& ws, const std::vector<int>& subset, const WeylElement& w,
                                       int s) {
  const auto& d = ws.datum(subset);
  if (!d.is_min_rep(w)) throw PreconditionError("wall crossing: w is not in W^I");
  if (s < 0 || s >= ws.group().rank()) throw PreconditionError("wall crossing: bad reflection");
  auto ws_ = w * ws.group().generator(s);
  if (!d.is_min_rep(ws_) || ws_.length() < w.length())
    throw PreconditionError("wall crossing: need ws > w with ws in W^I");
}

}  // namespace

Report verify_wall_crossing(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                            const WeylElement& w, int s) {
  check_wall_crossing_preconditions(ws, subset, w, s);
  const auto t0 = Clock::now();
  Report r;
  r.check = "wall_crossing";
  r.instance = instance_key(ws, subset, "x=" + elem(x) + " w=" + elem(w) + " s=s" + std::to_string(s + 1));
  const auto wsx = w * ws.group().generator(s);
  const auto& a = ws.induced(subset, x, w);
  const auto& b = ws.induced(subset, x, wsx);
  ComplexOfModules t = gaussian_eliminate(apply_theta(s, a));
  HeckeElement lhs = k0_class(t);
  HeckeElement rhs = k0_class(a) + LaurentPoly::v(-1) * k0_class(b);
  const bool graded_ok = lhs == rhs;
  const bool mass_ok = at_one(raw_k0_class(t)) == at_one(raw_k0_class(a) + raw_k0_class(b));
  r.passed = graded_ok && mass_ok && t.d_squared_defect().empty();
  r.computed = lhs.to_string();
  r.predicted = rhs.to_string();
  r.complex_summary = t.summary();
  r.detail = std::string("class(ind_w) = ") + k0_class(a).to_string() + "; class(ind_ws) = " + k0_class(b).to_string() +
             "; v=1 " + (mass_ok ? "ok" : "MISMATCH");
  r.seconds = seconds_since(t0);
  return r;
}

Report verify_hom_vanishing(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                            const WeylElement& y, const WeylElement& w, int s) {
  check_wall_crossing_preconditions(ws, subset, w, s);
  const auto t0 = Clock::now();
  Report r;
  r.check = "hom_vanishing";
  r.instance = instance_key(ws, subset,
                            "x=" + elem(x) + " y=" + elem(y) + " w=" + elem(w) + " s=s" + std::to_string(s + 1));
  const auto& a = ws.induced(subset, x, w);
  const auto& b = ws.induced(subset, y, w * ws.group().generator(s));
  const auto dim = hom_cohomology_dim(a, b, 0);
  r.passed = dim == 0;
  r.computed = "dim H^0 = " + std::to_string(dim);
  r.predicted = "dim H^0 = 0";
  r.detail = r.passed ? "no nonzero homotopy classes" : "nonzero homotopy classes of chain maps";
  r.seconds = seconds_since(t0);
  return r;
}

Report verify_positive_control(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                               const WeylElement& w) {
  const auto t0 = Clock::now();
  Report r;
  r.check = "positive_control";
  r.instance = instance_key(ws, subset, "x=" + elem(x) + " w=" + elem(w));
  const auto& a = ws.induced(subset, x, w);
  const auto dim = hom_cohomology_dim(a, a, 0);
  r.passed = dim > 0;
  r.computed = "dim H^0 = " + std::to_string(dim);
  r.predicted = "dim H^0 > 0";
  r.seconds = seconds_since(t0);
  return r;
}

Report verify_chain_independence(const Workspace& ws, const std::vector<int>& subset, const WeylElement& x,
                                 const WeylElement& w, std::uint64_t seed) {
  const auto t0 = Clock::now();
  Report r;
  r.check = "chain_independence";
  r.instance = instance_key(ws, subset, "x=" + elem(x) + " w=" + elem(w));
  const auto& d = ws.datum(subset);
  auto chains = admissible_chains(d, w);
  std::mt19937_64 rng(seed ^ seed_of(r.instance));
  auto input = ws.restricted_input(subset, x);
  std::vector<ComplexOfModules> results;
  for (const auto& ch : chains) results.push_back(ind_w(input, d, ch));
  // A randomized elimination order on the first chain.
  if (!chains.empty()) results.push_back(ind_w(input, d, chains.front(), &rng));
  bool ok = !results.empty();
  std::ostringstream os;
  os << chains.size() << " chains";
  for (std::size_t i = 1; i < results.size(); ++i) {
    if (results[i].graded_characters() != results[0].graded_characters()) {
      ok = false;
      os << "; graded characters differ for run " << i;
      continue;
    }
    if (!find_chain_isomorphism(results[0], results[i], rng)) {
      ok = false;
      os << "; no chain isomorphism found for run " << i;
    }
  }
  r.passed = ok;
  r.computed = results.empty() ? "" : results[0].summary();
  r.predicted = "isomorphic minimal complexes";
  r.complex_summary = r.computed;
  r.detail = os.str();
  r.seconds = seconds_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Corpus

CorpusOptions quick_corpus() {
  CorpusOptions o;
  o.types = {{CartanType::A, 1}, {CartanType::A, 2}};
  return o;
}

CorpusOptions full_corpus() {
  CorpusOptions o;
  o.types = {{CartanType::A, 1}, {CartanType::A, 2}, {CartanType::B, 2}, {CartanType::A, 3}};
  return o;
}

std::vector<Report> run_corpus(const CorpusOptions& options) {
  std::vector<std::unique_ptr<Workspace>> spaces;
  std::vector<std::function<Report()>> tasks;
  for (const auto& [type, rank] : options.types) {
    spaces.push_back(std::make_unique<Workspace>(type, rank, options.cache_dir));
    const Workspace* ws = spaces.back().get();
    const auto& g = ws->group();
    for (const auto& subset : proper_subsets(rank)) {
      if (options.base_case) tasks.emplace_back([ws, subset] { return verify_base_case(*ws, subset); });
      if (options.restriction_commutes && !subset.empty())
        tasks.emplace_back([ws, subset] { return verify_restriction_commutes(*ws, subset); });
      const auto& d = ws->datum(subset);
      for (const auto& x : d.elements_WI)
        for (const auto& w : d.min_reps_WI) {
          if (options.theorem) tasks.emplace_back([ws, subset, x, w] { return verify_theorem(*ws, subset, x, w); });
          if (options.positive_control)
            tasks.emplace_back([ws, subset, x, w] { return verify_positive_control(*ws, subset, x, w); });
          for (int s = 0; s < rank; ++s) {
            auto ws_ = w * g.generator(s);
            if (ws_.length() < w.length() || !d.is_min_rep(ws_)) continue;
            if (options.wall_crossing)
              tasks.emplace_back([ws, subset, x, w, s] { return verify_wall_crossing(*ws, subset, x, w, s); });
            if (options.hom_vanishing)
              for (const auto& y : d.elements_WI)
                tasks.emplace_back([ws, subset, x, y, w, s] { return verify_hom_vanishing(*ws, subset, x, y, w, s); });
          }
        }
    }
  }

  std::vector<Report> reports(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next++) < tasks.size();) {
      try {
        reports[i] = tasks[i]();
      } catch (const std::exception& e) {
        reports[i].check = "error";
        reports[i].instance = "task " + std::to_string(i);
        reports[i].passed = false;
        reports[i].detail = e.what();
      }
    }
  };
  const int jobs = std::max(1, options.jobs);
  std::vector<std::thread> threads;
  for (int j = 1; j < jobs; ++j) threads.emplace_back(worker);
  worker();
  for (auto& t : threads) t.join();
  std::stable_sort(reports.begin(), reports.end(), [](const Report& a, const Report& b) {
    return a.check != b.check ? a.check < b.check : a.instance < b.instance;
  });
  return reports;
}

}  // namespace parind
