// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all
// criteria pass. All comparisons are exact; the only tolerances are the
// wall-clock budgets listed next to each criterion.

#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>

#include "parind/errors.hpp"
#include "parind/induction.hpp"

using namespace parind;
using enum parind::CartanType;

namespace {

using Clock = std::chrono::steady_clock;

// Wall-clock budgets in seconds.
constexpr double kBudgetTheorem = 600;
constexpr double kBudgetBaseCase = 60;
constexpr double kBudgetInfrastructure = 120;
constexpr int kKrullSchmidtSeeds = 20;

struct Outcome {
  bool passed = true;
  std::string detail;
};

struct Tally {
  std::size_t total = 0, failed = 0;
  std::string first_failure;
  void add(bool ok, const std::string& what) {
    ++total;
    if (!ok && failed++ == 0) first_failure = what;
  }
  Outcome outcome(const std::string& noun) const {
    std::ostringstream os;
    os << total - failed << "/" << total << " " << noun;
    if (failed) os << "; first failure: " << first_failure;
    return {failed == 0 && total > 0, os.str()};
  }
};

int failures = 0;

void criterion(int number, const std::string& name, double budget, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget > 0 && secs > budget) {
    o.passed = false;
    o.detail += "; over the time budget";
  }
  if (!o.passed) ++failures;
  std::cout << (o.passed ? "PASS" : "FAIL") << " " << number << " " << name << ": " << o.detail << " ("
            << secs << " s";
  if (budget > 0) std::cout << ", budget " << budget << " s";
  std::cout << ")" << std::endl;
}

const std::vector<std::pair<CartanType, int>> kCorpusTypes{{A, 1}, {A, 2}, {B, 2}, {A, 3}};
const std::vector<std::pair<CartanType, int>> kSupportedTypes{{A, 1}, {A, 2}, {B, 2}, {G, 2}, {A, 3}};

struct Spaces {
  std::map<std::string, std::unique_ptr<Workspace>> by_label;
  Workspace& get(CartanType t, int n) {
    const std::string key = std::string(1, to_char(t)) + std::to_string(n);
    auto& p = by_label[key];
    if (!p) p = std::make_unique<Workspace>(t, n);
    return *p;
  }
};

Spaces spaces;

/// Every (I, x, w) instance of one type.
template <class F>
void for_each_instance(Workspace& ws, F f) {
  for (const auto& I : proper_subsets(ws.group().rank())) {
    const auto& d = ws.datum(I);
    for (const auto& x : d.elements_WI)
      for (const auto& w : d.min_reps_WI) f(I, d, x, w);
  }
}

/// Every (I, w, s) with w, ws in W^I and ws > w.
template <class F>
void for_each_wall(Workspace& ws, F f) {
  const auto& g = ws.group();
  for (const auto& I : proper_subsets(g.rank())) {
    const auto& d = ws.datum(I);
    for (const auto& w : d.min_reps_WI)
      for (int s = 0; s < g.rank(); ++s) {
        const auto ws_ = w * g.generator(s);
        if (ws_.length() > w.length() && d.is_min_rep(ws_)) f(I, d, w, s);
      }
  }
}

std::string key(Workspace& ws, const std::vector<int>& I, const WeylElement& x, const WeylElement& w) {
  return instance_key(ws, I, "x=" + x.to_string() + " w=" + w.to_string());
}

Outcome theorem_sweep() {
  Tally t;
  for (auto [ty, n] : kCorpusTypes) {
    auto& ws = spaces.get(ty, n);
    for_each_instance(ws, [&](const auto& I, const auto& d, const auto& x, const auto& w) {
      if (!admissible_chain(d, w)) return;
      t.add(k0_class(ws.induced(I, x, w)) == predicted_class(d, x, w), key(ws, I, x, w));
    });
  }
  return t.outcome("instances with exact equality");
}

// Ungraded shadow, recomputed from the minimized complexes: alternating sum
// of b_y(1) over the summands against sum_z h_{z,x}(1) [zw].
Outcome ungraded_shadow() {
  Tally t;
  for (auto [ty, n] : kCorpusTypes) {
    auto& ws = spaces.get(ty, n);
    const auto& g = ws.group();
    const auto& kl = ws.catalog()->kl();
    for_each_instance(ws, [&](const auto& I, const auto& d, const auto& x, const auto& w) {
      std::map<int, Rational> lhs, rhs;
      for (const auto& [deg, summands] : ws.induced(I, x, w).terms())
        for (const auto& s : summands)
          for (const auto& [z, c] : kl.b(s.y).at_one()) lhs[z] += (deg % 2 == 0) ? c : -c;
      for (const auto& [z, p] : parabolic_kl(d, x)) rhs[g.multiply(z.index(), w.index())] += p.at_one();
      std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
      std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
      t.add(lhs == rhs, key(ws, I, x, w));
    });
  }
  return t.outcome("instances");
}

Outcome base_case() {
  Tally t;
  for (auto [ty, n] : kSupportedTypes) {
    auto& ws = spaces.get(ty, n);
    for (const auto& I : proper_subsets(n)) {
      auto r = verify_base_case(ws, I);
      t.add(r.passed, r.instance + ": " + r.detail);
    }
  }
  return t.outcome("(type, I) pairs with isomorphisms and equal hom dimensions");
}

Outcome restriction_commutes() {
  Tally t;
  for (auto [ty, n] : kSupportedTypes) {
    auto& ws = spaces.get(ty, n);
    for (const auto& I : proper_subsets(n)) {
      if (I.empty()) continue;
      auto r = verify_restriction_commutes(ws, I);
      t.add(r.passed, r.instance + ": " + r.detail);
    }
  }
  return t.outcome("(type, I) pairs with explicit isomorphisms for all catalog modules and all s in I");
}

Outcome wall_crossing() {
  Tally t;
  for (auto [ty, n] : kCorpusTypes) {
    auto& ws = spaces.get(ty, n);
    for_each_wall(ws, [&](const auto& I, const auto& d, const auto& w, int s) {
      for (const auto& x : d.elements_WI) {
        auto r = verify_wall_crossing(ws, I, x, w, s);
        t.add(r.passed, r.instance + ": " + r.detail);
      }
    });
  }
  return t.outcome("triples (graded identity and v=1 mass check)");
}

Outcome hom_vanishing() {
  Tally t, control;
  for (auto [ty, n] : kCorpusTypes) {
    auto& ws = spaces.get(ty, n);
    for_each_wall(ws, [&](const auto& I, const auto& d, const auto& w, int s) {
      for (const auto& x : d.elements_WI)
        for (const auto& y : d.elements_WI) {
          auto r = verify_hom_vanishing(ws, I, x, y, w, s);
          t.add(r.passed, r.instance + ": " + r.computed);
        }
    });
    for_each_instance(ws, [&](const auto& I, const auto&, const auto& x, const auto& w) {
      auto r = verify_positive_control(ws, I, x, w);
      control.add(r.passed, r.instance);
    });
  }
  auto a = t.outcome("vanishing triples");
  auto b = control.outcome("positive controls");
  return {a.passed && b.passed, a.detail + "; " + b.detail};
}

std::vector<int> poincare_from_degrees(const std::vector<int>& degrees) {
  std::vector<int> p{1};
  for (int d : degrees) {
    std::vector<int> q(p.size() + static_cast<std::size_t>(d) - 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i)
      for (int k = 0; k < d; ++k) q[i + static_cast<std::size_t>(k)] += p[i];
    p = q;
  }
  return p;
}

Polynomial random_poly(std::mt19937& rng, int n, int degree) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Polynomial p(n);
  for (const auto& e : monomials_of_degree(n, degree)) p.add_term(e, coef(rng));
  return p;
}

Outcome infrastructure() {
  std::vector<std::string> parts;
  bool ok = true;
  auto record = [&](const std::string& name, const Tally& t) {
    auto o = t.outcome(name);
    ok = ok && o.passed;
    parts.push_back(o.detail);
  };

  // |W| and Poincare polynomials from the degrees of basic invariants.
  {
    Tally t;
    struct Case {
      CartanType ty;
      int n;
      std::size_t order;
      std::vector<int> degrees;
    };
    for (const auto& c : std::vector<Case>{{A, 1, 2, {2}},
                                           {A, 2, 6, {2, 3}},
                                           {A, 3, 24, {2, 3, 4}},
                                           {B, 2, 8, {2, 4}},
                                           {G, 2, 12, {2, 6}},
                                           {B, 3, 48, {2, 4, 6}},
                                           {D, 4, 192, {2, 4, 4, 6}},
                                           {F, 4, 1152, {2, 6, 8, 12}}}) {
      WeylGroup g(build_root_system(c.ty, c.n));
      std::vector<int> dist;
      for (const auto& w : g.elements()) {
        auto l = static_cast<std::size_t>(w.length());
        if (dist.size() <= l) dist.resize(l + 1, 0);
        ++dist[l];
      }
      t.add(g.order() == c.order && dist == poincare_from_degrees(c.degrees), g.root_system().label);
    }
    record("groups with correct order and Poincare polynomial", t);
  }

  // Demazure relations on random polynomials of degree <= 6.
  {
    Tally t;
    std::mt19937 rng(3);
    for (auto [ty, n] : kSupportedTypes) {
      auto rs = build_root_system(ty, n);
      for (int deg = 0; deg <= 6; ++deg) {
        auto f = random_poly(rng, n, deg);
        auto h = random_poly(rng, n, 6 - deg);
        for (int s = 0; s < n; ++s) {
          t.add(demazure(rs, s, demazure(rs, s, f)).is_zero(), rs.label + " nilpotence");
          t.add(demazure(rs, s, f * h) == demazure(rs, s, f) * h + reflect(rs, s, f) * demazure(rs, s, h),
                rs.label + " Leibniz");
          for (int u = s + 1; u < n; ++u) {
            Polynomial lhs = f, rhs = f;
            for (int i = 0; i < rs.coxeter_m(s, u); ++i) {
              lhs = demazure(rs, i % 2 ? u : s, lhs);
              rhs = demazure(rs, i % 2 ? s : u, rhs);
            }
            t.add(lhs == rhs, rs.label + " braid");
          }
        }
      }
    }
    record("Demazure relations", t);
  }

  // KL basis: bar invariance, degree bound and nonnegativity.
  {
    Tally t;
    for (auto [ty, n] : std::vector<std::pair<CartanType, int>>{{A, 3}, {B, 2}, {G, 2}, {A, 4}, {B, 3}}) {
      WeylGroup g(build_root_system(ty, n));
      KLBasis kl(g);
      for (const auto& w : g.elements()) {
        const auto& b = kl.b(w);
        bool good = b.bar() == b && b.coefficient(w) == LaurentPoly(Rational(1));
        for (const auto& [x, p] : b.terms()) {
          if (x == w.index()) continue;
          good = good && g.bruhat_leq(x, w.index()) && p.min_degree() >= 1 && p.has_nonnegative_integer_coefficients();
        }
        t.add(good, g.root_system().label + " b_" + w.to_string());
      }
    }
    record("KL basis elements bar-invariant and positive", t);
  }

  // d^2 = 0 and K_0 preservation at every elimination step of every corpus complex.
  {
    Tally d2, k0;
    for (auto [ty, n] : kCorpusTypes) {
      auto& ws = spaces.get(ty, n);
      for_each_instance(ws, [&](const auto& I, const auto& d, const auto& x, const auto& w) {
        auto cx = ws.restricted_input(I, x);
        const auto chain = admissible_chain(d, w);
        for (int s : *chain) {
          auto big = tensor_rouquier(s, cx);
          d2.add(big.d_squared_defect().empty(), key(ws, I, x, w));
          cx = gaussian_eliminate(big);
          d2.add(cx.d_squared_defect().empty(), key(ws, I, x, w));
          k0.add(raw_k0_class(cx) == raw_k0_class(big), key(ws, I, x, w));
        }
      });
      for_each_wall(ws, [&](const auto& I, const auto& d, const auto& w, int s) {
        for (const auto& x : d.elements_WI) {
          auto th = apply_theta(s, ws.induced(I, x, w));
          d2.add(th.d_squared_defect().empty(), key(ws, I, x, w));
          auto m = gaussian_eliminate(th);
          k0.add(raw_k0_class(m) == raw_k0_class(th), key(ws, I, x, w));
        }
      });
    }
    record("complexes with d^2 = 0", d2);
    record("eliminations preserving the K_0 class", k0);
  }

  // Krull-Schmidt: randomized generic splitting identifies the same multiset
  // of catalog summands as deterministic peeling.
  {
    Tally t;
    std::mt19937_64 wr(17);
    for (auto [ty, n] : std::vector<std::pair<CartanType, int>>{{A, 2}, {B, 2}, {A, 3}}) {
      auto& ws = spaces.get(ty, n);
      const auto& cat = *ws.catalog();
      for (int trial = 0; trial < 2; ++trial) {
        std::vector<int> word;
        std::uniform_int_distribution<int> pick(0, n - 1);
        for (int i = 0; i < 3; ++i) word.push_back(pick(wr));
        auto m = bott_samelson(ws.algebra(), word);
        std::multiset<std::pair<int, int>> ref;
        for (const auto& p : cat.decompose(m)) ref.emplace(p.y, p.shift);
        for (int seed = 1; seed <= kKrullSchmidtSeeds; ++seed) {
          std::mt19937_64 rng(static_cast<std::uint64_t>(seed));
          std::multiset<std::pair<int, int>> got;
          bool identified = true;
          for (const auto& p : split_indecomposables(m, rng)) {
            auto id = cat.identify(p.module, rng);
            if (!id) identified = false;
            else got.insert(*id);
          }
          t.add(identified && got == ref, ws.label() + " word " + word_to_string(word) + " seed " + std::to_string(seed));
        }
      }
    }
    record("randomized Krull-Schmidt runs", t);
  }

  std::string detail;
  for (const auto& p : parts) detail += (detail.empty() ? "" : "; ") + p;
  return {ok, detail};
}

Outcome calibration() {
  auto a1 = calibrate_shift(spaces.get(A, 1));
  auto a2 = calibrate_shift(spaces.get(A, 2));
  std::ostringstream os;
  os << "A1: " << a1.valid.size() << " valid record(s)";
  if (a1.unique())
    os << " {shift " << a1.valid[0].shift << ", sign " << a1.valid[0].sign << ", twist " << a1.valid[0].twist << "}";
  os << "; A2: " << a2.valid.size() << " valid record(s)";
  const bool same = a1.unique() && a2.unique() && a1.valid[0] == a2.valid[0];
  os << (same ? ", same record" : ", records differ");
  return {same, os.str()};
}

}  // namespace

int main() {
  criterion(1, "main theorem sweep (A1, A2, B2, A3)", kBudgetTheorem, theorem_sweep);
  criterion(2, "ungraded v=1 shadow", 0, ungraded_shadow);
  criterion(3, "base case: restriction isomorphisms and hom dimensions", kBudgetBaseCase, base_case);
  criterion(4, "induction commutes with restriction", 0, restriction_commutes);
  criterion(5, "wall-crossing cone identity", 0, wall_crossing);
  criterion(6, "hom vanishing with positive control", 0, hom_vanishing);
  criterion(7, "infrastructure property suites", kBudgetInfrastructure, infrastructure);
  criterion(8, "calibration uniqueness", 0, calibration);
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
