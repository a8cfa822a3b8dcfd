#include "doctest.h"

#include <random>

#include "parind/coinvariants.hpp"
#include "parind/errors.hpp"

using namespace parind;

namespace {

std::vector<std::size_t> poincare(const WeylGroup& g, const std::vector<int>& subset) {
  auto d = minimal_coset_reps(g, subset);
  std::vector<std::size_t> dist;
  for (const auto& x : d.elements_WI) {
    auto l = static_cast<std::size_t>(x.length());
    if (dist.size() <= l) dist.resize(l + 1, 0);
    ++dist[l];
  }
  return dist;
}

Polynomial random_poly(std::mt19937& rng, int n, int degree) {
  std::uniform_int_distribution<int> coef(-3, 3);
  Polynomial p(n);
  for (const auto& e : monomials_of_degree(n, degree)) p.add_term(e, coef(rng));
  return p;
}

// Independent oracle for invariants: common kernel of (s - 1) over the generators.
std::size_t invariant_dim_by_kernel(const RootSystem& rs, const std::vector<int>& subset, int k) {
  auto monos = monomials_of_degree(rs.rank, k);
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], i);
  std::vector<Matrix> blocks;
  for (int s : subset) {
    Matrix m(monos.size(), monos.size());
    for (std::size_t c = 0; c < monos.size(); ++c) {
      auto img = reflect(rs, s, Polynomial::monomial(monos[c])) - Polynomial::monomial(monos[c]);
      for (const auto& [e, x] : img.terms()) m(idx.at(e), c) = x;
    }
    blocks.push_back(m);
  }
  if (blocks.empty()) return monos.size();
  return nullspace(vstack(blocks, monos.size())).cols();
}

std::size_t reynolds_invariant_dim(const WeylGroup& g, const std::vector<int>& subset, int k) {
  auto d = minimal_coset_reps(g, subset);
  auto monos = monomials_of_degree(g.rank(), k);
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], i);
  Matrix m(monos.size(), monos.size());
  for (std::size_t c = 0; c < monos.size(); ++c) {
    Polynomial avg(g.rank());
    for (const auto& x : d.elements_WI) avg += Polynomial::monomial(monos[c]).act(x.canonical_form());
    for (const auto& [e, v] : avg.terms()) m(idx.at(e), c) = v;
  }
  return rank(m);
}

}  // namespace

TEST_CASE("demazure examples and polynomial basics") {
  auto rs = build_root_system(CartanType::A, 2);
  auto a1 = simple_root(rs, 0);
  CHECK(demazure(rs, 0, a1) == Polynomial::constant(2, 2));
  CHECK(demazure(rs, 0, Polynomial::constant(2, 1)).is_zero());
  auto x = Polynomial::variable(2, 0);
  // d(x^2) = d(x) x + (s x) d(x)
  CHECK(demazure(rs, 0, x * x) == demazure(rs, 0, x) * x + reflect(rs, 0, x) * demazure(rs, 0, x));
  CHECK(demazure(rs, 0, x * x) == x + reflect(rs, 0, x));
  CHECK_THROWS_AS((x * x + x).divide_by_linear({Rational(1), Rational(0)}) + Polynomial::constant(2, 1)
                      .divide_by_linear({Rational(1), Rational(0)}),
                  InternalError);
  CHECK(monomials_of_degree(2, 2) == std::vector<Exponent>{{2, 0}, {1, 1}, {0, 2}});
}

TEST_CASE("demazure operators: nilpotence, twisted Leibniz and braid relations up to degree 6") {
  std::mt19937 rng(3);
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{
           {CartanType::A, 2}, {CartanType::B, 2}, {CartanType::G, 2}, {CartanType::A, 3}}) {
    auto rs = build_root_system(t, n);
    for (int deg = 0; deg <= 6; ++deg) {
      auto f = random_poly(rng, n, deg);
      auto g = random_poly(rng, n, 6 - deg);
      for (int s = 0; s < n; ++s) {
        CHECK(demazure(rs, s, demazure(rs, s, f)).is_zero());
        CHECK(demazure(rs, s, f * g) == demazure(rs, s, f) * g + reflect(rs, s, f) * demazure(rs, s, g));
        CHECK(reflect(rs, s, reflect(rs, s, f)) == f);
        for (int u = s + 1; u < n; ++u) {
          int m = rs.coxeter_m(s, u);
          Polynomial lhs = f, rhs = f;
          for (int i = 0; i < m; ++i) {
            lhs = demazure(rs, i % 2 ? u : s, lhs);
            rhs = demazure(rs, i % 2 ? s : u, rhs);
          }
          CHECK(lhs == rhs);
        }
      }
    }
  }
}

TEST_CASE("coinvariant algebras have the expected graded dimensions") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 1},
                                                             {CartanType::A, 2},
                                                             {CartanType::B, 2},
                                                             {CartanType::G, 2},
                                                             {CartanType::A, 3},
                                                             {CartanType::C, 3}}) {
    WeylGroup g(build_root_system(t, n));
    for (int mask = 0; mask < (1 << n); ++mask) {
      std::vector<int> subset;
      for (int i = 0; i < n; ++i)
        if (mask & (1 << i)) subset.push_back(i);
      CoinvariantAlgebra c(g, subset);
      INFO(g.root_system().label, " mask ", mask);
      auto expected = poincare(g, subset);
      std::vector<std::size_t> got;
      for (int k = 0; k <= c.top_degree(); ++k) got.push_back(c.dim(k));
      CHECK(got == expected);
      CHECK(c.is_full() == (mask == (1 << n) - 1));
    }
  }
  WeylGroup a2(build_root_system(CartanType::A, 2));
  CoinvariantAlgebra c(a2, {0, 1});
  CHECK(c.total_dim() == 6);
  WeylGroup a1(build_root_system(CartanType::A, 1));
  CoinvariantAlgebra c1(a1, {0});
  CHECK(c1.basis(1) == std::vector<Exponent>{{1}});
  CHECK(c1.normal_form(Polynomial::variable(1, 0) * Polynomial::variable(1, 0)).empty());
}

TEST_CASE("reynolds invariants agree with the kernel oracle") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2}, {CartanType::B, 2}, {CartanType::A, 3}}) {
    WeylGroup g(build_root_system(t, n));
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    for (const auto& subset : std::vector<std::vector<int>>{all, {0}, {}}) {
      for (int k = 0; k <= 6; ++k)
        CHECK(reynolds_invariant_dim(g, subset, k) == invariant_dim_by_kernel(g.root_system(), subset, k));
    }
  }
}

TEST_CASE("normal form is a multiplicative projection and W acts") {
  std::mt19937 rng(5);
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2}, {CartanType::B, 2}, {CartanType::A, 3}}) {
    WeylGroup g(build_root_system(t, n));
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    CoinvariantAlgebra c(g, all);
    for (int trial = 0; trial < 10; ++trial) {
      int d1 = trial % (c.top_degree() + 1), d2 = (trial * 7) % (c.top_degree() + 1);
      auto f = random_poly(rng, n, d1), h = random_poly(rng, n, d2);
      auto nf = c.normal_form(f, d1);
      CHECK(c.normal_form(c.lift(d1, nf), d1) == nf);
      auto prod = c.normal_form(f * h, d1 + d2);
      CHECK(c.normal_form(c.lift(d1, nf) * c.lift(d2, c.normal_form(h, d2)), d1 + d2) == prod);
    }
    for (int s = 0; s < n; ++s)
      for (int k = 0; k <= c.top_degree(); ++k) {
        Matrix r = c.reflection_action(s, k);
        CHECK((r * r).is_identity());
        // s commutes with multiplication: s(x_j b) = s(x_j) s(b)
        for (int j = 0; j < n; ++j) {
          auto sx = reflect(g.root_system(), s, Polynomial::variable(n, j));
          CHECK(c.reflection_action(s, k + 1) * c.variable_action(j, k) == c.multiplication_matrix(sx, k) * r);
        }
      }
    // variable actions commute
    for (int k = 0; k < c.top_degree(); ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          CHECK(c.variable_action(i, k + 1) * c.variable_action(j, k) == c.variable_action(j, k + 1) * c.variable_action(i, k));
  }
}

TEST_CASE("frobenius decomposition") {
  for (auto [t, n] : std::vector<std::pair<CartanType, int>>{{CartanType::A, 2}, {CartanType::B, 2}, {CartanType::A, 3}}) {
    WeylGroup g(build_root_system(t, n));
    std::vector<int> all;
    for (int i = 0; i < n; ++i) all.push_back(i);
    CoinvariantAlgebra c(g, all);
    for (int s = 0; s < n; ++s) {
      auto alpha = simple_root(g.root_system(), s);
      for (int k = 0; k <= c.top_degree(); ++k) {
        Matrix fpart(c.dim(k), c.dim(k)), gpart(c.dim(k - 1), c.dim(k));
        for (std::size_t i = 0; i < c.dim(k); ++i) {
          std::vector<Rational> e(c.dim(k));
          e[i] = 1;
          auto [f, h] = c.frobenius_decompose(s, k, e);
          CHECK(Matrix::column(f) == c.reflection_action(s, k) * Matrix::column(f));
          if (k > 0) CHECK(Matrix::column(h) == c.reflection_action(s, k - 1) * Matrix::column(h));
          Matrix back = Matrix::column(f);
          if (k > 0) back += c.multiplication_matrix(alpha, k - 1) * Matrix::column(h);
          CHECK(back == Matrix::column(e));
          for (std::size_t r = 0; r < f.size(); ++r) fpart(r, i) = f[r];
          for (std::size_t r = 0; r < h.size(); ++r) gpart(r, i) = h[r];
        }
        // C_k = C^s_k + alpha C^s_{k-1}: the pair (f, g) determines c.
        CHECK(rank(vstack(fpart, gpart)) == c.dim(k));
      }
      auto one = c.frobenius_decompose(s, 0, {Rational(1)});
      CHECK(one.first == std::vector<Rational>{Rational(1)});
      CHECK(one.second.empty());
      auto a = c.frobenius_decompose(s, 1, c.normal_form(alpha));
      CHECK(std::all_of(a.first.begin(), a.first.end(), [](const Rational& x) { return x.is_zero(); }));
      CHECK(a.second == std::vector<Rational>{Rational(1)});
      auto a2 = c.normal_form(alpha * alpha, 2);
      auto dec = c.frobenius_decompose(s, 2, a2);
      CHECK(dec.first == a2);
    }
  }
}

TEST_CASE("restriction surjection") {
  WeylGroup a2(build_root_system(CartanType::A, 2));
  CoinvariantAlgebra c(a2, {0, 1}), ci(a2, {0}), ce(a2, {});
  std::size_t kernel = 0;
  for (int k = 0; k <= c.top_degree(); ++k) {
    Matrix m = restriction_surjection(c, ci, k);
    CHECK(rank(m) == ci.dim(k));
    kernel += c.dim(k) - rank(m);
    CHECK(restriction_surjection(c, c, k).is_identity());
    // ring map: r(x_j b) = x_j r(b)
    for (int j = 0; j < 2; ++j)
      CHECK(restriction_surjection(c, ci, k + 1) * c.variable_action(j, k) == ci.variable_action(j, k) * m);
  }
  CHECK(kernel == 4);
  CHECK_THROWS_AS(restriction_surjection(ci, c, 0), IncompatibleError);
  WeylGroup b2(build_root_system(CartanType::B, 2));
  CoinvariantAlgebra cb(b2, {0, 1});
  CHECK_THROWS_AS(restriction_surjection(cb, ci, 0), IncompatibleError);
  CHECK(c.content_hash() != ci.content_hash());
  CHECK(c.content_hash() == CoinvariantAlgebra(a2, {1, 0}).content_hash());
}
