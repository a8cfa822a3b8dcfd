#include "doctest.h"

#include <random>

#include "parind/matrix.hpp"
#include "parind/rational.hpp"

using parind::Matrix;
using parind::Rational;

TEST_CASE("rational arithmetic normalizes") {
  Rational a(6, -4);
  CHECK(a.to_string() == "-3/2");
  CHECK(a + Rational(3, 2) == Rational(0));
  CHECK((Rational(1, 3) * Rational(3)).is_one());
  CHECK(Rational::parse("10/4") == Rational(5, 2));
  CHECK(Rational(1, 2) < Rational(2, 3));
}

TEST_CASE("rational promotes to gmp and demotes back") {
  Rational big(std::int64_t{1} << 61);
  Rational sq = big * big;
  CHECK_FALSE(sq.is_small());
  Rational back = sq / big;
  CHECK(back.is_small());
  CHECK(back == big);
  CHECK(sq - sq == Rational(0));
}

TEST_CASE("random rational field axioms") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<long long> d(-1000000, 1000000);
  for (int i = 0; i < 500; ++i) {
    Rational a(d(rng), d(rng) | 1), b(d(rng), d(rng) | 1), c(d(rng), d(rng) | 1);
    CHECK((a + b) * c == a * c + b * c);
    if (!b.is_zero()) CHECK((a / b) * b == a);
    CHECK(a.to_mpq() + b.to_mpq() == (a + b).to_mpq());
  }
}

TEST_CASE("matrix inverse nullspace and solve") {
  Matrix m = Matrix::from_rows({{2, 1, 0}, {1, 1, 0}, {0, 0, 3}}, 3);
  CHECK((m * parind::inverse(m)).is_identity());
  Matrix s = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}}, 3);
  Matrix n = parind::nullspace(s);
  CHECK(n.cols() == 2);
  CHECK((s * n).is_zero());
  Matrix x;
  CHECK(parind::solve(m, Matrix::column({1, 2, 3}), x));
  CHECK(m * x == Matrix::column({1, 2, 3}));
  CHECK_FALSE(parind::solve(s, Matrix::column({1, 0}), x));
  CHECK(parind::rank(Matrix(0, 4)) == 0);
}
