#include "parind/polynomial.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

Polynomial Polynomial::constant(int nvars, const Rational& c) {
  Polynomial p(nvars);
  p.add_term(Exponent(static_cast<std::size_t>(nvars), 0), c);
  return p;
}

Polynomial Polynomial::variable(int nvars, int j) {
  Exponent e(static_cast<std::size_t>(nvars), 0);
  e[static_cast<std::size_t>(j)] = 1;
  return monomial(e);
}

Polynomial Polynomial::monomial(const Exponent& e, const Rational& c) {
  Polynomial p(static_cast<int>(e.size()));
  p.add_term(e, c);
  return p;
}

Polynomial Polynomial::linear(const std::vector<Rational>& coeffs) {
  const int n = static_cast<int>(coeffs.size());
  Polynomial p(n);
  for (int j = 0; j < n; ++j) {
    Exponent e(static_cast<std::size_t>(n), 0);
    e[static_cast<std::size_t>(j)] = 1;
    p.add_term(e, coeffs[static_cast<std::size_t>(j)]);
  }
  return p;
}

int Polynomial::degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    d = std::max(d, s);
  }
  return d;
}

bool Polynomial::is_homogeneous() const {
  int d = -1;
  for (const auto& [e, c] : terms_) {
    int s = 0;
    for (int x : e) s += x;
    if (d >= 0 && s != d) return false;
    d = s;
  }
  return true;
}

Rational Polynomial::coefficient(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Exponent& e, const Rational& c) {
  if (c.is_zero()) return;
  PARIND_ASSERT(static_cast<int>(e.size()) == nvars_, "Polynomial: exponent length mismatch");
  auto [it, inserted] = terms_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  if (nvars_ == 0) nvars_ = o.nvars_;
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, x] : terms_) x *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial p(std::max(a.nvars_, b.nvars_));
  Exponent e(static_cast<std::size_t>(p.nvars_));
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      p.add_term(e, ca * cb);
    }
  return p;
}

Polynomial Polynomial::act(const std::vector<int>& matrix) const {
  const auto n = static_cast<std::size_t>(nvars_);
  PARIND_ASSERT(matrix.size() == n * n, "Polynomial::act: matrix size mismatch");
  std::vector<Polynomial> images;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> col(n);
    for (std::size_t k = 0; k < n; ++k) col[k] = matrix[k * n + j];
    images.push_back(linear(col));
  }
  std::map<Exponent, Polynomial> memo;
  std::function<const Polynomial&(const Exponent&)> image = [&](const Exponent& e) -> const Polynomial& {
    auto it = memo.find(e);
    if (it != memo.end()) return it->second;
    Polynomial val;
    auto nz = std::find_if(e.begin(), e.end(), [](int x) { return x > 0; });
    if (nz == e.end()) {
      val = constant(nvars_, 1);
    } else {
      Exponent rest = e;
      auto j = static_cast<std::size_t>(nz - e.begin());
      --rest[j];
      val = image(rest) * images[j];
    }
    return memo.emplace(e, std::move(val)).first->second;
  };
  Polynomial r(nvars_);
  for (const auto& [e, c] : terms_) r += image(e) * c;
  return r;
}

Polynomial Polynomial::divide_by_linear(const std::vector<Rational>& form) const {
  const auto n = static_cast<std::size_t>(nvars_);
  PARIND_ASSERT(form.size() == n, "divide_by_linear: form length mismatch");
  std::size_t k = n;
  for (std::size_t j = 0; j < n; ++j)
    if (!form[j].is_zero()) {
      k = j;
      break;
    }
  PARIND_ASSERT(k < n, "divide_by_linear: zero divisor");
  Polynomial divisor = linear(form);
  Polynomial q(nvars_), r = *this;
  while (!r.is_zero()) {
    // Term with the largest power of omega_k; each step lowers that power.
    auto best = r.terms_.begin();
    for (auto it = r.terms_.begin(); it != r.terms_.end(); ++it)
      if (it->first[k] > best->first[k]) best = it;
    if (best->first[k] == 0) throw InternalError("divide_by_linear: polynomial is not divisible");
    Exponent e = best->first;
    --e[k];
    Polynomial t = monomial(e, best->second / form[k]);
    q += t;
    r -= t * divisor;
  }
  return q;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    bool constant_term = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
    Rational mag = c.sign() < 0 ? -c : c;
    os << (first ? (c.sign() < 0 ? "-" : "") : (c.sign() < 0 ? " - " : " + "));
    first = false;
    if (constant_term || !mag.is_one()) os << mag;
    bool need_sep = !constant_term && !mag.is_one();
    for (std::size_t j = 0; j < e.size(); ++j) {
      if (e[j] == 0) continue;
      os << (need_sep ? "*" : "") << "w" << j + 1;
      if (e[j] > 1) os << "^" << e[j];
      need_sep = true;
    }
  }
  return os.str();
}

std::vector<Exponent> monomials_of_degree(int nvars, int d) {
  std::vector<Exponent> out;
  if (d < 0) return out;
  Exponent e(static_cast<std::size_t>(nvars), 0);
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (j == nvars - 1) {
      e[static_cast<std::size_t>(j)] = left;
      out.push_back(e);
      return;
    }
    for (int a = left; a >= 0; --a) {
      e[static_cast<std::size_t>(j)] = a;
      rec(j + 1, left - a);
    }
  };
  if (nvars == 0) {
    if (d == 0) out.push_back(e);
    return out;
  }
  rec(0, d);
  return out;
}

Polynomial simple_root(const RootSystem& rs, int s) {
  std::vector<Rational> c;
  for (int x : rs.cartan[static_cast<std::size_t>(s)]) c.emplace_back(x);
  return Polynomial::linear(c);
}

Polynomial reflect(const RootSystem& rs, int s, const Polynomial& f) {
  const auto n = static_cast<std::size_t>(rs.rank);
  std::vector<int> m(n * n, 0);
  for (std::size_t k = 0; k < n; ++k) {
    m[k * n + k] = 1;
    m[k * n + static_cast<std::size_t>(s)] -= rs.cartan[static_cast<std::size_t>(s)][k];
  }
  return f.act(m);
}

Polynomial demazure(const RootSystem& rs, int s, const Polynomial& f) {
  Polynomial diff = f - reflect(rs, s, f);
  if (diff.is_zero()) return Polynomial(f.nvars());
  std::vector<Rational> form;
  for (int x : rs.cartan[static_cast<std::size_t>(s)]) form.emplace_back(x);
  return diff.divide_by_linear(form);
}

}  // namespace parind
