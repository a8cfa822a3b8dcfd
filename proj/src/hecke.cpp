#include "parind/hecke.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

// ---------------------------------------------------------------------------
// LaurentPoly

LaurentPoly::LaurentPoly(const Rational& c) {
  if (!c.is_zero()) c_.emplace(0, c);
}

LaurentPoly LaurentPoly::monomial(const Rational& c, int exponent) {
  LaurentPoly p;
  if (!c.is_zero()) p.c_.emplace(exponent, c);
  return p;
}

Rational LaurentPoly::coefficient(int e) const {
  auto it = c_.find(e);
  return it == c_.end() ? Rational(0) : it->second;
}

int LaurentPoly::min_degree() const {
  if (c_.empty()) throw PreconditionError("min_degree of zero polynomial");
  return c_.begin()->first;
}

int LaurentPoly::max_degree() const {
  if (c_.empty()) throw PreconditionError("max_degree of zero polynomial");
  return c_.rbegin()->first;
}

LaurentPoly LaurentPoly::bar() const {
  LaurentPoly p;
  for (const auto& [e, c] : c_) p.c_.emplace(-e, c);
  return p;
}

Rational LaurentPoly::at_one() const {
  Rational s;
  for (const auto& [e, c] : c_) s += c;
  return s;
}

Rational LaurentPoly::evaluate(const Rational& v) const {
  Rational s;
  for (const auto& [e, c] : c_) {
    Rational p(1);
    Rational base = e >= 0 ? v : Rational(1) / v;
    for (int i = 0; i < std::abs(e); ++i) p *= base;
    s += c * p;
  }
  return s;
}

bool LaurentPoly::has_nonnegative_integer_coefficients() const {
  return std::all_of(c_.begin(), c_.end(), [](const auto& kv) { return kv.second.is_integer() && kv.second.sign() > 0; });
}

void LaurentPoly::add_term(int e, const Rational& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = c_.emplace(e, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) c_.erase(it);
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.c_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const LaurentPoly& o) {
  *this = *this * o;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly p;
  for (const auto& [e, c] : c_) p.c_.emplace(e, -c);
  return p;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly p;
  for (const auto& [ea, ca] : a.c_)
    for (const auto& [eb, cb] : b.c_) p.add_term(ea + eb, ca * cb);
  return p;
}

std::string LaurentPoly::to_string() const {
  if (c_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [e, c] : c_) {
    Rational mag = c.sign() < 0 ? -c : c;
    if (first) {
      if (c.sign() < 0) os << "-";
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (e == 0) {
      os << mag;
      continue;
    }
    if (!mag.is_one()) os << mag;
    os << "v";
    if (e != 1) os << "^" << e;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// HeckeElement

HeckeElement HeckeElement::standard(const WeylElement& w, const LaurentPoly& p) {
  HeckeElement h(w.group());
  h.add(w.index(), p);
  return h;
}

LaurentPoly HeckeElement::coefficient(const WeylElement& w) const {
  if (group_ && w.group() != group_) throw IncompatibleError("element of a different Weyl group");
  return coefficient(w.index());
}

LaurentPoly HeckeElement::coefficient(int w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? LaurentPoly() : it->second;
}

void HeckeElement::add(int w, const LaurentPoly& p) {
  if (p.is_zero()) return;
  auto [it, inserted] = terms_.emplace(w, p);
  if (inserted) return;
  it->second += p;
  if (it->second.is_zero()) terms_.erase(it);
}

void HeckeElement::check_group(const HeckeElement& o) const {
  if (group_ && o.group_ && group_ != o.group_) throw IncompatibleError("Hecke elements of different groups");
}

HeckeElement HeckeElement::times_generator(int s) const {
  HeckeElement r(group_);
  static const LaurentPoly kQuad = LaurentPoly::v(-1) - LaurentPoly::v(1);
  for (const auto& [w, p] : terms_) {
    int ws = group_->mul_right(w, s);
    if (group_->length(ws) > group_->length(w)) {
      r.add(ws, p);
    } else {
      r.add(w, p * kQuad);
      r.add(ws, p);
    }
  }
  return r;
}

HeckeElement HeckeElement::bar() const {
  HeckeElement r(group_);
  if (!group_) return r;
  // bar(H_w) = bar(H_{ws}) (H_s + v - v^{-1}) for a right descent s.
  std::map<int, HeckeElement> memo;
  const LaurentPoly shift = LaurentPoly::v(1) - LaurentPoly::v(-1);
  std::function<const HeckeElement&(int)> bar_std = [&](int w) -> const HeckeElement& {
    auto it = memo.find(w);
    if (it != memo.end()) return it->second;
    HeckeElement val(group_);
    if (w == 0) {
      val.add(0, 1);
    } else {
      int s = group_->word(w).back();
      const HeckeElement& prev = bar_std(group_->mul_right(w, s));
      val = prev.times_generator(s);
      for (const auto& [x, p] : prev.terms_) val.add(x, p * shift);
    }
    return memo.emplace(w, std::move(val)).first->second;
  };
  for (const auto& [w, p] : terms_) {
    LaurentPoly pb = p.bar();
    for (const auto& [x, q] : bar_std(w).terms_) r.add(x, pb * q);
  }
  return r;
}

std::map<int, Rational> HeckeElement::at_one() const {
  std::map<int, Rational> out;
  for (const auto& [w, p] : terms_) {
    Rational c = p.at_one();
    if (!c.is_zero()) out.emplace(w, c);
  }
  return out;
}

HeckeElement& HeckeElement::operator+=(const HeckeElement& o) {
  check_group(o);
  if (!group_) group_ = o.group_;
  for (const auto& [w, p] : o.terms_) add(w, p);
  return *this;
}

HeckeElement& HeckeElement::operator-=(const HeckeElement& o) {
  check_group(o);
  if (!group_) group_ = o.group_;
  for (const auto& [w, p] : o.terms_) add(w, -p);
  return *this;
}

HeckeElement operator*(const HeckeElement& a, const HeckeElement& b) {
  a.check_group(b);
  HeckeElement r(a.group_ ? a.group_ : b.group_);
  for (const auto& [y, q] : b.terms_) {
    HeckeElement part = a;
    for (int s : r.group_->word(y)) part = part.times_generator(s);
    for (const auto& [x, p] : part.terms_) r.add(x, p * q);
  }
  return r;
}

HeckeElement operator*(const LaurentPoly& p, const HeckeElement& a) {
  HeckeElement r(a.group_);
  for (const auto& [w, q] : a.terms_) r.add(w, p * q);
  return r;
}

bool operator==(const HeckeElement& a, const HeckeElement& b) {
  if (a.group_ && b.group_ && a.group_ != b.group_) return false;
  return a.terms_ == b.terms_;
}

std::string HeckeElement::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    os << (first ? "" : " + ");
    first = false;
    if (it->second != LaurentPoly(1)) os << "(" << it->second.to_string() << ")";
    os << "H(" << word_to_string(group_->word(it->first)) << ")";
  }
  return os.str();
}

HeckeElement hecke_multiply(const HeckeElement& a, const HeckeElement& b) { return a * b; }

// ---------------------------------------------------------------------------
// Kazhdan-Lusztig basis

namespace {

// The bar-invariant Laurent polynomial sharing the non-positive part of p.
LaurentPoly symmetric_nonpositive_part(const LaurentPoly& p) {
  LaurentPoly r;
  for (const auto& [e, c] : p.terms()) {
    if (e > 0) continue;
    r += LaurentPoly::monomial(c, e);
    if (e < 0) r += LaurentPoly::monomial(c, -e);
  }
  return r;
}

}  // namespace

KLBasis::KLBasis(const WeylGroup& group) : group_(&group) {
  basis_.resize(group.order());
  for (std::size_t i = 0; i < group.order(); ++i) {
    const int w = static_cast<int>(i);
    if (w == 0) {
      basis_[i] = HeckeElement::standard(group.identity());
      continue;
    }
    int s = group.word(w).back();
    int prev = group.mul_right(w, s);
    const HeckeElement& bp = basis_[static_cast<std::size_t>(prev)];
    // b_prev * b_s = b_prev H_s + v b_prev
    HeckeElement prod = bp.times_generator(s) + LaurentPoly::v(1) * bp;
    // Indices respect length, so b_y only touches indices <= y.
    for (int y = w - 1; y >= 0; --y) {
      LaurentPoly corr = symmetric_nonpositive_part(prod.coefficient(y));
      if (!corr.is_zero()) prod -= corr * basis_[static_cast<std::size_t>(y)];
    }
    PARIND_ASSERT(prod.coefficient(w) == LaurentPoly(1), "KL basis: leading coefficient is not 1");
    basis_[i] = std::move(prod);
  }
}

std::map<int, LaurentPoly> KLBasis::expand(const HeckeElement& h) const {
  std::map<int, LaurentPoly> out;
  HeckeElement rest = h;
  while (!rest.is_zero()) {
    auto top = std::prev(rest.terms().end());
    int y = top->first;
    LaurentPoly c = top->second;
    out[y] += c;
    rest -= c * b(y);
  }
  return out;
}

HeckeElement kl_basis(const WeylElement& w) {
  KLBasis kl(*w.group());
  return kl.b(w);
}

std::map<WeylElement, LaurentPoly> parabolic_kl(const ParabolicDatum& datum, const WeylElement& x) {
  if (!datum.in_WI(x)) throw PreconditionError("parabolic_kl: " + x.to_string() + " is not in W_I");
  const WeylGroup& g = *datum.group;
  std::map<WeylElement, LaurentPoly> out;
  if (datum.subset.empty()) {
    out.emplace(g.identity(), 1);
    return out;
  }
  WeylGroup sub(parabolic_subsystem(g.root_system(), datum.subset));
  std::vector<int> local;
  for (int s : x.reduced_word())
    local.push_back(static_cast<int>(std::lower_bound(datum.subset.begin(), datum.subset.end(), s) - datum.subset.begin()));
  WeylElement xs = sub.from_word(local);
  KLBasis kl(sub);
  for (const auto& [z, p] : kl.b(xs).terms()) {
    std::vector<int> word;
    for (int s : sub.word(z)) word.push_back(datum.subset[static_cast<std::size_t>(s)]);
    out.emplace(g.from_word(word), p);
  }
  return out;
}

HeckeElement predicted_class(const ParabolicDatum& datum, const WeylElement& x, const WeylElement& w) {
  if (!datum.is_min_rep(w)) throw PreconditionError("predicted_class: " + w.to_string() + " is not in W^I");
  HeckeElement h(datum.group);
  for (const auto& [z, p] : parabolic_kl(datum, x)) {
    WeylElement zw = z * w;
    PARIND_ASSERT(zw.length() == z.length() + w.length(), "predicted_class: lengths do not add");
    h.add(zw.index(), p);
  }
  return h;
}

LaurentPoly graded_rank(const HeckeElement& h) {
  LaurentPoly r;
  for (const auto& [w, p] : h.terms()) r += p * LaurentPoly::v(-h.group()->length(w));
  return r;
}

}  // namespace parind
