#include "parind/homotopy.hpp"

#include <algorithm>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

// ---------------------------------------------------------------------------
// ComplexOfModules

ComplexOfModules::ComplexOfModules(std::shared_ptr<const Catalog> catalog) : catalog_(std::move(catalog)) {
  PARIND_ASSERT(catalog_ != nullptr, "ComplexOfModules: null catalog");
}

ComplexOfModules ComplexOfModules::single(std::shared_ptr<const Catalog> catalog, std::vector<Summand> summands,
                                          int degree) {
  ComplexOfModules x(std::move(catalog));
  for (const auto& s : summands) x.add(degree, s);
  return x;
}

int ComplexOfModules::add(int n, Summand s) {
  catalog_->module(s.y);
  const int id = next_id_++;
  summands_.emplace(id, std::make_pair(s, n));
  return id;
}

void ComplexOfModules::set_component(int from, int to, ModuleMap f) {
  const auto& a = summands_.at(from);
  const auto& b = summands_.at(to);
  if (b.second != a.second + 1) throw PreconditionError("set_component: summands are not in consecutive degrees");
  if (f.source() != catalog_->module(a.first.y) || f.target() != catalog_->module(b.first.y) ||
      f.degree() != b.first.shift - a.first.shift)
    throw IncompatibleError("set_component: map does not match the summands");
  if (f.is_zero()) {
    auto it = out_.find(from);
    if (it != out_.end()) it->second.erase(to);
    auto jt = in_.find(to);
    if (jt != in_.end()) jt->second.erase(from);
    return;
  }
  out_[from].insert_or_assign(to, std::move(f));
  in_[to].insert(from);
}

void ComplexOfModules::remove(int id) {
  auto it = out_.find(id);
  if (it != out_.end()) {
    for (const auto& [to, f] : it->second) in_[to].erase(id);
    out_.erase(it);
  }
  auto jt = in_.find(id);
  if (jt != in_.end()) {
    for (int from : jt->second) out_[from].erase(id);
    in_.erase(jt);
  }
  summands_.erase(id);
}

bool ComplexOfModules::is_zero() const { return summands_.empty(); }

std::vector<int> ComplexOfModules::degrees() const {
  std::set<int> ds;
  for (const auto& [id, sd] : summands_) ds.insert(sd.second);
  return {ds.begin(), ds.end()};
}

std::vector<int> ComplexOfModules::ids(int n) const {
  std::vector<int> out;
  for (const auto& [id, sd] : summands_)
    if (sd.second == n) out.push_back(id);
  return out;
}

const ModuleMap* ComplexOfModules::component(int from, int to) const {
  auto it = out_.find(from);
  if (it == out_.end()) return nullptr;
  auto jt = it->second.find(to);
  return jt == it->second.end() ? nullptr : &jt->second;
}

std::vector<std::pair<int, const ModuleMap*>> ComplexOfModules::out_components(int from) const {
  std::vector<std::pair<int, const ModuleMap*>> out;
  auto it = out_.find(from);
  if (it == out_.end()) return out;
  for (const auto& [to, f] : it->second) out.emplace_back(to, &f);
  return out;
}

std::vector<std::pair<int, const ModuleMap*>> ComplexOfModules::in_components(int to) const {
  std::vector<std::pair<int, const ModuleMap*>> out;
  auto it = in_.find(to);
  if (it == in_.end()) return out;
  for (int from : it->second) out.emplace_back(from, component(from, to));
  return out;
}

std::map<int, std::vector<Summand>> ComplexOfModules::terms() const {
  std::map<int, std::vector<Summand>> out;
  for (const auto& [id, sd] : summands_) out[sd.second].push_back(sd.first);
  for (auto& [n, v] : out) std::sort(v.begin(), v.end());
  return out;
}

std::map<int, LaurentPoly> ComplexOfModules::graded_characters() const {
  std::map<int, LaurentPoly> out;
  for (const auto& [id, sd] : summands_) {
    const auto& m = catalog_->module(sd.first.y);
    for (const auto& [d, k] : m->graded_dims())
      out[sd.second] += LaurentPoly::monomial(static_cast<long>(k), d - sd.first.shift);
  }
  return out;
}

std::string ComplexOfModules::d_squared_defect() const {
  for (const auto& [a, outs] : out_)
    for (const auto& [b, f] : outs) {
      (void)f;
      for (const auto& [c, g] : out_components(b)) {
        (void)g;
        ModuleMap sum(catalog_->module(summand(a).y), catalog_->module(summand(c).y),
                      summand(c).shift - summand(a).shift);
        for (int mid : in_.count(c) ? in_.at(c) : std::set<int>{}) {
          const auto* f1 = component(a, mid);
          if (f1) sum += component(mid, c)->compose(*f1);
        }
        if (!sum.is_zero())
          return "d o d is nonzero from degree " + std::to_string(degree_of(a)) + " (summand ids " + std::to_string(a) +
                 " -> " + std::to_string(c) + ")";
      }
    }
  return "";
}

std::string ComplexOfModules::summary() const {
  const auto& g = catalog_->group();
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, v] : terms()) {
    if (!first) os << " ; ";
    first = false;
    os << n << ": ";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << " + ";
      os << "D[" << word_to_string(g.word(v[i].y)) << "]";
      if (v[i].shift != 0) os << "<" << v[i].shift << ">";
    }
  }
  if (first) os << "0";
  if (twist_ != 0) os << " (twist " << twist_ << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

// Adds the terms of C (x)_{C^s} X<2> to `out` and returns the ids of the
// pieces of each summand of x.
std::map<int, std::vector<int>> add_theta_row(int s, const ComplexOfModules& x, ComplexOfModules& out) {
  const auto& cat = x.catalog();
  std::map<int, std::vector<int>> pieces;
  for (int n : x.degrees())
    for (int a : x.ids(n)) {
      const auto& sa = x.summand(a);
      const auto& th = cat.theta(s, sa.y);
      auto& ids = pieces[a];
      for (const auto& p : th.pieces) ids.push_back(out.add(n, Summand{p.y, p.shift + sa.shift + 2}));
    }
  for (int n : x.degrees())
    for (int a : x.ids(n)) {
      const auto& tha = cat.theta(s, x.summand(a).y);
      for (const auto& [b, f] : x.out_components(a)) {
        const auto& thb = cat.theta(s, x.summand(b).y);
        ModuleMap tf = theta_map(*f, tha.theta, thb.theta);
        for (std::size_t p = 0; p < tha.pieces.size(); ++p) {
          ModuleMap right = tf.compose(tha.pieces[p].inclusion);
          for (std::size_t q = 0; q < thb.pieces.size(); ++q)
            out.set_component(pieces[a][p], pieces[b][q], thb.pieces[q].projection.compose(right));
        }
      }
    }
  return pieces;
}

}  // namespace

ComplexOfModules apply_theta(int s, const ComplexOfModules& x) {
  ComplexOfModules out(x.catalog_ptr());
  out.set_twist(x.twist());
  add_theta_row(s, x, out);
  return out;
}

ComplexOfModules tensor_rouquier(int s, const ComplexOfModules& x) {
  const auto& cat = x.catalog();
  ComplexOfModules out(x.catalog_ptr());
  out.set_twist(x.twist() + 1);
  std::map<int, int> lower;
  for (int n : x.degrees())
    for (int a : x.ids(n)) lower[a] = out.add(n - 1, x.summand(a));
  for (int n : x.degrees())
    for (int a : x.ids(n))
      for (const auto& [b, f] : x.out_components(a)) out.set_component(lower[a], lower[b], *f * Rational(-1));
  auto pieces = add_theta_row(s, x, out);
  for (int n : x.degrees())
    for (int a : x.ids(n)) {
      const auto& th = cat.theta(s, x.summand(a).y);
      for (std::size_t p = 0; p < th.pieces.size(); ++p)
        out.set_component(lower[a], pieces[a][p], th.pieces[p].projection.compose(th.unit));
    }
  auto defect = out.d_squared_defect();
  if (!defect.empty()) throw InternalError("tensor_rouquier: " + defect);
  return out;
}

HeckeElement raw_k0_class(const ComplexOfModules& x) {
  const auto& cat = x.catalog();
  HeckeElement h;
  for (const auto& [n, v] : x.terms())
    for (const auto& s : v) {
      LaurentPoly c = LaurentPoly::v(cat.group().length(s.y) - s.shift);
      if (n % 2 != 0) c = -c;
      h += c * cat.kl().b(s.y);
    }
  return h;
}

HeckeElement k0_class(const ComplexOfModules& x) { return LaurentPoly::v(x.twist()) * raw_k0_class(x); }

ComplexOfModules gaussian_eliminate(const ComplexOfModules& x, std::mt19937_64* rng) {
  ComplexOfModules y = x;
  const HeckeElement before = raw_k0_class(x);
  for (;;) {
    std::vector<std::pair<int, int>> candidates;
    for (const auto& [a, outs] : y.out_)
      for (const auto& [b, f] : outs)
        if (y.summand(a) == y.summand(b) && !f.block(0)(0, 0).is_zero()) {
          candidates.emplace_back(a, b);
          if (!rng) break;
        }
    if (candidates.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(*rng);
    const auto [a, b] = candidates[pick];
    const Rational inv = Rational(1) / y.component(a, b)->block(0)(0, 0);

    auto ins = y.in_components(b);
    auto outs = y.out_components(a);
    std::vector<std::tuple<int, int, ModuleMap>> updates;
    for (const auto& [a2, delta] : ins) {
      if (a2 == a) continue;
      for (const auto& [b2, gamma] : outs) {
        if (b2 == b) continue;
        ModuleMap corr = gamma->compose(*delta) * inv;
        const auto* eps = y.component(a2, b2);
        ModuleMap fresh = eps ? *eps - corr : corr * Rational(-1);
        updates.emplace_back(a2, b2, std::move(fresh));
      }
    }
    for (auto& [a2, b2, f] : updates) y.set_component(a2, b2, std::move(f));
    y.remove(a);
    y.remove(b);
  }
  if (raw_k0_class(y) != before) throw InternalError("gaussian_eliminate: K_0 class changed");
  return y;
}

// ---------------------------------------------------------------------------
// Hom complexes

namespace {

struct HomDegree {
  // Basis of Hom^q(X, Y<g>): component pairs with offsets into the coordinates.
  std::map<std::pair<int, int>, std::pair<std::size_t, const HomBasis*>> offset;
  std::vector<std::tuple<int, int, const HomBasis*>> blocks;
  std::size_t dim = 0;
};

int component_degree(const ComplexOfModules& x, int a, const ComplexOfModules& y, int b, int g) {
  return y.summand(b).shift + g - x.summand(a).shift;
}

HomDegree hom_degree(const ComplexOfModules& x, const ComplexOfModules& y, int q, int g) {
  HomDegree h;
  const auto& cat = x.catalog();
  for (int n : x.degrees())
    for (int a : x.ids(n))
      for (int b : y.ids(n + q)) {
        const auto& basis = cat.hom(x.summand(a).y, y.summand(b).y, component_degree(x, a, y, b, g));
        if (basis.dim() == 0) continue;
        h.offset[{a, b}] = {h.dim, &basis};
        h.blocks.emplace_back(a, b, &basis);
        h.dim += basis.dim();
      }
  return h;
}

// Matrix of the hom-complex differential Hom^q -> Hom^{q+1}:
// D(f) = d_Y o f - (-1)^q f o d_X.
Matrix hom_differential(const ComplexOfModules& x, const ComplexOfModules& y, int q, const HomDegree& src,
                        const HomDegree& dst) {
  Matrix m(dst.dim, src.dim);
  const Rational sign = q % 2 == 0 ? Rational(-1) : Rational(1);
  std::size_t col = 0;
  for (const auto& [a, b, basis] : src.blocks) {
    for (const auto& h : basis->basis) {
      auto add = [&](int a2, int b2, const ModuleMap& f, const Rational& c) {
        auto it = dst.offset.find({a2, b2});
        if (it == dst.offset.end()) {
          if (!f.is_zero()) throw InternalError("hom complex: image outside the target basis");
          return;
        }
        auto coords = it->second.second->coordinates(f);
        for (std::size_t i = 0; i < coords.size(); ++i) m(it->second.first + i, col) += c * coords[i];
      };
      for (const auto& [b2, e] : y.out_components(b)) add(a, b2, e->compose(h), Rational(1));
      for (const auto& [a2, c] : x.in_components(a)) add(a2, b, h.compose(*c), sign);
      ++col;
    }
  }
  return m;
}

std::pair<int, int> shift_range(const ComplexOfModules& x, const ComplexOfModules& y) {
  int lo = 0, hi = 0;
  bool any = false;
  const auto& cat = x.catalog();
  for (int n : x.degrees())
    for (int a : x.ids(n))
      for (int m : y.degrees())
        for (int b : y.ids(m)) {
          const auto& sa = x.summand(a);
          const auto& sb = y.summand(b);
          const int top_a = cat.module(sa.y)->max_degree(), top_b = cat.module(sb.y)->max_degree();
          const int l = sa.shift - sb.shift - top_a, h = sa.shift - sb.shift + top_b;
          lo = any ? std::min(lo, l) : l;
          hi = any ? std::max(hi, h) : h;
          any = true;
        }
  if (!any) return {1, 0};
  return {lo, hi};
}

}  // namespace

std::size_t hom_cohomology_dim(const ComplexOfModules& x, const ComplexOfModules& y, int p) {
  if (x.catalog_ptr() != y.catalog_ptr()) throw IncompatibleError("hom complex: complexes over different catalogs");
  auto [lo, hi] = shift_range(x, y);
  std::size_t total = 0;
  for (int g = lo; g <= hi; ++g) {
    auto cur = hom_degree(x, y, p, g);
    if (cur.dim == 0) continue;
    auto prev = hom_degree(x, y, p - 1, g);
    auto next = hom_degree(x, y, p + 1, g);
    const std::size_t r_out = next.dim ? rank(hom_differential(x, y, p, cur, next)) : 0;
    const std::size_t r_in = prev.dim ? rank(hom_differential(x, y, p - 1, prev, cur)) : 0;
    total += cur.dim - r_out - r_in;
  }
  return total;
}

bool hom_complex_vanishing(const ComplexOfModules& x, const ComplexOfModules& y) {
  return hom_cohomology_dim(x, y, 0) == 0;
}

bool find_chain_isomorphism(const ComplexOfModules& x, const ComplexOfModules& y, std::mt19937_64& rng,
                            int attempts) {
  if (x.terms() != y.terms()) return false;
  if (x.is_zero()) return true;
  auto cur = hom_degree(x, y, 0, 0);
  auto next = hom_degree(x, y, 1, 0);
  Matrix z = next.dim ? nullspace(hom_differential(x, y, 0, cur, next)) : Matrix::identity(cur.dim);
  if (z.cols() == 0) return false;
  std::uniform_int_distribution<int> coef(-4, 4);
  for (int t = 0; t < attempts; ++t) {
    Matrix c(z.cols(), 1);
    for (std::size_t i = 0; i < z.cols(); ++i) c(i, 0) = t == 0 && z.cols() == 1 ? Rational(1) : Rational(coef(rng));
    Matrix v = z * c;
    // A map between sums of indecomposables with End^0 = Q is invertible
    // iff its scalar blocks between equal summands are.
    bool ok = true;
    for (int n : x.degrees()) {
      std::map<Summand, std::vector<int>> xs, ys;
      for (int a : x.ids(n)) xs[x.summand(a)].push_back(a);
      for (int b : y.ids(n)) ys[y.summand(b)].push_back(b);
      for (const auto& [s, as] : xs) {
        const auto& bs = ys.at(s);
        Matrix top(bs.size(), as.size());
        for (std::size_t i = 0; i < bs.size(); ++i)
          for (std::size_t j = 0; j < as.size(); ++j) {
            auto it = cur.offset.find({as[j], bs[i]});
            if (it == cur.offset.end()) continue;
            const auto& [off, basis] = it->second;
            Rational val;
            for (std::size_t k = 0; k < basis->dim(); ++k) val += v(off + k, 0) * basis->basis[k].block(0)(0, 0);
            top(i, j) = val;
          }
        if (!is_invertible(top)) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Raw complexes

namespace {

ModulePtr zero_like(const ModulePtr& m) {
  return std::make_shared<const GradedModule>(m->algebra_ptr(), std::map<int, std::size_t>{},
                                              std::vector<std::map<int, Matrix>>(static_cast<std::size_t>(m->nvars())));
}

ModulePtr term_or_zero(const RawComplex& x, int n, const ModulePtr& like) {
  auto it = x.terms.find(n);
  return it == x.terms.end() ? zero_like(like) : it->second;
}

ModuleMap diff_or_zero(const RawComplex& x, int n, const ModulePtr& src, const ModulePtr& dst) {
  auto it = x.differentials.find(n);
  if (it == x.differentials.end()) return ModuleMap(src, dst, 0);
  return it->second;
}

}  // namespace

std::string RawComplex::d_squared_defect() const {
  for (const auto& [n, d] : differentials) {
    auto it = differentials.find(n + 1);
    if (it == differentials.end()) continue;
    if (!it->second.compose(d).is_zero()) return "d o d is nonzero from degree " + std::to_string(n);
  }
  return "";
}

LaurentPoly RawComplex::euler_characteristic() const {
  LaurentPoly e;
  for (const auto& [n, m] : terms) {
    LaurentPoly g = m->graded_dimension();
    e += n % 2 == 0 ? g : -g;
  }
  return LaurentPoly::v(twist) * e;
}

RawComplex raw_single(const ModulePtr& m) {
  RawComplex r;
  r.terms[0] = m;
  return r;
}

RawComplex to_raw(const ComplexOfModules& x) {
  const auto& cat = x.catalog();
  RawComplex r;
  r.twist = x.twist();
  std::map<int, std::vector<int>> ids;
  for (int n : x.degrees()) {
    ids[n] = x.ids(n);
    std::vector<ModulePtr> parts;
    for (int a : ids[n]) parts.push_back(shift_module(cat.module(x.summand(a).y), x.summand(a).shift));
    r.terms[n] = direct_sum(parts);
  }
  for (int n : x.degrees()) {
    if (!r.terms.count(n + 1)) continue;
    const auto& src = r.terms[n];
    const auto& dst = r.terms[n + 1];
    ModuleMap d(src, dst, 0);
    for (const auto& [deg, k] : src->graded_dims()) {
      Matrix b(dst->dim(deg), k);
      std::size_t c0 = 0;
      for (int a : ids[n]) {
        const auto& sa = x.summand(a);
        const std::size_t ca = cat.module(sa.y)->dim(deg + sa.shift);
        std::size_t r0 = 0;
        for (int bb : ids[n + 1]) {
          const auto& sb = x.summand(bb);
          const std::size_t rb = cat.module(sb.y)->dim(deg + sb.shift);
          if (const auto* f = x.component(a, bb)) b.set_block(r0, c0, f->block(deg + sa.shift));
          r0 += rb;
        }
        c0 += ca;
      }
      d.set_block(deg, std::move(b));
    }
    r.differentials[n] = std::move(d);
  }
  return r;
}

RawComplex raw_tensor_rouquier(int s, const RawComplex& x) {
  RawComplex r;
  r.twist = x.twist + 1;
  if (x.terms.empty()) return r;
  const ModulePtr like = x.terms.begin()->second;
  const int lo = x.terms.begin()->first, hi = x.terms.rbegin()->first;
  std::map<int, ModulePtr> theta;
  for (int n = lo; n <= hi; ++n) theta[n] = induce_frobenius(s, term_or_zero(x, n, like));
  // Y^n = X^{n+1} + theta X^n <2>
  std::map<int, ModulePtr> shifted;
  for (int n = lo - 1; n <= hi; ++n) {
    auto top = term_or_zero(x, n + 1, like);
    auto th = theta.count(n) ? shift_module(theta[n], 2) : zero_like(like);
    shifted[n] = th;
    auto y = direct_sum({top, th});
    if (!y->is_zero()) r.terms[n] = y;
  }
  for (int n = lo - 1; n < hi; ++n) {
    if (!r.terms.count(n) || !r.terms.count(n + 1)) continue;
    const auto& src = r.terms[n];
    const auto& dst = r.terms[n + 1];
    auto x1 = term_or_zero(x, n + 1, like), x2 = term_or_zero(x, n + 2, like);
    ModuleMap dx1 = diff_or_zero(x, n + 1, x1, x2);
    ModuleMap unit = frobenius_unit(s, x1, theta.count(n + 1) ? theta[n + 1] : induce_frobenius(s, x1));
    ModuleMap tdx = theta.count(n) && theta.count(n + 1)
                        ? theta_map(diff_or_zero(x, n, term_or_zero(x, n, like), x1), theta[n], theta[n + 1])
                        : ModuleMap(theta.count(n) ? theta[n] : zero_like(like),
                                    theta.count(n + 1) ? theta[n + 1] : zero_like(like), 0);
    const auto& th_src = *tdx.source();
    const auto& th_dst = *tdx.target();
    ModuleMap d(src, dst, 0);
    for (const auto& [deg, k] : src->graded_dims()) {
      Matrix b(dst->dim(deg), k);
      const std::size_t top_src = x1->dim(deg), top_dst = x2->dim(deg);
      b.set_block(0, 0, dx1.block(deg) * Rational(-1));
      if (th_dst.dim(deg + 2) > 0) {
        b.set_block(top_dst, 0, unit.block(deg));
        if (th_src.dim(deg + 2) > 0) b.set_block(top_dst, top_src, tdx.block(deg + 2));
      }
      d.set_block(deg, std::move(b));
    }
    r.differentials[n] = std::move(d);
  }
  auto defect = r.d_squared_defect();
  if (!defect.empty()) throw InternalError("raw_tensor_rouquier: " + defect);
  return r;
}

}  // namespace parind
