#include "parind/smod.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

// ---------------------------------------------------------------------------
// GradedModule

GradedModule::GradedModule(AlgebraPtr algebra, const std::map<int, std::size_t>& dims,
                           const std::vector<std::map<int, Matrix>>& actions)
    : algebra_(std::move(algebra)) {
  PARIND_ASSERT(algebra_ != nullptr, "GradedModule: null algebra");
  const auto n = static_cast<std::size_t>(algebra_->nvars());
  PARIND_ASSERT(actions.size() == n, "GradedModule: one action per variable expected");
  int lo = 0, hi = 0;
  bool any = false;
  for (const auto& [d, k] : dims) {
    if (k == 0) continue;
    if (!any) lo = hi = d;
    lo = std::min(lo, d);
    hi = std::max(hi, d);
    any = true;
  }
  if (!any) {
    actions_.assign(n, {});
    return;
  }
  for (const auto& [d, k] : dims)
    if (k != 0 && (d - lo) % 2 != 0) throw InternalError("GradedModule: degrees of mixed parity");
  lo_ = lo;
  dims_.assign(static_cast<std::size_t>((hi - lo) / 2 + 1), 0);
  for (const auto& [d, k] : dims)
    if (k != 0) dims_[index(d)] = k;
  actions_.assign(n, {});
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i + 1 < dims_.size(); ++i) actions_[j].push_back(Matrix::zero(dims_[i + 1], dims_[i]));
    for (const auto& [d, m] : actions[j]) {
      if (m.rows() != dim(d + 2) || m.cols() != dim(d))
        throw InternalError("GradedModule: action block of wrong shape in degree " + std::to_string(d));
      if (m.rows() == 0 || m.cols() == 0) continue;
      actions_[j][index(d)] = m;
    }
  }
}

std::size_t GradedModule::dim(int d) const { return in_range(d) ? dims_[index(d)] : 0; }

std::size_t GradedModule::total_dim() const {
  std::size_t t = 0;
  for (auto k : dims_) t += k;
  return t;
}

std::map<int, std::size_t> GradedModule::graded_dims() const {
  std::map<int, std::size_t> out;
  for (std::size_t i = 0; i < dims_.size(); ++i)
    if (dims_[i] != 0) out[lo_ + 2 * static_cast<int>(i)] = dims_[i];
  return out;
}

LaurentPoly GradedModule::graded_dimension() const {
  LaurentPoly p;
  for (const auto& [d, k] : graded_dims()) p += LaurentPoly::monomial(static_cast<long>(k), d);
  return p;
}

Matrix GradedModule::action(int j, int d) const {
  if (in_range(d) && in_range(d + 2)) return actions_[static_cast<std::size_t>(j)][index(d)];
  return Matrix::zero(dim(d + 2), dim(d));
}

Matrix GradedModule::act(const Polynomial& f, int d) const {
  const int k = f.degree();
  Matrix out = Matrix::zero(dim(d + 2 * std::max(k, 0)), dim(d));
  if (f.is_zero()) return out;
  PARIND_ASSERT(f.is_homogeneous(), "GradedModule::act: polynomial is not homogeneous");
  for (const auto& [e, c] : f.terms()) {
    Matrix m = Matrix::identity(dim(d));
    int cur = d;
    for (std::size_t j = 0; j < e.size(); ++j)
      for (int r = 0; r < e[j]; ++r) {
        m = action(static_cast<int>(j), cur) * m;
        cur += 2;
      }
    out += m * c;
  }
  return out;
}

Matrix GradedModule::alpha_action(int s, int d) const {
  const auto& row = algebra_->root_system().cartan[static_cast<std::size_t>(s)];
  Matrix out = Matrix::zero(dim(d + 2), dim(d));
  for (std::size_t j = 0; j < row.size(); ++j)
    if (row[j] != 0) out += action(static_cast<int>(j), d) * Rational(row[j]);
  return out;
}

GradedModule GradedModule::shifted(int n) const {
  GradedModule m;
  m.algebra_ = algebra_;
  m.lo_ = dims_.empty() ? 0 : lo_ - n;
  m.dims_ = dims_;
  m.actions_ = actions_;
  return m;
}

GradedModule GradedModule::with_algebra(AlgebraPtr algebra) const {
  PARIND_ASSERT(algebra && algebra->nvars() == nvars(), "with_algebra: polynomial rings differ");
  GradedModule m;
  m.algebra_ = std::move(algebra);
  m.lo_ = lo_;
  m.dims_ = dims_;
  m.actions_ = actions_;
  return m;
}

std::string GradedModule::relation_defect() const {
  if (is_zero()) return "";
  const int n = nvars();
  for (int d = lo_; d <= max_degree(); d += 2)
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (action(a, d + 2) * action(b, d) != action(b, d + 2) * action(a, d))
          return "w" + std::to_string(a + 1) + " and w" + std::to_string(b + 1) + " do not commute in degree " +
                 std::to_string(d);
  for (const auto& g : algebra_->ideal_generators())
    for (int d = lo_; d <= max_degree(); d += 2)
      if (!act(g, d).is_zero()) return "ideal generator " + g.to_string() + " acts nontrivially in degree " + std::to_string(d);
  return "";
}

void GradedModule::validate() const {
  auto why = relation_defect();
  if (!why.empty()) throw InternalError("GradedModule: " + why);
}

const GradedModule::Presentation& GradedModule::presentation() const {
  std::call_once(presentation_->once, [this] {
    auto& out = presentation_->value.degrees;
    if (is_zero()) return;
    const auto n = static_cast<std::size_t>(nvars());
    for (int d = lo_; d <= max_degree() + 2; d += 2) {
      Presentation::Degree deg;
      deg.d = d;
      deg.dim = dim(d);
      const std::size_t prev = dim(d - 2);
      Matrix span(deg.dim, n * prev);
      for (std::size_t j = 0; j < n && prev > 0; ++j) span.set_block(0, j * prev, action(static_cast<int>(j), d - 2));
      if (deg.dim > 0) {
        deg.spanning = independent_columns(span);
        Matrix full = hstack(span.select_cols(deg.spanning), Matrix::identity(deg.dim));
        auto cols = independent_columns(full);
        deg.generators = deg.dim - deg.spanning.size();
        deg.basis_inverse = inverse(full.select_cols(cols));
        deg.span_coords = deg.basis_inverse * span;
      } else {
        deg.basis_inverse = Matrix(0, 0);
        deg.span_coords = Matrix(0, n * prev);
      }
      out.push_back(std::move(deg));
    }
  });
  return presentation_->value;
}

// ---------------------------------------------------------------------------
// ModuleMap

ModuleMap::ModuleMap(ModulePtr source, ModulePtr target, int degree)
    : source_(std::move(source)), target_(std::move(target)), degree_(degree) {
  PARIND_ASSERT(source_ && target_, "ModuleMap: null module");
}

ModuleMap ModuleMap::identity(const ModulePtr& m) {
  ModuleMap f(m, m, 0);
  for (const auto& [d, k] : m->graded_dims()) f.blocks_[d] = Matrix::identity(k);
  return f;
}

Matrix ModuleMap::block(int d) const {
  auto it = blocks_.find(d);
  if (it != blocks_.end()) return it->second;
  return Matrix::zero(target_->dim(d + degree_), source_->dim(d));
}

void ModuleMap::set_block(int d, Matrix b) {
  const std::size_t rows = target_->dim(d + degree_), cols = source_->dim(d);
  if (b.rows() != rows || b.cols() != cols)
    throw InternalError("ModuleMap::set_block: wrong shape in degree " + std::to_string(d));
  if (rows == 0 || cols == 0) return;
  blocks_[d] = std::move(b);
}

bool ModuleMap::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const auto& kv) { return kv.second.is_zero(); });
}

bool ModuleMap::is_isomorphism() const {
  if (degree_ != 0 || source_->graded_dims() != target_->graded_dims()) return false;
  for (const auto& [d, k] : source_->graded_dims()) {
    auto it = blocks_.find(d);
    if (it == blocks_.end() || !is_invertible(it->second)) return false;
  }
  return true;
}

ModuleMap ModuleMap::inverse() const {
  if (!is_isomorphism()) throw PreconditionError("ModuleMap::inverse: not an isomorphism");
  ModuleMap g(target_, source_, 0);
  for (const auto& [d, b] : blocks_) g.blocks_[d] = parind::inverse(b);
  return g;
}

std::string ModuleMap::intertwining_defect() const {
  if (source_->is_zero()) return "";
  for (int j = 0; j < source_->nvars(); ++j)
    for (int d = source_->min_degree() - 2; d <= source_->max_degree(); d += 2)
      if (target_->action(j, d + degree_) * block(d) != block(d + 2) * source_->action(j, d))
        return "map does not commute with w" + std::to_string(j + 1) + " in degree " + std::to_string(d);
  return "";
}

std::vector<Rational> ModuleMap::flatten() const {
  std::vector<Rational> out;
  if (source_->is_zero()) return out;
  for (int d = source_->min_degree(); d <= source_->max_degree(); d += 2) {
    Matrix b = block(d);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c) out.push_back(b(r, c));
  }
  return out;
}

ModuleMap ModuleMap::compose(const ModuleMap& other) const {
  if (other.target_ != source_) throw IncompatibleError("ModuleMap::compose: modules do not match");
  ModuleMap out(other.source_, target_, degree_ + other.degree_);
  for (const auto& [d, b] : other.blocks_) {
    auto it = blocks_.find(d + other.degree_);
    if (it == blocks_.end()) continue;
    Matrix p = it->second * b;
    if (!p.is_zero()) out.blocks_[d] = std::move(p);
  }
  return out;
}

ModuleMap& ModuleMap::operator+=(const ModuleMap& o) {
  if (o.source_ != source_ || o.target_ != target_ || o.degree_ != degree_)
    throw IncompatibleError("ModuleMap: adding maps between different modules");
  for (const auto& [d, b] : o.blocks_) {
    auto it = blocks_.find(d);
    if (it == blocks_.end())
      blocks_[d] = b;
    else
      it->second += b;
  }
  return *this;
}

ModuleMap& ModuleMap::operator-=(const ModuleMap& o) {
  ModuleMap neg = o;
  neg *= Rational(-1);
  return *this += neg;
}

ModuleMap& ModuleMap::operator*=(const Rational& c) {
  if (c.is_zero()) {
    blocks_.clear();
    return *this;
  }
  for (auto& [d, b] : blocks_) b *= c;
  return *this;
}

ModuleMap ModuleMap::retarget(ModulePtr source, ModulePtr target, int degree) const {
  const int ds = source->is_zero() || source_->is_zero() ? 0 : source->min_degree() - source_->min_degree();
  const int dt = target->is_zero() || target_->is_zero() ? 0 : target->min_degree() - target_->min_degree();
  if (degree != degree_ + dt - ds) throw IncompatibleError("ModuleMap::retarget: inconsistent degree");
  ModuleMap out(std::move(source), std::move(target), degree);
  for (const auto& [d, b] : blocks_) out.set_block(d + ds, b);
  return out;
}

std::vector<Rational> HomBasis::coordinates(const ModuleMap& f) const {
  auto flat = f.flatten();
  Matrix rhs(pivot_rows.size(), 1);
  for (std::size_t i = 0; i < pivot_rows.size(); ++i) rhs(i, 0) = flat[pivot_rows[i]];
  Matrix c = pivot_inverse * rhs;
  std::vector<Rational> out(basis.size());
  for (std::size_t i = 0; i < basis.size(); ++i) out[i] = c(i, 0);
  // The pivot rows only determine the coordinates; check the remaining entries.
  std::vector<Rational> check(flat.size());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (out[i].is_zero()) continue;
    auto b = basis[i].flatten();
    for (std::size_t r = 0; r < b.size(); ++r) check[r] += out[i] * b[r];
  }
  if (check != flat) throw InternalError("HomBasis::coordinates: map is not in the span of the basis");
  return out;
}

// ---------------------------------------------------------------------------
// Constructions

ModulePtr trivial_module(const AlgebraPtr& algebra) {
  std::vector<std::map<int, Matrix>> actions(static_cast<std::size_t>(algebra->nvars()));
  return std::make_shared<const GradedModule>(algebra, std::map<int, std::size_t>{{0, 1}}, actions);
}

namespace {

void check_reflection(const CoinvariantAlgebra& alg, int s) {
  const auto& sub = alg.subset();
  if (!std::binary_search(sub.begin(), sub.end(), s))
    throw PreconditionError("induce_frobenius: s" + std::to_string(s + 1) + " is not a reflection of the algebra");
}

}  // namespace

ModulePtr induce_frobenius(int s, const ModulePtr& m) {
  check_reflection(m->algebra(), s);
  const int n = m->nvars();
  std::map<int, std::size_t> dims;
  if (m->is_zero()) return std::make_shared<const GradedModule>(m->algebra_ptr(), dims, std::vector<std::map<int, Matrix>>(static_cast<std::size_t>(n)));
  const int lo = m->min_degree(), hi = m->max_degree() + 2;
  for (int d = lo; d <= hi; d += 2) dims[d] = m->dim(d) + m->dim(d - 2);

  // x_i = f_i + g_i alpha_s with f_i s-invariant and g_i = delta_is / 2.
  std::vector<std::map<int, Matrix>> actions(static_cast<std::size_t>(n));
  const Rational half(1, 2);
  for (int d = lo; d <= hi - 2; d += 2) {
    Matrix a_lo = m->alpha_action(s, d - 2);  // M_{d-2} -> M_d
    Matrix a_hi = m->alpha_action(s, d);      // M_d -> M_{d+2}
    for (int i = 0; i < n; ++i) {
      const Rational g = i == s ? half : Rational(0);
      Matrix f_hi = m->action(i, d) - a_hi * g;
      Matrix f_lo = m->action(i, d - 2) - a_lo * g;
      const std::size_t r0 = m->dim(d + 2), r1 = m->dim(d), c0 = m->dim(d), c1 = m->dim(d - 2);
      Matrix x(r0 + r1, c0 + c1);
      x.set_block(0, 0, f_hi);
      x.set_block(r0, c0, f_lo);
      if (!g.is_zero()) {
        x.set_block(0, c0, a_hi * a_lo * g);
        x.set_block(r0, 0, Matrix::identity(r1) * g);
      }
      actions[static_cast<std::size_t>(i)][d] = std::move(x);
    }
  }
  return std::make_shared<const GradedModule>(m->algebra_ptr(), dims, actions);
}

ModuleMap frobenius_unit(int s, const ModulePtr& m, const ModulePtr& theta) {
  ModuleMap u(m, theta, 2);
  for (const auto& [d, k] : m->graded_dims()) u.set_block(d, vstack(m->alpha_action(s, d), Matrix::identity(k)));
  return u;
}

ModuleMap theta_map(const ModuleMap& f, const ModulePtr& theta_source, const ModulePtr& theta_target) {
  ModuleMap out(theta_source, theta_target, f.degree());
  if (theta_source->is_zero()) return out;
  const auto& m = *f.source();
  const auto& nn = *f.target();
  for (int d = theta_source->min_degree(); d <= theta_source->max_degree(); d += 2) {
    const int e = d + f.degree();
    Matrix b(nn.dim(e) + nn.dim(e - 2), m.dim(d) + m.dim(d - 2));
    b.set_block(0, 0, f.block(d));
    b.set_block(nn.dim(e), m.dim(d), f.block(d - 2));
    out.set_block(d, std::move(b));
  }
  return out;
}

ModulePtr bott_samelson(const AlgebraPtr& algebra, const std::vector<int>& word) {
  ModulePtr m = trivial_module(algebra);
  for (auto it = word.rbegin(); it != word.rend(); ++it) m = induce_frobenius(*it, m);
  return m;
}

ModulePtr restrict_module(const AlgebraPtr& target_algebra, const ModulePtr& m) {
  const auto& src = m->algebra();
  if (src.root_system().cartan != target_algebra->root_system().cartan)
    throw IncompatibleError("restrict_module: algebras come from different root systems");
  const auto& big = target_algebra->subset();
  for (int s : src.subset())
    if (!std::binary_search(big.begin(), big.end(), s))
      throw IncompatibleError("restrict_module: the module's algebra is not a quotient of the target algebra");
  return std::make_shared<const GradedModule>(m->with_algebra(target_algebra));
}

ModulePtr shift_module(const ModulePtr& m, int n) { return std::make_shared<const GradedModule>(m->shifted(n)); }

ModulePtr direct_sum(const std::vector<ModulePtr>& parts) {
  PARIND_ASSERT(!parts.empty(), "direct_sum: no summands");
  const auto& alg = parts.front()->algebra_ptr();
  const auto n = static_cast<std::size_t>(alg->nvars());
  std::map<int, std::size_t> dims;
  for (const auto& p : parts) {
    if (p->algebra_ptr() != alg) throw IncompatibleError("direct_sum: summands over different algebras");
    for (const auto& [d, k] : p->graded_dims()) dims[d] += k;
  }
  std::vector<std::map<int, Matrix>> actions(n);
  if (dims.empty()) return std::make_shared<const GradedModule>(alg, dims, actions);
  const int lo = dims.begin()->first, hi = dims.rbegin()->first;
  for (int d = lo; d < hi; d += 2)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix x(dims.count(d + 2) ? dims[d + 2] : 0, dims.count(d) ? dims[d] : 0);
      std::size_t r = 0, c = 0;
      for (const auto& p : parts) {
        x.set_block(r, c, p->action(static_cast<int>(j), d));
        r += p->dim(d + 2);
        c += p->dim(d);
      }
      actions[j][d] = std::move(x);
    }
  return std::make_shared<const GradedModule>(alg, dims, actions);
}

ModulePtr submodule(const ModulePtr& m, const std::map<int, Matrix>& basis) {
  const auto n = static_cast<std::size_t>(m->nvars());
  std::map<int, std::size_t> dims;
  for (const auto& [d, b] : basis) {
    PARIND_ASSERT(b.rows() == m->dim(d), "submodule: basis of wrong height");
    dims[d] = b.cols();
  }
  std::vector<std::map<int, Matrix>> actions(n);
  for (const auto& [d, b] : basis) {
    auto up = basis.find(d + 2);
    if (b.cols() == 0 || up == basis.end() || up->second.cols() == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      Matrix x;
      if (!solve(up->second, m->action(static_cast<int>(j), d) * b, x))
        throw InternalError("submodule: subspace is not stable under the action");
      actions[j][d] = std::move(x);
    }
  }
  return std::make_shared<const GradedModule>(m->algebra_ptr(), dims, actions);
}

// ---------------------------------------------------------------------------
// Hom spaces

namespace {

// Linear forms in the parameters: rows are coordinates in N, columns are parameters.
using Forms = Matrix;

HomBasis make_hom_basis(std::vector<ModuleMap> basis) {
  HomBasis h;
  h.basis = std::move(basis);
  if (h.basis.empty()) return h;
  const auto len = h.basis.front().flatten().size();
  Matrix f(len, h.basis.size());
  for (std::size_t c = 0; c < h.basis.size(); ++c) {
    auto v = h.basis[c].flatten();
    for (std::size_t r = 0; r < len; ++r) f(r, c) = v[r];
  }
  h.pivot_rows = independent_columns(f.transpose());
  PARIND_ASSERT(h.pivot_rows.size() == h.basis.size(), "hom basis is not linearly independent");
  h.pivot_inverse = inverse(f.select_rows(h.pivot_rows));
  return h;
}

}  // namespace

HomBasis hom_space(const ModulePtr& m, const ModulePtr& n, int degree) {
  if (m->algebra().nvars() != n->algebra().nvars() || m->algebra().root_system().cartan != n->algebra().root_system().cartan)
    throw IncompatibleError("hom_space: modules over different polynomial rings");
  if (m->is_zero() || n->is_zero()) return {};
  const auto& pres = m->presentation();
  const auto nv = static_cast<std::size_t>(m->nvars());

  // Parameter offsets for the generators of M.
  std::size_t params = 0;
  std::map<int, std::size_t> offset;
  for (const auto& deg : pres.degrees) {
    offset[deg.d] = params;
    params += deg.generators * n->dim(deg.d + degree);
  }
  if (params == 0) return {};

  std::map<int, std::vector<Forms>> phi;  // phi[d][k]: image of e_k in M_d
  Matrix constraints(0, params);
  for (const auto& deg : pres.degrees) {
    const int d = deg.d;
    const std::size_t rows = n->dim(d + degree);
    const std::size_t prev = m->dim(d - 2);
    const auto* phi_prev = prev > 0 ? &phi.at(d - 2) : nullptr;

    // Images of the products omega_j e_i.
    std::vector<Forms> prod(nv * prev);
    for (std::size_t j = 0; j < nv && prev > 0; ++j) {
      Matrix x = n->action(static_cast<int>(j), d - 2 + degree);
      for (std::size_t i = 0; i < prev; ++i) prod[j * prev + i] = x * (*phi_prev)[i];
    }

    // Images of the chosen basis of M_d.
    std::vector<Forms> psi;
    for (auto c : deg.spanning) psi.push_back(prod[c]);
    for (std::size_t t = 0; t < deg.generators; ++t) {
      Forms g(rows, params);
      for (std::size_t r = 0; r < rows; ++r) g(r, offset[d] + t * rows + r) = 1;
      psi.push_back(std::move(g));
    }

    // Dependent products give relations.
    std::vector<bool> is_spanning(nv * prev, false);
    for (auto c : deg.spanning) is_spanning[c] = true;
    std::vector<Matrix> new_rows;
    if (rows > 0)
      for (std::size_t c = 0; c < nv * prev; ++c) {
        if (is_spanning[c]) continue;
        Forms rel = prod[c];
        for (std::size_t q = 0; q < psi.size(); ++q)
          if (!deg.span_coords(q, c).is_zero()) rel -= psi[q] * deg.span_coords(q, c);
        if (!rel.is_zero()) new_rows.push_back(std::move(rel));
      }
    if (!new_rows.empty()) {
      new_rows.insert(new_rows.begin(), constraints);
      Matrix all = vstack(new_rows, params);
      auto piv = rref(all);
      constraints = all.block(0, 0, piv.size(), params);
    }

    if (deg.dim > 0) {
      std::vector<Forms> cur(deg.dim, Forms(rows, params));
      for (std::size_t k = 0; k < deg.dim; ++k)
        for (std::size_t q = 0; q < psi.size(); ++q)
          if (!deg.basis_inverse(q, k).is_zero()) cur[k] += psi[q] * deg.basis_inverse(q, k);
      phi[d] = std::move(cur);
    }
  }

  Matrix kernel = nullspace(constraints);
  std::vector<ModuleMap> basis;
  for (std::size_t b = 0; b < kernel.cols(); ++b) {
    Matrix u = kernel.col(b);
    ModuleMap f(m, n, degree);
    for (const auto& [d, forms] : phi) {
      const std::size_t rows = n->dim(d + degree);
      if (rows == 0) continue;
      Matrix blk(rows, forms.size());
      for (std::size_t k = 0; k < forms.size(); ++k) blk.set_block(0, k, forms[k] * u);
      f.set_block(d, std::move(blk));
    }
    basis.push_back(std::move(f));
  }
  return make_hom_basis(std::move(basis));
}

std::size_t semisimple_end_dim(const ModulePtr& m) {
  auto e = hom_space(m, m, 0);
  const std::size_t k = e.dim();
  Matrix gram(k, k);
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t b = a; b < k; ++b) {
      Rational t;
      for (const auto& [d, blk] : e.basis[a].blocks()) t += trace(blk * e.basis[b].block(d));
      gram(a, b) = t;
      gram(b, a) = t;
    }
  return rank(gram);
}

// ---------------------------------------------------------------------------
// Krull-Schmidt splitting

namespace {

Rational rationalize(double x, long max_den) {
  // Continued fraction convergents.
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    long ai = static_cast<long>(a);
    long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (std::fabs(frac) < 1e-12 || std::fabs(static_cast<double>(h1) / static_cast<double>(k1) - x) < 1e-12) break;
    r = 1.0 / frac;
  }
  return Rational(h1, k1);
}

// Rational eigenvalues of the degree blocks of a degree 0 endomorphism.
std::vector<Rational> rational_eigenvalues(const ModuleMap& phi) {
  std::vector<Rational> out;
  for (const auto& [d, b] : phi.blocks()) {
    const auto k = b.rows();
    Eigen::MatrixXd m(k, k);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < k; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = b(r, c).to_double();
    Eigen::EigenSolver<Eigen::MatrixXd> es(m, false);
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
      auto ev = es.eigenvalues()[i];
      if (std::fabs(ev.imag()) > 1e-6) continue;
      Rational lam = rationalize(ev.real(), 100000);
      if (std::find(out.begin(), out.end(), lam) != out.end()) continue;
      if (rank(b - Matrix::identity(k) * lam) < k) out.push_back(lam);
    }
  }
  return out;
}

// Fitting decomposition M = ker (phi - lam)^N + im (phi - lam)^N, when both
// parts are nonzero.
std::optional<std::pair<Piece, Piece>> fitting_split(const ModulePtr& m, const ModuleMap& phi, const Rational& lam) {
  std::map<int, Matrix> ker, img;
  std::size_t nk = 0, ni = 0;
  for (const auto& [d, k] : m->graded_dims()) {
    Matrix b = phi.block(d) - Matrix::identity(k) * lam;
    Matrix p = Matrix::identity(k);
    for (std::size_t i = 0; i < k; ++i) p = p * b;
    ker[d] = nullspace(p);
    img[d] = p.select_cols(independent_columns(p));
    nk += ker[d].cols();
    ni += img[d].cols();
  }
  if (nk == 0 || ni == 0) return std::nullopt;
  auto km = submodule(m, ker);
  auto im = submodule(m, img);
  Piece a{km, ModuleMap(km, m, 0), ModuleMap(m, km, 0)};
  Piece b{im, ModuleMap(im, m, 0), ModuleMap(m, im, 0)};
  for (const auto& [d, k] : m->graded_dims()) {
    Matrix q = hstack(ker[d], img[d]);
    Matrix qi = inverse(q);
    const auto a_dim = ker[d].cols();
    a.inclusion.set_block(d, ker[d]);
    b.inclusion.set_block(d, img[d]);
    a.projection.set_block(d, qi.block(0, 0, a_dim, k));
    b.projection.set_block(d, qi.block(a_dim, 0, k - a_dim, k));
  }
  return std::make_pair(std::move(a), std::move(b));
}

std::optional<std::pair<Piece, Piece>> try_split(const ModulePtr& m, const HomBasis& end, std::mt19937_64& rng) {
  std::vector<ModuleMap> trials;
  std::vector<std::size_t> order(end.dim());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  for (auto i : order) trials.push_back(end.basis[i]);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 24; ++t) {
    ModuleMap phi(m, m, 0);
    for (const auto& b : end.basis) phi += b * Rational(coef(rng));
    trials.push_back(std::move(phi));
  }
  for (const auto& phi : trials)
    for (const auto& lam : rational_eigenvalues(phi))
      if (auto s = fitting_split(m, phi, lam)) return s;
  return std::nullopt;
}

}  // namespace

std::vector<Piece> split_indecomposables(const ModulePtr& m, std::mt19937_64& rng) {
  std::vector<Piece> done;
  if (m->is_zero()) return done;
  std::vector<Piece> todo{Piece{m, ModuleMap::identity(m), ModuleMap::identity(m)}};
  while (!todo.empty()) {
    Piece p = std::move(todo.back());
    todo.pop_back();
    auto end = hom_space(p.module, p.module, 0);
    if (end.dim() > 1) {
      if (auto s = try_split(p.module, end, rng)) {
        for (auto* part : {&s->first, &s->second})
          todo.push_back(Piece{part->module, p.inclusion.compose(part->inclusion), part->projection.compose(p.projection)});
        continue;
      }
      if (semisimple_end_dim(p.module) != 1) {
        std::ostringstream os;
        os << "split_indecomposables: no splitting element found for a module of graded dimension "
           << p.module->graded_dimension().to_string() << " with dim End^0 = " << end.dim();
        throw ClassificationError(os.str());
      }
    }
    done.push_back(std::move(p));
  }
  return done;
}

std::optional<ModuleMap> is_isomorphic(const ModulePtr& m, const ModulePtr& n, std::mt19937_64& rng, int attempts) {
  if (m->graded_dims() != n->graded_dims()) return std::nullopt;
  if (m->is_zero()) return ModuleMap(m, n, 0);
  auto h = hom_space(m, n, 0);
  if (h.dim() == 0) return std::nullopt;
  for (const auto& b : h.basis)
    if (b.is_isomorphism()) return b;
  std::uniform_int_distribution<int> coef(-5, 5);
  for (int t = 0; t < attempts; ++t) {
    ModuleMap f(m, n, 0);
    for (const auto& b : h.basis) f += b * Rational(coef(rng));
    if (f.is_isomorphism()) return f;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Catalog

namespace {

bool fits(const ModulePtr& small, int shift, const ModulePtr& big) {
  for (const auto& [d, k] : small->graded_dims())
    if (big->dim(d - shift) < k) return false;
  return true;
}

std::string summand_name(const WeylGroup& g, int y, int shift) {
  std::string s = "D[" + word_to_string(g.word(y)) + "]";
  if (shift != 0) s += "<" + std::to_string(shift) + ">";
  return s;
}

}  // namespace

Catalog::Catalog(AlgebraPtr algebra, const WeylGroup& group)
    : algebra_(std::move(algebra)), group_(&group), datum_(minimal_coset_reps(group, algebra_->subset())) {
  if (algebra_->root_system().cartan != group.root_system().cartan)
    throw IncompatibleError("Catalog: algebra and group come from different root systems");
  modules_.resize(group.order());
  provenance_.resize(group.order());
  kl_ = std::make_shared<const KLBasis>(group);
  for (const auto& y : datum_.elements_WI) {
    const int yi = y.index();
    if (y.is_identity()) {
      modules_[0] = trivial_module(algebra_);
      provenance_[0] = "trivial";
      continue;
    }
    const int s = group.word(yi).back();
    const int prev = group.mul_right(yi, s);
    auto t = induce_frobenius(s, modules_[static_cast<std::size_t>(prev)]);
    auto peeled = peel(t, y.length() - 1);
    if (peeled.remainder->is_zero())
      throw ClassificationError("Catalog: no new summand in theta_s" + std::to_string(s + 1) + " of " +
                                summand_name(group, prev, 0));
    auto r = peeled.remainder;
    std::ostringstream prov;
    prov << "theta_s" << s + 1 << "(" << summand_name(group, prev, 0) << ")";
    for (const auto& p : peeled.pieces) prov << " minus " << summand_name(group, p.y, p.shift);
    provenance_[static_cast<std::size_t>(yi)] = prov.str();

    if (r->min_degree() != 0 || r->dim(0) != 1)
      throw ClassificationError("Catalog: new summand for " + y.to_string() + " does not start with a line in degree 0");
    if (hom_space(r, r, 0).dim() != 1)
      throw ClassificationError("Catalog: new summand for " + y.to_string() + " is decomposable");
    LaurentPoly expected = graded_rank(LaurentPoly::v(y.length()) * kl_->b(yi));
    if (r->graded_dimension() != expected)
      throw ClassificationError("Catalog: graded dimension of D[" + word_to_string(group.word(yi)) + "] is " +
                                r->graded_dimension().to_string() + ", expected " + expected.to_string());
    modules_[static_cast<std::size_t>(yi)] = r;
  }
}

const ModulePtr& Catalog::module(int y) const {
  if (y < 0 || static_cast<std::size_t>(y) >= modules_.size() || !modules_[static_cast<std::size_t>(y)])
    throw PreconditionError("Catalog::module: element is not in the parabolic subgroup");
  return modules_[static_cast<std::size_t>(y)];
}

const std::string& Catalog::provenance(int y) const {
  module(y);
  return provenance_[static_cast<std::size_t>(y)];
}

Catalog::Peeled Catalog::peel(const ModulePtr& m, int max_length) const {
  Peeled out;
  out.remainder = m;
  out.remainder_inclusion = ModuleMap::identity(m);
  out.remainder_projection = ModuleMap::identity(m);
  std::vector<int> candidates;
  for (auto it = datum_.elements_WI.rbegin(); it != datum_.elements_WI.rend(); ++it)
    if (it->length() <= max_length && modules_[static_cast<std::size_t>(it->index())]) candidates.push_back(it->index());

  for (int z : candidates) {
    const auto& dz = modules_[static_cast<std::size_t>(z)];
    if (out.remainder->is_zero()) break;
    // D_z<sh> has its lowest piece in degree -sh.
    for (int low = out.remainder->min_degree(); !out.remainder->is_zero() && low <= out.remainder->max_degree(); low += 2) {
      const int sh = -low;
      const auto& r = out.remainder;
      if (!fits(dz, sh, r)) continue;
      auto a = hom_space(dz, r, -sh);
      if (a.dim() == 0) continue;
      auto b = hom_space(r, dz, sh);
      if (b.dim() == 0) continue;
      Matrix pairing(b.dim(), a.dim());
      for (std::size_t i = 0; i < b.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) pairing(i, j) = b.basis[i].compose(a.basis[j]).block(0)(0, 0);
      auto cols = independent_columns(pairing);
      if (cols.empty()) continue;
      auto rows = independent_columns(pairing.select_cols(cols).transpose());
      Matrix qinv = inverse(pairing.select_rows(rows).select_cols(cols));
      const std::size_t mult = cols.size();
      std::vector<ModuleMap> inc, proj;
      for (std::size_t i = 0; i < mult; ++i) {
        inc.push_back(a.basis[cols[i]]);
        ModuleMap p(r, dz, sh);
        for (std::size_t c = 0; c < mult; ++c) p += b.basis[rows[c]] * qinv(i, c);
        proj.push_back(std::move(p));
      }
      // Complement: common kernel of the projections.
      std::map<int, Matrix> ker;
      for (const auto& [d, k] : r->graded_dims()) {
        std::vector<Matrix> parts;
        for (const auto& p : proj) parts.push_back(p.block(d));
        ker[d] = nullspace(vstack(parts, k));
      }
      auto rest = submodule(r, ker);
      ModuleMap rest_inc(rest, r, 0), rest_proj(r, rest, 0);
      for (const auto& [d, k] : r->graded_dims()) {
        Matrix e = Matrix::identity(k);
        for (std::size_t i = 0; i < mult; ++i) e -= inc[i].block(d + sh) * proj[i].block(d);
        rest_inc.set_block(d, ker[d]);
        Matrix x;
        if (!solve(ker[d], e, x)) throw InternalError("Catalog::peel: complement projection failed");
        rest_proj.set_block(d, std::move(x));
      }
      for (std::size_t i = 0; i < mult; ++i)
        out.pieces.push_back(CatalogPiece{z, sh, out.remainder_inclusion.compose(inc[i]),
                                          proj[i].compose(out.remainder_projection)});
      out.remainder_inclusion = out.remainder_inclusion.compose(rest_inc);
      out.remainder_projection = rest_proj.compose(out.remainder_projection);
      out.remainder = rest;
    }
  }
  return out;
}

std::vector<CatalogPiece> Catalog::decompose(const ModulePtr& m) const {
  if (m->algebra_ptr() != algebra_ && m->algebra().root_system().cartan != algebra_->root_system().cartan)
    throw IncompatibleError("Catalog::decompose: module over a different algebra");
  int max_len = 0;
  for (const auto& y : datum_.elements_WI) max_len = std::max(max_len, y.length());
  auto peeled = peel(m, max_len);
  if (!peeled.remainder->is_zero())
    throw ClassificationError("Catalog::decompose: remainder of graded dimension " +
                              peeled.remainder->graded_dimension().to_string() + " is not a sum of catalog modules");
  return peeled.pieces;
}

std::optional<std::pair<int, int>> Catalog::identify(const ModulePtr& m, std::mt19937_64& rng) const {
  if (m->is_zero()) return std::nullopt;
  const int sh = -m->min_degree();
  for (const auto& y : datum_.elements_WI) {
    const auto& dy = modules_[static_cast<std::size_t>(y.index())];
    auto shifted = shift_module(dy, sh);
    if (shifted->graded_dims() != m->graded_dims()) continue;
    auto mm = std::make_shared<const GradedModule>(m->with_algebra(algebra_));
    if (is_isomorphic(mm, shifted, rng)) return std::make_pair(y.index(), sh);
  }
  return std::nullopt;
}

const ThetaData& Catalog::theta(int s, int y) const {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = theta_cache_.find({s, y});
    if (it != theta_cache_.end()) return *it->second;
  }
  const auto& dy = module(y);
  auto data = std::make_shared<ThetaData>();
  data->theta = induce_frobenius(s, dy);
  data->unit = frobenius_unit(s, dy, data->theta);
  data->pieces = decompose(data->theta);
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = theta_cache_.emplace(std::make_pair(s, y), std::move(data));
  return *it->second;
}

const HomBasis& Catalog::hom(int y, int z, int degree) const {
  const auto key = std::make_tuple(y, z, degree);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = hom_cache_.find(key);
    if (it != hom_cache_.end()) return *it->second;
  }
  auto h = std::make_shared<HomBasis>(hom_space(module(y), module(z), degree));
  std::lock_guard<std::mutex> lock(mutex_);
  auto [it, inserted] = hom_cache_.emplace(key, std::move(h));
  return *it->second;
}

std::shared_ptr<const Catalog> build_catalog(const AlgebraPtr& algebra, const WeylGroup& group) {
  return std::make_shared<const Catalog>(algebra, group);
}

}  // namespace parind
