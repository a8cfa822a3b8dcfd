#include "parind/coinvariants.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

namespace {

std::map<Exponent, std::size_t> index_monomials(const std::vector<Exponent>& monos) {
  std::map<Exponent, std::size_t> idx;
  for (std::size_t i = 0; i < monos.size(); ++i) idx.emplace(monos[i], i);
  return idx;
}

std::vector<Rational> to_vector(const Polynomial& f, const std::map<Exponent, std::size_t>& idx) {
  std::vector<Rational> v(idx.size());
  for (const auto& [e, c] : f.terms()) {
    auto it = idx.find(e);
    PARIND_ASSERT(it != idx.end(), "polynomial is not homogeneous of the expected degree");
    v[it->second] = c;
  }
  return v;
}

// Nonzero rows of the RREF of `rows`.
Matrix row_basis(const std::vector<std::vector<Rational>>& rows, std::size_t cols, std::vector<std::size_t>* pivots) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
  auto piv = rref(m);
  if (pivots) *pivots = piv;
  return m.block(0, 0, piv.size(), cols);
}

}  // namespace

CoinvariantAlgebra::CoinvariantAlgebra(const WeylGroup& group, std::vector<int> subset) {
  auto datum = minimal_coset_reps(group, std::move(subset));
  data_.root_system = group.root_system();
  data_.subset = datum.subset;
  const int n = group.rank();

  std::vector<const std::vector<int>*> mats;
  for (const auto& g : datum.elements_WI) mats.push_back(&g.canonical_form());
  std::vector<std::vector<Polynomial>> var_images(mats.size());
  for (std::size_t g = 0; g < mats.size(); ++g)
    for (int j = 0; j < n; ++j) var_images[g].push_back(Polynomial::variable(n, j).act(*mats[g]));

  // g.m for every monomial of the previous degree, per group element.
  std::vector<std::map<Exponent, Polynomial>> prev_images(mats.size());
  for (auto& m : prev_images) m.emplace(Exponent(static_cast<std::size_t>(n), 0), Polynomial::constant(n, 1));

  Matrix prev_ideal(0, 1);  // J_{k-1} as RREF rows over S_{k-1}
  std::vector<Exponent> prev_monos{Exponent(static_cast<std::size_t>(n), 0)};
  std::size_t total = 0;
  for (int k = 0;; ++k) {
    auto monos = monomials_of_degree(n, k);
    auto idx = index_monomials(monos);
    std::vector<std::vector<Rational>> rows;

    // Ideal part generated from lower degrees.
    for (std::size_t r = 0; r < prev_ideal.rows(); ++r)
      for (int j = 0; j < n; ++j) {
        std::vector<Rational> row(monos.size());
        for (std::size_t c = 0; c < prev_monos.size(); ++c) {
          if (prev_ideal(r, c).is_zero()) continue;
          Exponent e = prev_monos[c];
          ++e[static_cast<std::size_t>(j)];
          row[idx.at(e)] = prev_ideal(r, c);
        }
        rows.push_back(std::move(row));
      }
    std::size_t lower_rank = 0;
    if (!rows.empty()) lower_rank = row_basis(rows, monos.size(), nullptr).rows();

    // Invariants of degree k via the Reynolds operator.
    if (k > 0) {
      std::vector<std::map<Exponent, Polynomial>> images(mats.size());
      for (std::size_t g = 0; g < mats.size(); ++g) {
        for (const auto& e : monos) {
          auto nz = std::find_if(e.begin(), e.end(), [](int x) { return x > 0; });
          auto j = static_cast<std::size_t>(nz - e.begin());
          Exponent rest = e;
          --rest[j];
          images[g].emplace(e, prev_images[g].at(rest) * var_images[g][j]);
        }
      }
      std::vector<std::vector<Rational>> reynolds;
      for (const auto& e : monos) {
        Polynomial avg(n);
        for (std::size_t g = 0; g < mats.size(); ++g) avg += images[g].at(e);
        reynolds.push_back(to_vector(avg, idx));
      }
      prev_images = std::move(images);
      Matrix inv = row_basis(reynolds, monos.size(), nullptr);
      for (std::size_t r = 0; r < inv.rows(); ++r) {
        std::vector<Rational> row(monos.size());
        for (std::size_t c = 0; c < monos.size(); ++c) row[c] = inv(r, c);
        rows.push_back(row);
        std::size_t now = row_basis(rows, monos.size(), nullptr).rows();
        if (now > lower_rank) {
          lower_rank = now;
          Polynomial gen(n);
          for (std::size_t c = 0; c < monos.size(); ++c) gen.add_term(monos[c], row[c]);
          data_.ideal_generators.push_back(std::move(gen));
        }
      }
    }

    std::vector<std::size_t> pivots;
    Matrix ideal = rows.empty() ? Matrix(0, monos.size()) : row_basis(rows, monos.size(), &pivots);
    std::vector<bool> is_pivot(monos.size(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Exponent> standard;
    std::vector<std::size_t> position(monos.size(), 0);
    for (std::size_t c = 0; c < monos.size(); ++c)
      if (!is_pivot[c]) {
        position[c] = standard.size();
        standard.push_back(monos[c]);
      }
    if (standard.empty()) break;
    Matrix nf(standard.size(), monos.size());
    for (std::size_t c = 0; c < monos.size(); ++c)
      if (!is_pivot[c]) nf(position[c], c) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r)
      for (std::size_t c = 0; c < monos.size(); ++c)
        if (!is_pivot[c] && !ideal(r, c).is_zero()) nf(position[c], pivots[r]) = -ideal(r, c);
    total += standard.size();
    data_.basis.push_back(std::move(standard));
    data_.normal_form.push_back(std::move(nf));
    prev_ideal = std::move(ideal);
    prev_monos = std::move(monos);
    PARIND_ASSERT(total <= datum.elements_WI.size(), "coinvariant algebra larger than |W_I|");
  }
  PARIND_ASSERT(total == datum.elements_WI.size(), "dim of coinvariant algebra differs from |W_I|");
}

CoinvariantAlgebra::CoinvariantAlgebra(Data data) : data_(std::move(data)) {
  if (data_.basis.size() != data_.normal_form.size()) throw ConfigError("coinvariant data: inconsistent degrees");
  for (std::size_t k = 0; k < data_.basis.size(); ++k) {
    if (data_.normal_form[k].rows() != data_.basis[k].size() ||
        data_.normal_form[k].cols() != monomials_of_degree(nvars(), static_cast<int>(k)).size())
      throw ConfigError("coinvariant data: normal form shape mismatch in degree " + std::to_string(k));
  }
}

std::size_t CoinvariantAlgebra::dim(int k) const {
  if (k < 0 || k > top_degree()) return 0;
  return data_.basis[static_cast<std::size_t>(k)].size();
}

std::size_t CoinvariantAlgebra::total_dim() const {
  std::size_t t = 0;
  for (const auto& b : data_.basis) t += b.size();
  return t;
}

const std::vector<Exponent>& CoinvariantAlgebra::basis(int k) const {
  static const std::vector<Exponent> kEmpty;
  if (k < 0 || k > top_degree()) return kEmpty;
  return data_.basis[static_cast<std::size_t>(k)];
}

std::vector<Rational> CoinvariantAlgebra::normal_form(const Polynomial& f) const {
  if (!f.is_homogeneous()) throw PreconditionError("normal_form: polynomial is not homogeneous");
  if (f.is_zero()) return {};
  return normal_form(f, f.degree());
}

std::vector<Rational> CoinvariantAlgebra::normal_form(const Polynomial& f, int k) const {
  if (k < 0 || k > top_degree()) return {};
  const auto monos = monomials_of_degree(nvars(), k);
  const auto& nf = data_.normal_form[static_cast<std::size_t>(k)];
  std::vector<Rational> out(nf.rows());
  std::map<Exponent, std::size_t> idx = index_monomials(monos);
  for (const auto& [e, coeff] : f.terms()) {
    auto it = idx.find(e);
    if (it == idx.end()) throw PreconditionError("normal_form: polynomial has a term of the wrong degree");
    const std::size_t c = it->second;
    for (std::size_t r = 0; r < nf.rows(); ++r)
      if (!nf(r, c).is_zero()) out[r] += nf(r, c) * coeff;
  }
  return out;
}

Polynomial CoinvariantAlgebra::lift(int k, const std::vector<Rational>& coords) const {
  const auto& b = basis(k);
  PARIND_ASSERT(coords.size() == b.size(), "lift: coordinate length mismatch");
  Polynomial p(nvars());
  for (std::size_t i = 0; i < b.size(); ++i) p.add_term(b[i], coords[i]);
  return p;
}

std::vector<Rational> CoinvariantAlgebra::multiply_basis(int k1, std::size_t i, int k2, std::size_t j) const {
  const auto& a = basis(k1)[i];
  const auto& b = basis(k2)[j];
  Exponent e(a.size());
  for (std::size_t t = 0; t < e.size(); ++t) e[t] = a[t] + b[t];
  return normal_form(Polynomial::monomial(e), k1 + k2);
}

Matrix CoinvariantAlgebra::multiplication_matrix(const Polynomial& f, int k) const {
  if (!f.is_homogeneous()) throw PreconditionError("multiplication_matrix: polynomial is not homogeneous");
  const int df = f.is_zero() ? 0 : f.degree();
  Matrix m(dim(k + df), dim(k));
  if (f.is_zero()) return m;
  for (std::size_t i = 0; i < dim(k); ++i) {
    auto col = normal_form(f * Polynomial::monomial(basis(k)[i]), k + df);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, i) = col[r];
  }
  return m;
}

Matrix CoinvariantAlgebra::variable_action(int j, int k) const {
  if (j < 0 || j >= nvars()) throw PreconditionError("variable index out of range");
  return multiplication_matrix(Polynomial::variable(nvars(), j), k);
}

void CoinvariantAlgebra::check_generator(int s) const {
  if (!std::binary_search(data_.subset.begin(), data_.subset.end(), s))
    throw PreconditionError("reflection s" + std::to_string(s + 1) + " is not in W_I");
}

Matrix CoinvariantAlgebra::reflection_action(int s, int k) const {
  check_generator(s);
  Matrix m(dim(k), dim(k));
  for (std::size_t i = 0; i < dim(k); ++i) {
    auto col = normal_form(reflect(root_system(), s, Polynomial::monomial(basis(k)[i])), k);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, i) = col[r];
  }
  return m;
}

Matrix CoinvariantAlgebra::demazure_matrix(int s, int k) const {
  check_generator(s);
  Matrix m(dim(k - 1), dim(k));
  for (std::size_t i = 0; i < dim(k); ++i) {
    auto col = normal_form(demazure(root_system(), s, Polynomial::monomial(basis(k)[i])), k - 1);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, i) = col[r];
  }
  return m;
}

std::pair<std::vector<Rational>, std::vector<Rational>> CoinvariantAlgebra::frobenius_decompose(
    int s, int k, const std::vector<Rational>& c) const {
  PARIND_ASSERT(c.size() == dim(k), "frobenius_decompose: coordinate length mismatch");
  Matrix col = Matrix::column(c);
  Matrix f = (col + reflection_action(s, k) * col) * Rational(1, 2);
  Matrix g = (demazure_matrix(s, k) * col) * Rational(1, 2);
  return {f.col_vector(0), g.col_vector(0)};
}

std::uint64_t coinvariant_key(const RootSystem& rs, const std::vector<int>& subset) {
  std::ostringstream os;
  os << "type=" << to_char(rs.type) << ";rank=" << rs.rank << ";cartan=";
  for (const auto& row : rs.cartan)
    for (int x : row) os << x << ",";
  os << ";subset=";
  for (int s : subset) os << s + 1 << ",";
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : os.str()) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t CoinvariantAlgebra::content_hash() const { return coinvariant_key(data_.root_system, data_.subset); }

Matrix restriction_surjection(const CoinvariantAlgebra& source, const CoinvariantAlgebra& target, int k) {
  if (source.root_system().cartan != target.root_system().cartan)
    throw IncompatibleError("restriction_surjection: algebras of different root systems");
  if (!std::includes(source.subset().begin(), source.subset().end(), target.subset().begin(), target.subset().end()))
    throw IncompatibleError("restriction_surjection: target subset is not contained in the source subset");
  Matrix m(target.dim(k), source.dim(k));
  for (std::size_t i = 0; i < source.dim(k); ++i) {
    auto col = target.normal_form(Polynomial::monomial(source.basis(k)[i]), k);
    for (std::size_t r = 0; r < col.size(); ++r) m(r, i) = col[r];
  }
  return m;
}

}  // namespace parind
