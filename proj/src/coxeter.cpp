#include "parind/coxeter.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <functional>
#include <set>
#include <sstream>

#include "parind/errors.hpp"

namespace parind {

char to_char(CartanType t) {
  switch (t) {
    case CartanType::A: return 'A';
    case CartanType::B: return 'B';
    case CartanType::C: return 'C';
    case CartanType::D: return 'D';
    case CartanType::G: return 'G';
    case CartanType::F: return 'F';
  }
  return '?';
}

CartanType parse_cartan_type(const std::string& s) {
  if (s.size() != 1) throw ConfigError("unknown Cartan type '" + s + "'");
  switch (std::toupper(static_cast<unsigned char>(s[0]))) {
    case 'A': return CartanType::A;
    case 'B': return CartanType::B;
    case 'C': return CartanType::C;
    case 'D': return CartanType::D;
    case 'G': return CartanType::G;
    case 'F': return CartanType::F;
    default: break;
  }
  throw ConfigError("unsupported Cartan type '" + s + "'");
}

int RootSystem::coxeter_m(int i, int j) const {
  if (i == j) return 1;
  int p = cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
          cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
  switch (p) {
    case 0: return 2;
    case 1: return 3;
    case 2: return 4;
    case 3: return 6;
    default: break;
  }
  throw ConfigError("Cartan matrix is not of finite type");
}

std::vector<int> RootSystem::simple_root_weights(int i) const { return cartan[static_cast<std::size_t>(i)]; }

namespace {

std::vector<std::vector<int>> cartan_matrix(CartanType type, int n) {
  std::vector<std::vector<int>> k(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), 0));
  auto link = [&](int i, int j, int kij, int kji) {
    k[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = kij;
    k[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = kji;
  };
  for (int i = 0; i < n; ++i) k[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 2;
  switch (type) {
    case CartanType::A:
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1, -1);
      break;
    case CartanType::B:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -2, -1);
      break;
    case CartanType::C:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 2, n - 1, -1, -2);
      break;
    case CartanType::D:
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1, -1);
      link(n - 3, n - 1, -1, -1);
      break;
    case CartanType::G:
      link(0, 1, -1, -3);
      break;
    case CartanType::F:
      link(0, 1, -1, -1);
      link(1, 2, -2, -1);
      link(2, 3, -1, -1);
      break;
  }
  return k;
}

void check_supported(CartanType type, int n) {
  bool ok = false;
  switch (type) {
    case CartanType::A: ok = n >= 1 && n <= 5; break;
    case CartanType::B:
    case CartanType::C: ok = n >= 2 && n <= 4; break;
    case CartanType::D: ok = n == 4; break;
    case CartanType::G: ok = n == 2; break;
    case CartanType::F: ok = n == 4; break;
  }
  if (!ok)
    throw ConfigError(std::string("unsupported root system ") + to_char(type) + std::to_string(n) +
                      " (supported: A1-A5, B2-B4, C2-C4, D4, G2, F4)");
}

}  // namespace

RootSystem root_system_from_cartan(const std::vector<std::vector<int>>& cartan, CartanType parent_type,
                                   std::string label) {
  RootSystem rs;
  rs.type = parent_type;
  rs.rank = static_cast<int>(cartan.size());
  rs.label = std::move(label);
  rs.cartan = cartan;
  const auto n = static_cast<std::size_t>(rs.rank);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Rational> row;
    for (std::size_t j = 0; j < n; ++j) row.emplace_back(cartan[i][j]);
    rs.simple_roots.push_back(std::move(row));
  }
  for (std::size_t j = 0; j < n; ++j) {
    Matrix s = Matrix::identity(n);
    for (std::size_t kk = 0; kk < n; ++kk) s(kk, j) -= Rational(cartan[j][kk]);
    rs.reflections.push_back(std::move(s));
  }
  for (int i = 0; i < rs.rank; ++i)
    for (int j = 0; j < rs.rank; ++j) (void)rs.coxeter_m(i, j);

  // Closure of the simple roots under reflections, in root coordinates.
  std::set<std::vector<int>> roots;
  std::deque<std::vector<int>> queue;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    roots.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j) {
      int pairing = 0;
      for (std::size_t i = 0; i < n; ++i) pairing += beta[i] * cartan[i][j];
      auto image = beta;
      image[j] -= pairing;
      if (roots.insert(image).second) {
        if (roots.size() > 1000) throw ConfigError("Cartan matrix is not of finite type");
        queue.push_back(image);
      }
    }
  }
  for (const auto& r : roots) {
    bool positive = std::all_of(r.begin(), r.end(), [](int c) { return c >= 0; });
    if (positive) rs.positive_roots.push_back(r);
  }
  std::sort(rs.positive_roots.begin(), rs.positive_roots.end(), [](const auto& a, const auto& b) {
    int ha = 0, hb = 0;
    for (int c : a) ha += c;
    for (int c : b) hb += c;
    return ha != hb ? ha < hb : a > b;
  });
  return rs;
}

RootSystem build_root_system(CartanType type, int rank) {
  check_supported(type, rank);
  return root_system_from_cartan(cartan_matrix(type, rank), type, std::string(1, to_char(type)) + std::to_string(rank));
}

RootSystem parabolic_subsystem(const RootSystem& rs, const std::vector<int>& subset) {
  std::vector<std::vector<int>> k;
  std::string label = rs.label + "|";
  for (std::size_t a = 0; a < subset.size(); ++a) {
    int i = subset[a];
    if (i < 0 || i >= rs.rank) throw ConfigError("parabolic subset index out of range");
    std::vector<int> row;
    for (int j : subset) row.push_back(rs.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    k.push_back(std::move(row));
    label += (a ? "," : "") + std::to_string(i + 1);
  }
  return root_system_from_cartan(k, rs.type, label);
}

// ---------------------------------------------------------------------------
// WeylElement

int WeylElement::length() const { return group_->length(index_); }
const std::vector<int>& WeylElement::reduced_word() const { return group_->word(index_); }
const std::vector<int>& WeylElement::canonical_form() const { return group_->canonical(index_); }

WeylElement WeylElement::operator*(const WeylElement& other) const {
  if (group_ != other.group_) throw IncompatibleError("multiplying elements of different Weyl groups");
  return WeylElement(group_, group_->multiply(index_, other.index_));
}

WeylElement WeylElement::inverse() const { return WeylElement(group_, group_->inverse(index_)); }

bool WeylElement::bruhat_leq(const WeylElement& other) const {
  if (group_ != other.group_) throw IncompatibleError("comparing elements of different Weyl groups");
  return group_->bruhat_leq(index_, other.index_);
}

bool operator<(const WeylElement& a, const WeylElement& b) {
  if (a.group_ != b.group_) throw IncompatibleError("comparing elements of different Weyl groups");
  // Indices are assigned in (length, reduced word) order.
  return a.index_ < b.index_;
}

std::string WeylElement::to_string() const { return word_to_string(reduced_word()); }

std::string word_to_string(const std::vector<int>& word) {
  if (word.empty()) return "e";
  std::ostringstream os;
  for (std::size_t i = 0; i < word.size(); ++i) os << (i ? " " : "") << "s" << word[i] + 1;
  return os.str();
}

// ---------------------------------------------------------------------------
// WeylGroup

namespace {

using IntMat = std::vector<int>;  // n x n row-major

IntMat int_identity(int n) {
  IntMat m(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + i)] = 1;
  return m;
}

IntMat int_mul(const IntMat& a, const IntMat& b, int n) {
  IntMat p(static_cast<std::size_t>(n * n), 0);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      int aik = a[static_cast<std::size_t>(i * n + k)];
      if (aik == 0) continue;
      for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(i * n + j)] += aik * b[static_cast<std::size_t>(k * n + j)];
    }
  return p;
}

std::vector<int> int_apply(const IntMat& a, const std::vector<int>& v, int n) {
  std::vector<int> r(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) r[static_cast<std::size_t>(i)] += a[static_cast<std::size_t>(i * n + j)] * v[static_cast<std::size_t>(j)];
  return r;
}

}  // namespace

WeylGroup::WeylGroup(RootSystem rs) : rs_(std::move(rs)) {
  const int n = rs_.rank;
  std::vector<IntMat> gens;
  for (int j = 0; j < n; ++j) {
    IntMat s = int_identity(n);
    for (int k = 0; k < n; ++k)
      s[static_cast<std::size_t>(k * n + j)] -= rs_.cartan[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
    gens.push_back(std::move(s));
  }

  // Breadth-first enumeration; BFS depth is the length.
  std::vector<IntMat> mats{int_identity(n)};
  std::vector<int> depth{0};
  std::map<IntMat, int> seen{{mats[0], 0}};
  for (std::size_t head = 0; head < mats.size(); ++head) {
    for (int s = 0; s < n; ++s) {
      IntMat m = int_mul(mats[head], gens[static_cast<std::size_t>(s)], n);
      if (seen.emplace(m, static_cast<int>(mats.size())).second) {
        if (mats.size() > 100000) throw ConfigError("Weyl group is not finite");
        mats.push_back(std::move(m));
        depth.push_back(depth[head] + 1);
      }
    }
  }
  const std::size_t order = mats.size();
  std::vector<std::vector<int>> left(order, std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t w = 0; w < order; ++w)
    for (int s = 0; s < n; ++s) left[w][static_cast<std::size_t>(s)] = seen.at(int_mul(gens[static_cast<std::size_t>(s)], mats[w], n));

  // Lexicographically smallest reduced words via smallest left descents.
  std::vector<std::size_t> by_depth(order);
  for (std::size_t i = 0; i < order; ++i) by_depth[i] = i;
  std::stable_sort(by_depth.begin(), by_depth.end(), [&](std::size_t a, std::size_t b) { return depth[a] < depth[b]; });
  std::vector<std::vector<int>> words(order);
  for (std::size_t w : by_depth) {
    if (depth[w] == 0) continue;
    for (int s = 0; s < n; ++s) {
      auto sw = static_cast<std::size_t>(left[w][static_cast<std::size_t>(s)]);
      if (depth[sw] < depth[w]) {
        words[w].push_back(s);
        words[w].insert(words[w].end(), words[sw].begin(), words[sw].end());
        break;
      }
    }
  }

  // Renumber in (length, word) order.
  std::vector<std::size_t> perm(order);
  for (std::size_t i = 0; i < order; ++i) perm[i] = i;
  std::sort(perm.begin(), perm.end(), [&](std::size_t a, std::size_t b) {
    return depth[a] != depth[b] ? depth[a] < depth[b] : words[a] < words[b];
  });
  std::vector<int> new_index(order);
  for (std::size_t i = 0; i < order; ++i) new_index[perm[i]] = static_cast<int>(i);

  canon_.resize(order);
  length_.resize(order);
  word_.resize(order);
  left_.assign(order, std::vector<int>(static_cast<std::size_t>(n)));
  right_.assign(order, std::vector<int>(static_cast<std::size_t>(n)));
  for (std::size_t i = 0; i < order; ++i) {
    std::size_t old = perm[i];
    canon_[i] = mats[old];
    length_[i] = depth[old];
    word_[i] = words[old];
    index_.emplace(canon_[i], static_cast<int>(i));
    for (int s = 0; s < n; ++s) {
      left_[i][static_cast<std::size_t>(s)] = new_index[static_cast<std::size_t>(left[old][static_cast<std::size_t>(s)])];
      right_[i][static_cast<std::size_t>(s)] =
          new_index[static_cast<std::size_t>(seen.at(int_mul(mats[old], gens[static_cast<std::size_t>(s)], n)))];
    }
  }
  longest_ = static_cast<int>(order) - 1;

  inverse_.resize(order);
  for (std::size_t i = 0; i < order; ++i) {
    int cur = 0;
    for (auto it = word_[i].rbegin(); it != word_[i].rend(); ++it) cur = right_[static_cast<std::size_t>(cur)][static_cast<std::size_t>(*it)];
    inverse_[i] = cur;
  }

  for (const auto& beta : rs_.positive_roots) {
    std::vector<int> weights(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        weights[static_cast<std::size_t>(j)] += beta[static_cast<std::size_t>(i)] * rs_.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    positive_root_weights_.push_back(std::move(weights));
  }
  positive_sorted_ = positive_root_weights_;
  std::sort(positive_sorted_.begin(), positive_sorted_.end());
  for (std::size_t i = 0; i < order; ++i)
    PARIND_ASSERT(inversion_count(static_cast<int>(i)) == length_[i], "BFS length disagrees with inversion count");
}

WeylElement WeylGroup::generator(int s) const {
  if (s < 0 || s >= rank()) throw PreconditionError("generator index out of range");
  return element(mul_right(0, s));
}

WeylElement WeylGroup::from_word(const std::vector<int>& word) const {
  int cur = 0;
  for (int s : word) {
    if (s < 0 || s >= rank()) throw PreconditionError("generator index " + std::to_string(s + 1) + " out of range");
    cur = mul_right(cur, s);
  }
  return element(cur);
}

std::optional<WeylElement> WeylGroup::find(const std::vector<int>& canonical) const {
  auto it = index_.find(canonical);
  if (it == index_.end()) return std::nullopt;
  return element(it->second);
}

std::vector<WeylElement> WeylGroup::elements() const {
  std::vector<WeylElement> out;
  out.reserve(order());
  for (std::size_t i = 0; i < order(); ++i) out.push_back(element(static_cast<int>(i)));
  return out;
}

int WeylGroup::multiply(int u, int w) const {
  int cur = u;
  for (int s : word(w)) cur = mul_right(cur, s);
  return cur;
}

int WeylGroup::inversion_count(int w) const {
  const int n = rank();
  const auto& m = canonical(w);
  int count = 0;
  for (const auto& beta : positive_root_weights_) {
    auto image = int_apply(m, beta, n);
    if (!std::binary_search(positive_sorted_.begin(), positive_sorted_.end(), image)) ++count;
  }
  return count;
}

bool WeylGroup::bruhat_leq(int u, int w) const {
  std::call_once(bruhat_once_, [this] {
    const std::size_t order = this->order();
    lower_.assign(order, std::vector<bool>(order, false));
    lower_[0][0] = true;
    for (std::size_t w = 1; w < order; ++w) {
      int s = word_[w].back();
      auto ws = static_cast<std::size_t>(mul_right(static_cast<int>(w), s));
      auto& low = lower_[w];
      for (std::size_t u = 0; u < order; ++u) {
        if (!lower_[ws][u]) continue;
        low[u] = true;
        low[static_cast<std::size_t>(mul_right(static_cast<int>(u), s))] = true;
      }
    }
  });
  return lower_[static_cast<std::size_t>(w)][static_cast<std::size_t>(u)];
}

Matrix WeylGroup::matrix(int w) const {
  const auto n = static_cast<std::size_t>(rank());
  Matrix m(n, n);
  const auto& c = canonical(w);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m(i, j) = c[i * n + j];
  return m;
}

// ---------------------------------------------------------------------------
// Parabolic data

bool ParabolicDatum::in_WI(const WeylElement& w) const {
  if (w.group() != group) throw IncompatibleError("element of a different Weyl group");
  return in_WI_mask[static_cast<std::size_t>(w.index())];
}

bool ParabolicDatum::is_min_rep(const WeylElement& w) const {
  if (w.group() != group) throw IncompatibleError("element of a different Weyl group");
  return min_rep_mask[static_cast<std::size_t>(w.index())];
}

bool ParabolicDatum::contains_generator(int s) const {
  return std::binary_search(subset.begin(), subset.end(), s);
}

ParabolicDatum minimal_coset_reps(const WeylGroup& group, std::vector<int> subset) {
  std::sort(subset.begin(), subset.end());
  subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
  for (int s : subset)
    if (s < 0 || s >= group.rank()) throw ConfigError("parabolic subset index " + std::to_string(s + 1) + " out of range");
  ParabolicDatum d;
  d.group = &group;
  d.subset = subset;
  d.in_WI_mask.assign(group.order(), false);
  d.min_rep_mask.assign(group.order(), false);
  for (std::size_t i = 0; i < group.order(); ++i) {
    const int w = static_cast<int>(i);
    const auto& word = group.word(w);
    bool inside = std::all_of(word.begin(), word.end(), [&](int s) { return d.contains_generator(s); });
    bool minimal = std::none_of(subset.begin(), subset.end(), [&](int s) { return group.has_left_descent(w, s); });
    d.in_WI_mask[i] = inside;
    d.min_rep_mask[i] = minimal;
    if (inside) d.elements_WI.push_back(group.element(w));
    if (minimal) d.min_reps_WI.push_back(group.element(w));
  }
  PARIND_ASSERT(d.elements_WI.size() * d.min_reps_WI.size() == group.order(), "|W_I| * |W^I| != |W|");
  return d;
}

std::optional<std::vector<int>> admissible_chain(const ParabolicDatum& datum, const WeylElement& w) {
  if (!datum.is_min_rep(w)) throw PreconditionError("admissible_chain: " + w.to_string() + " is not in W^I");
  const WeylGroup& g = *datum.group;
  const int target = w.index();
  const int total = g.length(target);
  std::vector<int> chain;
  std::function<bool(int)> dfs = [&](int p) -> bool {
    if (p == target) return true;
    for (int s = 0; s < g.rank(); ++s) {
      int ps = g.mul_right(p, s);
      if (g.length(ps) != g.length(p) + 1) continue;
      if (!datum.min_rep_mask[static_cast<std::size_t>(ps)]) continue;
      // ps must be a prefix of w: l((ps)^{-1} w) = l(w) - l(ps).
      if (g.length(g.multiply(g.inverse(ps), target)) != total - g.length(ps)) continue;
      chain.push_back(s);
      if (dfs(ps)) return true;
      chain.pop_back();
    }
    return false;
  };
  if (dfs(0)) return chain;
  return std::nullopt;
}

std::vector<std::vector<int>> all_reduced_words(const WeylElement& w) {
  const WeylGroup& g = *w.group();
  std::map<int, std::vector<std::vector<int>>> memo;
  std::function<const std::vector<std::vector<int>>&(int)> rec = [&](int x) -> const std::vector<std::vector<int>>& {
    auto it = memo.find(x);
    if (it != memo.end()) return it->second;
    std::vector<std::vector<int>> out;
    if (x == 0) {
      out.push_back({});
    } else {
      for (int s = 0; s < g.rank(); ++s) {
        if (!g.has_right_descent(x, s)) continue;
        for (auto word : rec(g.mul_right(x, s))) {
          word.push_back(s);
          out.push_back(std::move(word));
        }
      }
    }
    std::sort(out.begin(), out.end());
    return memo.emplace(x, std::move(out)).first->second;
  };
  return rec(w.index());
}

}  // namespace parind
