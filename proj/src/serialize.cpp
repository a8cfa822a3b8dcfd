#include "parind/serialize.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <thread>

#include "parind/errors.hpp"

namespace parind {

namespace fs = std::filesystem;

json word_to_json(const std::vector<int>& word) {
  json j = json::array();
  for (int s : word) j.push_back(s + 1);
  return j;
}

std::vector<int> word_from_json(const json& j) {
  std::vector<int> w;
  for (const auto& s : j) w.push_back(s.get<int>() - 1);
  return w;
}

json to_json(const Rational& r) { return r.to_string(); }

Rational rational_from_json(const json& j) {
  if (j.is_number_integer()) return Rational(j.get<long long>());
  return Rational::parse(j.get<std::string>());
}

json to_json(const LaurentPoly& p) {
  json j = json::array();
  for (const auto& [e, c] : p.terms()) j.push_back(json::array({e, to_json(c)}));
  return j;
}

LaurentPoly laurent_from_json(const json& j) {
  LaurentPoly p;
  for (const auto& t : j) p += LaurentPoly::monomial(rational_from_json(t.at(1)), t.at(0).get<int>());
  return p;
}

json to_json(const HeckeElement& h) {
  json terms = json::array();
  if (h.group())
    for (const auto& [w, p] : h.terms()) {
      json poly = json::object();
      for (const auto& [e, c] : p.terms()) poly[std::to_string(e)] = to_json(c);
      terms.push_back({{"word", word_to_json(h.group()->word(w))}, {"poly", poly}});
    }
  return {{"terms", terms}};
}

HeckeElement hecke_from_json(const WeylGroup& group, const json& j) {
  HeckeElement h(&group);
  for (const auto& t : j.at("terms")) {
    LaurentPoly p;
    for (const auto& [e, c] : t.at("poly").items()) p += LaurentPoly::monomial(rational_from_json(c), std::stoi(e));
    h.add(group.from_word(word_from_json(t.at("word"))).index(), p);
  }
  return h;
}

json to_json(const RootSystem& rs) {
  json roots = json::array();
  for (const auto& r : rs.simple_roots) {
    json row = json::array();
    for (const auto& c : r) row.push_back(to_json(c));
    roots.push_back(row);
  }
  return {{"type", std::string(1, to_char(rs.type))},
          {"rank", rs.rank},
          {"label", rs.label},
          {"cartan_matrix", rs.cartan},
          {"simple_roots", roots}};
}

json to_json(const Matrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(row);
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"entries", rows}};
}

Matrix matrix_from_json(const json& j) {
  Matrix m(j.at("rows").get<std::size_t>(), j.at("cols").get<std::size_t>());
  const auto& e = j.at("entries");
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = rational_from_json(e.at(r).at(c));
  return m;
}

namespace {

json polynomial_to_json(const Polynomial& p) {
  json terms = json::array();
  for (const auto& [e, c] : p.terms()) terms.push_back(json::array({e, to_json(c)}));
  return {{"nvars", p.nvars()}, {"terms", terms}};
}

Polynomial polynomial_from_json(const json& j) {
  Polynomial p(j.at("nvars").get<int>());
  for (const auto& t : j.at("terms")) p.add_term(t.at(0).get<Exponent>(), rational_from_json(t.at(1)));
  return p;
}

}  // namespace

json to_json(const CoinvariantAlgebra::Data& d) {
  json nf = json::array();
  for (const auto& m : d.normal_form) nf.push_back(to_json(m));
  json gens = json::array();
  for (const auto& g : d.ideal_generators) gens.push_back(polynomial_to_json(g));
  return {{"root_system", to_json(d.root_system)},
          {"subset", d.subset},
          {"basis", d.basis},
          {"normal_form", nf},
          {"ideal_generators", gens}};
}

CoinvariantAlgebra::Data coinvariant_data_from_json(const json& j) {
  CoinvariantAlgebra::Data d;
  const auto& rs = j.at("root_system");
  d.root_system = root_system_from_cartan(rs.at("cartan_matrix").get<std::vector<std::vector<int>>>(),
                                          parse_cartan_type(rs.at("type").get<std::string>()),
                                          rs.at("label").get<std::string>());
  d.subset = j.at("subset").get<std::vector<int>>();
  d.basis = j.at("basis").get<std::vector<std::vector<Exponent>>>();
  for (const auto& m : j.at("normal_form")) d.normal_form.push_back(matrix_from_json(m));
  for (const auto& g : j.at("ideal_generators")) d.ideal_generators.push_back(polynomial_from_json(g));
  return d;
}

json to_json(const Catalog& c) {
  json entries = json::array();
  for (const auto& y : c.elements()) {
    const auto& m = c.module(y);
    json gd = json::object();
    for (const auto& [d, n] : m->graded_dims()) gd[std::to_string(d)] = n;
    json actions = json::array();
    for (int j = 0; j < m->nvars(); ++j) {
      json per = json::object();
      for (int d = m->min_degree(); d < m->max_degree(); d += 2) per[std::to_string(d)] = to_json(m->action(j, d));
      actions.push_back(per);
    }
    entries.push_back({{"y", word_to_json(y.reduced_word())},
                       {"graded_dims", gd},
                       {"actions", actions},
                       {"provenance", c.provenance(y.index())}});
  }
  return {{"group", c.group().root_system().label}, {"subset", word_to_json(c.algebra().subset())}, {"modules", entries}};
}

json to_json(const ComplexOfModules& x) {
  const auto& g = x.catalog().group();
  json terms = json::object();
  json comps = json::array();
  std::map<int, std::pair<int, int>> local;  // id -> (degree, position)
  for (int n : x.degrees()) {
    json list = json::array();
    for (int id : x.ids(n)) {
      const auto& s = x.summand(id);
      local[id] = {n, static_cast<int>(list.size())};
      list.push_back({{"y", word_to_json(g.word(s.y))}, {"shift", s.shift}});
    }
    terms[std::to_string(n)] = list;
  }
  for (const auto& [id, pos] : local)
    for (const auto& [to, f] : x.out_components(id)) {
      json blocks = json::object();
      for (const auto& [d, b] : f->blocks()) blocks[std::to_string(d)] = to_json(b);
      comps.push_back({{"degree", pos.first},
                       {"from", pos.second},
                       {"to", local.at(to).second},
                       {"map_degree", f->degree()},
                       {"blocks", blocks}});
    }
  return {{"twist", x.twist()}, {"terms", terms}, {"differential", comps}, {"summary", x.summary()}};
}

ComplexOfModules complex_from_json(std::shared_ptr<const Catalog> catalog, const json& j) {
  ComplexOfModules x(catalog);
  x.set_twist(j.at("twist").get<int>());
  const auto& g = catalog->group();
  std::map<int, std::vector<int>> ids;
  for (const auto& [deg, list] : j.at("terms").items()) {
    const int n = std::stoi(deg);
    for (const auto& t : list) {
      const int y = g.from_word(word_from_json(t.at("y"))).index();
      if (!catalog->contains(y)) throw ConfigError("complex_from_json: element outside the catalog");
      ids[n].push_back(x.add(n, Summand{y, t.at("shift").get<int>()}));
    }
  }
  for (const auto& c : j.at("differential")) {
    const int n = c.at("degree").get<int>();
    const int from = ids.at(n).at(c.at("from").get<std::size_t>());
    const int to = ids.at(n + 1).at(c.at("to").get<std::size_t>());
    ModuleMap f(catalog->module(x.summand(from).y), catalog->module(x.summand(to).y), c.at("map_degree").get<int>());
    for (const auto& [d, b] : c.at("blocks").items()) f.set_block(std::stoi(d), matrix_from_json(b));
    x.set_component(from, to, std::move(f));
  }
  return x;
}

json to_json(const Report& r) {
  return {{"check", r.check},
          {"instance", r.instance},
          {"status", r.passed ? "pass" : "fail"},
          {"computed_class", r.computed},
          {"predicted_class", r.predicted},
          {"detail", r.detail},
          {"complex_summary", r.complex_summary},
          {"timing", r.seconds}};
}

Report report_from_json(const json& j) {
  Report r;
  r.check = j.at("check").get<std::string>();
  r.instance = j.at("instance").get<std::string>();
  r.passed = j.at("status").get<std::string>() == "pass";
  r.computed = j.value("computed_class", "");
  r.predicted = j.value("predicted_class", "");
  r.detail = j.value("detail", "");
  r.complex_summary = j.value("complex_summary", "");
  r.seconds = j.value("timing", 0.0);
  return r;
}
json to_json(const CalibrationResult& c) {
  json grid = json::array();
  for (const auto& g : c.grid)
    grid.push_back({{"shift", g.shift},
                    {"sign", g.sign},
                    {"unit_is_chain_map", g.unit_is_chain_map},
                    {"twist", g.twist ? json(*g.twist) : json(nullptr)}});
  json valid = json::array();
  for (const auto& v : c.valid) valid.push_back({{"shift", v.shift}, {"sign", v.sign}, {"twist", v.twist}});
  return {{"grid", grid}, {"valid", valid}, {"unique", c.unique()}};
}

std::string cache_file_name(const RootSystem& rs, const std::vector<int>& subset) {
  std::ostringstream os;
  os << rs.label << "-" << std::hex << std::setw(16) << std::setfill('0') << coinvariant_key(rs, subset) << ".json";
  return os.str();
}

AlgebraPtr load_or_build_algebra(const WeylGroup& group, const std::vector<int>& subset, const std::string& cache_dir) {
  if (cache_dir.empty()) return std::make_shared<const CoinvariantAlgebra>(group, subset);
  const fs::path path = fs::path(cache_dir) / cache_file_name(group.root_system(), subset);
  if (std::ifstream in(path); in) {
    try {
      json j = json::parse(in);
      auto data = coinvariant_data_from_json(j.at("algebra"));
      if (data.root_system.cartan == group.root_system().cartan && data.subset == subset) {
        auto a = std::make_shared<const CoinvariantAlgebra>(std::move(data));
        if (a->content_hash() == j.at("content_hash").get<std::uint64_t>()) return a;
      }
    } catch (const std::exception&) {
      // unreadable or stale: rebuild below
    }
  }
  auto a = std::make_shared<const CoinvariantAlgebra>(group, subset);
  std::error_code ec;
  fs::create_directories(cache_dir, ec);
  std::ostringstream tmp_name;
  tmp_name << path.string() << ".tmp" << std::hash<std::thread::id>{}(std::this_thread::get_id());
  {
    std::ofstream out(tmp_name.str());
    if (!out) return a;
    out << json{{"algebra", to_json(a->data())}, {"content_hash", a->content_hash()}}.dump();
  }
  fs::rename(tmp_name.str(), path, ec);
  return a;
}

}  // namespace parind
