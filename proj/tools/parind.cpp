// Command-line front end: group listings, KL basis elements, single ind_w
// computations and the verification sweep.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "parind/errors.hpp"
#include "parind/induction.hpp"
#include "parind/serialize.hpp"

using namespace parind;

namespace {

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

struct Common {
  std::string type = "A";
  int rank = 2;
  std::string parabolic;
  std::string cache_dir;
  std::string json_path;
};

std::vector<int> parse_subset(const std::string& text, int rank) {
  std::vector<int> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" ") == std::string::npos) continue;
    int i = 0;
    try {
      i = std::stoi(item);
    } catch (const std::exception&) {
      throw ConfigError("--parabolic: bad index '" + item + "'");
    }
    if (i < 1 || i > rank) throw ConfigError("--parabolic: index " + item + " out of range 1.." + std::to_string(rank));
    out.push_back(i - 1);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// "s2 s1", "2 1", "e" or "" -> element, after checking every letter.
WeylElement parse_word(const WeylGroup& g, const std::string& text, const std::string& flag) {
  std::vector<int> word;
  std::stringstream ss(text);
  std::string tok;
  while (ss >> tok) {
    if (tok == "e") continue;
    std::string digits = (tok[0] == 's' || tok[0] == 'S') ? tok.substr(1) : tok;
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos)
      throw ConfigError(flag + ": bad letter '" + tok + "'");
    const int s = std::stoi(digits);
    if (s < 1 || s > g.rank()) throw ConfigError(flag + ": letter " + tok + " out of range");
    word.push_back(s - 1);
  }
  auto w = g.from_word(word);
  if (static_cast<int>(word.size()) != w.length())
    std::cerr << "note: " << flag << " '" << text << "' is not reduced; using " << w.to_string() << "\n";
  return w;
}

std::string cache_dir_of(const Common& c) {
  if (!c.cache_dir.empty()) return c.cache_dir;
  if (const char* env = std::getenv("PARIND_CACHE_DIR")) return env;
  return "";
}

void write_json(const std::string& path, const json& j) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot write " + path);
  out << j.dump(2) << "\n";
}

int cmd_group(const Common& c, bool has_parabolic) {
  auto g = WeylGroup(build_root_system(parse_cartan_type(c.type), c.rank));
  std::cout << g.root_system().label << ": |W| = " << g.order() << ", longest element of length " << g.longest().length()
            << "\n";
  json j{{"group", g.root_system().label}, {"order", g.order()}};
  json elems = json::array();
  for (const auto& w : g.elements()) {
    std::cout << "  " << w.to_string() << "  length " << w.length() << "\n";
    elems.push_back({{"word", word_to_json(w.reduced_word())}, {"length", w.length()}});
  }
  j["elements"] = elems;
  if (has_parabolic) {
    auto d = minimal_coset_reps(g, parse_subset(c.parabolic, c.rank));
    std::cout << "W_I: " << d.elements_WI.size() << " elements; W^I: " << d.min_reps_WI.size() << " elements\n";
    json reps = json::array();
    for (const auto& w : d.min_reps_WI) {
      std::cout << "  " << w.to_string() << "\n";
      reps.push_back(word_to_json(w.reduced_word()));
    }
    j["subset"] = word_to_json(d.subset);
    j["min_coset_reps"] = reps;
  }
  write_json(c.json_path, j);
  return 0;
}

int cmd_kl(const Common& c, const std::string& w_text) {
  auto g = WeylGroup(build_root_system(parse_cartan_type(c.type), c.rank));
  auto w = parse_word(g, w_text, "--w");
  KLBasis kl(g);
  const auto& b = kl.b(w);
  std::cout << "b_" << w.to_string() << " = " << b.to_string() << "\n";
  write_json(c.json_path, json{{"group", g.root_system().label}, {"w", word_to_json(w.reduced_word())}, {"b", to_json(b)}});
  return 0;
}

int cmd_indw(const Common& c, const std::string& x_text, const std::string& w_text) {
  Workspace ws(parse_cartan_type(c.type), c.rank, cache_dir_of(c));
  const auto subset = parse_subset(c.parabolic, c.rank);
  if (static_cast<int>(subset.size()) == c.rank) throw ConfigError("--parabolic must be a proper subset");
  const auto x = parse_word(ws.group(), x_text, "--x");
  const auto w = parse_word(ws.group(), w_text, "--w");
  const auto& d = ws.datum(subset);
  if (!d.in_WI(x)) throw ConfigError("--x " + x.to_string() + " is not in W_I");
  if (!d.is_min_rep(w)) throw ConfigError("--w " + w.to_string() + " is not in W^I");
  auto chain = admissible_chain(d, w);
  const auto& cx = ws.induced(subset, x, w);
  auto r = verify_theorem(ws, subset, x, w);
  std::cout << "instance:  " << r.instance << "\n"
            << "chain:     " << word_to_string(*chain) << "\n"
            << "complex:   " << cx.summary() << "\n"
            << "computed:  " << r.computed << "\n"
            << "predicted: " << r.predicted << "\n"
            << (r.passed ? "PASS" : "FAIL") << " (" << r.detail << ")\n";
  write_json(c.json_path, json{{"report", to_json(r)}, {"chain", word_to_json(*chain)}, {"complex", to_json(cx)}});
  return r.passed ? 0 : kExitMismatch;
}

int cmd_verify(const Common& c, const std::string& corpus, int jobs) {
  CorpusOptions opts = corpus == "full" ? full_corpus() : quick_corpus();
  opts.jobs = jobs;
  opts.cache_dir = cache_dir_of(c);
  auto reports = run_corpus(opts);
  std::size_t failed = 0;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_check;
  json arr = json::array();
  for (const auto& r : reports) {
    auto& [pass, total] = per_check[r.check];
    ++total;
    if (r.passed) ++pass;
    else ++failed;
    if (!r.passed) std::cout << "FAIL " << r.check << " " << r.instance << ": " << r.detail << "\n";
    arr.push_back(to_json(r));
  }
  for (const auto& [check, pt] : per_check)
    std::cout << check << ": " << pt.first << "/" << pt.second << " passed\n";
  std::cout << (failed == 0 ? "all checks passed" : std::to_string(failed) + " checks failed") << "\n";
  write_json(c.json_path, json{{"corpus", corpus}, {"reports", arr}});
  return failed == 0 ? 0 : kExitMismatch;
}

int cmd_calibrate(const Common& c) {
  Workspace ws(parse_cartan_type(c.type), c.rank, cache_dir_of(c));
  auto res = calibrate_shift(ws);
  for (const auto& g : res.grid)
    std::cout << "shift " << g.shift << " sign " << g.sign << ": unit is a chain map: "
              << (g.unit_is_chain_map ? "yes" : "no") << ", twist "
              << (g.twist ? std::to_string(*g.twist) : std::string("none")) << "\n";
  std::cout << (res.unique() ? "unique calibration" : "calibration not unique") << "\n";
  write_json(c.json_path, to_json(res));
  return res.unique() ? 0 : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic induction of Soergel modules and Rouquier complexes"};
  app.require_subcommand(1);
  Common c;
  auto add_group_flags = [&](CLI::App* sub) {
    sub->add_option("--type", c.type, "Cartan type (A, B, C, D, G, F)")->check(CLI::IsMember({"A", "B", "C", "D", "G", "F"}, CLI::ignore_case));
    sub->add_option("--rank", c.rank, "Rank")->check(CLI::Range(1, 8));
    sub->add_option("--json", c.json_path, "Write JSON output to this path ('-' for stdout)");
    sub->add_option("--cache-dir", c.cache_dir, "Directory for cached coinvariant algebras");
  };

  auto* group = app.add_subcommand("group", "List the Weyl group and, with --parabolic, W^I");
  add_group_flags(group);
  auto* par_opt = group->add_option("--parabolic", c.parabolic, "Comma-separated 1-based indices of I");

  std::string w_text, x_text;
  auto* kl = app.add_subcommand("kl", "Print a Kazhdan-Lusztig basis element");
  add_group_flags(kl);
  kl->add_option("--w", w_text, "Reduced word, e.g. \"s2 s1\" or \"2 1\"")->required();

  auto* indw = app.add_subcommand("indw", "Compute the minimized complex ind_w(D^I_x) and its class");
  add_group_flags(indw);
  indw->add_option("--parabolic", c.parabolic, "Comma-separated 1-based indices of I");
  indw->add_option("--x", x_text, "Element of W_I")->default_val("e");
  indw->add_option("--w", w_text, "Element of W^I")->required();

  std::string corpus = "quick";
  int jobs = 1;
  auto* verify = app.add_subcommand("verify", "Run the verification sweep");
  verify->add_option("--corpus", corpus, "quick (A1, A2) or full (A1, A2, B2, A3)")->check(CLI::IsMember({"quick", "full"}));
  verify->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1, 256));
  verify->add_option("--json", c.json_path, "Write the reports as JSON");
  verify->add_option("--cache-dir", c.cache_dir, "Directory for cached coinvariant algebras");

  auto* calibrate = app.add_subcommand("calibrate", "Search the grading dictionary of the Rouquier complex");
  add_group_flags(calibrate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*group) return cmd_group(c, par_opt->count() > 0);
    if (*kl) return cmd_kl(c, w_text);
    if (*indw) return cmd_indw(c, x_text, w_text);
    if (*verify) return cmd_verify(c, corpus, jobs);
    if (*calibrate) return cmd_calibrate(c);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitUsage;
}
