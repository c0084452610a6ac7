#pragma once

// Command-line front end. Machine-readable results go to `out`; warnings and
// progress go to `err`.
//
// Exit codes: 0 success, 2 usage error, 3 domain error, 4 resource ceiling.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <scdigraph/scdigraph.hpp>

namespace scd::cli {

enum exit_code : int { ok = 0, usage = 2, domain = 3, resource = 4 };

class usage_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rounds to 12 significant digits so serialized floats are stable.
inline double round12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

inline std::string format12(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

inline nlohmann::ordered_json report_json(const McReport& r) {
  nlohmann::ordered_json j;
  j["experiment"] = r.experiment;
  j["n"] = r.n;
  j["m"] = r.m;
  j["trials"] = r.trials;
  j["estimate"] = round12(r.estimate);
  j["stderr"] = round12(r.stderr_);
  j["theory"] = round12(r.theory);
  j["seed"] = r.seed;
  nlohmann::ordered_json details = nlohmann::ordered_json::object();
  details["loop_free"] = r.loop_free;
  for (const auto& [k, v] : r.details) details[k] = round12(v);
  j["details"] = details;
  return j;
}

namespace detail {

struct Options {
  // lambda
  double c = 0.0;
  int k = 1;
  // shared
  std::string kind;
  std::size_t n = 0;
  std::size_t m = 0;
  int kplus = 1;
  int kminus = 1;
  bool loop_free = false;
  std::uint64_t seed = 0;
  unsigned jobs = 1;
  // count
  std::string form = "main";
  // exact
  std::string method;
  std::string predicate;
  // sample
  std::size_t count = 1;
  std::string out_dir;
  // mc
  std::string experiment;
  std::size_t trials = 0;
  std::size_t max_len = 5;
  // validate
  std::string n_list = "20,40,80,160";
};

inline int run_lambda(const Options& o, std::ostream& out) {
  const TPoModel model = solve_lambda(o.c, o.k);
  nlohmann::ordered_json j;
  j["lambda"] = round12(model.lambda);
  j["eta"] = round12(model.eta);
  j["c"] = round12(model.c);
  out << j.dump() << '\n';
  return ok;
}

inline int run_count(const Options& o, std::ostream& out, std::ostream& err) {
  LogCount result;
  if (o.kind == "strong") {
    if (o.kplus != 1 || o.kminus != 1) throw usage_error("count: --kplus/--kminus apply to --kind kdicore only");
    if (o.form == "main") {
      result = o.loop_free ? log_count_strong_loopfree(o.n, o.m) : log_count_strong(o.n, o.m);
    } else if (o.form == "sparse") {
      // The c -> 1 form is the same with or without loops.
      result = log_count_strong(o.n, o.m, StrongForm::sparse);
    } else {
      if (o.loop_free) throw usage_error("count: --form dense has no loop-free variant");
      result = log_count_strong(o.n, o.m, StrongForm::dense);
    }
  } else {
    if (o.form != "main") throw usage_error("count: --form applies to --kind strong only");
    if (o.kind == "dicore") {
      if (o.kplus != 1 || o.kminus != 1) throw usage_error("count: use --kind kdicore for other minimum degrees");
      result = o.loop_free ? log_count_dicore_loopfree(o.n, o.m) : log_count_dicore(o.n, o.m);
    } else {
      result = o.loop_free ? log_count_kdicore_loopfree(o.n, o.m, o.kplus, o.kminus)
                           : log_count_kdicore(o.n, o.m, o.kplus, o.kminus);
    }
  }
  if (result.outside_regime) err << "warning: m > 3 n log n, outside the m = O(n log n) regime\n";
  nlohmann::ordered_json j;
  j["log_natural"] = round12(result.log_value);
  j["log10"] = round12(result.log10());
  j["sci_notation"] = result.scientific();
  out << j.dump() << '\n';
  return ok;
}

inline int run_exact(const Options& o, std::ostream& out) {
  if (o.method == "ie") {
    if (o.predicate != "dicore") throw usage_error("exact: --method ie supports --predicate dicore only");
    if (o.kplus != 1 || o.kminus != 1) throw usage_error("exact: --method ie supports k+ = k- = 1 only");
    out << (o.loop_free ? ie_dicore_count_loopfree(o.n, o.m) : ie_dicore_count(o.n, o.m)) << '\n';
    return ok;
  }
  const CensusResult census = brute_force_census(o.n, o.m, o.loop_free);
  if (o.predicate == "strong") {
    if (o.kplus != 1 || o.kminus != 1) throw usage_error("exact: --kplus/--kminus apply to --predicate dicore");
    out << census.strongly_connected << '\n';
  } else {
    out << census.kdicore_count(o.kplus, o.kminus) << '\n';
  }
  return ok;
}

inline int run_sample(const Options& o, std::ostream& out) {
  namespace fs = std::filesystem;
  const fs::path dir(o.out_dir);
  fs::create_directories(dir);
  const auto graphs = parallel_map<Digraph>(o.count, o.jobs, [&](std::size_t i) {
    rng_type rng = make_rng(o.seed, i);
    return sample_dicore(o.n, o.m, o.kplus, o.kminus, o.loop_free, rng);
  });
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const fs::path file = dir / ("sample_" + std::to_string(i) + ".edges");
    std::ofstream os(file);
    if (!os) throw std::runtime_error("cannot write " + file.string());
    write_edge_list(os, graphs[i]);
    out << file.string() << '\n';
  }
  return ok;
}

inline int run_mc(const Options& o, std::ostream& out, std::ostream& err) {
  const McOptions opt{o.seed, o.jobs, o.loop_free};
  McReport r;
  if (o.experiment == "strong") {
    r = mc_strong_probability(o.n, o.m, o.trials, opt);
  } else if (o.experiment == "simple") {
    r = mc_simple_probability(o.n, o.m, o.trials, opt);
  } else if (o.experiment == "scycles") {
    r = mc_scycle_census(o.n, o.m, o.max_len, o.trials, opt);
  } else {
    if (o.loop_free) throw usage_error("mc: the heart experiment has no loop-free variant");
    r = mc_heart_strong(o.n, o.m, o.trials, opt);
  }
  for (const auto& w : r.warnings) err << "warning: " << w << '\n';
  out << report_json(r).dump() << '\n';
  return ok;
}

inline std::vector<std::size_t> parse_list(const std::string& text) {
  std::vector<std::size_t> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw usage_error("validate: bad --n-list entry '" + item + "'");
    }
    if (used != item.size() || v <= 0) throw usage_error("validate: bad --n-list entry '" + item + "'");
    values.push_back(static_cast<std::size_t>(v));
  }
  if (values.empty()) throw usage_error("validate: --n-list is empty");
  return values;
}

inline int run_validate(const Options& o, std::ostream& out, std::ostream& err) {
  const auto ns = parse_list(o.n_list);
  out << "n,m,kind,exact,asymptotic_log,rel_error,runtime_ms\n";
  for (std::size_t n : ns) {
    const auto m = static_cast<std::size_t>(std::llround(o.c * static_cast<double>(n)));
    const auto start = std::chrono::steady_clock::now();
    const LogCount asym = o.loop_free ? log_count_dicore_loopfree(n, m) : log_count_dicore(n, m);
    const BigInt exact = o.loop_free ? ie_dicore_count_loopfree(n, m) : ie_dicore_count(n, m);
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
    std::string rel;
    if (exact > 0) rel = format12(std::abs(std::exp(asym.log_value - log_big(exact)) - 1.0));
    out << n << ',' << m << ',' << (o.loop_free ? "dicore_loopfree" : "dicore") << ',' << exact << ','
        << format12(asym.log_value) << ',' << rel << ',' << elapsed << '\n';
    err << "validated n=" << n << " in " << elapsed << " ms\n";
  }
  return ok;
}

}  // namespace detail

inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  detail::Options o;
  CLI::App app{"Counting and sampling strongly connected digraphs and dicores", "scdigraph"};
  app.require_subcommand(1);

  auto* lambda = app.add_subcommand("lambda", "solve the truncated-Poisson mean equation for lambda");
  lambda->add_option("--c", o.c, "target mean c > k")->required();
  lambda->add_option("--k", o.k, "truncation level")->default_val(1)->check(CLI::NonNegativeNumber);

  auto* count = app.add_subcommand("count", "asymptotic count (log space)");
  count->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"strong", "dicore", "kdicore"}));
  count->add_option("--n", o.n)->required();
  count->add_option("--m", o.m)->required();
  count->add_option("--kplus", o.kplus)->default_val(1);
  count->add_option("--kminus", o.kminus)->default_val(1);
  count->add_flag("--loop-free", o.loop_free);
  count->add_option("--form", o.form)->default_val("main")->check(CLI::IsMember({"main", "sparse", "dense"}));

  auto* exact = app.add_subcommand("exact", "exact count by brute force or inclusion-exclusion");
  exact->add_option("--method", o.method)->required()->check(CLI::IsMember({"brute", "ie"}));
  exact->add_option("--predicate", o.predicate)->required()->check(CLI::IsMember({"strong", "dicore"}));
  exact->add_option("--n", o.n)->required();
  exact->add_option("--m", o.m)->required();
  exact->add_flag("--loop-free", o.loop_free);
  exact->add_option("--kplus", o.kplus)->default_val(1);
  exact->add_option("--kminus", o.kminus)->default_val(1);

  auto* sample = app.add_subcommand("sample", "uniform random dicores as edge-list files");
  sample->add_option("--n", o.n)->required();
  sample->add_option("--m", o.m)->required();
  sample->add_option("--kplus", o.kplus)->default_val(1);
  sample->add_option("--kminus", o.kminus)->default_val(1);
  sample->add_flag("--loop-free", o.loop_free);
  sample->add_option("--count", o.count)->required();
  sample->add_option("--seed", o.seed)->required();
  sample->add_option("--out", o.out_dir, "output directory")->required();
  sample->add_option("--jobs", o.jobs)->default_val(1);

  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate against the limiting constant");
  mc->add_option("--experiment", o.experiment)
      ->required()
      ->check(CLI::IsMember({"strong", "simple", "scycles", "heart"}));
  mc->add_option("--n", o.n)->required();
  mc->add_option("--m", o.m)->required();
  mc->add_option("--trials", o.trials)->required();
  mc->add_option("--seed", o.seed)->required();
  mc->add_flag("--loop-free", o.loop_free);
  mc->add_option("--max-len", o.max_len, "s-cycle length bound (scycles)")->default_val(5);
  mc->add_option("--jobs", o.jobs)->default_val(1);

  auto* validate = app.add_subcommand("validate", "CSV of exact vs asymptotic dicore counts");
  validate->add_option("--kind", o.kind)->required()->check(CLI::IsMember({"dicore"}));
  validate->add_option("--c", o.c)->required();
  validate->add_option("--n-list", o.n_list)->default_val("20,40,80,160");
  validate->add_flag("--loop-free", o.loop_free);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return ok;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  }

  try {
    if (lambda->parsed()) return detail::run_lambda(o, out);
    if (count->parsed()) return detail::run_count(o, out, err);
    if (exact->parsed()) return detail::run_exact(o, out);
    if (sample->parsed()) return detail::run_sample(o, out);
    if (mc->parsed()) return detail::run_mc(o, out, err);
    return detail::run_validate(o, out, err);
  } catch (const usage_error& e) {
    err << "error: " << e.what() << '\n';
    return usage;
  } catch (const resource_error& e) {
    err << "error: " << e.what() << '\n';
    return resource;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return domain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace scd::cli
