#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "mvmom/cache.hpp"
#include "mvmom/discover.hpp"
#include "mvmom/engines.hpp"
#include "mvmom/marriage.hpp"
#include "mvmom/table.hpp"

namespace {

using mvmom::CovarianceSpec;
using mvmom::Engine;
using mvmom::MultiIndex;
using mvmom::Rational;

// exit codes: 2 bad usage, 3 no recurrence (moment --no-fallback),
// 4 i/o failure, 5 no recurrence (discover)
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

MultiIndex parse_multi_index(const std::string& text, int k) {
  auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != k) {
    throw UsageError("--m needs exactly " + std::to_string(k) +
                     " comma-separated entries");
  }
  std::vector<long> v;
  for (const auto& p : parts) {
    try {
      size_t used = 0;
      v.push_back(std::stol(p, &used));
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw UsageError("bad exponent '" + p + "' in --m");
    }
    if (v.back() < 0) throw UsageError("exponents must be nonnegative");
  }
  return MultiIndex(v);
}

CovarianceSpec parse_cov(const std::string& text, int k) {
  if (text == "symbolic" || text.empty()) return CovarianceSpec::symbolic(k);
  auto parts = split(text, ',');
  if (static_cast<int>(parts.size()) != mvmom::pair_count(k)) {
    throw UsageError("--cov needs 'symbolic' or " +
                     std::to_string(mvmom::pair_count(k)) +
                     " entries (pair order c12,c13,...,c23,...)");
  }
  CovarianceSpec cov = CovarianceSpec::symbolic(k);
  for (int idx = 0; idx < mvmom::pair_count(k); ++idx) {
    const std::string& p = parts[static_cast<size_t>(idx)];
    auto [i, j] = mvmom::pair_at(idx, k);
    if (p == "sym") continue;
    try {
      cov.set_entry(i, j, Rational(p));
    } catch (const std::exception&) {
      throw UsageError("bad covariance entry '" + p + "'");
    }
  }
  return cov;
}

std::vector<long> parse_cross(const std::string& text, int k) {
  std::vector<long> cross(static_cast<size_t>(mvmom::pair_count(k)), 0);
  if (text.empty()) return cross;
  for (const auto& item : split(text, ',')) {
    auto eq = item.find('=');
    if (eq == std::string::npos) {
      throw UsageError("--cross entries look like c12=9");
    }
    const std::string name = item.substr(0, eq);
    long value = 0;
    try {
      value = std::stol(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw UsageError("bad count in '" + item + "'");
    }
    bool found = false;
    for (int idx = 0; idx < mvmom::pair_count(k) && !found; ++idx) {
      auto [i, j] = mvmom::pair_at(idx, k);
      if (mvmom::Var(i, j).name() == name) {
        cross[static_cast<size_t>(idx)] = value;
        found = true;
      }
    }
    if (!found) throw UsageError("unknown pair '" + name + "' for k");
  }
  return cross;
}

std::vector<long> parse_fixed(const std::string& text, int k, int direction) {
  std::vector<std::optional<long>> slots(static_cast<size_t>(k));
  if (!text.empty()) {
    for (const auto& item : split(text, ',')) {
      auto eq = item.find('=');
      if (eq == std::string::npos || item[0] != 'm') {
        throw UsageError("--fixed entries look like m2=4");
      }
      int coord = 0;
      long value = 0;
      try {
        coord = std::stoi(item.substr(1, eq - 1));
        value = std::stol(item.substr(eq + 1));
      } catch (const std::exception&) {
        throw UsageError("bad --fixed entry '" + item + "'");
      }
      if (coord < 1 || coord > k) throw UsageError("coordinate out of range");
      if (coord == direction) {
        throw UsageError("m" + std::to_string(coord) +
                         " is the direction coordinate; do not fix it");
      }
      slots[static_cast<size_t>(coord - 1)] = value;
    }
  }
  std::vector<long> fixed;
  for (int i = 1; i <= k; ++i) {
    if (i == direction) continue;
    const auto& s = slots[static_cast<size_t>(i - 1)];
    if (!s) throw UsageError("missing m" + std::to_string(i) + " in --fixed");
    if (*s < 0) throw UsageError("fixed exponents must be nonnegative");
    fixed.push_back(*s);
  }
  return fixed;
}

std::filesystem::path default_cache_dir() {
  if (const char* env = std::getenv("MVMOM_CACHE_DIR")) return env;
  if (const char* xdg = std::getenv("XDG_CACHE_HOME")) {
    return std::filesystem::path(xdg) / "mvmom";
  }
  if (const char* home = std::getenv("HOME")) {
    return std::filesystem::path(home) / ".cache" / "mvmom";
  }
  return {};
}

nlohmann::ordered_json cov_to_json(const CovarianceSpec& cov) {
  if (cov.all_symbolic()) return "symbolic";
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (int idx = 0; idx < mvmom::pair_count(cov.dimension()); ++idx) {
    auto [i, j] = mvmom::pair_at(idx, cov.dimension());
    arr.push_back(cov.is_symbolic(i, j) ? "sym" : cov.value(i, j).str());
  }
  return arr;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct MomentArgs {
  int k = 0;
  std::string m_text, cov_text = "symbolic", engine_text = "wick";
  std::string format = "text";
  bool no_fallback = false, no_cache = false;
  std::string cache_dir;
  int max_order = 8, max_degree = 12;
};

int run_moment(const MomentArgs& args) {
  const MultiIndex m = parse_multi_index(args.m_text, args.k);
  const CovarianceSpec cov = parse_cov(args.cov_text, args.k);
  auto engine = mvmom::engine_from_name(args.engine_text);
  if (!engine) throw UsageError("unknown engine '" + args.engine_text + "'");
  if (args.format != "text" && args.format != "json") {
    throw UsageError("--format must be text or json");
  }
  mvmom::PureOptions options;
  options.limits.max_order = args.max_order;
  options.limits.max_degree = args.max_degree;
  options.allow_fallback = !args.no_fallback;
  if (!args.no_cache) {
    options.cache_dir = args.cache_dir.empty()
                            ? default_cache_dir()
                            : std::filesystem::path(args.cache_dir);
  }

  mvmom::MomentResult result;
  try {
    result = mvmom::compute_moment(cov, m, *engine, options);
  } catch (const mvmom::NotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }

  if (args.format == "text") {
    std::cout << result.value.str() << "\n";
    return 0;
  }
  nlohmann::ordered_json j;
  j["engine"] = mvmom::engine_name(result.engine_used);
  j["k"] = args.k;
  j["m"] = m.values();
  j["cov"] = cov_to_json(cov);
  j["result"] = result.value.str();
  nlohmann::ordered_json meta;
  meta["fallback_used"] = result.fallback_used;
  if (result.recurrence_order) {
    meta["recurrence_order"] = *result.recurrence_order;
  } else {
    meta["recurrence_order"] = nullptr;
  }
  meta["bridged_points"] = result.bridged_points;
  j["metadata"] = std::move(meta);
  std::cout << j.dump() << "\n";
  return 0;
}

struct CoeffArgs {
  int k = 0;
  std::string m_text, cross_text, format = "text";
};

int run_coeff(const CoeffArgs& args) {
  const MultiIndex m = parse_multi_index(args.m_text, args.k);
  const auto cross = parse_cross(args.cross_text, args.k);
  if (args.format != "text" && args.format != "json") {
    throw UsageError("--format must be text or json");
  }
  const mvmom::Integer count = mvmom::count_marriages(m, cross);
  if (args.format == "text") {
    std::cout << count.str() << "\n";
    return 0;
  }
  nlohmann::ordered_json j;
  j["k"] = args.k;
  j["m"] = m.values();
  nlohmann::ordered_json cj = nlohmann::ordered_json::object();
  for (int idx = 0; idx < mvmom::pair_count(args.k); ++idx) {
    auto [a, b] = mvmom::pair_at(idx, args.k);
    cj[mvmom::Var(a, b).name()] = cross[static_cast<size_t>(idx)];
  }
  j["cross"] = std::move(cj);
  const std::string s = count.str();
  j["result"] = s;
  j["digits"] = s.size() - (s[0] == '-' ? 1 : 0);
  std::cout << j.dump() << "\n";
  return 0;
}

struct TableArgs {
  int k = 3;
  long grid = 0, diagonal = 0;
  std::string cov_text = "symbolic", engine_text = "wick", out = "-";
  int threads = 1;
};

int run_table(const TableArgs& args) {
  if ((args.grid > 0) == (args.diagonal > 0)) {
    throw UsageError("give exactly one of --grid N or --diagonal N");
  }
  const CovarianceSpec cov = parse_cov(args.cov_text, args.k);
  auto engine = mvmom::engine_from_name(args.engine_text);
  if (!engine) throw UsageError("unknown engine '" + args.engine_text + "'");
  if (args.threads < 1) throw UsageError("--threads must be positive");

  mvmom::TableOptions options;
  options.engine = *engine;
  options.threads = args.threads;

  const auto targets = args.grid > 0
                           ? mvmom::grid_targets(args.k, args.grid)
                           : mvmom::diagonal_targets(args.k, args.diagonal);

  std::ostringstream buffer;
  mvmom::write_table(buffer, cov, targets, options);

  if (args.out == "-") {
    std::cout << buffer.str();
    if (!std::cout) throw IoError("failed writing to stdout");
    return 0;
  }
  std::ofstream out(args.out, std::ios::trunc | std::ios::binary);
  if (!out) throw IoError("cannot open '" + args.out + "' for writing");
  out << buffer.str();
  out.flush();
  if (!out) throw IoError("failed writing '" + args.out + "'");
  return 0;
}

struct DiscoverArgs {
  int k = 0, direction = 0;
  std::string fixed_text, cov_text = "symbolic", out;
  int max_order = 8, max_degree = 12;
  std::string format = "text";
};

int run_discover(const DiscoverArgs& args) {
  if (args.direction < 1 || args.direction > args.k) {
    throw UsageError("--direction is 1-based and must be within 1..k");
  }
  const CovarianceSpec cov = parse_cov(args.cov_text, args.k);
  const auto fixed = parse_fixed(args.fixed_text, args.k, args.direction);
  if (args.format != "text" && args.format != "json") {
    throw UsageError("--format must be text or json");
  }
  mvmom::DiscoverOptions options;
  options.limits.max_order = args.max_order;
  options.limits.max_degree = args.max_degree;

  mvmom::Recurrence rec;
  try {
    rec = mvmom::discover(cov, args.direction - 1, fixed, options);
  } catch (const mvmom::NotFoundError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 5;
  }

  const std::string json = rec.to_json();
  if (!args.out.empty()) {
    std::ofstream out(args.out, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot open '" + args.out + "' for writing");
    out << json << "\n";
    if (!out) throw IoError("failed writing '" + args.out + "'");
  }
  if (args.format == "json") {
    std::cout << json << "\n";
  } else {
    std::cout << "order=" << rec.order << " degree=" << rec.degree()
              << " offset=" << rec.offset << " direction=" << args.direction
              << "\n";
  }
  return 0;
}

struct BenchArgs {
  std::string case_name;
  int repeat = 3;
  std::string cache_dir;
};

int run_bench(const BenchArgs& args) {
  if (args.repeat < 1) throw UsageError("--repeat must be positive");
  nlohmann::ordered_json j;
  j["case"] = args.case_name;
  j["repeat"] = args.repeat;

  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };

  if (args.case_name == "numeric-big") {
    const CovarianceSpec cov = CovarianceSpec::numeric(
        3, {Rational(1, 2), Rational(1, 3), Rational(1, 4)});
    const MultiIndex m{570, 560, 750};
    mvmom::PureOptions options;
    if (!args.cache_dir.empty()) options.cache_dir = args.cache_dir;

    auto t0 = std::chrono::steady_clock::now();
    auto first = mvmom::moment_pure(cov, m, options);
    j["discover_and_first_eval_seconds"] = seconds_since(t0);
    j["recurrence_order"] =
        first.recurrence_order ? nlohmann::ordered_json(*first.recurrence_order)
                               : nlohmann::ordered_json(nullptr);
    j["fallback_used"] = first.fallback_used;

    std::vector<double> pure_times, wick_times;
    mvmom::Polynomial wick_value;
    for (int i = 0; i < args.repeat; ++i) {
      t0 = std::chrono::steady_clock::now();
      auto r = mvmom::moment_pure(cov, m, options);
      pure_times.push_back(seconds_since(t0));
      if (r.value != first.value) throw std::logic_error("unstable result");
    }
    for (int i = 0; i < args.repeat; ++i) {
      t0 = std::chrono::steady_clock::now();
      wick_value = mvmom::moment_wick(cov, m);
      wick_times.push_back(seconds_since(t0));
    }
    j["pure_seconds"] = pure_times;
    j["wick_seconds"] = wick_times;
    j["median_pure_seconds"] = median(pure_times);
    j["median_wick_seconds"] = median(wick_times);
    j["wick_over_pure"] = median(wick_times) / median(pure_times);
    j["equal"] = (wick_value == first.value);
    j["result_numerator_digits"] =
        first.value.constant_value().numerator().digits10();
  } else if (args.case_name == "symbolic-mid") {
    const CovarianceSpec cov = CovarianceSpec::symbolic(3);
    const MultiIndex m{100, 50, 40};
    mvmom::PureOptions options;
    if (!args.cache_dir.empty()) options.cache_dir = args.cache_dir;

    std::vector<double> pure_times, wick_times;
    mvmom::MomentResult pr;
    auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < args.repeat; ++i) {
      t0 = std::chrono::steady_clock::now();
      pr = mvmom::moment_pure(cov, m, options);
      pure_times.push_back(seconds_since(t0));
    }
    mvmom::Polynomial wick_value;
    for (int i = 0; i < args.repeat; ++i) {
      t0 = std::chrono::steady_clock::now();
      wick_value = mvmom::moment_wick(cov, m);
      wick_times.push_back(seconds_since(t0));
    }
    j["engine_used"] = mvmom::engine_name(pr.engine_used);
    j["fallback_used"] = pr.fallback_used;
    j["pure_seconds"] = pure_times;
    j["wick_seconds"] = wick_times;
    j["median_pure_seconds"] = median(pure_times);
    j["median_wick_seconds"] = median(wick_times);
    j["wick_over_pure"] = median(wick_times) / median(pure_times);
    j["equal"] = (wick_value == pr.value);
    j["result_terms"] = pr.value.term_count();
  } else {
    throw UsageError("--case must be numeric-big or symbolic-mid");
  }

  std::cout << j.dump() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact mixed moments of a multivariate standard normal"};
  app.require_subcommand(1);

  MomentArgs margs;
  auto* cmd_moment = app.add_subcommand("moment", "compute one mixed moment");
  cmd_moment->add_option("--k", margs.k, "dimension")->required();
  cmd_moment->add_option("--m", margs.m_text, "exponents m1,m2,...")->required();
  cmd_moment->add_option("--cov", margs.cov_text,
                         "'symbolic' or entries c12,c13,... ('sym' allowed)");
  cmd_moment->add_option("--engine", margs.engine_text, "wick|stein|pure");
  cmd_moment->add_option("--format", margs.format, "text|json");
  cmd_moment->add_flag("--no-fallback", margs.no_fallback,
                       "fail (exit 3) instead of falling back to stein");
  cmd_moment->add_option("--cache-dir", margs.cache_dir,
                         "recurrence cache directory");
  cmd_moment->add_flag("--no-cache", margs.no_cache, "disable the disk cache");
  cmd_moment->add_option("--max-order", margs.max_order, "discovery order cap");
  cmd_moment->add_option("--max-degree", margs.max_degree,
                         "discovery degree cap");

  CoeffArgs cargs;
  auto* cmd_coeff = app.add_subcommand(
      "coeff", "coefficient of a covariance monomial (marriage count)");
  cmd_coeff->add_option("--k", cargs.k, "dimension")->required();
  cmd_coeff->add_option("--m", cargs.m_text, "exponents m1,m2,...")->required();
  cmd_coeff->add_option("--cross", cargs.cross_text,
                        "pair powers, e.g. c12=9,c13=7 (others 0)");
  cmd_coeff->add_option("--format", cargs.format, "text|json");

  TableArgs targs;
  auto* cmd_table = app.add_subcommand("table", "moment table, one line per m");
  cmd_table->add_option("--k", targs.k, "dimension");
  cmd_table->add_option("--grid", targs.grid, "all m in {1..N}^k");
  cmd_table->add_option("--diagonal", targs.diagonal, "m = (t,...,t), t=1..N");
  cmd_table->add_option("--cov", targs.cov_text, "covariance entries");
  cmd_table->add_option("--engine", targs.engine_text, "wick|stein|pure");
  cmd_table->add_option("--threads", targs.threads, "worker threads");
  cmd_table->add_option("--out", targs.out, "output path ('-' = stdout)");

  DiscoverArgs dargs;
  auto* cmd_discover =
      app.add_subcommand("discover", "find a recurrence along one coordinate");
  cmd_discover->add_option("--k", dargs.k, "dimension")->required();
  cmd_discover->add_option("--direction", dargs.direction,
                           "running coordinate (1-based)")
      ->required();
  cmd_discover->add_option("--fixed", dargs.fixed_text,
                           "other coordinates, e.g. m1=4,m3=2");
  cmd_discover->add_option("--cov", dargs.cov_text, "covariance entries");
  cmd_discover->add_option("--max-order", dargs.max_order, "order cap");
  cmd_discover->add_option("--max-degree", dargs.max_degree, "degree cap");
  cmd_discover->add_option("--out", dargs.out, "write recurrence JSON here");
  cmd_discover->add_option("--format", dargs.format, "text|json");

  BenchArgs bargs;
  auto* cmd_bench = app.add_subcommand("bench", "timing report (JSON)");
  cmd_bench->add_option("--case", bargs.case_name, "numeric-big|symbolic-mid")
      ->required();
  cmd_bench->add_option("--repeat", bargs.repeat, "timed repetitions");
  cmd_bench->add_option("--cache-dir", bargs.cache_dir,
                        "recurrence cache directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*cmd_moment) return run_moment(margs);
    if (*cmd_coeff) return run_coeff(cargs);
    if (*cmd_table) return run_table(targs);
    if (*cmd_discover) return run_discover(dargs);
    if (*cmd_bench) return run_bench(bargs);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
