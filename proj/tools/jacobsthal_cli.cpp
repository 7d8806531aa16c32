// Command-line surface for the Jacobsthal bound library: stopping-table
// generation, single bound queries, sweeps, coefficient sweeps, and
// comparison against the classical bounds, with CSV/JSON emission.

#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "jacobsthal/bound_search.hpp"
#include "jacobsthal/exact.hpp"
#include "jacobsthal/known_h.hpp"
#include "jacobsthal/phi_low.hpp"
#include "jacobsthal/primes.hpp"
#include "jacobsthal/sha256.hpp"
#include "jacobsthal/table.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitEnvironment = 2;
constexpr int kExitBudget = 3;

struct CommonOpts {
  std::size_t base_k = 6;
  std::string tables_dir = "./tables";
  bool use_known_h = true;
  std::string out;  // empty = stdout
  std::string format = "csv";
  uint64_t budget = 1000000000ull;
};

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

std::string iso8601_now() {
  auto now = std::chrono::system_clock::now();
  std::time_t t = std::chrono::system_clock::to_time_t(now);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
  return buf;
}

std::string hex_digest(const std::string& data) {
  auto d = jacobsthal::Sha256::digest(data.data(), data.size());
  std::string out;
  for (uint8_t byte : d) {
    char b[3];
    std::snprintf(b, sizeof(b), "%02x", byte);
    out += b;
  }
  return out;
}

// Output sink: stdout, or a file plus a JSON manifest sidecar.
class OutputTarget {
public:
  OutputTarget(const std::string& out_path, const std::string& subcommand,
               const std::vector<std::pair<std::string, std::string>>& flags)
      : path_(out_path), subcommand_(subcommand), flags_(flags) {
    if (!path_.empty()) {
      file_.open(path_, std::ios::trunc);
      if (!file_)
        throw std::runtime_error("cannot open output file " + path_);
    }
  }

  std::ostream& stream() { return path_.empty() ? std::cout : file_; }

  // Written only when output goes to a file; stdout runs have no sidecar.
  void write_manifest() {
    if (path_.empty()) return;
    std::string canonical = subcommand_;
    json flag_obj = json::object();
    for (const auto& [k, v] : flags_) {
      canonical += "\n" + k + "=" + v;
      flag_obj[k] = v;
    }
    json manifest = {{"subcommand", subcommand_},
                     {"flags", flag_obj},
                     {"config_digest", hex_digest(canonical)},
                     {"tool_version", kToolVersion},
                     {"timestamp", iso8601_now()}};
    std::ofstream mf(path_ + ".manifest.json", std::ios::trunc);
    mf << manifest.dump(2) << "\n";
  }

private:
  std::string path_;
  std::string subcommand_;
  std::vector<std::pair<std::string, std::string>> flags_;
  std::ofstream file_;
};

// Rows are built as ordered (column, value) string pairs so CSV and JSON
// emit identical values.
using Row = std::vector<std::pair<std::string, std::string>>;

void emit_rows(std::ostream& os, const std::string& format,
               const std::vector<Row>& rows) {
  if (rows.empty()) return;
  if (format == "json") {
    json arr = json::array();
    for (const auto& row : rows) {
      json obj = json::object();
      for (const auto& [col, val] : row) obj[col] = val;
      arr.push_back(obj);
    }
    os << arr.dump(2) << "\n";
    return;
  }
  for (std::size_t i = 0; i < rows[0].size(); ++i) {
    if (i) os << ",";
    os << rows[0][i].first;
  }
  os << "\n";
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ",";
      os << row[i].second;
    }
    os << "\n";
  }
}

fs::path resolve_tables_dir(const std::string& flag_value) {
  if (const char* env = std::getenv("JACOBSTHAL_TABLES_DIR"))
    return fs::path(env);
  return fs::path(flag_value);
}

jacobsthal::TableSet load_tables_or_exit(const CommonOpts& opts) {
  fs::path dir = resolve_tables_dir(opts.tables_dir);
  try {
    return jacobsthal::TableSet::load_dir(dir, opts.base_k);
  } catch (const jacobsthal::TableIoError& e) {
    std::cerr << "error: " << e.what() << "\n"
              << "hint: run `jacobsthal tables-build --base-k " << opts.base_k
              << " --tables-dir " << dir.string() << "` first\n";
    std::exit(kExitEnvironment);
  }
}

jacobsthal::BoundConfig make_config(const CommonOpts& opts) {
  jacobsthal::BoundConfig cfg;
  cfg.base_k = opts.base_k;
  cfg.use_known_h = opts.use_known_h;
  if (opts.use_known_h) cfg.known_h = jacobsthal::hagedorn_h();
  return cfg;
}

std::vector<std::pair<std::string, std::string>> common_flags(
    const CommonOpts& opts) {
  return {{"base_k", std::to_string(opts.base_k)},
          {"tables_dir", resolve_tables_dir(opts.tables_dir).string()},
          {"use_known_h", opts.use_known_h ? "true" : "false"},
          {"format", opts.format},
          {"budget", std::to_string(opts.budget)}};
}

int cmd_tables_build(const CommonOpts& opts) {
  fs::path dir = resolve_tables_dir(opts.tables_dir);
  try {
    fs::create_directories(dir);
    auto basis = jacobsthal::sieve_primes(opts.base_k);
    for (std::size_t k = 1; k <= opts.base_k; ++k) {
      fs::path path = dir / jacobsthal::table_filename(k);
      if (fs::exists(path)) {
        try {
          auto existing = jacobsthal::load_table(path);
          if (existing.k == k) {
            std::cout << path.string() << " exists and is valid, skipping\n";
            continue;
          }
        } catch (const jacobsthal::TableIoError&) {
          // invalid file, rebuild below
        }
      }
      auto table = jacobsthal::build_table(k, basis);
      jacobsthal::save_table(table, path);
      std::cout << "wrote " << path.string() << " (" << table.modulus
                << " entries)\n";
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitEnvironment;
  }
  return kExitOk;
}

int cmd_bound(const CommonOpts& opts, std::size_t k, uint64_t start_m) {
  auto tables = load_tables_or_exit(opts);
  auto basis = jacobsthal::sieve_primes(std::max<std::size_t>(k, opts.base_k));
  jacobsthal::PhiLowEngine eng(basis, tables, make_config(opts));
  eng.set_budget(opts.budget);

  try {
    auto res = jacobsthal::find_b(k, start_m, eng);
    double ms = std::chrono::duration<double, std::milli>(res.elapsed).count();
    auto flags = common_flags(opts);
    flags.emplace_back("k", std::to_string(k));
    flags.emplace_back("start_m", std::to_string(start_m));
    OutputTarget out(opts.out, "bound", flags);
    std::vector<Row> rows{{{"k", std::to_string(res.k)},
                           {"b", std::to_string(res.b_k)},
                           {"evaluations", std::to_string(res.evaluations)},
                           {"elapsed_ms", format_double(ms)}}};
    emit_rows(out.stream(), opts.format, rows);
    out.write_manifest();
  } catch (const jacobsthal::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBudget;
  }
  return kExitOk;
}

int cmd_sweep(const CommonOpts& opts, std::size_t start_k, std::size_t end_k,
              uint64_t initial_m, bool reset_m) {
  auto tables = load_tables_or_exit(opts);
  auto basis =
      jacobsthal::sieve_primes(std::max<std::size_t>(end_k, opts.base_k));
  jacobsthal::PhiLowEngine eng(basis, tables, make_config(opts));
  eng.set_budget(opts.budget);

  auto flags = common_flags(opts);
  flags.emplace_back("start_k", std::to_string(start_k));
  flags.emplace_back("end_k", std::to_string(end_k));
  flags.emplace_back("initial_m", std::to_string(initial_m));
  flags.emplace_back("reset_m", reset_m ? "true" : "false");
  OutputTarget out(opts.out, "sweep", flags);

  std::vector<Row> rows;
  int exit_code = kExitOk;
  uint64_t m = initial_m;
  try {
    for (std::size_t k = start_k; k <= end_k; ++k) {
      if (reset_m) m = initial_m;
      auto res = jacobsthal::find_b(k, m, eng);
      m = res.b_k;
      double ms = std::chrono::duration<double, std::milli>(res.elapsed).count();
      rows.push_back({{"k", std::to_string(res.k)},
                      {"b", std::to_string(res.b_k)},
                      {"evaluations", std::to_string(res.evaluations)},
                      {"elapsed_ms", format_double(ms)}});
    }
  } catch (const jacobsthal::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (partial output emitted)\n";
    exit_code = kExitBudget;
  }
  emit_rows(out.stream(), opts.format, rows);
  out.write_manifest();
  return exit_code;
}

int cmd_coeff_sweep(const CommonOpts& opts, std::size_t start_k,
                    std::size_t end_k, int64_t initial_c) {
  auto tables = load_tables_or_exit(opts);
  auto basis =
      jacobsthal::sieve_primes(std::max<std::size_t>(end_k, opts.base_k));
  jacobsthal::PhiLowEngine eng(basis, tables, make_config(opts));
  eng.set_budget(opts.budget);

  auto flags = common_flags(opts);
  flags.emplace_back("start_k", std::to_string(start_k));
  flags.emplace_back("end_k", std::to_string(end_k));
  flags.emplace_back("initial_c", std::to_string(initial_c));
  OutputTarget out(opts.out, "coeff-sweep", flags);

  std::vector<Row> rows;
  int exit_code = kExitOk;
  int64_t c = initial_c;
  try {
    for (std::size_t k = start_k; k <= end_k; ++k) {
      auto res = jacobsthal::coeff_sweep(k, k, c, eng);
      c = res[0].c_k;
      rows.push_back({{"k", std::to_string(res[0].k)},
                      {"c_k", std::to_string(res[0].c_k)},
                      {"bound", std::to_string(res[0].bound)}});
    }
  } catch (const jacobsthal::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (partial output emitted)\n";
    exit_code = kExitBudget;
  }
  emit_rows(out.stream(), opts.format, rows);
  out.write_manifest();
  return exit_code;
}

int cmd_compare(const CommonOpts& opts, std::size_t start_k,
                std::size_t end_k, uint64_t initial_m) {
  auto tables = load_tables_or_exit(opts);
  auto basis =
      jacobsthal::sieve_primes(std::max<std::size_t>(end_k, opts.base_k));
  jacobsthal::PhiLowEngine eng(basis, tables, make_config(opts));
  eng.set_budget(opts.budget);

  auto known = jacobsthal::hagedorn_h();

  auto flags = common_flags(opts);
  flags.emplace_back("start_k", std::to_string(start_k));
  flags.emplace_back("end_k", std::to_string(end_k));
  flags.emplace_back("initial_m", std::to_string(initial_m));
  OutputTarget out(opts.out, "compare", flags);

  std::vector<Row> rows;
  int exit_code = kExitOk;
  uint64_t m = initial_m;
  try {
    for (std::size_t k = start_k; k <= end_k; ++k) {
      auto res = jacobsthal::find_b(k, m, eng);
      m = res.b_k;
      std::string h_known =
          k < known.size() ? std::to_string(known[k]) : std::string();
      rows.push_back(
          {{"k", std::to_string(k)},
           {"b", std::to_string(res.b_k)},
           {"log10_b", format_double(std::log10(double(res.b_k)))},
           {"log10_kanold", format_double(jacobsthal::kanold_log10(k))},
           {"log10_stevens", format_double(jacobsthal::stevens_log10(k))},
           {"h_known", h_known}});
    }
  } catch (const jacobsthal::BudgetExceeded& e) {
    std::cerr << "error: " << e.what() << " (partial output emitted)\n";
    exit_code = kExitBudget;
  }
  emit_rows(out.stream(), opts.format, rows);
  out.write_manifest();
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rigorous upper bounds on Jacobsthal's function h(k)"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--base-k", opts.base_k, "Stopping-table threshold")
        ->check(CLI::Range(std::size_t{1}, jacobsthal::kMaxTableK))
        ->capture_default_str();
    sub->add_option("--tables-dir", opts.tables_dir,
                    "Directory holding phimin_k{k}.bin (JACOBSTHAL_TABLES_DIR "
                    "overrides)")
        ->capture_default_str();
    sub->add_flag("--use-known-h,!--no-use-known-h", opts.use_known_h,
                  "Prune with known h(k) for k <= 49")
        ->capture_default_str();
    sub->add_option("--out", opts.out, "Output file (default stdout)");
    sub->add_option("--format", opts.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}))
        ->capture_default_str();
    sub->add_option("--budget", opts.budget, "Evaluation cap per run")
        ->capture_default_str();
  };

  auto* tables = app.add_subcommand("tables-build",
                                    "Build and persist stopping tables");
  add_common(tables);

  std::size_t arg_k = 0;
  uint64_t start_m = 1;
  auto* bound = app.add_subcommand("bound", "Compute b(k) for one k");
  add_common(bound);
  bound->add_option("k", arg_k, "Prime count k")->required()
      ->check(CLI::PositiveNumber);
  bound->add_option("--start-m", start_m, "Search start")
      ->check(CLI::PositiveNumber)->capture_default_str();

  std::size_t start_k = 0, end_k = 0;
  uint64_t initial_m = 1;
  bool reset_m = false;
  auto* sweep = app.add_subcommand("sweep", "Compute b(k) over a range of k");
  add_common(sweep);
  sweep->add_option("start_k", start_k, "First k")->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("end_k", end_k, "Last k")->required()
      ->check(CLI::PositiveNumber);
  sweep->add_option("--initial-m", initial_m, "Search start for the first k")
      ->check(CLI::PositiveNumber)->capture_default_str();
  sweep->add_flag("--reset-m", reset_m, "Restart the search at each k");

  int64_t initial_c = 10000;
  auto* coeff = app.add_subcommand(
      "coeff-sweep", "Coefficient bounds floor(C_k k^2 / 10000) over a range");
  add_common(coeff);
  coeff->add_option("start_k", start_k, "First k")->required()
      ->check(CLI::PositiveNumber);
  coeff->add_option("end_k", end_k, "Last k")->required()
      ->check(CLI::PositiveNumber);
  coeff->add_option("--initial-c", initial_c, "Starting coefficient")
      ->check(CLI::PositiveNumber)->capture_default_str();

  auto* compare = app.add_subcommand(
      "compare", "Compare b(k) with the Kanold and Stevens bounds");
  add_common(compare);
  compare->add_option("start_k", start_k, "First k")->required()
      ->check(CLI::PositiveNumber);
  compare->add_option("end_k", end_k, "Last k")->required()
      ->check(CLI::PositiveNumber);
  compare->add_option("--initial-m", initial_m, "Search start for the first k")
      ->check(CLI::PositiveNumber)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if ((sweep->parsed() || coeff->parsed() || compare->parsed()) &&
      start_k > end_k) {
    std::cerr << "error: start_k must not exceed end_k\n";
    return kExitUsage;
  }

  try {
    if (tables->parsed()) return cmd_tables_build(opts);
    if (bound->parsed()) return cmd_bound(opts, arg_k, start_m);
    if (sweep->parsed())
      return cmd_sweep(opts, start_k, end_k, initial_m, reset_m);
    if (coeff->parsed()) return cmd_coeff_sweep(opts, start_k, end_k, initial_c);
    if (compare->parsed()) return cmd_compare(opts, start_k, end_k, initial_m);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
