// Copyright 2026 The aversion authors
// SPDX-License-Identifier: Apache-2.0

// aversion: solve, sweep, simulate and verify the cheap-talk model of
// algorithm aversion from the command line.
//
// Exit status: 0 success, 1 a checked claim was falsified, 2 invalid input.

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "aversion/aversion.h"
#include "json.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFalsified = 1;
constexpr int kExitInvalid = 2;

constexpr std::uint64_t kSimulateDraws = 1000000;
constexpr std::uint64_t kVerifyDraws = 200000;
constexpr double kSweepStep = 1e-6;

using ordered_json = nlohmann::ordered_json;

// Failure carrying the exit status it maps to.
struct CliError {
  int status;
  std::string message;
};

int status_exit_code(av_status status) {
  switch (status) {
    case AV_ERR_INVALID_PARAMETER:
    case AV_ERR_EMPTY_REPORT:
    case AV_ERR_OUT_OF_RANGE:
    case AV_ERR_NULL_ARGUMENT:
      return kExitInvalid;
    default:
      return kExitFalsified;
  }
}

void check(av_status status) {
  if (status != AV_OK)
    throw CliError{status_exit_code(status), av_last_error()};
}

struct ParamsDeleter {
  void operator()(av_params* p) const { av_params_destroy(p); }
};
struct SolutionDeleter {
  void operator()(av_solution* p) const { av_solution_destroy(p); }
};
struct ReportDeleter {
  void operator()(av_sim_report* p) const { av_sim_report_destroy(p); }
};
struct LedgerDeleter {
  void operator()(av_ledger* p) const { av_ledger_destroy(p); }
};
using Params = std::unique_ptr<av_params, ParamsDeleter>;
using Solution = std::unique_ptr<av_solution, SolutionDeleter>;
using Report = std::unique_ptr<av_sim_report, ReportDeleter>;
using Ledger = std::unique_ptr<av_ledger, LedgerDeleter>;

Params make_params(double ul, double uh, double alpha) {
  av_params* raw = nullptr;
  check(av_params_create(ul, uh, alpha, &raw));
  return Params(raw);
}

Solution solve(const av_params* params, double tol) {
  av_solution* raw = nullptr;
  check(av_solve(params, tol, &raw));
  return Solution(raw);
}

av_solution_summary summary_of(const av_solution* solution) {
  av_solution_summary s{};
  check(av_solution_summary_get(solution, &s));
  return s;
}

std::string real(double value) {
  char buf[40];
  check(av_format_real(value, buf, sizeof buf, nullptr));
  return buf;
}

// JSON number carrying at most the printed significant digits; non-finite
// values become null.
ordered_json json_real(double value) {
  if (!std::isfinite(value)) return nullptr;
  return std::stod(real(value));
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& fields) {
  std::string line;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) line += ',';
    line += csv_field(fields[i]);
  }
  return line + "\n";
}

struct RunConfig {
  double ul = 0.0;
  double uh = 0.0;
  double alpha = 0.0;
  double tol = 1e-12;
  std::optional<std::uint64_t> n;
  std::uint64_t seed = 42;
  std::optional<double> gamma;
  std::string axis = "alpha";
  double from = 0.0;
  double to = 0.0;
  int points = 50;
  std::string grid = "point";
  std::string format;
  std::string out;
  std::string config;
  bool flip_g = false;

  ordered_json to_json(const std::string& command) const {
    ordered_json j;
    j["command"] = command;
    j["ul"] = json_real(ul);
    j["uh"] = json_real(uh);
    j["alpha"] = json_real(alpha);
    j["tol"] = json_real(tol);
    if (command == "simulate" || command == "verify") {
      j["n"] = n.value_or(command == "simulate" ? kSimulateDraws : kVerifyDraws);
      j["seed"] = seed;
    }
    if (command == "simulate")
      j["gamma"] = gamma ? json_real(*gamma) : ordered_json(nullptr);
    if (command == "sweep") {
      j["axis"] = axis;
      j["from"] = json_real(from);
      j["to"] = json_real(to);
      j["points"] = points;
    }
    if (command == "verify") j["grid"] = grid;
    j["format"] = format;
    if (!config.empty()) j["config"] = config;
    return j;
  }

  // Effective configuration as `key = value` lines, for stderr.
  std::string echo(const std::string& command) const {
    std::string text;
    const ordered_json j = to_json(command);
    for (const auto& [key, value] : j.items()) {
      if (key == "command") continue;
      text += "# " + key + " = " +
              (value.is_string() ? value.get<std::string>() : value.dump()) +
              "\n";
    }
    return text;
  }
};

void emit(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream file(cfg.out, std::ios::binary);
  if (!file) throw CliError{kExitInvalid, "cannot open " + cfg.out};
  file << text;
  if (!file) throw CliError{kExitInvalid, "cannot write " + cfg.out};
}

int cmd_solve(const RunConfig& cfg) {
  const Params params = make_params(cfg.ul, cfg.uh, cfg.alpha);
  const Solution solution = solve(params.get(), cfg.tol);
  const av_solution_summary s = summary_of(solution.get());
  const double margin = s.accuracy - cfg.alpha;

  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = cfg.to_json("solve");
    j["gamma"] = json_real(s.gamma_star);
    j["residual"] = json_real(s.residual);
    j["accuracy"] = json_real(s.accuracy);
    j["accuracy_margin"] = json_real(margin);
    j["adoption_value"] = json_real(s.adoption_value);
    j["dgamma_dalpha"] = json_real(s.dgamma_dalpha);
    j["high_mismatch_prob"] = json_real(s.high_mismatch_prob);
    emit(cfg, j.dump(2) + "\n");
  } else {
    std::cerr << cfg.echo("solve");
    emit(cfg,
         csv_row({"upsilon_L", "upsilon_H", "alpha", "gamma", "residual",
                  "accuracy", "accuracy_margin", "adoption_value",
                  "dgamma_dalpha", "high_mismatch_prob"}) +
             csv_row({real(cfg.ul), real(cfg.uh), real(cfg.alpha),
                      real(s.gamma_star), real(s.residual), real(s.accuracy),
                      real(margin), real(s.adoption_value),
                      real(s.dgamma_dalpha), real(s.high_mismatch_prob)}));
  }
  return kExitOk;
}

struct SweepRow {
  double value = 0.0;
  bool admissible = false;
  av_solution_summary summary{};
  double dgamma = 0.0;
};

struct Point {
  double ul;
  double uh;
  double alpha;

  Point along(const std::string& axis, double value) const {
    Point p = *this;
    if (axis == "alpha") p.alpha = value;
    else if (axis == "upsilon_L") p.ul = value;
    else p.uh = value;
    return p;
  }
};

// Equilibrium gamma at p, or nothing if p is inadmissible.
std::optional<double> gamma_at(const Point& p, double tol) {
  av_params* raw = nullptr;
  if (av_params_create(p.ul, p.uh, p.alpha, &raw) != AV_OK) return std::nullopt;
  const Params params(raw);
  return summary_of(solve(params.get(), tol).get()).gamma_star;
}

SweepRow sweep_point(const RunConfig& cfg, const Point& base, double value) {
  SweepRow row;
  row.value = value;
  const Point p = base.along(cfg.axis, value);
  av_params* raw = nullptr;
  if (av_params_create(p.ul, p.uh, p.alpha, &raw) != AV_OK) return row;
  const Params params(raw);
  row.admissible = true;
  row.summary = summary_of(solve(params.get(), cfg.tol).get());

  const double fine = 1e-15;
  const auto up = gamma_at(base.along(cfg.axis, value + kSweepStep), fine);
  const auto down = gamma_at(base.along(cfg.axis, value - kSweepStep), fine);
  const auto mid = gamma_at(p, fine);
  if (up && down) row.dgamma = (*up - *down) / (2.0 * kSweepStep);
  else if (up) row.dgamma = (*up - *mid) / kSweepStep;
  else if (down) row.dgamma = (*mid - *down) / kSweepStep;
  else row.dgamma = std::nan("");
  return row;
}

int cmd_sweep(const RunConfig& cfg) {
  if (cfg.axis != "alpha" && cfg.axis != "upsilon_L" && cfg.axis != "upsilon_H")
    throw CliError{kExitInvalid, "axis must be alpha, upsilon_L or upsilon_H"};
  if (cfg.points < 1) throw CliError{kExitInvalid, "empty sweep range"};
  if (!std::isfinite(cfg.from) || !std::isfinite(cfg.to))
    throw CliError{kExitInvalid, "sweep bounds must be finite"};

  const Point base{cfg.ul, cfg.uh, cfg.alpha};
  const auto count = static_cast<std::size_t>(cfg.points);
  std::vector<SweepRow> rows(count);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::optional<CliError> error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (std::size_t i = next++; i < count && !failed; i = next++) {
      const double value =
          count == 1 ? cfg.from
                     : cfg.from + (cfg.to - cfg.from) * static_cast<double>(i) /
                                      static_cast<double>(count - 1);
      try {
        rows[i] = sweep_point(cfg, base, value);
      } catch (const CliError& e) {
        std::lock_guard lock(error_mutex);
        if (!error) error = e;
        failed = true;
      }
    }
  };
  {
    const unsigned workers =
        std::max(1U, std::min<unsigned>(std::thread::hardware_concurrency(),
                                        static_cast<unsigned>(count)));
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
  }
  if (error) throw *error;

  const auto skipped = static_cast<std::size_t>(std::count_if(
      rows.begin(), rows.end(), [](const SweepRow& r) { return !r.admissible; }));
  std::erase_if(rows, [](const SweepRow& r) { return !r.admissible; });
  std::stable_sort(rows.begin(), rows.end(),
                   [](const SweepRow& a, const SweepRow& b) { return a.value < b.value; });

  std::cerr << cfg.echo("sweep");
  std::cerr << "# skipped " << skipped << " inadmissible point(s) of "
            << count << "\n";
  if (rows.empty()) throw CliError{kExitInvalid, "no admissible point in sweep range"};

  const std::array<std::string, 7> header = {
      "axis_value", "gamma", "accuracy", "accuracy_margin",
      "adoption_value", "dgamma_daxis", "residual"};
  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = cfg.to_json("sweep");
    j["skipped"] = skipped;
    j["rows"] = ordered_json::array();
    for (const SweepRow& r : rows) {
      const Point p = base.along(cfg.axis, r.value);
      ordered_json row;
      row[header[0]] = json_real(r.value);
      row[header[1]] = json_real(r.summary.gamma_star);
      row[header[2]] = json_real(r.summary.accuracy);
      row[header[3]] = json_real(r.summary.accuracy - p.alpha);
      row[header[4]] = json_real(r.summary.adoption_value);
      row[header[5]] = json_real(r.dgamma);
      row[header[6]] = json_real(r.summary.residual);
      j["rows"].push_back(std::move(row));
    }
    emit(cfg, j.dump(2) + "\n");
    return kExitOk;
  }

  std::string text = csv_row({header.begin(), header.end()});
  for (const SweepRow& r : rows) {
    const Point p = base.along(cfg.axis, r.value);
    text += csv_row({real(r.value), real(r.summary.gamma_star),
                     real(r.summary.accuracy), real(r.summary.accuracy - p.alpha),
                     real(r.summary.adoption_value), real(r.dgamma),
                     real(r.summary.residual)});
  }
  emit(cfg, text);
  return kExitOk;
}

int cmd_simulate(const RunConfig& cfg) {
  const Params params = make_params(cfg.ul, cfg.uh, cfg.alpha);
  double gamma = 0.0;
  if (cfg.gamma) {
    gamma = *cfg.gamma;
  } else {
    gamma = summary_of(solve(params.get(), cfg.tol).get()).gamma_star;
  }
  const std::uint64_t n = cfg.n.value_or(kSimulateDraws);
  std::cerr << "# seed = " << cfg.seed << "\n";

  av_sim_report* raw = nullptr;
  check(av_simulate(params.get(), gamma, n, cfg.seed, &raw));
  const Report report(raw);
  const char* json = nullptr;
  check(av_sim_report_json(report.get(), &json));

  if (cfg.format == "csv") {
    std::cerr << cfg.echo("simulate");
    const ordered_json doc = ordered_json::parse(json);
    std::string text = csv_row({"type", "s", "a", "omega", "m", "count",
                                "frequency", "se"});
    for (const auto& cell : doc.at("empirical_joint")) {
      auto num = [&](const char* key) {
        const auto& v = cell.at(key);
        return v.is_null() ? std::string("nan") : real(v.get<double>());
      };
      text += csv_row({cell.at("type").get<std::string>(),
                       cell.at("s").get<std::string>(),
                       cell.at("a").get<std::string>(),
                       cell.at("omega").get<std::string>(),
                       cell.at("m").get<std::string>(),
                       std::to_string(cell.at("count").get<std::uint64_t>()),
                       num("frequency"), num("se")});
    }
    emit(cfg, text);
  } else {
    emit(cfg, json);
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
  const Params params = make_params(cfg.ul, cfg.uh, cfg.alpha);
  av_verify_options options;
  av_verify_options_default(&options);
  options.grid = cfg.grid.c_str();
  if (cfg.n == 0U) throw CliError{kExitInvalid, "n must be at least 1"};
  options.mc_draws = cfg.n.value_or(kVerifyDraws);
  options.seed = cfg.seed;
  options.flip_follow_advantage_sign = cfg.flip_g ? 1 : 0;

  av_ledger* raw = nullptr;
  check(av_verify(params.get(), &options, &raw));
  const Ledger ledger(raw);

  struct Line {
    std::string claim;
    bool passed;
    std::string detail;
  };
  std::vector<Line> lines;
  for (std::size_t i = 0; i < av_ledger_size(ledger.get()); ++i) {
    const char* claim = nullptr;
    const char* detail = nullptr;
    int passed = 0;
    check(av_ledger_entry(ledger.get(), i, &claim, &passed, &detail));
    lines.push_back({claim, passed != 0, detail});
  }
  const bool all = av_ledger_all_passed(ledger.get()) != 0;
  const std::size_t points = av_ledger_points(ledger.get());

  std::string text;
  if (cfg.format == "json") {
    ordered_json j;
    j["config"] = cfg.to_json("verify");
    j["points"] = points;
    j["passed"] = all;
    j["entries"] = ordered_json::array();
    for (const Line& l : lines)
      j["entries"].push_back({{"claim", l.claim}, {"passed", l.passed}, {"detail", l.detail}});
    text = j.dump(2) + "\n";
  } else if (cfg.format == "csv") {
    std::cerr << cfg.echo("verify");
    text = csv_row({"status", "claim", "detail"});
    for (const Line& l : lines)
      text += csv_row({l.passed ? "PASS" : "FAIL", l.claim, l.detail});
  } else {
    std::cerr << cfg.echo("verify");
    for (const Line& l : lines)
      text += std::string(l.passed ? "PASS  " : "FAIL  ") + l.claim + "  [" +
              l.detail + "]\n";
    std::size_t failures = 0;
    for (const Line& l : lines) failures += l.passed ? 0 : 1;
    text += std::to_string(lines.size() - failures) + "/" +
            std::to_string(lines.size()) + " claims hold over " +
            std::to_string(points) + " parameter point(s)\n";
  }
  emit(cfg, text);
  return all ? kExitOk : kExitFalsified;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibrium solver and verifier for algorithm aversion", "aversion"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read flat `key = value` options from a file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  RunConfig cfg;
  app.add_option("--ul", cfg.ul, "Low-type signal precision")->required();
  app.add_option("--uh", cfg.uh, "High-type signal precision")->required();
  app.add_option("--alpha", cfg.alpha, "Algorithm signal precision")->required();
  app.add_option("--tol", cfg.tol, "Solver bracket width")->capture_default_str();
  app.add_option("--n", cfg.n, "Monte Carlo draws");
  app.add_option("--seed", cfg.seed, "Monte Carlo seed")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Override the low type's follow probability");
  app.add_option("--axis", cfg.axis, "Sweep axis")
      ->check(CLI::IsMember({"alpha", "upsilon_L", "upsilon_H"}))
      ->capture_default_str();
  app.add_option("--from", cfg.from, "Sweep start");
  app.add_option("--to", cfg.to, "Sweep end");
  app.add_option("--points", cfg.points, "Sweep points")->capture_default_str();
  app.add_option("--grid", cfg.grid, "Verification grid")
      ->check(CLI::IsMember({"point", "coarse", "dense"}))
      ->capture_default_str();
  app.add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--out", cfg.out, "Write output to this file");

  auto* solve_cmd = app.add_subcommand("solve", "Solve the informative equilibrium");
  auto* sweep_cmd = app.add_subcommand("sweep", "Solve along one parameter axis");
  auto* simulate_cmd = app.add_subcommand("simulate", "Monte Carlo simulation of the game");
  auto* verify_cmd = app.add_subcommand("verify", "Check every analytic claim");
  verify_cmd->add_flag("--self-test-flip-g", cfg.flip_g)->group("");
  for (auto* sub : {solve_cmd, sweep_cmd, simulate_cmd, verify_cmd}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalid;
  }
  if (auto* opt = app.get_option("--config"); opt->count() > 0)
    cfg.config = opt->as<std::string>();

  if (cfg.format.empty()) {
    if (simulate_cmd->parsed()) cfg.format = "json";
    else if (verify_cmd->parsed()) cfg.format = "text";
    else cfg.format = "csv";
  }

  try {
    if (sweep_cmd->parsed()) {
      if (app.count("--from") == 0 || app.count("--to") == 0)
        throw CliError{kExitInvalid, "sweep needs --from and --to"};
      return cmd_sweep(cfg);
    }
    if (simulate_cmd->parsed()) return cmd_simulate(cfg);
    if (verify_cmd->parsed()) return cmd_verify(cfg);
    return cmd_solve(cfg);
  } catch (const CliError& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.status;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFalsified;
  }
}
