// Command-line harness: run the Monte-Carlo experiments, print complexity
// reports, and evaluate the theoretical guarantees.

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tbp/bounds.hpp"
#include "tbp/complexity.hpp"
#include "tbp/errors.hpp"
#include "tbp/experiments.hpp"

namespace {

using nlohmann::json;

// Shortest round-trip formatting, locale-independent by construction.
std::string format_double(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

// JSON has no inf/nan literals; emit null for non-finite values.
json json_number(double value) {
  if (!std::isfinite(value)) return json();
  return json(value);
}

json bound_to_json(const tbp::BoundValue& bound) {
  return json{{"value", json_number(bound.value)},
              {"vacuous", bound.vacuous}};
}

json vector_to_json(const std::vector<double>& values) {
  json arr = json::array();
  for (double v : values) arr.push_back(json_number(v));
  return arr;
}

json complexity_to_json(const tbp::ComplexityReport& report) {
  return json{{"gaps", vector_to_json(report.gaps)},
              {"gaps_tilde", vector_to_json(report.gaps_tilde)},
              {"h1", json_number(report.h1)},
              {"h2", json_number(report.h2)},
              {"h_csar2", json_number(report.h_csar2)},
              {"h_sigma1", json_number(report.h_sigma1)},
              {"h_sigma2", json_number(report.h_sigma2)},
              {"zero_gap", report.zero_gap}};
}

json bounds_to_json(const tbp::BoundsReport& report) {
  return json{
      {"augucb_loss", bound_to_json(report.augucb_loss)},
      {"ucbev_loss", bound_to_json(report.ucbev_loss)},
      {"apt_loss", bound_to_json(report.apt_loss)},
      {"csar_loss", bound_to_json(report.csar_loss)},
      {"regret", json_number(report.regret)},
      {"b", json_number(report.b)},
      {"rho", json_number(report.rho)},
      {"applicability",
       json{{"k_at_least_4", report.k_at_least_4},
            {"rho_is_one_third", report.rho_is_one_third}}}};
}

// Mirrors the derivation the policy factory performs, for the manifest echo.
json roster_entry_to_json(const tbp::RosterEntry& entry,
                          const tbp::ExperimentSpec& spec,
                          const tbp::ComplexityReport& tmpl, double rho) {
  const tbp::PolicyParams& p = entry.params;
  json out{{"label", entry.label}, {"policy", tbp::to_string(p.id)}};
  const double t = static_cast<double>(spec.budget);
  const double k = static_cast<double>(spec.num_arms);
  switch (p.id) {
    case tbp::PolicyId::AugUcb:
      out["rho"] = json_number(rho);
      break;
    case tbp::PolicyId::Apt:
      out["margin"] = json_number(p.apt_margin);
      break;
    case tbp::PolicyId::Ucbe:
      out["a"] = json_number(p.a.value_or((t - k) / tmpl.h1));
      break;
    case tbp::PolicyId::Ucbev:
      out["a"] = json_number(
          p.a.value_or(p.ucbev_multiplier * (t - 2.0 * k) / tmpl.h_sigma1));
      out["multiplier"] = json_number(p.ucbev_multiplier);
      out["plain_width"] = p.ucbev_plain_width;
      break;
    case tbp::PolicyId::Csar:
    case tbp::PolicyId::Ua:
      break;
  }
  return out;
}

std::vector<std::string> split_csv_list(const std::string& text) {
  std::vector<std::string> out;
  std::string token;
  std::istringstream in(text);
  while (std::getline(in, token, ',')) {
    if (!token.empty()) out.push_back(token);
  }
  return out;
}

struct RunOptions {
  int experiment = 1;
  std::optional<std::int64_t> budget;
  int iterations = 500;
  std::uint64_t seed = 0;
  std::string algorithms;  // comma list; empty = experiment roster
  std::string out_dir = ".";
  std::int64_t subsample = 1;
  int parallelism = 1;
  std::string format = "csv";
  std::optional<double> b;
  double rho = 1.0 / 3.0;
};

void write_series_file(const std::filesystem::path& path,
                       const tbp::AggregateSeries& series,
                       std::int64_t subsample, const std::string& format) {
  std::ofstream out(path, std::ios::binary);  // '\n' endings on any platform
  if (!out) {
    throw std::invalid_argument("cannot write output file " + path.string());
  }
  const bool plain = format == "plain";
  const char sep = plain ? ' ' : ',';
  if (!plain) out << "t,error_pct\n";
  const std::int64_t budget = series.budget;
  auto row = [&](std::int64_t t) {
    out << t << sep
        << format_double(series.error_pct[static_cast<std::size_t>(t - 1)])
        << '\n';
  };
  for (std::int64_t t = subsample; t <= budget; t += subsample) row(t);
  if (budget % subsample != 0) row(budget);
  if (!out) {
    throw std::invalid_argument("failed writing output file " +
                                path.string());
  }
}

int cmd_run(const RunOptions& opts) {
  const auto start = std::chrono::steady_clock::now();

  tbp::ExperimentSpec spec = tbp::experiment_spec(opts.experiment);
  if (opts.budget.has_value()) spec.budget = *opts.budget;

  if (!opts.algorithms.empty()) {
    std::vector<tbp::RosterEntry> roster;
    for (const std::string& name : split_csv_list(opts.algorithms)) {
      tbp::PolicyParams params;
      params.id = tbp::parse_policy_id(name);
      roster.push_back(tbp::RosterEntry{name, params});
    }
    if (roster.empty()) {
      throw std::invalid_argument("--algorithms lists no algorithm");
    }
    spec.roster = std::move(roster);
  }
  for (tbp::RosterEntry& entry : spec.roster) entry.params.rho = opts.rho;

  if (opts.format != "csv" && opts.format != "plain") {
    throw std::invalid_argument("--format must be csv or plain");
  }
  if (opts.subsample < 1) {
    throw std::invalid_argument("--subsample must be at least 1");
  }

  const std::filesystem::path out_dir(opts.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) {
    throw std::invalid_argument("cannot create output directory " +
                                out_dir.string() + ": " + ec.message());
  }

  const tbp::ComplexityReport tmpl =
      tbp::complexity_report(tbp::template_instance(spec));
  const double b = opts.b.value_or(
      std::sqrt(std::exp(1.0) / static_cast<double>(spec.budget)));
  const tbp::BoundsReport bounds = tbp::evaluate_bounds(
      tmpl, spec.budget, spec.num_arms, opts.rho, b);

  const std::vector<tbp::AggregateSeries> results =
      tbp::run_batch(spec, opts.iterations, opts.seed, opts.parallelism);

  std::vector<std::string> outputs;
  for (const tbp::AggregateSeries& series : results) {
    // The file name contract is fixed; --format only changes the content.
    const std::string name =
        "expt" + std::to_string(spec.id) + "_" + series.algorithm + ".csv";
    write_series_file(out_dir / name, series, opts.subsample, opts.format);
    outputs.push_back(name);
  }

  json algorithms = json::array();
  for (const tbp::RosterEntry& entry : spec.roster) {
    algorithms.push_back(roster_entry_to_json(entry, spec, tmpl, opts.rho));
  }

  const double duration =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();

  json manifest{{"command", "run"},
                {"experiment", spec.id},
                {"num_arms", spec.num_arms},
                {"threshold", json_number(spec.threshold)},
                {"budget", spec.budget},
                {"iterations", opts.iterations},
                {"seed", opts.seed},
                {"subsample", opts.subsample},
                {"parallelism", opts.parallelism},
                {"format", opts.format},
                {"rho", json_number(opts.rho)},
                {"b", json_number(b)},
                {"algorithms", algorithms},
                {"complexity", complexity_to_json(tmpl)},
                {"uniform_variances", "midpoint"},
                {"theoretical_bounds", bounds_to_json(bounds)},
                {"outputs", outputs},
                {"duration_seconds", duration}};

  std::ofstream mout(out_dir / "manifest.json", std::ios::binary);
  if (!mout) {
    throw std::invalid_argument("cannot write manifest.json in " +
                                out_dir.string());
  }
  mout << manifest.dump(2) << '\n';
  return 0;
}

int cmd_complexity(int experiment) {
  const tbp::ExperimentSpec spec = tbp::experiment_spec(experiment);
  const tbp::ComplexityReport report =
      tbp::complexity_report(tbp::template_instance(spec));
  json out = complexity_to_json(report);
  out["experiment"] = spec.id;
  out["num_arms"] = spec.num_arms;
  out["threshold"] = json_number(spec.threshold);
  out["uniform_variances"] = "midpoint";
  std::cout << out.dump(2) << '\n';
  return 0;
}

int cmd_bounds(int experiment, std::optional<std::int64_t> budget,
               std::optional<double> b, double rho) {
  const tbp::ExperimentSpec spec = tbp::experiment_spec(experiment);
  const std::int64_t t = budget.value_or(spec.budget);
  const double b_value =
      b.value_or(std::sqrt(std::exp(1.0) / static_cast<double>(t)));
  const tbp::ComplexityReport report =
      tbp::complexity_report(tbp::template_instance(spec));
  const tbp::BoundsReport bounds =
      tbp::evaluate_bounds(report, t, spec.num_arms, rho, b_value);

  json out{{"experiment", spec.id},
           {"num_arms", spec.num_arms},
           {"budget", t},
           {"uniform_variances", "midpoint"},
           {"theoretical_bounds", bounds_to_json(bounds)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fixed-budget thresholding bandit harness"};
  app.require_subcommand(1);

  RunOptions run_opts;
  std::int64_t run_budget = 0;
  double run_b = 0.0;
  CLI::App* run = app.add_subcommand(
      "run", "Run one experiment and write per-algorithm error series");
  run->add_option("--experiment", run_opts.experiment,
                  "Experiment id (1-6)")
      ->required()
      ->check(CLI::Range(1, 6));
  CLI::Option* budget_opt =
      run->add_option("--budget", run_budget, "Time-step budget T");
  run->add_option("--iterations", run_opts.iterations,
                  "Monte-Carlo iterations")
      ->check(CLI::PositiveNumber);
  run->add_option("--seed", run_opts.seed, "Base seed (iteration k adds k)");
  run->add_option("--algorithms", run_opts.algorithms,
                  "Comma list of algorithms (default: experiment roster)");
  run->add_option("--out", run_opts.out_dir, "Output directory");
  run->add_option("--subsample", run_opts.subsample,
                  "Emit every s-th time step (plus the final one)");
  run->add_option("--parallelism", run_opts.parallelism,
                  "Worker threads for iterations");
  run->add_option("--format", run_opts.format, "csv (default) or plain");
  CLI::Option* run_b_opt =
      run->add_option("--b", run_b, "Regret-bound parameter (>= sqrt(e/T))");
  run->add_option("--rho", run_opts.rho, "Exploration scale rho");

  int cx_experiment = 1;
  CLI::App* complexity = app.add_subcommand(
      "complexity", "Print the complexity report for an experiment");
  complexity->add_option("--experiment", cx_experiment, "Experiment id (1-6)")
      ->required()
      ->check(CLI::Range(1, 6));

  int bd_experiment = 1;
  std::int64_t bd_budget = 0;
  double bd_b = 0.0;
  double bd_rho = 1.0 / 3.0;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Evaluate the theoretical guarantees for an experiment");
  bounds->add_option("--experiment", bd_experiment, "Experiment id (1-6)")
      ->required()
      ->check(CLI::Range(1, 6));
  CLI::Option* bd_budget_opt =
      bounds->add_option("--budget", bd_budget, "Time-step budget T");
  CLI::Option* bd_b_opt =
      bounds->add_option("--b", bd_b, "Regret-bound parameter (>= sqrt(e/T))");
  bounds->add_option("--rho", bd_rho, "Exploration scale rho");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      if (budget_opt->count() > 0) run_opts.budget = run_budget;
      if (run_b_opt->count() > 0) run_opts.b = run_b;
      return cmd_run(run_opts);
    }
    if (complexity->parsed()) return cmd_complexity(cx_experiment);
    if (bounds->parsed()) {
      std::optional<std::int64_t> budget;
      std::optional<double> b;
      if (bd_budget_opt->count() > 0) budget = bd_budget;
      if (bd_b_opt->count() > 0) b = bd_b;
      return cmd_bounds(bd_experiment, budget, b, bd_rho);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 2;
  } catch (...) {
    std::cerr << "internal error\n";
    return 2;
  }
  return 2;  // no subcommand dispatched: unreachable with require_subcommand
}
