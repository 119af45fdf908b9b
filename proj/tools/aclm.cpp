// aclm: run market-coordinated air-conditioner fleet scenarios.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aclm/engine.hpp"
#include "aclm/error.hpp"
#include "aclm/io.hpp"
#include "aclm/metrics.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kUsageError = 2;

struct MissingInput : std::runtime_error {
  using std::runtime_error::runtime_error;
};

aclm::ScenarioConfig read_scenario(const std::string& path) {
  if (!fs::exists(path)) throw MissingInput("scenario file not found: " + path);
  return aclm::load_scenario(path);
}

void print_report(const aclm::MetricsReport& r) {
  std::printf("service=%s rho=%g seed=%llu units=%zu\n", aclm::to_string(r.service), r.rho,
              static_cast<unsigned long long>(r.seed), r.fleet_size);
  std::printf("tracking_rmse_w=%.6g lockout_violations=%zu\n", r.tracking_rmse,
              r.lockout_violations);
  std::printf("mean_daily_cycles=%.4g reference=%.4g\n", r.mean_daily_cycles,
              r.reference_mean_daily_cycles);
  std::printf("soa: mean|avg|=%.4g mean_envelope_width=%.4g\n", r.mean_abs_avg_soa,
              r.mean_envelope_width);
  if (!r.fluctuation_controlled.empty()) {
    std::printf("fluctuation max: controlled=%.4g uncontrolled=%.4g\n",
                r.max_fluctuation_controlled, r.max_fluctuation_uncontrolled);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Market-based control of air-conditioning loads"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<double> rho;
  std::optional<std::size_t> fleet_size;
  bool per_unit = false;

  auto* run = app.add_subcommand("run", "Simulate a scenario and write trace + report");
  run->add_option("scenario", scenario, "Scenario JSON file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--rho", rho, "Override the bid offset parameter (0..1)");
  run->add_option("--out-dir", out_dir, "Output directory")->capture_default_str();
  run->add_option("--fleet-size", fleet_size, "Override the number of units");
  run->add_flag("--per-unit", per_unit, "Record per-unit state columns");

  std::string baseline_scenario;
  std::string baseline_out = "out";
  auto* baseline = app.add_subcommand("baseline", "Estimate the hourly baseline load");
  baseline->add_option("scenario", baseline_scenario, "Scenario JSON file")->required();
  baseline->add_option("--out-dir", baseline_out, "Output directory")->capture_default_str();

  std::string trace_dir;
  std::string report_path;
  auto* metrics = app.add_subcommand("metrics", "Recompute the report from a trace directory");
  metrics->add_option("trace-dir", trace_dir, "Directory written by `run`")->required();
  metrics->add_option("--out", report_path, "Report path (default <trace-dir>/report.json)");

  std::string kind;
  std::string signal_out;
  std::uint64_t signal_seed = 1;
  std::int64_t horizon = 86400;
  std::int64_t cadence = 60;
  auto* gen = app.add_subcommand("gen-signals", "Write a synthetic input series");
  gen->add_option("kind", kind, "wind | load | outdoor-temp | solar | regd")
      ->required()
      ->check(CLI::IsMember({"wind", "load", "outdoor-temp", "solar", "regd"}));
  gen->add_option("--out", signal_out, "Output CSV")->required();
  gen->add_option("--seed", signal_seed)->capture_default_str();
  gen->add_option("--horizon", horizon, "Seconds")->capture_default_str();
  gen->add_option("--cadence", cadence, "Seconds between samples")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*run) {
      auto cfg = read_scenario(scenario);
      if (seed) cfg.seed = *seed;
      if (rho) cfg.rho = *rho;
      if (fleet_size) cfg.fleet_size = *fleet_size;
      if (per_unit) cfg.per_unit = true;
      cfg.validate();
      const auto trace = aclm::run_scenario(cfg);
      aclm::write_trace(trace, out_dir);
      const auto report = aclm::compute_report(trace);
      aclm::write_report(report, fs::path(out_dir) / "report.json");
      print_report(report);
    } else if (*baseline) {
      const auto cfg = read_scenario(baseline_scenario);
      const auto fleet = aclm::sample_fleet(cfg.fleet, cfg.fleet_size, cfg.seed);
      const auto signals = aclm::prepare_signals(cfg);
      const auto b = aclm::estimate_baseline(fleet, signals, cfg.dt_s, cfg.horizon_s,
                                             cfg.baseline_deadband);
      fs::create_directories(baseline_out);
      const fs::path path = fs::path(baseline_out) / "baseline.csv";
      std::ofstream out(path);
      out << "time_s,baseline_w\n";
      for (std::size_t h = 0; h < b.hourly_w.size(); ++h) {
        out << h * 3600 << ',' << aclm::format_double(b.hourly_w[h]) << '\n';
      }
      if (!out) throw std::runtime_error("write failed: " + path.string());
      if (b.partial_last_bin) std::cerr << "warning: last hourly bin is partial\n";
      std::printf("reference_mean_daily_cycles=%.4g\n", aclm::mean_daily_cycles(b.daily_cycles));
    } else if (*metrics) {
      if (!fs::exists(fs::path(trace_dir) / "summary.json")) {
        throw MissingInput("no trace in " + trace_dir);
      }
      const auto report = aclm::compute_report(aclm::read_trace(trace_dir));
      aclm::write_report(report, report_path.empty() ? fs::path(trace_dir) / "report.json"
                                                     : fs::path(report_path));
      print_report(report);
    } else if (*gen) {
      const aclm::SyntheticSettings s;
      aclm::SignalSeries series;
      if (kind == "wind") series = aclm::synth_wind(s, horizon, cadence, signal_seed);
      else if (kind == "load") series = aclm::synth_load(s, horizon, cadence, signal_seed);
      else if (kind == "outdoor-temp") series = aclm::synth_outdoor_temp(s, horizon, cadence);
      else if (kind == "solar") series = aclm::synth_solar(s, horizon, cadence);
      else series = aclm::synth_regd(s, horizon, cadence, signal_seed);
      aclm::write_signal(series, signal_out);
    }
  } catch (const MissingInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
