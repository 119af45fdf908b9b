// Acceptance suite: one PASS/FAIL line per top-level criterion.
//
// Usage: acceptance [scenario-dir]

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "aclm/engine.hpp"
#include "aclm/io.hpp"
#include "aclm/market.hpp"
#include "aclm/metrics.hpp"
#include "aclm/target_signal.hpp"
#include "aclm/thermal.hpp"
#include "support.hpp"

using namespace aclm;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances and budgets.
constexpr double kRunBudgetS = 60.0;
constexpr double kLockoutS = 300.0;
constexpr int kClearingFleets = 1000;
constexpr int kMaxBids = 10;
constexpr int kThermalDraws = 1000;
constexpr double kEulerSubstepS = 0.01;
constexpr double kEulerTolC = 1e-3;
constexpr double kSplitTolC = 1e-9;
constexpr double kSoaRmsTol = 0.05;
constexpr int kCase1Seeds = 3;
constexpr int kCase2Seeds = 10;
constexpr int kCase2RmseWins = 9;
constexpr double kLpfLinearityTol = 1e-12;
const std::vector<double> kRhos{0.0, 0.25, 0.5, 0.75, 1.0};

int failures = 0;

void report(bool ok, const char* name, const std::string& detail) {
  std::printf("[%s] %s: %s\n", ok ? "PASS" : "FAIL", name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

struct Run {
  SimTrace trace;
  MetricsReport report;
  double seconds = 0.0;
};

Run simulate(ScenarioConfig cfg, double rho, std::uint64_t seed) {
  cfg.rho = rho;
  cfg.seed = seed;
  const auto t0 = std::chrono::steady_clock::now();
  Run r;
  r.trace = run_scenario(cfg);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.report = compute_report(r.trace);
  return r;
}

double rms_diff(const std::vector<double>& a, const std::vector<double>& b, std::size_t from) {
  double s = 0.0;
  for (std::size_t i = from; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s / static_cast<double>(a.size() - from));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// ---------------------------------------------------------------------------

void lockout_safety(const std::vector<Run>& case1, const std::vector<Run>& case2) {
  std::size_t violations = 0;
  double slowest = 0.0;
  std::size_t shortest_ok = 0;
  for (const auto* runs : {&case1, &case2}) {
    for (const Run& r : *runs) {
      violations += lockout_violations(r.trace).size();
      slowest = std::max(slowest, r.seconds);
      shortest_ok += r.trace.config.fleet.lock_on_s == kLockoutS &&
                     r.trace.config.fleet.lock_off_s == kLockoutS && r.trace.fleet_size == 500;
    }
  }
  const std::size_t runs = case1.size() + case2.size();
  report(violations == 0 && slowest < kRunBudgetS && shortest_ok == runs, "lockout_safety",
         fmt("%zu runs (500 units, 5 rho each case), %zu dwell intervals < 300 s, slowest run %.2f s "
             "(budget %.0f s)",
             runs, violations, slowest, kRunBudgetS));
}

void clearing_oracle() {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<int> count(1, kMaxBids), state(0, 3), grid(-8, 8);
  std::uniform_real_distribution<double> quantity(800.0, 6000.0), soa(-1.3, 1.3), rho(0.0, 1.0);
  int mismatches = 0;
  for (int f = 0; f < kClearingFleets; ++f) {
    const int n = count(rng);
    const double r = f % 4 == 0 ? 1.0 : (f % 4 == 1 ? 0.0 : rho(rng));
    std::vector<Bid> bids;
    std::vector<LockState> states;
    double total = 0.0;
    const ComfortBand band{26.0, 28.5, 23.5};
    for (int i = 0; i < n; ++i) {
      SwitchState st;
      st.on = state(rng) % 2 == 0;
      st.elapsed = state(rng) < 2 ? 60.0 : 600.0;
      // Every third fleet uses a coarse temperature grid so bids tie.
      const double s = f % 3 == 0 ? grid(rng) * 0.125 : soa(rng);
      const double t_air = 26.0 + 2.5 * s;
      bids.push_back(make_bid(static_cast<std::size_t>(i), t_air, band, st, r,
                              std::round(quantity(rng))));
      states.push_back(lock_state(st));
      total += bids.back().quantity;
    }
    std::uniform_real_distribution<double> target(-0.1 * total, 1.1 * total);
    const double tgt = f % 7 == 0 ? total : target(rng);
    const auto oracle = testsupport::brute_force_clear(bids, states, tgt);
    const ClearingResult res = clear(build_demand_curve(bids), tgt);
    bool same = res.p_star == oracle.p_star;
    for (std::size_t i = 0; i < bids.size(); ++i) {
      same = same && apply_clearing(bids[i], states[i], res.p_star) == oracle.on[i];
    }
    mismatches += !same;
  }
  report(mismatches == 0, "clearing_oracle",
         fmt("%d random fleets of <= %d bids, %d price/on-set mismatches vs exhaustive search",
             kClearingFleets, kMaxBids, mismatches));
}

void etp_integrator() {
  std::mt19937_64 rng(77);
  std::uniform_real_distribution<double> temp(18.0, 40.0), solar(0.0, 900.0);
  double worst_euler = 0.0, worst_split = 0.0;
  for (int i = 0; i < kThermalDraws; ++i) {
    const HouseParams p = derive_envelope(testsupport::random_house(rng));
    const ThermalState x{temp(rng), temp(rng)};
    const ThermalInputs u = house_inputs(p, temp(rng), solar(rng), i % 2 == 0);
    const ThermalState exact = StepOperator(p, 60.0).advance(x, u);
    const ThermalState ref = testsupport::euler(x, p, u, 60.0, kEulerSubstepS);
    worst_euler = std::max({worst_euler, std::abs(exact.t_air - ref.t_air),
                            std::abs(exact.t_mass - ref.t_mass)});
    const StepOperator half(p, 30.0);
    const ThermalState two = half.advance(half.advance(x, u), u);
    worst_split = std::max({worst_split, std::abs(exact.t_air - two.t_air),
                            std::abs(exact.t_mass - two.t_mass)});
  }
  report(worst_euler < kEulerTolC && worst_split < kSplitTolC, "etp_integrator",
         fmt("%d draws, max |closed form - 10 ms Euler| = %.3g degC (tol %.0e), "
             "max |60 s - 2 x 30 s| = %.3g degC (tol %.0e)",
             kThermalDraws, worst_euler, kEulerTolC, worst_split, kSplitTolC));
}

void case1_reproduction(const std::vector<std::vector<Run>>& by_seed) {
  // (a) controlled below uncontrolled at every post-warm-up window
  std::string a_detail;
  bool a_ok = true;
  // (b) envelope width non-decreasing in rho
  bool b_ok = true;
  std::string b_detail;
  // (c) cycles non-increasing in rho, below the thermostat reference for rho >= 0.5
  bool c_ok = true;
  std::string c_detail;
  // (d) average SOA nearly independent of rho
  double worst_rms = 0.0;

  for (const auto& runs : by_seed) {
    const std::uint64_t seed = runs.front().report.seed;
    a_detail += fmt(" seed %llu:", static_cast<unsigned long long>(seed));
    b_detail += fmt(" seed %llu:", static_cast<unsigned long long>(seed));
    c_detail += fmt(" seed %llu (ref %.1f):", static_cast<unsigned long long>(seed),
                    runs.front().report.reference_mean_daily_cycles);
    for (std::size_t i = 0; i < runs.size(); ++i) {
      const MetricsReport& r = runs[i].report;
      std::size_t bad = 0;
      for (std::size_t w = 0; w < r.fluctuation_controlled.size(); ++w) {
        bad += !(r.fluctuation_controlled[w] < r.fluctuation_uncontrolled[w]);
      }
      a_ok = a_ok && bad == 0 && !r.fluctuation_controlled.empty();
      a_detail += fmt(" %zu/%zu", bad, r.fluctuation_controlled.size());

      b_detail += fmt(" %.3f", r.mean_envelope_width);
      c_detail += fmt(" %.1f", r.mean_daily_cycles);
      if (i > 0) {
        const MetricsReport& prev = runs[i - 1].report;
        b_ok = b_ok && r.mean_envelope_width >= prev.mean_envelope_width;
        c_ok = c_ok && r.mean_daily_cycles <= prev.mean_daily_cycles;
      }
      if (r.rho >= 0.5) c_ok = c_ok && r.mean_daily_cycles < r.reference_mean_daily_cycles;

      const std::size_t from = static_cast<std::size_t>(r.warmup_s / runs[i].trace.config.dt_s);
      for (std::size_t j = 0; j < i; ++j) {
        worst_rms = std::max(worst_rms, rms_diff(r.avg_soa, runs[j].report.avg_soa, from));
      }
    }
    a_detail += ";";
    b_detail += ";";
    c_detail += ";";
  }
  report(a_ok, "case1_fluctuation_reduced",
         "windows with controlled >= uncontrolled, per rho 0..1:" + a_detail);
  report(b_ok, "case1_soa_envelope_widens", "mean envelope width per rho 0..1:" + b_detail);
  report(c_ok, "case1_switching_reduced", "mean daily cycles per rho 0..1:" + c_detail);
  report(worst_rms < kSoaRmsTol, "case1_avg_soa_invariant",
         fmt("max pairwise RMS of average SOA across rho = %.4f (tol %.2f)", worst_rms, kSoaRmsTol));
}

void case2_reproduction(const std::vector<Run>& rho0, const std::vector<Run>& rho1) {
  int rmse_wins = 0, soa_wins = 0, above_ref = 0;
  std::string detail;
  for (std::size_t s = 0; s < rho0.size(); ++s) {
    const MetricsReport& a = rho0[s].report;
    const MetricsReport& b = rho1[s].report;
    rmse_wins += b.tracking_rmse < a.tracking_rmse;
    soa_wins += b.mean_abs_avg_soa < a.mean_abs_avg_soa;
    above_ref += b.mean_daily_cycles > b.reference_mean_daily_cycles;
    detail += fmt(" [%llu: rmse %.1f/%.1f kW, |soa| %.3f/%.3f, cycles %.1f ref %.1f]",
                  static_cast<unsigned long long>(a.seed), a.tracking_rmse / 1e3,
                  b.tracking_rmse / 1e3, a.mean_abs_avg_soa, b.mean_abs_avg_soa,
                  b.mean_daily_cycles, b.reference_mean_daily_cycles);
  }
  const int n = static_cast<int>(rho0.size());
  report(rmse_wins >= kCase2RmseWins, "case2_tracking_improves",
         fmt("rmse(rho=1) < rmse(rho=0) on %d/%d paired seeds (need %d)", rmse_wins, n,
             kCase2RmseWins));
  report(soa_wins == n, "case2_avg_soa_near_zero",
         fmt("mean |avg SOA| smaller at rho=1 on %d/%d paired seeds", soa_wins, n));
  report(above_ref == n, "case2_switching_above_reference",
         fmt("rho=1 daily cycles above thermostat reference on %d/%d seeds;", above_ref, n) + detail);
}

void lpf_algebra() {
  const double alpha = lpf_alpha(1800.0, 60.0);
  const bool alpha_ok = alpha == 30.0 / 31.0;

  LpfState dc{alpha, {}};
  double y = 0.0;
  for (int k = 0; k < 5000; ++k) y = lpf_step(dc, 3.7e6);
  LpfState dc0{alpha, 0.0};
  double y0 = 0.0;
  for (int k = 0; k < 5000; ++k) y0 = lpf_step(dc0, 3.7e6);
  const double dc_err = std::max(std::abs(y - 3.7e6), std::abs(y0 - 3.7e6)) / 3.7e6;

  std::mt19937_64 rng(3);
  std::normal_distribution<double> g(4.0e6, 2.0e5);
  LpfState fx{alpha, {}}, fy{alpha, {}}, fz{alpha, {}};
  const double a = 1.7, b = -0.6;
  double worst = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double x = g(rng), z = g(rng);
    const double ox = lpf_step(fx, x), oz = lpf_step(fy, z), oc = lpf_step(fz, a * x + b * z);
    const double scale = std::abs(a * ox) + std::abs(b * oz);
    worst = std::max(worst, std::abs(oc - (a * ox + b * oz)) / scale);
  }
  report(alpha_ok && dc_err < kLpfLinearityTol && worst < kLpfLinearityTol, "lpf_algebra",
         fmt("alpha(30 min, 1 min) = %.17g (30/31 exact: %s), DC gain error %.2g, max relative "
             "linearity error %.2g (tol %.0e)",
             alpha, alpha_ok ? "yes" : "no", dc_err, worst, kLpfLinearityTol));
}

void determinism(const ScenarioConfig& case1, const ScenarioConfig& case2) {
  const fs::path root = fs::temp_directory_path() / "aclm_acceptance_determinism";
  fs::remove_all(root);
  bool same = true;
  std::size_t bytes = 0;
  int idx = 0;
  for (ScenarioConfig cfg : {case1, case2}) {
    cfg.per_unit = idx == 0;
    const fs::path a = root / fmt("%d_a", idx), b = root / fmt("%d_b", idx);
    write_trace(run_scenario(cfg), a);
    write_trace(run_scenario(cfg), b);
    for (const char* f : {"trace.csv", "switches.csv", "summary.json"}) {
      const std::string x = slurp(a / f), y = slurp(b / f);
      same = same && !x.empty() && x == y;
      bytes += x.size();
    }
    ++idx;
  }
  fs::remove_all(root);
  report(same, "determinism",
         fmt("Case-1 (per-unit) and Case-2 traces written twice, %zu bytes compared, %s", bytes,
             same ? "identical" : "DIFFERENT"));
}

}  // namespace

int main(int argc, char** argv) {
  const fs::path dir = argc > 1 ? fs::path(argv[1]) : fs::path(ACLM_SCENARIO_DIR);
  const ScenarioConfig case1 = load_scenario(dir / "case1.json");
  const ScenarioConfig case2 = load_scenario(dir / "case2.json");

  clearing_oracle();
  etp_integrator();
  lpf_algebra();

  std::vector<std::vector<Run>> case1_runs;
  for (int s = 0; s < kCase1Seeds; ++s) {
    std::vector<Run> runs;
    for (double rho : kRhos) runs.push_back(simulate(case1, rho, case1.seed + static_cast<std::uint64_t>(s)));
    case1_runs.push_back(std::move(runs));
  }

  std::vector<Run> case2_sweep;
  for (double rho : kRhos) case2_sweep.push_back(simulate(case2, rho, case2.seed));
  lockout_safety(case1_runs.front(), case2_sweep);
  case1_reproduction(case1_runs);

  std::vector<Run> rho0, rho1;
  for (int s = 0; s < kCase2Seeds; ++s) {
    const std::uint64_t seed = case2.seed + static_cast<std::uint64_t>(s);
    if (s == 0) {
      rho0.push_back(std::move(case2_sweep.front()));
      rho1.push_back(std::move(case2_sweep.back()));
    } else {
      rho0.push_back(simulate(case2, 0.0, seed));
      rho1.push_back(simulate(case2, 1.0, seed));
    }
  }
  case2_reproduction(rho0, rho1);

  determinism(case1, case2);

  std::printf("%s: %d criterion line(s) failed\n", failures ? "FAILED" : "OK", failures);
  return failures ? 1 : 0;
}
