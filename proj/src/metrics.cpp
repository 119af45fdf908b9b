#include "aclm/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "aclm/error.hpp"

namespace aclm {

namespace {

constexpr std::int64_t kDay = 86400;

std::size_t first_post_warmup(const SimTrace& trace) {
  const auto it = std::find_if(trace.steps.begin(), trace.steps.end(), [&](const StepRecord& r) {
    return r.time_s >= trace.config.warmup_s;
  });
  return static_cast<std::size_t>(it - trace.steps.begin());
}

template <class F>
std::vector<double> column(const SimTrace& trace, std::size_t from, F f) {
  std::vector<double> out;
  out.reserve(trace.steps.size() - from);
  for (std::size_t i = from; i < trace.steps.size(); ++i) out.push_back(f(trace.steps[i]));
  return out;
}

double max_or_zero(const std::vector<double>& xs) {
  return xs.empty() ? 0.0 : *std::max_element(xs.begin(), xs.end());
}

}  // namespace

double mean(std::span<const double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

std::vector<double> fluctuation_rate(std::span<const double> series, std::int64_t dt_s,
                                     std::int64_t window_s, double base) {
  if (dt_s <= 0 || window_s <= 0 || window_s % dt_s != 0) {
    throw ValidationError("fluctuation window must be a positive multiple of the step");
  }
  if (!(base > 0.0)) throw InvalidParameter("fluctuation base must be positive");
  const auto w = static_cast<std::size_t>(window_s / dt_s);
  if (w > series.size()) throw ValidationError("fluctuation window longer than the series");

  std::vector<double> out;
  out.reserve(series.size() - w + 1);
  for (std::size_t i = 0; i + w <= series.size(); ++i) {
    const auto [lo, hi] = std::minmax_element(series.begin() + static_cast<std::ptrdiff_t>(i),
                                              series.begin() + static_cast<std::ptrdiff_t>(i + w));
    out.push_back((*hi - *lo) / base);
  }
  return out;
}

std::vector<std::vector<int>> daily_switching_cycles(const SimTrace& trace) {
  const std::int64_t days = trace.config.horizon_s / kDay;
  std::vector<std::vector<int>> out(trace.fleet_size,
                                    std::vector<int>(static_cast<std::size_t>(days), 0));
  for (const SwitchEvent& e : trace.switches) {
    if (!e.on || e.unit >= trace.fleet_size) continue;
    const std::int64_t day = e.time_s / kDay;
    if (day < days) ++out[e.unit][static_cast<std::size_t>(day)];
  }
  return out;
}

std::vector<int> switching_cycles(const SimTrace& trace, std::size_t unit) {
  if (unit >= trace.fleet_size) throw InvalidParameter("unit id out of range");
  return daily_switching_cycles(trace)[unit];
}

std::vector<int> cycle_histogram(const std::vector<std::vector<int>>& daily) {
  std::vector<int> hist;
  for (const auto& unit : daily) {
    for (int c : unit) {
      if (static_cast<std::size_t>(c) >= hist.size()) hist.resize(static_cast<std::size_t>(c) + 1, 0);
      ++hist[static_cast<std::size_t>(c)];
    }
  }
  return hist;
}

double mean_daily_cycles(const std::vector<std::vector<int>>& daily) {
  double sum = 0.0;
  std::size_t count = 0;
  for (const auto& unit : daily) {
    for (int c : unit) {
      sum += c;
      ++count;
    }
  }
  return count == 0 ? std::numeric_limits<double>::quiet_NaN() : sum / static_cast<double>(count);
}

SoaStats soa_stats(const SimTrace& trace) {
  SoaStats s;
  const std::size_t steps = trace.steps.size();
  s.average.reserve(steps);
  s.min.reserve(steps);
  s.max.reserve(steps);
  if (!trace.per_unit.empty()) {
    for (const auto& row : trace.per_unit) {
      double sum = 0.0;
      double lo = row.empty() ? 0.0 : std::numeric_limits<double>::infinity();
      double hi = row.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
      for (const UnitSample& u : row) {
        sum += u.soa;
        lo = std::min(lo, u.soa);
        hi = std::max(hi, u.soa);
      }
      s.average.push_back(row.empty() ? 0.0 : sum / static_cast<double>(row.size()));
      s.min.push_back(lo);
      s.max.push_back(hi);
    }
    return s;
  }
  for (const StepRecord& r : trace.steps) {
    s.average.push_back(r.soa_avg);
    s.min.push_back(r.soa_min);
    s.max.push_back(r.soa_max);
  }
  return s;
}

double tracking_rmse(const SimTrace& trace) {
  const std::size_t from = first_post_warmup(trace);
  if (from >= trace.steps.size()) return std::numeric_limits<double>::quiet_NaN();
  double sq = 0.0;
  for (std::size_t i = from; i < trace.steps.size(); ++i) {
    const double e = trace.steps[i].agg_w - trace.steps[i].target_w;
    sq += e * e;
  }
  return std::sqrt(sq / static_cast<double>(trace.steps.size() - from));
}

std::vector<LockoutViolation> lockout_violations(const SimTrace& trace) {
  std::vector<LockoutViolation> out;
  const double lock_on = trace.config.fleet.lock_on_s;
  const double lock_off = trace.config.fleet.lock_off_s;
  std::vector<std::int64_t> last(trace.fleet_size, -1);
  std::vector<bool> seen(trace.fleet_size, false);
  for (const SwitchEvent& e : trace.switches) {
    if (e.unit >= trace.fleet_size) continue;
    if (seen[e.unit]) {
      // The unit held !e.on since its previous transition.
      const bool was_on = !e.on;
      const double dwell = static_cast<double>(e.time_s - last[e.unit]);
      if (dwell < (was_on ? lock_on : lock_off)) {
        out.push_back({e.unit, last[e.unit], e.time_s, was_on});
      }
    }
    seen[e.unit] = true;
    last[e.unit] = e.time_s;
  }
  return out;
}

MetricsReport compute_report(const SimTrace& trace) {
  const ScenarioConfig& cfg = trace.config;
  MetricsReport r;
  r.service = cfg.service;
  r.rho = cfg.rho;
  r.seed = cfg.seed;
  r.fleet_size = trace.fleet_size;
  r.warmup_s = cfg.warmup_s;
  r.window_s = cfg.fluctuation_window_s;

  const std::size_t from = first_post_warmup(trace);
  const std::size_t window = static_cast<std::size_t>(cfg.fluctuation_window_s / cfg.dt_s);

  if (cfg.service == Service::FluctuationMitigation && trace.steps.size() - from >= window) {
    // Windows start after warm-up; the base is each series' horizon mean.
    const auto tie_all = column(trace, 0, [](const StepRecord& s) { return s.tie_w; });
    const auto tie0_all = column(trace, 0, [](const StepRecord& s) { return s.tie0_w; });
    const std::span<const double> tie(tie_all.begin() + static_cast<std::ptrdiff_t>(from), tie_all.end());
    const std::span<const double> tie0(tie0_all.begin() + static_cast<std::ptrdiff_t>(from), tie0_all.end());
    r.fluctuation_controlled =
        fluctuation_rate(tie, cfg.dt_s, cfg.fluctuation_window_s, mean(tie_all));
    r.fluctuation_uncontrolled =
        fluctuation_rate(tie0, cfg.dt_s, cfg.fluctuation_window_s, mean(tie0_all));
    r.max_fluctuation_controlled = max_or_zero(r.fluctuation_controlled);
    r.max_fluctuation_uncontrolled = max_or_zero(r.fluctuation_uncontrolled);
  }

  SoaStats soa = soa_stats(trace);
  r.avg_soa = std::move(soa.average);
  r.soa_min = std::move(soa.min);
  r.soa_max = std::move(soa.max);
  double width = 0.0;
  double abs_avg = 0.0;
  double locked = 0.0;
  double available = 0.0;
  for (std::size_t i = from; i < trace.steps.size(); ++i) {
    width += r.soa_max[i] - r.soa_min[i];
    abs_avg += std::abs(r.avg_soa[i]);
    locked += trace.steps[i].locked_on_w + trace.steps[i].locked_off_w;
    available += trace.steps[i].available_w;
  }
  const double post = static_cast<double>(trace.steps.size() - from);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  r.mean_envelope_width = post > 0 ? width / post : nan;
  r.mean_abs_avg_soa = post > 0 ? abs_avg / post : nan;
  r.mean_locked_w = post > 0 ? locked / post : nan;
  r.mean_available_w = post > 0 ? available / post : nan;

  r.daily_cycles = daily_switching_cycles(trace);
  r.histogram = cycle_histogram(r.daily_cycles);
  r.mean_daily_cycles = mean_daily_cycles(r.daily_cycles);
  r.reference_daily_cycles = trace.baseline.daily_cycles;
  r.reference_histogram = cycle_histogram(r.reference_daily_cycles);
  r.reference_mean_daily_cycles = mean_daily_cycles(r.reference_daily_cycles);

  r.tracking_rmse = tracking_rmse(trace);
  r.lockout_violations = lockout_violations(trace).size();
  return r;
}

}  // namespace aclm
