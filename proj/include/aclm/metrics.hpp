#pragma once

// Post-processing over finished traces.

#include <cstdint>
#include <span>
#include <vector>

#include "aclm/engine.hpp"

namespace aclm {

/// Windowed variability: for each window of window_s / dt_s consecutive
/// samples, (max - min) / base. Throws ValidationError when the window does
/// not fit in the series or is not a positive multiple of dt_s, and
/// InvalidParameter when base is not positive.
std::vector<double> fluctuation_rate(std::span<const double> series, std::int64_t dt_s,
                                     std::int64_t window_s, double base);

double mean(std::span<const double> xs);

/// unit x day off->on counts. Days are 24 h blocks from simulation start;
/// transitions after the last complete day are not counted.
std::vector<std::vector<int>> daily_switching_cycles(const SimTrace& trace);

std::vector<int> switching_cycles(const SimTrace& trace, std::size_t unit);

/// histogram[c] = number of unit-days with exactly c cycles.
std::vector<int> cycle_histogram(const std::vector<std::vector<int>>& daily);

double mean_daily_cycles(const std::vector<std::vector<int>>& daily);

struct SoaStats {
  std::vector<double> average;
  std::vector<double> min;
  std::vector<double> max;
};

/// Uses the per-unit samples when recorded, the per-step summary otherwise.
SoaStats soa_stats(const SimTrace& trace);

/// RMS of (aggregate - target) over steps at or after the warm-up; NaN if
/// there are none.
double tracking_rmse(const SimTrace& trace);

struct LockoutViolation {
  std::uint32_t unit = 0;
  std::int64_t from_s = 0;
  std::int64_t to_s = 0;
  bool was_on = false;
};

/// Dwell intervals between consecutive transitions of a unit that are
/// shorter than its lock duration. The interval before a unit's first
/// transition and the open one at the end are not checked.
std::vector<LockoutViolation> lockout_violations(const SimTrace& trace);

struct MetricsReport {
  Service service = Service::FluctuationMitigation;
  double rho = 0.0;
  std::uint64_t seed = 0;
  std::size_t fleet_size = 0;
  std::int64_t warmup_s = 0;
  std::int64_t window_s = 0;

  // Fluctuation mitigation only; windows start at or after warm-up.
  std::vector<double> fluctuation_controlled;
  std::vector<double> fluctuation_uncontrolled;
  double max_fluctuation_controlled = 0.0;
  double max_fluctuation_uncontrolled = 0.0;

  std::vector<double> avg_soa;
  std::vector<double> soa_min;
  std::vector<double> soa_max;
  double mean_envelope_width = 0.0;  // post warm-up
  double mean_abs_avg_soa = 0.0;     // post warm-up

  std::vector<std::vector<int>> daily_cycles;
  std::vector<int> histogram;
  double mean_daily_cycles = 0.0;
  std::vector<std::vector<int>> reference_daily_cycles;
  std::vector<int> reference_histogram;
  double reference_mean_daily_cycles = 0.0;

  double tracking_rmse = 0.0;
  double mean_locked_w = 0.0;     // post warm-up
  double mean_available_w = 0.0;  // post warm-up
  std::size_t lockout_violations = 0;
};

MetricsReport compute_report(const SimTrace& trace);

}  // namespace aclm
