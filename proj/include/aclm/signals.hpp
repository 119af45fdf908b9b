#pragma once

// Uniformly sampled input series and the synthetic generators used when a
// scenario does not supply its own files.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace aclm {

enum class Unit { Watt, Celsius, WattPerSquareMeter, PerUnit };

/// Column-name suffix that declares the unit, e.g. "_w" for watts.
std::string_view unit_suffix(Unit u);

struct SignalSeries {
  std::string name;
  Unit unit = Unit::Watt;
  std::int64_t cadence_s = 1;
  std::int64_t start_s = 0;
  std::vector<double> samples;

  std::int64_t end_s() const {
    return start_s + cadence_s * (static_cast<std::int64_t>(samples.size()) - 1);
  }

  /// Sample stamped exactly at t; throws SignalGap otherwise.
  double at(std::int64_t t) const;

  /// Keeps every (cadence / cadence_s)-th sample. The new cadence must be a
  /// positive multiple of the current one.
  SignalSeries decimate(std::int64_t cadence) const;

  /// Throws ValidationError on non-finite samples, a non-positive cadence,
  /// or per-unit values outside [-1, 1].
  void validate() const;
};

/// Knobs for the synthetic day. Defaults describe a hot summer day over a
/// small microgrid with a wind farm.
struct SyntheticSettings {
  double outdoor_min_c = 33.0;
  double outdoor_max_c = 35.0;
  double outdoor_min_hour = 5.0;
  double outdoor_max_hour = 14.0;

  double solar_peak = 800.0;       // W/m^2
  double solar_noon_hour = 13.0;
  double daylight_hours = 14.0;

  double load_mean_w = 1.5e6;
  double load_diurnal_fraction = 0.05;
  double load_noise_w = 5.0e3;
  double load_noise_tau_s = 600.0;

  double wind_mean_w = 1.0e6;
  double wind_slow_w = 0.1e6;
  double wind_slow_period_s = 12.0 * 3600.0;
  double wind_fast_w = 50.0e3;
  double wind_fast_tau_s = 180.0;

  double regd_tau_s = 300.0;
  std::int64_t regd_block_s = 900;  // signal has zero mean over each block
};

/// Each generator emits samples at t = 0, cadence, ..., horizon.
SignalSeries synth_outdoor_temp(const SyntheticSettings& s, std::int64_t horizon_s,
                                std::int64_t cadence_s);
SignalSeries synth_solar(const SyntheticSettings& s, std::int64_t horizon_s,
                         std::int64_t cadence_s);
SignalSeries synth_load(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed);
SignalSeries synth_wind(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed);
SignalSeries synth_regd(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed);

}  // namespace aclm
