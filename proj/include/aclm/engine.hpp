#pragma once

// Per-cycle orchestration: bid -> target -> clear -> respond -> integrate.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "aclm/fleet.hpp"
#include "aclm/signals.hpp"

namespace aclm {

enum class Service { FluctuationMitigation, FrequencyRegulation };

const char* to_string(Service s);
Service service_from_string(const std::string& s);

/// Optional input files; empty paths fall back to the synthetic generators.
struct SignalPaths {
  std::string wind;
  std::string load;
  std::string outdoor_temp;
  std::string solar;
  std::string reg_d;
};

struct ScenarioConfig {
  Service service = Service::FluctuationMitigation;
  std::int64_t dt_s = 60;
  std::int64_t horizon_s = 86400;
  double tau_s = 1800.0;
  double rho = 0.5;
  std::size_t fleet_size = 500;
  double capacity_w = 0.0;  // regulation only
  std::uint64_t seed = 1;
  std::int64_t warmup_s = 3600;
  std::int64_t fluctuation_window_s = 600;
  double baseline_deadband = 1.0;
  bool per_unit = false;
  SignalPaths signals;
  SyntheticSettings synthetic;
  FleetSpec fleet;

  /// Throws InvalidParameter on dt <= 0, a horizon that is not a multiple of
  /// dt, rho outside [0, 1], or other inconsistent settings.
  void validate() const;
  std::int64_t steps() const { return horizon_s / dt_s; }
};

/// Inputs resampled to the control cycle.
struct SignalSet {
  SignalSeries outdoor_temp;
  SignalSeries solar;
  std::optional<SignalSeries> wind;
  std::optional<SignalSeries> load;
  std::optional<SignalSeries> reg_d;
};

/// Loads or synthesizes every signal the service needs and brings it to the
/// control cycle. Throws SignalGap if a series stops short of the horizon.
SignalSet prepare_signals(const ScenarioConfig& cfg);

/// Hourly baseline and the uncontrolled switching reference, both taken
/// from a thermostat-only shadow copy of the fleet.
struct BaselineResult {
  std::vector<double> hourly_w;
  /// The horizon ends inside the last bin.
  bool partial_last_bin = false;
  /// unit x day off->on counts for the shadow fleet.
  std::vector<std::vector<int>> daily_cycles;

  double at(std::int64_t t) const;
};

/// Lockout is honored by the shadow thermostats as well.
BaselineResult estimate_baseline(const std::vector<AclUnit>& fleet, const SignalSet& signals,
                                 std::int64_t dt_s, std::int64_t horizon_s, double deadband);

struct StepRecord {
  std::int64_t time_s = 0;
  double target_w = 0.0;
  double agg_w = 0.0;
  double tie_w = 0.0;       // NaN for regulation runs
  double p_star = 0.0;
  double locked_on_w = 0.0;
  double locked_off_w = 0.0;
  double available_w = 0.0;
  double baseline_w = 0.0;
  double tie0_w = 0.0;      // NaN for regulation runs
  double soa_avg = 0.0;     // over units, unclamped
  double soa_min = 0.0;
  double soa_max = 0.0;
};

struct SwitchEvent {
  std::int64_t time_s = 0;
  std::uint32_t unit = 0;
  bool on = false;
};

struct UnitSample {
  bool on = false;
  double t_air = 0.0;
  double soa = 0.0;
};

struct SimTrace {
  ScenarioConfig config;
  std::size_t fleet_size = 0;
  std::vector<std::uint8_t> initial_on;
  std::vector<StepRecord> steps;
  /// Every on/off transition, in time order.
  std::vector<SwitchEvent> switches;
  /// steps x units; only filled when config.per_unit is set.
  std::vector<std::vector<UnitSample>> per_unit;
  BaselineResult baseline;
};

/// Runs the closed loop. `fleet` supplies the initial states and is not
/// modified. Records are stamped at the start of their cycle: temperatures
/// and SOA are the pre-step values the bids used, on/off is the decision for
/// the cycle.
SimTrace run_scenario(const ScenarioConfig& cfg, const std::vector<AclUnit>& fleet,
                      const SignalSet& signals, const BaselineResult& baseline);

/// Sample fleet, prepare signals, estimate baseline, run.
SimTrace run_scenario(const ScenarioConfig& cfg);

}  // namespace aclm
