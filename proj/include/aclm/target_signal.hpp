#pragma once

// Fleet target power for the two ancillary services.

#include <optional>

namespace aclm {

struct PowerBalanceInputs {
  double p_wind = 0.0;     // W
  double p_load = 0.0;     // W, uncontrollable load
  double p_ac_base = 0.0;  // W, fleet baseline
  double p_ac = 0.0;       // W, actual fleet draw
};

/// Tie-line import with the fleet as actually operated.
double tie_line_power(const PowerBalanceInputs& in);

/// Tie-line import had the fleet followed its baseline.
double uncontrolled_tie_line_power(const PowerBalanceInputs& in);

/// tau / (tau + dt). Throws InvalidParameter if dt <= 0 or tau < 0.
double lpf_alpha(double tau, double dt);

struct LpfState {
  double alpha = 0.0;
  /// Previous output. Empty before the first sample, in which case the
  /// filter starts at its input.
  std::optional<double> prev;
};

double lpf_step(LpfState& state, double input);

/// Baseline corrected by the gap between smoothed and raw tie-line power.
double fm_target(double p_ac_base, double p_g_lpf, double p_g0);

/// Generator sign convention: a positive regulation signal asks the fleet to
/// consume less. Throws ValidationError if |reg_d| > 1, InvalidParameter if
/// capacity < 0.
double reg_target(double p_ac_base, double reg_d, double capacity);

}  // namespace aclm
