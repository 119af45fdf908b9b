#include "aclm/target_signal.hpp"

#include <cmath>
#include <string>

#include "aclm/error.hpp"

namespace aclm {

double tie_line_power(const PowerBalanceInputs& in) { return in.p_ac + in.p_load - in.p_wind; }

double uncontrolled_tie_line_power(const PowerBalanceInputs& in) {
  return in.p_ac_base + in.p_load - in.p_wind;
}

double lpf_alpha(double tau, double dt) {
  if (!(dt > 0.0)) throw InvalidParameter("filter step dt must be positive");
  if (!(tau >= 0.0)) throw InvalidParameter("filter time constant must be non-negative");
  return tau / (tau + dt);
}

double lpf_step(LpfState& state, double input) {
  const double out =
      state.prev ? state.alpha * *state.prev + (1.0 - state.alpha) * input : input;
  state.prev = out;
  return out;
}

double fm_target(double p_ac_base, double p_g_lpf, double p_g0) {
  return p_ac_base + p_g_lpf - p_g0;
}

double reg_target(double p_ac_base, double reg_d, double capacity) {
  if (!(std::abs(reg_d) <= 1.0)) {
    throw ValidationError("regulation signal must lie in [-1, 1], got " + std::to_string(reg_d));
  }
  if (!(capacity >= 0.0)) throw InvalidParameter("regulation capacity must be non-negative");
  return p_ac_base - reg_d * capacity;
}

}  // namespace aclm
