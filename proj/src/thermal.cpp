#include "aclm/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aclm/error.hpp"

namespace aclm {

namespace {

void require_positive(double v, const char* name) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw InvalidParameter(std::string(name) + " must be positive, got " + std::to_string(v));
  }
}

}  // namespace

double envelope_conductance(const HouseParams& p, const GeometryRules& rules) {
  const double opaque_wall = p.wall_area - p.window_area - p.door_area;
  double ua = p.floor_area / p.r_roof + p.floor_area / p.r_floor + opaque_wall / p.r_wall +
              p.door_area / p.r_door;
  if (p.window_area > 0.0) ua += p.window_area / p.r_window;
  const double volumetric_heat = rules.air_density * rules.air_specific_heat;
  ua += p.air_changes * p.volume * volumetric_heat / 3600.0;
  return ua;
}

HouseParams derive_envelope(const HouseSample& s, const GeometryRules& rules) {
  require_positive(s.floor_area, "floor_area");
  require_positive(s.r_roof, "r_roof");
  require_positive(s.r_wall, "r_wall");
  require_positive(s.r_floor, "r_floor");
  require_positive(s.r_window, "r_window");
  require_positive(s.r_door, "r_door");
  require_positive(s.eer, "eer");
  require_positive(rules.ceiling_height, "ceiling_height");
  require_positive(rules.oversizing, "oversizing");
  if (s.air_changes < 0.0) throw InvalidParameter("air_changes must be non-negative");
  if (s.window_wall_ratio < 0.0 || s.window_wall_ratio >= 1.0) {
    throw InvalidParameter("window_wall_ratio must lie in [0, 1)");
  }
  if (s.shgc < 0.0 || s.shgc > 1.0) throw InvalidParameter("shgc must lie in [0, 1]");

  HouseParams p;
  p.floor_area = s.floor_area;
  p.air_changes = s.air_changes;
  p.window_wall_ratio = s.window_wall_ratio;
  p.shgc = s.shgc;
  p.eer = s.eer;
  p.r_roof = s.r_roof;
  p.r_wall = s.r_wall;
  p.r_floor = s.r_floor;
  p.r_window = s.r_window;
  p.r_door = s.r_door;

  const double side = std::sqrt(s.floor_area);
  p.volume = s.floor_area * rules.ceiling_height;
  p.wall_area = 4.0 * side * rules.ceiling_height;
  p.window_area = s.window_wall_ratio * p.wall_area;
  p.door_area = rules.door_area;
  if (p.wall_area - p.window_area - p.door_area <= 0.0) {
    throw InvalidParameter("window and door area exceed the gross wall area");
  }

  p.ua = envelope_conductance(p, rules);
  p.hm = rules.interior_film_coeff *
         (rules.interior_wall_ratio * p.wall_area + s.floor_area);

  const double air_capacity = p.volume * rules.air_density * rules.air_specific_heat;
  p.c_air = rules.c_air_override.value_or(rules.air_capacity_multiplier * air_capacity);
  p.c_mass = rules.c_mass_override.value_or(rules.mass_to_air_capacity * p.c_air);
  require_positive(p.c_air, "c_air");
  require_positive(p.c_mass, "c_mass");

  p.internal_gain = rules.internal_gain;
  p.solar_mass_fraction = rules.solar_mass_fraction;

  const double design_load = p.ua * (rules.design_outdoor_temp - s.t_desired) +
                             rules.internal_gain +
                             rules.design_solar * s.shgc * p.window_area;
  p.q_cool_rated = rules.oversizing * design_load;
  require_positive(p.q_cool_rated, "q_cool_rated");
  p.p_rated = p.q_cool_rated / s.eer;
  return p;
}

ThermalInputs house_inputs(const HouseParams& p, double t_out, double solar, bool hvac_on) {
  const double solar_gain = solar * p.shgc * p.window_area;
  ThermalInputs u;
  u.t_out = t_out;
  u.q_mass = p.solar_mass_fraction * solar_gain;
  u.q_air = p.internal_gain + (1.0 - p.solar_mass_fraction) * solar_gain -
            (hvac_on ? p.q_cool_rated : 0.0);
  return u;
}

StepOperator::StepOperator(const HouseParams& p, double dt)
    : dt_(dt), c_air_(p.c_air), c_mass_(p.c_mass), ua_(p.ua), hm_(p.hm) {
  if (!(dt > 0.0)) throw InvalidParameter("dt must be positive");
  require_positive(p.c_air, "c_air");
  require_positive(p.c_mass, "c_mass");
  require_positive(p.ua, "ua");
  require_positive(p.hm, "hm");

  const double a11 = -(ua_ + hm_) / c_air_;
  const double a12 = hm_ / c_air_;
  const double a21 = hm_ / c_mass_;
  const double a22 = -hm_ / c_mass_;

  // exp(At) = e^{mt} [cosh(st) I + sinh(st)/s (A - mI)], m = tr/2,
  // s^2 = m^2 - det. The RC network has real, distinct eigenvalues.
  const double m = 0.5 * (a11 + a22);
  const double det = a11 * a22 - a12 * a21;
  const double s = std::sqrt(std::max(m * m - det, 0.0));
  const double em = std::exp(m * dt);
  const double ch = std::cosh(s * dt);
  const double sh_over_s = s * dt < 1e-12 ? dt : std::sinh(s * dt) / s;

  phi_[0][0] = em * (ch + sh_over_s * (a11 - m));
  phi_[0][1] = em * (sh_over_s * a12);
  phi_[1][0] = em * (sh_over_s * a21);
  phi_[1][1] = em * (ch + sh_over_s * (a22 - m));
}

ThermalState StepOperator::steady_state(const ThermalInputs& u) const {
  // Mass balance forces T_m = T_a + q_mass/hm; the air node then settles
  // where envelope loss absorbs every gain.
  const double t_air = u.t_out + (u.q_air + u.q_mass) / ua_;
  return {t_air, t_air + u.q_mass / hm_};
}

ThermalState StepOperator::advance(const ThermalState& x, const ThermalInputs& u) const {
  const ThermalState ss = steady_state(u);
  const double da = x.t_air - ss.t_air;
  const double dm = x.t_mass - ss.t_mass;
  return {ss.t_air + phi_[0][0] * da + phi_[0][1] * dm,
          ss.t_mass + phi_[1][0] * da + phi_[1][1] * dm};
}

ThermalState step_house(const ThermalState& x, const HouseParams& p, double t_out,
                        double solar, bool hvac_on, double dt) {
  return StepOperator(p, dt).advance(x, house_inputs(p, t_out, solar, hvac_on));
}

bool thermostat_step(const ThermalState& x, double setpoint, double deadband, bool on) {
  if (!(deadband > 0.0)) throw InvalidParameter("deadband must be positive");
  if (x.t_air > setpoint + deadband) return true;
  if (x.t_air < setpoint - deadband) return false;
  return on;
}

}  // namespace aclm
