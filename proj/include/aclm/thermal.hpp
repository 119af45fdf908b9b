#pragma once

// Second-order equivalent thermal parameter (ETP) house model.
//
//   C_a dT_a/dt = UA (T_out - T_a) + H_m (T_m - T_a) + Q_air
//   C_m dT_m/dt = H_m (T_a - T_m) + Q_mass
//
// Q_air carries internal gain, the air share of solar gain and the cooling
// extraction; Q_mass carries the remaining solar gain. Inputs are held
// constant over a control cycle and the pair is advanced with its exact
// matrix-exponential solution.

#include <optional>

namespace aclm {

/// One draw of the house-level quantities sampled per unit.
struct HouseSample {
  double floor_area = 0.0;         // m^2
  double air_changes = 0.0;        // 1/h
  double window_wall_ratio = 0.0;  // fraction of gross wall area
  double shgc = 0.0;
  double eer = 0.0;                // W thermal per W electric
  double r_roof = 0.0;             // degC m^2 / W
  double r_wall = 0.0;
  double r_floor = 0.0;
  double r_window = 0.0;
  double r_door = 0.0;
  double t_desired = 26.0;         // degC, used to size the cooling unit
};

/// Conventions that turn a HouseSample into envelope parameters.
///
/// The house is a single-story box with a square footprint. Wall area is
/// perimeter times ceiling height, glazing is window_wall_ratio of that, and
/// one door of door_area is cut from the remaining opaque wall.
struct GeometryRules {
  double ceiling_height = 2.5;            // m
  double door_area = 2.0;                 // m^2
  double air_density = 1.2;               // kg/m^3
  double air_specific_heat = 1006.0;      // J/(kg degC)
  double air_capacity_multiplier = 3.0;   // furnishings lumped into the air node
  double mass_to_air_capacity = 10.0;
  double interior_film_coeff = 8.3;       // W/(m^2 degC)
  double interior_wall_ratio = 1.5;       // interior wall area per exterior wall area
  double design_outdoor_temp = 35.0;      // degC
  double design_solar = 800.0;            // W/m^2
  double oversizing = 1.3;
  double internal_gain = 200.0;           // W
  double solar_mass_fraction = 0.5;
  std::optional<double> c_air_override;   // J/degC
  std::optional<double> c_mass_override;  // J/degC
};

struct HouseParams {
  double floor_area = 0.0;
  double air_changes = 0.0;
  double window_wall_ratio = 0.0;
  double shgc = 0.0;
  double eer = 0.0;
  double r_roof = 0.0;
  double r_wall = 0.0;
  double r_floor = 0.0;
  double r_window = 0.0;
  double r_door = 0.0;

  double volume = 0.0;        // m^3
  double wall_area = 0.0;     // gross exterior wall, m^2
  double window_area = 0.0;   // m^2
  double door_area = 0.0;     // m^2
  double ua = 0.0;            // W/degC
  double hm = 0.0;            // W/degC
  double c_air = 0.0;         // J/degC
  double c_mass = 0.0;        // J/degC
  double q_cool_rated = 0.0;  // W thermal
  double p_rated = 0.0;       // W electric
  double internal_gain = 0.0; // W
  double solar_mass_fraction = 0.0;
};

struct ThermalState {
  double t_air = 0.0;   // degC
  double t_mass = 0.0;  // degC
};

/// Heat flows held constant across one step.
struct ThermalInputs {
  double t_out = 0.0;   // degC
  double q_air = 0.0;   // W into the air node
  double q_mass = 0.0;  // W into the mass node
};

/// Throws InvalidParameter for non-positive areas, resistances or EER, or
/// when glazing plus door leave no opaque wall.
HouseParams derive_envelope(const HouseSample& sample, const GeometryRules& rules = {});

/// Sum of surface conductances plus infiltration.
double envelope_conductance(const HouseParams& p, const GeometryRules& rules = {});

ThermalInputs house_inputs(const HouseParams& p, double t_out, double solar, bool hvac_on);

/// Exact discrete-time propagator for one house and one step length.
/// Cheap to apply; build once per unit when dt is fixed.
class StepOperator {
 public:
  StepOperator(const HouseParams& p, double dt);

  ThermalState advance(const ThermalState& x, const ThermalInputs& u) const;
  ThermalState steady_state(const ThermalInputs& u) const;
  double dt() const { return dt_; }

 private:
  double dt_;
  double c_air_, c_mass_, ua_, hm_;
  // exp(A dt), row-major
  double phi_[2][2];
};

ThermalState step_house(const ThermalState& x, const HouseParams& p, double t_out,
                        double solar, bool hvac_on, double dt);

/// Cooling hysteresis around setpoint.
bool thermostat_step(const ThermalState& x, double setpoint, double deadband, bool on);

}  // namespace aclm
