#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "aclm/agent.hpp"
#include "aclm/thermal.hpp"

namespace aclm {

struct UniformDist {
  double low = 0.0;
  double high = 1.0;
};

/// Truncated at mean +/- 3 sigma; draws outside that range, or non-positive
/// draws, are redrawn.
struct NormalDist {
  double mean = 0.0;
  double stddev = 1.0;
};

/// Per-house parameter distributions.
struct FleetSpec {
  UniformDist floor_area{88.0, 176.0};
  NormalDist air_changes{0.5, 0.06};
  NormalDist window_wall_ratio{0.15, 0.01};
  UniformDist shgc{0.22, 0.5};
  UniformDist eer{3.0, 4.0};
  NormalDist r_roof{5.28, 0.70};
  NormalDist r_wall{2.99, 0.35};
  NormalDist r_floor{3.35, 0.35};
  NormalDist r_window{0.38, 0.03};
  NormalDist r_door{0.88, 0.07};
  NormalDist t_desired{26.0, 0.5};
  UniformDist t_high{2.0, 3.0};
  UniformDist t_low{2.0, 3.0};
  double lock_on_s = 300.0;
  double lock_off_s = 300.0;
  /// Hysteresis used to pick initial on/off states.
  double thermostat_deadband = 1.0;

  /// Throws InvalidParameter on inverted ranges or non-positive spreads.
  void validate() const;
};

struct AclUnit {
  std::size_t id = 0;
  HouseParams house;
  ComfortBand band;
  ThermalState thermal;
  SwitchState sw;
};

/// Deterministic for a given seed. Each unit starts at a uniform temperature
/// inside its comfort band with the mass at air temperature, on/off set by
/// the thermostat rule (a fair coin inside the deadband), and its dwell
/// timer at the lock duration.
std::vector<AclUnit> sample_fleet(const FleetSpec& spec, std::size_t n, std::uint64_t seed,
                                  const GeometryRules& rules = {});

}  // namespace aclm
