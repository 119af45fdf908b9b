#include "aclm/fleet.hpp"

#include <cmath>
#include <random>
#include <string>

#include "aclm/error.hpp"

namespace aclm {

namespace {

void check(const UniformDist& d, const char* name) {
  if (!(d.low < d.high)) throw InvalidParameter(std::string(name) + ": uniform low >= high");
}

void check(const NormalDist& d, const char* name) {
  if (!(d.stddev > 0.0)) throw InvalidParameter(std::string(name) + ": stddev must be positive");
  if (!(d.mean > 0.0)) throw InvalidParameter(std::string(name) + ": mean must be positive");
}

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double draw(const UniformDist& d) {
    return std::uniform_real_distribution<double>(d.low, d.high)(rng_);
  }

  double draw(const NormalDist& d) {
    std::normal_distribution<double> gauss(d.mean, d.stddev);
    for (;;) {
      const double v = gauss(rng_);
      if (v > 0.0 && std::abs(v - d.mean) <= 3.0 * d.stddev) return v;
    }
  }

  bool coin() { return std::bernoulli_distribution(0.5)(rng_); }

 private:
  std::mt19937_64 rng_;
};

}  // namespace

void FleetSpec::validate() const {
  check(floor_area, "floor_area");
  check(air_changes, "air_changes");
  check(window_wall_ratio, "window_wall_ratio");
  check(shgc, "shgc");
  check(eer, "eer");
  check(r_roof, "r_roof");
  check(r_wall, "r_wall");
  check(r_floor, "r_floor");
  check(r_window, "r_window");
  check(r_door, "r_door");
  check(t_desired, "t_desired");
  check(t_high, "t_high");
  check(t_low, "t_low");
  if (floor_area.low <= 0.0 || eer.low <= 0.0 || t_high.low <= 0.0 || t_low.low <= 0.0) {
    throw InvalidParameter("area, EER and comfort offsets must be positive");
  }
  if (!(lock_on_s > 0.0 && lock_off_s > 0.0)) throw InvalidParameter("lock times must be positive");
  if (!(thermostat_deadband > 0.0)) throw InvalidParameter("deadband must be positive");
}

std::vector<AclUnit> sample_fleet(const FleetSpec& spec, std::size_t n, std::uint64_t seed,
                                  const GeometryRules& rules) {
  spec.validate();
  if (n == 0) throw InvalidParameter("fleet size must be positive");

  Sampler rng(seed);
  std::vector<AclUnit> fleet;
  fleet.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    HouseSample hs;
    hs.floor_area = rng.draw(spec.floor_area);
    hs.air_changes = rng.draw(spec.air_changes);
    hs.window_wall_ratio = rng.draw(spec.window_wall_ratio);
    hs.shgc = rng.draw(spec.shgc);
    hs.eer = rng.draw(spec.eer);
    hs.r_roof = rng.draw(spec.r_roof);
    hs.r_wall = rng.draw(spec.r_wall);
    hs.r_floor = rng.draw(spec.r_floor);
    hs.r_window = rng.draw(spec.r_window);
    hs.r_door = rng.draw(spec.r_door);
    hs.t_desired = rng.draw(spec.t_desired);
    const double t_high = rng.draw(spec.t_high);
    const double t_low = rng.draw(spec.t_low);

    AclUnit u;
    u.id = i;
    u.house = derive_envelope(hs, rules);
    u.band = {hs.t_desired, hs.t_desired + t_high, hs.t_desired - t_low};

    const double t0 = rng.draw(UniformDist{u.band.t_min, u.band.t_max});
    u.thermal = {t0, t0};
    const bool coin = rng.coin();
    u.sw.on = thermostat_step(u.thermal, hs.t_desired, spec.thermostat_deadband, coin);
    u.sw.lock_on = spec.lock_on_s;
    u.sw.lock_off = spec.lock_off_s;
    u.sw.elapsed = u.sw.on ? spec.lock_on_s : spec.lock_off_s;
    fleet.push_back(u);
  }
  return fleet;
}

}  // namespace aclm
