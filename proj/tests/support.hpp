#pragma once

// Independent reference implementations shared by the unit and acceptance
// tests. None of these call into the code they check.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "aclm/agent.hpp"
#include "aclm/thermal.hpp"

namespace testsupport {

/// A house drawn from the fleet parameter ranges.
inline aclm::HouseSample random_house(std::mt19937_64& rng) {
  auto u = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
  aclm::HouseSample s;
  s.floor_area = u(88.0, 176.0);
  s.air_changes = u(0.32, 0.68);
  s.window_wall_ratio = u(0.12, 0.18);
  s.shgc = u(0.22, 0.5);
  s.eer = u(3.0, 4.0);
  s.r_roof = u(3.2, 7.4);
  s.r_wall = u(1.9, 4.0);
  s.r_floor = u(2.3, 4.4);
  s.r_window = u(0.29, 0.47);
  s.r_door = u(0.67, 1.09);
  s.t_desired = u(24.5, 27.5);
  return s;
}

/// Forward Euler on the two-node network with fixed substep h.
inline aclm::ThermalState euler(aclm::ThermalState x, const aclm::HouseParams& p,
                                const aclm::ThermalInputs& u, double dt, double h) {
  const auto n = static_cast<long>(dt / h + 0.5);
  for (long i = 0; i < n; ++i) {
    const double da = (p.ua * (u.t_out - x.t_air) + p.hm * (x.t_mass - x.t_air) + u.q_air) / p.c_air;
    const double dm = (p.hm * (x.t_air - x.t_mass) + u.q_mass) / p.c_mass;
    x.t_air += h * da;
    x.t_mass += h * dm;
  }
  return x;
}

struct OracleClearing {
  double p_star = 0.0;
  std::vector<bool> on;
};

/// Exhaustive clearing: try every bid price (and the caps) as the candidate
/// price, keep the highest one whose on-set covers the target. Locked units
/// are forced by their state regardless of price. An empty fleet clears at
/// the cap.
inline OracleClearing brute_force_clear(const std::vector<aclm::Bid>& bids,
                                        const std::vector<aclm::LockState>& states,
                                        double target) {
  const double cap = aclm::kPriceCap;
  double p = cap;
  if (target > 0.0 && !bids.empty()) {
    std::set<double> candidates;
    for (const auto& b : bids) candidates.insert(b.price);
    double best = -cap;
    bool found = false;
    for (double c : candidates) {
      double q = 0.0;
      for (const auto& b : bids) {
        if (b.price >= c) q += b.quantity;
      }
      if (q >= target && (!found || c > best)) {
        best = c;
        found = true;
      }
    }
    p = found ? std::clamp(best, -cap, cap) : -cap;
  }
  OracleClearing r;
  r.p_star = p;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (states[i] == aclm::LockState::LockOn) {
      r.on.push_back(true);
    } else if (states[i] == aclm::LockState::LockOff) {
      r.on.push_back(false);
    } else {
      r.on.push_back(bids[i].price >= p);
    }
  }
  return r;
}

}  // namespace testsupport
