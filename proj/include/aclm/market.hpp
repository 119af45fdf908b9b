#pragma once

// Virtual market at the control center. Bids are stacked into a descending
// step demand curve; the supply curve is vertical at the target power, and
// the clearing price is the price of the marginal accepted bid.

#include <cstddef>
#include <span>
#include <vector>

#include "aclm/agent.hpp"

namespace aclm {

struct CurveStep {
  double price = 0.0;
  double quantity = 0.0;
  std::size_t unit_id = 0;
};

struct DemandCurve {
  std::vector<CurveStep> steps;    // price non-increasing, ties by unit_id
  std::vector<double> cumulative;  // prefix sums of quantity, W

  double total() const { return cumulative.empty() ? 0.0 : cumulative.back(); }
  bool empty() const { return steps.empty(); }
};

struct ClearingResult {
  double p_star = kPriceCap;
  double target = 0.0;            // W
  double cleared_power = 0.0;     // W, bids at or above p_star
  double locked_on_power = 0.0;   // W
  double locked_off_power = 0.0;  // W
};

/// Throws InvalidParameter on a non-positive quantity.
DemandCurve build_demand_curve(std::span<const Bid> bids);

/// Price where cumulative demand first reaches the target. A non-positive
/// target or an empty curve clears at +kPriceCap, an unreachable target at
/// -kPriceCap.
ClearingResult clear(const DemandCurve& curve, double target);

/// Fills the locked-power diagnostics. `states` is indexed like `bids`.
void tally_locks(ClearingResult& result, std::span<const Bid> bids,
                 std::span<const LockState> states);

/// Fleet power after every unit applies the clearing rule, lockout overrides
/// included.
double aggregate_response(std::span<const Bid> bids, std::span<const LockState> states,
                          double p_star);

}  // namespace aclm
