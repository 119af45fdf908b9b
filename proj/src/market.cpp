#include "aclm/market.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>

#include "aclm/error.hpp"

namespace aclm {

DemandCurve build_demand_curve(std::span<const Bid> bids) {
  DemandCurve curve;
  curve.steps.reserve(bids.size());
  for (const Bid& b : bids) {
    if (!(b.quantity > 0.0)) throw InvalidParameter("bid quantity must be positive");
    curve.steps.push_back({b.price, b.quantity, b.unit_id});
  }
  std::sort(curve.steps.begin(), curve.steps.end(), [](const CurveStep& a, const CurveStep& b) {
    if (a.price != b.price) return a.price > b.price;
    return a.unit_id < b.unit_id;
  });
  curve.cumulative.reserve(curve.steps.size());
  double acc = 0.0;
  for (const CurveStep& s : curve.steps) {
    acc += s.quantity;
    curve.cumulative.push_back(acc);
  }
  return curve;
}

ClearingResult clear(const DemandCurve& curve, double target) {
  ClearingResult r;
  r.target = target;

  double price;
  if (target <= 0.0 || curve.empty()) {
    price = kPriceCap;
  } else if (target > curve.total()) {
    price = -kPriceCap;
  } else {
    const auto it = std::lower_bound(curve.cumulative.begin(), curve.cumulative.end(), target);
    price = curve.steps[static_cast<std::size_t>(it - curve.cumulative.begin())].price;
  }
  r.p_star = std::clamp(price, -kPriceCap, kPriceCap);

  // Bids tied with the marginal one are all accepted, so sum by price
  // rather than by position.
  const auto end = std::partition_point(curve.steps.begin(), curve.steps.end(),
                                        [&](const CurveStep& s) { return s.price >= r.p_star; });
  const auto n = static_cast<std::size_t>(end - curve.steps.begin());
  r.cleared_power = n == 0 ? 0.0 : curve.cumulative[n - 1];
  return r;
}

void tally_locks(ClearingResult& result, std::span<const Bid> bids,
                 std::span<const LockState> states) {
  assert(bids.size() == states.size());
  result.locked_on_power = 0.0;
  result.locked_off_power = 0.0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (states[i] == LockState::LockOn) result.locked_on_power += bids[i].quantity;
    if (states[i] == LockState::LockOff) result.locked_off_power += bids[i].quantity;
  }
}

double aggregate_response(std::span<const Bid> bids, std::span<const LockState> states,
                          double p_star) {
  assert(bids.size() == states.size());
  double total = 0.0;
  for (std::size_t i = 0; i < bids.size(); ++i) {
    if (apply_clearing(bids[i], states[i], p_star)) total += bids[i].quantity;
  }
  return total;
}

}  // namespace aclm
