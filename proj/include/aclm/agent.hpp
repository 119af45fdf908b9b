#pragma once

// Local controller for one air-conditioning load: lockout state machine,
// comfort coordinate, bid formation and response to the broadcast price.

#include <cstddef>

namespace aclm {

/// Bid offset that pins locked units above/below every unlocked bid.
inline constexpr double kLockOffset = 3.0;
/// Clearing prices are confined to [-kPriceCap, kPriceCap].
inline constexpr double kPriceCap = 2.0;

enum class LockState { LockOn, On, LockOff, Off };

const char* to_string(LockState s);

struct ComfortBand {
  double t_desired = 26.0;  // degC
  double t_max = 28.5;
  double t_min = 23.5;

  /// Throws InvalidParameter unless t_min < t_desired < t_max.
  void validate() const;
};

struct SwitchState {
  bool on = false;
  double elapsed = 0.0;   // s since the last transition
  double lock_on = 300.0;
  double lock_off = 300.0;
};

struct Bid {
  std::size_t unit_id = 0;
  double price = 0.0;     // dimensionless control signal in [-4, 4]
  double quantity = 0.0;  // W, rated electric power
  bool on = false;
};

/// Boundary convention: elapsed == lock duration is unlocked.
LockState lock_state(const SwitchState& st);

/// Normalized comfort coordinate, unclamped. Negative below t_desired,
/// -1 at t_min, +1 at t_max.
double compute_soa(double t_air, const ComfortBand& band);

/// compute_soa clamped to [-1, 1]; what enters the bid.
double bid_soa(double t_air, const ComfortBand& band);

/// Throws InvalidParameter when rho is outside [0, 1].
double s_offset(LockState state, double rho);

/// Locked units bid clamped SOA + offset, landing in [2, 4] or [-4, -2].
/// Free units bid SOA + offset clamped to [-2, 2].
Bid make_bid(std::size_t unit_id, double t_air, const ComfortBand& band,
             const SwitchState& st, double rho, double rated_power);

/// On/off decision for the upcoming cycle. Locked units keep their state
/// regardless of price; unlocked units run iff their bid is at or above p*.
bool apply_clearing(const Bid& bid, LockState state, double p_star);

/// Commits a decision: a transition zeroes the dwell timer.
void commit_switch(SwitchState& st, bool on);

/// Accumulates dwell time after the unit has run a cycle.
void advance_timer(SwitchState& st, double dt);

}  // namespace aclm
