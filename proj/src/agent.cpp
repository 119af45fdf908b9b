#include "aclm/agent.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "aclm/error.hpp"

namespace aclm {

const char* to_string(LockState s) {
  switch (s) {
    case LockState::LockOn: return "LockON";
    case LockState::On: return "ON";
    case LockState::LockOff: return "LockOFF";
    case LockState::Off: return "OFF";
  }
  return "?";
}

void ComfortBand::validate() const {
  if (!(t_min < t_desired && t_desired < t_max)) {
    throw InvalidParameter("comfort band requires t_min < t_desired < t_max");
  }
}

LockState lock_state(const SwitchState& st) {
  if (st.on) return st.elapsed < st.lock_on ? LockState::LockOn : LockState::On;
  return st.elapsed < st.lock_off ? LockState::LockOff : LockState::Off;
}

double compute_soa(double t_air, const ComfortBand& band) {
  const double dev = t_air - band.t_desired;
  if (t_air >= band.t_desired) return dev / (band.t_max - band.t_desired);
  return dev / (band.t_desired - band.t_min);
}

double bid_soa(double t_air, const ComfortBand& band) {
  return std::clamp(compute_soa(t_air, band), -1.0, 1.0);
}

double s_offset(LockState state, double rho) {
  if (!(rho >= 0.0 && rho <= 1.0)) {
    throw InvalidParameter("rho must lie in [0, 1], got " + std::to_string(rho));
  }
  switch (state) {
    case LockState::LockOn: return kLockOffset;
    case LockState::On: return rho;
    case LockState::Off: return -rho;
    case LockState::LockOff: return -kLockOffset;
  }
  return 0.0;
}

Bid make_bid(std::size_t unit_id, double t_air, const ComfortBand& band,
             const SwitchState& st, double rho, double rated_power) {
  Bid b;
  b.unit_id = unit_id;
  const LockState ls = lock_state(st);
  if (ls == LockState::LockOn || ls == LockState::LockOff) {
    b.price = bid_soa(t_air, band) + s_offset(ls, rho);
  } else {
    // Clamping the SOA of a free unit would flatten every overshooting unit
    // onto one price; clamp the sum instead so they keep their order.
    b.price = std::clamp(compute_soa(t_air, band) + s_offset(ls, rho), -kPriceCap, kPriceCap);
  }
  b.quantity = rated_power;
  b.on = st.on;
  return b;
}

bool apply_clearing(const Bid& bid, LockState state, double p_star) {
  switch (state) {
    case LockState::LockOn: return true;
    case LockState::LockOff: return false;
    default: return bid.price >= p_star;
  }
}

void commit_switch(SwitchState& st, bool on) {
  if (on != st.on) {
    st.on = on;
    st.elapsed = 0.0;
  }
}

void advance_timer(SwitchState& st, double dt) { st.elapsed += dt; }

}  // namespace aclm
