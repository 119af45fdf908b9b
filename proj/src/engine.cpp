#include "aclm/engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "aclm/agent.hpp"
#include "aclm/error.hpp"
#include "aclm/io.hpp"
#include "aclm/market.hpp"
#include "aclm/target_signal.hpp"

namespace aclm {

const char* to_string(Service s) {
  return s == Service::FluctuationMitigation ? "fluctuation_mitigation" : "frequency_regulation";
}

Service service_from_string(const std::string& s) {
  if (s == "fluctuation_mitigation") return Service::FluctuationMitigation;
  if (s == "frequency_regulation") return Service::FrequencyRegulation;
  throw ValidationError("unknown service '" + s + "'");
}

void ScenarioConfig::validate() const {
  if (dt_s <= 0) throw InvalidParameter("dt_s must be positive");
  if (horizon_s < 0 || horizon_s % dt_s != 0) {
    throw InvalidParameter("horizon_s must be a non-negative multiple of dt_s");
  }
  if (!(rho >= 0.0 && rho <= 1.0)) throw InvalidParameter("rho must lie in [0, 1]");
  if (fleet_size == 0) throw InvalidParameter("fleet_size must be positive");
  if (!(tau_s >= 0.0)) throw InvalidParameter("tau_s must be non-negative");
  if (!(capacity_w >= 0.0)) throw InvalidParameter("capacity_w must be non-negative");
  if (warmup_s < 0) throw InvalidParameter("warmup_s must be non-negative");
  if (fluctuation_window_s <= 0 || fluctuation_window_s % dt_s != 0) {
    throw InvalidParameter("fluctuation_window_s must be a positive multiple of dt_s");
  }
  if (!(baseline_deadband > 0.0)) throw InvalidParameter("baseline_deadband must be positive");
  fleet.validate();
}

namespace {

SignalSeries to_cycle(const SignalSeries& s, std::int64_t dt, std::int64_t steps) {
  if (dt % s.cadence_s != 0) {
    // Coarser than the control cycle: the first step between two samples
    // has nothing to read.
    std::int64_t t = 0;
    while ((t - s.start_s) % s.cadence_s == 0 && t < steps * dt) t += dt;
    throw SignalGap(s.name, t);
  }
  SignalSeries out = s.decimate(dt);
  for (std::int64_t k = 0; k < steps; ++k) out.at(k * dt);
  return out;
}


}  // namespace

SignalSet prepare_signals(const ScenarioConfig& cfg) {
  const auto dt = cfg.dt_s;
  const auto h = cfg.horizon_s;
  const auto n = cfg.steps();
  const auto& syn = cfg.synthetic;

  SignalSet set;
  set.outdoor_temp = to_cycle(
      cfg.signals.outdoor_temp.empty() ? synth_outdoor_temp(syn, h, dt)
                                       : load_signal(cfg.signals.outdoor_temp, Unit::Celsius),
      dt, n);
  set.solar = to_cycle(cfg.signals.solar.empty()
                           ? synth_solar(syn, h, dt)
                           : load_signal(cfg.signals.solar, Unit::WattPerSquareMeter),
                       dt, n);

  if (cfg.service == Service::FluctuationMitigation) {
    set.wind = to_cycle(cfg.signals.wind.empty() ? synth_wind(syn, h, dt, cfg.seed)
                                                 : load_signal(cfg.signals.wind, Unit::Watt),
                        dt, n);
    set.load = to_cycle(cfg.signals.load.empty() ? synth_load(syn, h, dt, cfg.seed)
                                                 : load_signal(cfg.signals.load, Unit::Watt),
                        dt, n);
  } else {
    // Raw regulation data comes at 2 s; keep every (dt/2)-th sample.
    const std::int64_t raw_cadence = dt % 2 == 0 ? 2 : dt;
    set.reg_d = to_cycle(cfg.signals.reg_d.empty()
                             ? synth_regd(syn, h, raw_cadence, cfg.seed)
                             : load_signal(cfg.signals.reg_d, Unit::PerUnit),
                         dt, n);
  }
  return set;
}

double BaselineResult::at(std::int64_t t) const {
  if (hourly_w.empty()) return 0.0;
  const auto bin = static_cast<std::size_t>(std::max<std::int64_t>(t, 0) / 3600);
  return hourly_w[std::min(bin, hourly_w.size() - 1)];
}

BaselineResult estimate_baseline(const std::vector<AclUnit>& fleet, const SignalSet& signals,
                                 std::int64_t dt_s, std::int64_t horizon_s, double deadband) {
  if (dt_s <= 0) throw InvalidParameter("dt_s must be positive");
  const std::int64_t steps = horizon_s / dt_s;
  const std::int64_t days = horizon_s / 86400;
  const auto dt = static_cast<double>(dt_s);

  BaselineResult out;
  out.daily_cycles.assign(fleet.size(), std::vector<int>(static_cast<std::size_t>(days), 0));
  const std::int64_t bins = (horizon_s + 3599) / 3600;
  out.partial_last_bin = horizon_s % 3600 != 0;
  std::vector<double> sums(static_cast<std::size_t>(bins), 0.0);
  std::vector<int> counts(static_cast<std::size_t>(bins), 0);

  std::vector<AclUnit> shadow = fleet;
  std::vector<StepOperator> ops;
  ops.reserve(shadow.size());
  for (const auto& u : shadow) ops.emplace_back(u.house, dt);

  for (std::int64_t k = 0; k < steps; ++k) {
    const std::int64_t t = k * dt_s;
    const double t_out = signals.outdoor_temp.at(t);
    const double solar = signals.solar.at(t);
    double power = 0.0;
    for (std::size_t i = 0; i < shadow.size(); ++i) {
      AclUnit& u = shadow[i];
      const LockState ls = lock_state(u.sw);
      bool on = u.sw.on;
      if (ls == LockState::On || ls == LockState::Off) {
        on = thermostat_step(u.thermal, u.band.t_desired, deadband, u.sw.on);
      }
      if (on && !u.sw.on && t / 86400 < days) ++out.daily_cycles[i][static_cast<std::size_t>(t / 86400)];
      commit_switch(u.sw, on);
      if (on) power += u.house.p_rated;
      u.thermal = ops[i].advance(u.thermal, house_inputs(u.house, t_out, solar, on));
      advance_timer(u.sw, dt);
    }
    const auto bin = static_cast<std::size_t>(t / 3600);
    sums[bin] += power;
    ++counts[bin];
  }
  out.hourly_w.resize(sums.size());
  for (std::size_t b = 0; b < sums.size(); ++b) {
    out.hourly_w[b] = counts[b] > 0 ? sums[b] / counts[b] : 0.0;
  }
  return out;
}

SimTrace run_scenario(const ScenarioConfig& cfg, const std::vector<AclUnit>& fleet,
                      const SignalSet& signals, const BaselineResult& baseline) {
  cfg.validate();
  const std::int64_t steps = cfg.steps();
  const auto dt = static_cast<double>(cfg.dt_s);
  const std::size_t n = fleet.size();
  const bool fm = cfg.service == Service::FluctuationMitigation;
  if (fm && (!signals.wind || !signals.load)) {
    throw ValidationError("fluctuation mitigation needs wind and load signals");
  }
  if (!fm && !signals.reg_d) throw ValidationError("frequency regulation needs a reg_d signal");

  SimTrace trace;
  trace.config = cfg;
  trace.fleet_size = n;
  trace.baseline = baseline;
  trace.steps.reserve(static_cast<std::size_t>(steps));
  if (cfg.per_unit) trace.per_unit.reserve(static_cast<std::size_t>(steps));

  std::vector<AclUnit> units = fleet;
  for (const auto& u : units) trace.initial_on.push_back(u.sw.on ? 1 : 0);
  std::vector<StepOperator> ops;
  ops.reserve(n);
  for (const auto& u : units) ops.emplace_back(u.house, dt);

  LpfState lpf{lpf_alpha(cfg.tau_s, dt), std::nullopt};
  std::vector<Bid> bids(n);
  std::vector<LockState> locks(n);
  const double nan = std::numeric_limits<double>::quiet_NaN();

  for (std::int64_t k = 0; k < steps; ++k) {
    const std::int64_t t = k * cfg.dt_s;
    StepRecord rec;
    rec.time_s = t;

    // Bid stage, from pre-step temperatures.
    double soa_sum = 0.0;
    rec.soa_min = std::numeric_limits<double>::infinity();
    rec.soa_max = -std::numeric_limits<double>::infinity();
    std::vector<UnitSample> samples;
    if (cfg.per_unit) samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      const AclUnit& u = units[i];
      locks[i] = lock_state(u.sw);
      bids[i] = make_bid(u.id, u.thermal.t_air, u.band, u.sw, cfg.rho, u.house.p_rated);
      const double soa = compute_soa(u.thermal.t_air, u.band);
      soa_sum += soa;
      rec.soa_min = std::min(rec.soa_min, soa);
      rec.soa_max = std::max(rec.soa_max, soa);
      if (cfg.per_unit) samples[i] = {false, u.thermal.t_air, soa};
    }
    rec.soa_avg = n > 0 ? soa_sum / static_cast<double>(n) : 0.0;
    if (n == 0) rec.soa_min = rec.soa_max = 0.0;

    // Aggregation stage.
    rec.baseline_w = baseline.at(t);
    double load = 0.0;
    double wind = 0.0;
    if (fm) {
      load = signals.load->at(t);
      wind = signals.wind->at(t);
      const double p_g0 = uncontrolled_tie_line_power({wind, load, rec.baseline_w, 0.0});
      const double p_lpf = lpf_step(lpf, p_g0);
      rec.target_w = fm_target(rec.baseline_w, p_lpf, p_g0);
      rec.tie0_w = p_g0;
    } else {
      rec.target_w = reg_target(rec.baseline_w, signals.reg_d->at(t), cfg.capacity_w);
      rec.tie0_w = nan;
    }
    ClearingResult cr = clear(build_demand_curve(bids), rec.target_w);
    tally_locks(cr, bids, locks);
    rec.p_star = cr.p_star;
    rec.locked_on_w = cr.locked_on_power;
    rec.locked_off_w = cr.locked_off_power;

    // Disaggregation stage and one cycle of thermal dynamics.
    const double t_out = signals.outdoor_temp.at(t);
    const double solar = signals.solar.at(t);
    double agg = 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      AclUnit& u = units[i];
      const bool on = apply_clearing(bids[i], locks[i], cr.p_star);
      if (on != u.sw.on) trace.switches.push_back({t, static_cast<std::uint32_t>(i), on});
      commit_switch(u.sw, on);
      total += u.house.p_rated;
      if (on) agg += u.house.p_rated;
      if (cfg.per_unit) samples[i].on = on;
      u.thermal = ops[i].advance(u.thermal, house_inputs(u.house, t_out, solar, on));
      advance_timer(u.sw, dt);
    }
    rec.agg_w = agg;
    rec.available_w = total - rec.locked_on_w - rec.locked_off_w;
    rec.tie_w = fm ? tie_line_power({wind, load, rec.baseline_w, agg}) : nan;
    trace.steps.push_back(rec);
    if (cfg.per_unit) trace.per_unit.push_back(std::move(samples));
  }
  return trace;
}

SimTrace run_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto fleet = sample_fleet(cfg.fleet, cfg.fleet_size, cfg.seed);
  const auto signals = prepare_signals(cfg);
  const auto baseline =
      estimate_baseline(fleet, signals, cfg.dt_s, cfg.horizon_s, cfg.baseline_deadband);
  return run_scenario(cfg, fleet, signals, baseline);
}

}  // namespace aclm
