#include "aclm/signals.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "aclm/error.hpp"

namespace aclm {

namespace {

constexpr double kDay = 86400.0;

std::vector<std::int64_t> sample_times(std::int64_t horizon_s, std::int64_t cadence_s) {
  if (cadence_s <= 0) throw InvalidParameter("cadence must be positive");
  if (horizon_s < 0) throw InvalidParameter("horizon must be non-negative");
  std::vector<std::int64_t> t;
  for (std::int64_t k = 0; k * cadence_s <= horizon_s; ++k) t.push_back(k * cadence_s);
  return t;
}

double hour_of_day(std::int64_t t) {
  return std::fmod(static_cast<double>(t), kDay) / 3600.0;
}

// Independent streams per signal kind.
std::mt19937_64 make_rng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return std::mt19937_64(seq);
}

// Zero-mean AR(1) with stationary standard deviation sigma and correlation
// time tau.
std::vector<double> ar1(std::size_t n, double dt, double tau, double sigma,
                        std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  const double phi = tau > 0.0 ? std::exp(-dt / tau) : 0.0;
  const double innov = sigma * std::sqrt(1.0 - phi * phi);
  std::vector<double> x(n);
  double v = sigma * gauss(rng);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = v;
    v = phi * v + innov * gauss(rng);
  }
  return x;
}

}  // namespace

std::string_view unit_suffix(Unit u) {
  switch (u) {
    case Unit::Watt: return "_w";
    case Unit::Celsius: return "_c";
    case Unit::WattPerSquareMeter: return "_w_m2";
    case Unit::PerUnit: return "_pu";
  }
  return "";
}

double SignalSeries::at(std::int64_t t) const {
  const std::int64_t off = t - start_s;
  if (off < 0 || off % cadence_s != 0) throw SignalGap(name, t);
  const auto idx = static_cast<std::size_t>(off / cadence_s);
  if (idx >= samples.size()) throw SignalGap(name, t);
  return samples[idx];
}

SignalSeries SignalSeries::decimate(std::int64_t cadence) const {
  if (cadence <= 0 || cadence % cadence_s != 0) {
    throw InvalidParameter("cannot resample '" + name + "' from " + std::to_string(cadence_s) +
                           " s to " + std::to_string(cadence) + " s");
  }
  const auto stride = static_cast<std::size_t>(cadence / cadence_s);
  SignalSeries out{name, unit, cadence, start_s, {}};
  for (std::size_t i = 0; i < samples.size(); i += stride) out.samples.push_back(samples[i]);
  return out;
}

void SignalSeries::validate() const {
  if (cadence_s <= 0) throw ValidationError("signal '" + name + "' has non-positive cadence");
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double v = samples[i];
    if (!std::isfinite(v)) {
      throw ValidationError("signal '" + name + "' sample " + std::to_string(i) + " not finite");
    }
    if (unit == Unit::PerUnit && std::abs(v) > 1.0) {
      throw ValidationError("signal '" + name + "' sample at t=" +
                            std::to_string(start_s + cadence_s * static_cast<std::int64_t>(i)) +
                            " is " + std::to_string(v) + ", outside [-1, 1]");
    }
  }
}

SignalSeries synth_outdoor_temp(const SyntheticSettings& s, std::int64_t horizon_s,
                                std::int64_t cadence_s) {
  SignalSeries out{"outdoor_temp", Unit::Celsius, cadence_s, 0, {}};
  const double rise = s.outdoor_max_hour - s.outdoor_min_hour;
  const double fall = 24.0 - rise;
  const double swing = s.outdoor_max_c - s.outdoor_min_c;
  for (const auto t : sample_times(horizon_s, cadence_s)) {
    const double h = hour_of_day(t);
    const double since_min = std::fmod(h - s.outdoor_min_hour + 24.0, 24.0);
    double v;
    if (since_min <= rise) {
      v = s.outdoor_min_c + swing * 0.5 * (1.0 - std::cos(std::numbers::pi * since_min / rise));
    } else {
      const double since_max = since_min - rise;
      v = s.outdoor_max_c - swing * 0.5 * (1.0 - std::cos(std::numbers::pi * since_max / fall));
    }
    out.samples.push_back(v);
  }
  return out;
}

SignalSeries synth_solar(const SyntheticSettings& s, std::int64_t horizon_s,
                         std::int64_t cadence_s) {
  SignalSeries out{"solar", Unit::WattPerSquareMeter, cadence_s, 0, {}};
  const double sunrise = s.solar_noon_hour - 0.5 * s.daylight_hours;
  for (const auto t : sample_times(horizon_s, cadence_s)) {
    const double x = (hour_of_day(t) - sunrise) / s.daylight_hours;
    out.samples.push_back(x > 0.0 && x < 1.0 ? s.solar_peak * std::sin(std::numbers::pi * x)
                                             : 0.0);
  }
  return out;
}

SignalSeries synth_load(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed) {
  SignalSeries out{"load", Unit::Watt, cadence_s, 0, {}};
  const auto times = sample_times(horizon_s, cadence_s);
  auto rng = make_rng(seed, 1);
  const auto noise = ar1(times.size(), static_cast<double>(cadence_s), s.load_noise_tau_s,
                         s.load_noise_w, rng);
  for (std::size_t i = 0; i < times.size(); ++i) {
    // Evening peak at 19:00.
    const double phase = 2.0 * std::numbers::pi * (hour_of_day(times[i]) - 19.0) / 24.0;
    const double v = s.load_mean_w * (1.0 + s.load_diurnal_fraction * std::cos(phase)) + noise[i];
    out.samples.push_back(std::max(v, 0.0));
  }
  return out;
}

SignalSeries synth_wind(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed) {
  SignalSeries out{"wind", Unit::Watt, cadence_s, 0, {}};
  const auto times = sample_times(horizon_s, cadence_s);
  auto rng = make_rng(seed, 2);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * std::numbers::pi);
  const double phase = phase_dist(rng);
  const auto fast = ar1(times.size(), static_cast<double>(cadence_s), s.wind_fast_tau_s,
                        s.wind_fast_w, rng);
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double slow = s.wind_slow_w * std::sin(2.0 * std::numbers::pi *
                                                      static_cast<double>(times[i]) /
                                                      s.wind_slow_period_s +
                                                  phase);
    out.samples.push_back(std::max(s.wind_mean_w + slow + fast[i], 0.0));
  }
  return out;
}

SignalSeries synth_regd(const SyntheticSettings& s, std::int64_t horizon_s,
                        std::int64_t cadence_s, std::uint64_t seed) {
  SignalSeries out{"reg_d", Unit::PerUnit, cadence_s, 0, {}};
  const auto times = sample_times(horizon_s, cadence_s);
  auto rng = make_rng(seed, 3);
  auto x = ar1(times.size(), static_cast<double>(cadence_s), s.regd_tau_s, 1.0, rng);
  for (double& v : x) v = std::tanh(1.2 * v);

  const auto block = static_cast<std::size_t>(std::max<std::int64_t>(1, s.regd_block_s / cadence_s));
  for (std::size_t b = 0; b < x.size(); b += block) {
    const std::size_t e = std::min(x.size(), b + block);
    double mean = 0.0;
    for (std::size_t i = b; i < e; ++i) mean += x[i];
    mean /= static_cast<double>(e - b);
    for (std::size_t i = b; i < e; ++i) x[i] -= mean;
  }
  double peak = 1.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  for (double& v : x) v /= peak;
  out.samples = std::move(x);
  return out;
}

}  // namespace aclm
