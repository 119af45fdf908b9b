#include "aclm/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>
#include <system_error>

#include "aclm/error.hpp"

namespace aclm {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool parse_double(std::string_view s, double& out) {
  s = trim(s);
  if (s == "nan") {
    out = std::numeric_limits<double>::quiet_NaN();
    return true;
  }
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

template <class Int>
bool parse_int(std::string_view s, Int& out) {
  s = trim(s);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

std::ifstream open_in(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  return in;
}

std::ofstream open_out(const fs::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

void check_written(std::ofstream& out, const fs::path& path) {
  out.flush();
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

// Tracks which keys of a JSON object were read so leftovers can be rejected.
class StrictObject {
 public:
  StrictObject(const json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j.is_object()) throw ValidationError(where_ + " must be an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    if (!j_.contains(key)) return;
    used_.insert(key);
    try {
      out = j_.at(key).get<T>();
    } catch (const json::exception& e) {
      throw ValidationError(where_ + key + ": " + e.what());
    }
  }

  const json* child(const char* key) {
    if (!j_.contains(key)) return nullptr;
    used_.insert(key);
    return &j_.at(key);
  }

  void finish() const {
    for (const auto& item : j_.items()) {
      if (!used_.contains(item.key())) {
        throw ValidationError("unknown scenario key '" + where_ + item.key() + "'");
      }
    }
  }

 private:
  const json& j_;
  std::string where_;
  std::set<std::string> used_;
};

void read_dist(StrictObject& parent, const char* key, UniformDist& d, const std::string& where) {
  if (const json* c = parent.child(key)) {
    StrictObject o(*c, where + key + ".");
    o.get("low", d.low);
    o.get("high", d.high);
    o.finish();
  }
}

void read_dist(StrictObject& parent, const char* key, NormalDist& d, const std::string& where) {
  if (const json* c = parent.child(key)) {
    StrictObject o(*c, where + key + ".");
    o.get("mean", d.mean);
    o.get("stddev", d.stddev);
    o.finish();
  }
}

json dist(const UniformDist& d) { return {{"low", d.low}, {"high", d.high}}; }
json dist(const NormalDist& d) { return {{"mean", d.mean}, {"stddev", d.stddev}}; }

std::string resolve(const std::string& p, const fs::path& base) {
  if (p.empty() || base.empty() || fs::path(p).is_absolute()) return p;
  return (base / p).string();
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

// ---------------------------------------------------------------------------
// Signals

SignalSeries load_signal(const fs::path& path, Unit expected) {
  auto in = open_in(path);
  const std::string file = path.string();
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  SignalSeries s;
  s.unit = expected;
  std::vector<std::int64_t> times;

  while (std::getline(in, line)) {
    ++lineno;
    const auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto cells = split(view, ',');
    if (cells.size() != 2) throw ParseError(file, lineno, "expected 2 columns");
    if (!have_header) {
      if (trim(cells[0]) != "time_s") throw ParseError(file, lineno, "first column must be time_s");
      const std::string col(trim(cells[1]));
      const std::string_view want = unit_suffix(expected);
      // Longest suffix first so "_w_m2" is not read as "_w".
      std::string_view found;
      for (Unit u : {Unit::WattPerSquareMeter, Unit::Watt, Unit::Celsius, Unit::PerUnit}) {
        const auto suf = unit_suffix(u);
        if (col.size() > suf.size() && col.ends_with(suf)) {
          found = suf;
          break;
        }
      }
      if (found.empty()) {
        throw ValidationError(file + ": column '" + col + "' declares no unit (expected suffix '" +
                              std::string(want) + "')");
      }
      if (found != want) {
        throw ValidationError(file + ": column '" + col + "' has unit suffix '" +
                              std::string(found) + "', expected '" + std::string(want) + "'");
      }
      s.name = col.substr(0, col.size() - found.size());
      have_header = true;
      continue;
    }
    std::int64_t t = 0;
    double v = 0.0;
    if (!parse_int(cells[0], t)) throw ParseError(file, lineno, "bad time value");
    if (!parse_double(cells[1], v) || !std::isfinite(v)) {
      throw ParseError(file, lineno, "bad sample value");
    }
    if (times.size() >= 2 && t - times.back() != times[1] - times[0]) {
      throw ParseError(file, lineno, "non-uniform cadence");
    }
    if (times.size() == 1 && t <= times[0]) throw ParseError(file, lineno, "time must increase");
    times.push_back(t);
    s.samples.push_back(v);
  }
  if (!have_header) throw ParseError(file, lineno, "missing header");
  if (times.size() < 2) throw ValidationError(file + ": need at least two samples");
  s.start_s = times[0];
  s.cadence_s = times[1] - times[0];
  s.validate();
  return s;
}

void write_signal(const SignalSeries& s, const fs::path& path) {
  auto out = open_out(path);
  out << "time_s," << s.name << unit_suffix(s.unit) << '\n';
  for (std::size_t i = 0; i < s.samples.size(); ++i) {
    out << s.start_s + s.cadence_s * static_cast<std::int64_t>(i) << ','
        << format_double(s.samples[i]) << '\n';
  }
  check_written(out, path);
}

// ---------------------------------------------------------------------------
// Scenario

ScenarioConfig scenario_from_json(const json& j, const fs::path& base_dir) {
  ScenarioConfig c;
  StrictObject root(j, "");
  std::string service = to_string(c.service);
  root.get("service", service);
  c.service = service_from_string(service);
  root.get("dt_s", c.dt_s);
  root.get("horizon_s", c.horizon_s);
  root.get("tau_s", c.tau_s);
  root.get("rho", c.rho);
  root.get("fleet_size", c.fleet_size);
  root.get("capacity_w", c.capacity_w);
  root.get("seed", c.seed);
  root.get("warmup_s", c.warmup_s);
  root.get("fluctuation_window_s", c.fluctuation_window_s);
  root.get("baseline_deadband", c.baseline_deadband);
  root.get("per_unit", c.per_unit);

  if (const json* sj = root.child("signals")) {
    StrictObject o(*sj, "signals.");
    o.get("wind", c.signals.wind);
    o.get("load", c.signals.load);
    o.get("outdoor_temp", c.signals.outdoor_temp);
    o.get("solar", c.signals.solar);
    o.get("reg_d", c.signals.reg_d);
    o.finish();
    for (std::string* p : {&c.signals.wind, &c.signals.load, &c.signals.outdoor_temp,
                           &c.signals.solar, &c.signals.reg_d}) {
      *p = resolve(*p, base_dir);
    }
  }

  if (const json* sj = root.child("synthetic")) {
    StrictObject o(*sj, "synthetic.");
    auto& s = c.synthetic;
    o.get("outdoor_min_c", s.outdoor_min_c);
    o.get("outdoor_max_c", s.outdoor_max_c);
    o.get("outdoor_min_hour", s.outdoor_min_hour);
    o.get("outdoor_max_hour", s.outdoor_max_hour);
    o.get("solar_peak", s.solar_peak);
    o.get("solar_noon_hour", s.solar_noon_hour);
    o.get("daylight_hours", s.daylight_hours);
    o.get("load_mean_w", s.load_mean_w);
    o.get("load_diurnal_fraction", s.load_diurnal_fraction);
    o.get("load_noise_w", s.load_noise_w);
    o.get("load_noise_tau_s", s.load_noise_tau_s);
    o.get("wind_mean_w", s.wind_mean_w);
    o.get("wind_slow_w", s.wind_slow_w);
    o.get("wind_slow_period_s", s.wind_slow_period_s);
    o.get("wind_fast_w", s.wind_fast_w);
    o.get("wind_fast_tau_s", s.wind_fast_tau_s);
    o.get("regd_tau_s", s.regd_tau_s);
    o.get("regd_block_s", s.regd_block_s);
    o.finish();
  }

  if (const json* fj = root.child("fleet")) {
    const std::string w = "fleet.";
    StrictObject o(*fj, w);
    auto& f = c.fleet;
    read_dist(o, "floor_area", f.floor_area, w);
    read_dist(o, "air_changes", f.air_changes, w);
    read_dist(o, "window_wall_ratio", f.window_wall_ratio, w);
    read_dist(o, "shgc", f.shgc, w);
    read_dist(o, "eer", f.eer, w);
    read_dist(o, "r_roof", f.r_roof, w);
    read_dist(o, "r_wall", f.r_wall, w);
    read_dist(o, "r_floor", f.r_floor, w);
    read_dist(o, "r_window", f.r_window, w);
    read_dist(o, "r_door", f.r_door, w);
    read_dist(o, "t_desired", f.t_desired, w);
    read_dist(o, "t_high", f.t_high, w);
    read_dist(o, "t_low", f.t_low, w);
    o.get("lock_on_s", f.lock_on_s);
    o.get("lock_off_s", f.lock_off_s);
    o.get("thermostat_deadband", f.thermostat_deadband);
    o.finish();
  }
  root.finish();
  c.validate();
  return c;
}

json scenario_to_json(const ScenarioConfig& c) {
  const auto& s = c.synthetic;
  const auto& f = c.fleet;
  return {
      {"service", to_string(c.service)},
      {"dt_s", c.dt_s},
      {"horizon_s", c.horizon_s},
      {"tau_s", c.tau_s},
      {"rho", c.rho},
      {"fleet_size", c.fleet_size},
      {"capacity_w", c.capacity_w},
      {"seed", c.seed},
      {"warmup_s", c.warmup_s},
      {"fluctuation_window_s", c.fluctuation_window_s},
      {"baseline_deadband", c.baseline_deadband},
      {"per_unit", c.per_unit},
      {"signals",
       {{"wind", c.signals.wind},
        {"load", c.signals.load},
        {"outdoor_temp", c.signals.outdoor_temp},
        {"solar", c.signals.solar},
        {"reg_d", c.signals.reg_d}}},
      {"synthetic",
       {{"outdoor_min_c", s.outdoor_min_c},
        {"outdoor_max_c", s.outdoor_max_c},
        {"outdoor_min_hour", s.outdoor_min_hour},
        {"outdoor_max_hour", s.outdoor_max_hour},
        {"solar_peak", s.solar_peak},
        {"solar_noon_hour", s.solar_noon_hour},
        {"daylight_hours", s.daylight_hours},
        {"load_mean_w", s.load_mean_w},
        {"load_diurnal_fraction", s.load_diurnal_fraction},
        {"load_noise_w", s.load_noise_w},
        {"load_noise_tau_s", s.load_noise_tau_s},
        {"wind_mean_w", s.wind_mean_w},
        {"wind_slow_w", s.wind_slow_w},
        {"wind_slow_period_s", s.wind_slow_period_s},
        {"wind_fast_w", s.wind_fast_w},
        {"wind_fast_tau_s", s.wind_fast_tau_s},
        {"regd_tau_s", s.regd_tau_s},
        {"regd_block_s", s.regd_block_s}}},
      {"fleet",
       {{"floor_area", dist(f.floor_area)},
        {"air_changes", dist(f.air_changes)},
        {"window_wall_ratio", dist(f.window_wall_ratio)},
        {"shgc", dist(f.shgc)},
        {"eer", dist(f.eer)},
        {"r_roof", dist(f.r_roof)},
        {"r_wall", dist(f.r_wall)},
        {"r_floor", dist(f.r_floor)},
        {"r_window", dist(f.r_window)},
        {"r_door", dist(f.r_door)},
        {"t_desired", dist(f.t_desired)},
        {"t_high", dist(f.t_high)},
        {"t_low", dist(f.t_low)},
        {"lock_on_s", f.lock_on_s},
        {"lock_off_s", f.lock_off_s},
        {"thermostat_deadband", f.thermostat_deadband}}},
  };
}

ScenarioConfig load_scenario(const fs::path& path) {
  auto in = open_in(path);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
  return scenario_from_json(j, path.parent_path());
}

// ---------------------------------------------------------------------------
// Traces

const std::vector<std::string>& trace_columns() {
  static const std::vector<std::string> cols = {
      "time_s",      "target_w",   "agg_w",   "tie_w",   "p_star",  "locked_on_w", "locked_off_w",
      "available_w", "baseline_w", "tie0_w", "soa_avg", "soa_min", "soa_max"};
  return cols;
}

void write_trace(const SimTrace& trace, const fs::path& dir) {
  fs::create_directories(dir);

  const fs::path table = dir / "trace.csv";
  auto out = open_out(table);
  const auto& cols = trace_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  const bool per_unit = !trace.per_unit.empty();
  if (per_unit) {
    for (std::size_t i = 0; i < trace.fleet_size; ++i) {
      out << ",s_" << i << ",t_air_c_" << i << ",soa_" << i;
    }
  }
  out << '\n';
  std::string row;
  for (std::size_t k = 0; k < trace.steps.size(); ++k) {
    const StepRecord& r = trace.steps[k];
    row.clear();
    row += std::to_string(r.time_s);
    for (double v : {r.target_w, r.agg_w, r.tie_w, r.p_star, r.locked_on_w, r.locked_off_w,
                     r.available_w, r.baseline_w, r.tie0_w, r.soa_avg, r.soa_min, r.soa_max}) {
      row += ',';
      row += format_double(v);
    }
    if (per_unit) {
      for (const UnitSample& u : trace.per_unit[k]) {
        row += u.on ? ",1," : ",0,";
        row += format_double(u.t_air);
        row += ',';
        row += format_double(u.soa);
      }
    }
    row += '\n';
    out << row;
  }
  check_written(out, table);

  const fs::path sw = dir / "switches.csv";
  auto sout = open_out(sw);
  sout << "time_s,unit,s\n";
  for (const SwitchEvent& e : trace.switches) {
    sout << e.time_s << ',' << e.unit << ',' << (e.on ? 1 : 0) << '\n';
  }
  check_written(sout, sw);

  json summary = {
      {"format", "aclm-trace-1"},
      {"config", scenario_to_json(trace.config)},
      {"seed", trace.config.seed},
      {"fleet_size", trace.fleet_size},
      {"steps", trace.steps.size()},
      {"switch_events", trace.switches.size()},
      {"per_unit", per_unit},
      {"initial_on", trace.initial_on},
      {"baseline",
       {{"hourly_w", trace.baseline.hourly_w},
        {"partial_last_bin", trace.baseline.partial_last_bin},
        {"daily_cycles", trace.baseline.daily_cycles}}},
  };
  const fs::path sp = dir / "summary.json";
  auto jout = open_out(sp);
  jout << summary.dump(2) << '\n';
  check_written(jout, sp);
}

SimTrace read_trace(const fs::path& dir) {
  SimTrace trace;
  {
    auto in = open_in(dir / "summary.json");
    json s;
    try {
      s = json::parse(in);
    } catch (const json::parse_error& e) {
      throw ValidationError((dir / "summary.json").string() + ": " + e.what());
    }
    trace.config = scenario_from_json(s.at("config"));
    trace.fleet_size = s.at("fleet_size").get<std::size_t>();
    trace.initial_on = s.at("initial_on").get<std::vector<std::uint8_t>>();
    const json& b = s.at("baseline");
    trace.baseline.hourly_w = b.at("hourly_w").get<std::vector<double>>();
    trace.baseline.partial_last_bin = b.at("partial_last_bin").get<bool>();
    trace.baseline.daily_cycles = b.at("daily_cycles").get<std::vector<std::vector<int>>>();
  }

  const fs::path table = dir / "trace.csv";
  const std::string file = table.string();
  auto in = open_in(table);
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(file, 1, "missing header");
  const auto header = split(trim(line), ',');
  const auto& cols = trace_columns();
  if (header.size() < cols.size()) throw ParseError(file, 1, "too few columns");
  for (std::size_t c = 0; c < cols.size(); ++c) {
    if (header[c] != cols[c]) throw ParseError(file, 1, "unexpected column '" + std::string(header[c]) + "'");
  }
  const std::size_t extra = header.size() - cols.size();
  if (extra != 0 && extra != 3 * trace.fleet_size) {
    throw ParseError(file, 1, "per-unit columns do not match fleet size");
  }

  while (std::getline(in, line)) {
    ++lineno;
    const auto cells = split(trim(line), ',');
    if (cells.size() != header.size()) throw ParseError(file, lineno, "wrong column count");
    StepRecord r;
    if (!parse_int(cells[0], r.time_s)) throw ParseError(file, lineno, "bad time_s");
    double* fields[] = {&r.target_w,    &r.agg_w,      &r.tie_w,   &r.p_star,
                        &r.locked_on_w, &r.locked_off_w, &r.available_w, &r.baseline_w,
                        &r.tie0_w,      &r.soa_avg,    &r.soa_min, &r.soa_max};
    for (std::size_t c = 0; c < std::size(fields); ++c) {
      if (!parse_double(cells[c + 1], *fields[c])) {
        throw ParseError(file, lineno, "bad value in column " + cols[c + 1]);
      }
    }
    trace.steps.push_back(r);
    if (extra) {
      std::vector<UnitSample> row(trace.fleet_size);
      for (std::size_t i = 0; i < trace.fleet_size; ++i) {
        const std::size_t base = cols.size() + 3 * i;
        int on = 0;
        if (!parse_int(cells[base], on) || !parse_double(cells[base + 1], row[i].t_air) ||
            !parse_double(cells[base + 2], row[i].soa)) {
          throw ParseError(file, lineno, "bad per-unit value for unit " + std::to_string(i));
        }
        row[i].on = on != 0;
      }
      trace.per_unit.push_back(std::move(row));
    }
  }

  const fs::path sw = dir / "switches.csv";
  auto sin = open_in(sw);
  lineno = 1;
  if (!std::getline(sin, line) || trim(line) != "time_s,unit,s") {
    throw ParseError(sw.string(), 1, "expected header time_s,unit,s");
  }
  while (std::getline(sin, line)) {
    ++lineno;
    const auto cells = split(trim(line), ',');
    SwitchEvent e;
    int on = 0;
    if (cells.size() != 3 || !parse_int(cells[0], e.time_s) || !parse_int(cells[1], e.unit) ||
        !parse_int(cells[2], on)) {
      throw ParseError(sw.string(), lineno, "malformed switch event");
    }
    e.on = on != 0;
    trace.switches.push_back(e);
  }
  return trace;
}

// ---------------------------------------------------------------------------
// Reports

json report_to_json(const MetricsReport& r) {
  return {
      {"service", to_string(r.service)},
      {"rho", r.rho},
      {"seed", r.seed},
      {"fleet_size", r.fleet_size},
      {"warmup_s", r.warmup_s},
      {"window_s", r.window_s},
      {"tracking_rmse_w", r.tracking_rmse},
      {"lockout_violations", r.lockout_violations},
      {"mean_daily_cycles", r.mean_daily_cycles},
      {"reference_mean_daily_cycles", r.reference_mean_daily_cycles},
      {"mean_envelope_width", r.mean_envelope_width},
      {"mean_abs_avg_soa", r.mean_abs_avg_soa},
      {"mean_locked_w", r.mean_locked_w},
      {"mean_available_w", r.mean_available_w},
      {"max_fluctuation_controlled", r.max_fluctuation_controlled},
      {"max_fluctuation_uncontrolled", r.max_fluctuation_uncontrolled},
      {"fluctuation_controlled", r.fluctuation_controlled},
      {"fluctuation_uncontrolled", r.fluctuation_uncontrolled},
      {"avg_soa", r.avg_soa},
      {"soa_min", r.soa_min},
      {"soa_max", r.soa_max},
      {"histogram", r.histogram},
      {"reference_histogram", r.reference_histogram},
      {"daily_cycles", r.daily_cycles},
      {"reference_daily_cycles", r.reference_daily_cycles},
  };
}

void write_report(const MetricsReport& r, const fs::path& path) {
  auto out = open_out(path);
  out << report_to_json(r).dump(2) << '\n';
  check_written(out, path);
}

}  // namespace aclm
