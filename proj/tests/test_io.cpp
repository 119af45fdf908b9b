#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "aclm/error.hpp"
#include "aclm/io.hpp"

using namespace aclm;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

fs::path write_text(const fs::path& p, const std::string& text) {
  std::ofstream(p) << text;
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("signal files load with their declared cadence") {
  TempDir d("aclm_io_signal");
  const auto p = write_text(d.path / "reg.csv",
                            "# regulation test\ntime_s,reg_d_pu\n0,0.1\n2,-0.2\n4,0.3\n6,0\n");
  const SignalSeries s = load_signal(p, Unit::PerUnit);
  CHECK(s.name == "reg_d");
  CHECK(s.cadence_s == 2);
  CHECK(s.start_s == 0);
  CHECK(s.samples == std::vector<double>{0.1, -0.2, 0.3, 0.0});
  CHECK(s.decimate(4).samples == std::vector<double>{0.1, 0.3});
}

TEST_CASE("signal round trip is exact") {
  TempDir d("aclm_io_roundtrip");
  SignalSeries s{"wind", Unit::Watt, 60, 120, {1.0e6, 1.0e6 / 3.0, 0.1 + 0.2, -5e-300}};
  write_signal(s, d.path / "w.csv");
  const SignalSeries r = load_signal(d.path / "w.csv", Unit::Watt);
  CHECK(r.samples == s.samples);
  CHECK(r.start_s == 120);
  CHECK(r.cadence_s == 60);
}

TEST_CASE("malformed signal rows report their line") {
  TempDir d("aclm_io_bad");
  auto line_of = [](const fs::path& p, Unit u) -> std::size_t {
    try {
      load_signal(p, u);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  CHECK(line_of(write_text(d.path / "a.csv", "time_s,wind_w\n0,1\n60,abc\n"), Unit::Watt) == 3);
  CHECK(line_of(write_text(d.path / "b.csv", "time_s,wind_w\n0,1\n60,2\n# gap\n130,3\n"), Unit::Watt) == 5);
  CHECK(line_of(write_text(d.path / "c.csv", "time_s,wind_w\n0,1,2\n"), Unit::Watt) == 2);
  CHECK(line_of(write_text(d.path / "e.csv", "t,wind_w\n0,1\n"), Unit::Watt) == 1);
}

TEST_CASE("unit suffix must match") {
  TempDir d("aclm_io_units");
  const auto p = write_text(d.path / "t.csv", "time_s,outdoor_c\n0,30\n60,31\n");
  CHECK_NOTHROW(load_signal(p, Unit::Celsius));
  CHECK_THROWS_AS(load_signal(p, Unit::Watt), ValidationError);
  const auto q = write_text(d.path / "s.csv", "time_s,solar_w_m2\n0,0\n60,10\n");
  CHECK_NOTHROW(load_signal(q, Unit::WattPerSquareMeter));
  CHECK_THROWS_AS(load_signal(q, Unit::Watt), ValidationError);
  const auto r = write_text(d.path / "n.csv", "time_s,wind\n0,0\n60,10\n");
  CHECK_THROWS_AS(load_signal(r, Unit::Watt), ValidationError);
  const auto big = write_text(d.path / "r.csv", "time_s,reg_d_pu\n0,0.5\n2,1.3\n");
  CHECK_THROWS_AS(load_signal(big, Unit::PerUnit), ValidationError);
}

TEST_CASE("scenario json round trip") {
  ScenarioConfig c;
  c.service = Service::FrequencyRegulation;
  c.dt_s = 4;
  c.rho = 0.75;
  c.capacity_w = 4.0e5;
  c.seed = 123456789012345ULL;
  c.synthetic.outdoor_max_c = 40.5;
  c.fleet.r_roof = {5.0, 0.5};
  c.fleet.shgc = {0.3, 0.4};
  const ScenarioConfig r = scenario_from_json(scenario_to_json(c));
  CHECK(scenario_to_json(r) == scenario_to_json(c));
  CHECK(r.seed == c.seed);
  CHECK(r.fleet.r_roof.mean == 5.0);
  CHECK(r.service == Service::FrequencyRegulation);
}

TEST_CASE("unknown scenario keys are rejected") {
  using nlohmann::json;
  CHECK_THROWS_AS(scenario_from_json(json{{"rhoo", 0.5}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"synthetic", {{"wind_speed", 3}}}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"fleet", {{"eer", {{"mean", 3.5}}}}}}), ValidationError);
  CHECK_THROWS_AS(scenario_from_json(json{{"rho", "high"}}), ValidationError);
  const ScenarioConfig c = scenario_from_json(json{{"rho", 0.25}});
  CHECK(c.rho == 0.25);
  CHECK(c.dt_s == 60);
}

TEST_CASE("relative signal paths resolve against the scenario file") {
  using nlohmann::json;
  const ScenarioConfig c =
      scenario_from_json(json{{"signals", {{"wind", "data/wind.csv"}}}}, fs::path("/srv/case"));
  CHECK(fs::path(c.signals.wind) == fs::path("/srv/case/data/wind.csv"));
}

TEST_CASE("trace round trip") {
  TempDir d("aclm_io_trace");
  ScenarioConfig c;
  c.fleet_size = 12;
  c.horizon_s = 3 * 3600;
  c.per_unit = true;
  c.seed = 4;
  const SimTrace t = run_scenario(c);
  write_trace(t, d.path);
  const SimTrace r = read_trace(d.path);
  CHECK(r.fleet_size == t.fleet_size);
  CHECK(r.initial_on == t.initial_on);
  CHECK(r.baseline.hourly_w == t.baseline.hourly_w);
  CHECK(r.baseline.daily_cycles == t.baseline.daily_cycles);
  REQUIRE(r.steps.size() == t.steps.size());
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    CHECK(r.steps[k].agg_w == t.steps[k].agg_w);
    CHECK(r.steps[k].tie_w == t.steps[k].tie_w);
    CHECK(r.steps[k].soa_min == t.steps[k].soa_min);
    for (std::size_t i = 0; i < t.fleet_size; ++i) {
      CHECK(r.per_unit[k][i].on == t.per_unit[k][i].on);
      CHECK(r.per_unit[k][i].t_air == t.per_unit[k][i].t_air);
    }
  }
  REQUIRE(r.switches.size() == t.switches.size());
  // Sub-day traces carry NaN cycle means, so compare the serialized form.
  CHECK(report_to_json(compute_report(r)).dump() == report_to_json(compute_report(t)).dump());

  // Writing what was read reproduces the files byte for byte.
  TempDir e("aclm_io_trace2");
  write_trace(r, e.path);
  for (const char* f : {"trace.csv", "switches.csv", "summary.json"}) {
    CHECK(slurp(d.path / f) == slurp(e.path / f));
  }
}

TEST_CASE("regulation traces keep NaN tie-line columns") {
  TempDir d("aclm_io_nan");
  ScenarioConfig c;
  c.service = Service::FrequencyRegulation;
  c.dt_s = 4;
  c.horizon_s = 600;
  c.fleet_size = 5;
  const SimTrace t = run_scenario(c);
  write_trace(t, d.path);
  const SimTrace r = read_trace(d.path);
  CHECK(std::isnan(r.steps[0].tie_w));
  CHECK(std::isnan(r.steps[0].tie0_w));
}

TEST_CASE("empty trace writes only the header") {
  TempDir d("aclm_io_empty");
  ScenarioConfig c;
  c.horizon_s = 0;
  c.fleet_size = 3;
  write_trace(run_scenario(c), d.path);
  const std::string text = slurp(d.path / "trace.csv");
  CHECK(std::count(text.begin(), text.end(), '\n') == 1);
  CHECK(text.rfind("time_s,target_w,agg_w,tie_w,p_star", 0) == 0);
  CHECK(read_trace(d.path).steps.empty());
}

TEST_CASE("shortest round-trip number formatting") {
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1e6)) == 1e6);
  CHECK(format_double(std::nan("")) == "nan");
  const double x = 1.0 / 7.0;
  CHECK(std::stod(format_double(x)) == x);
}
