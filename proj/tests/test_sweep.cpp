#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>
#include <unistd.h>

#include "doctest.h"
#include "neur/error.hpp"
#include "neur/sweep.hpp"

using namespace neur;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir() {
  const fs::path dir = fs::temp_directory_path() / ("neur_sweep_test_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected neur::Error");
  return ErrorKind::InvalidState;
}

std::vector<std::string> csv_fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string f;
  while (std::getline(ss, f, ',')) out.push_back(f);
  return out;
}

}  // namespace

TEST_CASE("grid parsing and values") {
  const Grid g = parse_grid("0:1:101");
  CHECK(g.start == 0.0);
  CHECK(g.stop == 1.0);
  CHECK(g.points == 101);
  const auto v = g.values();
  CHECK(v.size() == 101);
  CHECK(v.front() == 0.0);
  CHECK(v.back() == 1.0);
  CHECK(v[50] == 0.5);
  CHECK(std::is_sorted(v.begin(), v.end()));

  CHECK(parse_grid("0:pi/4:50").stop == std::numbers::pi / 4);
  CHECK(kind_of([] { parse_grid("0:1"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_grid("0:x:3"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_grid("0:1:2.5"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_grid("0:1:2:3"); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("config validation names the offending field") {
  auto expect_field = [](SweepConfig cfg, const std::string& field) {
    try {
      cfg.validate();
      FAIL("expected invalid config for " << field);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::InvalidConfig);
      CHECK(std::string(e.what()).find(field) != std::string::npos);
    }
  };
  auto cfg = SweepConfig::defaults(SweepMode::Nu);
  cfg.grid.points = 1;
  expect_field(cfg, "grid");
  cfg = SweepConfig::defaults(SweepMode::Nu);
  cfg.grid = {0.8, 0.2, 10};
  expect_field(cfg, "grid");
  cfg = SweepConfig::defaults(SweepMode::Nu);
  cfg.grid = {0.0, 2.0, 10};
  expect_field(cfg, "grid");
  cfg = SweepConfig::defaults(SweepMode::Acceleration);
  cfg.r_b = 1.0;
  expect_field(cfg, "rb");
  cfg = SweepConfig::defaults(SweepMode::AdChannel);
  cfg.g_over_gamma = 2.0;
  expect_field(cfg, "g-over-gamma");
  cfg = SweepConfig::defaults(SweepMode::DephasingChannel);
  cfg.nu = -0.5;
  expect_field(cfg, "nu");
  cfg = SweepConfig::defaults(SweepMode::Swap);
  cfg.out.clear();
  expect_field(cfg, "out");

  CHECK(kind_of([] { parse_mode("bogus"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_bell("omega"); }) == ErrorKind::InvalidConfig);
  CHECK(parse_bell("phi-minus") == BellIndex::PhiMinus);
}

TEST_CASE("run_sweep: nu mode endpoint row") {
  auto cfg = SweepConfig::defaults(SweepMode::Nu);
  cfg.grid = parse_grid("0:1:101");
  cfg.out = scratch_dir() / "nu.csv";
  const auto result = run_sweep(cfg);
  CHECK(result.records.size() == 101);
  const std::string text = slurp(result.csv);
  std::istringstream in(text);
  std::string header, first;
  std::getline(in, header);
  std::getline(in, first);
  CHECK(header == "param,s,z,e_x,e_y,i_ab");
  const auto f = csv_fields(first);
  REQUIRE(f.size() == 6);
  CHECK(f[0] == "0.000000000000e+00");
  CHECK(f[1] == "1.000000000000e+00");
  CHECK(f[2] == "1.000000000000e+00");
  CHECK(text.find('\r') == std::string::npos);
  CHECK(fs::exists(result.script));
  CHECK(result.script.extension() == ".gp");
}

TEST_CASE("run_sweep: acceleration starts at full steering") {
  auto cfg = SweepConfig::defaults(SweepMode::Acceleration);
  cfg.nu = 1.0;
  cfg.r_b = 0.0;
  cfg.grid = parse_grid("0:pi/4:50");
  cfg.out = scratch_dir() / "acc.csv";
  const auto rec = run_sweep(cfg).records;
  CHECK(rec.size() == 50);
  CHECK(format_value(rec.front().s) == "1.000000000000e+00");
  CHECK(rec.back().param == std::numbers::pi / 4);
}

TEST_CASE("run_sweep: swap midpoint is unsteerable") {
  auto cfg = SweepConfig::defaults(SweepMode::Swap);
  cfg.bell = BellIndex::Psi;
  cfg.out = scratch_dir() / "swap.csv";
  const auto rec = run_sweep(cfg).records;
  const auto mid = std::find_if(rec.begin(), rec.end(), [](const SweepRecord& r) { return r.param == 0.5; });
  REQUIRE(mid != rec.end());
  CHECK(format_value(mid->s) == "0.000000000000e+00");
}

TEST_CASE("sweep output does not depend on the thread count") {
  for (SweepMode mode : {SweepMode::Nu, SweepMode::Acceleration, SweepMode::AdChannel,
                         SweepMode::DephasingChannel, SweepMode::Swap}) {
    auto cfg = SweepConfig::defaults(mode);
    cfg.r_b = std::nullopt;
    cfg.threads = 1;
    const std::string serial = format_csv(evaluate_sweep(cfg));
    cfg.threads = 7;
    CHECK(format_csv(evaluate_sweep(cfg)) == serial);
    cfg.threads = 0;
    CHECK(format_csv(evaluate_sweep(cfg)) == serial);
  }
}

TEST_CASE("CSV round trip at printed precision") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<SweepRecord> rec(37);
    for (auto& r : rec) r = {u(rng), u(rng), u(rng), u(rng) * 1e-9, u(rng) * 1e7, u(rng)};
    const std::string text = format_csv(rec);
    const auto back = parse_csv(text);
    REQUIRE(back.size() == rec.size());
    CHECK(format_csv(back) == text);
    for (std::size_t i = 0; i < rec.size(); ++i) CHECK(std::abs(back[i].param - rec[i].param) <= 1e-11 * 10);
  }
  CHECK(format_value(-0.0) == "0.000000000000e+00");
  CHECK(kind_of([] { parse_csv("a,b\n"); }) == ErrorKind::Io);
  CHECK(kind_of([] { parse_csv("param,s,z,e_x,e_y,i_ab\n1,2,3\n"); }) == ErrorKind::Io);
  CHECK(kind_of([] { parse_csv("param,s,z,e_x,e_y,i_ab\n1,2,3,4,5,x\n"); }) == ErrorKind::Io);

  auto cfg = SweepConfig::defaults(SweepMode::DephasingChannel);
  cfg.out = scratch_dir() / "rt.csv";
  const auto res = run_sweep(cfg);
  CHECK(format_csv(read_csv(res.csv)) == slurp(res.csv));
}

TEST_CASE("plot script") {
  const fs::path dir = scratch_dir();
  const fs::path csv = dir / "plot_me.csv";
  write_csv(csv, {SweepRecord{0, 1, 1, 1, 1, 1}});

  const auto nu = emit_plot_script(csv, SweepMode::Nu);
  const std::string nu_text = slurp(nu);
  CHECK(nu == dir / "plot_me.gp");
  CHECK(nu_text.find("set xlabel 'ν'") != std::string::npos);
  CHECK(nu_text.find("using 1:2 with lines dashtype 1") != std::string::npos);
  CHECK(nu_text.find("using 1:3 with lines dashtype 2") != std::string::npos);
  CHECK(nu_text.find("'plot_me.csv'") != std::string::npos);

  CHECK(slurp(emit_plot_script(csv, SweepMode::AdChannel)).find("set xlabel 'γt'") != std::string::npos);
  CHECK(slurp(emit_plot_script(csv, SweepMode::Acceleration)).find("set xlabel 'r'") != std::string::npos);

  const std::string once = slurp(emit_plot_script(csv, SweepMode::Swap));
  CHECK(slurp(emit_plot_script(csv, SweepMode::Swap)) == once);

  CHECK(kind_of([&] { emit_plot_script(dir / "missing.csv", SweepMode::Nu); }) == ErrorKind::Io);
}

TEST_CASE("unwritable output path") {
  auto cfg = SweepConfig::defaults(SweepMode::Nu);
  cfg.grid.points = 3;
  cfg.out = scratch_dir() / "no_such_dir" / "x.csv";
  CHECK(kind_of([&] { run_sweep(cfg); }) == ErrorKind::Io);
}

TEST_CASE("config file and flags") {
  const auto file = parse_config_json(R"({"mode":"ad-channel","grid":"0:10:11","nu":0.1,
      "g_over_gamma":0.1,"out":"a.csv","threads":2})");
  SweepOverrides flags;
  flags.nu = 1.0;
  flags.out = "b.csv";
  const SweepConfig cfg = resolve_config(merge(file, flags));
  CHECK(cfg.mode == SweepMode::AdChannel);
  CHECK(cfg.grid.points == 11);
  CHECK(cfg.nu == 1.0);
  CHECK(cfg.g_over_gamma == 0.1);
  CHECK(cfg.out == "b.csv");
  CHECK(cfg.threads == 2);

  const auto track = resolve_config(parse_config_json(R"({"mode":"acceleration","rb":"track","out":"c.csv"})"));
  CHECK_FALSE(track.r_b.has_value());
  const auto fixed = resolve_config(parse_config_json(R"({"mode":"acceleration","rb":0.25,"out":"c.csv"})"));
  REQUIRE(fixed.r_b.has_value());
  CHECK(*fixed.r_b == doctest::Approx(0.25));

  const auto swap = resolve_config(parse_config_json(R"({"mode":"swap","bell":"phi","out":"s.csv"})"));
  CHECK(swap.bell == BellIndex::Phi);
  CHECK(swap.grid.points == 201);

  CHECK(kind_of([] { parse_config_json("{not json"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_config_json(R"({"colour":"red"})"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { parse_config_json(R"({"nu":"high"})"); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { resolve_config(parse_config_json(R"({"out":"x.csv"})")); }) == ErrorKind::InvalidConfig);
  CHECK(kind_of([] { resolve_config(parse_config_json(R"({"mode":"nu"})")); }) == ErrorKind::InvalidConfig);
}

TEST_CASE("figure runs cover every panel") {
  const auto runs = figure_runs("figs");
  std::vector<std::string> names;
  for (const auto& r : runs) {
    names.push_back(r.name);
    CHECK_NOTHROW(r.config.validate());
    CHECK(r.config.grid.points == 201);
  }
  CHECK(names == std::vector<std::string>{"fig1", "fig2a", "fig2b", "fig3a", "fig3b", "fig3c", "fig4a",
                                          "fig4b", "fig4c", "fig5"});
  CHECK(runs[1].config.r_b == 0.0);
  CHECK_FALSE(runs[2].config.r_b.has_value());
  CHECK(runs[5].config.nu == 0.1);
  CHECK(runs[3].config.g_over_gamma == 0.01);
}
