// sweep.cpp

#include "neur/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <numbers>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "neur/error.hpp"

namespace neur {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

[[noreturn]] void config_error(const std::string& field, const std::string& message) {
  throw Error(ErrorKind::InvalidConfig, field + ": " + message);
}

double parse_number(std::string_view text, const std::string& field) {
  const std::string s(text);
  if (s == "pi") return std::numbers::pi;
  if (s.rfind("pi/", 0) == 0) {
    return std::numbers::pi / parse_number(std::string_view(s).substr(3), field);
  }
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size() || !std::isfinite(v)) {
    config_error(field, "not a number: '" + s + "'");
  }
  return v;
}

}  // namespace

const char* to_string(SweepMode mode) noexcept {
  switch (mode) {
    case SweepMode::Nu: return "nu";
    case SweepMode::Acceleration: return "acceleration";
    case SweepMode::AdChannel: return "ad-channel";
    case SweepMode::DephasingChannel: return "dephasing-channel";
    case SweepMode::Swap: return "swap";
  }
  return "unknown";
}

SweepMode parse_mode(std::string_view text) {
  for (SweepMode m : {SweepMode::Nu, SweepMode::Acceleration, SweepMode::AdChannel,
                      SweepMode::DephasingChannel, SweepMode::Swap}) {
    if (text == to_string(m)) return m;
  }
  config_error("mode", "unknown mode '" + std::string(text) + "'");
}

BellIndex parse_bell(std::string_view text) {
  for (BellIndex b : {BellIndex::Psi, BellIndex::Phi, BellIndex::PsiMinus, BellIndex::PhiMinus}) {
    if (text == to_string(b)) return b;
  }
  config_error("bell", "unknown Bell state '" + std::string(text) + "'");
}

std::vector<double> Grid::values() const {
  std::vector<double> out(static_cast<std::size_t>(points));
  const double step = (stop - start) / (points - 1);
  for (int i = 0; i < points; ++i) out[i] = start + i * step;
  out.back() = stop;
  return out;
}

Grid parse_grid(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos || text.find(':', second + 1) != std::string_view::npos) {
    config_error("grid", "expected start:stop:points, got '" + std::string(text) + "'");
  }
  Grid g;
  g.start = parse_number(text.substr(0, first), "grid");
  g.stop = parse_number(text.substr(first + 1, second - first - 1), "grid");
  const double points = parse_number(text.substr(second + 1), "grid");
  if (points != std::floor(points) || points > 1e7) config_error("grid", "points must be an integer");
  g.points = static_cast<int>(points);
  return g;
}

SweepConfig SweepConfig::defaults(SweepMode mode) {
  SweepConfig cfg;
  cfg.mode = mode;
  switch (mode) {
    case SweepMode::Nu:
    case SweepMode::Swap: cfg.grid = {0.0, 1.0, 201}; break;
    case SweepMode::Acceleration: cfg.grid = {0.0, kQuarterPi, 201}; break;
    case SweepMode::AdChannel: cfg.grid = {0.0, 100.0, 201}; break;
    case SweepMode::DephasingChannel: cfg.grid = {0.0, 20.0, 201}; break;
  }
  return cfg;
}

void SweepConfig::validate() const {
  if (grid.points < 2) config_error("grid", "points must be >= 2");
  if (!std::isfinite(grid.start) || !std::isfinite(grid.stop) || !(grid.start < grid.stop)) {
    config_error("grid", "start must be less than stop");
  }
  if (out.empty()) config_error("out", "output path is required");

  auto in_range = [](double v, double lo, double hi) { return v >= lo && v <= hi; };
  switch (mode) {
    case SweepMode::Nu:
    case SweepMode::Swap:
      if (!in_range(grid.start, 0.0, 1.0) || !in_range(grid.stop, 0.0, 1.0)) {
        config_error("grid", "nu grid must lie in [0,1]");
      }
      break;
    case SweepMode::Acceleration:
      if (!in_range(nu, 0.0, 1.0)) config_error("nu", "must lie in [0,1]");
      // Allow the pi/4 endpoint to be given with rounding slack.
      if (!in_range(grid.start, 0.0, kQuarterPi + 1e-12) ||
          !in_range(grid.stop, 0.0, kQuarterPi + 1e-12)) {
        config_error("grid", "acceleration grid must lie in [0, pi/4]");
      }
      if (r_b && !in_range(*r_b, 0.0, kQuarterPi + 1e-12)) config_error("rb", "must lie in [0, pi/4]");
      break;
    case SweepMode::AdChannel:
    case SweepMode::DephasingChannel:
      if (!in_range(nu, 0.0, 1.0)) config_error("nu", "must lie in [0,1]");
      if (grid.start < 0.0) config_error("grid", "gamma*t must be non-negative");
      if (!(g_over_gamma > 0.0) || !std::isfinite(g_over_gamma)) {
        config_error("g-over-gamma", "must be positive");
      }
      if (mode == SweepMode::AdChannel && g_over_gamma >= 2.0) {
        config_error("g-over-gamma", "amplitude damping requires g/gamma < 2");
      }
      break;
  }
}

TwoQubitDensity sweep_state(const SweepConfig& cfg, double param) {
  switch (cfg.mode) {
    case SweepMode::Nu: return from_x_params(bell_mixture(param));
    case SweepMode::Acceleration: {
      const double r = std::min(param, kQuarterPi);
      const double rb = cfg.r_b ? std::min(*cfg.r_b, kQuarterPi) : r;
      return accelerate(cfg.nu, AccelerationParams{r, rb});
    }
    case SweepMode::AdChannel: {
      const auto ch = amplitude_damping_kraus(ChannelParams{cfg.g_over_gamma, param});
      return apply_local_channel(from_x_params(bell_mixture(cfg.nu)), ch, ch);
    }
    case SweepMode::DephasingChannel: {
      const auto ch = dephasing_kraus(ChannelParams{cfg.g_over_gamma, param});
      return apply_local_channel(from_x_params(bell_mixture(cfg.nu)), ch, ch);
    }
    case SweepMode::Swap: {
      const auto source = from_x_params(bell_mixture(param));
      return bell_project_swap(source, source, cfg.bell);
    }
  }
  throw Error(ErrorKind::InvalidConfig, "unknown sweep mode");
}

std::vector<SweepRecord> evaluate_sweep(const SweepConfig& cfg) {
  cfg.validate();
  const std::vector<double> params = cfg.grid.values();
  const std::size_t n = params.size();
  std::vector<SweepRecord> records(n);
  std::vector<std::exception_ptr> failures(n);

  auto evaluate = [&](std::size_t i) {
    try {
      const SteeringReport r = full_report(sweep_state(cfg, params[i]));
      records[i] = SweepRecord{params[i], r.s, r.z, r.e_x, r.e_y, r.i_ab};
    } catch (...) {
      failures[i] = std::current_exception();
    }
  };

  unsigned workers = cfg.threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                      : cfg.threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, n));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) evaluate(i);
      });
    }
  }
  // Report the failure at the lowest grid index so errors are reproducible.
  for (const auto& f : failures) {
    if (f) std::rethrow_exception(f);
  }
  return records;
}

std::string format_value(double v) {
  if (v == 0.0) v = 0.0;  // drop the sign of negative zero
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12e", v);
  return buf;
}

std::string format_csv(const std::vector<SweepRecord>& records) {
  std::string out(kCsvHeader);
  out += '\n';
  for (const auto& r : records) {
    for (double v : {r.param, r.s, r.z, r.e_x, r.e_y}) {
      out += format_value(v);
      out += ',';
    }
    out += format_value(r.i_ab);
    out += '\n';
  }
  return out;
}

std::vector<SweepRecord> parse_csv(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw Error(ErrorKind::Io, "CSV header must be '" + std::string(kCsvHeader) + "'");
  }
  std::vector<SweepRecord> out;
  std::size_t row = 1;
  while (std::getline(in, line)) {
    ++row;
    if (line.empty()) continue;
    std::array<double, 6> v{};
    std::size_t pos = 0;
    for (std::size_t k = 0; k < v.size(); ++k) {
      const std::size_t comma = line.find(',', pos);
      const bool last = k + 1 == v.size();
      if ((comma == std::string::npos) != last) {
        throw Error(ErrorKind::Io, "CSV row " + std::to_string(row) + " must have 6 fields");
      }
      const std::string field = line.substr(pos, last ? std::string::npos : comma - pos);
      char* end = nullptr;
      v[k] = std::strtod(field.c_str(), &end);
      if (field.empty() || end != field.c_str() + field.size()) {
        throw Error(ErrorKind::Io, "CSV row " + std::to_string(row) + " has a malformed number");
      }
      pos = comma + 1;
    }
    out.push_back(SweepRecord{v[0], v[1], v[2], v[3], v[4], v[5]});
  }
  return out;
}

void write_csv(const std::filesystem::path& path, const std::vector<SweepRecord>& records) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  const std::string text = format_csv(records);
  f.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!f) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
}

std::vector<SweepRecord> read_csv(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_csv(ss.str());
}

std::filesystem::path plot_script_path(const std::filesystem::path& csv_path) {
  std::filesystem::path p = csv_path;
  p.replace_extension(".gp");
  return p;
}

std::string plot_script(const std::filesystem::path& csv_path, SweepMode mode) {
  const char* xlabel = "ν";
  switch (mode) {
    case SweepMode::Nu:
    case SweepMode::Swap: xlabel = "ν"; break;
    case SweepMode::Acceleration: xlabel = "r"; break;
    case SweepMode::AdChannel:
    case SweepMode::DephasingChannel: xlabel = "γt"; break;
  }
  const std::string csv = csv_path.filename().string();
  std::filesystem::path png = csv_path.filename();
  png.replace_extension(".png");

  std::ostringstream os;
  os << "# gnuplot script for " << csv << " (mode " << to_string(mode) << ")\n"
     << "# Run from the directory containing the CSV: gnuplot "
     << plot_script_path(csv_path).filename().string() << "\n"
     << "set terminal pngcairo size 800,500 enhanced\n"
     << "set output '" << png.string() << "'\n"
     << "set datafile separator ','\n"
     << "set xlabel '" << xlabel << "'\n"
     << "set ylabel 'steerability'\n"
     << "set yrange [0:*]\n"
     << "set key top right\n"
     << "plot '" << csv << "' skip 1 using 1:2 with lines dashtype 1 linewidth 2 title 'S^{A→B}', \\\n"
     << "     '" << csv << "' skip 1 using 1:3 with lines dashtype 2 linewidth 2 title 'Z^{A→B}'\n";
  return os.str();
}

std::filesystem::path emit_plot_script(const std::filesystem::path& csv_path, SweepMode mode) {
  if (!std::filesystem::exists(csv_path)) {
    throw Error(ErrorKind::Io, "CSV '" + csv_path.string() + "' does not exist");
  }
  const auto path = plot_script_path(csv_path);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw Error(ErrorKind::Io, "cannot open '" + path.string() + "' for writing");
  f << plot_script(csv_path, mode);
  if (!f) throw Error(ErrorKind::Io, "failed writing '" + path.string() + "'");
  return path;
}

SweepResult run_sweep(const SweepConfig& cfg) {
  SweepResult result;
  result.records = evaluate_sweep(cfg);
  write_csv(cfg.out, result.records);
  result.csv = cfg.out;
  result.script = emit_plot_script(cfg.out, cfg.mode);
  return result;
}

std::vector<FigureRun> figure_runs(const std::filesystem::path& dir, unsigned threads) {
  std::vector<FigureRun> runs;
  auto add = [&](std::string name, SweepConfig cfg) {
    cfg.out = dir / (name + ".csv");
    cfg.threads = threads;
    runs.push_back({std::move(name), std::move(cfg)});
  };

  add("fig1", SweepConfig::defaults(SweepMode::Nu));

  auto acc = SweepConfig::defaults(SweepMode::Acceleration);
  acc.nu = 1.0;
  acc.r_b = 0.0;
  add("fig2a", acc);
  acc.r_b = std::nullopt;
  add("fig2b", acc);

  const struct {
    const char* suffix;
    double nu;
    double g;
  } panels[] = {{"a", 1.0, 0.01}, {"b", 1.0, 0.1}, {"c", 0.1, 0.1}};
  for (const auto& [suffix, nu, g] : panels) {
    auto cfg = SweepConfig::defaults(SweepMode::AdChannel);
    cfg.nu = nu;
    cfg.g_over_gamma = g;
    add(std::string("fig3") + suffix, cfg);
  }
  for (const auto& [suffix, nu, g] : panels) {
    auto cfg = SweepConfig::defaults(SweepMode::DephasingChannel);
    cfg.nu = nu;
    cfg.g_over_gamma = g;
    add(std::string("fig4") + suffix, cfg);
  }

  auto swap = SweepConfig::defaults(SweepMode::Swap);
  swap.bell = BellIndex::Psi;
  add("fig5", swap);
  return runs;
}

SweepOverrides parse_config_json(std::string_view text) {
  using nlohmann::json;
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    config_error("config", std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) config_error("config", "top level must be an object");

  SweepOverrides o;
  for (const auto& [key, value] : j.items()) {
    try {
      if (key == "mode") {
        o.mode = value.get<std::string>();
      } else if (key == "grid") {
        o.grid = value.get<std::string>();
      } else if (key == "nu") {
        o.nu = value.get<double>();
      } else if (key == "rb") {
        o.rb = value.is_string() ? value.get<std::string>() : format_value(value.get<double>());
      } else if (key == "g_over_gamma") {
        o.g_over_gamma = value.get<double>();
      } else if (key == "bell") {
        o.bell = value.get<std::string>();
      } else if (key == "out") {
        o.out = value.get<std::string>();
      } else if (key == "threads") {
        o.threads = value.get<unsigned>();
      } else {
        config_error(key, "unknown config key");
      }
    } catch (const json::type_error&) {
      config_error(key, "wrong value type");
    }
  }
  return o;
}

SweepOverrides merge(SweepOverrides base, const SweepOverrides& top) {
  if (top.mode) base.mode = top.mode;
  if (top.grid) base.grid = top.grid;
  if (top.nu) base.nu = top.nu;
  if (top.rb) base.rb = top.rb;
  if (top.g_over_gamma) base.g_over_gamma = top.g_over_gamma;
  if (top.bell) base.bell = top.bell;
  if (top.out) base.out = top.out;
  if (top.threads) base.threads = top.threads;
  return base;
}

SweepConfig resolve_config(const SweepOverrides& s) {
  if (!s.mode) config_error("mode", "a sweep mode is required");
  SweepConfig cfg = SweepConfig::defaults(parse_mode(*s.mode));
  if (s.grid) cfg.grid = parse_grid(*s.grid);
  if (s.nu) cfg.nu = *s.nu;
  if (s.rb) {
    if (*s.rb == "track") {
      cfg.r_b = std::nullopt;
    } else {
      cfg.r_b = parse_number(*s.rb, "rb");
    }
  }
  if (s.g_over_gamma) cfg.g_over_gamma = *s.g_over_gamma;
  if (s.bell) cfg.bell = parse_bell(*s.bell);
  if (!s.out) config_error("out", "output path is required");
  cfg.out = *s.out;
  if (s.threads) cfg.threads = *s.threads;
  cfg.validate();
  return cfg;
}

}  // namespace neur
