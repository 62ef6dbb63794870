// sweep_main.cpp
// Command-line front end for the steering / entropy-squeezing sweeps.
//
//   sweep --mode nu --grid 0:1:201 --out fig1.csv
//   sweep --config run.json --nu 0.1
//   sweep --figures out/
//
// Exit codes: 0 success, 2 invalid config, 3 I/O failure, 4 internal
// consistency failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "neur/error.hpp"
#include "neur/sweep.hpp"

namespace {

constexpr int kExitInvalidConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitInternal = 4;

int exit_code_for(neur::ErrorKind kind) {
  switch (kind) {
    case neur::ErrorKind::InvalidConfig:
    case neur::ErrorKind::InvalidParameters:
    case neur::ErrorKind::InvalidRate: return kExitInvalidConfig;
    case neur::ErrorKind::Io: return kExitIo;
    default: return kExitInternal;
  }
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw neur::Error(neur::ErrorKind::Io, "cannot read config '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

void report(const neur::SweepResult& r) {
  std::cout << "wrote " << r.records.size() << " rows to " << r.csv.string() << " and "
            << r.script.string() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steering and conditional entropy-squeezing parameter sweeps"};

  neur::SweepOverrides flags;
  std::string config_path;
  std::string figures_dir;

  app.add_option("--mode", flags.mode, "nu | acceleration | ad-channel | dephasing-channel | swap");
  app.add_option("--grid", flags.grid, "start:stop:points (bounds accept pi and pi/k)");
  app.add_option("--nu", flags.nu, "initial-state parameter for acceleration and channel modes");
  app.add_option("--rb", flags.rb, "fixed r_b, or 'track' for r_b = r_a");
  app.add_option("--g-over-gamma", flags.g_over_gamma, "decay-rate ratio g/gamma");
  app.add_option("--bell", flags.bell, "psi | phi | psi-minus | phi-minus");
  app.add_option("--out", flags.out, "CSV output path; the plot script shares its basename");
  app.add_option("--threads", flags.threads, "worker threads, 0 = all cores (default 1)");
  app.add_option("--config", config_path, "JSON config file; flags win on conflict");
  app.add_option("--figures", figures_dir, "write every figure sweep into this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInvalidConfig;
  }

  try {
    if (!figures_dir.empty()) {
      std::error_code ec;
      std::filesystem::create_directories(figures_dir, ec);
      if (ec) throw neur::Error(neur::ErrorKind::Io, "cannot create '" + figures_dir + "'");
      for (const auto& run : neur::figure_runs(figures_dir, flags.threads.value_or(1))) {
        report(neur::run_sweep(run.config));
      }
      return 0;
    }

    neur::SweepOverrides settings;
    if (!config_path.empty()) settings = neur::parse_config_json(read_file(config_path));
    settings = neur::merge(settings, flags);
    report(neur::run_sweep(neur::resolve_config(settings)));
    return 0;
  } catch (const neur::Error& e) {
    std::cerr << "sweep: " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    std::cerr << "sweep: " << e.what() << "\n";
    return kExitInternal;
  }
}
