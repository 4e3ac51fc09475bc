// kacsim: sample the Kac-model particle-1 velocity distribution and compare
// against the Krook-Wu solution.
//
//   kacsim density --curve exact --t 2 --grid -5:5:0.1
//   kacsim sample  --algorithm bird --n 50 --t 2 --replicates 100000
//   kacsim compare --algorithm nanbu,bird,poisson --n 5,10,20 --tvn-repeats 100
//   kacsim perfect --n 50 --epsilon 1e-6 --replicates 100000
//
// Exit status: 0 on success, 2 on configuration errors, 1 otherwise.

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kacsim/harness.hpp"

namespace {

constexpr int kExitConfig = 2;

struct FlagSet {
  std::map<std::string, std::string> values;
  std::string config;
  bool harvest_all = false;
  bool minimal_time = false;

  void add(CLI::App* app, const std::string& key, const std::string& flag, const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }
};

void add_common(CLI::App* app, FlagSet& flags) {
  flags.add(app, "algorithm", "--algorithm", "nanbu | nanbu_babovsky | bird | poisson (comma list for compare)");
  flags.add(app, "n", "--n", "particle count N (comma list for compare)");
  flags.add(app, "lambda", "--lambda", "collision rate; 'sqrt(pi)/2' selects the Krook-Wu rate");
  flags.add(app, "t", "--t", "final time");
  flags.add(app, "dt", "--dt", "time step for nanbu / nanbu_babovsky (comma list for compare)");
  flags.add(app, "replicates", "--replicates", "independent replicates (draws for perfect)");
  flags.add(app, "seed", "--seed", "64-bit seed; replicate r uses stream r");
  flags.add(app, "bins", "--bins", "histogram geometry lo:hi:width");
  flags.add(app, "out", "--out", "output path stem; writes <stem>.csv and <stem>.json");
  flags.add(app, "workers", "--workers", "worker threads (0 = hardware concurrency)");
  app->add_option("--config", flags.config, "flat key = value config file; flags override it");
}

kacsim::ExperimentSpec resolve(const FlagSet& flags) {
  kacsim::ExperimentSpec spec;
  if (!flags.config.empty()) kacsim::load_config(spec, flags.config);
  for (const auto& [key, value] : flags.values) kacsim::apply_setting(spec, key, value);
  if (flags.harvest_all) spec.harvest_all = true;
  if (flags.minimal_time) spec.minimal_time = true;
  return spec;
}

void emit(const kacsim::ExperimentSpec& spec, const std::string& suffix, const std::string& text, std::ostream& fallback) {
  if (spec.out.empty()) {
    fallback << text;
    return;
  }
  const std::string path = spec.out + suffix;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  std::cerr << "wrote " << path << '\n';
}

template <typename Writer>
std::string render(Writer&& write) {
  std::ostringstream os;
  write(os);
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Kac-model particle samplers and Krook-Wu validation"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(kacsim::version()));

  // density
  auto* density = app.add_subcommand("density", "evaluate an analytic density on a grid (CSV)");
  std::string curve_name = "limit";
  std::optional<std::string> density_t;
  std::string grid = "-5:5:0.1";
  std::string density_out;
  density->add_option("--curve", curve_name, "initial | exact | limit")->capture_default_str();
  density->add_option("--t", density_t, "time for the exact curve ('inf' allowed)");
  density->add_option("--grid", grid, "lo:hi:step")->capture_default_str();
  density->add_option("--out", density_out, "output path stem; writes <stem>.csv");

  FlagSet sample_flags, compare_flags, perfect_flags;
  auto* sample = app.add_subcommand("sample", "histogram of v1 at time t for one algorithm");
  add_common(sample, sample_flags);

  auto* compare = app.add_subcommand("compare", "mean TVN over repeats for each (algorithm, N, dt) cell");
  add_common(compare, compare_flags);
  compare_flags.add(compare, "tvn_repeats", "--tvn-repeats", "independent TVN estimates per cell");

  auto* perfect = app.add_subcommand("perfect", "epsilon-perfect stationary draws");
  add_common(perfect, perfect_flags);
  perfect_flags.add(perfect, "epsilon", "--epsilon", "coalescence tolerance");
  perfect_flags.add(perfect, "energy", "--energy", "sphere energy E (default 1.5 N)");
  perfect->add_flag("--harvest-all", perfect_flags.harvest_all,
                    "histogram every coordinate of each draw (dependent samples)");
  perfect->add_flag("--minimal-time", perfect_flags.minimal_time,
                    "also report each draw's smallest coalescing backward time");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (density->parsed()) {
      const auto curve = kacsim::parse_curve(curve_name);
      if (!curve) throw kacsim::ConfigError("curve", "unknown curve '" + curve_name + "'");
      std::optional<kacsim::Time> t;
      if (density_t) {
        if (*density_t == "inf" || *density_t == "infinity") {
          t = kacsim::Time::infinite();
        } else {
          try {
            t = kacsim::Time::finite(std::stod(*density_t));
          } catch (const std::exception&) {
            throw kacsim::ConfigError("t", "bad time '" + *density_t + "'");
          }
        }
      }
      const auto g = kacsim::parse_bins(grid);
      const auto rows = kacsim::cmd_density(*curve, t, g.lo, g.hi, g.width);
      kacsim::ExperimentSpec spec;
      spec.out = density_out;
      emit(spec, ".csv", render([&](std::ostream& os) { kacsim::write_density_csv(os, rows); }), std::cout);
    } else if (sample->parsed()) {
      const auto spec = resolve(sample_flags);
      const auto report = kacsim::cmd_sample(spec);
      const auto* target = report.target ? &*report.target : nullptr;
      emit(spec, ".csv", render([&](std::ostream& os) { kacsim::write_histogram_csv(os, report.histogram, target); }),
           std::cout);
      emit(spec, ".json", kacsim::sample_summary_json(report) + "\n", std::cerr);
    } else if (compare->parsed()) {
      const auto spec = resolve(compare_flags);
      const auto rows = kacsim::cmd_compare(spec);
      emit(spec, ".csv", render([&](std::ostream& os) { kacsim::write_compare_csv(os, rows); }), std::cout);
      emit(spec, ".json", kacsim::compare_summary_json(spec, rows) + "\n", std::cerr);
    } else if (perfect->parsed()) {
      const auto spec = resolve(perfect_flags);
      const auto report = kacsim::cmd_perfect(spec);
      emit(spec, ".csv",
           render([&](std::ostream& os) { kacsim::write_histogram_csv(os, report.histogram, &report.target); }),
           std::cout);
      emit(spec, "_draws.csv",
           render([&](std::ostream& os) { kacsim::write_perfect_draws_csv(os, report.draws, spec.minimal_time); }),
           std::cout);
      emit(spec, ".json", kacsim::perfect_summary_json(report) + "\n", std::cerr);
    }
  } catch (const kacsim::ConfigError& e) {
    std::cerr << "config error [" << e.rule() << "]: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
