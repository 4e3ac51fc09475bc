#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "kacsim/collision.hpp"
#include "kacsim/rng.hpp"

namespace kacsim {

enum class Algorithm { nanbu, nanbu_babovsky, bird, poisson };

std::string_view to_string(Algorithm a) noexcept;
/// Accepts the canonical names plus "nb" and "dsmc"; nullopt otherwise.
std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept;
bool uses_time_step(Algorithm a) noexcept;

/// Raised when a configuration violates one of the algorithm's rules. The
/// rule identifier is stable and is what the CLI reports.
class ConfigError : public std::invalid_argument {
 public:
  ConfigError(std::string rule, const std::string& detail)
      : std::invalid_argument(rule + ": " + detail), rule_(std::move(rule)) {}
  const std::string& rule() const noexcept { return rule_; }

 private:
  std::string rule_;
};

struct SimConfig {
  Algorithm algorithm = Algorithm::bird;
  std::size_t n_particles = 50;
  double lambda = 0.0;
  double t_final = 0.0;
  /// Time step; only read by nanbu and nanbu_babovsky.
  double dt = 0.0;
};

/// Throws ConfigError naming the violated rule.
void validate(const SimConfig& cfg);

struct RunResult {
  Ensemble final_velocities;
  double v1 = 0.0;
  std::uint64_t collisions_processed = 0;
  /// Poisson algorithm only: ensemble collisions not simulated on the tail
  /// (T_K, t_final], drawn at the full ensemble rate lambda N / 2.
  std::uint64_t collisions_saved = 0;
  /// Poisson algorithm only: t_final - T_K (t_final when K = 0).
  double tail_length = 0.0;
};

/// floor(x) with probability floor(x) + 1 - x, otherwise floor(x) + 1.
std::uint64_t round_probabilistic(double x, RngStream& s);

/// Number of time steps t_final / dt; throws ConfigError if dt does not
/// divide t_final to 1e-9 relative.
std::uint64_t step_count(double t_final, double dt);

/// Number of Bird collisions: a collision is processed only when the clock
/// after the increment 2/(lambda N) is still <= t_final.
std::uint64_t bird_collision_count(double t_final, double lambda, std::size_t n);

RunResult run_nanbu(const SimConfig& cfg, RngStream& s);
RunResult run_nanbu_babovsky(const SimConfig& cfg, RngStream& s);
RunResult run_bird_dsmc(const SimConfig& cfg, RngStream& s);
RunResult run_exact_poisson(const SimConfig& cfg, RngStream& s);

/// The same algorithms started from a caller-supplied ensemble instead of
/// iid f0 draws.
RunResult run_nanbu(const SimConfig& cfg, Ensemble initial, RngStream& s);
RunResult run_nanbu_babovsky(const SimConfig& cfg, Ensemble initial, RngStream& s);
RunResult run_bird_dsmc(const SimConfig& cfg, Ensemble initial, RngStream& s);
RunResult run_exact_poisson(const SimConfig& cfg, Ensemble initial, RngStream& s);

/// Dispatches on cfg.algorithm. Validates cfg first.
RunResult run(const SimConfig& cfg, RngStream& s);

/// (N/2)(1 - exp(-lambda t)).
double expected_savings(std::size_t n, double lambda, double t);

}  // namespace kacsim
