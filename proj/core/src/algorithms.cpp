#include "kacsim/algorithms.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace kacsim {

namespace {

constexpr std::uint64_t kTelemetryStreamTag = 0x7e1e;

void validate_for(const SimConfig& cfg, Algorithm algorithm) {
  if (cfg.n_particles < 2) throw ConfigError("n_particles", "N must be >= 2");
  if (!std::isfinite(cfg.lambda) || cfg.lambda <= 0.0) throw ConfigError("lambda", "lambda must be finite and > 0");
  if (!std::isfinite(cfg.t_final) || cfg.t_final < 0.0) throw ConfigError("t_final", "t must be finite and >= 0");
  if (!uses_time_step(algorithm)) return;

  if (!std::isfinite(cfg.dt) || cfg.dt <= 0.0) throw ConfigError("dt", "time step must be finite and > 0");
  if (cfg.lambda * cfg.dt > 1.0) throw ConfigError("lambda_dt", "lambda * dt must be <= 1");
  step_count(cfg.t_final, cfg.dt);
  if (algorithm == Algorithm::nanbu_babovsky) {
    const double n = static_cast<double>(cfg.n_particles);
    if (cfg.lambda * n * cfg.dt / 2.0 + 1.0 > n / 2.0) {
      throw ConfigError("pair_capacity", "lambda * N * dt / 2 + 1 must be <= N / 2");
    }
  }
}

Ensemble initial_for(const SimConfig& cfg, RngStream& s) { return Ensemble::sample_initial(cfg.n_particles, s); }

void check_initial(const SimConfig& cfg, const Ensemble& e) {
  if (e.size() != cfg.n_particles) throw ConfigError("n_particles", "initial ensemble size differs from N");
}

RunResult finish(Ensemble e, std::uint64_t collisions) {
  RunResult r{std::move(e)};
  r.v1 = r.final_velocities[0];
  r.collisions_processed = collisions;
  return r;
}

}  // namespace

std::string_view to_string(Algorithm a) noexcept {
  switch (a) {
    case Algorithm::nanbu: return "nanbu";
    case Algorithm::nanbu_babovsky: return "nanbu_babovsky";
    case Algorithm::bird: return "bird";
    case Algorithm::poisson: return "poisson";
  }
  return "unknown";
}

std::optional<Algorithm> parse_algorithm(std::string_view name) noexcept {
  if (name == "nanbu") return Algorithm::nanbu;
  if (name == "nanbu_babovsky" || name == "nb") return Algorithm::nanbu_babovsky;
  if (name == "bird" || name == "dsmc") return Algorithm::bird;
  if (name == "poisson") return Algorithm::poisson;
  return std::nullopt;
}

bool uses_time_step(Algorithm a) noexcept { return a == Algorithm::nanbu || a == Algorithm::nanbu_babovsky; }

void validate(const SimConfig& cfg) { validate_for(cfg, cfg.algorithm); }

std::uint64_t round_probabilistic(double x, RngStream& s) {
  if (!std::isfinite(x) || x < 0.0) throw std::invalid_argument("round_probabilistic: x must be finite and >= 0");
  const double lower = std::floor(x);
  const double frac = x - lower;
  auto k = static_cast<std::uint64_t>(lower);
  if (frac > 0.0 && s.next_double() < frac) ++k;
  return k;
}

std::uint64_t step_count(double t_final, double dt) {
  const double ratio = t_final / dt;
  const double steps = std::round(ratio);
  if (std::fabs(steps * dt - t_final) > 1e-9 * std::max(t_final, dt)) {
    throw ConfigError("dt_divides_t", "dt must divide t evenly");
  }
  return static_cast<std::uint64_t>(steps);
}

std::uint64_t bird_collision_count(double t_final, double lambda, std::size_t n) {
  // t / dt_c with dt_c = 2 / (lambda N); the slack absorbs rounding when t is
  // an exact multiple of dt_c.
  const double ratio = t_final * lambda * static_cast<double>(n) / 2.0;
  return static_cast<std::uint64_t>(std::floor(ratio * (1.0 + 1e-12)));
}

RunResult run_nanbu(const SimConfig& cfg, RngStream& s) {
  validate_for(cfg, Algorithm::nanbu);
  return run_nanbu(cfg, initial_for(cfg, s), s);
}

RunResult run_nanbu(const SimConfig& cfg, Ensemble e, RngStream& s) {
  validate_for(cfg, Algorithm::nanbu);
  check_initial(cfg, e);
  const std::size_t n = e.size();
  const double p = cfg.lambda * cfg.dt;
  const std::uint64_t steps = step_count(cfg.t_final, cfg.dt);
  std::uint64_t collisions = 0;
  if (p == 0.0) return finish(std::move(e), 0);

  // Colliding particles are located by geometric skips, which is the same
  // law as one Bernoulli(p) trial per particle.
  const double log_q = std::log1p(-p);
  auto v = e.velocities();
  std::vector<std::pair<std::size_t, double>> pending;
  for (std::uint64_t step = 0; step < steps; ++step) {
    pending.clear();
    std::size_t i = 0;
    for (;;) {
      const double skip = p >= 1.0 ? 0.0 : std::floor(std::log(s.next_double_open_zero()) / log_q);
      if (skip >= static_cast<double>(n - i)) break;
      i += static_cast<std::size_t>(skip);
      auto j = static_cast<std::size_t>(s.next_below(n - 1));
      if (j >= i) ++j;
      const double theta = random_angle(s).radians();
      // Partners are read from the step-start state; writes are deferred.
      pending.emplace_back(i, v[i] * std::cos(theta) + v[j] * std::sin(theta));
      if (++i >= n) break;
    }
    for (const auto& [idx, value] : pending) v[idx] = value;
    collisions += pending.size();
  }
  return finish(std::move(e), collisions);
}

RunResult run_nanbu_babovsky(const SimConfig& cfg, RngStream& s) {
  validate_for(cfg, Algorithm::nanbu_babovsky);
  return run_nanbu_babovsky(cfg, initial_for(cfg, s), s);
}

RunResult run_nanbu_babovsky(const SimConfig& cfg, Ensemble e, RngStream& s) {
  validate_for(cfg, Algorithm::nanbu_babovsky);
  check_initial(cfg, e);
  const std::size_t n = e.size();
  const double expected_pairs = cfg.lambda * static_cast<double>(n) * cfg.dt / 2.0;
  const std::uint64_t steps = step_count(cfg.t_final, cfg.dt);
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  auto v = e.velocities();
  std::uint64_t collisions = 0;
  for (std::uint64_t step = 0; step < steps; ++step) {
    const std::uint64_t m = round_probabilistic(expected_pairs, s);
    if (m > n / 2) throw ConfigError("pair_capacity", "rounded pair count exceeds N / 2");
    partial_shuffle(s, perm, 2 * m);
    for (std::uint64_t k = 0; k < m; ++k) {
      collide_in_place(v, perm[2 * k], perm[2 * k + 1], random_angle(s));
    }
    collisions += m;
  }
  return finish(std::move(e), collisions);
}

RunResult run_bird_dsmc(const SimConfig& cfg, RngStream& s) {
  validate_for(cfg, Algorithm::bird);
  return run_bird_dsmc(cfg, initial_for(cfg, s), s);
}

RunResult run_bird_dsmc(const SimConfig& cfg, Ensemble e, RngStream& s) {
  validate_for(cfg, Algorithm::bird);
  check_initial(cfg, e);
  const std::uint64_t count = bird_collision_count(cfg.t_final, cfg.lambda, e.size());
  auto v = e.velocities();
  for (std::uint64_t k = 0; k < count; ++k) {
    const auto [i, j] = random_pair(s, v.size(), false);
    collide_in_place(v, i, j, random_angle(s));
  }
  return finish(std::move(e), count);
}

RunResult run_exact_poisson(const SimConfig& cfg, RngStream& s) {
  validate_for(cfg, Algorithm::poisson);
  return run_exact_poisson(cfg, initial_for(cfg, s), s);
}

RunResult run_exact_poisson(const SimConfig& cfg, Ensemble e, RngStream& s) {
  validate_for(cfg, Algorithm::poisson);
  check_initial(cfg, e);
  const std::size_t n = e.size();
  const double t = cfg.t_final;
  const double lambda = cfg.lambda;

  const std::uint64_t k = poisson(s, lambda * t);
  std::vector<double> times(k);
  for (auto& u : times) u = t * s.next_double();
  std::stable_sort(times.begin(), times.end());

  // Particle 1 is index 0; the background sub-ensemble is indices 1..n-1.
  auto v = e.velocities();
  auto background = v.subspan(1);
  const double background_rate = lambda * static_cast<double>(n - 1) / 2.0;
  std::uint64_t collisions = 0;
  double previous = 0.0;
  for (double now : times) {
    if (background.size() >= 2) {
      const std::uint64_t k_i = poisson(s, background_rate * (now - previous));
      for (std::uint64_t c = 0; c < k_i; ++c) {
        const auto [a, b] = random_pair(s, background.size(), false);
        collide_in_place(background, a, b, random_angle(s));
      }
      collisions += k_i;
    }
    const auto partner = 1 + static_cast<std::size_t>(s.next_below(n - 1));
    collide_in_place(v, 0, partner, random_angle(s));
    ++collisions;
    previous = now;
  }

  RunResult r = finish(std::move(e), collisions);
  r.tail_length = t - previous;
  RngStream telemetry = s.substream(kTelemetryStreamTag);
  r.collisions_saved = poisson(telemetry, lambda * static_cast<double>(n) * r.tail_length / 2.0);
  return r;
}

RunResult run(const SimConfig& cfg, RngStream& s) {
  validate(cfg);
  switch (cfg.algorithm) {
    case Algorithm::nanbu: return run_nanbu(cfg, s);
    case Algorithm::nanbu_babovsky: return run_nanbu_babovsky(cfg, s);
    case Algorithm::bird: return run_bird_dsmc(cfg, s);
    case Algorithm::poisson: return run_exact_poisson(cfg, s);
  }
  throw ConfigError("algorithm", "unknown algorithm");
}

double expected_savings(std::size_t n, double lambda, double t) {
  if (n < 2 || !(lambda > 0.0) || !(t >= 0.0)) throw std::invalid_argument("expected_savings: bad arguments");
  return static_cast<double>(n) / 2.0 * -std::expm1(-lambda * t);
}

}  // namespace kacsim
