#include "kacsim/perfect_sampler.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace kacsim {

namespace {

constexpr std::uint64_t kSignStreamTag = 0x5167;

void check_state(const CornerState& state, double previous_diameter, double diameter) {
  const std::size_t n = state.size();
  if (diameter > previous_diameter * (1.0 + 1e-12) + 1e-12) {
    throw std::logic_error("cftp: corner diameter increased from " + std::to_string(previous_diameter) + " to " +
                           std::to_string(diameter));
  }
  for (std::size_t i = 0; i < n; ++i) {
    double norm2 = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double c = state.at(i, j);
      if (!(c >= 0.0)) throw std::logic_error("cftp: corner left the first octant");
      norm2 += c * c;
    }
    if (std::fabs(norm2 - state.energy()) > 1e-9 * state.energy()) {
      throw std::logic_error("cftp: corner left the energy sphere");
    }
  }
}

}  // namespace

CornerState::CornerState(std::size_t n, double energy) : n_(n), energy_(energy), coords_(n * n, 0.0) {
  if (n < 2) throw std::invalid_argument("CornerState: n must be >= 2");
  if (!std::isfinite(energy) || energy <= 0.0) throw std::invalid_argument("CornerState: energy must be > 0");
  reset();
}

std::vector<double> CornerState::corner(std::size_t i) const {
  std::vector<double> c(n_);
  for (std::size_t j = 0; j < n_; ++j) c[j] = at(i, j);
  return c;
}

void CornerState::reset() noexcept {
  std::fill(coords_.begin(), coords_.end(), 0.0);
  const double radius = std::sqrt(energy_);
  for (std::size_t i = 0; i < n_; ++i) coords_[i * n_ + i] = radius;
}

void CornerState::apply(const UpdateRecord& u) noexcept { apply(u, std::sin(u.theta), std::cos(u.theta)); }

void CornerState::apply(const UpdateRecord& u, double sin_theta, double cos_theta) noexcept {
  double* first = coords_.data() + static_cast<std::size_t>(u.first) * n_;
  double* second = coords_.data() + static_cast<std::size_t>(u.second) * n_;
  for (std::size_t i = 0; i < n_; ++i) {
    const double e = first[i] * first[i] + second[i] * second[i];
    // sqrt(e) cos(theta) equals sqrt(e - a^2) on [0, pi/2) without the
    // cancellation that makes near-coalesced corners jitter.
    const double r = std::sqrt(e);
    first[i] = r * sin_theta;
    second[i] = r * cos_theta;
  }
}

double CornerState::max_coordinate_spread() const noexcept {
  double spread = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    const auto row = std::span<const double>(coords_).subspan(j * n_, n_);
    const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
    spread = std::max(spread, *hi - *lo);
  }
  return spread;
}

double max_pairwise_distance(const CornerState& state) noexcept {
  const std::size_t n = state.size();
  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      double d2 = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        const double diff = state.at(a, j) - state.at(b, j);
        d2 += diff * diff;
      }
      best = std::max(best, d2);
    }
  }
  return std::sqrt(best);
}

CftpSampler::CftpSampler(std::size_t n, double energy, double epsilon, RngStream stream, CftpOptions options)
    : n_(n),
      energy_(energy),
      epsilon_(epsilon),
      stream_(stream),
      sign_stream_(stream.substream(kSignStreamTag)),
      options_(options),
      state_(n, energy) {
  if (!std::isfinite(epsilon) || epsilon <= 0.0) throw std::invalid_argument("cftp: epsilon must be > 0");
}

void CftpSampler::extend_history(std::uint64_t backward_time) {
  while (history_.size() < backward_time) {
    UpdateRecord u;
    u.theta = 0.5 * std::numbers::pi * stream_.next_double();
    const auto [p, q] = random_pair(stream_, n_, true);
    u.first = static_cast<std::uint32_t>(p);
    u.second = static_cast<std::uint32_t>(q);
    history_.push_back(u);
    sin_.push_back(std::sin(u.theta));
    cos_.push_back(std::cos(u.theta));
  }
}

const CornerState& CftpSampler::run_attempt(std::uint64_t backward_time) {
  extend_history(backward_time);
  state_.reset();
  double diameter = options_.check_invariants ? max_pairwise_distance(state_) : 0.0;
  for (std::uint64_t k = backward_time; k-- > 0;) {
    state_.apply(history_[k], sin_[k], cos_[k]);
    if (options_.check_invariants) {
      const double next = max_pairwise_distance(state_);
      check_state(state_, diameter, next);
      diameter = next;
    }
  }
  return state_;
}

PerfectDraw CftpSampler::sample() {
  std::uint32_t attempts = 0;
  for (std::uint64_t backward_time = 1; backward_time <= options_.max_backward_time; backward_time *= 2) {
    ++attempts;
    const CornerState& state = run_attempt(backward_time);
    if (state.max_coordinate_spread() >= epsilon_) continue;
    const double diameter = max_pairwise_distance(state);
    if (diameter >= epsilon_) continue;

    PerfectDraw draw;
    draw.coupling_time = backward_time;
    draw.final_diameter = diameter;
    draw.attempts = attempts;
    draw.velocity_vector.assign(n_, 0.0);
    for (std::size_t j = 0; j < n_; ++j) {
      double sum = 0.0;
      for (std::size_t i = 0; i < n_; ++i) sum += state.at(i, j);
      draw.velocity_vector[j] = random_sign(sign_stream_) * sum / static_cast<double>(n_);
    }
    if (options_.resolve_minimal_time) draw.minimal_coupling_time = minimal_coupling_time(backward_time);
    return draw;
  }
  throw std::runtime_error("cftp: no coalescence before backward time " +
                           std::to_string(options_.max_backward_time));
}

std::uint64_t CftpSampler::minimal_coupling_time(std::uint64_t coalesced_at) {
  // Invariant: lo does not coalesce (or is 0), hi does.
  std::uint64_t lo = coalesced_at / 2;
  std::uint64_t hi = coalesced_at;
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    if (max_pairwise_distance(run_attempt(mid)) < epsilon_) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

PerfectDraw cftp_sample(std::size_t n, double energy, double epsilon, RngStream s, CftpOptions options) {
  CftpSampler sampler(n, energy, epsilon, s, options);
  return sampler.sample();
}

}  // namespace kacsim
