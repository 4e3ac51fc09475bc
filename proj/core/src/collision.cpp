#include "kacsim/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "kacsim/analytic.hpp"

namespace kacsim {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Angle::Angle(double radians) {
  if (!std::isfinite(radians)) throw std::invalid_argument("Angle: non-finite value");
  double r = std::fmod(radians, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  radians_ = r;
}

Angle random_angle(RngStream& s) noexcept { return Angle(kTwoPi * s.next_double()); }

Ensemble::Ensemble(std::vector<double> velocities) : v_(std::move(velocities)) {
  if (v_.size() < 2) throw std::invalid_argument("Ensemble: need at least 2 particles");
}

Ensemble Ensemble::sample_initial(std::size_t n, RngStream& s) {
  if (n < 2) throw std::invalid_argument("Ensemble: need at least 2 particles");
  std::vector<double> v(n);
  for (auto& x : v) x = kacsim::sample_initial(s);
  return Ensemble(std::move(v));
}

std::pair<double, double> collide(double vi, double vj, Angle theta) noexcept {
  return collide(vi, vj, std::cos(theta.radians()), std::sin(theta.radians()));
}

void collide_in_place(std::span<double> v, std::size_t i, std::size_t j, Angle theta) noexcept {
  const auto [a, b] = collide(v[i], v[j], theta);
  v[i] = a;
  v[j] = b;
}

void kac_walk_step(Ensemble& e, RngStream& s) noexcept {
  const auto [i, j] = random_pair(s, e.size(), false);
  collide_in_place(e.velocities(), i, j, random_angle(s));
}

double total_energy(std::span<const double> v) noexcept {
  double sum = 0.0;
  for (double x : v) sum += x * x;
  return sum;
}

}  // namespace kacsim
