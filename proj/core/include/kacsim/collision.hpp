#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "kacsim/rng.hpp"

namespace kacsim {

/// Scattering angle in [0, 2 pi).
class Angle {
 public:
  /// Wraps any finite value into [0, 2 pi).
  explicit Angle(double radians);
  double radians() const noexcept { return radians_; }

 private:
  double radians_;
};

Angle random_angle(RngStream& s) noexcept;

/// Velocities of N >= 2 one-dimensional particles, stored contiguously.
class Ensemble {
 public:
  explicit Ensemble(std::vector<double> velocities);
  /// N iid draws from the initial density f0.
  static Ensemble sample_initial(std::size_t n, RngStream& s);

  std::size_t size() const noexcept { return v_.size(); }
  double& operator[](std::size_t i) noexcept { return v_[i]; }
  double operator[](std::size_t i) const noexcept { return v_[i]; }
  std::span<double> velocities() noexcept { return v_; }
  std::span<const double> velocities() const noexcept { return v_; }

  bool operator==(const Ensemble&) const = default;

 private:
  std::vector<double> v_;
};

/// Rotation of the pair (vi, vj) by theta. Both outputs come from the
/// pre-collision values.
inline std::pair<double, double> collide(double vi, double vj, double cos_t, double sin_t) noexcept {
  return {vi * cos_t + vj * sin_t, -vi * sin_t + vj * cos_t};
}

std::pair<double, double> collide(double vi, double vj, Angle theta) noexcept;

/// Rotates v[i], v[j] in place.
void collide_in_place(std::span<double> v, std::size_t i, std::size_t j, Angle theta) noexcept;

/// One Kac walk step: uniform unordered pair, theta ~ unif(0, 2 pi).
void kac_walk_step(Ensemble& e, RngStream& s) noexcept;

/// Sum of squared velocities.
double total_energy(std::span<const double> v) noexcept;
inline double total_energy(const Ensemble& e) noexcept { return total_energy(e.velocities()); }

}  // namespace kacsim
