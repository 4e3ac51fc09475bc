#include "kacsim/analytic.hpp"

#include <cmath>
#include <stdexcept>

namespace kacsim {

namespace {

constexpr double kInvSqrtPi = std::numbers::inv_sqrtpi;
constexpr double kSqrtPi = 1.0 / std::numbers::inv_sqrtpi;

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) throw std::invalid_argument(std::string(what) + ": v must be finite");
}

}  // namespace

Time Time::finite(double t) {
  if (!std::isfinite(t) || t < 0.0) throw std::invalid_argument("time must be finite and >= 0");
  return Time(t, false);
}

double initial_density(double v) {
  require_finite(v, "initial_density");
  return 2.0 * kInvSqrtPi * v * v * std::exp(-v * v);
}

double sample_initial(RngStream& s) noexcept {
  const double z = standard_normal(s);
  const double gamma_3_2 = standard_exponential(s) + 0.5 * z * z;
  return random_sign(s) * std::sqrt(gamma_3_2);
}

double c_of_t(Time t) noexcept {
  if (t.is_infinite()) return 1.0 / 3.0;
  return 1.0 / (3.0 - 2.0 * std::exp(-kSqrtPi * t.value() / 16.0));
}

double exact_density(double v, Time t) {
  require_finite(v, "exact_density");
  if (t.is_infinite()) return limit_density(v);
  const double c = c_of_t(t);
  const double sqrt_c = std::sqrt(c);
  const double bracket = 1.5 * (1.0 - c) * sqrt_c + (3.0 * c - 1.0) * c * sqrt_c * v * v;
  return kInvSqrtPi * bracket * std::exp(-c * v * v);
}

double limit_density(double v) {
  require_finite(v, "limit_density");
  return kInvSqrtPi / std::sqrt(3.0) * std::exp(-v * v / 3.0);
}

DensityCurve initial_curve() { return {[](double v) { return initial_density(v); }, "initial"}; }

DensityCurve exact_curve(Time t) {
  std::string label = t.is_infinite() ? "exact(t=inf)" : "exact(t=" + std::to_string(t.value()) + ")";
  return {[t](double v) { return exact_density(v, t); }, std::move(label)};
}

DensityCurve limit_curve() { return {[](double v) { return limit_density(v); }, "limit"}; }

}  // namespace kacsim
