#pragma once

#include <functional>
#include <numbers>
#include <string>

#include "kacsim/rng.hpp"

namespace kacsim {

/// The only collision rate for which the Krook-Wu closed form applies.
inline constexpr double kKrookWuLambda = 0.5 / std::numbers::inv_sqrtpi;  // sqrt(pi)/2

/// A time argument that may be the distinguished value "infinity".
class Time {
 public:
  /// Throws std::invalid_argument for negative or non-finite t.
  static Time finite(double t);
  static constexpr Time infinite() noexcept { return Time(0.0, true); }

  bool is_infinite() const noexcept { return infinite_; }
  /// Only meaningful when !is_infinite().
  double value() const noexcept { return value_; }

 private:
  constexpr Time(double v, bool inf) noexcept : value_(v), infinite_(inf) {}
  double value_;
  bool infinite_;
};

/// f0(v) = (2/sqrt(pi)) v^2 exp(-v^2).
double initial_density(double v);

/// |V| = sqrt(G), G ~ Gamma(3/2, 1) = Exp(1) + Z^2/2, with a symmetric sign.
double sample_initial(RngStream& s) noexcept;

/// C(t) = 1 / (3 - 2 exp(-sqrt(pi) t / 16)); 1/3 at infinity.
double c_of_t(Time t) noexcept;

/// Krook-Wu solution of the one-dimensional Kac equation for lambda =
/// sqrt(pi)/2 and initial density f0.
double exact_density(double v, Time t);

/// Gaussian limit (1/sqrt(3 pi)) exp(-v^2 / 3), variance 3/2.
double limit_density(double v);

/// A named univariate density.
struct DensityCurve {
  std::function<double(double)> pdf;
  std::string label;

  double operator()(double v) const { return pdf(v); }
};

DensityCurve initial_curve();
DensityCurve exact_curve(Time t);
DensityCurve limit_curve();

}  // namespace kacsim
