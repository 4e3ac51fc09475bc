#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "kacsim/analytic.hpp"

namespace kacsim {

/// Fixed-width binning of [lo, hi). Bins are left-closed.
struct BinGeometry {
  double lo = -5.0;
  double hi = 5.0;
  double width = 0.1;

  /// Throws std::invalid_argument unless lo < hi, width > 0 and
  /// (hi - lo) / width is an integer to 1e-9.
  void validate() const;
  std::size_t bin_count() const;
  double bin_lo(std::size_t b) const noexcept { return lo + static_cast<double>(b) * width; }
  double bin_hi(std::size_t b) const noexcept { return lo + static_cast<double>(b + 1) * width; }

  bool operator==(const BinGeometry&) const = default;
};

/// Canonical binning for every comparison run: [-5, 5) in 100 bins.
inline constexpr BinGeometry kCanonicalBins{-5.0, 5.0, 0.1};

class Histogram {
 public:
  explicit Histogram(BinGeometry geometry);

  void add(double x) noexcept;
  /// Bin-wise addition. Throws std::invalid_argument on geometry mismatch.
  void merge(const Histogram& other);

  const BinGeometry& geometry() const noexcept { return geometry_; }
  std::span<const std::uint64_t> counts() const noexcept { return counts_; }
  std::uint64_t underflow() const noexcept { return underflow_; }
  std::uint64_t overflow() const noexcept { return overflow_; }
  std::uint64_t total() const noexcept { return total_; }
  std::uint64_t in_range() const noexcept { return total_ - underflow_ - overflow_; }

  /// Bin probabilities over in-range samples only. Throws if none.
  std::vector<double> probabilities() const;

  bool operator==(const Histogram&) const = default;

 private:
  BinGeometry geometry_;
  std::size_t bins_;
  std::vector<std::uint64_t> counts_;
  std::uint64_t underflow_ = 0;
  std::uint64_t overflow_ = 0;
  std::uint64_t total_ = 0;
};

Histogram build_histogram(std::span<const double> samples, BinGeometry geometry);

/// 1/2 sum |p_b - q_b|. Both vectors must have equal length and sum to 1
/// within 1e-9.
double tvn_discrete(std::span<const double> p, std::span<const double> q);

/// Bin masses of f over the geometry (5-point Gauss-Legendre per bin),
/// renormalized to unit in-range mass.
std::vector<double> density_bin_probabilities(const DensityCurve& f, const BinGeometry& geometry);

/// Discrete TVN between the in-range empirical distribution of h and the
/// binned, renormalized density f.
double tvn_vs_density(const Histogram& h, const DensityCurve& f);

/// TVN between two histograms of identical geometry.
double tvn_between(const Histogram& a, const Histogram& b);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_distance(std::vector<double> a, std::vector<double> b);

}  // namespace kacsim
