#include "kacsim/metrics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace kacsim {

namespace {

// 5-point Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes{0.0, -0.5384693101056831, 0.5384693101056831, -0.9061798459386640,
                                            0.9061798459386640};
constexpr std::array<double, 5> kGaussWeights{0.5688888888888889, 0.4786286704993665, 0.4786286704993665,
                                              0.2369268850561891, 0.2369268850561891};

void require_normalized(std::span<const double> p, const char* name) {
  double sum = 0.0;
  for (double x : p) {
    if (!(x >= 0.0)) throw std::invalid_argument(std::string("tvn_discrete: negative entry in ") + name);
    sum += x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) throw std::invalid_argument(std::string("tvn_discrete: ") + name + " not normalized");
}

}  // namespace

void BinGeometry::validate() const {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) throw std::invalid_argument("bins: need finite lo < hi");
  if (!std::isfinite(width) || width <= 0.0) throw std::invalid_argument("bins: width must be > 0");
  const double ratio = (hi - lo) / width;
  if (std::fabs(ratio - std::round(ratio)) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument("bins: (hi - lo) / width must be an integer");
  }
}

std::size_t BinGeometry::bin_count() const {
  validate();
  return static_cast<std::size_t>(std::round((hi - lo) / width));
}

Histogram::Histogram(BinGeometry geometry) : geometry_(geometry), bins_(geometry.bin_count()), counts_(bins_, 0) {}

void Histogram::add(double x) noexcept {
  ++total_;
  if (!(x >= geometry_.lo)) {
    ++underflow_;
    return;
  }
  if (x >= geometry_.hi) {
    ++overflow_;
    return;
  }
  auto b = static_cast<std::size_t>((x - geometry_.lo) / geometry_.width);
  // Division can be off by one ulp at the edges; enforce [bin_lo, bin_hi).
  if (b >= bins_) b = bins_ - 1;
  if (x < geometry_.bin_lo(b) && b > 0) --b;
  else if (x >= geometry_.bin_hi(b) && b + 1 < bins_) ++b;
  ++counts_[b];
}

void Histogram::merge(const Histogram& other) {
  if (!(geometry_ == other.geometry_)) throw std::invalid_argument("Histogram::merge: geometry mismatch");
  for (std::size_t b = 0; b < bins_; ++b) counts_[b] += other.counts_[b];
  underflow_ += other.underflow_;
  overflow_ += other.overflow_;
  total_ += other.total_;
}

std::vector<double> Histogram::probabilities() const {
  const std::uint64_t n = in_range();
  if (n == 0) throw std::invalid_argument("Histogram: no in-range samples");
  std::vector<double> p(bins_);
  for (std::size_t b = 0; b < bins_; ++b) p[b] = static_cast<double>(counts_[b]) / static_cast<double>(n);
  return p;
}

Histogram build_histogram(std::span<const double> samples, BinGeometry geometry) {
  Histogram h(geometry);
  for (double x : samples) h.add(x);
  return h;
}

double tvn_discrete(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw std::invalid_argument("tvn_discrete: length mismatch");
  require_normalized(p, "p");
  require_normalized(q, "q");
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::fabs(p[i] - q[i]);
  return std::min(1.0, 0.5 * sum);
}

std::vector<double> density_bin_probabilities(const DensityCurve& f, const BinGeometry& geometry) {
  const std::size_t bins = geometry.bin_count();
  std::vector<double> mass(bins);
  const double half = geometry.width / 2.0;
  for (std::size_t b = 0; b < bins; ++b) {
    const double mid = geometry.bin_lo(b) + half;
    double m = 0.0;
    for (std::size_t k = 0; k < kGaussNodes.size(); ++k) m += kGaussWeights[k] * f(mid + half * kGaussNodes[k]);
    mass[b] = m * half;
  }
  const double total = std::accumulate(mass.begin(), mass.end(), 0.0);
  if (!(total > 0.0)) throw std::invalid_argument("density has no mass on the binning range");
  for (double& m : mass) m /= total;
  return mass;
}

double tvn_vs_density(const Histogram& h, const DensityCurve& f) {
  if (h.total() == 0) throw std::invalid_argument("tvn_vs_density: empty histogram");
  return tvn_discrete(h.probabilities(), density_bin_probabilities(f, h.geometry()));
}

double tvn_between(const Histogram& a, const Histogram& b) {
  if (!(a.geometry() == b.geometry())) throw std::invalid_argument("tvn_between: geometry mismatch");
  return tvn_discrete(a.probabilities(), b.probabilities());
}

double ks_distance(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_distance: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double best = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == x) ++i;
    while (j < b.size() && b[j] == x) ++j;
    best = std::max(best, std::fabs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return best;
}

}  // namespace kacsim
