#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "kacsim/rng.hpp"

namespace kacsim {

/// One stored backward-time update: theta in [0, pi/2) and an ordered pair
/// of distinct zero-based coordinates. `first` receives sqrt(e) sin(theta),
/// `second` sqrt(e) cos(theta).
struct UpdateRecord {
  double theta = 0.0;
  std::uint32_t first = 0;
  std::uint32_t second = 1;

  bool operator==(const UpdateRecord&) const = default;
};

/// The N tracked corner points of the first-octant energy sphere.
///
/// Storage is coordinate-major: coordinate j of every corner is contiguous,
/// so an update touching coordinates (p, q) streams two rows.
class CornerState {
 public:
  /// Fresh corners c_i = sqrt(E) e_i.
  CornerState(std::size_t n, double energy);

  std::size_t size() const noexcept { return n_; }
  double energy() const noexcept { return energy_; }
  /// Coordinate j of corner i.
  double at(std::size_t corner, std::size_t coord) const noexcept { return coords_[coord * n_ + corner]; }
  std::vector<double> corner(std::size_t i) const;

  void reset() noexcept;
  void apply(const UpdateRecord& u) noexcept;
  /// Same as apply(u) with sin(theta) and cos(theta) precomputed.
  void apply(const UpdateRecord& u, double sin_theta, double cos_theta) noexcept;

  /// Largest coordinate-wise spread max_j (max_i c_i(j) - min_i c_i(j)).
  /// A lower bound on the diameter.
  double max_coordinate_spread() const noexcept;

 private:
  std::size_t n_;
  double energy_;
  std::vector<double> coords_;
};

/// max over i < j of || c_i - c_j ||_2.
double max_pairwise_distance(const CornerState& state) noexcept;

struct PerfectDraw {
  std::vector<double> velocity_vector;
  /// Backward coupling time T: the attempt length 2^k that first coalesced.
  std::uint64_t coupling_time = 0;
  double final_diameter = 0.0;
  std::uint32_t attempts = 0;
  /// Smallest T whose replay is already epsilon-close at time 0; filled in
  /// only when CftpOptions::resolve_minimal_time is set, otherwise 0.
  std::uint64_t minimal_coupling_time = 0;
};

struct CftpOptions {
  /// Abort once the attempt length would exceed this.
  std::uint64_t max_backward_time = std::uint64_t{1} << 30;
  /// Check diameter monotonicity and the sphere/octant invariants after
  /// every update; throws std::logic_error on violation. Slow.
  bool check_invariants = false;
  /// After coalescence at T_k, bisect (T_{k-1}, T_k] over the stored history
  /// for the smallest coalescing T. The diameter at time 0 is non-increasing
  /// in T, so bisection is exact. Costs about log2(T) extra replays.
  bool resolve_minimal_time = false;
};

/// Epsilon-perfect coupling from the past on the energy sphere.
///
/// Records for times -1, -2, ... are generated once and stored; an attempt
/// of length T replays records -T .. -1 oldest first from fresh corners, so
/// earlier records are reused bit-exactly by every later attempt.
class CftpSampler {
 public:
  CftpSampler(std::size_t n, double energy, double epsilon, RngStream stream, CftpOptions options = {});

  PerfectDraw sample();

  /// history()[k] is the record for time -(k + 1).
  const std::vector<UpdateRecord>& history() const noexcept { return history_; }
  /// Extends the stored history so it covers times -1 .. -T.
  void extend_history(std::uint64_t backward_time);
  /// Replays records -T .. -1 from fresh corners and returns the time-0 state.
  const CornerState& run_attempt(std::uint64_t backward_time);
  /// Smallest coalescing T in (coalesced_at / 2, coalesced_at], given that
  /// coalesced_at coalesces. Uses stored history only.
  std::uint64_t minimal_coupling_time(std::uint64_t coalesced_at);

 private:
  std::size_t n_;
  double energy_;
  double epsilon_;
  RngStream stream_;
  RngStream sign_stream_;
  CftpOptions options_;
  std::vector<UpdateRecord> history_;
  std::vector<double> sin_;
  std::vector<double> cos_;
  CornerState state_;
};

/// Default sphere energy (3/2) N, matching the variance-3/2 marginals of
/// the Krook-Wu initial and limiting densities.
inline double default_energy(std::size_t n) noexcept { return 1.5 * static_cast<double>(n); }

PerfectDraw cftp_sample(std::size_t n, double energy, double epsilon, RngStream s, CftpOptions options = {});

/// Coordinate 1 of the signed output.
inline double coordinate_sample(const PerfectDraw& d) { return d.velocity_vector.at(0); }

}  // namespace kacsim
