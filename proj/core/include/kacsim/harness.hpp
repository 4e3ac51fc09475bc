#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kacsim/algorithms.hpp"
#include "kacsim/analytic.hpp"
#include "kacsim/metrics.hpp"

namespace kacsim {

std::string_view version() noexcept;

/// Resolved experiment description shared by every CLI subcommand.
///
/// Config files are flat `key = value` text; `#` starts a comment and list
/// values are comma separated. Keys match the long CLI flags (`n`, `lambda`,
/// `t`, `dt`, `replicates`, `seed`, `bins`, `out`, `workers`, `epsilon`,
/// `energy`, `tvn_repeats`, `algorithm`, `harvest_all`, `minimal_time`).
struct ExperimentSpec {
  std::vector<Algorithm> algorithms{Algorithm::bird};
  std::vector<std::size_t> n_values{50};
  double lambda = kKrookWuLambda;
  double t = 2.0;
  std::vector<double> dt_values{0.01};
  std::uint64_t replicates = 100000;
  std::uint64_t seed = 1;
  BinGeometry bins = kCanonicalBins;
  std::string out;
  unsigned workers = 0;
  double epsilon = 1e-6;
  std::optional<double> energy;
  std::uint64_t tvn_repeats = 1;
  bool harvest_all = false;
  /// perfect: also bisect each draw's history for its smallest coalescing T.
  bool minimal_time = false;
};

/// Applies one `key = value` setting. Throws ConfigError on an unknown key
/// or an unparsable value.
void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value);

/// Reads a config file into `spec` (later keys win).
void load_config(ExperimentSpec& spec, const std::string& path);
void load_config_text(ExperimentSpec& spec, std::string_view text);

/// Parses "lo:hi:width".
BinGeometry parse_bins(std::string_view text);

/// True when lambda equals sqrt(pi)/2 to 1e-12 relative.
bool is_krook_wu_lambda(double lambda) noexcept;

/// Runs fn(begin, end) over contiguous chunks of [0, count) on up to
/// `workers` threads (0 means hardware concurrency). Exceptions thrown by
/// fn are rethrown on the calling thread.
void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t begin, std::uint64_t end)>& fn);

// ---------------------------------------------------------------- density

enum class CurveKind { initial, exact, limit };
std::optional<CurveKind> parse_curve(std::string_view name) noexcept;

struct DensityRow {
  double v;
  double density;
};

/// Grid lo, lo + step, ..., hi. `t` must be given iff curve == exact.
std::vector<DensityRow> cmd_density(CurveKind curve, std::optional<Time> t, double lo, double hi, double step);

// ----------------------------------------------------------------- sample

struct SampleReport {
  ExperimentSpec spec;
  SimConfig config;
  Histogram histogram;
  /// Binned exact_density(., t) when lambda is the Krook-Wu rate.
  std::optional<std::vector<double>> target = std::nullopt;
  std::optional<double> tvn = std::nullopt;
  double mean_collisions = 0.0;
  double mean_collisions_saved = 0.0;
  double mean_tail_length = 0.0;
};

/// Validates the spec for single-cell sampling; throws ConfigError.
SimConfig sample_config(const ExperimentSpec& spec);

/// `replicates` independent runs; replicate r uses stream (seed,
/// stream_offset + r).
SampleReport cmd_sample(const ExperimentSpec& spec, std::uint64_t stream_offset = 0);

// ---------------------------------------------------------------- compare

struct CompareRow {
  Algorithm algorithm;
  std::size_t n;
  std::optional<double> dt;
  double mean_tvn;
  double sd_tvn;
  std::uint64_t repeats;
  std::vector<double> tvn_values;
};

/// For every (algorithm, N[, dt]) cell, `tvn_repeats` independent TVN
/// estimates. Repeat k uses stream ids k * replicates + r.
std::vector<CompareRow> cmd_compare(const ExperimentSpec& spec);

// ---------------------------------------------------------------- perfect

struct PerfectRow {
  double v1;
  std::uint64_t coupling_time;
  /// 0 unless ExperimentSpec::minimal_time is set.
  std::uint64_t minimal_coupling_time = 0;
};

struct CouplingSummary {
  double mean = 0.0;
  std::uint64_t min = 0;
  std::uint64_t max = 0;
};

struct PerfectReport {
  ExperimentSpec spec;
  double energy;
  Histogram histogram;
  std::vector<double> target;
  double tvn = 0.0;
  std::vector<PerfectRow> draws = {};
  double mean_coupling_time = 0.0;
  std::uint64_t min_coupling_time = 0;
  std::uint64_t max_coupling_time = 0;
  /// Present when ExperimentSpec::minimal_time is set.
  std::optional<CouplingSummary> minimal_coupling_time = std::nullopt;
  double sample_variance = 0.0;
  std::vector<std::string> warnings = {};
};

PerfectReport cmd_perfect(const ExperimentSpec& spec);

// ---------------------------------------------------------------- writers

/// Header `bin_lo,bin_hi,count,empirical_prob,target_prob`; target_prob is
/// empty when no target is supplied.
void write_histogram_csv(std::ostream& os, const Histogram& h, const std::vector<double>* target);
void write_density_csv(std::ostream& os, const std::vector<DensityRow>& rows);
void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows);
/// Header `draw,v1,coupling_time`, plus `minimal_coupling_time` when
/// `with_minimal` is set.
void write_perfect_draws_csv(std::ostream& os, const std::vector<PerfectRow>& rows, bool with_minimal = false);

std::string spec_json(const ExperimentSpec& spec);
std::string sample_summary_json(const SampleReport& report);
std::string compare_summary_json(const ExperimentSpec& spec, const std::vector<CompareRow>& rows);
std::string perfect_summary_json(const PerfectReport& report);

}  // namespace kacsim
