#include "kacsim/harness.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <iomanip>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "kacsim/perfect_sampler.hpp"

#ifndef KACSIM_VERSION_STRING
#define KACSIM_VERSION_STRING "0.0.0"
#endif

namespace kacsim {

using nlohmann::ordered_json;

std::string_view version() noexcept { return "kacsim " KACSIM_VERSION_STRING; }

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split_list(std::string_view s) {
  std::vector<std::string_view> items;
  std::size_t start = 0;
  for (;;) {
    const auto comma = s.find(',', start);
    const auto item = trim(s.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!item.empty()) items.push_back(item);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return items;
}

double parse_real(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "sqrt(pi)/2" || text == "krook_wu") return kKrookWuLambda;
  if (text == "inf" || text == "infinity") return std::numeric_limits<double>::infinity();
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(std::string(key), "not a number: '" + std::string(text) + "'");
  }
  return value;
}

std::uint64_t parse_count(std::string_view key, std::string_view text) {
  text = trim(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    // Accept integral scientific notation such as 1e5.
    const double d = parse_real(key, text);
    if (!(d >= 0.0) || d != std::floor(d) || d > 1.8e19) {
      throw ConfigError(std::string(key), "not a nonnegative integer: '" + std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(d);
  }
  return value;
}

bool parse_bool(std::string_view key, std::string_view text) {
  text = trim(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError(std::string(key), "not a boolean: '" + std::string(text) + "'");
}

std::string format_real(double x) {
  std::ostringstream os;
  os << std::setprecision(12) << x;
  return os.str();
}

double mean_of(std::span<const double> x) {
  if (x.empty()) return 0.0;
  return std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
}

double sd_of(std::span<const double> x) {
  if (x.size() < 2) return 0.0;
  const double m = mean_of(x);
  double ss = 0.0;
  for (double v : x) ss += (v - m) * (v - m);
  return std::sqrt(ss / static_cast<double>(x.size() - 1));
}

void require_replicates(const ExperimentSpec& spec) {
  if (spec.replicates == 0) throw ConfigError("replicates", "replicates must be >= 1");
}

SimConfig cell_config(const ExperimentSpec& spec, Algorithm a, std::size_t n, double dt) {
  SimConfig cfg;
  cfg.algorithm = a;
  cfg.n_particles = n;
  cfg.lambda = spec.lambda;
  cfg.t_final = spec.t;
  cfg.dt = dt;
  validate(cfg);
  return cfg;
}

struct ReplicateOutputs {
  std::vector<double> v1;
  std::vector<std::uint64_t> collisions;
  std::vector<std::uint64_t> saved;
  std::vector<double> tail;
};

ReplicateOutputs run_replicates(const SimConfig& cfg, const ExperimentSpec& spec, std::uint64_t stream_offset) {
  ReplicateOutputs out;
  const std::uint64_t count = spec.replicates;
  out.v1.resize(count);
  out.collisions.resize(count);
  out.saved.resize(count);
  out.tail.resize(count);
  parallel_for(count, spec.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      RngStream s(spec.seed, stream_offset + r);
      const RunResult result = run(cfg, s);
      out.v1[r] = result.v1;
      out.collisions[r] = result.collisions_processed;
      out.saved[r] = result.collisions_saved;
      out.tail[r] = result.tail_length;
    }
  });
  return out;
}

ordered_json histogram_json(const Histogram& h) {
  ordered_json j;
  j["lo"] = h.geometry().lo;
  j["hi"] = h.geometry().hi;
  j["width"] = h.geometry().width;
  j["bins"] = h.counts().size();
  j["total"] = h.total();
  j["underflow"] = h.underflow();
  j["overflow"] = h.overflow();
  return j;
}

}  // namespace

// ------------------------------------------------------------------ config

bool is_krook_wu_lambda(double lambda) noexcept {
  return std::fabs(lambda - kKrookWuLambda) <= 1e-12 * kKrookWuLambda;
}

BinGeometry parse_bins(std::string_view text) {
  const auto first = text.find(':');
  const auto second = first == std::string_view::npos ? first : text.find(':', first + 1);
  if (second == std::string_view::npos) throw ConfigError("bins", "expected lo:hi:width");
  BinGeometry g{parse_real("bins", text.substr(0, first)),
                parse_real("bins", text.substr(first + 1, second - first - 1)),
                parse_real("bins", text.substr(second + 1))};
  try {
    g.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError("bins", e.what());
  }
  return g;
}

void apply_setting(ExperimentSpec& spec, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  const std::string k(key);
  if (key == "algorithm" || key == "algorithms") {
    std::vector<Algorithm> list;
    for (auto item : split_list(value)) {
      const auto a = parse_algorithm(item);
      if (!a) throw ConfigError("algorithm", "unknown algorithm '" + std::string(item) + "'");
      list.push_back(*a);
    }
    if (list.empty()) throw ConfigError("algorithm", "empty list");
    spec.algorithms = std::move(list);
  } else if (key == "n") {
    std::vector<std::size_t> list;
    for (auto item : split_list(value)) list.push_back(static_cast<std::size_t>(parse_count(k, item)));
    if (list.empty()) throw ConfigError("n", "empty list");
    spec.n_values = std::move(list);
  } else if (key == "dt") {
    std::vector<double> list;
    for (auto item : split_list(value)) list.push_back(parse_real(k, item));
    if (list.empty()) throw ConfigError("dt", "empty list");
    spec.dt_values = std::move(list);
  } else if (key == "lambda") {
    spec.lambda = parse_real(k, value);
  } else if (key == "t") {
    spec.t = parse_real(k, value);
  } else if (key == "replicates") {
    spec.replicates = parse_count(k, value);
  } else if (key == "seed") {
    spec.seed = parse_count(k, value);
  } else if (key == "bins") {
    spec.bins = parse_bins(value);
  } else if (key == "out") {
    spec.out = std::string(value);
  } else if (key == "workers") {
    spec.workers = static_cast<unsigned>(parse_count(k, value));
  } else if (key == "epsilon") {
    spec.epsilon = parse_real(k, value);
  } else if (key == "energy") {
    spec.energy = parse_real(k, value);
  } else if (key == "tvn_repeats") {
    spec.tvn_repeats = parse_count(k, value);
  } else if (key == "harvest_all") {
    spec.harvest_all = parse_bool(k, value);
  } else if (key == "minimal_time") {
    spec.minimal_time = parse_bool(k, value);
  } else {
    throw ConfigError("unknown_key", "unknown setting '" + k + "'");
  }
}

void load_config_text(ExperimentSpec& spec, std::string_view text) {
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto newline = text.find('\n', start);
    std::string_view line = text.substr(start, newline == std::string_view::npos ? std::string_view::npos
                                                                                 : newline - start);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (!line.empty()) {
      const auto eq = line.find('=');
      if (eq == std::string_view::npos) {
        throw ConfigError("config_syntax", "line " + std::to_string(line_no) + ": expected key = value");
      }
      apply_setting(spec, line.substr(0, eq), line.substr(eq + 1));
    }
    if (newline == std::string_view::npos) break;
    start = newline + 1;
  }
}

void load_config(ExperimentSpec& spec, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config", "cannot open '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  load_config_text(spec, buffer.str());
}

// ------------------------------------------------------------------ workers

void parallel_for(std::uint64_t count, unsigned workers,
                  const std::function<void(std::uint64_t begin, std::uint64_t end)>& fn) {
  if (count == 0) return;
  unsigned threads = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
  threads = static_cast<unsigned>(std::min<std::uint64_t>(threads, count));
  if (threads <= 1) {
    fn(0, count);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  pool.reserve(threads);
  const std::uint64_t chunk = (count + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::uint64_t begin = w * chunk;
    const std::uint64_t end = std::min(count, begin + chunk);
    if (begin >= end) break;
    pool.emplace_back([&, begin, end] {
      try {
        fn(begin, end);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

// ------------------------------------------------------------------ density

std::optional<CurveKind> parse_curve(std::string_view name) noexcept {
  if (name == "initial") return CurveKind::initial;
  if (name == "exact") return CurveKind::exact;
  if (name == "limit") return CurveKind::limit;
  return std::nullopt;
}

std::vector<DensityRow> cmd_density(CurveKind curve, std::optional<Time> t, double lo, double hi, double step) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo <= hi)) throw ConfigError("grid", "need finite lo <= hi");
  if (!std::isfinite(step) || step <= 0.0) throw ConfigError("grid", "step must be > 0");
  const double intervals = (hi - lo) / step;
  if (std::fabs(intervals - std::round(intervals)) > 1e-9 * std::max(1.0, intervals)) {
    throw ConfigError("grid", "(hi - lo) / step must be an integer");
  }
  if (curve == CurveKind::exact && !t) throw ConfigError("t_required", "curve 'exact' needs a time");
  if (curve != CurveKind::exact && t) throw ConfigError("t_only_for_exact", "only curve 'exact' takes a time");

  const auto count = static_cast<std::size_t>(std::round(intervals)) + 1;
  std::vector<DensityRow> rows;
  rows.reserve(count);
  for (std::size_t k = 0; k < count; ++k) {
    const double v = lo + static_cast<double>(k) * step;
    double f = 0.0;
    switch (curve) {
      case CurveKind::initial: f = initial_density(v); break;
      case CurveKind::exact: f = exact_density(v, *t); break;
      case CurveKind::limit: f = limit_density(v); break;
    }
    rows.push_back({v, f});
  }
  return rows;
}

// ------------------------------------------------------------------- sample

SimConfig sample_config(const ExperimentSpec& spec) {
  if (spec.algorithms.size() != 1) throw ConfigError("single_algorithm", "sample takes exactly one algorithm");
  if (spec.n_values.size() != 1) throw ConfigError("single_n", "sample takes exactly one N");
  if (uses_time_step(spec.algorithms.front()) && spec.dt_values.size() != 1) {
    throw ConfigError("single_dt", "sample takes exactly one dt");
  }
  require_replicates(spec);
  spec.bins.bin_count();
  return cell_config(spec, spec.algorithms.front(), spec.n_values.front(), spec.dt_values.front());
}

SampleReport cmd_sample(const ExperimentSpec& spec, std::uint64_t stream_offset) {
  const SimConfig cfg = sample_config(spec);
  const ReplicateOutputs out = run_replicates(cfg, spec, stream_offset);

  SampleReport report{spec, cfg, build_histogram(out.v1, spec.bins)};
  const double n = static_cast<double>(spec.replicates);
  report.mean_collisions =
      static_cast<double>(std::accumulate(out.collisions.begin(), out.collisions.end(), std::uint64_t{0})) / n;
  report.mean_collisions_saved =
      static_cast<double>(std::accumulate(out.saved.begin(), out.saved.end(), std::uint64_t{0})) / n;
  report.mean_tail_length = mean_of(out.tail);
  if (is_krook_wu_lambda(spec.lambda)) {
    report.target = density_bin_probabilities(exact_curve(Time::finite(spec.t)), spec.bins);
    if (report.histogram.in_range() > 0) report.tvn = tvn_discrete(report.histogram.probabilities(), *report.target);
  }
  return report;
}

// ------------------------------------------------------------------ compare

std::vector<CompareRow> cmd_compare(const ExperimentSpec& spec) {
  if (!is_krook_wu_lambda(spec.lambda)) {
    throw ConfigError("lambda_krook_wu", "TVN against the exact solution needs lambda = sqrt(pi)/2");
  }
  require_replicates(spec);
  if (spec.tvn_repeats == 0) throw ConfigError("tvn_repeats", "tvn_repeats must be >= 1");
  if (spec.algorithms.empty() || spec.n_values.empty()) throw ConfigError("compare_cells", "no cells to run");

  // Validate every cell before any work starts.
  struct Cell {
    SimConfig cfg;
    std::optional<double> dt;
  };
  std::vector<Cell> cells;
  for (Algorithm a : spec.algorithms) {
    for (std::size_t n : spec.n_values) {
      if (uses_time_step(a)) {
        for (double dt : spec.dt_values) cells.push_back({cell_config(spec, a, n, dt), dt});
      } else {
        cells.push_back({cell_config(spec, a, n, 0.0), std::nullopt});
      }
    }
  }

  const auto target = density_bin_probabilities(exact_curve(Time::finite(spec.t)), spec.bins);
  std::vector<CompareRow> rows;
  for (const Cell& cell : cells) {
    CompareRow row{cell.cfg.algorithm, cell.cfg.n_particles, cell.dt, 0.0, 0.0, spec.tvn_repeats, {}};
    for (std::uint64_t k = 0; k < spec.tvn_repeats; ++k) {
      const ReplicateOutputs out = run_replicates(cell.cfg, spec, k * spec.replicates);
      const Histogram h = build_histogram(out.v1, spec.bins);
      row.tvn_values.push_back(tvn_discrete(h.probabilities(), target));
    }
    row.mean_tvn = mean_of(row.tvn_values);
    row.sd_tvn = sd_of(row.tvn_values);
    rows.push_back(std::move(row));
  }
  return rows;
}

// ------------------------------------------------------------------ perfect

PerfectReport cmd_perfect(const ExperimentSpec& spec) {
  if (spec.n_values.size() != 1) throw ConfigError("single_n", "perfect takes exactly one N");
  const std::size_t n = spec.n_values.front();
  if (n < 2) throw ConfigError("n_particles", "N must be >= 2");
  if (!std::isfinite(spec.epsilon) || spec.epsilon <= 0.0) throw ConfigError("epsilon", "epsilon must be > 0");
  const double energy = spec.energy.value_or(default_energy(n));
  if (!std::isfinite(energy) || energy <= 0.0) throw ConfigError("energy", "energy must be > 0");
  require_replicates(spec);
  spec.bins.bin_count();

  CftpOptions options;
  options.resolve_minimal_time = spec.minimal_time;
  std::vector<PerfectDraw> draws(spec.replicates);
  parallel_for(spec.replicates, spec.workers, [&](std::uint64_t begin, std::uint64_t end) {
    for (std::uint64_t r = begin; r < end; ++r) {
      draws[r] = cftp_sample(n, energy, spec.epsilon, RngStream(spec.seed, r), options);
    }
  });

  PerfectReport report{spec, energy, Histogram(spec.bins), density_bin_probabilities(limit_curve(), spec.bins)};
  report.draws.reserve(draws.size());
  std::vector<double> coordinate;
  coordinate.reserve(draws.size());
  double coupling_sum = 0.0;
  report.min_coupling_time = std::numeric_limits<std::uint64_t>::max();
  report.max_coupling_time = 0;
  bool first_attempt = false;
  CouplingSummary minimal{0.0, std::numeric_limits<std::uint64_t>::max(), 0};
  for (const PerfectDraw& d : draws) {
    const double v1 = coordinate_sample(d);
    report.draws.push_back({v1, d.coupling_time, d.minimal_coupling_time});
    minimal.mean += static_cast<double>(d.minimal_coupling_time);
    minimal.min = std::min(minimal.min, d.minimal_coupling_time);
    minimal.max = std::max(minimal.max, d.minimal_coupling_time);
    coordinate.push_back(v1);
    if (spec.harvest_all) {
      for (double v : d.velocity_vector) report.histogram.add(v);
    } else {
      report.histogram.add(v1);
    }
    coupling_sum += static_cast<double>(d.coupling_time);
    report.min_coupling_time = std::min(report.min_coupling_time, d.coupling_time);
    report.max_coupling_time = std::max(report.max_coupling_time, d.coupling_time);
    first_attempt = first_attempt || d.attempts == 1;
  }
  report.mean_coupling_time = coupling_sum / static_cast<double>(draws.size());
  if (spec.minimal_time) {
    minimal.mean /= static_cast<double>(draws.size());
    report.minimal_coupling_time = minimal;
  }
  report.sample_variance = sd_of(coordinate) * sd_of(coordinate);
  report.tvn = report.histogram.in_range() > 0 ? tvn_discrete(report.histogram.probabilities(), report.target) : 1.0;
  if (first_attempt) report.warnings.emplace_back("coupled_at_first_attempt: epsilon is loose; output is degenerate");
  if (spec.harvest_all) report.warnings.emplace_back("harvest_all: histogram holds dependent coordinates");
  return report;
}

// ------------------------------------------------------------------ writers

void write_histogram_csv(std::ostream& os, const Histogram& h, const std::vector<double>* target) {
  os << "bin_lo,bin_hi,count,empirical_prob,target_prob\n";
  const auto counts = h.counts();
  const double in_range = static_cast<double>(h.in_range());
  for (std::size_t b = 0; b < counts.size(); ++b) {
    os << format_real(h.geometry().bin_lo(b)) << ',' << format_real(h.geometry().bin_hi(b)) << ',' << counts[b] << ','
       << format_real(in_range > 0 ? static_cast<double>(counts[b]) / in_range : 0.0) << ',';
    if (target) os << format_real((*target)[b]);
    os << '\n';
  }
}

void write_density_csv(std::ostream& os, const std::vector<DensityRow>& rows) {
  os << "v,density\n";
  for (const auto& r : rows) os << format_real(r.v) << ',' << std::setprecision(15) << r.density << '\n';
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "algorithm,n,dt,mean_tvn,sd_tvn,repeats\n";
  for (const auto& r : rows) {
    os << to_string(r.algorithm) << ',' << r.n << ',' << (r.dt ? format_real(*r.dt) : std::string()) << ','
       << format_real(r.mean_tvn) << ',' << format_real(r.sd_tvn) << ',' << r.repeats << '\n';
  }
}

void write_perfect_draws_csv(std::ostream& os, const std::vector<PerfectRow>& rows, bool with_minimal) {
  os << "draw,v1,coupling_time" << (with_minimal ? ",minimal_coupling_time\n" : "\n");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    os << i << ',' << std::setprecision(17) << rows[i].v1 << ',' << rows[i].coupling_time;
    if (with_minimal) os << ',' << rows[i].minimal_coupling_time;
    os << '\n';
  }
}

namespace {

ordered_json spec_to_json(const ExperimentSpec& spec) {
  ordered_json j;
  std::vector<std::string> algorithms;
  for (Algorithm a : spec.algorithms) algorithms.emplace_back(to_string(a));
  j["algorithms"] = algorithms;
  j["n"] = spec.n_values;
  j["lambda"] = spec.lambda;
  j["t"] = spec.t;
  j["dt"] = spec.dt_values;
  j["replicates"] = spec.replicates;
  j["seed"] = spec.seed;
  j["bins"] = {{"lo", spec.bins.lo}, {"hi", spec.bins.hi}, {"width", spec.bins.width}};
  j["out"] = spec.out;
  j["workers"] = spec.workers;
  j["epsilon"] = spec.epsilon;
  j["energy"] = spec.energy ? ordered_json(*spec.energy) : ordered_json(nullptr);
  j["tvn_repeats"] = spec.tvn_repeats;
  j["harvest_all"] = spec.harvest_all;
  j["minimal_time"] = spec.minimal_time;
  return j;
}

ordered_json envelope(const char* command, const ExperimentSpec& spec) {
  ordered_json j;
  j["command"] = command;
  j["version"] = version();
  j["seed"] = spec.seed;
  j["spec"] = spec_to_json(spec);
  return j;
}

}  // namespace

std::string spec_json(const ExperimentSpec& spec) { return spec_to_json(spec).dump(2); }

std::string sample_summary_json(const SampleReport& report) {
  ordered_json j = envelope("sample", report.spec);
  j["algorithm"] = to_string(report.config.algorithm);
  j["n_particles"] = report.config.n_particles;
  j["n_samples"] = report.histogram.total();
  j["binning"] = histogram_json(report.histogram);
  j["tvn"] = report.tvn ? ordered_json(*report.tvn) : ordered_json(nullptr);
  j["tvn_target"] = report.tvn ? "exact_density(t)" : "none (lambda != sqrt(pi)/2)";
  j["mean_collisions"] = report.mean_collisions;
  if (report.config.algorithm == Algorithm::poisson) {
    j["mean_collisions_saved"] = report.mean_collisions_saved;
    j["expected_savings"] = expected_savings(report.config.n_particles, report.config.lambda, report.config.t_final);
    j["mean_tail_length"] = report.mean_tail_length;
  }
  if (report.target) {
    // Per-bin relative error against the exact density; the upper-tail
    // comparison reads this with bins restricted to v >= 2.5.
    ordered_json rel = ordered_json::array();
    const auto p = report.histogram.in_range() > 0 ? report.histogram.probabilities()
                                                   : std::vector<double>(report.target->size(), 0.0);
    for (std::size_t b = 0; b < p.size(); ++b) {
      const double q = (*report.target)[b];
      rel.push_back(q > 0.0 ? ordered_json((p[b] - q) / q) : ordered_json(nullptr));
    }
    j["bin_relative_error"] = rel;
  }
  return j.dump(2);
}

std::string compare_summary_json(const ExperimentSpec& spec, const std::vector<CompareRow>& rows) {
  ordered_json j = envelope("compare", spec);
  j["binning"] = {{"lo", spec.bins.lo}, {"hi", spec.bins.hi}, {"width", spec.bins.width}};
  ordered_json cells = ordered_json::array();
  for (const auto& r : rows) {
    ordered_json c;
    c["algorithm"] = to_string(r.algorithm);
    c["n"] = r.n;
    c["dt"] = r.dt ? ordered_json(*r.dt) : ordered_json(nullptr);
    c["mean_tvn"] = r.mean_tvn;
    c["sd_tvn"] = r.sd_tvn;
    c["tvn_values"] = r.tvn_values;
    cells.push_back(std::move(c));
  }
  j["cells"] = cells;
  return j.dump(2);
}

std::string perfect_summary_json(const PerfectReport& report) {
  ordered_json j = envelope("perfect", report.spec);
  j["n_particles"] = report.spec.n_values.front();
  j["energy"] = report.energy;
  j["epsilon"] = report.spec.epsilon;
  j["n_samples"] = report.histogram.total();
  j["binning"] = histogram_json(report.histogram);
  j["tvn"] = report.tvn;
  j["tvn_target"] = "limit_density";
  j["sample_variance"] = report.sample_variance;
  j["coupling_time"] = {{"mean", report.mean_coupling_time},
                        {"min", report.min_coupling_time},
                        {"max", report.max_coupling_time}};
  if (report.minimal_coupling_time) {
    j["minimal_coupling_time"] = {{"mean", report.minimal_coupling_time->mean},
                                  {"min", report.minimal_coupling_time->min},
                                  {"max", report.minimal_coupling_time->max}};
  }
  j["warning"] = !report.warnings.empty();
  j["warnings"] = report.warnings;
  return j.dump(2);
}

}  // namespace kacsim
