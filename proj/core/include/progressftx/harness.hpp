#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "progressftx/channel.hpp"
#include "progressftx/protocol.hpp"
#include "progressftx/statmodel.hpp"

namespace pftx {

/// Raised for malformed configuration files; what() carries "line N: key: message".
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct ExperimentConfig {
  // Model: either a file or (classes, dimension, profile).
  std::size_t classes = 2;
  std::size_t dimension = 40;
  Vector gain_profile = default_profile(40);
  std::string profile_spec = "geometric 1.25 0.95";
  std::optional<std::string> model_file;
  std::uint64_t model_seed = 7;

  ChannelModel::Variant channel = GaussianChannel{20e3, 0.01, db_to_linear(4.0), 64};

  std::size_t horizon = 5;
  std::vector<Scheme::Kind> schemes = {Scheme::Kind::ProgressFtx, Scheme::Kind::OneShot,
                                       Scheme::Kind::RandomFeatureStopping};
  Vector cost_grid = {1e-3};
  std::vector<std::optional<double>> target_grid = {std::nullopt};
  Vector oneshot_grid = {0.3};

  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  std::string output = "sweep.csv";
  std::optional<std::string> trial_log;
  std::size_t workers = 1;
  double quad_tol = kDefaultQuadTol;

  void validate() const;
  GmModel build_model() const;
  /// Stable FNV-1a hash (hex) of every field that affects results.
  std::string hash() const;
  std::string canonical() const;
};

/// Parses the flat "key = value" format; '#' starts a comment. Unknown keys,
/// duplicate keys and bad values raise ConfigError with the line number.
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig load_config(const std::string& path);

struct SweepRow {
  std::string scheme;
  std::optional<double> c0;
  std::optional<double> h0;
  std::optional<double> h_tgt;
  std::size_t trials = 0;
  double latency_mean = 0.0;
  double latency_stderr = 0.0;
  double accuracy = 0.0;
  double entropy_mean = 0.0;
  double outage_rate = 0.0;
  std::uint64_t seed = 0;
  std::string config_hash;
  Vector transmission_prob;
};

struct SweepResult {
  Vector gains;  // per-dimension average gains of the model
  std::vector<SweepRow> rows;
};

using ProgressFn = std::function<void(std::size_t done, std::size_t total)>;

/// Runs every (scheme, grid point). Trial i uses streams derived from
/// (seed, i), so results do not depend on the worker count.
SweepResult run_sweep(const ExperimentConfig& cfg, const ProgressFn& progress = {});

/// Runs `trials` trials of one protocol configuration with derived streams.
std::vector<TrialLog> run_trials(const Protocol& protocol, std::size_t trials,
                                 std::uint64_t seed, std::size_t workers);

/// run_trials for several uncertainty targets at once; result[t][i] is trial i under target t.
std::vector<std::vector<TrialLog>> run_trials_targets(
    const Protocol& protocol, std::span<const std::optional<double>> targets, std::size_t trials,
    std::uint64_t seed, std::size_t workers);

/// CSV header + one row per SweepRow. Columns:
/// scheme,c0,H0,H_tgt,trials,latency_mean,latency_stderr,accuracy,entropy_mean,outage_rate,seed,config_hash
void write_csv(std::ostream& out, const SweepResult& result);
/// Companion file: one row per (grid point, dimension), sorted by descending gain.
void write_txprob_csv(std::ostream& out, const SweepResult& result);
void emit_csv(const SweepResult& result, const std::string& path);
std::string companion_path(const std::string& csv_path);

/// Reads files written by write_csv / write_txprob_csv.
SweepResult read_csv(std::istream& csv);
void read_txprob_csv(std::istream& in, SweepResult& result);

/// Spearman rank correlation with average ranks for ties. 0 if either side is constant.
double spearman(std::span<const double> x, std::span<const double> y);

struct CurvePoint {
  double latency = 0.0;
  double accuracy = 0.0;
};

/// Smallest latency at which the piecewise-linear curve (points ordered by
/// latency) first reaches `accuracy`; nullopt if it never does.
std::optional<double> latency_at_accuracy(std::vector<CurvePoint> curve, double accuracy);

}  // namespace pftx
