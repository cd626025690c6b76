#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "progressftx/bounds.hpp"
#include "progressftx/channel.hpp"
#include "progressftx/gains.hpp"
#include "progressftx/linclass.hpp"
#include "progressftx/statmodel.hpp"
#include "progressftx/stopping.hpp"

namespace pftx {

struct Scheme {
  enum class Kind { ProgressFtx, OneShot, RandomFeatureStopping };

  Kind kind = Kind::ProgressFtx;
  double one_shot_target = 0.0;  // H0, used by OneShot only

  static Scheme progressftx() { return {Kind::ProgressFtx, 0.0}; }
  static Scheme one_shot(double h0) { return {Kind::OneShot, h0}; }
  static Scheme random_stopping() { return {Kind::RandomFeatureStopping, 0.0}; }
};

std::string_view scheme_name(Scheme::Kind kind);
Scheme::Kind parse_scheme_kind(std::string_view name);

struct FeedbackSignal {
  enum class Kind { TransmitNew, Retransmit, Stop };
  Kind kind = Kind::Stop;
  IndexList indices;  // features carried by the slot; empty for Stop
};

struct SlotRecord {
  FeedbackSignal signal;
  std::optional<SlotOutcome> outcome;  // absent for Stop
  double entropy_after = 0.0;
};

struct TrialState {
  PartialFeatureVector pfv;
  std::size_t slot = 1;
  std::optional<IndexList> pending_retx;
  bool stopped = false;
};

struct TrialLog {
  std::size_t slots_used = 0;
  IndexList features_delivered;
  std::size_t outage_count = 0;
  std::size_t final_label = 0;
  std::size_t true_label = 0;
  double final_entropy = 0.0;
  std::vector<SlotRecord> slots;

  bool operator==(const TrialLog&) const;
};

/// Envelope used by one-shot planning: delta1 = 0 on the grid
/// {G*(empty, k)}_{k=0..ceil(N/Y0)}.
ExpBoundParams one_shot_bound(const GainTable& table, std::size_t y0,
                              double tol = kDefaultQuadTol);

/// Smallest k with tilde_h(G*(empty, k)) <= H0, capped at ceil(N/Y0).
std::size_t plan_one_shot(const GainTable& table, std::size_t y0, double h0,
                          const ExpBoundParams& bound);

/// Server-side controller for one configuration. Construction does the
/// sample-independent work (gain table, one-shot plan); run_trial is const and
/// may be called concurrently with distinct random streams.
class Protocol {
 public:
  Protocol(const GmModel& model, GainTable table, ChannelModel channel, StoppingPolicy policy,
           Scheme scheme, double quad_tol = kDefaultQuadTol);

  TrialLog run_trial(const Sample& sample, Rng& rng) const;

  /// One log per uncertainty target (the policy's own target is ignored). Log i
  /// equals run_trial under target i with the same starting stream; the shared
  /// trajectory prefix is simulated once.
  std::vector<TrialLog> run_trial_targets(const Sample& sample, Rng& rng,
                                          std::span<const std::optional<double>> targets) const;

  const GmModel& model() const { return *model_; }
  const GainTable& table() const { return table_; }
  const ChannelModel& channel() const { return channel_; }
  const StoppingPolicy& policy() const { return policy_; }
  const Scheme& scheme() const { return scheme_; }
  std::size_t one_shot_slots() const { return one_shot_k_; }

 private:
  FeedbackSignal decide(const TrialState& state, std::optional<double> target, Rng& rng) const;
  double lookahead_delta(const PartialFeatureVector& pfv) const;
  TrialLog run_one_shot(const Sample& sample, Rng& rng) const;

  const GmModel* model_;
  GainTable table_;
  ChannelModel channel_;
  StoppingPolicy policy_;
  Scheme scheme_;
  double quad_tol_;
  std::size_t one_shot_k_ = 0;
};

TrialLog run_trial(const Sample& sample, const GmModel& model, const GainTable& table,
                   const ChannelModel& channel, const StoppingPolicy& policy,
                   const Scheme& scheme, Rng& rng);

struct SchemeMetrics {
  std::size_t trials = 0;
  double latency_mean = 0.0;
  double latency_stderr = 0.0;
  double accuracy = 0.0;
  double entropy_mean = 0.0;
  double outage_rate = 0.0;
  Vector transmission_prob;  // per feature dimension
};

SchemeMetrics metrics(std::span<const TrialLog> logs, const GmModel& model);

/// One tab-separated line per trial:
///   slots  outages  true_label  final_label  final_entropy  delivered  slot_records
/// delivered is a comma list; slot_records are ';'-separated "S[i,j]O=h" with
/// S in {N,R,S} (new, retransmit, stop) and O in {D,O,-}.
std::string to_record(const TrialLog& log);
TrialLog parse_record(std::string_view line);

}  // namespace pftx
