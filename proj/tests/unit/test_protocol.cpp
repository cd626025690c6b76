#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <set>

#include "progressftx/harness.hpp"
#include "progressftx/protocol.hpp"

namespace pftx {
namespace {

struct Fixture {
  GmModel model;
  GainTable table;

  explicit Fixture(std::size_t dim, double first = 1.25, double ratio = 0.95)
      : model(make(dim, first, ratio)), table(GainTable::from_model(model)) {}

  static GmModel make(std::size_t dim, double first, double ratio) {
    Rng rng(1);
    return synth_model(2, dim, geometric_profile(dim, first, ratio), rng);
  }
};

const ChannelModel kGauss(GaussianChannel{20e3, 0.01, db_to_linear(4.0), 64});

void check_log_invariants(const TrialLog& log, std::size_t dim) {
  std::set<std::size_t> seen;
  for (std::size_t n : log.features_delivered) {
    EXPECT_LT(n, dim);
    EXPECT_TRUE(seen.insert(n).second) << "feature delivered twice";
  }
  ASSERT_FALSE(log.slots.empty());
  EXPECT_EQ(log.slots.back().signal.kind, FeedbackSignal::Kind::Stop);
  EXPECT_EQ(log.slots_used + 1, log.slots.size());
  IndexList from_slots;
  std::size_t outages = 0;
  for (std::size_t i = 0; i + 1 < log.slots.size(); ++i) {
    const SlotRecord& r = log.slots[i];
    ASSERT_TRUE(r.outcome.has_value());
    if (*r.outcome == SlotOutcome::Delivered) {
      from_slots.insert(from_slots.end(), r.signal.indices.begin(), r.signal.indices.end());
    } else {
      ++outages;
      ASSERT_LT(i + 2, log.slots.size());
      EXPECT_EQ(log.slots[i + 1].signal.kind, FeedbackSignal::Kind::Retransmit);
      EXPECT_EQ(log.slots[i + 1].signal.indices, r.signal.indices);
    }
  }
  EXPECT_EQ(from_slots, log.features_delivered);
  EXPECT_EQ(outages, log.outage_count);
  EXPECT_EQ(log.final_entropy, log.slots.back().entropy_after);
}

TEST(SchemeName, RoundTrip) {
  for (auto k : {Scheme::Kind::ProgressFtx, Scheme::Kind::OneShot,
                 Scheme::Kind::RandomFeatureStopping}) {
    EXPECT_EQ(parse_scheme_kind(scheme_name(k)), k);
  }
  EXPECT_THROW(parse_scheme_kind("greedy"), std::invalid_argument);
}

TEST(RunTrial, TargetAlreadyMetUsesNoSlots) {
  const Fixture f(40);
  Rng rng(1);
  const Sample s = sample(f.model, rng);
  const StoppingPolicy p{1e-3, 5, std::numbers::ln2};
  const TrialLog log = run_trial(s, f.model, f.table, kGauss, p, Scheme::progressftx(), rng);
  EXPECT_EQ(log.slots_used, 0u);
  EXPECT_EQ(log.final_label, 0u);
  EXPECT_TRUE(log.features_delivered.empty());
  EXPECT_NEAR(log.final_entropy, std::numbers::ln2, 1e-15);
}

TEST(RunTrial, FreeTransmissionExhaustsFeatures) {
  const Fixture f(13);
  Rng rng(2);
  const StoppingPolicy p{1e-300, 5, std::nullopt};
  for (int rep = 0; rep < 20; ++rep) {
    const Sample s = sample(f.model, rng);
    const TrialLog log = run_trial(s, f.model, f.table, kGauss, p, Scheme::progressftx(), rng);
    EXPECT_EQ(log.slots_used, 3u);  // ceil(13 / 5)
    EXPECT_EQ(log.features_delivered, f.table.order());
    check_log_invariants(log, 13);
  }
}

TEST(RunTrial, RetransmissionRepeatsIndicesAndPreservesOrder) {
  const Fixture f(40);
  const ChannelModel fading(FadingChannel{5, 0.3});
  const StoppingPolicy p{1e-4, 5, 0.02};
  const Protocol proto(f.model, f.table, fading, p, Scheme::progressftx());
  std::size_t first_slot_outages = 0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    Rng srng = make_stream(9, i, StreamPurpose::Sample);
    Rng prng = make_stream(9, i, StreamPurpose::Protocol);
    const Sample s = sample(f.model, srng);
    const TrialLog log = proto.run_trial(s, prng);
    check_log_invariants(log, 40);
    const IndexList& order = f.table.order();
    ASSERT_LE(log.features_delivered.size(), order.size());
    EXPECT_TRUE(std::equal(log.features_delivered.begin(), log.features_delivered.end(),
                           order.begin()));
    if (log.slots_used >= 2 && *log.slots[0].outcome == SlotOutcome::Outage) {
      ++first_slot_outages;
      EXPECT_EQ(log.slots[1].signal.indices, log.slots[0].signal.indices);
    }
  }
  EXPECT_GT(first_slot_outages, 0u);
}

TEST(RunTrial, GaussianLatencyBoundedByExhaustion) {
  const Fixture f(40);
  const StoppingPolicy p{1e-6, 5, std::nullopt};
  for (auto scheme : {Scheme::progressftx(), Scheme::random_stopping()}) {
    const Protocol proto(f.model, f.table, kGauss, p, scheme);
    for (std::uint64_t i = 0; i < 50; ++i) {
      Rng srng = make_stream(3, i, StreamPurpose::Sample);
      Rng prng = make_stream(3, i, StreamPurpose::Protocol);
      const TrialLog log = proto.run_trial(sample(f.model, srng), prng);
      EXPECT_LE(log.slots_used, 8u);
      EXPECT_EQ(log.outage_count, 0u);
      check_log_invariants(log, 40);
    }
  }
}

TEST(RunTrial, RandomSelectionIsAdmissibleAndNotGreedy) {
  const Fixture f(40);
  const StoppingPolicy p{1e-6, 5, std::nullopt};
  const Protocol proto(f.model, f.table, kGauss, p, Scheme::random_stopping());
  std::vector<double> first_slot_hits(40, 0.0);
  const int n = 2000;
  for (int i = 0; i < n; ++i) {
    Rng srng = make_stream(4, i, StreamPurpose::Sample);
    Rng prng = make_stream(4, i, StreamPurpose::Protocol);
    const TrialLog log = proto.run_trial(sample(f.model, srng), prng);
    check_log_invariants(log, 40);
    if (log.slots_used > 0) {
      for (std::size_t idx : log.slots[0].signal.indices) first_slot_hits[idx] += 1.0;
    }
  }
  // Each dimension appears in the first slot with probability 5/40.
  for (double h : first_slot_hits) EXPECT_NEAR(h / n, 0.125, 0.04);
}

TEST(RunTrial, FirstDecisionIndependentOfSelectionRule) {
  // Both schemes see the same empty state at slot 1, so the shared stopping rule
  // must agree there.
  const Fixture f(20, 0.6, 1.0);
  const StoppingPolicy p{1e-3, 4, std::nullopt};
  const Protocol a(f.model, f.table, kGauss, p, Scheme::progressftx());
  const Protocol b(f.model, f.table, kGauss, p, Scheme::random_stopping());
  Rng srng(5);
  const Sample s = sample(f.model, srng);
  Rng r1(1), r2(2);
  const TrialLog la = a.run_trial(s, r1), lb = b.run_trial(s, r2);
  EXPECT_GE(la.slots_used, 1u);
  EXPECT_EQ(la.slots[0].signal.kind, lb.slots[0].signal.kind);
}

TEST(RunTrialTargets, EqualsIndependentRuns) {
  const Fixture f(40);
  const std::vector<std::optional<double>> targets{std::nullopt, 0.7, 0.5, 0.3, 0.1, 0.02, 0.0};
  const std::vector<ChannelModel> channels{kGauss, ChannelModel(FadingChannel{5, 0.2})};
  for (const auto& ch : channels) {
    for (auto scheme : {Scheme::progressftx(), Scheme::random_stopping(), Scheme::one_shot(0.2)}) {
      const Protocol shared(f.model, f.table, ch, StoppingPolicy{1e-3, 5, std::nullopt}, scheme);
      for (std::uint64_t i = 0; i < 60; ++i) {
        Rng srng = make_stream(21, i, StreamPurpose::Sample);
        const Sample s = sample(f.model, srng);
        Rng prng = make_stream(21, i, StreamPurpose::Protocol);
        const auto logs = shared.run_trial_targets(s, prng, targets);
        ASSERT_EQ(logs.size(), targets.size());
        for (std::size_t t = 0; t < targets.size(); ++t) {
          const Protocol single(f.model, f.table, ch, StoppingPolicy{1e-3, 5, targets[t]}, scheme);
          Rng fresh = make_stream(21, i, StreamPurpose::Protocol);
          EXPECT_EQ(logs[t], single.run_trial(s, fresh)) << "trial " << i << " target " << t;
        }
      }
    }
  }
}

TEST(OneShot, PlanBoundaries) {
  const Fixture f(40);
  const ExpBoundParams bound = one_shot_bound(f.table, 5);
  EXPECT_EQ(plan_one_shot(f.table, 5, bound.c1, bound), 0u);
  EXPECT_EQ(plan_one_shot(f.table, 5, 1e-12, bound), 8u);
  EXPECT_THROW(plan_one_shot(f.table, 5, 0.0, bound), std::invalid_argument);
}

TEST(OneShot, PlanMatchesLinearSearch) {
  const Fixture f(40);
  const ExpBoundParams bound = one_shot_bound(f.table, 5);
  Vector g(9, 0.0);
  Vector sorted = f.table.per_dim();
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  for (std::size_t k = 1; k <= 8; ++k) {
    g[k] = g[k - 1];
    for (std::size_t i = 5 * (k - 1); i < std::min<std::size_t>(40, 5 * k); ++i) g[k] += sorted[i];
  }
  for (double h0 : {1.0, 0.7, 0.5, 0.3, 0.2, 0.1, 0.05, 0.01, 1e-3}) {
    std::size_t want = 8;
    for (std::size_t k = 0; k <= 8; ++k) {
      if (bound.c1 * std::exp(-g[k] / 8.0) <= h0) {
        want = k;
        break;
      }
    }
    EXPECT_EQ(plan_one_shot(f.table, 5, h0, bound), want) << h0;
  }
}

TEST(OneShot, DeliveredSetIndependentOfSampleAndHarqUnderFading) {
  const Fixture f(40);
  const ChannelModel fading(FadingChannel{5, 0.2});
  const StoppingPolicy p{1e-3, 5, std::nullopt};
  const Protocol proto(f.model, f.table, fading, p, Scheme::one_shot(0.2));
  const std::size_t k = proto.one_shot_slots();
  ASSERT_GT(k, 0u);
  const IndexList expected(f.table.order().begin(), f.table.order().begin() + 5 * k);
  for (std::uint64_t i = 0; i < 100; ++i) {
    Rng srng = make_stream(6, i, StreamPurpose::Sample);
    Rng prng = make_stream(6, i, StreamPurpose::Protocol);
    const TrialLog log = proto.run_trial(sample(f.model, srng), prng);
    EXPECT_EQ(log.features_delivered, expected);
    EXPECT_EQ(log.slots_used, k + log.outage_count);
    check_log_invariants(log, 40);
  }
}

TEST(Metrics, Arithmetic) {
  const GmModel m({{0.0, 0.0}, {1.0, 1.0}}, {1.0, 1.0});
  TrialLog a, b;
  a.slots_used = 1;
  a.features_delivered = {0};
  a.true_label = 1;
  a.final_label = 1;
  a.final_entropy = 0.2;
  b.slots_used = 3;
  b.features_delivered = {0, 1};
  b.outage_count = 1;
  b.final_entropy = 0.4;
  b.final_label = 1;
  const TrialLog logs[] = {a, b};
  const SchemeMetrics s = metrics(logs, m);
  EXPECT_EQ(s.trials, 2u);
  EXPECT_DOUBLE_EQ(s.latency_mean, 2.0);
  EXPECT_DOUBLE_EQ(s.latency_stderr, 1.0);
  EXPECT_DOUBLE_EQ(s.accuracy, 0.5);
  EXPECT_DOUBLE_EQ(s.entropy_mean, 0.3);
  EXPECT_DOUBLE_EQ(s.outage_rate, 0.25);
  EXPECT_EQ(s.transmission_prob, (Vector{1.0, 0.5}));
  const TrialLog zeros[] = {TrialLog{}, TrialLog{}};
  EXPECT_EQ(metrics(zeros, m).latency_mean, 0.0);
  EXPECT_THROW(metrics(std::span<const TrialLog>{}, m), std::invalid_argument);
}

TEST(Metrics, TopGainDimensionSentMoreOften) {
  const Fixture f(40);
  const StoppingPolicy p{1e-3, 5, 0.1};
  const Protocol proto(f.model, f.table, kGauss, p, Scheme::progressftx());
  const auto logs = run_trials(proto, 10000, 12, 1);
  const SchemeMetrics m = metrics(logs, f.model);
  EXPECT_GE(m.transmission_prob[f.table.order().front()], m.transmission_prob[f.table.order().back()]);
  EXPECT_EQ(m.transmission_prob[f.table.order().front()], 1.0 - [&] {
    double none = 0;
    for (const auto& l : logs) none += l.slots_used == 0;
    return none / 10000.0;
  }());
}

TEST(MultiClass, RunsAndRespectsInvariants) {
  Rng rng(1);
  const GmModel m = synth_model(3, 20, geometric_profile(20, 1.5, 0.9), rng);
  const GainTable t = GainTable::from_model(m);
  const ChannelModel fading(FadingChannel{4, 0.1});
  const Protocol proto(m, t, fading, StoppingPolicy{1e-3, 5, 0.2}, Scheme::progressftx());
  const auto logs = run_trials(proto, 300, 2, 1);
  for (const auto& log : logs) check_log_invariants(log, 20);
  EXPECT_GT(metrics(logs, m).accuracy, 1.0 / 3.0);
}

TEST(TrialRecord, RoundTrip) {
  const Fixture f(40);
  const ChannelModel fading(FadingChannel{5, 0.3});
  const Protocol proto(f.model, f.table, fading, StoppingPolicy{1e-4, 5, 0.05},
                       Scheme::random_stopping());
  const auto logs = run_trials(proto, 50, 8, 1);
  for (const auto& log : logs) EXPECT_EQ(parse_record(to_record(log)), log);
  EXPECT_THROW(parse_record("1\t2\t3"), std::invalid_argument);
  EXPECT_THROW(parse_record("1\t0\t0\t0\t0.5\t1\tX[1]D=0.1"), std::invalid_argument);
}

}  // namespace
}  // namespace pftx
