#include "progressftx/protocol.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace pftx {

std::string_view scheme_name(Scheme::Kind kind) {
  switch (kind) {
    case Scheme::Kind::ProgressFtx: return "progressftx";
    case Scheme::Kind::OneShot: return "oneshot";
    case Scheme::Kind::RandomFeatureStopping: return "random";
  }
  return "unknown";
}

Scheme::Kind parse_scheme_kind(std::string_view name) {
  if (name == "progressftx") return Scheme::Kind::ProgressFtx;
  if (name == "oneshot") return Scheme::Kind::OneShot;
  if (name == "random") return Scheme::Kind::RandomFeatureStopping;
  throw std::invalid_argument("unknown scheme '" + std::string(name) +
                              "' (expected progressftx, oneshot or random)");
}

namespace {

std::size_t slots_to_exhaust(std::size_t dim, std::size_t y0) { return (dim + y0 - 1) / y0; }

bool same_outcome(const std::optional<SlotOutcome>& a, const std::optional<SlotOutcome>& b) {
  return a.has_value() == b.has_value() && (!a || *a == *b);
}

}  // namespace

bool TrialLog::operator==(const TrialLog& o) const {
  if (slots_used != o.slots_used || features_delivered != o.features_delivered ||
      outage_count != o.outage_count || final_label != o.final_label ||
      true_label != o.true_label || final_entropy != o.final_entropy ||
      slots.size() != o.slots.size()) {
    return false;
  }
  for (std::size_t i = 0; i < slots.size(); ++i) {
    const auto& a = slots[i];
    const auto& b = o.slots[i];
    if (a.signal.kind != b.signal.kind || a.signal.indices != b.signal.indices ||
        !same_outcome(a.outcome, b.outcome) || a.entropy_after != b.entropy_after) {
      return false;
    }
  }
  return true;
}

ExpBoundParams one_shot_bound(const GainTable& table, std::size_t y0, double tol) {
  const IndexList none;
  const Vector grid = cumulative_gain_curve(table, none, y0, slots_to_exhaust(table.dim(), y0));
  return calibrate_exp_bound(0.0, grid, tol);
}

std::size_t plan_one_shot(const GainTable& table, std::size_t y0, double h0,
                          const ExpBoundParams& bound) {
  if (!(h0 > 0.0)) throw std::invalid_argument("plan_one_shot: H0 must be > 0");
  if (y0 < 1) throw std::invalid_argument("plan_one_shot: Y0 must be >= 1");
  const std::size_t k_max = slots_to_exhaust(table.dim(), y0);
  const IndexList none;
  const Vector g = cumulative_gain_curve(table, none, y0, k_max);
  for (std::size_t k = 0; k <= k_max; ++k) {
    if (tilde_h(bound, g[k]) <= h0) return k;
  }
  return k_max;
}

Protocol::Protocol(const GmModel& model, GainTable table, ChannelModel channel,
                   StoppingPolicy policy, Scheme scheme, double quad_tol)
    : model_(&model),
      table_(std::move(table)),
      channel_(std::move(channel)),
      policy_(std::move(policy)),
      scheme_(scheme),
      quad_tol_(quad_tol) {
  policy_.validate();
  if (table_.dim() != model.dim()) throw std::invalid_argument("Protocol: gain table dimension mismatch");
  if (scheme_.kind == Scheme::Kind::OneShot) {
    const std::size_t y0 = channel_.features_per_slot();
    one_shot_k_ = plan_one_shot(table_, y0, scheme_.one_shot_target,
                                one_shot_bound(table_, y0, quad_tol_));
  }
}

double Protocol::lookahead_delta(const PartialFeatureVector& pfv) const {
  const Vector z = half_mahalanobis_all(pfv, *model_);
  if (z.size() == 2) return z[0] - z[1];
  // Multi-class: the least separated pair dominates the pairwise bound.
  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b) closest = std::min(closest, std::fabs(z[a] - z[b]));
  return closest;
}

FeedbackSignal Protocol::decide(const TrialState& state, std::optional<double> target,
                                Rng& rng) const {
  if (state.pending_retx) return {FeedbackSignal::Kind::Retransmit, *state.pending_retx};

  const FeedbackSignal stop{FeedbackSignal::Kind::Stop, {}};
  const PartialFeatureVector& pfv = state.pfv;
  if (pfv.complete()) return stop;
  if (target && entropy(pfv, *model_) <= *target) return stop;

  const std::size_t y0 = channel_.features_per_slot();
  const double delta1 = lookahead_delta(pfv);
  const auto& received = pfv.received();
  const ExpBoundParams bound =
      calibrate_for_state(delta1, table_, received, y0, policy_.horizon, quad_tol_);
  const StopDecision decision =
      channel_.is_fading()
          ? stop_fading(delta1, table_, received, y0, policy_, channel_.outage_prob(), bound)
          : stop_gaussian(delta1, table_, received, y0, policy_, bound);
  if (!decision.transmit) return stop;

  FeedbackSignal next{FeedbackSignal::Kind::TransmitNew, {}};
  if (scheme_.kind == Scheme::Kind::ProgressFtx) {
    const std::size_t rates[] = {y0};
    next.indices = select(table_, received, rates).subsets.front();
  } else {
    // Uniform admissible subset: partial Fisher-Yates over the unreceived indices.
    IndexList pool = table_.admissible(received);
    std::sort(pool.begin(), pool.end());
    const std::size_t take = std::min(pool.size(), y0);
    for (std::size_t i = 0; i < take; ++i) {
      std::uniform_int_distribution<std::size_t> pick(i, pool.size() - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    next.indices.assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(take));
  }
  return next;
}

namespace {

void deliver(PartialFeatureVector& pfv, const IndexList& indices, const Sample& sample,
             TrialLog& log) {
  Vector values(indices.size());
  for (std::size_t j = 0; j < indices.size(); ++j) values[j] = sample.features[indices[j]];
  pfv.apply_increment(indices, values);
  log.features_delivered.insert(log.features_delivered.end(), indices.begin(), indices.end());
}

void finish(TrialLog& log, const PartialFeatureVector& pfv, const GmModel& model) {
  log.final_label = classify(pfv, model);
  log.final_entropy = entropy(pfv, model);
  log.slots.push_back({{FeedbackSignal::Kind::Stop, {}}, std::nullopt, log.final_entropy});
}

}  // namespace

TrialLog Protocol::run_trial(const Sample& sample, Rng& rng) const {
  if (sample.features.size() != model_->dim()) {
    throw std::invalid_argument("run_trial: sample dimension does not match model");
  }
  if (scheme_.kind == Scheme::Kind::OneShot) return run_one_shot(sample, rng);

  TrialLog log;
  log.true_label = sample.label;
  TrialState state{PartialFeatureVector(model_->dim()), 1, std::nullopt, false};

  while (!state.stopped) {
    FeedbackSignal signal = decide(state, policy_.uncertainty_target, rng);
    if (signal.kind == FeedbackSignal::Kind::Stop) {
      state.stopped = true;
      break;
    }
    ++log.slots_used;
    const SlotOutcome outcome = slot_outcome(channel_, rng);
    if (outcome == SlotOutcome::Delivered) {
      deliver(state.pfv, signal.indices, sample, log);
      state.pending_retx.reset();
    } else {
      ++log.outage_count;
      state.pending_retx = signal.indices;
    }
    log.slots.push_back({std::move(signal), outcome, entropy(state.pfv, *model_)});
    ++state.slot;
  }
  finish(log, state.pfv, *model_);
  return log;
}

std::vector<TrialLog> Protocol::run_trial_targets(
    const Sample& sample, Rng& rng, std::span<const std::optional<double>> targets) const {
  if (scheme_.kind == Scheme::Kind::OneShot) {
    const TrialLog log = run_one_shot(sample, rng);
    return std::vector<TrialLog>(targets.size(), log);
  }
  if (sample.features.size() != model_->dim()) {
    throw std::invalid_argument("run_trial: sample dimension does not match model");
  }

  // The target only enters through the early-stop test before a new decision,
  // so every target follows one shared trajectory until its own test fires.
  std::vector<TrialLog> out(targets.size());
  std::vector<bool> open(targets.size(), true);
  std::size_t remaining = targets.size();

  TrialLog log;
  log.true_label = sample.label;
  TrialState state{PartialFeatureVector(model_->dim()), 1, std::nullopt, false};
  auto close = [&](std::size_t i) {
    out[i] = log;
    finish(out[i], state.pfv, *model_);
    open[i] = false;
    --remaining;
  };

  while (remaining > 0) {
    if (!state.pending_retx && !state.pfv.complete()) {
      const double h = entropy(state.pfv, *model_);
      for (std::size_t i = 0; i < targets.size(); ++i)
        if (open[i] && targets[i] && h <= *targets[i]) close(i);
      if (remaining == 0) break;
    }
    FeedbackSignal signal = decide(state, std::nullopt, rng);
    if (signal.kind == FeedbackSignal::Kind::Stop) break;
    ++log.slots_used;
    const SlotOutcome outcome = slot_outcome(channel_, rng);
    if (outcome == SlotOutcome::Delivered) {
      deliver(state.pfv, signal.indices, sample, log);
      state.pending_retx.reset();
    } else {
      ++log.outage_count;
      state.pending_retx = signal.indices;
    }
    log.slots.push_back({std::move(signal), outcome, entropy(state.pfv, *model_)});
    ++state.slot;
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (open[i]) close(i);
  return out;
}

TrialLog Protocol::run_one_shot(const Sample& sample, Rng& rng) const {
  TrialLog log;
  log.true_label = sample.label;
  PartialFeatureVector pfv(model_->dim());

  const std::size_t y0 = channel_.features_per_slot();
  const IndexList none;
  const std::vector<std::size_t> rates(one_shot_k_, y0);
  const SelectionPlan plan = select(table_, none, rates);

  // No stopping feedback; link-layer HARQ repeats a lost block until it lands.
  for (const IndexList& block : plan.subsets) {
    if (block.empty()) break;
    bool first = true;
    for (;;) {
      ++log.slots_used;
      const SlotOutcome outcome = slot_outcome(channel_, rng);
      FeedbackSignal signal{first ? FeedbackSignal::Kind::TransmitNew
                                  : FeedbackSignal::Kind::Retransmit,
                            block};
      first = false;
      if (outcome == SlotOutcome::Delivered) {
        deliver(pfv, block, sample, log);
        log.slots.push_back({std::move(signal), outcome, entropy(pfv, *model_)});
        break;
      }
      ++log.outage_count;
      log.slots.push_back({std::move(signal), outcome, entropy(pfv, *model_)});
    }
  }
  finish(log, pfv, *model_);
  return log;
}

TrialLog run_trial(const Sample& sample, const GmModel& model, const GainTable& table,
                   const ChannelModel& channel, const StoppingPolicy& policy,
                   const Scheme& scheme, Rng& rng) {
  const Protocol protocol(model, table, channel, policy, scheme);
  return protocol.run_trial(sample, rng);
}

SchemeMetrics metrics(std::span<const TrialLog> logs, const GmModel& model) {
  if (logs.empty()) throw std::invalid_argument("metrics: no trial logs");
  SchemeMetrics m;
  m.trials = logs.size();
  m.transmission_prob.assign(model.dim(), 0.0);
  const double n = static_cast<double>(logs.size());

  double sum = 0.0, sum_sq = 0.0, correct = 0.0, ent = 0.0;
  double slots = 0.0, outages = 0.0;
  for (const TrialLog& log : logs) {
    const double s = static_cast<double>(log.slots_used);
    sum += s;
    sum_sq += s * s;
    correct += log.final_label == log.true_label ? 1.0 : 0.0;
    ent += log.final_entropy;
    slots += s;
    outages += static_cast<double>(log.outage_count);
    for (std::size_t idx : log.features_delivered) m.transmission_prob.at(idx) += 1.0;
  }
  m.latency_mean = sum / n;
  if (logs.size() > 1) {
    const double var = std::max(0.0, (sum_sq - n * m.latency_mean * m.latency_mean) / (n - 1.0));
    m.latency_stderr = std::sqrt(var / n);
  }
  m.accuracy = correct / n;
  m.entropy_mean = ent / n;
  m.outage_rate = slots > 0.0 ? outages / slots : 0.0;
  for (auto& p : m.transmission_prob) p /= n;
  return m;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join(const IndexList& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(xs[i]);
  }
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = s.find(sep, start);
    out.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::size_t parse_size(std::string_view s) {
  std::size_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("trial record: bad integer '" + std::string(s) + "'");
  }
  return v;
}

double parse_real(std::string_view s) {
  const std::string tmp(s);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tmp, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("trial record: bad number '" + tmp + "'");
  }
  if (used != tmp.size()) throw std::invalid_argument("trial record: bad number '" + tmp + "'");
  return v;
}

IndexList parse_indices(std::string_view s) {
  IndexList out;
  if (s.empty()) return out;
  for (auto part : split(s, ',')) out.push_back(parse_size(part));
  return out;
}

}  // namespace

std::string to_record(const TrialLog& log) {
  std::string line;
  line += std::to_string(log.slots_used) + '\t' + std::to_string(log.outage_count) + '\t' +
          std::to_string(log.true_label) + '\t' + std::to_string(log.final_label) + '\t' +
          fmt_double(log.final_entropy) + '\t' + join(log.features_delivered) + '\t';
  for (std::size_t i = 0; i < log.slots.size(); ++i) {
    const SlotRecord& r = log.slots[i];
    if (i) line += ';';
    switch (r.signal.kind) {
      case FeedbackSignal::Kind::TransmitNew: line += 'N'; break;
      case FeedbackSignal::Kind::Retransmit: line += 'R'; break;
      case FeedbackSignal::Kind::Stop: line += 'S'; break;
    }
    line += '[' + join(r.signal.indices) + ']';
    line += !r.outcome ? '-' : (*r.outcome == SlotOutcome::Delivered ? 'D' : 'O');
    line += '=' + fmt_double(r.entropy_after);
  }
  return line;
}

TrialLog parse_record(std::string_view line) {
  const auto fields = split(line, '\t');
  if (fields.size() != 7) throw std::invalid_argument("trial record: expected 7 tab-separated fields");
  TrialLog log;
  log.slots_used = parse_size(fields[0]);
  log.outage_count = parse_size(fields[1]);
  log.true_label = parse_size(fields[2]);
  log.final_label = parse_size(fields[3]);
  log.final_entropy = parse_real(fields[4]);
  log.features_delivered = parse_indices(fields[5]);
  if (fields[6].empty()) return log;
  for (std::string_view rec : split(fields[6], ';')) {
    const auto open = rec.find('['), close = rec.find(']');
    if (open != 1 || close == std::string_view::npos || close + 3 > rec.size() ||
        rec[close + 2] != '=') {
      throw std::invalid_argument("trial record: malformed slot '" + std::string(rec) + "'");
    }
    SlotRecord r;
    switch (rec[0]) {
      case 'N': r.signal.kind = FeedbackSignal::Kind::TransmitNew; break;
      case 'R': r.signal.kind = FeedbackSignal::Kind::Retransmit; break;
      case 'S': r.signal.kind = FeedbackSignal::Kind::Stop; break;
      default: throw std::invalid_argument("trial record: unknown signal");
    }
    r.signal.indices = parse_indices(rec.substr(2, close - 2));
    switch (rec[close + 1]) {
      case 'D': r.outcome = SlotOutcome::Delivered; break;
      case 'O': r.outcome = SlotOutcome::Outage; break;
      case '-': break;
      default: throw std::invalid_argument("trial record: unknown outcome");
    }
    r.entropy_after = parse_real(rec.substr(close + 3));
    log.slots.push_back(std::move(r));
  }
  return log;
}

}  // namespace pftx
