#include "progressftx/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace pftx {

namespace {

std::size_t gaussian_rate(const GaussianChannel& g) {
  if (!(g.bandwidth_hz > 0.0) || !(g.slot_s > 0.0) || !(g.bits_per_feature > 0.0)) {
    throw std::invalid_argument("GaussianChannel: bandwidth, slot length and Q must be > 0");
  }
  if (!(g.snr_linear >= 0.0)) throw std::invalid_argument("GaussianChannel: SNR must be >= 0");
  const double rate_bps = g.bandwidth_hz * std::log2(1.0 + g.snr_linear);
  const double y0 = std::floor(rate_bps * g.slot_s / g.bits_per_feature);
  if (y0 < 1.0) {
    throw std::invalid_argument("GaussianChannel: configuration carries zero features per slot");
  }
  return static_cast<std::size_t>(y0);
}

}  // namespace

ChannelModel::ChannelModel(Variant v) : v_(std::move(v)) {
  if (const auto* g = std::get_if<GaussianChannel>(&v_)) {
    features_per_slot_ = gaussian_rate(*g);
  } else {
    const auto& f = std::get<FadingChannel>(v_);
    if (f.features_per_slot < 1) {
      throw std::invalid_argument("FadingChannel: features per slot must be >= 1");
    }
    if (!(f.outage_prob >= 0.0 && f.outage_prob < 1.0)) {
      throw std::invalid_argument("FadingChannel: outage probability must be in [0, 1)");
    }
    features_per_slot_ = f.features_per_slot;
  }
}

double ChannelModel::outage_prob() const {
  if (const auto* f = std::get_if<FadingChannel>(&v_)) return f->outage_prob;
  return 0.0;
}

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

std::size_t features_per_slot(const ChannelModel& ch) { return ch.features_per_slot(); }

SlotOutcome slot_outcome(const ChannelModel& ch, Rng& rng) {
  const double po = ch.outage_prob();
  if (po <= 0.0) return SlotOutcome::Delivered;
  std::bernoulli_distribution lost(po);
  return lost(rng) ? SlotOutcome::Outage : SlotOutcome::Delivered;
}

}  // namespace pftx
