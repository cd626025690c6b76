#pragma once

#include <cstddef>
#include <variant>

#include "progressftx/random.hpp"

namespace pftx {

/// Static channel: the rate is matched to the known gain.
struct GaussianChannel {
  double bandwidth_hz = 20e3;
  double slot_s = 0.01;
  double snr_linear = 1.0;  // rho * g0
  double bits_per_feature = 64;
};

/// Fixed-rate transmission over i.i.d. fading; a slot is lost with probability outage_prob.
struct FadingChannel {
  std::size_t features_per_slot = 5;
  double outage_prob = 0.0;
};

enum class SlotOutcome { Delivered, Outage };

class ChannelModel {
 public:
  using Variant = std::variant<GaussianChannel, FadingChannel>;

  /// Validates parameters; a configuration that carries zero features per slot is rejected.
  explicit ChannelModel(Variant v);

  const Variant& variant() const { return v_; }
  bool is_fading() const { return std::holds_alternative<FadingChannel>(v_); }
  double outage_prob() const;
  std::size_t features_per_slot() const { return features_per_slot_; }

 private:
  Variant v_;
  std::size_t features_per_slot_ = 0;
};

double db_to_linear(double db);

/// Y0 = floor(B log2(1 + snr) T / Q) for the Gaussian channel; configured Y0 for fading.
std::size_t features_per_slot(const ChannelModel& ch);

SlotOutcome slot_outcome(const ChannelModel& ch, Rng& rng);

}  // namespace pftx
