#pragma once

#include <cstddef>
#include <optional>
#include <span>

#include "progressftx/bounds.hpp"
#include "progressftx/gains.hpp"

namespace pftx {

struct StoppingPolicy {
  double cost_per_slot = 1e-3;                     // c0, nats per slot
  std::size_t horizon = 5;                         // K
  std::optional<double> uncertainty_target;        // H_tgt, nats

  void validate() const;
};

struct StopDecision {
  bool transmit = false;
  std::size_t planned_k = 0;
  double reward = 0.0;  // R = tilde_h(0-step) - tilde_h(1-step)
};

/// G*(theta, k): sum of the min(N - |W|, Y0 k) largest unreceived gains.
double cumulative_gain(const GainTable& table, std::span<const std::size_t> received,
                       std::size_t y0, std::size_t k);

/// G*(theta, k) for k = 0..horizon.
Vector cumulative_gain_curve(const GainTable& table, std::span<const std::size_t> received,
                             std::size_t y0, std::size_t horizon);

/// Calibrates the exponential envelope for the current state on the reachable
/// grid {G*(theta, k)}_{k=0..horizon}.
ExpBoundParams calibrate_for_state(double delta1, const GainTable& table,
                                   std::span<const std::size_t> received, std::size_t y0,
                                   std::size_t horizon, double tol = kDefaultQuadTol);

/// Gaussian channel: stop when tilde_h(0) - tilde_h(G*(1)) <= c0. planned_k is
/// min(K, first k whose one-step drop is <= c0).
StopDecision stop_gaussian(double delta1, const GainTable& table,
                           std::span<const std::size_t> received, std::size_t y0,
                           const StoppingPolicy& policy, const ExpBoundParams& bound);

/// C(n, k) (1 - p_o)^k p_o^(n - k).
double binom_pmf(std::size_t successes, std::size_t trials, double outage_prob);

/// Phi(theta, k_tx) = E_{k' ~ Binom(k_tx, 1 - p_o)} tilde_h(G*(theta, k')).
double phi(double delta1, const GainTable& table, std::span<const std::size_t> received,
           std::size_t y0, std::size_t k_tx, double outage_prob, const ExpBoundParams& bound);

/// Fading channel: transmit iff R > c0 / (1 - p_o); planned_k minimizes
/// Phi(theta, k) + c0 k over {0..K}, smaller k on ties.
StopDecision stop_fading(double delta1, const GainTable& table,
                         std::span<const std::size_t> received, std::size_t y0,
                         const StoppingPolicy& policy, double outage_prob,
                         const ExpBoundParams& bound);

/// max_{k in 1..K-1} -(Phi(k-1) + Phi(k+1) - 2 Phi(k)); <= 0 up to rounding when Phi is convex.
double convexity_check(double delta1, const GainTable& table,
                       std::span<const std::size_t> received, std::size_t y0, std::size_t horizon,
                       double outage_prob, const ExpBoundParams& bound);

}  // namespace pftx
