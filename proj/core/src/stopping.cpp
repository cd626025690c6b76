#include "progressftx/stopping.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace pftx {

void StoppingPolicy::validate() const {
  if (!(cost_per_slot > 0.0) || !std::isfinite(cost_per_slot)) {
    throw std::invalid_argument("StoppingPolicy: cost per slot must be > 0");
  }
  if (horizon < 1) throw std::invalid_argument("StoppingPolicy: horizon must be >= 1");
  if (uncertainty_target && !(*uncertainty_target >= 0.0)) {
    throw std::invalid_argument("StoppingPolicy: uncertainty target must be >= 0");
  }
}

Vector cumulative_gain_curve(const GainTable& table, std::span<const std::size_t> received,
                             std::size_t y0, std::size_t horizon) {
  const IndexList pool = table.admissible(received);
  Vector curve(horizon + 1, 0.0);
  double acc = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 1; k <= horizon; ++k) {
    const std::size_t upto = std::min(pool.size(), y0 * k);
    for (; used < upto; ++used) acc += table.gain(pool[used]);
    curve[k] = acc;
  }
  return curve;
}

double cumulative_gain(const GainTable& table, std::span<const std::size_t> received,
                       std::size_t y0, std::size_t k) {
  if (k == 0) return 0.0;
  return cumulative_gain_curve(table, received, y0, k)[k];
}

ExpBoundParams calibrate_for_state(double delta1, const GainTable& table,
                                   std::span<const std::size_t> received, std::size_t y0,
                                   std::size_t horizon, double tol) {
  const Vector grid = cumulative_gain_curve(table, received, y0, horizon);
  return calibrate_exp_bound(delta1, grid, tol);
}

StopDecision stop_gaussian(double /*delta1*/, const GainTable& table,
                           std::span<const std::size_t> received, std::size_t y0,
                           const StoppingPolicy& policy, const ExpBoundParams& bound) {
  policy.validate();
  StopDecision d;
  if (received.size() >= table.dim()) return d;

  // delta1 enters only through the calibrated envelope.
  const Vector g = cumulative_gain_curve(table, received, y0, policy.horizon);
  d.reward = tilde_h(bound, g[0]) - tilde_h(bound, g[1]);

  std::size_t k_tilde = policy.horizon;
  for (std::size_t k = 0; k < policy.horizon; ++k) {
    if (tilde_h(bound, g[k]) - tilde_h(bound, g[k + 1]) <= policy.cost_per_slot) {
      k_tilde = k;
      break;
    }
  }
  d.planned_k = std::min(policy.horizon, k_tilde);
  d.transmit = d.planned_k >= 1;
  return d;
}

double binom_pmf(std::size_t successes, std::size_t trials, double outage_prob) {
  if (successes > trials) throw std::invalid_argument("binom_pmf: successes > trials");
  if (!(outage_prob >= 0.0 && outage_prob <= 1.0)) {
    throw std::invalid_argument("binom_pmf: outage probability must be in [0, 1]");
  }
  const double n = static_cast<double>(trials), k = static_cast<double>(successes);
  const double log_choose = std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
  const double success = 1.0 - outage_prob;
  // pow handles 0^0 = 1 at the boundaries, which log/exp would not.
  return std::exp(log_choose) * std::pow(success, k) * std::pow(outage_prob, n - k);
}

namespace {

double phi_from_curve(std::span<const double> g, std::size_t k_tx, double po,
                      const ExpBoundParams& bound) {
  double total = 0.0;
  for (std::size_t ks = 0; ks <= k_tx; ++ks) total += tilde_h(bound, g[ks]) * binom_pmf(ks, k_tx, po);
  return total;
}

void check_outage(double po) {
  if (!(po >= 0.0 && po < 1.0)) throw std::invalid_argument("outage probability must be in [0, 1)");
}

}  // namespace

double phi(double /*delta1*/, const GainTable& table, std::span<const std::size_t> received,
           std::size_t y0, std::size_t k_tx, double outage_prob, const ExpBoundParams& bound) {
  check_outage(outage_prob);
  const Vector g = cumulative_gain_curve(table, received, y0, k_tx);
  return phi_from_curve(g, k_tx, outage_prob, bound);
}

StopDecision stop_fading(double /*delta1*/, const GainTable& table,
                         std::span<const std::size_t> received, std::size_t y0,
                         const StoppingPolicy& policy, double outage_prob,
                         const ExpBoundParams& bound) {
  policy.validate();
  check_outage(outage_prob);
  StopDecision d;
  if (received.size() >= table.dim()) return d;

  const Vector g = cumulative_gain_curve(table, received, y0, policy.horizon);
  d.reward = tilde_h(bound, g[0]) - tilde_h(bound, g[1]);

  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k <= policy.horizon; ++k) {
    const double cost = phi_from_curve(g, k, outage_prob, bound) +
                        policy.cost_per_slot * static_cast<double>(k);
    if (cost < best) {
      best = cost;
      d.planned_k = k;
    }
  }
  d.transmit = d.reward > policy.cost_per_slot / (1.0 - outage_prob);
  return d;
}

double convexity_check(double /*delta1*/, const GainTable& table,
                       std::span<const std::size_t> received, std::size_t y0, std::size_t horizon,
                       double outage_prob, const ExpBoundParams& bound) {
  check_outage(outage_prob);
  const Vector g = cumulative_gain_curve(table, received, y0, horizon);
  Vector p(horizon + 1);
  for (std::size_t k = 0; k <= horizon; ++k) p[k] = phi_from_curve(g, k, outage_prob, bound);
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k + 1 <= horizon; ++k) worst = std::max(worst, -(p[k - 1] + p[k + 1] - 2.0 * p[k]));
  return horizon < 2 ? 0.0 : worst;
}

}  // namespace pftx
