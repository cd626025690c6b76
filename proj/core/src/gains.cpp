#include "progressftx/gains.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace pftx {

namespace {

void check_subset(std::span<const std::size_t> subset, std::size_t dim) {
  for (std::size_t n : subset) {
    if (n >= dim) throw std::out_of_range("feature index out of range");
  }
}

}  // namespace

double pairwise_gain(const GmModel& model, std::size_t a, std::size_t b,
                     std::span<const std::size_t> subset) {
  if (a >= model.num_classes() || b >= model.num_classes()) {
    throw std::out_of_range("pairwise_gain: class index out of range");
  }
  check_subset(subset, model.dim());
  const Vector& mu_a = model.centroid(a);
  const Vector& mu_b = model.centroid(b);
  double g = 0.0;
  for (std::size_t n : subset) {
    const double d = mu_a[n] - mu_b[n];
    g += d * d / model.variance(n);
  }
  return g;
}

double average_gain(const GmModel& model, std::span<const std::size_t> subset) {
  const std::size_t L = model.num_classes();
  double total = 0.0;
  for (std::size_t a = 0; a < L; ++a)
    for (std::size_t b = a + 1; b < L; ++b) total += pairwise_gain(model, a, b, subset);
  return total / (static_cast<double>(L * (L - 1)) / 2.0);
}

GainTable::GainTable(Vector per_dim) : per_dim_(std::move(per_dim)), order_(per_dim_.size()) {
  for (double g : per_dim_) {
    if (!(g >= 0.0) || !std::isfinite(g)) throw std::invalid_argument("GainTable: gains must be >= 0");
  }
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  std::stable_sort(order_.begin(), order_.end(),
                   [this](std::size_t a, std::size_t b) { return per_dim_[a] > per_dim_[b]; });
}

GainTable GainTable::from_model(const GmModel& model) {
  Vector g(model.dim());
  for (std::size_t n = 0; n < model.dim(); ++n) {
    const std::size_t single[] = {n};
    g[n] = average_gain(model, single);
  }
  return GainTable(std::move(g));
}

double GainTable::sum(std::span<const std::size_t> subset) const {
  check_subset(subset, dim());
  double s = 0.0;
  for (std::size_t n : subset) s += per_dim_[n];
  return s;
}

IndexList GainTable::admissible(std::span<const std::size_t> received) const {
  std::vector<char> taken(dim(), 0);
  for (std::size_t n : received) {
    if (n >= dim()) throw std::out_of_range("received index out of range");
    taken[n] = 1;
  }
  IndexList out;
  out.reserve(dim());
  for (std::size_t n : order_) {
    if (!taken[n]) out.push_back(n);
  }
  return out;
}

SelectionPlan select(const GainTable& table, std::span<const std::size_t> received,
                     std::span<const std::size_t> rates) {
  const IndexList pool = table.admissible(received);
  SelectionPlan plan;
  plan.subsets.reserve(rates.size());
  std::size_t next = 0;
  for (std::size_t rate : rates) {
    const std::size_t take = std::min(pool.size() - next, rate);
    IndexList subset(pool.begin() + static_cast<std::ptrdiff_t>(next),
                     pool.begin() + static_cast<std::ptrdiff_t>(next + take));
    next += take;
    plan.flattened.insert(plan.flattened.end(), subset.begin(), subset.end());
    plan.subsets.push_back(std::move(subset));
  }
  return plan;
}

}  // namespace pftx
