#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "progressftx/statmodel.hpp"

namespace pftx {

using IndexList = std::vector<std::size_t>;

/// Symmetric-KL discriminant gain between classes a and b on the subset:
/// sum_{n in subset} (mu_a(n) - mu_b(n))^2 / C_nn.
double pairwise_gain(const GmModel& model, std::size_t a, std::size_t b,
                     std::span<const std::size_t> subset);

/// Mean of pairwise_gain over all L(L-1)/2 class pairs.
double average_gain(const GmModel& model, std::span<const std::size_t> subset);

/// Per-dimension average gains and their descending order (ties: lowest index first).
/// Sample independent, so one table serves every trial on a model.
class GainTable {
 public:
  explicit GainTable(Vector per_dim);
  static GainTable from_model(const GmModel& model);

  std::size_t dim() const { return per_dim_.size(); }
  double gain(std::size_t n) const { return per_dim_.at(n); }
  const Vector& per_dim() const { return per_dim_; }
  const IndexList& order() const { return order_; }
  double sum(std::span<const std::size_t> subset) const;

  /// Unreceived indices in descending gain order.
  IndexList admissible(std::span<const std::size_t> received) const;

 private:
  Vector per_dim_;
  IndexList order_;
};

struct SelectionPlan {
  std::vector<IndexList> subsets;
  IndexList flattened;
};

/// Importance-aware selection: slot k takes the min(remaining, rates[k])
/// most important admissible features.
SelectionPlan select(const GainTable& table, std::span<const std::size_t> received,
                     std::span<const std::size_t> rates);

}  // namespace pftx
