#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "progressftx/statmodel.hpp"

namespace pftx {

/// Features received so far: values on the received index set W, zero elsewhere.
/// Indices are kept in arrival order.
class PartialFeatureVector {
 public:
  explicit PartialFeatureVector(std::size_t dim);

  /// Adds feature `index`; throws on out-of-range or duplicate index.
  void receive(std::size_t index, double value);

  /// Placement update x <- x + M * delta for the increment delivered in one slot.
  void apply_increment(std::span<const std::size_t> indices, std::span<const double> values);

  bool has(std::size_t index) const { return index < mask_.size() && mask_[index]; }
  double value(std::size_t index) const { return values_.at(index); }
  const std::vector<std::size_t>& received() const { return order_; }
  std::size_t dim() const { return values_.size(); }
  std::size_t size() const { return order_.size(); }
  bool complete() const { return order_.size() == values_.size(); }

 private:
  Vector values_;
  std::vector<char> mask_;
  std::vector<std::size_t> order_;
};

/// z_l = 1/2 * sum_{n in W} (x(n) - mu_l(n))^2 / C_nn.
double half_mahalanobis(const PartialFeatureVector& pfv, const GmModel& model, std::size_t cls);
Vector half_mahalanobis_all(const PartialFeatureVector& pfv, const GmModel& model);

/// argmin_l z_l; ties go to the lowest class index.
std::size_t classify(const PartialFeatureVector& pfv, const GmModel& model);

/// Softmax of -z with max-subtraction.
Vector posteriors(const PartialFeatureVector& pfv, const GmModel& model);
Vector posteriors_from_distances(std::span<const double> z);

/// Shannon entropy of the posteriors, in nats.
double entropy(const PartialFeatureVector& pfv, const GmModel& model);
double entropy_from_distances(std::span<const double> z);

/// z_a - z_b. Throws if a == b.
double differential_distance(const PartialFeatureVector& pfv, const GmModel& model,
                             std::size_t a, std::size_t b);

/// Binary posterior entropy as a function of the differential distance:
/// log(1 + e^-d) + d / (e^d + 1), evaluated on |d|.
double binary_entropy(double delta);

}  // namespace pftx
