#include "progressftx/linclass.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pftx {

PartialFeatureVector::PartialFeatureVector(std::size_t dim) : values_(dim, 0.0), mask_(dim, 0) {}

void PartialFeatureVector::receive(std::size_t index, double value) {
  if (index >= values_.size()) throw std::out_of_range("PartialFeatureVector: index out of range");
  if (mask_[index]) throw std::invalid_argument("PartialFeatureVector: feature already received");
  mask_[index] = 1;
  values_[index] = value;
  order_.push_back(index);
}

void PartialFeatureVector::apply_increment(std::span<const std::size_t> indices,
                                           std::span<const double> values) {
  if (indices.size() != values.size()) {
    throw std::invalid_argument("apply_increment: index/value length mismatch");
  }
  for (std::size_t j = 0; j < indices.size(); ++j) receive(indices[j], values[j]);
}

namespace {

void check_dims(const PartialFeatureVector& pfv, const GmModel& model) {
  if (pfv.dim() != model.dim()) {
    throw std::invalid_argument("partial feature vector dimension does not match model");
  }
}

}  // namespace

double half_mahalanobis(const PartialFeatureVector& pfv, const GmModel& model, std::size_t cls) {
  check_dims(pfv, model);
  const Vector& mu = model.centroid(cls);
  double sum = 0.0;
  for (std::size_t n : pfv.received()) {
    const double d = pfv.value(n) - mu[n];
    sum += d * d / model.variance(n);
  }
  return 0.5 * sum;
}

Vector half_mahalanobis_all(const PartialFeatureVector& pfv, const GmModel& model) {
  Vector z(model.num_classes());
  for (std::size_t c = 0; c < z.size(); ++c) z[c] = half_mahalanobis(pfv, model, c);
  return z;
}

std::size_t classify(const PartialFeatureVector& pfv, const GmModel& model) {
  const Vector z = half_mahalanobis_all(pfv, model);
  // min_element returns the first minimum, which is the lowest index on ties.
  return static_cast<std::size_t>(std::min_element(z.begin(), z.end()) - z.begin());
}

Vector posteriors_from_distances(std::span<const double> z) {
  const double zmin = *std::min_element(z.begin(), z.end());
  Vector p(z.size());
  double total = 0.0;
  for (std::size_t c = 0; c < z.size(); ++c) {
    p[c] = std::exp(-(z[c] - zmin));
    total += p[c];
  }
  for (auto& v : p) v /= total;
  return p;
}

Vector posteriors(const PartialFeatureVector& pfv, const GmModel& model) {
  const Vector z = half_mahalanobis_all(pfv, model);
  return posteriors_from_distances(z);
}

double entropy_from_distances(std::span<const double> z) {
  const double zmin = *std::min_element(z.begin(), z.end());
  double total = 0.0;
  for (double v : z) total += std::exp(-(v - zmin));
  const double log_total = std::log(total);
  // -sum p log p with log p_c = -(z_c - zmin) - log_total.
  double h = 0.0;
  for (double v : z) {
    const double log_p = -(v - zmin) - log_total;
    h -= std::exp(log_p) * log_p;
  }
  return h;
}

double entropy(const PartialFeatureVector& pfv, const GmModel& model) {
  const Vector z = half_mahalanobis_all(pfv, model);
  return entropy_from_distances(z);
}

double differential_distance(const PartialFeatureVector& pfv, const GmModel& model,
                             std::size_t a, std::size_t b) {
  if (a == b) throw std::invalid_argument("differential_distance: class pair must be distinct");
  return half_mahalanobis(pfv, model, a) - half_mahalanobis(pfv, model, b);
}

double binary_entropy(double delta) {
  const double a = std::fabs(delta);
  const double e = std::exp(-a);
  // a / (e^a + 1) == a e^-a / (1 + e^-a), which stays finite for large a.
  return std::log1p(e) + a * e / (1.0 + e);
}

}  // namespace pftx
