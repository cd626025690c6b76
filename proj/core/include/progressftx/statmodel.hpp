#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "progressftx/random.hpp"

namespace pftx {

using Vector = std::vector<double>;

/// Gaussian mixture over an N-dimensional feature space with L equiprobable
/// classes sharing one diagonal covariance.
///
/// Immutable after construction; the constructor rejects non-positive
/// variances, ragged centroids and fewer than two classes.
class GmModel {
 public:
  GmModel(std::vector<Vector> centroids, Vector variances);

  std::size_t num_classes() const { return centroids_.size(); }
  std::size_t dim() const { return variances_.size(); }

  const Vector& centroid(std::size_t cls) const { return centroids_.at(cls); }
  const std::vector<Vector>& centroids() const { return centroids_; }
  double variance(std::size_t n) const { return variances_[n]; }
  const Vector& variances() const { return variances_; }

  bool operator==(const GmModel&) const = default;

 private:
  std::vector<Vector> centroids_;
  Vector variances_;
};

struct Sample {
  Vector features;
  std::size_t label = 0;
};

/// Draws one sample. The label is uniform over classes unless forced.
Sample sample(const GmModel& model, Rng& rng,
              std::optional<std::size_t> forced_label = std::nullopt);

/// Builds a model whose per-dimension average discriminant gain equals
/// `gain_profile`. For two classes the construction is deterministic
/// (unit variances, centroids at -/+ sqrt(g)/2); for more classes the
/// per-dimension centroid layout is random and rescaled to hit the profile.
GmModel synth_model(std::size_t num_classes, std::size_t dim,
                    std::span<const double> gain_profile, Rng& rng);

/// g(n) = first * ratio^n for n = 0..dim-1.
Vector geometric_profile(std::size_t dim, double first, double ratio);

/// Default experiment profile, 1.25 * 0.95^n.
Vector default_profile(std::size_t dim);

// Text format:
//   # comment
//   L <classes>
//   N <dim>
//   centroids <L*N values, row-major by class>
//   variances <N values>
// Values are whitespace separated and may span lines.
void write_model(std::ostream& out, const GmModel& model);
GmModel read_model(std::istream& in);
GmModel load_model(const std::string& path);
void save_model(const std::string& path, const GmModel& model);

}  // namespace pftx
