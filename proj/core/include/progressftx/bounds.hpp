#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>

#include "progressftx/linclass.hpp"
#include "progressftx/random.hpp"

namespace pftx {

/// Thrown when adaptive quadrature cannot reach the requested tolerance.
class QuadratureError : public std::runtime_error {
 public:
  explicit QuadratureError(const std::string& what) : std::runtime_error(what) {}
};

/// Pointwise upper bound on the binary entropy: (1 + |d|) e^{-|d|}.
double h_ub(double delta);

/// Predictive law of the differential distance after features of total gain G
/// arrive, given the current value delta1: an equal-weight mixture of
/// N(delta1 + G/2, G) and N(delta1 - G/2, G). G = 0 is a point mass.
struct DeltaMixture {
  double base = 0.0;
  double gain = 0.0;

  double mean(int sign) const { return base + sign * gain / 2.0; }
  double variance() const { return gain; }
  bool degenerate() const { return gain == 0.0; }

  double pdf(double delta) const;
  double cdf(double delta) const;
  double draw(Rng& rng) const;
};

DeltaMixture delta_mixture(double delta1, double gain);

/// E[h_ub(delta)] under delta_mixture(delta1, gain), by adaptive Simpson
/// quadrature over [delta1 - G/2 - 10 sqrt(G), delta1 + G/2 + 10 sqrt(G)]
/// with absolute error <= tol. gain == 0 returns h_ub(delta1).
double expected_h_ub(double delta1, double gain, double tol = 1e-9);

/// Constants of the exponential envelope c1 * exp(-c2 * G).
struct ExpBoundParams {
  double c1 = 1.0;
  double c2 = 0.125;
  Vector grid;
};

inline constexpr double kDecayRate = 0.125;
inline constexpr double kDefaultQuadTol = 1e-9;

/// c2 = 1/8 and c1 = max_{G in grid} expected_h_ub(delta1, G) * e^{G/8}, so the
/// envelope dominates expected_h_ub at every grid point. Each grid point is
/// integrated with tolerance tol * e^{-G/8}, which bounds the error of c1 by tol.
ExpBoundParams calibrate_exp_bound(double delta1, std::span<const double> grid,
                                   double tol = kDefaultQuadTol);

/// c1 * exp(-c2 * G).
double tilde_h(const ExpBoundParams& params, double gain);

/// Sum over class pairs of binary_entropy(z_a - z_b); an upper bound on the
/// multi-class posterior entropy.
double multiclass_entropy_ub(const PartialFeatureVector& pfv, const GmModel& model);

}  // namespace pftx
