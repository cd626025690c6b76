#include "progressftx/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace pftx {

double h_ub(double delta) {
  const double a = std::fabs(delta);
  return (1.0 + a) * std::exp(-a);
}

namespace {

constexpr double kInvSqrt2Pi = 0.3989422804014327;

double normal_pdf(double x, double mean, double sd) {
  const double u = (x - mean) / sd;
  return kInvSqrt2Pi / sd * std::exp(-0.5 * u * u);
}

double normal_cdf(double x, double mean, double sd) {
  return 0.5 * std::erfc(-(x - mean) / (sd * std::numbers::sqrt2));
}

// Adaptive Simpson on [a, b]. The evaluation budget turns a tolerance that is
// below double resolution into a QuadratureError instead of a runaway recursion.
class Simpson {
 public:
  template <class F>
  double integrate(F&& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    evals_ += 3;
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return refine(f, a, b, fa, fm, fb, whole, tol, 0);
  }

 private:
  static constexpr int kMaxDepth = 48;
  static constexpr long kMaxEvals = 4'000'000;

  template <class F>
  double refine(F& f, double a, double b, double fa, double fm, double fb, double whole,
                double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    evals_ += 2;
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double diff = left + right - whole;
    if (std::fabs(diff) <= 15.0 * tol) return left + right + diff / 15.0;
    if (depth >= kMaxDepth || evals_ > kMaxEvals) {
      throw QuadratureError("expected_h_ub: tolerance not met at maximum refinement");
    }
    return refine(f, a, m, fa, flm, fm, left, tol / 2.0, depth + 1) +
           refine(f, m, b, fm, frm, fb, right, tol / 2.0, depth + 1);
  }

  long evals_ = 0;
};

}  // namespace

double DeltaMixture::pdf(double delta) const {
  if (degenerate()) return delta == base ? INFINITY : 0.0;
  const double sd = std::sqrt(gain);
  return 0.5 * (normal_pdf(delta, mean(+1), sd) + normal_pdf(delta, mean(-1), sd));
}

double DeltaMixture::cdf(double delta) const {
  if (degenerate()) return delta >= base ? 1.0 : 0.0;
  const double sd = std::sqrt(gain);
  return 0.5 * (normal_cdf(delta, mean(+1), sd) + normal_cdf(delta, mean(-1), sd));
}

double DeltaMixture::draw(Rng& rng) const {
  if (degenerate()) return base;
  std::bernoulli_distribution coin(0.5);
  std::normal_distribution<double> component(mean(coin(rng) ? +1 : -1), std::sqrt(gain));
  return component(rng);
}

DeltaMixture delta_mixture(double delta1, double gain) {
  if (!(gain >= 0.0) || !std::isfinite(gain)) {
    throw std::invalid_argument("delta_mixture: gain must be finite and >= 0");
  }
  if (!std::isfinite(delta1)) throw std::invalid_argument("delta_mixture: delta1 must be finite");
  return DeltaMixture{delta1, gain};
}

double expected_h_ub(double delta1, double gain, double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("expected_h_ub: tol must be > 0");
  const DeltaMixture mix = delta_mixture(delta1, gain);
  if (mix.degenerate()) return h_ub(delta1);

  const double sd = std::sqrt(gain);
  const double lo = delta1 - gain / 2.0 - 10.0 * sd;
  const double hi = delta1 + gain / 2.0 + 10.0 * sd;
  const double mu_hi = mix.mean(+1), mu_lo = mix.mean(-1);
  const double norm = kInvSqrt2Pi / sd;
  const double inv_sd = 1.0 / sd;
  auto integrand = [&](double d) {
    const double a = std::fabs(d);
    const double u1 = (d - mu_hi) * inv_sd, u2 = (d - mu_lo) * inv_sd;
    return 0.5 * norm * (1.0 + a) * (std::exp(-a - 0.5 * u1 * u1) + std::exp(-a - 0.5 * u2 * u2));
  };

  // h_ub has a third-derivative jump at 0; split there so refinement stays local.
  Simpson simpson;
  if (lo < 0.0 && hi > 0.0) {
    const double width = hi - lo;
    return simpson.integrate(integrand, lo, 0.0, tol * (-lo) / width) +
           simpson.integrate(integrand, 0.0, hi, tol * hi / width);
  }
  return simpson.integrate(integrand, lo, hi, tol);
}

ExpBoundParams calibrate_exp_bound(double delta1, std::span<const double> grid, double tol) {
  if (grid.empty()) throw std::invalid_argument("calibrate_exp_bound: empty gain grid");
  ExpBoundParams params;
  params.c2 = kDecayRate;
  params.grid.assign(grid.begin(), grid.end());
  double c1 = 0.0;
  for (double g : grid) {
    if (!(g >= 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("calibrate_exp_bound: grid gains must be finite and >= 0");
    }
    if (g > 1200.0) {
      throw std::domain_error("calibrate_exp_bound: gain too large for double precision");
    }
    const double scale = std::exp(kDecayRate * g);
    c1 = std::max(c1, expected_h_ub(delta1, g, tol / scale) * scale);
  }
  params.c1 = c1;
  return params;
}

double tilde_h(const ExpBoundParams& params, double gain) {
  return params.c1 * std::exp(-params.c2 * gain);
}

double multiclass_entropy_ub(const PartialFeatureVector& pfv, const GmModel& model) {
  const Vector z = half_mahalanobis_all(pfv, model);
  double total = 0.0;
  for (std::size_t a = 0; a < z.size(); ++a)
    for (std::size_t b = a + 1; b < z.size(); ++b) total += binary_entropy(z[a] - z[b]);
  return total;
}

}  // namespace pftx
