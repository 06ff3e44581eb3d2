#include "udw/smearing.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "udw/specfun.hpp"

namespace udw::smearing {
namespace {

constexpr double kSqrt2 = 1.41421356237309504880168872420969808;
constexpr double kRelativeTolerance = 1e-11;

void check_kernel(const SmearedKernel& k, Dimension expected) {
  if (k.dim != expected) throw InvalidInput("kernel dimension does not match the functional");
  if (!std::isfinite(k.sigma) || !(k.sigma > 0.0)) throw InvalidInput("smearing must be positive");
  if (!std::isfinite(k.L) || k.L < 0.0) throw InvalidInput("separation must be non-negative");
}

void check_positive(double v, const char* message) {
  if (!std::isfinite(v) || !(v > 0.0)) throw InvalidInput(message);
}

// 1/(2 sqrt(2 pi^3))
const double kC3Prefactor = 1.0 / (2.0 * std::sqrt(2.0 * kPi * kPi * kPi));

}  // namespace

double c1(const SmearedKernel& kernel, double t, double t2) {
  check_kernel(kernel, Dimension::one);
  const double scale = kSqrt2 * kernel.sigma;
  return 0.25 * specfun::erf_difference((t - t2 + kernel.L) / scale, (t2 - t + kernel.L) / scale);
}

quad::QuadratureResult<double> c2(const SmearedKernel& kernel, double t, double t2, double tol) {
  check_kernel(kernel, Dimension::two);
  const double s = t2 - t;
  if (!(s > 0.0)) throw InvalidInput("c2 requires t' > t");
  check_positive(tol, "tolerance must be positive");
  const double L = kernel.L;
  const double sigma2 = kernel.sigma * kernel.sigma;

  // The Gaussian factor peaks at y* = min(L, s); scale it out so that the
  // remaining integrand is O(1) and relative accuracy survives tiny results.
  const double y_peak = std::min(L, s);
  const double scale = std::exp(-(L - y_peak) * (L - y_peak) / (2.0 * sigma2));
  const double prefactor = s / (kPi * sigma2);
  if (scale == 0.0) return {-0.0, 0.0, 1};

  auto integrand = [&](double theta) {
    const double y = s * std::sin(theta);
    const double exponent = ((L - y) * (L - y) - (L - y_peak) * (L - y_peak)) / (2.0 * sigma2);
    return std::sin(theta) * std::exp(-exponent) * specfun::bessel_i0_scaled(L * y / sigma2);
  };

  const double half_pi = 0.5 * kPi;
  std::vector<double> cuts;
  if (L < s) {
    const double theta_peak = std::asin(L / s);
    cuts.push_back(theta_peak);
    // Bracket the peak at a few Gaussian widths, mapped back to theta.
    for (double k : {-8.0, -2.0, 2.0, 8.0}) {
      const double y = std::clamp(L + k * kernel.sigma, 0.0, s);
      cuts.push_back(std::asin(std::min(1.0, y / s)));
    }
  } else {
    for (double k : {2.0, 8.0, 32.0}) {
      const double y = s - k * kernel.sigma;
      if (y > 0.0) cuts.push_back(std::asin(y / s));
    }
  }

  const auto coarse = quad::integrate(integrand, 0.0, half_pi, 1e-4, cuts);
  const double inner_tol =
      std::max(std::min(tol / (prefactor * scale), kRelativeTolerance * std::abs(coarse.value)),
               1e-300);
  const auto fine = quad::integrate(integrand, 0.0, half_pi, inner_tol, cuts);
  return {-prefactor * scale * fine.value, prefactor * scale * fine.est_abs_error, fine.panels_used};
}

double c3(const SmearedKernel& kernel, double t, double t2) {
  check_kernel(kernel, Dimension::three);
  if (!(kernel.L > 0.0)) throw InvalidInput("c3 requires L > 0");
  const double s = t2 - t;
  if (s < 0.0) throw InvalidInput("c3 requires t' >= t");
  const double L = kernel.L;
  const double sigma2 = kernel.sigma * kernel.sigma;
  // e^{-(L-s)^2/2s^2} - e^{-(L+s)^2/2s^2} = -e^{-(L-s)^2/2s^2} expm1(-2Ls/s^2)
  const double bracket =
      -std::exp(-(L - s) * (L - s) / (2.0 * sigma2)) * std::expm1(-2.0 * L * s / sigma2);
  return -kC3Prefactor / (kernel.sigma * L) * bracket;
}

EstimatorValue estimator_gaussian(Dimension dim, double gap, double L, double sigma, double tol) {
  check_positive(gap, "time_gap must be positive");
  check_positive(sigma, "smearing must be positive");
  const SmearedKernel kernel{dim, L, sigma};
  switch (dim) {
    case Dimension::one:
      return {std::abs(c1(kernel, 0.0, gap)), 0.0};
    case Dimension::two: {
      const auto r = c2(kernel, 0.0, gap, tol);
      return {std::abs(r.value), r.est_abs_error};
    }
    case Dimension::three:
      return {std::abs(c3(kernel, 0.0, gap)), 0.0};
  }
  throw InvalidInput("unknown dimension");
}

double estimator_tophat_3d(double gap, double L, double sigma, double T) {
  check_positive(T, "duration must be positive");
  check_positive(sigma, "smearing must be positive");
  check_positive(L, "separation must be positive");
  check_positive(gap, "time_gap must be positive");
  const double D = gap;
  const double scale = kSqrt2 * sigma;
  auto erf_term = [scale](double a) { return specfun::erf(a / scale); };
  auto gauss = [sigma](double a) { return std::exp(-a * a / (2.0 * sigma * sigma)); };

  const double erfs = (L - D) * erf_term(L - D) - (D + L) * erf_term(D + L) +
                      2.0 * (D - L + T) * erf_term(L - D - T) +
                      (L - D - 2.0 * T) * erf_term(L - D - 2.0 * T) +
                      2.0 * (D + L + T) * erf_term(D + L + T) -
                      (D + L + 2.0 * T) * erf_term(D + L + 2.0 * T);
  const double gaussians = gauss(L - D) - gauss(D + L) - gauss(D - L + T) + gauss(D + L + T) -
                           gauss(D - L + T) + gauss(D - L + 2.0 * T) + gauss(D + L + T) -
                           gauss(D + L + 2.0 * T);
  const double value = (erfs + std::sqrt(2.0 / kPi) * sigma * gaussians) / (4.0 * kPi * L);
  return std::abs(value);
}

double tophat_pointlike_limit(double gap, double L, double T) {
  check_positive(T, "duration must be positive");
  check_positive(L, "separation must be positive");
  const double D = gap;
  return std::abs(std::abs(L - D) + std::abs(L - 2.0 * T - D) - 2.0 * std::abs(L - T - D)) / (4.0 * kPi * L);
}

double tophat_peak(double gap, double T) {
  check_positive(T, "duration must be positive");
  check_positive(gap, "time_gap must be positive");
  return 1.0 / (2.0 * kPi * (1.0 + gap / T));
}

}  // namespace udw::smearing
