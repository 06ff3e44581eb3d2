#pragma once

#include "udw/core.hpp"
#include "udw/quadrature.hpp"

/// Causal functionals C_n(t, t') for Gaussian-smeared detectors with centres
/// a distance L apart, and the estimators built from them.
namespace udw::smearing {

struct SmearedKernel {
  Dimension dim;
  double L;
  double sigma;
};

struct EstimatorValue {
  double value = 0.0;
  double est_abs_error = 0.0;
};

/// 1+1: (1/4)[erf((t - t' + L)/(sqrt2 sigma)) - erf((t' - t + L)/(sqrt2 sigma))].
double c1(const SmearedKernel& kernel, double t, double t2);

/// 2+1 functional, evaluated by quadrature after y = (t' - t) sin(theta).
/// Requires t2 > t. The error estimate is absolute and also at most 1e-11 relative.
quad::QuadratureResult<double> c2(const SmearedKernel& kernel, double t, double t2, double tol);

/// 3+1: -1/(2 sqrt(2 pi^3) sigma L) [exp(-(L - s)^2/2sigma^2) - exp(-(L + s)^2/2sigma^2)], s = t' - t.
/// Requires L > 0 and t2 >= t.
double c3(const SmearedKernel& kernel, double t, double t2);

/// |C_n(0, gap)| for delta switching.
EstimatorValue estimator_gaussian(Dimension dim, double gap, double L, double sigma, double tol);

/// Closed form of the 3+1 top-hat estimator for two windows of duration T separated by `gap`.
double estimator_tophat_3d(double gap, double L, double sigma, double T);

/// sigma -> 0 limit of estimator_tophat_3d.
double tophat_pointlike_limit(double gap, double L, double T);

/// 1/(2 pi (1 + gap/T)), the maximum of tophat_pointlike_limit, reached at L = gap + T.
double tophat_peak(double gap, double T);

}  // namespace udw::smearing
