#pragma once

#include <utility>
#include <vector>

#include "udw/core.hpp"
#include "udw/smearing.hpp"

/// Acausal signalling of pointlike, top-hat-switched detectors under the
/// rotating-wave approximation. Both windows last T; B switches on `gap` after A switches off.
namespace udw::rwa {

using smearing::EstimatorValue;

struct RwaScenario {
  double gap = 1.0;
  double T = 1.0;
  double L = 1.0;
  double omega = 0.0;
};

/// Length of the overlap of the two windows at time offset s = t' - t:
/// T - |s - (T + gap)| on [gap, 2T + gap], zero outside.
double overlap_weight(double s, double gap, double T);

/// exp(i omega s)/(L^2 - s^2). Throws InvalidInput at s = +-L.
complex rwa_kernel(double s, double L, double omega);

/// |integral over s in [gap, 2T + gap] of overlap_weight(s) rwa_kernel(s)|, taken as a
/// principal value when L lies inside the interval.
EstimatorValue estimator_rwa(const RwaScenario& sc, double tol);

/// estimator_rwa at each omega of an ascending grid.
std::vector<std::pair<double, EstimatorValue>> rwa_omega_sweep(const RwaScenario& sc,
                                                               const std::vector<double>& omegas,
                                                               double tol);

}  // namespace udw::rwa
