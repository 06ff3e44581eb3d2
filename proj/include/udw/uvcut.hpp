#pragma once

#include <utility>
#include <vector>

#include "udw/core.hpp"
#include "udw/smearing.hpp"

/// Signalling estimators for pointlike, delta-switched detectors when the field
/// modes are truncated at frequency `cutoff`, and the power-law fit of their decay.
namespace udw::uvcut {

using smearing::EstimatorValue;

/// Requires L > 0 in 3+1.
EstimatorValue estimator_cutoff(Dimension dim, double gap, double L, double cutoff, double tol);

/// Oscillation envelope: for each cutoff c in the ascending grid (at least 8 points),
/// the maximum of estimator_cutoff over 32 points spanning [c, c + pi/|L - gap|].
/// When L == gap the window uses pi/(L + gap).
std::vector<std::pair<double, double>> envelope_over_lambda(Dimension dim, double gap, double L,
                                                            const std::vector<double>& grid,
                                                            double tol);

struct DecayFit {
  double alpha = 0.0;
  double r_squared = 1.0;
  std::vector<std::pair<double, double>> samples;
};

/// Least-squares fit of log(envelope) = c - alpha log(cutoff). Needs >= 4 positive samples.
DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples);

}  // namespace udw::uvcut
