#include "udw/uvcut.hpp"

#include <algorithm>
#include <cmath>

#include "udw/commutators.hpp"
#include "udw/quadrature.hpp"
#include "udw/specfun.hpp"

namespace udw::uvcut {
namespace {

constexpr int kWindowSamples = 32;

}  // namespace

EstimatorValue estimator_cutoff(Dimension dim, double gap, double L, double cutoff, double tol) {
  if (!std::isfinite(gap) || !(gap > 0.0)) throw InvalidInput("time_gap must be positive");
  if (!std::isfinite(cutoff) || !(cutoff > 0.0)) throw InvalidInput("cutoff must be positive");
  if (!std::isfinite(L) || L < 0.0) throw InvalidInput("separation must be non-negative");
  switch (dim) {
    case Dimension::one: {
      const double d = specfun::sine_integral(cutoff * (L + gap)) -
                       specfun::sine_integral(cutoff * (L - gap));
      return {std::abs(d) / (2.0 * kPi), 0.0};
    }
    case Dimension::two: {
      if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
      const auto q = quad::integrate_oscillatory(
          [L, gap](double y) { return commutators::commutator_2d_cutoff_integrand(y, L, gap); }, 0.0,
          cutoff, L + gap, 2.0 * kPi * tol);
      return {std::abs(q.value) / (2.0 * kPi), q.est_abs_error / (2.0 * kPi)};
    }
    case Dimension::three: {
      if (!(L > 0.0)) throw InvalidInput("3+1 cutoff estimator requires L > 0");
      const double bracket =
          commutators::sin_ratio(cutoff, L - gap) - commutators::sin_ratio(cutoff, L + gap);
      return {std::abs(bracket) / (4.0 * kPi * kPi * L), 0.0};
    }
  }
  throw InvalidInput("unknown dimension");
}

std::vector<std::pair<double, double>> envelope_over_lambda(Dimension dim, double gap, double L,
                                                            const std::vector<double>& grid,
                                                            double tol) {
  if (grid.size() < 8) throw InvalidInput("envelope grid needs at least 8 points");
  if (!std::is_sorted(grid.begin(), grid.end())) throw InvalidInput("envelope grid must be ascending");
  const double width = L != gap ? kPi / std::abs(L - gap) : kPi / (L + gap);
  std::vector<std::pair<double, double>> out;
  out.reserve(grid.size());
  for (double cutoff : grid) {
    double best = 0.0;
    for (int j = 0; j < kWindowSamples; ++j) {
      const double c = cutoff + width * j / (kWindowSamples - 1);
      best = std::max(best, estimator_cutoff(dim, gap, L, c, tol).value);
    }
    out.emplace_back(cutoff, best);
  }
  return out;
}

DecayFit fit_decay(const std::vector<std::pair<double, double>>& samples) {
  if (samples.size() < 4) throw InvalidInput("decay fit needs at least 4 samples");
  const double n = static_cast<double>(samples.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [c, e] : samples) {
    if (!(c > 0.0) || !(e > 0.0)) throw InvalidInput("decay fit needs positive samples");
    mx += std::log(c);
    my += std::log(e);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [c, e] : samples) {
    const double dx = std::log(c) - mx;
    const double dy = std::log(e) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw InvalidInput("decay fit needs distinct cutoffs");
  const double slope = sxy / sxx;
  double r2 = 1.0;
  if (syy > 0.0) {
    const double ss_res = std::max(0.0, syy - slope * sxy);
    r2 = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return {-slope, r2, samples};
}

}  // namespace udw::uvcut
