#include "udw/rwa.hpp"

#include <algorithm>
#include <cmath>

#include "udw/quadrature.hpp"

namespace udw::rwa {
namespace {

constexpr double kPoleClearance = 1e-10;

void check(const RwaScenario& sc) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(sc.gap)) throw InvalidInput("time_gap must be positive");
  if (!positive(sc.T)) throw InvalidInput("duration must be positive");
  if (!positive(sc.L)) throw InvalidInput("separation must be positive");
  if (!std::isfinite(sc.omega)) throw InvalidInput("omega must be finite");
}

}  // namespace

double overlap_weight(double s, double gap, double T) {
  return std::max(0.0, T - std::abs(s - (T + gap)));
}

complex rwa_kernel(double s, double L, double omega) {
  const double denom = (L - s) * (L + s);
  if (denom == 0.0) throw InvalidInput("rwa kernel is singular at s = +-L");
  return std::exp(complex(0.0, omega * s)) / denom;
}

EstimatorValue estimator_rwa(const RwaScenario& sc, double tol) {
  check(sc);
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  const double a = sc.gap;
  const double b = 2.0 * sc.T + sc.gap;
  const double L = sc.L;
  if (std::abs(L - a) <= kPoleClearance || std::abs(L - b) <= kPoleClearance) {
    throw InvalidInput("separation sits on the edge of the light-contact band");
  }
  const std::vector<double> kink{sc.T + sc.gap};
  auto smooth = [&](double s) {
    return overlap_weight(s, sc.gap, sc.T) * std::exp(complex(0.0, sc.omega * s));
  };

  if (L < a || L > b) {
    const auto r = quad::integrate(
        [&](double s) { return smooth(s) / ((L - s) * (L + s)); }, a, b, tol, kink);
    return {std::abs(r.value), r.est_abs_error};
  }

  // 1/(L^2 - s^2) = (1/2L)[1/(L - s) + 1/(L + s)]; only the first term has a pole in [a, b].
  const double part_tol = tol * L;
  const auto singular = quad::integrate_pv([&](double s) { return -smooth(s); }, quad::PoleSpec{L},
                                           a, b, part_tol, kink);
  const auto regular =
      quad::integrate([&](double s) { return smooth(s) / (L + s); }, a, b, part_tol, kink);
  const complex value = (singular.value + regular.value) / (2.0 * L);
  return {std::abs(value), (singular.est_abs_error + regular.est_abs_error) / (2.0 * L)};
}

std::vector<std::pair<double, EstimatorValue>> rwa_omega_sweep(const RwaScenario& sc,
                                                               const std::vector<double>& omegas,
                                                               double tol) {
  if (!std::is_sorted(omegas.begin(), omegas.end())) {
    throw InvalidInput("omega grid must be ascending");
  }
  std::vector<std::pair<double, EstimatorValue>> out;
  out.reserve(omegas.size());
  for (double omega : omegas) {
    RwaScenario point = sc;
    point.omega = omega;
    out.emplace_back(omega, estimator_rwa(point, tol));
  }
  return out;
}

}  // namespace udw::rwa
