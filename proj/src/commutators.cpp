#include "udw/commutators.hpp"

#include <cmath>
#include <string>

#include "udw/specfun.hpp"

namespace udw::commutators {
namespace {

constexpr double kLightconeTolerance = 1e-12;

double spatial_distance(const Event& e, const Event& e2, int dims) {
  if (static_cast<int>(e.x.size()) != dims || static_cast<int>(e2.x.size()) != dims) {
    throw InvalidInput("events must have " + std::to_string(dims) + " spatial components");
  }
  if (!std::isfinite(e.t) || !std::isfinite(e2.t)) throw InvalidInput("event times must be finite");
  double s = 0.0;
  for (int i = 0; i < dims; ++i) {
    if (!std::isfinite(e.x[i]) || !std::isfinite(e2.x[i])) {
      throw InvalidInput("event positions must be finite");
    }
    const double d = e.x[i] - e2.x[i];
    s += d * d;
  }
  return std::sqrt(s);
}

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

void require_cutoff(double cutoff) {
  if (!(cutoff > 0.0) || !std::isfinite(cutoff)) throw InvalidInput("cutoff must be positive");
}

}  // namespace

double sin_ratio(double cutoff, double u) {
  const double z = cutoff * u;
  if (std::abs(z) < 1e-4) {
    const double z2 = z * z;
    return cutoff * (1.0 - z2 / 6.0 + z2 * z2 / 120.0);
  }
  return std::sin(z) / u;
}

CommutatorValue commutator_1d(const Event& e, const Event& e2) {
  const double dx = spatial_distance(e, e2, 1);
  const double dt = std::abs(e.t - e2.t);
  const double step = dt > dx ? 1.0 : (dt == dx ? 0.5 : 0.0);
  return {complex(0.0, 0.5 * sgn(e2.t - e.t) * step)};
}

CommutatorValue commutator_2d(const Event& e, const Event& e2) {
  const double r = spatial_distance(e, e2, 2);
  const double dt = e2.t - e.t;
  const double interval = (dt - r) * (dt + r);
  if (std::abs(interval) <= kLightconeTolerance) {
    throw InvalidInput("2+1 commutator is singular on the lightcone");
  }
  if (interval < 0.0) return {complex(0.0, 0.0)};
  return {complex(0.0, sgn(dt) / (2.0 * kPi * std::sqrt(interval)))};
}

DeltaPulsePair commutator_3d(const Event& e, const Event& e2) {
  const double r = spatial_distance(e, e2, 3);
  if (!(r > 0.0)) throw InvalidInput("3+1 commutator requires distinct spatial points");
  return {r, 1.0 / (4.0 * kPi * r)};
}

CommutatorValue commutator_1d_cutoff(const Event& e, const Event& e2, double cutoff) {
  require_cutoff(cutoff);
  spatial_distance(e, e2, 1);
  const double dt = e.t - e2.t;
  const double dx = e.x[0] - e2.x[0];
  const double sum =
      specfun::sine_integral(cutoff * (dt + dx)) + specfun::sine_integral(cutoff * (dt - dx));
  return {complex(0.0, -sum / (2.0 * kPi))};
}

double commutator_2d_cutoff_integrand(double k, double r, double tau) {
  return specfun::bessel_j0(k * r) * std::sin(k * tau);
}

quad::QuadratureResult<complex> commutator_2d_cutoff(const Event& e, const Event& e2, double cutoff,
                                                     double tol) {
  require_cutoff(cutoff);
  const double r = spatial_distance(e, e2, 2);
  const double tau = e2.t - e.t;
  if (tau == 0.0) return {complex(0.0, 0.0), 0.0, 1};
  const double scale = r + std::abs(tau);
  const double prefactor = 1.0 / (2.0 * kPi);
  const auto q = quad::integrate_oscillatory(
      [r, tau](double k) { return commutator_2d_cutoff_integrand(k, r, tau); }, 0.0, cutoff, scale,
      tol / prefactor);
  return {complex(0.0, prefactor * q.value), prefactor * q.est_abs_error, q.panels_used};
}

CommutatorValue commutator_3d_cutoff(const Event& e, const Event& e2, double cutoff) {
  require_cutoff(cutoff);
  const double r = spatial_distance(e, e2, 3);
  if (!(r > 0.0)) throw InvalidInput("3+1 commutator requires distinct spatial points");
  const double tau = e.t - e2.t;
  const double bracket = sin_ratio(cutoff, tau + r) - sin_ratio(cutoff, r - tau);
  return {complex(0.0, bracket / (4.0 * kPi * kPi * r))};
}

}  // namespace udw::commutators
