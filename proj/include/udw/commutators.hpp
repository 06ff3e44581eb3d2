#pragma once

#include <vector>

#include "udw/core.hpp"
#include "udw/quadrature.hpp"

/// Vacuum-independent commutator [phi(x, t), phi(x', t')] of a free massless
/// scalar in flat spacetime, with and without a hard UV cutoff.
namespace udw::commutators {

struct Event {
  double t = 0.0;
  std::vector<double> x;
};

/// Every value here is i times a real number.
struct CommutatorValue {
  complex value;
};

/// The 3+1 uncut commutator: pulses of weight +i*w at t - t' = -r and -i*w at t - t' = +r.
struct DeltaPulsePair {
  double radius;
  double weight;

  /// Integral of the pair against a test function g(t - t').
  template <class G>
  auto sift(G&& g) const {
    return complex(0.0, weight) * (g(-radius) - g(radius));
  }
};

CommutatorValue commutator_1d(const Event& e, const Event& e2);
/// Throws InvalidInput within 1e-12 of the lightcone.
CommutatorValue commutator_2d(const Event& e, const Event& e2);
/// Throws InvalidInput for coincident spatial points.
DeltaPulsePair commutator_3d(const Event& e, const Event& e2);

/// (-i/2pi) [Si(cutoff (dt + dx)) + Si(cutoff (dt - dx))], dt = t - t', dx = x - x'.
CommutatorValue commutator_1d_cutoff(const Event& e, const Event& e2, double cutoff);

/// J0(k r) sin(k tau)
double commutator_2d_cutoff_integrand(double k, double r, double tau);

/// (i/2pi) times the integral over k in [0, cutoff] of J0(k r) sin(k (t' - t)).
quad::QuadratureResult<complex> commutator_2d_cutoff(const Event& e, const Event& e2, double cutoff,
                                                     double tol);

/// (i/4pi^2 r) [sin(cutoff (tau + r))/(tau + r) - sin(cutoff (r - tau))/(r - tau)], tau = t - t'.
CommutatorValue commutator_3d_cutoff(const Event& e, const Event& e2, double cutoff);

/// sin(cutoff u)/u, continuous at u = 0.
double sin_ratio(double cutoff, double u);

}  // namespace udw::commutators
