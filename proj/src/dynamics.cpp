#include "udw/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "udw/commutators.hpp"
#include "udw/quadrature.hpp"
#include "udw/smearing.hpp"

namespace udw::dynamics {
namespace {

const complex kI(0.0, 1.0);

complex phase(double omega, double t) { return std::exp(complex(0.0, omega * t)); }

void check_scalar(double v, const char* message) {
  if (!std::isfinite(v)) throw InvalidInput(message);
}

// Fill B's matrix from J = integral of 2Re(beta_A e^{i w_A t}) C(t, t') e^{-i w_B t'}.
SignalMatrix assemble(const complex& j, double coupling, const DetectorState& b) {
  const double br = b.beta().real();
  const double bi = b.beta().imag();
  const double diag = coupling * (-2.0 * (bi * j.real() - br * j.imag()));
  const complex off = coupling * (-kI * (1.0 - 2.0 * b.alpha()) * j);
  SignalMatrix s;
  s.entries(0, 0) = diag;
  s.entries(1, 1) = -diag;
  s.entries(0, 1) = off;
  s.entries(1, 0) = std::conj(off);
  return s;
}

}  // namespace

SwitchingSpec SwitchingSpec::tophat(double t_on, double t_off) {
  if (!std::isfinite(t_on) || !std::isfinite(t_off) || !(t_off > t_on)) {
    throw InvalidInput("top-hat switching needs t_off > t_on");
  }
  return {Kind::tophat, t_on, t_off};
}

double monopole_expectation(const DetectorState& state, double omega, double t) {
  return 2.0 * (state.beta() * phase(omega, t)).real();
}

Matrix2 monopole_commutator(const DetectorState& state, double omega, double t) {
  const complex e = phase(omega, t);
  const double im = (state.beta() * e).imag();
  const double k = 1.0 - 2.0 * state.alpha();
  Matrix2 m;
  m(0, 0) = complex(0.0, -2.0 * im);
  m(1, 1) = complex(0.0, 2.0 * im);
  m(0, 1) = std::conj(e) * k;
  m(1, 0) = -e * k;
  return m;
}

SignalMatrix signal_matrix_delta(const ScenarioSpec& sc, const DetectorState& a,
                                 const DetectorState& b, double c_value, double t_a) {
  validate(sc);
  if (!sc.delta_switching()) throw InvalidInput("signal_matrix_delta requires delta switching");
  check_scalar(c_value, "causal functional value must be finite");
  check_scalar(t_a, "t_a must be finite");
  const double t_b = t_a + sc.time_gap;
  const double prefactor =
      sc.coupling_a * sc.coupling_b * monopole_expectation(a, sc.gap_a, t_a) * c_value;
  const complex e = phase(sc.gap_b, t_b);
  const double im = (b.beta() * e).imag();
  const double k = 1.0 - 2.0 * b.alpha();
  SignalMatrix s;
  s.entries(0, 0) = prefactor * (-2.0 * im);
  s.entries(1, 1) = prefactor * (2.0 * im);
  s.entries(0, 1) = prefactor * (-kI * std::conj(e) * k);
  s.entries(1, 0) = std::conj(s.entries(0, 1));
  return s;
}

CausalKernel CausalKernel::from_function(Function c, std::vector<double> kinks) {
  if (!c) throw InvalidInput("causal kernel function is empty");
  CausalKernel k;
  k.kind_ = Kind::function;
  k.f_ = std::move(c);
  k.kinks_ = std::move(kinks);
  return k;
}

CausalKernel CausalKernel::pointlike(Dimension dim, double L) {
  if (!std::isfinite(L) || L < 0.0) throw InvalidInput("separation must be non-negative");
  if (dim == Dimension::three && !(L > 0.0)) {
    throw InvalidInput("pointlike 3+1 kernel requires L > 0");
  }
  CausalKernel k;
  k.kind_ = Kind::pointlike;
  k.dim_ = dim;
  k.L_ = L;
  k.kinks_ = {L};
  return k;
}

CausalKernel CausalKernel::gaussian(Dimension dim, double L, double sigma, double tol) {
  const smearing::SmearedKernel kernel{dim, L, sigma};
  Function f;
  switch (dim) {
    case Dimension::one:
      f = [kernel](double t, double t2) { return smearing::c1(kernel, t, t2); };
      break;
    case Dimension::two:
      f = [kernel, tol](double t, double t2) { return smearing::c2(kernel, t, t2, tol).value; };
      break;
    case Dimension::three:
      f = [kernel](double t, double t2) { return smearing::c3(kernel, t, t2); };
      break;
  }
  // Validate once up front so bad parameters fail before any integration.
  f(0.0, 1.0);
  std::vector<double> kinks;
  for (double k : {-8.0, -2.0, 0.0, 2.0, 8.0}) {
    if (L + k * sigma > 0.0) kinks.push_back(L + k * sigma);
  }
  CausalKernel out = from_function(std::move(f), std::move(kinks));
  out.dim_ = dim;
  out.L_ = L;
  return out;
}

double CausalKernel::operator()(double t, double t2) const {
  if (kind_ == Kind::function) return f_(t, t2);
  using commutators::Event;
  switch (dim_) {
    case Dimension::one:
      return (kI * commutators::commutator_1d(Event{t, {0.0}}, Event{t2, {L_}}).value).real();
    case Dimension::two:
      return (kI * commutators::commutator_2d(Event{t, {0.0, 0.0}}, Event{t2, {L_, 0.0}}).value).real();
    case Dimension::three:
      break;
  }
  throw InvalidInput("the pointlike 3+1 kernel is a distribution and has no pointwise value");
}

SignalMatrix signal_matrix_general(const ScenarioSpec& sc, const DetectorState& a,
                                   const DetectorState& b, const CausalKernel& c, double tol,
                                   const SwitchingSpec& switch_a, const SwitchingSpec& switch_b) {
  validate(sc);
  if (!(tol > 0.0)) throw InvalidInput("tolerance must be positive");
  if (switch_a.kind != SwitchingSpec::Kind::tophat || switch_b.kind != SwitchingSpec::Kind::tophat) {
    throw InvalidInput("signal_matrix_general requires top-hat switching for both detectors");
  }
  if (!(switch_a.t_off > switch_a.t_on) || !(switch_b.t_off > switch_b.t_on)) {
    throw InvalidInput("top-hat switching needs t_off > t_on");
  }
  if (switch_b.t_on < switch_a.t_off) {
    throw InvalidInput("switchings overlap: B must switch on after A switches off");
  }

  const double coupling = sc.coupling_a * sc.coupling_b;
  const double tol_j = tol / std::max(1.5 * std::abs(coupling), 1.0);
  const double a_on = switch_a.t_on, a_off = switch_a.t_off;
  const double b_on = switch_b.t_on, b_off = switch_b.t_off;
  const double tol_outer = 0.5 * tol_j;
  const double tol_inner = 0.5 * tol_j / (a_off - a_on);
  const double omega_b = sc.gap_b;
  auto z = [omega_b](double t2) { return phase(-omega_b, t2); };

  auto inner = [&](double t) -> complex {
    if (c.kind() == CausalKernel::Kind::function) {
      std::vector<double> cuts;
      for (double s : c.kinks()) cuts.push_back(t + s);
      return quad::integrate([&](double t2) { return c(t, t2) * z(t2); }, b_on, b_off, tol_inner, cuts)
          .value;
    }
    const double L = c.separation();
    switch (c.dim()) {
      case Dimension::one: {
        const double lo = std::max(b_on, t + L);
        if (!(lo < b_off)) return complex(0.0, 0.0);
        return quad::integrate([&](double t2) { return -0.5 * z(t2); }, lo, b_off, tol_inner).value;
      }
      case Dimension::two: {
        if (!(t + L < b_off)) return complex(0.0, 0.0);
        if (L == 0.0) {
          return quad::integrate([&](double t2) { return -z(t2) / (2.0 * kPi * (t2 - t)); }, b_on, b_off,
                                 tol_inner)
              .value;
        }
        // t' = t + L + u^2 removes the inverse square root at the lightcone.
        const double u_lo = std::sqrt(std::max(b_on - t - L, 0.0));
        const double u_hi = std::sqrt(b_off - t - L);
        return quad::integrate(
                   [&](double u) { return -z(t + L + u * u) / (kPi * std::sqrt(2.0 * L + u * u)); },
                   u_lo, u_hi, tol_inner)
            .value;
      }
      case Dimension::three: {
        using commutators::Event;
        const auto pulses = commutators::commutator_3d(Event{t, {0.0, 0.0, 0.0}}, Event{t, {L, 0.0, 0.0}});
        auto g = [&](double tau) {
          const double t2 = t - tau;
          return (t2 >= b_on && t2 <= b_off) ? z(t2) : complex(0.0, 0.0);
        };
        return kI * pulses.sift(g);
      }
    }
    return complex(0.0, 0.0);
  };

  std::vector<double> cuts;
  for (double s : c.kinks()) {
    cuts.push_back(b_on - s);
    cuts.push_back(b_off - s);
  }
  const double omega_a = sc.gap_a;
  const auto j = quad::integrate(
      [&](double t) { return monopole_expectation(a, omega_a, t) * inner(t); }, a_on, a_off, tol_outer,
      cuts);
  return assemble(j.value, coupling, b);
}

SignalMatrix signal_matrix_general(const ScenarioSpec& sc, const DetectorState& a,
                                   const DetectorState& b, const CausalKernel& c, double tol,
                                   double t_a) {
  validate(sc);
  if (sc.delta_switching()) {
    throw InvalidInput("signal_matrix_general requires top-hat switching (duration > 0)");
  }
  const double T = sc.duration;
  return signal_matrix_general(sc, a, b, c, tol, SwitchingSpec::tophat(t_a, t_a + T),
                               SwitchingSpec::tophat(t_a + T + sc.time_gap, t_a + 2.0 * T + sc.time_gap));
}

}  // namespace udw::dynamics
