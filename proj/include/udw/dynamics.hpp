#pragma once

#include <functional>
#include <vector>

#include "udw/core.hpp"

/// Leading-order signal imprinted by detector A on detector B's density matrix.
///
/// Only the commutator functional C(t, t') enters; no field state is ever taken.
namespace udw::dynamics {

/// Time profile chi(t) of one detector's coupling.
struct SwitchingSpec {
  enum class Kind { delta, tophat };
  Kind kind = Kind::delta;
  double t_on = 0.0;
  double t_off = 0.0;

  static SwitchingSpec delta(double t0) { return {Kind::delta, t0, t0}; }
  static SwitchingSpec tophat(double t_on, double t_off);
};

/// 2 Re(beta e^{i omega t})
double monopole_expectation(const DetectorState& state, double omega, double t);

/// [[-2i Im(beta e^{iwt}), e^{-iwt}(1 - 2 alpha)], [-e^{iwt}(1 - 2 alpha), 2i Im(beta e^{iwt})]]
Matrix2 monopole_commutator(const DetectorState& state, double omega, double t);

/// Delta switching: A kicks at t_a, B at t_a + time_gap; c_value = C(t_a, t_b).
SignalMatrix signal_matrix_delta(const ScenarioSpec& sc, const DetectorState& a,
                                 const DetectorState& b, double c_value, double t_a = 0.0);

/// C(t, t') as consumed by signal_matrix_general. Pointlike 3+1 is a pulse and is
/// sifted analytically; all other kinds are integrated pointwise.
class CausalKernel {
 public:
  using Function = std::function<double(double, double)>;

  /// `kinks` lists offsets s = t' - t where C is not smooth.
  static CausalKernel from_function(Function c, std::vector<double> kinks = {});
  /// Pointlike detectors a distance L apart, C = i [phi(x_A, t), phi(x_B, t')].
  static CausalKernel pointlike(Dimension dim, double L);
  /// Gaussian-smeared functional c1, c2 or c3; `tol` bounds each c2 evaluation.
  static CausalKernel gaussian(Dimension dim, double L, double sigma, double tol = 1e-12);

  double operator()(double t, double t2) const;

  enum class Kind { function, pointlike };
  Kind kind() const { return kind_; }
  Dimension dim() const { return dim_; }
  double separation() const { return L_; }
  const std::vector<double>& kinks() const { return kinks_; }

 private:
  Kind kind_ = Kind::function;
  Dimension dim_ = Dimension::three;
  double L_ = 0.0;
  Function f_;
  std::vector<double> kinks_;
};

/// Double time integral over two top-hat windows, each entry to within `tol`.
/// Windows must not overlap and B must come after A; touching windows are allowed.
SignalMatrix signal_matrix_general(const ScenarioSpec& sc, const DetectorState& a,
                                   const DetectorState& b, const CausalKernel& c, double tol,
                                   const SwitchingSpec& switch_a, const SwitchingSpec& switch_b);

/// Windows from the scenario: A on [t_a, t_a + T], B on [t_a + T + time_gap, t_a + 2T + time_gap].
SignalMatrix signal_matrix_general(const ScenarioSpec& sc, const DetectorState& a,
                                   const DetectorState& b, const CausalKernel& c, double tol,
                                   double t_a = 0.0);

}  // namespace udw::dynamics
