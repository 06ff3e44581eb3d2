#pragma once

#include <array>
#include <complex>
#include <optional>
#include <stdexcept>
#include <string>

/// Shared domain types for the two-detector signalling library.
///
/// Natural units throughout (c = 1): lengths and times share one unit and
/// frequencies are its inverse. Estimators are coupling-stripped; the
/// couplings only scale signal matrices.
namespace udw {

using complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846264338327950288;

/// Thrown for any violated precondition or invariant (CLI exit code 2).
class InvalidInput : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Thrown when a numerical procedure cannot reach its tolerance (CLI exit code 3).
class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Number of spatial dimensions of the flat spacetime.
enum class Dimension { one = 1, two = 2, three = 3 };

Dimension make_dimension(int n);
constexpr int spatial_dims(Dimension d) { return static_cast<int>(d); }

/// Qubit density matrix [[alpha, beta], [conj(beta), 1 - alpha]] in the
/// {|g>, |e>} basis. Positivity is checked on construction.
class DetectorState {
 public:
  static DetectorState make(double alpha, complex beta);
  static DetectorState ground() { return make(1.0, 0.0); }

  double alpha() const { return alpha_; }
  complex beta() const { return beta_; }

 private:
  DetectorState(double alpha, complex beta) : alpha_(alpha), beta_(beta) {}
  double alpha_;
  complex beta_;
};

/// Geometry and timing of a two-detector scenario.
///
/// `time_gap` is t_B - t_A for delta switching (duration == 0) or the interval
/// between A's switch-off and B's switch-on for top-hat switching.
/// `smearing` == 0 means pointlike; an empty `cutoff` means no UV cutoff.
struct ScenarioSpec {
  Dimension dim = Dimension::three;
  double separation = 1.0;
  double time_gap = 1.0;
  double duration = 0.0;
  double smearing = 0.0;
  double gap_a = 0.0;
  double gap_b = 0.0;
  double coupling_a = 1.0;
  double coupling_b = 1.0;
  std::optional<double> cutoff;

  bool delta_switching() const { return duration == 0.0; }

  friend bool operator==(const ScenarioSpec&, const ScenarioSpec&) = default;
};

/// Returns `spec` unchanged or throws InvalidInput naming the first violated invariant.
ScenarioSpec validate(const ScenarioSpec& spec);

/// Absolute per-entry tolerance for the traceless/Hermitian checks.
inline constexpr double kMatrixTolerance = 1e-12;

/// 2x2 complex matrix in the {|g>, |e>} basis.
struct Matrix2 {
  std::array<std::array<complex, 2>, 2> m{};

  complex& operator()(int r, int c) { return m[r][c]; }
  const complex& operator()(int r, int c) const { return m[r][c]; }

  complex trace() const { return m[0][0] + m[1][1]; }
  /// max |M - M^dagger| over entries
  double hermiticity_residual() const;
  double max_abs() const;
  bool is_zero() const;

  Matrix2& operator*=(double k);
  friend Matrix2 operator*(double k, Matrix2 a) { return a *= k; }
};

/// Leading-order signal contribution of detector A to detector B's state.
/// Traceless and Hermitian within kMatrixTolerance.
struct SignalMatrix {
  Matrix2 entries;

  double trace_residual() const { return std::abs(entries.trace()); }
  double hermiticity_residual() const { return entries.hermiticity_residual(); }
  bool is_valid() const {
    return trace_residual() <= kMatrixTolerance && hermiticity_residual() <= kMatrixTolerance;
  }
};

}  // namespace udw
