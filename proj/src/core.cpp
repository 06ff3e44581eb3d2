#include "udw/core.hpp"

#include <algorithm>
#include <cmath>

namespace udw {

Dimension make_dimension(int n) {
  if (n < 1 || n > 3) {
    throw InvalidInput("dim must be 1, 2 or 3 (got " + std::to_string(n) + ")");
  }
  return static_cast<Dimension>(n);
}

DetectorState DetectorState::make(double alpha, complex beta) {
  if (!std::isfinite(alpha) || !std::isfinite(beta.real()) || !std::isfinite(beta.imag())) {
    throw InvalidInput("detector state must be finite");
  }
  if (alpha < 0.0 || alpha > 1.0) {
    throw InvalidInput("alpha must lie in [0, 1]");
  }
  if (std::norm(beta) > alpha * (1.0 - alpha)) {
    throw InvalidInput("positivity violated: |beta|^2 > alpha (1 - alpha)");
  }
  return DetectorState(alpha, beta);
}

ScenarioSpec validate(const ScenarioSpec& spec) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!finite(spec.separation) || spec.separation < 0.0) {
    throw InvalidInput("separation must be non-negative");
  }
  if (!finite(spec.time_gap) || spec.time_gap <= 0.0) {
    throw InvalidInput("time_gap must be positive");
  }
  if (!finite(spec.duration) || spec.duration < 0.0) {
    throw InvalidInput("duration must be non-negative");
  }
  if (!finite(spec.smearing) || spec.smearing < 0.0) {
    throw InvalidInput("smearing must be non-negative");
  }
  if (!finite(spec.gap_a) || !finite(spec.gap_b)) {
    throw InvalidInput("gap_a and gap_b must be finite");
  }
  if (!finite(spec.coupling_a) || !finite(spec.coupling_b)) {
    throw InvalidInput("coupling_a and coupling_b must be finite");
  }
  if (spec.cutoff && (!finite(*spec.cutoff) || *spec.cutoff <= 0.0)) {
    throw InvalidInput("cutoff must be positive when present");
  }
  return spec;
}

double Matrix2::hermiticity_residual() const {
  double r = 0.0;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      r = std::max(r, std::abs(m[i][j] - std::conj(m[j][i])));
    }
  }
  return r;
}

double Matrix2::max_abs() const {
  double r = 0.0;
  for (const auto& row : m) {
    for (const auto& v : row) r = std::max(r, std::abs(v));
  }
  return r;
}

bool Matrix2::is_zero() const {
  for (const auto& row : m) {
    for (const auto& v : row) {
      if (v.real() != 0.0 || v.imag() != 0.0) return false;
    }
  }
  return true;
}

Matrix2& Matrix2::operator*=(double k) {
  for (auto& row : m) {
    for (auto& v : row) v *= k;
  }
  return *this;
}

}  // namespace udw
