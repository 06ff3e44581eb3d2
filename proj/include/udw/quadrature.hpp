#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "udw/core.hpp"

/// Adaptive Gauss-Kronrod (7/15) integration of real or complex integrands.
///
/// Every routine is deterministic for fixed inputs: panels are refined in a
/// fixed order and the final sum runs over panels sorted by position.
namespace udw::quad {

template <class T>
struct QuadratureResult {
  T value{};
  double est_abs_error = 0.0;
  std::size_t panels_used = 1;
};

/// Simple pole of an integrand f_smooth(v) / (v - location).
struct PoleSpec {
  double location = 0.0;
};

struct Options {
  std::size_t max_evaluations = 1'000'000;
};

namespace detail {

// Kronrod abscissae on [-1, 1] (non-negative half); odd indices are the Gauss 7 nodes.
inline constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kNodes[1], kNodes[3], kNodes[5], kNodes[7].
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double>& v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double>& v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}

/// Neumaier compensated summation.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

template <class T>
class Accumulator;

template <>
class Accumulator<double> {
 public:
  void add(double v) { s_.add(v); }
  double value() const { return s_.value(); }

 private:
  CompensatedSum s_;
};

template <>
class Accumulator<std::complex<double>> {
 public:
  void add(const std::complex<double>& v) {
    re_.add(v.real());
    im_.add(v.imag());
  }
  std::complex<double> value() const { return {re_.value(), im_.value()}; }

 private:
  CompensatedSum re_;
  CompensatedSum im_;
};

template <class T>
struct Panel {
  double a;
  double b;
  T value;
  double error;
};

template <class T, class F>
Panel<T> gauss_kronrod(F& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const T fc = f(center);
  T kronrod = fc * kKronrodWeights[7];
  T gauss = fc * kGaussWeights[3];
  bool ok = finite(fc);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const T f1 = f(center - dx);
    const T f2 = f(center + dx);
    ok = ok && finite(f1) && finite(f2);
    const T pair = f1 + f2;
    kronrod += pair * kKronrodWeights[j];
    if (j % 2 == 1) gauss += pair * kGaussWeights[j / 2];
  }
  if (!ok) {
    throw ConvergenceError("integrand is not finite on [" + std::to_string(a) + ", " +
                           std::to_string(b) + "]");
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, magnitude(kronrod - gauss)};
}

template <class F>
using ValueOf = std::decay_t<std::invoke_result_t<F&, double>>;

inline std::vector<double> split_points(double a, double b, std::span<const double> breakpoints) {
  std::vector<double> pts{a};
  for (double p : breakpoints) {
    if (p > a && p < b) pts.push_back(p);
  }
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

}  // namespace detail

/// Globally adaptive integration of f over [a, b] to absolute tolerance `tol`.
/// Optional breakpoints (kinks, jumps) become initial panel edges.
/// Throws ConvergenceError when the evaluation budget runs out.
template <class F>
auto integrate(F&& f, double a, double b, double tol, std::span<const double> breakpoints = {},
               const Options& options = {}) -> QuadratureResult<detail::ValueOf<F>> {
  using T = detail::ValueOf<F>;
  using detail::Panel;
  if (!(tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw InvalidInput("quadrature interval must satisfy a <= b");
  }
  if (a == b) return {T{}, 0.0, 1};

  auto worse = [](const Panel<T>& x, const Panel<T>& y) { return x.error < y.error; };
  std::vector<Panel<T>> heap;
  const auto edges = detail::split_points(a, b, breakpoints);
  for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
    heap.push_back(detail::gauss_kronrod<T>(f, edges[i], edges[i + 1]));
  }
  std::make_heap(heap.begin(), heap.end(), worse);
  std::size_t evaluations = 15 * heap.size();

  auto total_error = [&heap] {
    detail::CompensatedSum s;
    for (const auto& p : heap) s.add(p.error);
    return s.value();
  };

  double err = total_error();
  while (err > tol) {
    if (evaluations + 30 > options.max_evaluations) {
      throw ConvergenceError("quadrature did not reach tolerance " + std::to_string(tol) +
                             " (estimated error " + std::to_string(err) + ") within " +
                             std::to_string(options.max_evaluations) + " evaluations");
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Panel<T> worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw ConvergenceError("quadrature panel collapsed to machine resolution near " +
                             std::to_string(worst.a));
    }
    heap.push_back(detail::gauss_kronrod<T>(f, worst.a, mid));
    std::push_heap(heap.begin(), heap.end(), worse);
    heap.push_back(detail::gauss_kronrod<T>(f, mid, worst.b));
    std::push_heap(heap.begin(), heap.end(), worse);
    evaluations += 30;
    err = total_error();
  }

  std::sort(heap.begin(), heap.end(), [](const Panel<T>& x, const Panel<T>& y) { return x.a < y.a; });
  detail::Accumulator<T> sum;
  for (const auto& p : heap) sum.add(p.value);
  return {sum.value(), err, heap.size()};
}

/// Integrates an oscillatory f by cutting [a, b] into panels no wider than half
/// the shortest expected wavelength 2 pi / osc_scale, each integrated adaptively
/// to an equal share of `tol`.
template <class F>
auto integrate_oscillatory(F&& f, double a, double b, double osc_scale, double tol,
                           const Options& options = {})
    -> QuadratureResult<detail::ValueOf<F>> {
  using T = detail::ValueOf<F>;
  if (!(osc_scale > 0.0)) throw InvalidInput("osc_scale must be positive");
  if (!(tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
    throw InvalidInput("quadrature interval must satisfy a <= b");
  }
  if (a == b) return {T{}, 0.0, 1};
  const double max_width = kPi / osc_scale;
  const auto n = static_cast<std::size_t>(std::ceil((b - a) / max_width));
  const double width = (b - a) / static_cast<double>(n);
  const double panel_tol = tol / static_cast<double>(n);
  detail::Accumulator<T> sum;
  detail::CompensatedSum err;
  std::size_t panels = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = a + width * static_cast<double>(i);
    const double hi = (i + 1 == n) ? b : a + width * static_cast<double>(i + 1);
    const auto r = integrate(f, lo, hi, panel_tol, {}, options);
    sum.add(r.value);
    err.add(r.est_abs_error);
    panels += r.panels_used;
  }
  return {sum.value(), err.value(), panels};
}

/// Cauchy principal value of the integral of f_smooth(v) / (v - pole) over [a, b].
///
/// Uses PV = integral of (f(v) - f(p)) / (v - p) + f(p) ln((b - p) / (p - a)); the
/// regularised part is smooth and integrated with the pole as a panel edge.
template <class F>
auto integrate_pv(F&& f_smooth, PoleSpec pole, double a, double b, double tol,
                  std::span<const double> breakpoints = {}, const Options& options = {})
    -> QuadratureResult<detail::ValueOf<F>> {
  using T = detail::ValueOf<F>;
  const double p = pole.location;
  if (!(p > a && p < b)) {
    throw InvalidInput("principal value pole must lie strictly inside the interval");
  }
  const T fp = f_smooth(p);
  auto regular = [&](double v) -> T { return (f_smooth(v) - fp) / (v - p); };
  std::vector<double> cuts(breakpoints.begin(), breakpoints.end());
  cuts.push_back(p);
  auto r = integrate(regular, a, b, tol, cuts, options);
  r.value += fp * std::log((b - p) / (p - a));
  return r;
}

}  // namespace udw::quad
