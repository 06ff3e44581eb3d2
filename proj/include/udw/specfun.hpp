#pragma once

/// Double-precision special functions used by the closed-form estimators.
/// All functions are pure and thread-safe.
namespace udw::specfun {

/// Error function, |error| <= 1e-14.
double erf(double x);

/// Complementary error function 1 - erf(x), accurate in the tails.
double erfc(double x);

/// erf(a) - erf(b) without cancellation when both arguments sit in the same tail.
double erf_difference(double a, double b);

/// Si(x) = integral of sin(t)/t over [0, x]. |error| <= 1e-12.
double sine_integral(double x);

/// Ci(x) = gamma + ln x + integral of (cos t - 1)/t over [0, x]. Requires x > 0.
double cosine_integral(double x);

/// Bessel J0, |error| <= 1e-13.
double bessel_j0(double x);

/// exp(-x) I0(x) for x >= 0; never overflows.
double bessel_i0_scaled(double x);

}  // namespace udw::specfun
