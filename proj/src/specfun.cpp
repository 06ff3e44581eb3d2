#include "udw/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>

#include "udw/core.hpp"

namespace udw::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr double kEulerGamma = 0.57721566490153286060651209008240243;
constexpr double kTwoOverSqrtPi = 1.12837916709551257389615890312154517;
constexpr double kOneOverSqrtPi = 0.56418958354775628694807945156077259;

// erf uses its all-positive series below kErfSeriesLimit; erfc switches to the
// Laplace continued fraction above kErfcFractionLimit to keep relative accuracy.
constexpr double kErfSeriesLimit = 2.5;
constexpr double kErfcFractionLimit = 1.0;

double erf_series(double x) {
  // erf(x) = 2/sqrt(pi) x e^{-x^2} sum_n (2x^2)^n / (1*3*...*(2n+1))
  const double two_x2 = 2.0 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int n = 1; n < 200; ++n) {
    term *= two_x2 / (2.0 * n + 1.0);
    sum += term;
    if (term < kEps * 0.25 * sum) break;
  }
  return kTwoOverSqrtPi * x * std::exp(-x * x) * sum;
}

double erfc_continued_fraction(double x) {
  // erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))), modified Lentz
  double f = x;
  double c = x;
  double d = 0.0;
  for (int n = 1; n < 5000; ++n) {
    const double a = 0.5 * n;
    d = x + a * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = x + a / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < kEps) break;
  }
  return kOneOverSqrtPi * std::exp(-x * x) / f;
}

// Power series for Si and Ci, used for 0 < x <= 4.
void cisi_series(double x, double& si, double& ci) {
  const double x2 = x * x;
  double term = x;  // x^{2n+1}/(2n+1)!
  double s = x;
  for (int n = 1; n < 100; ++n) {
    term *= -x2 / ((2.0 * n) * (2.0 * n + 1.0));
    const double add = term / (2.0 * n + 1.0);
    s += add;
    if (std::abs(add) < kEps * 0.1 * std::abs(s)) break;
  }
  double cterm = 1.0;  // x^{2n}/(2n)!
  double c = 0.0;
  for (int n = 1; n < 100; ++n) {
    cterm *= -x2 / ((2.0 * n - 1.0) * (2.0 * n));
    const double add = cterm / (2.0 * n);
    c += add;
    if (std::abs(add) < kEps * 0.1 * (std::abs(c) + kEps)) break;
  }
  si = s;
  ci = kEulerGamma + std::log(x) + c;
}

// Continued fraction for E1(ix), used for x > 4.
void cisi_continued_fraction(double x, double& si, double& ci) {
  using cplx = std::complex<double>;
  cplx b(1.0, x);
  cplx c = 1.0 / kTiny;
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < 100000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < kEps) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  ci = -h.real();
  si = 0.5 * kPi + h.imag();
}

constexpr double kCisiSeriesLimit = 4.0;

double j0_series(double x) {
  const double q = -0.25 * x * x;
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 100; ++k) {
    term *= q / (static_cast<double>(k) * k);
    sum += term;
    if (std::abs(term) < kEps * 0.1) break;
  }
  return sum;
}

// Miller backward recurrence normalized by 1 = J0 + 2 sum_k J_{2k}.
double j0_miller(double x) {
  int start = static_cast<int>(1.5 * x) + 32;
  if (start % 2 != 0) ++start;
  double next = 0.0;    // J_{k+1}
  double cur = 1e-30;   // J_k
  double norm = 0.0;
  for (int k = start; k >= 1; --k) {
    const double prev = (2.0 * k / x) * cur - next;  // J_{k-1}
    next = cur;
    cur = prev;
    if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * cur;
    if (std::abs(cur) > 1e250) {
      cur *= 1e-250;
      next *= 1e-250;
      norm *= 1e-250;
    }
  }
  norm += cur;
  return cur / norm;
}

// Hankel asymptotic expansion, used for x > 25.
double j0_asymptotic(double x) {
  const double z8 = 8.0 * x;
  double p = 1.0;
  double q = 0.0;
  double term = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= -odd * odd / (k * z8);  // (mu - (2k-1)^2)/(k 8x) with mu = 0
    const double mag = std::abs(term);
    if (mag > last) break;
    last = mag;
    // k odd contributes to Q with sign (-1)^((k-1)/2); k even to P with sign (-1)^(k/2)
    if (k % 2 == 1) {
      q += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    } else {
      p += ((k / 2) % 2 == 0 ? 1.0 : -1.0) * term;
    }
    if (mag < kEps * 0.01) break;
  }
  const double chi = x - 0.25 * kPi;
  return std::sqrt(2.0 / (kPi * x)) * (p * std::cos(chi) - q * std::sin(chi));
}

}  // namespace

double erf(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double r;
  if (ax <= kErfSeriesLimit) {
    r = erf_series(ax);
  } else if (ax > 6.0) {
    r = 1.0;
  } else {
    r = 1.0 - erfc_continued_fraction(ax);
  }
  return x < 0.0 ? -r : r;
}

double erfc(double x) {
  if (std::isnan(x)) return x;
  if (x > kErfcFractionLimit) {
    if (x > 27.3) return 0.0;  // below the smallest subnormal
    return erfc_continued_fraction(x);
  }
  if (x < -kErfSeriesLimit) {
    return 2.0 - (x < -6.0 ? 0.0 : erfc_continued_fraction(-x));
  }
  return 1.0 - erf(x);
}

double erf_difference(double a, double b) {
  if (a > 0.0 && b > 0.0) return erfc(b) - erfc(a);
  if (a < 0.0 && b < 0.0) return erfc(-a) - erfc(-b);
  return erf(a) - erf(b);
}

double sine_integral(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  if (ax == 0.0) return 0.0;
  double si;
  double ci;
  if (ax <= kCisiSeriesLimit) {
    cisi_series(ax, si, ci);
  } else {
    cisi_continued_fraction(ax, si, ci);
  }
  return x < 0.0 ? -si : si;
}

double cosine_integral(double x) {
  if (!(x > 0.0)) {
    throw InvalidInput("cosine_integral requires a positive argument");
  }
  double si;
  double ci;
  if (x <= kCisiSeriesLimit) {
    cisi_series(x, si, ci);
  } else {
    cisi_continued_fraction(x, si, ci);
  }
  return ci;
}

double bessel_j0(double x) {
  const double ax = std::abs(x);
  if (ax <= 2.0) return j0_series(ax);
  if (ax <= 25.0) return j0_miller(ax);
  return j0_asymptotic(ax);
}

double bessel_i0_scaled(double x) {
  if (std::isnan(x) || x < 0.0) {
    throw InvalidInput("bessel_i0_scaled requires a non-negative argument");
  }
  if (x <= 25.0) {
    const double q = 0.25 * x * x;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < kEps * 0.1 * sum) break;
    }
    return std::exp(-x) * sum;
  }
  // e^{-x} I0(x) ~ 1/sqrt(2 pi x) sum_k ((2k-1)!!)^2 / (k! (8x)^k)
  const double z8 = 8.0 * x;
  double term = 1.0;
  double sum = 1.0;
  double last = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 60; ++k) {
    const double odd = 2.0 * k - 1.0;
    term *= odd * odd / (k * z8);
    if (term > last) break;
    last = term;
    sum += term;
    if (term < kEps * 0.01 * sum) break;
  }
  return sum / std::sqrt(2.0 * kPi) / std::sqrt(x);
}

}  // namespace udw::specfun
