#pragma once

// Closed forms and independent reference implementations used only by the tests.

#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using Complex = std::complex<double>;

// (z + 1/2) / (1 + z/2)
inline Complex mobius(Complex z) { return (z + 0.5) / (1.0 + 0.5 * z); }

// Taylor coefficients of mobius: 1/2, then (-1)^(n-1) 3 / 2^(n+1)
inline double mobius_coefficient(int n) {
  if (n == 0) return 0.5;
  return (n % 2 == 1 ? 3.0 : -3.0) / std::ldexp(1.0, n + 1);
}

inline std::vector<Complex> circle(Complex center, double radius, std::size_t count, double phase = 0.0) {
  std::vector<Complex> pts(count);
  for (std::size_t j = 0; j < count; ++j) {
    pts[j] = center + std::polar(radius, phase + 2.0 * std::numbers::pi * double(j) / double(count));
  }
  return pts;
}

// Measure of {theta : t e^{i theta} in the disk |w - d| < R} for real d > 0.
inline double disk_slice_measure(double d, double R, double t) {
  const double c = (t * t + d * d - R * R) / (2.0 * t * d);
  if (c >= 1.0) return 0.0;
  if (c <= -1.0) return 2.0 * std::numbers::pi;
  return 2.0 * std::acos(c);
}

// Even-odd rule with a horizontal ray to the right.
inline bool ray_cast_inside(const std::vector<Complex>& poly, Complex w) {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Complex a = poly[i];
    const Complex b = poly[j];
    if ((a.imag() > w.imag()) != (b.imag() > w.imag())) {
      const double x = a.real() + (w.imag() - a.imag()) * (b.real() - a.real()) / (b.imag() - a.imag());
      if (w.real() < x) inside = !inside;
    }
  }
  return inside;
}

// Distance from w to the closed polyline.
inline double polyline_distance(const std::vector<Complex>& poly, Complex w) {
  double best = INFINITY;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const Complex a = poly[i];
    const Complex b = poly[(i + 1) % poly.size()];
    const Complex ab = b - a;
    double s = std::real((w - a) * std::conj(ab)) / std::norm(ab);
    s = std::clamp(s, 0.0, 1.0);
    best = std::min(best, std::abs(w - (a + s * ab)));
  }
  return best;
}

inline std::vector<Complex> random_coefficients(std::mt19937_64& rng, std::size_t count, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  std::vector<Complex> c(count);
  for (auto& x : c) x = {u(rng), u(rng)};
  return c;
}

}  // namespace oracle
