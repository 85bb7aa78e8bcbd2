#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

namespace circsym {

using Complex = std::complex<double>;

/// Truncated Taylor expansion c_0 + c_1 z + ... + c_N z^N, trusted on |z| <= rho.
class PowerSeries {
public:
  PowerSeries(std::vector<Complex> coefficients, double rho = 1.0);

  const std::vector<Complex>& coefficients() const noexcept { return coefficients_; }
  const Complex& operator[](std::size_t n) const { return coefficients_[n]; }
  std::size_t degree() const noexcept { return coefficients_.size() - 1; }
  double rho() const noexcept { return rho_; }

  /// Coefficients of z -> f(scale * z), trusted on |z| <= rho / scale (capped at 1).
  PowerSeries dilated(double scale) const;

private:
  std::vector<Complex> coefficients_;
  double rho_;
};

/// Horner evaluation. Throws ErrorKind::domain for |z| > rho.
Complex eval(const PowerSeries& s, Complex z);

/// Discrete Cauchy integral: recovers c_0..c_degree from M equispaced samples
/// values[j] = f(r e^{2 pi i j / M}). Requires M >= 2 degree + 2 and 0 < r < 1.
PowerSeries coefficients_from_samples(std::span<const Complex> values, double r, std::size_t degree,
                                      double rho = 1.0);

/// pi * sum_{n=1}^{truncation} n |c_n|^2, the area of the image of a univalent map.
double dirichlet_area(const PowerSeries& s, std::size_t truncation);
double dirichlet_area(const PowerSeries& s);

/// Closed catalog of convex nondecreasing weights Phi applied to log|f|.
struct MeanWeight {
  enum class Kind { exp, exp2, hinge };
  Kind kind = Kind::exp2;
  double shift = 0.0;  // c in max(x - c, 0)

  static MeanWeight exp() { return {Kind::exp, 0.0}; }
  static MeanWeight exp2() { return {Kind::exp2, 0.0}; }
  static MeanWeight hinge(double c) { return {Kind::hinge, c}; }

  /// Phi(log m) for a modulus m >= 0, using the limit at m = 0.
  double apply_to_modulus(double modulus) const;
  std::string name() const;
};

struct IntegralMean {
  double value = 0.0;
  bool underflow = false;  // some node had |f| below 1e-300
};

inline constexpr double kUnderflowModulus = 1e-300;

std::size_t default_quadrature_nodes(std::size_t degree);

/// Periodic trapezoid approximation of the integral over [-pi, pi] of Phi(log|f(r e^{i theta})|).
IntegralMean integral_mean(const PowerSeries& s, const MeanWeight& phi, double r, std::size_t nodes);
IntegralMean integral_mean(const PowerSeries& s, const MeanWeight& phi, double r);

struct LittlewoodRow {
  std::size_t n;
  double modulus;  // |c_n|
  double bound;    // 4 n |c_0|
  bool pass;
};

/// Rows n = 2..degree of |c_n| <= 4 n |c_0|. Throws ErrorKind::inapplicable when c_0 = 0.
std::vector<LittlewoodRow> littlewood_check(const PowerSeries& s);

}  // namespace circsym
