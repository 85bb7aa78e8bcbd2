#include "circsym/power_series.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "circsym/error.hpp"

namespace circsym {

namespace {

// Slack for |z| = rho evaluated after rounding.
constexpr double kRadiusSlack = 1e-12;

std::vector<Complex> unit_roots(std::size_t count) {
  std::vector<Complex> roots(count);
  for (std::size_t j = 0; j < count; ++j) {
    roots[j] = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count));
  }
  return roots;
}

}  // namespace

PowerSeries::PowerSeries(std::vector<Complex> coefficients, double rho)
    : coefficients_(std::move(coefficients)), rho_(rho) {
  if (coefficients_.size() < 2) {
    throw Error(ErrorKind::input, "power series needs at least two coefficients");
  }
  for (const auto& c : coefficients_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw Error(ErrorKind::input, "power series coefficient is not finite");
    }
  }
  if (!(rho_ > 0.0 && rho_ <= 1.0)) {
    throw Error(ErrorKind::input, "power series radius must lie in (0, 1]");
  }
}

PowerSeries PowerSeries::dilated(double scale) const {
  if (!(scale > 0.0)) throw Error(ErrorKind::input, "dilation scale must be positive");
  std::vector<Complex> out(coefficients_.size());
  double power = 1.0;
  for (std::size_t n = 0; n < out.size(); ++n) {
    out[n] = coefficients_[n] * power;
    power *= scale;
  }
  return PowerSeries(std::move(out), std::min(1.0, rho_ / scale));
}

Complex eval(const PowerSeries& s, Complex z) {
  if (std::abs(z) > s.rho() * (1.0 + kRadiusSlack)) {
    throw Error(ErrorKind::domain, "evaluation point lies outside the trusted disk");
  }
  const auto& c = s.coefficients();
  Complex acc = c.back();
  for (auto it = c.rbegin() + 1; it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

PowerSeries coefficients_from_samples(std::span<const Complex> values, double r, std::size_t degree,
                                      double rho) {
  const std::size_t m = values.size();
  if (m < 2 * degree + 2) {
    throw Error(ErrorKind::sampling, "need at least 2N+2 samples to recover N+1 coefficients");
  }
  if (!(r > 0.0 && r < 1.0)) {
    throw Error(ErrorKind::domain, "sampling radius must lie in (0, 1)");
  }
  const auto roots = unit_roots(m);
  std::vector<Complex> coeffs(degree + 1);
  double r_power = 1.0;
  for (std::size_t n = 0; n <= degree; ++n) {
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < m; ++j) {
      sum += values[j] * std::conj(roots[(j * n) % m]);
    }
    coeffs[n] = sum / (static_cast<double>(m) * r_power);
    r_power *= r;
  }
  return PowerSeries(std::move(coeffs), rho);
}

double dirichlet_area(const PowerSeries& s, std::size_t truncation) {
  const std::size_t top = std::min(truncation, s.degree());
  double sum = 0.0;
  for (std::size_t n = 1; n <= top; ++n) sum += static_cast<double>(n) * std::norm(s[n]);
  return std::numbers::pi * sum;
}

double dirichlet_area(const PowerSeries& s) { return dirichlet_area(s, s.degree()); }

double MeanWeight::apply_to_modulus(double modulus) const {
  switch (kind) {
    case Kind::exp: return modulus;
    case Kind::exp2: return modulus * modulus;
    case Kind::hinge:
      if (modulus <= 0.0) return 0.0;
      return std::max(std::log(modulus) - shift, 0.0);
  }
  return 0.0;
}

std::string MeanWeight::name() const {
  switch (kind) {
    case Kind::exp: return "exp";
    case Kind::exp2: return "exp2";
    case Kind::hinge: return "hinge";
  }
  return "unknown";
}

std::size_t default_quadrature_nodes(std::size_t degree) { return std::max<std::size_t>(256, 8 * degree); }

IntegralMean integral_mean(const PowerSeries& s, const MeanWeight& phi, double r, std::size_t nodes) {
  if (!(r > 0.0 && r < s.rho() * (1.0 + kRadiusSlack))) {
    throw Error(ErrorKind::domain, "integral mean radius must lie in (0, rho)");
  }
  if (nodes < 2) throw Error(ErrorKind::sampling, "integral mean needs at least two nodes");
  const auto roots = unit_roots(nodes);
  IntegralMean out;
  double sum = 0.0;
  for (const auto& root : roots) {
    const double modulus = std::abs(eval(s, r * root));
    if (modulus < kUnderflowModulus) out.underflow = true;
    sum += phi.apply_to_modulus(modulus);
  }
  out.value = 2.0 * std::numbers::pi * sum / static_cast<double>(nodes);
  return out;
}

IntegralMean integral_mean(const PowerSeries& s, const MeanWeight& phi, double r) {
  return integral_mean(s, phi, r, default_quadrature_nodes(s.degree()));
}

std::vector<LittlewoodRow> littlewood_check(const PowerSeries& s) {
  const double a0 = std::abs(s[0]);
  if (a0 == 0.0) throw Error(ErrorKind::inapplicable, "Littlewood bound needs a nonvanishing constant term");
  std::vector<LittlewoodRow> rows;
  for (std::size_t n = 2; n <= s.degree(); ++n) {
    const double modulus = std::abs(s[n]);
    const double bound = 4.0 * static_cast<double>(n) * a0;
    rows.push_back({n, modulus, bound, modulus <= bound});
  }
  return rows;
}

}  // namespace circsym
