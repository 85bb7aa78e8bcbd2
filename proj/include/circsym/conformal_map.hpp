#pragma once

#include <optional>
#include <vector>

#include "circsym/domain.hpp"
#include "circsym/power_series.hpp"

namespace circsym {

/// One geodesic-zipper step. The Mobius map m(z) = z / (1 - z/c) sends the circle
/// orthogonal to the real axis through 0 and the anchor onto the imaginary axis, and
/// z -> sqrt(z^2 + h^2) then opens the slit [0, ih] onto the real line.
/// A vertical step (anchor on the imaginary axis) uses m = identity.
class ElementaryStep {
public:
  /// Throws ErrorKind::geometry unless Im anchor > 0.
  explicit ElementaryStep(Complex anchor);

  Complex anchor() const noexcept { return anchor_; }
  bool vertical() const noexcept { return !foot_.has_value(); }
  /// Second real intersection |a|^2 / Re a of the geodesic circle; empty when vertical.
  std::optional<double> foot() const noexcept { return foot_; }
  double height() const noexcept { return height_; }

  /// Upper half-plane minus the geodesic from 0 to the anchor -> upper half-plane.
  Complex forward(Complex z) const noexcept;
  Complex forward_derivative(Complex z) const noexcept;
  Complex inverse(Complex w) const noexcept;

  /// Rebuilds a step from serialized parameters without recomputing them.
  static ElementaryStep from_parameters(Complex anchor, std::optional<double> foot, double height);

private:
  ElementaryStep() = default;

  Complex anchor_{};
  std::optional<double> foot_;
  double height_ = 0.0;
};

/// Everything needed to evaluate the map without rebuilding it.
struct ZipperParts {
  Complex z0;  // opening map zeta -> i sqrt((zeta - z1) / (zeta - z0))
  Complex z1;
  std::vector<ElementaryStep> steps;
  std::optional<double> closing_foot;  // image of z0 after all steps; empty when at infinity
  int closing_sign = 1;                // closing map w -> sign * (w / (1 - w / foot))^2
  Complex disk_center{0.0, 0.0};       // a*: raw-disk preimage of the target
  double rotation = 0.0;               // lambda
  double target = 0.0;
};

/// Numerical Riemann map F of the unit disk onto the interior of a closed polyline,
/// normalized so that F(0) = target and F'(0) > 0.
class ZipperMap {
public:
  explicit ZipperMap(ZipperParts parts);

  const ZipperParts& parts() const noexcept { return parts_; }
  double target() const noexcept { return parts_.target; }
  std::size_t step_count() const noexcept { return parts_.steps.size(); }

  /// Domain -> unit disk, before normalization. Reports the derivative when asked.
  Complex raw_forward(Complex w, Complex* derivative = nullptr) const;
  /// Unit disk -> domain, before normalization.
  Complex raw_inverse(Complex z) const;

private:
  ZipperParts parts_;
};

/// Builds F from a positively oriented simple boundary and a real interior target.
ZipperMap build_map(const BoundaryCurve& boundary, double target);

/// F(z) for |z| < 1. Branch-tracking failures raise ErrorKind::numerical.
Complex eval_map(const ZipperMap& m, Complex z);

/// F^{-1}(w). Points outside the mapped domain raise ErrorKind::domain.
Complex eval_inverse(const ZipperMap& m, Complex w);

/// Taylor coefficients of F from M samples on |z| = r.
PowerSeries series_of_map(const ZipperMap& m, double r, std::size_t samples, std::size_t degree);

}  // namespace circsym
