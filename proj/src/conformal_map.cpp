#include "circsym/conformal_map.hpp"

#include <cmath>
#include <string>

#include "circsym/error.hpp"

namespace circsym {

namespace {

constexpr Complex kI{0.0, 1.0};
// Relative slack below the real axis tolerated for intermediate images.
constexpr double kBranchTolerance = 1e-8;
// Anchors with |Re a| below this fraction of |a| use the vertical step.
constexpr double kVerticalTolerance = 1e-14;

bool below_axis(Complex u) { return u.imag() < -kBranchTolerance * std::max(1.0, std::abs(u)); }

Complex opening(Complex z, Complex z0, Complex z1) { return kI * std::sqrt((z - z1) / (z - z0)); }

Complex closing_mobius(Complex w, const std::optional<double>& foot) {
  return foot ? w / (1.0 - w / *foot) : w;
}

}  // namespace

// ------------------------------------------------------------ ElementaryStep

ElementaryStep::ElementaryStep(Complex anchor) : anchor_(anchor) {
  if (!(anchor.imag() > 0.0) || !std::isfinite(anchor.real())) {
    throw Error(ErrorKind::geometry, "zipper anchor outside the open upper half-plane");
  }
  const double modulus2 = std::norm(anchor);
  if (std::abs(anchor.real()) > kVerticalTolerance * std::sqrt(modulus2)) foot_ = modulus2 / anchor.real();
  height_ = modulus2 / anchor.imag();
  if (!foot_) height_ = anchor.imag();
}

ElementaryStep ElementaryStep::from_parameters(Complex anchor, std::optional<double> foot, double height) {
  ElementaryStep step;
  step.anchor_ = anchor;
  step.foot_ = foot;
  step.height_ = height;
  return step;
}

Complex ElementaryStep::forward(Complex z) const noexcept {
  const Complex u = foot_ ? z / (1.0 - z / *foot_) : z;
  // u sqrt(1 + h^2/u^2) is analytic off the segment [-ih, ih] and equals sqrt(u^2 + h^2) on the half-plane.
  return u * std::sqrt(1.0 + (height_ * height_) / (u * u));
}

Complex ElementaryStep::forward_derivative(Complex z) const noexcept {
  Complex dm{1.0, 0.0};
  Complex u = z;
  if (foot_) {
    const Complex denom = 1.0 - z / *foot_;
    u = z / denom;
    dm = 1.0 / (denom * denom);
  }
  const Complex g = u * std::sqrt(1.0 + (height_ * height_) / (u * u));
  return dm * u / g;
}

Complex ElementaryStep::inverse(Complex w) const noexcept {
  const Complex u = w * std::sqrt(1.0 - (height_ * height_) / (w * w));
  return foot_ ? u / (1.0 + u / *foot_) : u;
}

// ---------------------------------------------------------------- ZipperMap

ZipperMap::ZipperMap(ZipperParts parts) : parts_(std::move(parts)) {
  if (parts_.closing_sign != 1 && parts_.closing_sign != -1) {
    throw Error(ErrorKind::input, "closing sign must be +1 or -1");
  }
  if (!(std::abs(parts_.disk_center) < 1.0)) throw Error(ErrorKind::input, "normalization center outside the disk");
}

Complex ZipperMap::raw_forward(Complex w, Complex* derivative) const {
  const auto& p = parts_;
  Complex d{1.0, 0.0};
  const Complex q = (w - p.z1) / (w - p.z0);
  Complex u = kI * std::sqrt(q);
  if (derivative) d = kI * ((p.z1 - p.z0) / ((w - p.z0) * (w - p.z0))) / (2.0 * std::sqrt(q));
  for (std::size_t k = 0; k < p.steps.size(); ++k) {
    if (derivative) d *= p.steps[k].forward_derivative(u);
    u = p.steps[k].forward(u);
    if (below_axis(u)) {
      throw Error(ErrorKind::domain, "point outside the mapped domain (left the half-plane at step " +
                                         std::to_string(k) + ")");
    }
  }
  Complex dm{1.0, 0.0};
  if (p.closing_foot) {
    const Complex denom = 1.0 - u / *p.closing_foot;
    dm = 1.0 / (denom * denom);
  }
  const Complex m = closing_mobius(u, p.closing_foot);
  const Complex h = static_cast<double>(p.closing_sign) * m * m;
  const Complex zeta = (h - kI) / (h + kI);
  if (derivative) {
    d *= static_cast<double>(p.closing_sign) * 2.0 * m * dm;
    d *= 2.0 * kI / ((h + kI) * (h + kI));
    *derivative = d;
  }
  if (!(std::abs(zeta) < 1.0)) throw Error(ErrorKind::domain, "point outside the mapped domain");
  return zeta;
}

Complex ZipperMap::raw_inverse(Complex z) const {
  const auto& p = parts_;
  const Complex h = kI * (1.0 + z) / (1.0 - z);
  const double sign = static_cast<double>(p.closing_sign);
  const Complex m = sign * std::sqrt(sign * h);
  Complex u = p.closing_foot ? m / (1.0 + m / *p.closing_foot) : m;
  for (std::size_t k = p.steps.size(); k-- > 0;) {
    u = p.steps[k].inverse(u);
    if (below_axis(u)) {
      throw Error(ErrorKind::numerical, "branch tracking failed at step " + std::to_string(k));
    }
  }
  const Complex q = -u * u;
  return (p.z1 - q * p.z0) / (1.0 - q);
}

// ---------------------------------------------------------------- build

ZipperMap build_map(const BoundaryCurve& boundary, double target) {
  const auto& pts = boundary.points();
  if (!(target > 0.0) || winding_number(boundary, Complex{target, 0.0}) != 1) {
    throw Error(ErrorKind::scope, "normalization target outside the domain");
  }
  ZipperParts parts;
  parts.z0 = pts[0];
  parts.z1 = pts[1];
  parts.target = target;

  const std::size_t n = pts.size();
  std::vector<Complex> images(n);
  for (std::size_t k = 2; k < n; ++k) images[k] = opening(pts[k], parts.z0, parts.z1);
  Complex target_image = opening(Complex{target, 0.0}, parts.z0, parts.z1);
  std::optional<double> foot_of_z0;  // image of z0, at infinity until the first non-vertical step

  parts.steps.reserve(n - 2);
  for (std::size_t k = 2; k < n; ++k) {
    const ElementaryStep step(images[k]);
    for (std::size_t j = k + 1; j < n; ++j) {
      images[j] = step.forward(images[j]);
      if (below_axis(images[j])) {
        throw Error(ErrorKind::geometry, "zipper vertex left the half-plane at step " + std::to_string(k));
      }
    }
    target_image = step.forward(target_image);
    if (foot_of_z0) {
      foot_of_z0 = step.forward(Complex{*foot_of_z0, 0.0}).real();
    } else if (step.foot()) {
      foot_of_z0 = step.forward(Complex{-*step.foot(), 0.0}).real();
    }
    parts.steps.push_back(step);
  }
  parts.closing_foot = foot_of_z0;
  const Complex m = closing_mobius(target_image, parts.closing_foot);
  parts.closing_sign = m.real() >= 0.0 ? 1 : -1;

  // Normalize: a* = raw image of the target, rotation from the raw derivative there.
  ZipperMap raw(parts);
  Complex derivative;
  const Complex center = raw.raw_forward(Complex{target, 0.0}, &derivative);
  parts.disk_center = center;
  parts.rotation = std::arg(derivative);
  return ZipperMap(std::move(parts));
}

Complex eval_map(const ZipperMap& m, Complex z) {
  if (!(std::abs(z) < 1.0)) throw Error(ErrorKind::domain, "eval_map requires |z| < 1");
  const auto& p = m.parts();
  const Complex rotated = std::polar(1.0, p.rotation) * z;
  const Complex moved = (rotated + p.disk_center) / (1.0 + std::conj(p.disk_center) * rotated);
  return m.raw_inverse(moved);
}

Complex eval_inverse(const ZipperMap& m, Complex w) {
  const auto& p = m.parts();
  const Complex zeta = m.raw_forward(w);
  const Complex moved = (zeta - p.disk_center) / (1.0 - std::conj(p.disk_center) * zeta);
  return std::polar(1.0, -p.rotation) * moved;
}

PowerSeries series_of_map(const ZipperMap& m, double r, std::size_t samples, std::size_t degree) {
  if (!(r > 0.0 && r < 1.0)) throw Error(ErrorKind::domain, "extraction radius must lie in (0, 1)");
  std::vector<Complex> values(samples);
  for (std::size_t j = 0; j < samples; ++j) {
    values[j] = eval_map(m, std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(samples)));
  }
  return coefficients_from_samples(values, r, degree);
}

}  // namespace circsym
