#pragma once

#include <complex>
#include <span>
#include <vector>

#include "circsym/power_series.hpp"

namespace circsym {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

struct Arc {
  double lo;
  double hi;
};

/// A finite union of arcs of the circle, stored canonically: arcs inside [0, 2pi],
/// sorted by start, pairwise disjoint, split at the 0/2pi seam.
class ArcSet {
public:
  ArcSet() = default;

  /// Canonicalizes arbitrary arcs with 0 <= hi - lo <= 2pi; overlapping arcs are merged.
  static ArcSet from_arcs(std::vector<Arc> arcs);
  static ArcSet full();
  /// The arc {|theta| < measure / 2}; empty or full at the extremes.
  static ArcSet centered(double measure);

  const std::vector<Arc>& arcs() const noexcept { return arcs_; }
  double measure() const noexcept { return measure_; }
  bool empty() const noexcept { return arcs_.empty(); }
  bool is_full() const noexcept;
  /// True for empty, full, or a single arc symmetric about theta = 0.
  bool is_centered() const noexcept;
  bool contains(double theta) const noexcept;

private:
  std::vector<Arc> arcs_;
  double measure_ = 0.0;
};

struct RadialSlice {
  double t;
  ArcSet arcs;
};

/// Angular cross-sections of a domain on circles |w| = t.
/// The end measures describe the cross-sections at the inner and outer radii,
/// which are not stored as slices.
struct RadialProfile {
  std::vector<RadialSlice> slices;
  bool contains_origin = false;
  double inner_radius = 0.0;
  double outer_radius = 0.0;
  double inner_measure = 0.0;
  double outer_measure = 0.0;

  /// Throws ErrorKind::input if radii are not strictly increasing inside [inner, outer].
  void validate() const;
};

/// Closed polyline with implicit closing segment. Construction rejects curves with
/// fewer than 16 vertices or with non-adjacent segments closer than `tolerance`.
class BoundaryCurve {
public:
  explicit BoundaryCurve(std::vector<Complex> points, double tolerance = -1.0);

  const std::vector<Complex>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  double tolerance() const noexcept { return tolerance_; }
  /// Shoelace signed area; positive for counterclockwise traversal.
  double signed_area() const noexcept;
  double distance_to(Complex w) const noexcept;
  double length() const noexcept;

private:
  std::vector<Complex> points_;
  double tolerance_;
};

/// Brute-force O(M^2) search for a pair of non-adjacent segments closer than tol.
bool has_self_intersection_brute_force(std::span<const Complex> points, double tol);

/// Samples f(rho e^{2 pi i j / M}), j = 0..M-1. Self-intersection is reported as a geometry error.
BoundaryCurve boundary_from_series(const PowerSeries& f, std::size_t vertices);

/// Winding number of the curve around w. Throws ErrorKind::geometry when w lies within tolerance of the curve.
int winding_number(const BoundaryCurve& c, Complex w);

struct SliceDiagnostics {
  bool degenerate_contact = false;
};

/// The set {theta : t e^{i theta} inside c}.
ArcSet slice_at_radius(const BoundaryCurve& c, double t, SliceDiagnostics* diagnostics = nullptr);

/// Slices at m Chebyshev radii inside (min |w|, max |w|) over the curve. Domains containing
/// the origin are sampled on (0, max |w|).
RadialProfile radial_profile(const BoundaryCurve& c, std::size_t slices, SliceDiagnostics* diagnostics = nullptr);

/// Replaces every slice by the centered arc of equal measure.
RadialProfile symmetrize(const RadialProfile& p);

/// Boundary of the symmetrized domain traced through t e^{-i alpha/2} outward and t e^{i alpha/2} back.
/// Throws ErrorKind::scope for profiles with the origin or with empty/full interior slices.
BoundaryCurve symmetrized_boundary(const RadialProfile& p);

/// Integral of t |D(t)| dt by the trapezoid rule over the slice radii.
double area_by_profile(const RadialProfile& p);

/// Shoelace area. Throws ErrorKind::geometry when the curve is clockwise.
double area_by_shoelace(const BoundaryCurve& c);

/// Redistributes `count` vertices at equal arclength along c starting from its first vertex.
BoundaryCurve resample_by_arclength(const BoundaryCurve& c, std::size_t count);

}  // namespace circsym
