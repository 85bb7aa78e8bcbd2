#include "circsym/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <unordered_map>

#include "circsym/error.hpp"

namespace circsym {

namespace {

constexpr double kPi = std::numbers::pi;
// Crossing detection tolerance relative to the slice radius.
constexpr double kContactTolerance = 1e-12;

double cross(Complex a, Complex b) { return a.real() * b.imag() - a.imag() * b.real(); }

double wrap_angle(double theta) {
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

double point_segment_distance(Complex w, Complex a, Complex b) {
  const Complex d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(w - a);
  const double s = std::clamp(((w - a) * std::conj(d)).real() / len2, 0.0, 1.0);
  return std::abs(w - (a + s * d));
}

double segment_distance(Complex p1, Complex p2, Complex q1, Complex q2) {
  const double d1 = cross(p2 - p1, q1 - p1);
  const double d2 = cross(p2 - p1, q2 - p1);
  const double d3 = cross(q2 - q1, p1 - q1);
  const double d4 = cross(q2 - q1, p2 - q1);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) return 0.0;
  return std::min({point_segment_distance(p1, q1, q2), point_segment_distance(p2, q1, q2),
                   point_segment_distance(q1, p1, p2), point_segment_distance(q2, p1, p2)});
}

bool adjacent(std::size_t i, std::size_t j, std::size_t n) {
  return i == j || (i + 1) % n == j || (j + 1) % n == i;
}

// Uniform-grid broad phase over segment bounding boxes, exact narrow phase.
bool has_self_intersection_grid(std::span<const Complex> pts, double tol) {
  const std::size_t n = pts.size();
  double xmin = pts[0].real(), xmax = xmin, ymin = pts[0].imag(), ymax = ymin;
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    xmin = std::min(xmin, pts[i].real());
    xmax = std::max(xmax, pts[i].real());
    ymin = std::min(ymin, pts[i].imag());
    ymax = std::max(ymax, pts[i].imag());
    total += std::abs(pts[(i + 1) % n] - pts[i]);
  }
  double cell = std::max(2.0 * total / static_cast<double>(n), 1e-300);
  const double width = xmax - xmin + 2 * tol;
  const double height = ymax - ymin + 2 * tol;
  while ((width / cell + 1) * (height / cell + 1) > 16.0 * static_cast<double>(n)) cell *= 2.0;
  const auto nx = static_cast<long long>(width / cell) + 1;
  const auto ny = static_cast<long long>(height / cell) + 1;

  std::unordered_map<long long, std::vector<std::size_t>> cells;
  auto cell_of = [&](double v, double lo, long long count) {
    return std::clamp(static_cast<long long>((v - lo + tol) / cell), 0LL, count - 1);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = pts[i];
    const Complex b = pts[(i + 1) % n];
    const long long x0 = cell_of(std::min(a.real(), b.real()) - tol, xmin, nx);
    const long long x1 = cell_of(std::max(a.real(), b.real()) + tol, xmin, nx);
    const long long y0 = cell_of(std::min(a.imag(), b.imag()) - tol, ymin, ny);
    const long long y1 = cell_of(std::max(a.imag(), b.imag()) + tol, ymin, ny);
    for (long long x = x0; x <= x1; ++x) {
      for (long long y = y0; y <= y1; ++y) cells[x * ny + y].push_back(i);
    }
  }
  for (const auto& [key, members] : cells) {
    for (std::size_t u = 0; u < members.size(); ++u) {
      for (std::size_t v = u + 1; v < members.size(); ++v) {
        const std::size_t i = members[u];
        const std::size_t j = members[v];
        if (adjacent(i, j, n)) continue;
        if (segment_distance(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) <= tol) return true;
      }
    }
  }
  return false;
}

// Sunday's crossing rule; exact for points off the curve.
int raw_winding(std::span<const Complex> pts, Complex w) {
  const std::size_t n = pts.size();
  int wn = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex a = pts[i];
    const Complex b = pts[(i + 1) % n];
    const double side = cross(b - a, w - a);
    if (a.imag() <= w.imag()) {
      if (b.imag() > w.imag() && side > 0.0) ++wn;
    } else if (b.imag() <= w.imag() && side < 0.0) {
      --wn;
    }
  }
  return wn;
}

}  // namespace

// ---------------------------------------------------------------- ArcSet

ArcSet ArcSet::from_arcs(std::vector<Arc> arcs) {
  std::vector<Arc> pieces;
  for (const auto& arc : arcs) {
    const double width = arc.hi - arc.lo;
    if (!(width >= 0.0) || width > kTwoPi * (1.0 + 1e-15)) {
      throw Error(ErrorKind::input, "arc width must lie in [0, 2pi]");
    }
    if (width >= kTwoPi) return full();
    if (width == 0.0) continue;
    const double lo = wrap_angle(arc.lo);
    const double hi = lo + width;
    if (hi > kTwoPi) {
      pieces.push_back({lo, kTwoPi});
      pieces.push_back({0.0, hi - kTwoPi});
    } else {
      pieces.push_back({lo, hi});
    }
  }
  std::sort(pieces.begin(), pieces.end(), [](const Arc& a, const Arc& b) { return a.lo < b.lo; });
  ArcSet out;
  for (const auto& p : pieces) {
    if (!out.arcs_.empty() && p.lo <= out.arcs_.back().hi) {
      out.arcs_.back().hi = std::max(out.arcs_.back().hi, p.hi);
    } else {
      out.arcs_.push_back(p);
    }
  }
  for (const auto& a : out.arcs_) out.measure_ += a.hi - a.lo;
  if (out.measure_ >= kTwoPi) return full();
  return out;
}

ArcSet ArcSet::full() {
  ArcSet out;
  out.arcs_.push_back({0.0, kTwoPi});
  out.measure_ = kTwoPi;
  return out;
}

ArcSet ArcSet::centered(double measure) {
  if (measure >= kTwoPi) return full();
  ArcSet out;
  if (!(measure > 0.0)) return out;
  const double half = 0.5 * measure;
  out.arcs_.push_back({0.0, half});
  out.arcs_.push_back({kTwoPi - half, kTwoPi});
  out.measure_ = measure;
  return out;
}

bool ArcSet::is_full() const noexcept { return measure_ >= kTwoPi; }

bool ArcSet::is_centered() const noexcept {
  if (arcs_.empty() || is_full()) return true;
  if (arcs_.size() != 2) return false;
  return arcs_[0].lo == 0.0 && arcs_[1].hi == kTwoPi &&
         std::abs(arcs_[0].hi - (kTwoPi - arcs_[1].lo)) <= 1e-12;
}

bool ArcSet::contains(double theta) const noexcept {
  const double t = wrap_angle(theta);
  return std::any_of(arcs_.begin(), arcs_.end(), [t](const Arc& a) { return a.lo <= t && t <= a.hi; });
}

void RadialProfile::validate() const {
  double previous = inner_radius;
  for (std::size_t i = 0; i < slices.size(); ++i) {
    const double t = slices[i].t;
    if (!(std::isfinite(t) && t > 0.0)) throw Error(ErrorKind::input, "slice radius must be positive");
    if (i > 0 ? !(t > previous) : t < previous) {
      throw Error(ErrorKind::input, "slice radii must be strictly increasing");
    }
    previous = t;
  }
  if (!slices.empty() && slices.back().t > outer_radius) {
    throw Error(ErrorKind::input, "slice radius beyond the outer radius");
  }
}

// ---------------------------------------------------------- BoundaryCurve

BoundaryCurve::BoundaryCurve(std::vector<Complex> points, double tolerance)
    : points_(std::move(points)), tolerance_(tolerance) {
  if (points_.size() < 16) throw Error(ErrorKind::geometry, "boundary curve needs at least 16 vertices");
  if (points_.front() == points_.back()) {
    throw Error(ErrorKind::geometry, "boundary curve must not repeat its first vertex");
  }
  double extent = 0.0;
  for (const auto& p : points_) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) {
      throw Error(ErrorKind::geometry, "boundary vertex is not finite");
    }
    extent = std::max({extent, std::abs(p.real()), std::abs(p.imag())});
  }
  if (tolerance_ <= 0.0) tolerance_ = 1e-10 * std::max(extent, 1.0);
  if (has_self_intersection_grid(points_, tolerance_)) {
    throw Error(ErrorKind::geometry, "boundary curve is not simple");
  }
}

double BoundaryCurve::signed_area() const noexcept {
  const Complex origin = points_.front();
  double twice = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    twice += cross(points_[i] - origin, points_[(i + 1) % points_.size()] - origin);
  }
  return 0.5 * twice;
}

double BoundaryCurve::distance_to(Complex w) const noexcept {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < points_.size(); ++i) {
    best = std::min(best, point_segment_distance(w, points_[i], points_[(i + 1) % points_.size()]));
  }
  return best;
}

double BoundaryCurve::length() const noexcept {
  double total = 0.0;
  for (std::size_t i = 0; i < points_.size(); ++i) total += std::abs(points_[(i + 1) % points_.size()] - points_[i]);
  return total;
}

bool has_self_intersection_brute_force(std::span<const Complex> pts, double tol) {
  const std::size_t n = pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (adjacent(i, j, n)) continue;
      if (segment_distance(pts[i], pts[(i + 1) % n], pts[j], pts[(j + 1) % n]) <= tol) return true;
    }
  }
  return false;
}

BoundaryCurve boundary_from_series(const PowerSeries& f, std::size_t vertices) {
  std::vector<Complex> pts(vertices);
  for (std::size_t j = 0; j < vertices; ++j) {
    const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(vertices);
    pts[j] = eval(f, std::polar(f.rho(), theta));
  }
  try {
    return BoundaryCurve(std::move(pts));
  } catch (const Error& e) {
    throw Error(ErrorKind::geometry, std::string("non-univalent input: ") + e.what());
  }
}

int winding_number(const BoundaryCurve& c, Complex w) {
  if (c.distance_to(w) <= c.tolerance()) {
    throw Error(ErrorKind::geometry, "winding number requested too close to the curve");
  }
  return raw_winding(c.points(), w);
}

ArcSet slice_at_radius(const BoundaryCurve& c, double t, SliceDiagnostics* diagnostics) {
  if (!(t > 0.0)) throw Error(ErrorKind::input, "slice radius must be positive");
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  const double t2 = t * t;
  const double contact = kContactTolerance * t;
  bool degenerate = false;

  // All parameters s in [0, 1) where |p + s d| = t, one segment at a time.
  std::vector<double> angles;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex p = pts[i];
    const Complex d = pts[(i + 1) % n] - p;
    if (std::abs(std::abs(p) - t) <= contact) degenerate = true;
    const double qa = std::norm(d);
    const double qb = 2.0 * (p * std::conj(d)).real();
    const double qc = std::norm(p) - t2;
    if (qa == 0.0) continue;
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    if (root <= contact * std::sqrt(qa)) degenerate = true;
    const double q = -0.5 * (qb + std::copysign(root, qb));
    double roots[2] = {q / qa, q != 0.0 ? qc / q : q / qa};
    if (roots[0] > roots[1]) std::swap(roots[0], roots[1]);
    for (int k = 0; k < 2; ++k) {
      const double s = roots[k];
      if (s >= 0.0 && s < 1.0 && !(k == 1 && s == roots[0])) angles.push_back(wrap_angle(std::arg(p + s * d)));
    }
  }
  if (diagnostics != nullptr) diagnostics->degenerate_contact = degenerate;

  auto member = [&](double theta) { return raw_winding(pts, std::polar(t, theta)) == 1; };
  if (angles.empty()) return member(0.0) ? ArcSet::full() : ArcSet{};

  std::sort(angles.begin(), angles.end());
  std::vector<Arc> arcs;
  const std::size_t k = angles.size();
  for (std::size_t i = 0; i < k; ++i) {
    const double lo = angles[i];
    const double hi = i + 1 < k ? angles[i + 1] : angles[0] + kTwoPi;
    if (hi <= lo) continue;
    if (!member(0.5 * (lo + hi))) continue;
    if (!arcs.empty() && arcs.back().hi == lo) {
      arcs.back().hi = hi;
    } else {
      arcs.push_back({lo, hi});
    }
  }
  return ArcSet::from_arcs(std::move(arcs));
}

RadialProfile radial_profile(const BoundaryCurve& c, std::size_t slices, SliceDiagnostics* diagnostics) {
  if (slices < 16) throw Error(ErrorKind::input, "radial profile needs at least 16 slices");
  RadialProfile p;
  p.contains_origin = winding_number(c, Complex{0.0, 0.0}) == 1;
  double outer = 0.0;
  for (const auto& v : c.points()) outer = std::max(outer, std::abs(v));
  p.outer_radius = outer;
  p.inner_radius = p.contains_origin ? 0.0 : c.distance_to(Complex{0.0, 0.0});
  p.inner_measure = p.contains_origin ? kTwoPi : 0.0;
  p.outer_measure = 0.0;

  const double mid = 0.5 * (p.outer_radius + p.inner_radius);
  const double half = 0.5 * (p.outer_radius - p.inner_radius);
  p.slices.resize(slices);
  for (std::size_t k = 0; k < slices; ++k) {
    const double node = std::cos(kPi * (2.0 * static_cast<double>(k) + 1.0) / (2.0 * static_cast<double>(slices)));
    const double t = mid - half * node;
    SliceDiagnostics local;
    p.slices[k] = RadialSlice{t, slice_at_radius(c, t, &local)};
    if (diagnostics != nullptr && local.degenerate_contact) diagnostics->degenerate_contact = true;
  }
  p.validate();
  return p;
}

RadialProfile symmetrize(const RadialProfile& p) {
  RadialProfile out = p;
  for (auto& slice : out.slices) slice.arcs = ArcSet::centered(slice.arcs.measure());
  return out;
}

BoundaryCurve symmetrized_boundary(const RadialProfile& p) {
  if (p.contains_origin) throw Error(ErrorKind::scope, "symmetrized boundary: domain contains the origin");
  for (const auto& s : p.slices) {
    const double alpha = s.arcs.measure();
    if (!(alpha > 0.0) || alpha >= kTwoPi) {
      throw Error(ErrorKind::scope, "symmetrized boundary: empty or full slice inside the support");
    }
  }
  if (p.inner_measure >= kTwoPi || p.outer_measure >= kTwoPi) {
    throw Error(ErrorKind::scope, "symmetrized boundary: full end slice");
  }
  std::vector<Complex> pts;
  pts.reserve(2 * p.slices.size() + 4);
  auto end_cap = [&](double t, double alpha, double sign) {
    if (alpha > 0.0) {
      pts.push_back(std::polar(t, sign * 0.5 * alpha));
      pts.push_back(std::polar(t, -sign * 0.5 * alpha));
    } else {
      pts.push_back({t, 0.0});
    }
  };
  end_cap(p.inner_radius, p.inner_measure, 1.0);
  for (const auto& s : p.slices) pts.push_back(std::polar(s.t, -0.5 * s.arcs.measure()));
  end_cap(p.outer_radius, p.outer_measure, -1.0);
  for (auto it = p.slices.rbegin(); it != p.slices.rend(); ++it) pts.push_back(std::polar(it->t, 0.5 * it->arcs.measure()));
  return BoundaryCurve(std::move(pts));
}

double area_by_profile(const RadialProfile& p) {
  std::vector<std::pair<double, double>> nodes;
  nodes.reserve(p.slices.size() + 2);
  nodes.emplace_back(p.inner_radius, p.inner_measure);
  for (const auto& s : p.slices) nodes.emplace_back(s.t, s.arcs.measure());
  nodes.emplace_back(p.outer_radius, p.outer_measure);
  double area = 0.0;
  for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
    const auto [t0, a0] = nodes[i];
    const auto [t1, a1] = nodes[i + 1];
    area += 0.5 * (t1 - t0) * (t0 * a0 + t1 * a1);
  }
  return area;
}

double area_by_shoelace(const BoundaryCurve& c) {
  const double area = c.signed_area();
  if (area < 0.0) throw Error(ErrorKind::geometry, "boundary curve is clockwise");
  return area;
}

BoundaryCurve resample_by_arclength(const BoundaryCurve& c, std::size_t count) {
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  std::vector<double> cumulative(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + std::abs(pts[(i + 1) % n] - pts[i]);
  const double total = cumulative[n];
  std::vector<Complex> out(count);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double target = total * static_cast<double>(k) / static_cast<double>(count);
    while (seg + 1 < n && cumulative[seg + 1] <= target) ++seg;
    const double len = cumulative[seg + 1] - cumulative[seg];
    const double s = len > 0.0 ? (target - cumulative[seg]) / len : 0.0;
    out[k] = pts[seg] + s * (pts[(seg + 1) % n] - pts[seg]);
  }
  return BoundaryCurve(std::move(out), c.tolerance());
}

}  // namespace circsym
