#include "circsym/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <thread>

#include "circsym/error.hpp"

namespace circsym {

namespace {

// Roundoff accumulated through a full zipper composition, in units of machine epsilon.
constexpr double kCompositionNoise = 1e3;
// Base-resolution error bound from a base/doubled difference; exact for first-order convergence.
constexpr double kRichardsonFactor = 2.0;
constexpr double kConstantTermTol = 1e-6;
constexpr double kResidualFloor = 1e-8;

template <class Fn>
auto in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
  }
}

struct Resolved {
  PowerSeries A;
  PowerSeries A_resolved;        // A with coefficients below their rounding floor set to zero
  std::size_t resolved_degree = 0;
  std::vector<Complex> samples;  // F on the extraction circle
  AreaTriple areas;
  std::vector<IntegralMean> means_F;
  double sample_scale = 0.0;  // bound on |F| over the extraction circle
  bool degenerate = false;
};

Resolved resolve(const PowerSeries& f, const PipelineConfig& cfg) {
  const auto curve = in_stage("boundary", [&] { return boundary_from_series(f, cfg.boundary_vertices); });
  SliceDiagnostics diagnostics;
  const auto profile = in_stage("profile", [&] {
    auto p = radial_profile(curve, cfg.slices, &diagnostics);
    if (p.contains_origin) throw Error(ErrorKind::scope, "image domain contains the origin");
    return p;
  });
  const auto symmetric = symmetrize(profile);
  const auto traced = in_stage("symmetrize", [&] { return symmetrized_boundary(symmetric); });
  const auto zipper_boundary =
      in_stage("symmetrize", [&] { return resample_by_arclength(traced, cfg.boundary_vertices); });
  const auto map = in_stage("map", [&] { return build_map(zipper_boundary, std::abs(f[0])); });
  const std::size_t count = cfg.effective_samples();
  std::vector<Complex> samples(count);
  auto A = in_stage("series", [&] {
    for (std::size_t j = 0; j < count; ++j) {
      const double theta = kTwoPi * static_cast<double>(j) / static_cast<double>(count);
      samples[j] = eval_map(map, std::polar(cfg.extract_radius, theta));
    }
    return coefficients_from_samples(samples, cfg.extract_radius, cfg.degree);
  });

  double scale = 0.0;
  for (const auto& v : samples) scale = std::max(scale, std::abs(v));
  // Above some degree the 1/r^n amplification of rounding noise exceeds the coefficients themselves.
  std::vector<Complex> kept = A.coefficients();
  std::size_t resolved_degree = 0;
  double floor = kCompositionNoise * std::numeric_limits<double>::epsilon() * scale;
  for (std::size_t n = 0; n < kept.size(); ++n, floor /= cfg.extract_radius) {
    if (std::abs(kept[n]) > floor) {
      resolved_degree = n;
    } else {
      kept[n] = 0.0;
    }
  }
  PowerSeries A_resolved(std::move(kept));
  Resolved out{std::move(A), std::move(A_resolved), resolved_degree, std::move(samples), {}, {}, scale,
               diagnostics.degenerate_contact};
  in_stage("areas", [&] {
    out.areas.dirichlet_f = dirichlet_area(f);
    out.areas.dirichlet_F = dirichlet_area(out.A_resolved);
    out.areas.profile = area_by_profile(profile);
    out.areas.profile_symmetrized = area_by_profile(symmetric);
    out.areas.shoelace = area_by_shoelace(curve);
    out.areas.shoelace_symmetrized = area_by_shoelace(traced);
    return 0;
  });
  in_stage("means", [&] {
    for (const auto& w : cfg.weights) {
      for (double r : cfg.mean_radii) out.means_F.push_back(integral_mean(out.A_resolved, w, r));
    }
    return 0;
  });
  return out;
}

double max_abs_tail(const PowerSeries& s) {
  double best = 0.0;
  for (std::size_t n = 1; n <= s.degree(); ++n) best = std::max(best, std::abs(s[n]));
  return best;
}

// 2 pi max_j |Phi(log|F_1|) - Phi(log|F_2|)| over the quadrature nodes: bounds the difference of the two means.
double weighted_gap(const PowerSeries& F1, const PowerSeries& F2, const MeanWeight& w, double r) {
  const std::size_t nodes = default_quadrature_nodes(std::max(F1.degree(), F2.degree()));
  double gap = 0.0;
  for (std::size_t j = 0; j < nodes; ++j) {
    const Complex z = std::polar(r, kTwoPi * static_cast<double>(j) / static_cast<double>(nodes));
    gap = std::max(gap, std::abs(w.apply_to_modulus(std::abs(eval(F1, z))) - w.apply_to_modulus(std::abs(eval(F2, z)))));
  }
  return kTwoPi * gap;
}

double min_modulus_on_disk(const PowerSeries& f) {
  constexpr int kRadii = 64;
  constexpr int kAngles = 256;
  double best = std::numeric_limits<double>::infinity();
  for (int i = 0; i <= kRadii; ++i) {
    const double r = f.rho() * static_cast<double>(i) / kRadii;
    for (int j = 0; j < kAngles; ++j) {
      best = std::min(best, std::abs(eval(f, std::polar(r, kTwoPi * j / kAngles))));
      if (i == 0) break;
    }
  }
  return best;
}

}  // namespace

const char* to_string(Classification c) noexcept {
  switch (c) {
    case Classification::equality_suspected: return "equality-suspected";
    case Classification::witness_found: return "witness-found";
    case Classification::inconclusive: return "inconclusive";
  }
  return "unknown";
}

std::size_t PipelineConfig::effective_samples() const noexcept {
  return samples > 0 ? samples : std::max<std::size_t>(256, 8 * degree);
}

void PipelineConfig::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::input, "config: " + what); };
  if (!(rho > 0.0 && rho <= 1.0)) fail("rho must lie in (0, 1]");
  if (boundary_vertices < 16) fail("boundary vertices must be at least 16");
  if (slices < 16) fail("slices must be at least 16");
  if (degree < 1) fail("degree must be at least 1");
  if (!(extract_radius > 0.0 && extract_radius < 1.0)) fail("extraction radius must lie in (0, 1)");
  if (effective_samples() < 2 * degree + 2) fail("samples must be at least 2 degree + 2");
  if (!(identity_rel_tol > 0.0)) fail("identity tolerance must be positive");
  if (delta < 0.0) fail("delta must be positive");
  if (!(reality_tol > 0.0)) fail("reality tolerance must be positive");
  for (double r : mean_radii) {
    if (!(r > 0.0 && r < 1.0)) fail("mean radii must lie in (0, 1)");
  }
}

PipelineConfig PipelineConfig::doubled() const {
  PipelineConfig out = *this;
  out.boundary_vertices *= 2;
  out.slices *= 2;
  out.samples = 2 * effective_samples();
  return out;
}

AreaIdentityCheck check_area_identity(double lhs, double rhs, double error_estimate, double rel_tol) {
  if (lhs == 0.0) throw Error(ErrorKind::inapplicable, "area identity undefined for a constant map");
  AreaIdentityCheck out;
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = std::abs(lhs - rhs) / lhs;
  out.error_estimate = error_estimate;
  out.pass = out.residual < rel_tol;
  if (error_estimate >= 0.0) {
    out.pass = out.pass && out.residual <= std::max(3.0 * error_estimate, kResidualFloor);
  }
  return out;
}

HaymanCheck check_hayman(const PowerSeries& a, const PowerSeries& A, double err) {
  HaymanCheck out;
  out.abs_a1 = std::abs(a[1]);
  out.A1 = A[1].real();
  out.err = err;
  out.pass = out.A1 >= out.abs_a1 - err;
  return out;
}

std::vector<MeanRow> check_means(const PowerSeries& f, const PowerSeries& F, const PipelineConfig& cfg,
                                 const std::vector<double>& err_F) {
  std::vector<MeanRow> rows;
  std::size_t i = 0;
  for (const auto& w : cfg.weights) {
    for (double r : cfg.mean_radii) {
      const auto mf = integral_mean(f, w, r);
      const auto mF = integral_mean(F, w, r);
      MeanRow row;
      row.weight = w;
      row.r = r;
      row.mean_f = mf.value;
      row.mean_F = mF.value;
      row.err = i < err_F.size() ? err_F[i] : 0.0;
      row.underflow = mf.underflow || mF.underflow;
      row.pass = row.mean_f <= row.mean_F + row.err;
      rows.push_back(row);
      ++i;
    }
  }
  return rows;
}

std::optional<Witness> find_witness(const std::vector<CoefficientRow>& table, double delta) {
  std::optional<std::size_t> best1, best2;
  double margin1 = 0.0, margin2 = 0.0;
  for (const auto& row : table) {
    if (row.n < 1) continue;
    const double threshold = delta + row.err;
    const double up = row.abs_A - row.abs_a;
    const double down = row.abs_a - row.abs_A;
    if (up > threshold && (!best1 || up > margin1)) {
      best1 = row.n;
      margin1 = up;
    }
    if (down > threshold && (!best2 || down > margin2)) {
      best2 = row.n;
      margin2 = down;
    }
  }
  if (!best1 || !best2) return std::nullopt;
  return Witness{*best1, *best2, margin1, margin2};
}

Classification classify(const std::vector<CoefficientRow>& table, const std::optional<Witness>& witness) {
  if (witness) return Classification::witness_found;
  const bool equal = std::all_of(table.begin(), table.end(),
                                 [](const CoefficientRow& r) { return std::abs(r.diff()) < 3.0 * r.err; });
  return equal ? Classification::equality_suspected : Classification::inconclusive;
}

VerificationReport run_pipeline(const PowerSeries& f, const PipelineConfig& cfg) {
  in_stage("config", [&] {
    cfg.validate();
    return 0;
  });
  if (std::abs(f[0]) == 0.0) throw Error(ErrorKind::inapplicable, "input: f(0) must be nonzero");

  VerificationReport report;
  report.config = cfg;
  report.input_coefficients = f.coefficients();
  report.input_rho = f.rho();
  report.working_rho = std::min(cfg.rho, f.rho());
  const PowerSeries work = f.dilated(report.working_rho);

  const Resolved base = resolve(work, cfg);
  std::optional<Resolved> fine;
  if (cfg.double_check) fine = resolve(work, cfg.doubled());
  report.double_checked = fine.has_value();

  const double tail = max_abs_tail(work);
  report.delta = cfg.delta > 0.0 ? cfg.delta : (tail > 0.0 ? 1e-3 * tail : 1e-3);
  const double eps = std::numeric_limits<double>::epsilon();

  // Coefficient table with per-row error estimates.
  const PowerSeries& A = base.A;
  report.mapped_coefficients = A.coefficients();
  report.resolved_degree = base.resolved_degree;
  // Cauchy bound: the DFT turns max_j |F_base - F_fine| at shared nodes into a bound on |dA_n| r^n.
  double sample_gap = 0.0;
  if (fine) {
    const std::size_t stride = fine->samples.size() / base.samples.size();
    for (std::size_t j = 0; j < base.samples.size(); ++j) {
      sample_gap = std::max(sample_gap, std::abs(base.samples[j] - fine->samples[j * stride]));
    }
  }
  std::vector<CoefficientRow> fine_rows;
  double inv_r_power = 1.0;
  for (std::size_t n = 0; n <= cfg.degree; ++n) {
    CoefficientRow row{n, n <= work.degree() ? std::abs(work[n]) : 0.0, std::abs(A[n])};
    row.err = (kCompositionNoise * eps * base.sample_scale + kRichardsonFactor * sample_gap) * inv_r_power;
    if (fine) fine_rows.push_back({n, row.abs_a, std::abs(fine->A[n]), 0.0});
    report.table.push_back(row);
    inv_r_power /= cfg.extract_radius;
  }

  report.areas = base.areas;
  double area_err = -1.0;
  if (fine) {
    area_err = kRichardsonFactor * std::abs(base.areas.dirichlet_F - fine->areas.dirichlet_F) / base.areas.dirichlet_f;
  }
  report.area_identity =
      in_stage("area", [&] { return check_area_identity(base.areas.dirichlet_f, base.areas.dirichlet_F, area_err,
                                                        cfg.identity_rel_tol); });
  if (fine) {
    report.residual_doubled = std::abs(fine->areas.dirichlet_f - fine->areas.dirichlet_F) / fine->areas.dirichlet_f;
  }

  report.hayman = check_hayman(work, A, report.table[1].err);
  report.constant_term.abs_a0 = std::abs(work[0]);
  report.constant_term.A0 = A[0].real();
  report.constant_term.pass =
      std::abs(report.constant_term.A0 - report.constant_term.abs_a0) < kConstantTermTol && std::abs(A[0].imag()) < kConstantTermTol;

  for (const auto& c : A.coefficients()) {
    report.reality.max_imag = std::max(report.reality.max_imag, std::abs(c.imag()));
    report.reality.max_abs = std::max(report.reality.max_abs, std::abs(c));
  }
  report.reality.pass = report.reality.max_imag < cfg.reality_tol * report.reality.max_abs;

  std::vector<double> mean_err(base.means_F.size(), 0.0);
  for (std::size_t i = 0; i < mean_err.size(); ++i) {
    mean_err[i] = kCompositionNoise * eps * std::abs(base.means_F[i].value);
  }
  if (fine) {
    std::size_t i = 0;
    for (const auto& w : cfg.weights) {
      for (double r : cfg.mean_radii) {
        mean_err[i++] += kRichardsonFactor * weighted_gap(base.A_resolved, fine->A_resolved, w, r);
      }
    }
  }
  report.means = in_stage("means", [&] { return check_means(work, base.A_resolved, cfg, mean_err); });
  for (const auto& row : report.means) report.quadrature_underflow = report.quadrature_underflow || row.underflow;

  if (min_modulus_on_disk(work) > 0.0) {
    report.littlewood.applicable = true;
    report.littlewood.rows = littlewood_check(work);
  } else {
    report.littlewood.reason = "f vanishes on the sampled disk";
  }

  report.witness = find_witness(report.table, report.delta);
  if (report.witness && fine) report.witness_confirmed = find_witness(fine_rows, report.delta).has_value();
  if (report.witness && !report.witness_confirmed) {
    report.classification = Classification::inconclusive;
  } else {
    report.classification = classify(report.table, report.witness);
  }
  report.degenerate_contact = base.degenerate || (fine && fine->degenerate);
  return report;
}

// ------------------------------------------------------------------ sweeps

PowerSeries FamilySpec::member(double p) const {
  switch (kind) {
    case Kind::quadratic: return PowerSeries({Complex{a0, 0.0}, Complex{a1, 0.0}, std::polar(a2, p)});
    case Kind::rotated_disk: return PowerSeries({std::polar(a0, p), Complex{a1, 0.0}});
    case Kind::shifted_disk: return PowerSeries({Complex{p, 0.0}, Complex{a1, 0.0}});
  }
  throw Error(ErrorKind::input, "unknown family");
}

const char* FamilySpec::kind_name(Kind k) noexcept {
  switch (k) {
    case Kind::quadratic: return "quadratic";
    case Kind::rotated_disk: return "rotated_disk";
    case Kind::shifted_disk: return "shifted_disk";
  }
  return "unknown";
}

std::vector<SweepRow> sweep(const FamilySpec& family, const PipelineConfig& cfg, unsigned threads) {
  const std::size_t count = family.grid.size();
  std::vector<SweepRow> rows(count);
  if (count == 0) return rows;

  auto run_member = [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.index = i;
    row.parameter = family.grid[i];
    try {
      const auto report = run_pipeline(family.member(row.parameter), cfg);
      row.classification = report.classification;
      if (report.witness_confirmed) row.witness = report.witness;
      row.residual = report.area_identity.residual;
      row.max_abs_diff = 0.0;
      for (const auto& r : report.table) row.max_abs_diff = std::max(row.max_abs_diff, std::abs(r.diff()));
    } catch (const Error& e) {
      row.error_kind = to_string(e.kind());
      row.error = e.what();
    } catch (const std::exception& e) {
      row.error_kind = to_string(ErrorKind::numerical);
      row.error = e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) run_member(i);
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

}  // namespace circsym
