// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "circsym/conformal_map.hpp"
#include "circsym/domain.hpp"
#include "circsym/harness.hpp"

using namespace circsym;
using std::numbers::pi;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const char* name, bool pass, const std::string& detail) {
  std::printf("%s criterion %d (%s): %s\n", pass ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

Complex mobius_oracle(Complex z) { return 3.0 + (z + 0.5) / (1.0 + 0.5 * z); }

double mobius_coefficient(int n) { return n == 0 ? 3.5 : (n % 2 == 1 ? 3.0 : -3.0) / std::ldexp(1.0, n + 1); }

std::vector<Complex> circle(Complex center, double radius, std::size_t count) {
  std::vector<Complex> pts(count);
  for (std::size_t j = 0; j < count; ++j) pts[j] = center + std::polar(radius, 2 * pi * double(j) / double(count));
  return pts;
}

void criterion_disk_oracle() {
  const auto t0 = Clock::now();
  const auto m = build_map(BoundaryCurve(circle(3.0, 1.0, 1024)), 3.5);
  double sup = 0.0;
  for (int i = 0; i <= 45; ++i) {
    const double r = 0.02 * i;
    const int angles = i == 0 ? 1 : 256;
    for (int j = 0; j < angles; ++j) {
      const Complex z = std::polar(r, 2 * pi * j / angles);
      sup = std::max(sup, std::abs(eval_map(m, z) - mobius_oracle(z)));
    }
  }
  const auto A = series_of_map(m, 0.8, 256, 8);
  double coef = 0.0;
  for (int n = 0; n <= 8; ++n) coef = std::max(coef, std::abs(A[n] - mobius_coefficient(n)));
  const double elapsed = seconds_since(t0);
  report(1, "disk oracle", sup < 1e-3 && coef < 1e-3 && elapsed < 10.0,
         fmt("sup error %.3g on |z|<=0.9, max |A_n - oracle| %.3g for n<=8, %.2f s", sup, coef, elapsed));
}

struct Member {
  double beta;
  VerificationReport report;
  double seconds;
};

std::vector<Member> run_corpus() {
  std::vector<Member> out;
  for (int k = 0; k <= 4; ++k) {
    const double beta = k * pi / 4;
    const auto t0 = Clock::now();
    auto r = run_pipeline(PowerSeries({4.0, 1.0, std::polar(0.4, beta)}), PipelineConfig{});
    out.push_back({beta, std::move(r), seconds_since(t0)});
  }
  return out;
}

void criterion_area_identity(const std::vector<Member>& corpus) {
  bool pass = true;
  std::ostringstream detail;
  for (const auto& m : corpus) {
    const auto& r = m.report;
    const bool ok = r.area_identity.residual < 1e-2 && r.double_checked && r.residual_doubled < r.area_identity.residual &&
                    m.seconds < 60.0;
    pass = pass && ok;
    detail << fmt("beta=%.4f residual %.3g -> %.3g (%.2f s)%s; ", m.beta, r.area_identity.residual, r.residual_doubled,
                  m.seconds, ok ? "" : " FAILED");
  }
  report(2, "area identity", pass, detail.str());
}

void criterion_area_triple(const std::vector<Member>& corpus) {
  bool pass = true;
  double worst = 0.0;
  for (const auto& m : corpus) {
    const auto& a = m.report.areas;
    const double values[] = {a.dirichlet_f, a.dirichlet_F, a.profile, a.profile_symmetrized, a.shoelace, a.shoelace_symmetrized};
    for (double x : values) {
      for (double y : values) worst = std::max(worst, std::abs(x - y) / std::max(x, y));
    }
  }
  pass = worst < 1e-2;
  report(3, "area triple", pass,
         fmt("largest pairwise relative gap among pi sum n|a_n|^2, pi sum n|A_n|^2, profile and shoelace areas of D "
             "and D*: %.3g",
             worst));
}

void criterion_witness(const std::vector<Member>& corpus) {
  int found = 0;
  std::ostringstream detail;
  for (const auto& m : corpus) {
    const auto& r = m.report;
    if (!r.witness) continue;
    const auto& w = *r.witness;
    const bool sound = w.margin1 > r.delta + r.table[w.n1].err && w.margin2 > r.delta + r.table[w.n2].err &&
                       r.witness_confirmed && r.classification == Classification::witness_found;
    if (sound) ++found;
    detail << fmt("beta=%.4f n1=%zu n2=%zu margins (%.4g, %.4g) delta %.3g errs (%.2g, %.2g)%s; ", m.beta, w.n1, w.n2,
                  w.margin1, w.margin2, r.delta, r.table[w.n1].err, r.table[w.n2].err,
                  sound ? " confirmed at doubled resolution" : " not confirmed");
  }
  report(4, "witness", found >= 1, fmt("%d of %zu members: ", found, corpus.size()) + detail.str());
}

void criterion_inequalities(const std::vector<Member>& corpus) {
  bool pass = true;
  double a0_gap = 0.0, reality = 0.0, hayman_slack = INFINITY, mean_slack = INFINITY;
  std::size_t littlewood_rows = 0;
  for (const auto& m : corpus) {
    const auto& r = m.report;
    a0_gap = std::max(a0_gap, std::abs(r.constant_term.A0 - r.constant_term.abs_a0));
    pass = pass && std::abs(r.constant_term.A0 - r.constant_term.abs_a0) < 1e-6;
    hayman_slack = std::min(hayman_slack, r.hayman.A1 - (r.hayman.abs_a1 - r.hayman.err));
    pass = pass && r.hayman.A1 >= r.hayman.abs_a1 - r.hayman.err;
    reality = std::max(reality, r.reality.max_imag / r.reality.max_abs);
    pass = pass && r.reality.max_imag < 1e-4 * r.reality.max_abs;
    int means_seen = 0;
    for (const auto& row : r.means) {
      const bool wanted = row.weight.kind == MeanWeight::Kind::exp || row.weight.kind == MeanWeight::Kind::exp2;
      if (!wanted) continue;
      ++means_seen;
      mean_slack = std::min(mean_slack, row.mean_F + row.err - row.mean_f);
      pass = pass && row.mean_f <= row.mean_F + row.err;
    }
    pass = pass && means_seen == 6;
    pass = pass && r.littlewood.applicable;
    for (const auto& row : r.littlewood.rows) {
      ++littlewood_rows;
      pass = pass && row.modulus <= row.bound;
    }
  }
  report(5, "inequalities", pass,
         fmt("max |A0-|a0|| %.3g, min Hayman slack %.4g, max |Im A|/max|A| %.3g, min means slack %.4g, %zu Littlewood rows",
             a0_gap, hayman_slack, reality, mean_slack, littlewood_rows));
}

void criterion_equality() {
  bool pass = true;
  double worst = 0.0;
  int members = 0;
  for (int k = 0; k < 8; ++k) {
    const double beta = k * pi / 4 + 0.1;
    const auto r = run_pipeline(PowerSeries({std::polar(2.0, beta), 1.0}), PipelineConfig{});
    for (const auto& row : r.table) {
      if (row.n > 16) break;
      worst = std::max(worst, std::abs(row.diff()));
    }
    pass = pass && !r.witness && r.classification == Classification::equality_suspected;
    ++members;
  }
  pass = pass && worst < 1e-3;
  report(6, "equality cases", pass,
         fmt("%d rotated disks 2e^{i beta}+z: max ||a_n|-|A_n|| %.3g for n<=16, no witness%s", members, worst,
             pass ? ", all equality-suspected" : ""));
}

void criterion_symmetrization(const char* unit_binary) {
  bool exact = true;
  for (int k = 0; k <= 4; ++k) {
    const auto p = radial_profile(boundary_from_series(PowerSeries({4.0, 1.0, std::polar(0.4, k * pi / 4)}), 1024), 512);
    const auto s = symmetrize(p);
    const auto ss = symmetrize(s);
    for (std::size_t i = 0; i < p.slices.size(); ++i) {
      exact = exact && s.slices[i].arcs.measure() == p.slices[i].arcs.measure();
      const auto& a = s.slices[i].arcs.arcs();
      const auto& b = ss.slices[i].arcs.arcs();
      exact = exact && a.size() == b.size();
      for (std::size_t j = 0; exact && j < a.size(); ++j) exact = a[j].lo == b[j].lo && a[j].hi == b[j].hi;
    }
    exact = exact && area_by_profile(p) == area_by_profile(s);
  }
  const double alpha = slice_at_radius(BoundaryCurve(circle(2.0, 1.0, 8192)), 2.0).measure();
  const double slice_err = std::abs(alpha - 2 * std::acos(7.0 / 8.0));

  const auto t0 = Clock::now();
  const int status = std::system((std::string("\"") + unit_binary + "\" > /dev/null 2>&1").c_str());
  const double unit_seconds = seconds_since(t0);
  const bool pass = exact && slice_err < 1e-6 && status == 0 && unit_seconds < 5.0;
  report(7, "symmetrization", pass,
         fmt("measures and idempotence %s on 5 profiles; |alpha(2) - 2 arccos(7/8)| %.3g; unit suite %s in %.2f s",
             exact ? "exact" : "NOT exact", slice_err, status == 0 ? "passed" : "FAILED", unit_seconds));
}

}  // namespace

int main(int argc, char** argv) {
  const char* unit_binary = argc > 1 ? argv[1] : "unit_tests";
  criterion_disk_oracle();
  const auto corpus = run_corpus();
  criterion_area_identity(corpus);
  criterion_area_triple(corpus);
  criterion_witness(corpus);
  criterion_inequalities(corpus);
  criterion_equality();
  criterion_symmetrization(unit_binary);
  std::printf("%d of 7 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
