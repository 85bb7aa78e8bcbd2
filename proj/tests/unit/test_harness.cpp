#include <cmath>
#include <numbers>
#include <random>

#include "circsym/error.hpp"
#include "circsym/harness.hpp"
#include "circsym/io.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace circsym;
using std::numbers::pi;

namespace {

PipelineConfig small_config() {
  PipelineConfig cfg;
  cfg.boundary_vertices = 256;
  cfg.slices = 128;
  cfg.degree = 16;
  return cfg;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error raised");
  return ErrorKind::numerical;
}

std::vector<CoefficientRow> table_of(std::vector<double> a, std::vector<double> A, double err) {
  std::vector<CoefficientRow> rows;
  for (std::size_t n = 0; n < a.size(); ++n) rows.push_back({n, a[n], A[n], err});
  return rows;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(PipelineConfig{}.validate());
  auto bad = [](auto edit) {
    PipelineConfig cfg;
    edit(cfg);
    return kind_of([&] { cfg.validate(); });
  };
  CHECK(bad([](PipelineConfig& c) { c.rho = 0.0; }) == ErrorKind::input);
  CHECK(bad([](PipelineConfig& c) { c.boundary_vertices = 8; }) == ErrorKind::input);
  CHECK(bad([](PipelineConfig& c) { c.slices = 4; }) == ErrorKind::input);
  CHECK(bad([](PipelineConfig& c) { c.extract_radius = 1.0; }) == ErrorKind::input);
  CHECK(bad([](PipelineConfig& c) { c.delta = -1.0; }) == ErrorKind::input);
  CHECK(bad([](PipelineConfig& c) { c.mean_radii = {1.2}; }) == ErrorKind::input);
  CHECK(PipelineConfig{}.effective_samples() == 512);
  const auto d = PipelineConfig{}.doubled();
  CHECK(d.boundary_vertices == 2048);
  CHECK(d.slices == 1024);
  CHECK(d.effective_samples() == 1024);
  CHECK(d.degree == 64);
}

TEST_CASE("witness search") {
  const auto w = find_witness(table_of({0.0, 1.0, 0.5}, {0.0, 1.2, 0.3}, 0.01), 0.05);
  REQUIRE(w);
  CHECK(w->n1 == 1);
  CHECK(w->n2 == 2);
  CHECK(w->margin1 == doctest::Approx(0.2));
  CHECK(w->margin2 == doctest::Approx(0.2));

  CHECK(!find_witness(table_of({2.0, 1.0, 0.0}, {2.0, 1.0, 0.0}, 1e-6), 1e-3));
  // Margins below delta + err do not count.
  CHECK(!find_witness(table_of({0.0, 1.0, 0.5}, {0.0, 1.05, 0.45}, 0.01), 0.05));
  // The constant term is never a witness index.
  CHECK(!find_witness(table_of({1.0, 1.0}, {2.0, 0.0}, 0.0), 0.01));
}

TEST_CASE("classification is a trichotomy consistent with the witness") {
  std::mt19937_64 rng(53);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<CoefficientRow> rows;
    for (std::size_t n = 0; n < 6; ++n) {
      const double a = u(rng);
      rows.push_back({n, a, a + 0.1 * (u(rng) - 0.5) * (trial % 3), 0.01 * u(rng)});
    }
    const auto w = find_witness(rows, 0.01);
    const auto c = classify(rows, w);
    if (w) {
      CHECK(c == Classification::witness_found);
      CHECK(rows[w->n1].diff() > 0.01 + rows[w->n1].err);
      CHECK(-rows[w->n2].diff() > 0.01 + rows[w->n2].err);
    } else {
      CHECK(c != Classification::witness_found);
    }
    bool all_close = true;
    for (const auto& r : rows) all_close = all_close && std::abs(r.diff()) < 3 * r.err;
    CHECK((c == Classification::equality_suspected) == (all_close && !w));
  }
}

TEST_CASE("area identity check") {
  CHECK(kind_of([] { check_area_identity(0.0, 0.0, 0.0, 1e-2); }) == ErrorKind::inapplicable);
  const auto ok = check_area_identity(pi, pi * (1 + 1e-4), 1e-4, 1e-2);
  CHECK(ok.residual == doctest::Approx(1e-4));
  CHECK(ok.pass);
  CHECK(!check_area_identity(pi, pi * 1.02, 0.02, 1e-2).pass);
  CHECK(!check_area_identity(pi, pi * (1 + 1e-3), 1e-5, 1e-2).pass);
}

TEST_CASE("Hayman check") {
  const PowerSeries a({2.0, 1.0});
  CHECK(check_hayman(a, PowerSeries({2.0, 1.2}), 0.0).pass);
  CHECK(check_hayman(a, PowerSeries({2.0, 0.99}), 0.02).pass);
  CHECK(!check_hayman(a, PowerSeries({2.0, 0.9}), 0.02).pass);
}

TEST_CASE("integral means table") {
  PipelineConfig cfg;
  cfg.degree = 4;
  const PowerSeries f({4.0, 1.0, Complex(0.0, 0.4)});
  const auto same = check_means(f, f, cfg);
  CHECK(same.size() == 6);
  for (const auto& row : same) {
    CHECK(row.mean_f == row.mean_F);
    CHECK(row.pass);
  }
  const PowerSeries F({4.0, 1.1, 0.3});
  for (const auto& row : check_means(f, F, cfg)) {
    if (row.weight.kind != MeanWeight::Kind::exp2) continue;
    double pf = 0.0, pF = 0.0;
    for (std::size_t n = 0; n <= 2; ++n) {
      pf += std::norm(f[n]) * std::pow(row.r, 2.0 * double(n));
      pF += std::norm(F[n]) * std::pow(row.r, 2.0 * double(n));
    }
    CHECK(row.mean_f == doctest::Approx(2 * pi * pf).epsilon(1e-12));
    CHECK(row.mean_F == doctest::Approx(2 * pi * pF).epsilon(1e-12));
  }
}

TEST_CASE("disk is an equality case") {
  const auto r = run_pipeline(PowerSeries({2.0, 1.0}), small_config());
  CHECK(r.classification == Classification::equality_suspected);
  CHECK(!r.witness);
  CHECK(r.area_identity.residual < 1e-3);
  for (const auto& row : r.table) CHECK(std::abs(row.diff()) < 1e-3);
  CHECK(r.constant_term.pass);
}

TEST_CASE("rotated disk matches the centered one") {
  const auto r = run_pipeline(PowerSeries({std::polar(2.0, pi / 4), 1.0}), small_config());
  CHECK(r.classification == Classification::equality_suspected);
  CHECK(r.hayman.A1 == doctest::Approx(1.0).epsilon(1e-3));
  for (const auto& row : r.table) CHECK(std::abs(row.diff()) < 1e-3);
}

TEST_CASE("Mobius disk reproduces its own coefficients") {
  std::vector<Complex> c(41);
  for (int n = 0; n <= 40; ++n) c[n] = oracle::mobius_coefficient(n) + (n == 0 ? 3.0 : 0.0);
  const auto r = run_pipeline(PowerSeries(c), small_config());
  for (int n = 0; n <= 16; ++n) CHECK(std::abs(r.mapped_coefficients[n] - c[n]) < 1e-3);
  CHECK(r.classification != Classification::witness_found);
}

TEST_CASE("quadratic image produces a confirmed witness") {
  const auto r = run_pipeline(PowerSeries({4.0, 1.0, Complex(0.0, 0.4)}), small_config());
  CHECK(r.area_identity.residual < 1e-2);
  CHECK(r.residual_doubled < r.area_identity.residual);
  CHECK(r.area_identity.pass);
  REQUIRE(r.witness);
  CHECK(r.witness_confirmed);
  CHECK(r.classification == Classification::witness_found);
  CHECK(r.hayman.pass);
  CHECK(r.constant_term.pass);
  CHECK(r.reality.pass);
  for (const auto& m : r.means) CHECK(m.pass);
  CHECK(r.littlewood.applicable);
  for (const auto& row : r.littlewood.rows) CHECK(row.pass);
  const double lhs = r.areas.dirichlet_f;
  for (double a : {r.areas.dirichlet_F, r.areas.profile, r.areas.profile_symmetrized, r.areas.shoelace,
                   r.areas.shoelace_symmetrized}) {
    CHECK(std::abs(a - lhs) / lhs < 1e-2);
  }
  CHECK(r.areas.profile == r.areas.profile_symmetrized);
}

TEST_CASE("pipeline is deterministic") {
  const PowerSeries f({4.0, 1.0, std::polar(0.4, 1.0)});
  CHECK(io::report_to_json(run_pipeline(f, small_config())) == io::report_to_json(run_pipeline(f, small_config())));
}

TEST_CASE("pipeline errors name the stage") {
  try {
    run_pipeline(PowerSeries({0.5, 1.0}), small_config());
    FAIL("expected a scope error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::scope);
    CHECK(std::string(e.what()).find("profile") != std::string::npos);
  }
  CHECK(kind_of([] { run_pipeline(PowerSeries({0.0, 1.0}), small_config()); }) == ErrorKind::inapplicable);
  CHECK(kind_of([] { run_pipeline(PowerSeries({2.0, 1.0, 0.9}), small_config()); }) == ErrorKind::geometry);
}

TEST_CASE("sweeps") {
  auto cfg = small_config();
  cfg.degree = 8;
  FamilySpec empty;
  CHECK(sweep(empty, cfg).empty());

  FamilySpec shifted;
  shifted.kind = FamilySpec::Kind::shifted_disk;
  shifted.grid = {2.0, 0.5, 3.0};
  const auto rows = sweep(shifted, cfg, 2);
  REQUIRE(rows.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(rows[i].index == i);
    CHECK(rows[i].parameter == shifted.grid[i]);
  }
  CHECK(rows[0].classification == Classification::equality_suspected);
  CHECK(!rows[1].classification);
  CHECK(rows[1].error_kind == "scope");
  CHECK(rows[2].classification == Classification::equality_suspected);

  FamilySpec rotated;
  rotated.kind = FamilySpec::Kind::rotated_disk;
  rotated.a0 = 2.0;
  rotated.grid = {0.0, 1.0, 2.5};
  for (const auto& row : sweep(rotated, cfg, 1)) CHECK(row.classification == Classification::equality_suspected);
}
