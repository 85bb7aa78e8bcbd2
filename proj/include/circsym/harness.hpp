#pragma once

#include <optional>
#include <string>
#include <vector>

#include "circsym/conformal_map.hpp"
#include "circsym/domain.hpp"
#include "circsym/power_series.hpp"

namespace circsym {

inline constexpr int kReportSchemaVersion = 1;

struct PipelineConfig {
  double rho = 1.0;                    // working radius; f is replaced by f(rho z)
  std::size_t boundary_vertices = 1024;
  std::size_t slices = 512;
  std::size_t degree = 64;
  double extract_radius = 0.8;
  std::size_t samples = 0;             // 0 selects max(256, 8 degree)
  double identity_rel_tol = 1e-2;
  double delta = 0.0;                  // 0 selects 1e-3 max_{n>=1} |a_n|
  double reality_tol = 1e-4;           // relative to max |A_n|
  std::vector<MeanWeight> weights{MeanWeight::exp(), MeanWeight::exp2()};
  std::vector<double> mean_radii{0.3, 0.6, 0.9};
  bool double_check = true;

  std::size_t effective_samples() const noexcept;
  /// Throws ErrorKind::input when a resolution or tolerance is out of range.
  void validate() const;
  /// Boundary vertices, slices and samples doubled; degree and tolerances unchanged.
  PipelineConfig doubled() const;
};

struct CoefficientRow {
  std::size_t n;
  double abs_a;
  double abs_A;
  double err = 0.0;  // error estimate of abs_A

  double diff() const noexcept { return abs_A - abs_a; }
};

struct AreaIdentityCheck {
  double lhs = 0.0;  // pi sum n |a_n|^2
  double rhs = 0.0;  // pi sum n |A_n|^2
  double residual = 0.0;
  double error_estimate = 0.0;
  bool pass = false;
};

struct AreaTriple {
  double dirichlet_f = 0.0;
  double dirichlet_F = 0.0;
  double profile = 0.0;              // integral of t |D(t)| over the profile of D
  double profile_symmetrized = 0.0;  // the same integral over D*
  double shoelace = 0.0;             // polygon area of the sampled boundary of D
  double shoelace_symmetrized = 0.0; // polygon area of the traced boundary of D*
};

struct HaymanCheck {
  double abs_a1 = 0.0;
  double A1 = 0.0;
  double err = 0.0;
  bool pass = false;
};

struct ConstantTermCheck {
  double abs_a0 = 0.0;
  double A0 = 0.0;
  bool pass = false;
};

struct RealityCheck {
  double max_imag = 0.0;
  double max_abs = 0.0;
  bool pass = false;
};

struct MeanRow {
  MeanWeight weight;
  double r = 0.0;
  double mean_f = 0.0;
  double mean_F = 0.0;
  double err = 0.0;
  bool underflow = false;
  bool pass = false;

  double margin() const noexcept { return mean_F - mean_f; }
};

struct LittlewoodSummary {
  bool applicable = false;
  std::string reason;
  std::vector<LittlewoodRow> rows;
};

struct Witness {
  std::size_t n1 = 0;  // |a_{n1}| < |A_{n1}|
  std::size_t n2 = 0;  // |A_{n2}| < |a_{n2}|
  double margin1 = 0.0;
  double margin2 = 0.0;
};

enum class Classification { equality_suspected, witness_found, inconclusive };
const char* to_string(Classification c) noexcept;

struct VerificationReport {
  int schema_version = kReportSchemaVersion;
  PipelineConfig config;
  std::vector<Complex> input_coefficients;
  double input_rho = 1.0;
  double working_rho = 1.0;
  double delta = 0.0;

  std::vector<CoefficientRow> table;
  std::vector<Complex> mapped_coefficients;  // A_n at base resolution
  std::size_t resolved_degree = 0;           // largest n with |A_n| above its rounding floor; sums stop here
  AreaIdentityCheck area_identity;
  double residual_doubled = -1.0;  // residual at doubled resolution; negative when not run
  AreaTriple areas;
  HaymanCheck hayman;
  ConstantTermCheck constant_term;
  RealityCheck reality;
  std::vector<MeanRow> means;
  LittlewoodSummary littlewood;
  std::optional<Witness> witness;
  bool witness_confirmed = false;  // doubled resolution also yields a witness with margins > delta
  Classification classification = Classification::inconclusive;
  bool double_checked = false;
  bool degenerate_contact = false;
  bool quadrature_underflow = false;
};

/// f -> D -> D* -> F -> A_n, with every check evaluated. Errors carry the failing stage name.
VerificationReport run_pipeline(const PowerSeries& f, const PipelineConfig& cfg);

/// Relative residual of the area identity. Throws ErrorKind::inapplicable when lhs = 0.
AreaIdentityCheck check_area_identity(double lhs, double rhs, double error_estimate, double rel_tol);

HaymanCheck check_hayman(const PowerSeries& a, const PowerSeries& A, double err);

/// Integral means of f and F over weights x radii; err_F holds per-row error estimates (or empty).
std::vector<MeanRow> check_means(const PowerSeries& f, const PowerSeries& F, const PipelineConfig& cfg,
                                 const std::vector<double>& err_F = {});

/// Pair maximizing min(margin1, margin2), both margins above delta + row error; n >= 1 only.
std::optional<Witness> find_witness(const std::vector<CoefficientRow>& table, double delta);

/// witness_found when a witness is given, equality_suspected when every row has
/// ||a_n| - |A_n|| < 3 err, inconclusive otherwise.
Classification classify(const std::vector<CoefficientRow>& table, const std::optional<Witness>& witness);

// ------------------------------------------------------------------ sweeps

struct FamilySpec {
  enum class Kind { quadratic, rotated_disk, shifted_disk };
  Kind kind = Kind::quadratic;
  // quadratic: a0 + a1 z + a2 e^{i p} z^2;  rotated_disk: a0 e^{i p} + a1 z;  shifted_disk: p + a1 z
  double a0 = 4.0;
  double a1 = 1.0;
  double a2 = 0.4;
  std::vector<double> grid;

  PowerSeries member(double parameter) const;
  static const char* kind_name(Kind k) noexcept;
};

struct SweepRow {
  std::size_t index = 0;
  double parameter = 0.0;
  std::optional<Classification> classification;
  std::optional<Witness> witness;
  double residual = -1.0;
  double max_abs_diff = -1.0;
  std::string error_kind;
  std::string error;
};

/// Runs every member; failures are recorded per row. Rows come back in grid order.
std::vector<SweepRow> sweep(const FamilySpec& family, const PipelineConfig& cfg, unsigned threads = 0);

}  // namespace circsym
