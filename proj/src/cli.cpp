#include "circsym/cli.hpp"

#include <filesystem>
#include <iomanip>
#include <ostream>

#include "CLI11.hpp"
#include "circsym/error.hpp"
#include "circsym/harness.hpp"
#include "circsym/io.hpp"
#include "json.hpp"

namespace circsym {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Options {
  std::string input;
  std::string out = ".";
  PipelineConfig cfg;
  bool double_check = false;
  bool no_double_check = false;
  unsigned threads = 0;
  bool rerun = false;
};

void add_pipeline_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--input", o.input, "Input file")->required();
  cmd->add_option("--out", o.out, "Output directory");
  cmd->add_option("--rho", o.cfg.rho, "Working radius in (0, 1]");
  cmd->add_option("--boundary", o.cfg.boundary_vertices, "Boundary vertices");
  cmd->add_option("--slices", o.cfg.slices, "Radial slices");
  cmd->add_option("--degree", o.cfg.degree, "Taylor degree N");
  cmd->add_option("--extract-radius", o.cfg.extract_radius, "Coefficient extraction radius");
  cmd->add_option("--samples", o.cfg.samples, "Samples on the extraction circle (0: max(256, 8N))");
  cmd->add_option("--delta", o.cfg.delta, "Witness margin (0: 1e-3 max |a_n|)");
  cmd->add_option("--tol", o.cfg.identity_rel_tol, "Relative tolerance of the area identity");
  cmd->add_flag("--double-check", o.double_check, "Run the doubled resolution as well (default)");
  cmd->add_flag("--no-double-check", o.no_double_check, "Skip the doubled-resolution run");
}

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::input:
    case ErrorKind::sampling: return kExitInput;
    case ErrorKind::domain:
    case ErrorKind::inapplicable:
    case ErrorKind::scope:
    case ErrorKind::geometry: return kExitScope;
    case ErrorKind::numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

template <class Fn>
auto in_stage(const char* stage, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(stage) + ": " + e.what());
  }
}

std::string run_json(const std::string& command, const Options& o, const std::vector<std::string>& args) {
  json out;
  out["command"] = command;
  out["arguments"] = args;
  out["input"] = o.input;
  out["config"] = json::parse(io::config_to_json(o.cfg));
  return out.dump(2) + "\n";
}

struct Geometry {
  PowerSeries work;
  BoundaryCurve curve;
  RadialProfile profile;
  RadialProfile symmetric;
  BoundaryCurve traced;
};

Geometry symmetrize_input(const PowerSeries& f, const PipelineConfig& cfg) {
  const PowerSeries work = f.dilated(std::min(cfg.rho, f.rho()));
  auto curve = in_stage("boundary", [&] { return boundary_from_series(work, cfg.boundary_vertices); });
  auto profile = in_stage("profile", [&] {
    auto p = radial_profile(curve, cfg.slices);
    if (p.contains_origin) throw Error(ErrorKind::scope, "image domain contains the origin");
    return p;
  });
  auto symmetric = symmetrize(profile);
  auto traced = in_stage("symmetrize", [&] { return symmetrized_boundary(symmetric); });
  return {work, std::move(curve), std::move(profile), std::move(symmetric), std::move(traced)};
}

int cmd_symmetrize(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto f = io::series_from_json(io::read_file(o.input));
  const auto g = symmetrize_input(f, o.cfg);
  const fs::path dir(o.out);
  io::write_files_atomically({{dir / "profile.csv", io::profile_to_csv(g.profile)},
                              {dir / "profile_symmetrized.csv", io::profile_to_csv(g.symmetric)},
                              {dir / "boundary.csv", io::curve_to_csv(g.curve)},
                              {dir / "boundary_symmetrized.csv", io::curve_to_csv(g.traced)},
                              {dir / "run.json", run_json("symmetrize", o, args)}});
  out << std::setprecision(10);
  out << "support: (" << g.profile.inner_radius << ", " << g.profile.outer_radius << ")\n";
  out << "area by profile: " << area_by_profile(g.profile) << "\n";
  out << "area of symmetrized boundary: " << area_by_shoelace(g.traced) << "\n";
  return kExitOk;
}

int cmd_map(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto f = io::series_from_json(io::read_file(o.input));
  o.cfg.validate();
  const auto g = symmetrize_input(f, o.cfg);
  const auto boundary = resample_by_arclength(g.traced, o.cfg.boundary_vertices);
  const auto map = in_stage("map", [&] { return build_map(boundary, std::abs(g.work[0])); });
  const auto A = in_stage("series", [&] {
    return series_of_map(map, o.cfg.extract_radius, o.cfg.effective_samples(), o.cfg.degree);
  });
  const fs::path dir(o.out);
  io::write_files_atomically({{dir / "map.json", io::zipper_to_json(map)},
                              {dir / "coefficients.json", io::series_to_json(A)},
                              {dir / "run.json", run_json("map", o, args)}});
  out << std::setprecision(10);
  for (std::size_t n = 0; n <= std::min<std::size_t>(4, A.degree()); ++n) {
    out << "A" << n << " = " << A[n].real() << (A[n].imag() < 0 ? " - " : " + ") << std::abs(A[n].imag()) << "i\n";
  }
  return kExitOk;
}

void print_summary(const json& r, std::ostream& out) {
  out << std::setprecision(6);
  const auto cls = r.at("classification").get<std::string>();
  out << "classification: " << cls << "\n";
  const auto& ai = r.at("area_identity");
  out << "area identity: residual " << ai.at("residual").get<double>();
  if (!ai.at("residual_doubled").is_null()) out << " (doubled " << ai.at("residual_doubled").get<double>() << ")";
  out << (ai.at("pass").get<bool>() ? " pass" : " FAIL") << "\n";
  const auto& h = r.at("hayman");
  out << "hayman: |a1| = " << h.at("abs_a1").get<double>() << ", A1 = " << h.at("A1").get<double>()
      << (h.at("pass").get<bool>() ? " pass" : " FAIL") << "\n";
  if (cls == "equality-suspected") {
    out << "equality case suspected\n";
  } else if (!r.at("witness").is_null()) {
    const auto& w = r.at("witness");
    out << "witness n1=" << w.at("n1").get<std::size_t>() << ", n2=" << w.at("n2").get<std::size_t>()
        << " margins (" << w.at("margin1").get<double>() << ", " << w.at("margin2").get<double>() << ")"
        << (w.at("confirmed").get<bool>() ? "" : " unconfirmed") << "\n";
  } else {
    out << "no witness\n";
  }
}

int cmd_verify(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto f = io::series_from_json(io::read_file(o.input));
  const auto report = run_pipeline(f, o.cfg);
  const auto text = io::report_to_json(report);
  const fs::path dir(o.out);
  io::write_files_atomically({{dir / "report.json", text},
                              {dir / "coefficients.csv", io::coefficient_table_csv(report)},
                              {dir / "run.json", run_json("verify", o, args)}});
  print_summary(json::parse(text), out);
  return kExitOk;
}

int cmd_sweep(const Options& o, const std::vector<std::string>& args, std::ostream& out) {
  const auto family = io::family_from_json(io::read_file(o.input));
  o.cfg.validate();
  const auto rows = sweep(family, o.cfg, o.threads);
  const fs::path dir(o.out);
  io::write_files_atomically({{dir / "sweep.csv", io::sweep_csv(rows)}, {dir / "run.json", run_json("sweep", o, args)}});
  std::size_t counts[4] = {0, 0, 0, 0};
  for (const auto& row : rows) {
    counts[row.classification ? static_cast<int>(*row.classification) : 3]++;
  }
  out << FamilySpec::kind_name(family.kind) << ": " << rows.size() << " members, " << counts[1] << " witness-found, "
      << counts[0] << " equality-suspected, " << counts[2] << " inconclusive, " << counts[3] << " failed\n";
  return kExitOk;
}

int cmd_report(const Options& o, std::ostream& out, std::ostream& err) {
  const auto text = io::read_file(o.input);
  const auto [f, cfg] = io::report_inputs_from_json(text);
  const json r = json::parse(text);
  print_summary(r, out);
  if (o.out != ".") {
    std::string csv = "n,abs_a,abs_A,diff,err\n";
    for (const auto& row : r.at("coefficients")) {
      csv += std::to_string(row.at("n").get<std::size_t>()) + "," + io::shortest(row.at("abs_a").get<double>()) + "," +
             io::shortest(row.at("abs_A").get<double>()) + "," + io::shortest(row.at("diff").get<double>()) + "," +
             io::shortest(row.at("err").get<double>()) + "\n";
    }
    io::write_files_atomically({{fs::path(o.out) / "coefficients.csv", csv}});
  }
  if (o.rerun) {
    const auto again = io::report_to_json(run_pipeline(f, cfg));
    if (again != text) {
      err << "rerun differs from the stored report\n";
      return kExitNumerical;
    }
    out << "rerun reproduces the report exactly\n";
  }
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Circular symmetrization and coefficient comparison of univalent maps"};
  app.name("circsym");
  app.require_subcommand(1);
  Options o;
  auto* sym = app.add_subcommand("symmetrize", "Radial profiles and boundaries of D and D*");
  auto* map = app.add_subcommand("map", "Riemann map of U onto D* and its Taylor coefficients");
  auto* verify = app.add_subcommand("verify", "Full verification report");
  auto* sw = app.add_subcommand("sweep", "Verification over a parameterized family");
  auto* rep = app.add_subcommand("report", "Summarize or reproduce a stored report");
  for (auto* cmd : {sym, map, verify, sw}) add_pipeline_flags(cmd, o);
  sw->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency)");
  rep->add_option("--input", o.input, "Report JSON")->required();
  rep->add_option("--out", o.out, "Directory for the re-exported coefficient CSV");
  rep->add_flag("--rerun", o.rerun, "Re-run the pipeline from the embedded inputs and compare");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kExitInput;
  }
  if (o.no_double_check) o.cfg.double_check = false;
  if (o.double_check) o.cfg.double_check = true;

  try {
    if (sym->parsed()) return cmd_symmetrize(o, args, out);
    if (map->parsed()) return cmd_map(o, args, out);
    if (verify->parsed()) return cmd_verify(o, args, out);
    if (sw->parsed()) return cmd_sweep(o, args, out);
    return cmd_report(o, out, err);
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const json::exception& e) {
    err << "error (input): " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    err << "error (numerical): " << e.what() << "\n";
    return kExitNumerical;
  }
}

}  // namespace circsym
