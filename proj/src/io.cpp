#include "circsym/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "circsym/error.hpp"
#include "json.hpp"

namespace circsym::io {

using nlohmann::json;

namespace {

constexpr const char* kZipperFormat = "circsym-zipper";
constexpr const char* kReportFormat = "circsym-report";

template <class Fn>
auto parsing(const char* what, Fn&& fn) {
  try {
    return fn();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::input, std::string(what) + ": " + e.what());
  }
}

json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::input, "complex value must be [re, im]");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json series_json(const std::vector<Complex>& coefficients, double rho) {
  json out;
  out["rho"] = rho;
  out["coefficients"] = json::array();
  for (const auto& c : coefficients) out["coefficients"].push_back(complex_json(c));
  return out;
}

PowerSeries series_from(const json& j) {
  std::vector<Complex> coeffs;
  for (const auto& c : j.at("coefficients")) coeffs.push_back(complex_from(c));
  return PowerSeries(std::move(coeffs), j.value("rho", 1.0));
}

json weight_json(const MeanWeight& w) {
  json out{{"kind", w.name()}};
  if (w.kind == MeanWeight::Kind::hinge) out["shift"] = w.shift;
  return out;
}

MeanWeight weight_from(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "exp") return MeanWeight::exp();
  if (kind == "exp2") return MeanWeight::exp2();
  if (kind == "hinge") return MeanWeight::hinge(j.value("shift", 0.0));
  throw Error(ErrorKind::input, "unknown mean weight '" + kind + "'");
}

json config_json(const PipelineConfig& cfg) {
  json weights = json::array();
  for (const auto& w : cfg.weights) weights.push_back(weight_json(w));
  return {{"rho", cfg.rho},
          {"boundary_vertices", cfg.boundary_vertices},
          {"slices", cfg.slices},
          {"degree", cfg.degree},
          {"extract_radius", cfg.extract_radius},
          {"samples", cfg.samples},
          {"identity_rel_tol", cfg.identity_rel_tol},
          {"delta", cfg.delta},
          {"reality_tol", cfg.reality_tol},
          {"weights", weights},
          {"mean_radii", cfg.mean_radii},
          {"double_check", cfg.double_check}};
}

PipelineConfig config_from(const json& j) {
  PipelineConfig cfg;
  cfg.rho = j.value("rho", cfg.rho);
  cfg.boundary_vertices = j.value("boundary_vertices", cfg.boundary_vertices);
  cfg.slices = j.value("slices", cfg.slices);
  cfg.degree = j.value("degree", cfg.degree);
  cfg.extract_radius = j.value("extract_radius", cfg.extract_radius);
  cfg.samples = j.value("samples", cfg.samples);
  cfg.identity_rel_tol = j.value("identity_rel_tol", cfg.identity_rel_tol);
  cfg.delta = j.value("delta", cfg.delta);
  cfg.reality_tol = j.value("reality_tol", cfg.reality_tol);
  if (j.contains("weights")) {
    cfg.weights.clear();
    for (const auto& w : j.at("weights")) cfg.weights.push_back(weight_from(w));
  }
  if (j.contains("mean_radii")) cfg.mean_radii = j.at("mean_radii").get<std::vector<double>>();
  cfg.double_check = j.value("double_check", cfg.double_check);
  return cfg;
}

std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

double parse_double(const std::string& s) {
  double value = 0.0;
  const char* first = s.data();
  const char* last = s.data() + s.size();
  while (first < last && *first == ' ') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) throw Error(ErrorKind::input, "not a number: '" + s + "'");
  return value;
}

std::vector<std::string> data_lines(const std::string& text, const std::string& header) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> lines;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (first) {
      if (line != header) throw Error(ErrorKind::input, "expected CSV header '" + header + "'");
      first = false;
      continue;
    }
    if (!line.empty()) lines.push_back(line);
  }
  if (first) throw Error(ErrorKind::input, "empty CSV");
  return lines;
}

}  // namespace

std::string shortest(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

std::string digits17(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

std::string series_to_json(const PowerSeries& s) { return series_json(s.coefficients(), s.rho()).dump(2) + "\n"; }

PowerSeries series_from_json(const std::string& text) {
  return parsing("series JSON", [&] { return series_from(json::parse(text)); });
}

std::string profile_to_csv(const RadialProfile& p) {
  std::string out = "t,alpha,arcs\n";
  for (const auto& s : p.slices) {
    out += digits17(s.t) + "," + digits17(s.arcs.measure()) + ",";
    bool first = true;
    for (const auto& a : s.arcs.arcs()) {
      if (!first) out += ";";
      out += digits17(a.lo) + ":" + digits17(a.hi);
      first = false;
    }
    out += "\n";
  }
  return out;
}

RadialProfile profile_from_csv(const std::string& text) {
  RadialProfile p;
  for (const auto& line : data_lines(text, "t,alpha,arcs")) {
    const auto fields = split(line, ',');
    if (fields.size() != 3) throw Error(ErrorKind::input, "profile row needs three fields");
    std::vector<Arc> arcs;
    if (!fields[2].empty()) {
      for (const auto& piece : split(fields[2], ';')) {
        const auto ends = split(piece, ':');
        if (ends.size() != 2) throw Error(ErrorKind::input, "arc must be lo:hi");
        arcs.push_back({parse_double(ends[0]), parse_double(ends[1])});
      }
    }
    p.slices.push_back({parse_double(fields[0]), ArcSet::from_arcs(std::move(arcs))});
  }
  if (!p.slices.empty()) {
    p.inner_radius = p.slices.front().t;
    p.outer_radius = p.slices.back().t;
  }
  p.validate();
  return p;
}

std::string curve_to_csv(const BoundaryCurve& c) {
  std::string out = "re,im\n";
  for (const auto& p : c.points()) out += digits17(p.real()) + "," + digits17(p.imag()) + "\n";
  return out;
}

BoundaryCurve curve_from_csv(const std::string& text) {
  std::vector<Complex> pts;
  for (const auto& line : data_lines(text, "re,im")) {
    const auto fields = split(line, ',');
    if (fields.size() != 2) throw Error(ErrorKind::input, "curve row needs two fields");
    pts.emplace_back(parse_double(fields[0]), parse_double(fields[1]));
  }
  return BoundaryCurve(std::move(pts));
}

std::string zipper_to_json(const ZipperMap& m) {
  const auto& p = m.parts();
  json steps = json::array();
  for (const auto& s : p.steps) {
    json foot = s.foot() ? json(*s.foot()) : json(nullptr);
    steps.push_back(json::array({s.anchor().real(), s.anchor().imag(), s.height(), foot}));
  }
  json out;
  out["format"] = kZipperFormat;
  out["version"] = 1;
  out["initial_pair"] = json::array({complex_json(p.z0), complex_json(p.z1)});
  out["steps"] = steps;
  out["closing"] = {{"foot", p.closing_foot ? json(*p.closing_foot) : json(nullptr)},
                    {"sign", p.closing_sign},
                    {"cayley", "(w - i) / (w + i)"}};
  out["normalization"] = {{"center", complex_json(p.disk_center)}, {"rotation", p.rotation}, {"target", p.target}};
  return out.dump() + "\n";
}

ZipperMap zipper_from_json(const std::string& text) {
  return parsing("zipper JSON", [&] {
    const json j = json::parse(text);
    if (j.value("format", std::string{}) != kZipperFormat) throw Error(ErrorKind::input, "not a zipper map file");
    ZipperParts parts;
    parts.z0 = complex_from(j.at("initial_pair").at(0));
    parts.z1 = complex_from(j.at("initial_pair").at(1));
    for (const auto& s : j.at("steps")) {
      std::optional<double> foot;
      if (!s.at(3).is_null()) foot = s.at(3).get<double>();
      parts.steps.push_back(ElementaryStep::from_parameters(Complex{s.at(0).get<double>(), s.at(1).get<double>()}, foot,
                                                            s.at(2).get<double>()));
    }
    const auto& closing = j.at("closing");
    if (!closing.at("foot").is_null()) parts.closing_foot = closing.at("foot").get<double>();
    parts.closing_sign = closing.at("sign").get<int>();
    const auto& norm = j.at("normalization");
    parts.disk_center = complex_from(norm.at("center"));
    parts.rotation = norm.at("rotation").get<double>();
    parts.target = norm.at("target").get<double>();
    return ZipperMap(std::move(parts));
  });
}

std::string config_to_json(const PipelineConfig& cfg) { return config_json(cfg).dump(2) + "\n"; }

PipelineConfig config_from_json(const std::string& text) {
  return parsing("config JSON", [&] { return config_from(json::parse(text)); });
}

std::string report_to_json(const VerificationReport& r) {
  json out;
  out["format"] = kReportFormat;
  out["schema_version"] = r.schema_version;
  out["config"] = config_json(r.config);
  out["input"] = series_json(r.input_coefficients, r.input_rho);
  out["working_rho"] = r.working_rho;
  out["delta"] = r.delta;
  out["classification"] = to_string(r.classification);
  out["double_checked"] = r.double_checked;

  json table = json::array();
  for (const auto& row : r.table) {
    table.push_back({{"n", row.n}, {"abs_a", row.abs_a}, {"abs_A", row.abs_A}, {"diff", row.diff()}, {"err", row.err}});
  }
  out["coefficients"] = table;
  out["resolved_degree"] = r.resolved_degree;
  out["mapped_coefficients"] = json::array();
  for (const auto& c : r.mapped_coefficients) out["mapped_coefficients"].push_back(complex_json(c));

  const auto& ai = r.area_identity;
  out["area_identity"] = {{"lhs", ai.lhs},
                          {"rhs", ai.rhs},
                          {"residual", ai.residual},
                          {"residual_doubled", r.residual_doubled >= 0.0 ? json(r.residual_doubled) : json(nullptr)},
                          {"error_estimate", ai.error_estimate >= 0.0 ? json(ai.error_estimate) : json(nullptr)},
                          {"pass", ai.pass}};
  const auto& a = r.areas;
  out["areas"] = {{"dirichlet_f", a.dirichlet_f},
                  {"dirichlet_F", a.dirichlet_F},
                  {"profile", a.profile},
                  {"profile_symmetrized", a.profile_symmetrized},
                  {"shoelace", a.shoelace},
                  {"shoelace_symmetrized", a.shoelace_symmetrized}};
  out["hayman"] = {{"abs_a1", r.hayman.abs_a1}, {"A1", r.hayman.A1}, {"err", r.hayman.err}, {"pass", r.hayman.pass}};
  out["constant_term"] = {
      {"abs_a0", r.constant_term.abs_a0}, {"A0", r.constant_term.A0}, {"pass", r.constant_term.pass}};
  out["reality"] = {{"max_imag", r.reality.max_imag}, {"max_abs", r.reality.max_abs}, {"pass", r.reality.pass}};

  json means = json::array();
  for (const auto& m : r.means) {
    means.push_back({{"phi", weight_json(m.weight)},
                     {"r", m.r},
                     {"mean_f", m.mean_f},
                     {"mean_F", m.mean_F},
                     {"margin", m.margin()},
                     {"err", m.err},
                     {"underflow", m.underflow},
                     {"pass", m.pass}});
  }
  out["means"] = means;

  json lw_rows = json::array();
  for (const auto& row : r.littlewood.rows) {
    lw_rows.push_back({{"n", row.n}, {"abs_a", row.modulus}, {"bound", row.bound}, {"pass", row.pass}});
  }
  out["littlewood"] = {{"applicable", r.littlewood.applicable}, {"reason", r.littlewood.reason}, {"rows", lw_rows}};

  if (r.witness) {
    out["witness"] = {{"n1", r.witness->n1},
                      {"n2", r.witness->n2},
                      {"margin1", r.witness->margin1},
                      {"margin2", r.witness->margin2},
                      {"confirmed", r.witness_confirmed}};
  } else {
    out["witness"] = nullptr;
  }
  out["flags"] = {{"degenerate_contact", r.degenerate_contact}, {"quadrature_underflow", r.quadrature_underflow}};
  return out.dump(2) + "\n";
}

std::pair<PowerSeries, PipelineConfig> report_inputs_from_json(const std::string& text) {
  return parsing("report JSON", [&] {
    const json j = json::parse(text);
    if (j.value("format", std::string{}) != kReportFormat) throw Error(ErrorKind::input, "not a report file");
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) {
      throw Error(ErrorKind::input, "unsupported report schema version");
    }
    return std::make_pair(series_from(j.at("input")), config_from(j.at("config")));
  });
}

std::string coefficient_table_csv(const VerificationReport& r) {
  std::string out = "n,abs_a,abs_A,diff,err\n";
  for (const auto& row : r.table) {
    out += std::to_string(row.n) + "," + shortest(row.abs_a) + "," + shortest(row.abs_A) + "," + shortest(row.diff()) +
           "," + shortest(row.err) + "\n";
  }
  return out;
}

FamilySpec family_from_json(const std::string& text) {
  return parsing("family JSON", [&] {
    const json j = json::parse(text);
    FamilySpec f;
    const auto name = j.at("family").get<std::string>();
    if (name == "quadratic") {
      f.kind = FamilySpec::Kind::quadratic;
    } else if (name == "rotated_disk") {
      f.kind = FamilySpec::Kind::rotated_disk;
      f.a0 = 2.0;
    } else if (name == "shifted_disk") {
      f.kind = FamilySpec::Kind::shifted_disk;
    } else {
      throw Error(ErrorKind::input, "unknown family '" + name + "'");
    }
    f.a0 = j.value("a0", f.a0);
    f.a1 = j.value("a1", f.a1);
    f.a2 = j.value("a2", f.a2);
    const auto& grid = j.at("grid");
    if (grid.is_array()) {
      f.grid = grid.get<std::vector<double>>();
    } else {
      const double start = grid.at("start").get<double>();
      const double stop = grid.at("stop").get<double>();
      const auto count = grid.at("count").get<std::size_t>();
      for (std::size_t i = 0; i < count; ++i) {
        f.grid.push_back(count == 1 ? start : start + (stop - start) * static_cast<double>(i) / static_cast<double>(count - 1));
      }
    }
    return f;
  });
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "index,parameter,classification,n1,n2,margin1,margin2,residual,max_abs_diff,error\n";
  for (const auto& row : rows) {
    out += std::to_string(row.index) + "," + shortest(row.parameter) + ",";
    if (row.classification) {
      out += to_string(*row.classification);
    } else {
      out += row.error_kind + "-error";
    }
    out += ",";
    if (row.witness) {
      out += std::to_string(row.witness->n1) + "," + std::to_string(row.witness->n2) + "," +
             shortest(row.witness->margin1) + "," + shortest(row.witness->margin2);
    } else {
      out += ",,,";
    }
    out += ",";
    if (row.classification) out += shortest(row.residual) + "," + shortest(row.max_abs_diff);
    else out += ",";
    out += "," + csv_quote(row.error) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::input, "cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files) {
  namespace fs = std::filesystem;
  std::vector<fs::path> staged;
  auto discard = [&] {
    std::error_code ec;
    for (const auto& p : staged) fs::remove(p, ec);
  };
  for (const auto& [path, content] : files) {
    std::error_code ec;
    if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
    fs::path tmp = path;
    tmp += ".tmp-" + std::to_string(::getpid());
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (out) staged.push_back(tmp);
    out << content;
    out.close();
    if (!out) {
      discard();
      throw Error(ErrorKind::input, "cannot write " + path.string());
    }
  }
  for (const auto& [path, content] : files) {
    std::error_code ec;
    if (fs::exists(path, ec) && !fs::is_regular_file(path, ec)) {
      discard();
      throw Error(ErrorKind::input, "cannot replace " + path.string());
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    std::error_code ec;
    fs::rename(staged[i], files[i].first, ec);
    if (ec) {
      for (std::size_t k = i; k < staged.size(); ++k) fs::remove(staged[k], ec);
      throw Error(ErrorKind::input, "cannot write " + files[i].first.string());
    }
  }
}

}  // namespace circsym::io
