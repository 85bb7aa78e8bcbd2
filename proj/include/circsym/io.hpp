#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "circsym/conformal_map.hpp"
#include "circsym/domain.hpp"
#include "circsym/harness.hpp"
#include "circsym/power_series.hpp"

namespace circsym::io {

/// Shortest decimal that round-trips to the same double.
std::string shortest(double x);
/// Seventeen significant digits.
std::string digits17(double x);

// {"rho": 0.9, "coefficients": [[re, im], ...]}
std::string series_to_json(const PowerSeries& s);
PowerSeries series_from_json(const std::string& text);

// header `t,alpha,arcs`, arcs as `lo:hi;lo:hi`
std::string profile_to_csv(const RadialProfile& p);
/// Reads slices back; end radii and measures are not part of the format.
RadialProfile profile_from_csv(const std::string& text);

// `re,im` rows
std::string curve_to_csv(const BoundaryCurve& c);
BoundaryCurve curve_from_csv(const std::string& text);

std::string zipper_to_json(const ZipperMap& m);
ZipperMap zipper_from_json(const std::string& text);

std::string config_to_json(const PipelineConfig& cfg);
PipelineConfig config_from_json(const std::string& text);

std::string report_to_json(const VerificationReport& r);
/// The reproduction inputs embedded in a report: its input series and configuration.
std::pair<PowerSeries, PipelineConfig> report_inputs_from_json(const std::string& text);

// `n,abs_a,abs_A,diff,err`
std::string coefficient_table_csv(const VerificationReport& r);

/// {"family": "quadratic" | "rotated_disk" | "shifted_disk", "a0":..., "a1":..., "a2":..., "grid": [...]}
/// or a generated grid {"grid": {"start": s, "stop": e, "count": n}} (inclusive endpoints).
FamilySpec family_from_json(const std::string& text);
std::string sweep_csv(const std::vector<SweepRow>& rows);

std::string read_file(const std::filesystem::path& path);

/// Writes every file to a temporary sibling first and renames only after all writes succeeded.
void write_files_atomically(const std::vector<std::pair<std::filesystem::path, std::string>>& files);

}  // namespace circsym::io
