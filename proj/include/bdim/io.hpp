#pragma once

// JSON tables, orbit records, dimension reports and sweep CSV.
//
// Table schema (polynomial coefficients in α, ascending):
//   {"alpha": {"lo": a, "hi": b}, "deformed": i, "allow_multiple_deformed": false,
//    "smoothness": r,
//    "obstacles": [
//      {"kind": "circle", "center": [[cx...], [cy...]], "radius": [r...]},
//      {"kind": "ellipse", "center": ..., "axes": [[a...], [b...]], "angle": [t...]},
//      {"kind": "polar-harmonic", "center": ..., "base": [r...],
//       "cos": [[c1...], [c2...]]}]}
// Any obstacle may carry "seam": t.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bdim/geometry.hpp"
#include "bdim/pressure.hpp"
#include "bdim/record.hpp"

namespace bdim {

struct TableConfig {
  BilliardTable table;
  std::optional<int> smoothness;
  std::string name;
};

TableConfig table_from_json(const nlohmann::json& j);
// Throws ParseError with line/column information for malformed files.
TableConfig load_table(const std::string& path);
nlohmann::json table_to_json(const BilliardTable& table);

nlohmann::json record_to_json(const OrbitRecord& record);
nlohmann::json report_to_json(const DimensionReport& report);
nlohmann::json no_eclipse_to_json(const NoEclipseReport& report);
nlohmann::json deformation_to_json(const DeformationConstants& dc);

struct SweepRow {
  double alpha = 0.0;
  bool ok = false;
  std::string status = "ok";
  DimensionReport report;
  double dD_dfinite = 0.0;
};

// Central differences of D over the grid, one-sided at the ends; rows that
// failed or whose neighbours failed get NaN.
void fill_finite_differences(std::vector<SweepRow>& rows);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     const std::string& header_comment = "");

}  // namespace bdim
