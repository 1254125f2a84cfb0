#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sosc/run_config.hpp"
#include "sosc/verify.hpp"

namespace sosc {

/// One sampled density curve.
struct DensityCurve {
  std::string family;  // bg | perelomov
  bool transformed = false;
  cplx label = 0.0;
  double t = 0.0;
  RealArray x;
  RealArray density;
};

/// Densities of psi_lambda, psi_z and their Darboux partners (m from the
/// config) at every configured time, sampled on the configured grid.
std::vector<DensityCurve> density_curves(const RunConfig& c);

/// File name for a curve, e.g. density_bg_original_l0_t0.5.csv.
std::string density_file_name(const DensityCurve& d, int label_index);

/// Writes one CSV per curve into c.output_dir; returns the paths.
std::vector<std::filesystem::path> cmd_density(const RunConfig& c);

struct LocalizationRow {
  std::string family;
  bool transformed = false;
  cplx label = 0.0;
  double t = 0.0;
  DensityMoments moments;
};

/// L2 distance between the original and transformed densities before and
/// after the best horizontal shift of the original.
struct ShiftRow {
  std::string family;
  cplx label = 0.0;
  double t = 0.0;
  double shift = 0.0;
  double pre = 0.0;
  double post = 0.0;
  double ratio() const { return post / pre; }
};

struct LocalizationReport {
  std::vector<LocalizationRow> rows;
  std::vector<ShiftRow> shifts;

  /// sigma_x of the first label of `family` at time t (throws if absent).
  double sigma(const std::string& family, bool transformed, double t) const;
};

LocalizationReport localization_report(const RunConfig& c);
/// Writes localization.csv and shift.csv into c.output_dir.
LocalizationReport cmd_localization(const RunConfig& c);

/// Writes moments.csv (f and Phi moments, resolution diagonals); returns its rows.
CheckList cmd_moments(const RunConfig& c);

/// Prints one line per check to `os`; returns 0 when all pass, 1 otherwise.
int cmd_verify(Suite s, const RunConfig& c, std::ostream& os, std::optional<double> tolerance = std::nullopt);

}  // namespace sosc
