#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sosc/envelope.hpp"
#include "sosc/grid.hpp"
#include "sosc/states.hpp"

namespace sosc {

/// Everything a command needs. Defaults: free particle, g = 2, m = 1,
/// t in {0, 0.5, 1, 2}, lambda = 1.021 and z = (2k+1)^{-1/2}.
struct RunConfig {
  double g = 2.0;
  int m = 1;
  Convention convention = Convention::paper_free_particle;
  std::string profile = "zero";  // zero | constant:<omega> | csv:<path>
  std::vector<double> times{0.0, 0.5, 1.0, 2.0};
  GridSpec grid;
  std::vector<cplx> lambdas{1.021};
  std::vector<cplx> zs;  // empty means the default (2k+1)^{-1/2}
  std::filesystem::path output_dir = "out";

  PhysParams params() const { return PhysParams::from_g(g, m); }
  FrequencyProfile frequency_profile() const;
  /// zs, or the default label when none were given.
  std::vector<cplx> perelomov_labels() const;
  /// Throws std::invalid_argument naming the offending field.
  void validate() const;
};

/// Reads `key = value` lines grouped under [physics], [grid], [labels],
/// [output] and [run] sections into `base`. Unknown keys are errors.
RunConfig load_run_config(const std::filesystem::path& file, RunConfig base = {});

/// "1.5", "-0.2+0.7i", "0.3i".
cplx parse_complex(const std::string& s);
/// Comma-separated lists.
std::vector<double> parse_real_list(const std::string& s);
std::vector<cplx> parse_complex_list(const std::string& s);

std::string format_complex(cplx z);

}  // namespace sosc
