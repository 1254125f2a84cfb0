#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sosc/run_config.hpp"

namespace sosc {

struct CheckResult {
  enum class Compare { at_most, at_least };
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  Compare compare = Compare::at_most;

  bool pass() const;
  /// "name,measured,tolerance,PASS|FAIL" with 17 significant digits.
  std::string line() const;
};

using CheckList = std::vector<CheckResult>;

enum class Suite { all, states, algebra, darboux, measures };

Suite parse_suite(const std::string& s);
std::string to_string(Suite s);

// Individual groups; each uses g, the profile, lambda and z from the config.
/// <psi_n|psi_n'> = delta, n, n' <= 10, t in {0, 1, 2}, both conventions.
CheckList check_orthonormality(const RunConfig& c);
/// Schroedinger residuals of psi_n (n <= 5), psi_lambda and psi_z; closed vs series.
CheckList check_state_dynamics(const RunConfig& c);
/// Ladder relations, Casimir, holomorphic commutators, BG eigenrelation, label root.
CheckList check_algebra(const RunConfig& c);
/// Factorization, A_m, reality, p-algebra, transformed states and their residuals.
CheckList check_darboux(const RunConfig& c);
/// f and Phi moments, resolution of identity, kernel reproduction, Phi recovery.
CheckList check_measures(const RunConfig& c);

/// Runs a suite; `tolerance` replaces every upper-bound tolerance when set.
CheckList run_suite(Suite s, const RunConfig& c, std::optional<double> tolerance = std::nullopt);

}  // namespace sosc
