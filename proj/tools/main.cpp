// sosc: density curves, verification suites, localization and measure moments
// for the time-dependent singular oscillator.

#include <CLI11.hpp>
#include <iostream>
#include <optional>
#include <string>

#include "sosc/commands.hpp"

namespace {

struct Overrides {
  std::optional<double> g;
  std::optional<int> m;
  std::optional<std::string> convention, times, lambda, z, profile, out, config;
  std::optional<double> grid_max;
  std::optional<int> grid_n;

  sosc::RunConfig resolve() const {
    sosc::RunConfig c;
    if (config) c = sosc::load_run_config(*config);
    if (g) c.g = *g;
    if (m) c.m = *m;
    if (convention) c.convention = sosc::parse_convention(*convention);
    if (times) c.times = sosc::parse_real_list(*times);
    if (lambda) c.lambdas = sosc::parse_complex_list(*lambda);
    if (z) c.zs = sosc::parse_complex_list(*z);
    if (profile) c.profile = *profile;
    if (out) c.output_dir = *out;
    if (grid_max) c.grid.x_max = *grid_max;
    if (grid_n) c.grid.n = *grid_n;
    c.validate();
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coherent states and Darboux partners of the time-dependent singular oscillator"};
  app.require_subcommand(1);
  app.fallthrough();

  Overrides o;
  app.add_option("--config", o.config, "INI file with [physics] [grid] [labels] [output] [run] sections")
      ->check(CLI::ExistingFile);
  app.add_option("--g", o.g, "coupling g > -1/4 (default 2)");
  app.add_option("--m", o.m, "Darboux level m >= 0 (default 1)");
  app.add_option("--convention", o.convention, "envelope convention")->check(CLI::IsMember({"paper", "wronskian"}));
  app.add_option("--times", o.times, "comma-separated times (default 0,0.5,1,2)");
  app.add_option("--lambda", o.lambda, "comma-separated BG labels, e.g. 1.021,0.4-1.1i");
  app.add_option("--z", o.z, "comma-separated Perelomov labels, |z| < 1 (default (2k+1)^-1/2)");
  app.add_option("--profile", o.profile, "frequency profile: zero | constant:<omega> | csv:<path>");
  app.add_option("--grid-max", o.grid_max, "largest grid point");
  app.add_option("--grid-n", o.grid_n, "number of grid points");
  app.add_option("--out", o.out, "output directory (default out)");

  auto* density = app.add_subcommand("density", "write one CSV per density curve");
  auto* verify = app.add_subcommand("verify", "run invariant checks; exit 1 on any FAIL");
  std::string suite = "all";
  std::optional<double> tolerance;
  verify->add_option("suite", suite, "all | states | algebra | darboux | measures")
      ->check(CLI::IsMember({"all", "states", "algebra", "darboux", "measures"}));
  verify->add_option("--tolerance", tolerance, "replace every upper-bound tolerance");
  auto* localization = app.add_subcommand("localization", "write localization.csv and shift.csv");
  auto* moments = app.add_subcommand("moments", "write moments.csv");

  CLI11_PARSE(app, argc, argv);

  try {
    const sosc::RunConfig c = o.resolve();
    if (*density) {
      for (const auto& p : sosc::cmd_density(c)) std::cout << p.string() << '\n';
    } else if (*verify) {
      return sosc::cmd_verify(sosc::parse_suite(suite), c, std::cout, tolerance);
    } else if (*localization) {
      const auto rep = sosc::cmd_localization(c);
      for (const auto& s : rep.shifts) {
        std::cout << s.family << " t=" << s.t << " shift=" << s.shift << " ratio=" << s.ratio() << '\n';
      }
    } else if (*moments) {
      int failed = 0;
      for (const auto& r : sosc::cmd_moments(c)) {
        std::cout << r.line() << '\n';
        failed += r.pass() ? 0 : 1;
      }
      return failed == 0 ? 0 : 1;
    }
  } catch (const std::exception& e) {
    std::cerr << "sosc: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
