#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>

#include "sosc/commands.hpp"

using namespace sosc;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("sosc_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), {}};
}

void write_file(const fs::path& p, const std::string& s) {
  fs::create_directories(p.parent_path());
  std::ofstream(p) << s;
}

// Plain trapezoid over the x,density columns of a density CSV.
double trapezoid(const fs::path& p) {
  std::ifstream f(p);
  std::string line;
  double sum = 0.0, px = 0.0, py = 0.0;
  bool first = true;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#' || line[0] == 'x') continue;
    const auto comma = line.find(',');
    const double x = std::strtod(line.c_str(), nullptr), y = std::strtod(line.c_str() + comma + 1, nullptr);
    if (!first) sum += 0.5 * (x - px) * (y + py);
    px = x, py = y, first = false;
  }
  return sum;
}

}  // namespace

TEST_CASE("complex and list parsing") {
  CHECK(parse_complex("1.5") == cplx(1.5, 0.0));
  CHECK(parse_complex("-0.2+0.7i") == cplx(-0.2, 0.7));
  CHECK(parse_complex("0.4-1.1i") == cplx(0.4, -1.1));
  CHECK(parse_complex("0.3i") == cplx(0.0, 0.3));
  CHECK(parse_complex("-i") == cplx(0.0, -1.0));
  CHECK(parse_complex("1e-3+2e+1i") == cplx(1e-3, 20.0));
  CHECK_THROWS_AS(parse_complex("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_complex(""), std::invalid_argument);
  CHECK(parse_real_list("0, 0.5,1 ,2") == std::vector<double>{0.0, 0.5, 1.0, 2.0});
  CHECK(parse_complex(format_complex(cplx(0.1, -1.0 / 3.0))) == cplx(0.1, -1.0 / 3.0));
}

TEST_CASE("config file: sections, overrides, errors") {
  const fs::path dir = scratch("config");
  write_file(dir / "run.ini",
             "[physics]\ng = 6\nm = 2\nconvention = wronskian\n[grid]\nmax = 30\nn = 3000\n"
             "[labels]\nlambda = 0.5, 0.4-1.1i\nz = 0.2i\n[output]\ndir = elsewhere\n[run]\ntimes = 0, 1\n");
  const RunConfig c = load_run_config(dir / "run.ini");
  CHECK(c.g == 6.0);
  CHECK(c.params().k == doctest::Approx(1.75));
  CHECK(c.m == 2);
  CHECK(c.convention == Convention::wronskian_half_i);
  CHECK(c.grid.x_max == 30.0);
  CHECK(c.grid.n == 3000);
  REQUIRE(c.lambdas.size() == 2);
  CHECK(c.lambdas[1] == cplx(0.4, -1.1));
  CHECK(c.perelomov_labels() == std::vector<cplx>{cplx(0.0, 0.2)});
  CHECK(c.output_dir == fs::path("elsewhere"));
  CHECK(c.times == std::vector<double>{0.0, 1.0});
  CHECK_NOTHROW(c.validate());

  const RunConfig d;
  CHECK(d.perelomov_labels()[0].real() == doctest::Approx(1.0 / std::sqrt(3.5)).epsilon(1e-15));

  write_file(dir / "bad_key.ini", "[physics]\nh = 1\n");
  CHECK_THROWS_AS(load_run_config(dir / "bad_key.ini"), std::invalid_argument);
  write_file(dir / "bad_value.ini", "[physics]\ng = two\n");
  CHECK_THROWS_AS(load_run_config(dir / "bad_value.ini"), std::invalid_argument);
  CHECK_THROWS(load_run_config(dir / "missing.ini"));

  RunConfig e;
  e.zs = {cplx(0.9, 0.5)};
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e = RunConfig{};
  e.times = {0.0, std::nan("")};
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
  e = RunConfig{};
  e.profile = "sine";
  CHECK_THROWS_AS(e.validate(), std::invalid_argument);
}

TEST_CASE("density command: defaults, normalization, determinism") {
  RunConfig c;
  c.output_dir = scratch("density_a");
  const auto paths = cmd_density(c);
  // Two families, original and transformed, four times each.
  CHECK(paths.size() == 16);
  for (const auto& p : paths) {
    CHECK(trapezoid(p) == doctest::Approx(1.0).epsilon(1e-4));
  }
  const std::string head = slurp(c.output_dir / "density_bg_original_l0_t0.5.csv");
  for (const char* key : {"# g=2\n", "# k=1.25\n", "# m=1\n", "# convention=paper\n", "# t=0.5\n", "# label=",
                          "x,density\n"}) {
    CHECK(head.find(key) != std::string::npos);
  }

  RunConfig c2 = c;
  c2.output_dir = scratch("density_b");
  const auto again = cmd_density(c2);
  REQUIRE(again.size() == paths.size());
  for (std::size_t i = 0; i < paths.size(); ++i) CHECK(slurp(paths[i]) == slurp(again[i]));
}

TEST_CASE("density at lambda = 0 is the ground-state density") {
  RunConfig c;
  c.lambdas = {0.0};
  const auto curves = density_curves(c);
  const auto grid = RadialGrid::make(c.grid);
  const PhysParams p = c.params();
  const FrequencyProfile prof = c.frequency_profile();
  int seen = 0;
  for (const auto& d : curves) {
    if (d.family != "bg" || d.transformed) continue;
    const Envelope env = envelope_at(prof, d.t, c.convention);
    const RealArray ref = basis_state(BasisIndex::bound(0, p), p, env, grid).values.abs2();
    CHECK((d.density - ref).abs().maxCoeff() <= 1e-14 * ref.maxCoeff());
    ++seen;
  }
  CHECK(seen == 4);
}

TEST_CASE("density command surfaces I/O failures with the path") {
  RunConfig c;
  const fs::path blocker = scratch("blocker");
  write_file(blocker, "not a directory");
  c.output_dir = blocker / "sub";
  try {
    cmd_density(c);
    FAIL("expected an exception");
  } catch (const std::runtime_error& e) {
    CHECK(std::string(e.what()).find(blocker.string()) != std::string::npos);
  }
}

TEST_CASE("localization report and files") {
  RunConfig c;
  c.output_dir = scratch("localization");
  const LocalizationReport rep = cmd_localization(c);
  CHECK(rep.rows.size() == 16);
  CHECK(rep.shifts.size() == 8);
  for (const auto& r : rep.rows) CHECK(r.moments.norm == doctest::Approx(1.0).epsilon(1e-6));
  for (const auto& s : rep.shifts) {
    CHECK(s.post <= s.pre);
    CHECK(s.shift > 0.0);
  }
  CHECK(rep.sigma("bg", false, 0.0) > 0.0);
  CHECK_THROWS_AS(rep.sigma("bg", false, 7.0), std::out_of_range);
  CHECK(fs::exists(c.output_dir / "localization.csv"));
  CHECK(fs::exists(c.output_dir / "shift.csv"));
}

TEST_CASE("moments command and verify report format") {
  RunConfig c;
  c.output_dir = scratch("moments");
  const CheckList rows = cmd_moments(c);
  CHECK(rows.size() == 35);
  for (const auto& r : rows) CHECK(r.pass());
  CHECK(fs::exists(c.output_dir / "moments.csv"));

  const CheckResult ok{"a.b", 1e-9, 1e-5, CheckResult::Compare::at_most};
  CHECK(ok.pass());
  CHECK(ok.line() == "a.b,1.0000000000000001e-09,1.0000000000000001e-05,PASS");
  CHECK_FALSE((CheckResult{"nan", std::nan(""), 1.0, CheckResult::Compare::at_most}.pass()));
  CHECK_FALSE((CheckResult{"low", 0.01, 0.1, CheckResult::Compare::at_least}.pass()));

  CHECK(parse_suite("measures") == Suite::measures);
  CHECK(to_string(Suite::darboux) == "darboux");
  CHECK_THROWS_AS(parse_suite("everything"), std::invalid_argument);

  std::ostringstream os;
  CHECK(cmd_verify(Suite::algebra, c, os) == 0);
  CHECK(os.str().find("FAIL") == std::string::npos);
  std::ostringstream broken;
  CHECK(cmd_verify(Suite::measures, c, broken, 1e-15) == 1);
  CHECK(broken.str().find(",FAIL\n") != std::string::npos);
}
