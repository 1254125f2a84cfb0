#include <doctest.h>

#include <cmath>
#include <future>

#include "sosc/measures.hpp"
#include "sosc/special_functions.hpp"

using namespace sosc;

namespace {

const PhysParams kP = PhysParams::from_g(2.0);

double exact_moment(int n, double k) { return std::exp(num::gamma_ln(n + 1.0) + num::gamma_ln(n + 2.0 * k)); }

}  // namespace

TEST_CASE("f weight: moments, positivity, decay") {
  const double k = 1.25;
  CHECK(f_moment(0, k).value == doctest::Approx(1.3293403881791355).epsilon(1e-6));
  CHECK(f_moment(3, k).value == doctest::Approx(6.0 * std::tgamma(5.5)).epsilon(1e-6));
  for (double kk : {0.75, 1.25, 2.0}) {
    for (int n = 0; n <= 6; ++n) {
      const MomentCheck mc = f_moment(n, kk);
      CHECK(mc.exact == doctest::Approx(exact_moment(n, kk)).epsilon(1e-13));
      CHECK(mc.rel_error <= 1e-5);
    }
  }
  for (double x : {1e-8, 1e-3, 0.5, 3.0, 40.0, 400.0}) CHECK(f_weight(x, k) > 0.0);
  // f(0+) = Gamma(2k-1).
  CHECK(f_weight(1e-12, k) == doctest::Approx(std::tgamma(2 * k - 1)).epsilon(1e-5));
  // ln f = -2 sqrt x + (k - 3/4) ln x + const for large x.
  const double s1 = 100.0, s2 = 101.0;
  const double slope = (std::log(f_weight(s2 * s2, k)) - std::log(f_weight(s1 * s1, k))) / (s2 - s1);
  CHECK(slope == doctest::Approx(-2.0 + (2 * k - 1.5) / 100.5).epsilon(1e-4));
  CHECK_THROWS_AS(f_weight(-1.0, k), std::domain_error);
}

TEST_CASE("Phi weight: table, moments, recovery, limits") {
  const double k = 1.25;
  const int m = 1;
  CHECK(phi_moment(0, k, m).value == doctest::Approx(0.3798115395).epsilon(1e-6));
  for (int mm : {0, 1, 2}) {
    for (int n = 0; n <= 6; ++n) {
      const MomentCheck mc = phi_moment(n, k, mm);
      CHECK(mc.exact == doctest::Approx(exact_moment(n, k) / (n + 2 * k + mm)).epsilon(1e-13));
      CHECK_MESSAGE(mc.rel_error <= 1e-5, "m=" << mm << " n=" << n);
    }
  }
  const auto table = phi_table(k, m);
  CHECK(phi_table(k, m) == table);
  for (double x : {1e-9, 1e-4, 0.03, 0.7, 2.0, 9.5, 55.0, 300.0, 2000.0}) {
    const double direct = phi_weight_direct(x, k, m);
    CHECK(direct > 0.0);
    CHECK((*table)(x) == doctest::Approx(direct).epsilon(1e-8));
  }
  // Fundamental theorem: d/dx [x^{1-m-2k} Phi] = -x^{-2k-m} f.
  for (double x : {0.2, 1.0, 4.0, 15.0}) {
    const double h = 1e-3 * x;
    const auto t = [&](double y) { return std::pow(y, 1.0 - m - 2 * k) * phi_weight_direct(y, k, m); };
    const double deriv = (t(x - 2 * h) - 8 * t(x - h) + 8 * t(x + h) - t(x + 2 * h)) / (12 * h);
    const double expect = -std::pow(x, -2 * k - m) * f_weight(x, k);
    CHECK(std::abs(deriv / expect - 1.0) <= 1e-4);
  }
  // x Phi(x) -> 0 and Phi(0+) = Gamma(2k-1) / (2k+m-1).
  CHECK(1e-12 * phi_weight(1e-12, k, m) < 1e-11);
  CHECK(phi_weight(1e-12, k, m) == doctest::Approx(std::tgamma(2 * k - 1) / (2 * k + m - 1)).epsilon(1e-5));
}

TEST_CASE("Phi table is safe under concurrent first use") {
  std::vector<std::future<double>> jobs;
  for (int i = 0; i < 8; ++i) {
    jobs.push_back(std::async(std::launch::async, [] { return phi_weight(1.5, 1.7, 3); }));
  }
  const double ref = phi_weight_direct(1.5, 1.7, 3);
  for (auto& j : jobs) CHECK(j.get() == doctest::Approx(ref).epsilon(1e-8));
}

TEST_CASE("reproducing kernel") {
  const double k = 1.25;
  for (double r : {0.0, 0.3, 2.0, 7.5}) {
    const cplx d = reproducing_kernel(r, r, k);
    CHECK(d.imag() == 0.0);
    CHECK(d.real() > 0.0);
  }
  for (auto [l, lp] : {std::pair{cplx(0.7, 0.2), cplx(-0.4, 1.1)}, std::pair{cplx(2.0, -1.0), cplx(1.5, 0.5)}}) {
    cplx series = 0.0;
    const cplx w = l * std::conj(lp);
    for (int n = 0; n < 60; ++n) series += bg_coefficient(n, k) * bg_coefficient(n, k) * std::pow(w, n);
    CHECK(std::abs(series - reproducing_kernel(l, lp, k)) <= 1e-8 * std::abs(series));
  }
  const cplx l(0.7, 0.0);
  CHECK(std::abs(reproduce_monomial(2, l, k) - l * l) <= 1e-5);
  const cplx l2(0.3, -0.5);
  for (int p = 0; p <= 3; ++p) CHECK(std::abs(reproduce_monomial(p, l2, k) - std::pow(l2, p)) <= 1e-5);
}

TEST_CASE("resolution of identity") {
  for (int m : {0, 1, 2}) {
    const DarbouxConfig cfg{m};
    for (auto fam : {MeasureFamily::original_bg, MeasureFamily::transformed_bg, MeasureFamily::perelomov}) {
      for (int n = 0; n <= 6; ++n) {
        const cplx d = identity_resolution_check(fam, n, n, kP, cfg);
        CHECK_MESSAGE(std::abs(d - 1.0) <= 1e-5, to_string(fam) << " m=" << m << " n=" << n);
      }
      CHECK(identity_resolution_check(fam, 0, 1, kP, cfg) == cplx(0.0));
      CHECK(identity_resolution_check(fam, 4, 2, kP, cfg) == cplx(0.0));
    }
  }
  CHECK(bg_measure_weight(cplx(0.3, 0.4), 1.25) > 0.0);
  CHECK(transformed_bg_measure_weight(cplx(0.3, 0.4), kP, DarbouxConfig{1}) > 0.0);
  CHECK(perelomov_measure_weight(cplx(0.3, 0.4), 1.25) == doctest::Approx(1.5 / M_PI / std::pow(0.75, 2)));
  CHECK_THROWS_AS(perelomov_measure_weight(1.0, 1.25), std::domain_error);
}
