#include <doctest.h>

#include <cmath>

#include "sosc/quadrature.hpp"
#include "sosc/special_functions.hpp"
#include "sosc/states.hpp"

using namespace sosc;

namespace {

const auto kGrid = RadialGrid::make(GridSpec{});
const PhysParams kP = PhysParams::from_g(2.0);
const FrequencyProfile kFree = FrequencyProfile::zero();

Envelope free_env(double t, Convention c = Convention::paper_free_particle) {
  return envelope_at(kFree, t, c);
}

double max_diff(const GridWave& a, const GridWave& b) { return grid_max_abs(a - b); }

}  // namespace

TEST_CASE("physical parameters") {
  CHECK(kP.k == 1.25);
  CHECK(PhysParams::from_k(1.0).g == doctest::Approx(0.75));
  CHECK_THROWS_AS(PhysParams::from_g(-0.3), std::domain_error);
  PhysParams bad = kP;
  bad.g = 2.1;
  CHECK_THROWS_AS(bad.validate(), std::domain_error);
}

TEST_CASE("basis states are orthonormal for both conventions") {
  for (auto conv : {Convention::paper_free_particle, Convention::wronskian_half_i}) {
    for (double t : {0.0, 1.0, 2.0}) {
      const Envelope env = free_env(t, conv);
      std::vector<GridWave> psi;
      for (int n = 0; n <= 10; ++n) psi.push_back(basis_state(BasisIndex::bound(n, kP), kP, env, kGrid));
      double worst = 0.0;
      for (int a = 0; a <= 10; ++a) {
        for (int b = a; b <= 10; ++b) {
          worst = std::max(worst, std::abs(grid_inner(psi[a], psi[b]) - (a == b ? 1.0 : 0.0)));
        }
      }
      CHECK_MESSAGE(worst <= 1e-7, "t=" << t << " worst " << worst);
    }
  }
}

TEST_CASE("basis state density against an adaptive-quadrature oracle") {
  const Envelope env = free_env(0.0);
  // States are built in the W = i/2 gauge.
  const double gam = to_half_i_gauge(env).gamma;
  const double k = kP.k;
  // |psi_0|^2 = 2^{-2k} Gamma(2k)^{-1} gamma^{-1/2} y^{4k-1} e^{-y^2/2}, y = x / (2 sqrt(gamma)).
  auto dens = [&](double x) {
    const double y = x / (2.0 * std::sqrt(gam));
    return std::pow(2.0, -2 * k) / std::tgamma(2 * k) / std::sqrt(gam) * std::pow(y, 4 * k - 1) *
           std::exp(-y * y / 2.0);
  };
  const auto psi = basis_state(BasisIndex::bound(0, kP), kP, env, kGrid);
  for (int i = 0; i < kGrid->size(); i += 97) {
    CHECK(std::norm(psi.values[i]) == doctest::Approx(dens(kGrid->points()[i])).epsilon(1e-12));
  }
  const auto total = num::integrate_semiaxis([&](double x) -> cplx { return dens(x); });
  CHECK(total.value.real() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("virtual branch") {
  const Envelope env = free_env(0.7);
  CHECK_THROWS_AS(basis_state(BasisIndex::virtual_upper(1, 2 * kP.k - 1), kP, env, kGrid),
                  std::domain_error);
  for (int n = 0; n <= 4; ++n) {
    const auto u = basis_state(BasisIndex::virtual_upper(n, 2 * kP.k - 1), kP, env, kGrid, false);
    CHECK(u.values.abs().minCoeff() > 0.0);
    CHECK_FALSE(laguerre_has_negative_root(n, 2 * kP.k - 1));
  }
  // alpha = 1-2k: one negative-axis root exactly when (alpha+1)_n < 0.
  const double am = 1.0 - 2.0 * kP.k;
  for (int n = 1; n <= 6; ++n) {
    int changes = 0;
    double prev = num::laguerre(n, am, -1e-9);
    for (double s = 0.01; s < 200.0; s += 0.01) {
      const double v = num::laguerre(n, am, -s);
      if ((v > 0) != (prev > 0)) ++changes;
      prev = v;
    }
    CHECK(changes <= 1);
    CHECK((changes == 1) == laguerre_has_negative_root(n, am));
  }
  CHECK(separation_constant(BasisIndex::virtual_upper(2, 2 * kP.k - 1), kP) == doctest::Approx(-(kP.k + 2)));
  CHECK(separation_constant(BasisIndex::virtual_upper(2, 1 - 2 * kP.k), kP) == doctest::Approx(kP.k - 3));
}

TEST_CASE("closed-form x derivative matches the grid derivative") {
  const Envelope env = free_env(1.3);
  for (auto idx : {BasisIndex::bound(3, kP), BasisIndex::virtual_upper(2, 2 * kP.k - 1)}) {
    const bool norm = idx.branch == Branch::bound;
    const auto f = basis_state(idx, kP, env, kGrid, norm);
    const auto d = basis_state_dx(idx, kP, env, kGrid, norm);
    const auto fd = grid_derivative(f, 1);
    // Compare in the region where u is of moderate size.
    double worst = 0.0;
    for (int i = fd.untrusted; i < kGrid->size() - fd.untrusted; ++i) {
      if (kGrid->points()[i] > 12.0) break;
      worst = std::max(worst, std::abs(fd.values[i] - d.values[i]) / (1.0 + std::abs(d.values[i])));
    }
    CHECK(worst < 1e-8);
  }
}

TEST_CASE("closed-form coherent-state derivatives match the grid derivative") {
  for (double t : {0.0, 1.3}) {
    const Envelope env = free_env(t);
    const cplx lambda(0.8, -0.6), z(0.3, 0.4);
    const auto pairs = {std::pair{bg_state_closed(lambda, kP, env, kGrid), bg_state_closed_dx(lambda, kP, env, kGrid)},
                        std::pair{perelomov_state(z, kP, env, kGrid), perelomov_state_dx(z, kP, env, kGrid)}};
    for (const auto& [f, d] : pairs) {
      const auto fd = grid_derivative(f, 1);
      CHECK(grid_max_abs(fd - d, fd.untrusted) < 1e-8);
    }
  }
}

TEST_CASE("BG series coefficients") {
  const double k = kP.k;
  CHECK(bg_coefficient(0, k) == 1.0);
  CHECK(bg_coefficient(1, k) == doctest::Approx(-1.0 / std::sqrt(2 * k)));
  for (int n = 1; n < 30; ++n) {
    CHECK(bg_coefficient(n, k) * std::sqrt(n * (n + 2 * k - 1)) == doctest::Approx(-bg_coefficient(n - 1, k)));
  }
  const Envelope env = free_env(0.0);
  const auto s0 = bg_state_series(0.0, 1, kP, env, kGrid);
  CHECK(max_diff(s0.wave, basis_state(BasisIndex::bound(0, kP), kP, env, kGrid)) == 0.0);
  CHECK_THROWS_AS(bg_state_series(1.021, 5, kP, env, kGrid), std::runtime_error);
}

TEST_CASE("BG closed form: norm, small-lambda limit, series agreement") {
  for (double t : {0.0, 1.0, 2.0}) {
    const Envelope env = free_env(t);
    const auto psi = bg_state_closed(1.021, kP, env, kGrid);
    CHECK(grid_norm_sq(psi) == doctest::Approx(1.0).epsilon(1e-7));
  }
  const Envelope env0 = free_env(0.0);
  const auto tiny = bg_state_closed(1e-8, kP, env0, kGrid);
  const auto psi0 = basis_state(BasisIndex::bound(0, kP), kP, env0, kGrid);
  const cplx phase = grid_inner(psi0, tiny) / std::abs(grid_inner(psi0, tiny));
  CHECK(grid_max_abs(tiny - phase * psi0) / grid_max_abs(psi0) <= 1e-6);
  for (cplx lam : {cplx(1.021), cplx(0.7, 0.9), cplx(-2.0, 0.5), cplx(3.0, -4.0)}) {
    for (double t : {0.0, 0.5, 2.0}) {
      const Envelope env = free_env(t);
      const auto closed = bg_state_closed(lam, kP, env, kGrid);
      const auto series = bg_state_series(lam, 60, kP, env, kGrid, 1e-8);
      CHECK_MESSAGE(max_diff(closed, bg_phase(lam, kP.k) * series.wave) <= 1e-8,
                    "lambda=" << lam << " t=" << t);
    }
  }
  CHECK(bg_terms_needed(1.021, kP.k) < 30);
}

TEST_CASE("Perelomov closed form vs series, norm, z = 0") {
  const double z0 = 1.0 / std::sqrt(2 * kP.k + 1);
  CHECK(z0 == doctest::Approx(0.534522).epsilon(1e-6));
  for (double t : {0.0, 2.0}) {
    const Envelope env = free_env(t);
    CHECK(grid_norm_sq(perelomov_state(z0, kP, env, kGrid)) == doctest::Approx(1.0).epsilon(1e-7));
    const auto zero = perelomov_state(0.0, kP, env, kGrid);
    CHECK(max_diff(zero, basis_state(BasisIndex::bound(0, kP), kP, env, kGrid)) < 1e-14);
  }
  for (cplx z : {cplx(z0), cplx(0.3, -0.6), cplx(-0.8, 0.1)}) {
    for (double t : {0.0, 1.0, 2.0}) {
      const Envelope env = free_env(t);
      const int n = perelomov_terms_needed(z, kP.k);
      const auto series = perelomov_state_series(z, n, kP, env, kGrid);
      CHECK_MESSAGE(max_diff(perelomov_state(z, kP, env, kGrid), series.wave) <= 1e-8,
                    "z=" << z << " t=" << t);
    }
  }
  CHECK_THROWS_AS(perelomov_state(1.0, kP, free_env(0.0), kGrid), std::domain_error);
  CHECK(perelomov_coefficient(0, kP.k) == doctest::Approx(1.0));
}

TEST_CASE("density moments") {
  const Envelope env = free_env(0.0);
  const auto psi = basis_state(BasisIndex::bound(0, kP), kP, env, kGrid);
  const auto m = density_moments(psi);
  CHECK(m.norm == doctest::Approx(1.0).epsilon(1e-8));
  const auto m2 = density_moments(cplx(2.0) * psi);
  CHECK(m2.norm == doctest::Approx(4.0 * m.norm).epsilon(1e-14));
  CHECK(m2.sigma_x == doctest::Approx(m.sigma_x).epsilon(1e-12));
  // Perelomov spreads less than BG over time.
  const double z0 = 1.0 / std::sqrt(2 * kP.k + 1);
  auto sig = [&](bool bg, double t) {
    const Envelope e = free_env(t);
    return density_moments(bg ? bg_state_closed(1.021, kP, e, kGrid) : perelomov_state(z0, kP, e, kGrid)).sigma_x;
  };
  CHECK(sig(false, 2.0) / sig(false, 0.0) < sig(true, 2.0) / sig(true, 0.0));
}

TEST_CASE("states solve the Schroedinger equation") {
  for (auto profile : {FrequencyProfile::zero(), FrequencyProfile::constant(0.6)}) {
    for (auto conv : {Convention::paper_free_particle, Convention::wronskian_half_i}) {
      for (double t : {0.0, 1.0}) {
        for (int n = 0; n <= 5; ++n) {
          const Evolution ev = [&](double s) {
            return basis_state(BasisIndex::bound(n, kP), kP, envelope_at(profile, s, conv), kGrid);
          };
          CHECK(schrodinger_residual(ev, t, profile, kP.g) <= 1e-5);
        }
        const Evolution bg = [&](double s) { return bg_state_closed(1.021, kP, envelope_at(profile, s, conv), kGrid); };
        CHECK(schrodinger_residual(bg, t, profile, kP.g) <= 1e-5);
        const Evolution pz = [&](double s) {
          return perelomov_state(cplx(0.3, 0.4), kP, envelope_at(profile, s, conv), kGrid);
        };
        CHECK(schrodinger_residual(pz, t, profile, kP.g) <= 1e-5);
      }
    }
  }
  // A wrong coupling is detected.
  const Evolution ev = [&](double s) { return basis_state(BasisIndex::bound(1, kP), kP, free_env(s), kGrid); };
  CHECK(schrodinger_residual(ev, 0.5, kFree, kP.g + 0.1) > 1e-2);
}
