#include <doctest.h>

#include <cmath>

#include "sosc/algebra.hpp"

using namespace sosc;

namespace {

const auto kGrid = RadialGrid::make(GridSpec{});
const PhysParams kP = PhysParams::from_g(2.0);

OperatorContext ctx_at(double t, Convention c = Convention::paper_free_particle) {
  return OperatorContext::at(kP, FrequencyProfile::zero(), t, c);
}

GridWave psi(int n, const OperatorContext& c) { return basis_state(BasisIndex::bound(n, kP), kP, c.env, kGrid); }

// Max |a/b - r| where |b| is at least 1e-3 of its peak.
double ratio_dev(const GridWave& a, const GridWave& b, cplx r) {
  const double peak = grid_max_abs(b);
  double worst = 0.0;
  for (int i = a.untrusted; i < a.size() - a.untrusted; ++i) {
    if (std::abs(b.values[i]) < 1e-3 * peak) continue;
    worst = std::max(worst, std::abs(a.values[i] / b.values[i] - r));
  }
  return worst;
}

}  // namespace

TEST_CASE("generators on the ground state") {
  const auto c = ctx_at(0.0);
  const auto p0 = psi(0, c);
  CHECK(ratio_dev(apply_generator(Generator::k_zero, p0, c), p0, kP.k) <= 1e-5);
  CHECK(std::sqrt(grid_norm_sq(apply_generator(Generator::k_minus, p0, c))) <= 1e-5);
  const cplx proj = ladder_projection(psi(1, c), apply_generator(Generator::k_plus, p0, c));
  CHECK(std::abs(proj + std::sqrt(2 * kP.k)) <= 1e-5);
}

TEST_CASE("ladder relations with the printed coefficients") {
  for (double t : {0.0, 1.0}) {
    for (auto conv : {Convention::paper_free_particle, Convention::wronskian_half_i}) {
      const auto c = ctx_at(t, conv);
      for (int n = 0; n <= 5; ++n) {
        const auto pn = psi(n, c);
        double res = 0.0;
        const cplx up = ladder_projection(psi(n + 1, c), apply_generator(Generator::k_plus, pn, c), &res);
        CHECK(std::abs(up + ladder_coefficient(n, kP.k, true)) <= 1e-5);
        CHECK(res <= 1e-5);
        if (n > 0) {
          const cplx down = ladder_projection(psi(n - 1, c), apply_generator(Generator::k_minus, pn, c), &res);
          CHECK(std::abs(down + ladder_coefficient(n, kP.k, false)) <= 1e-5);
          CHECK(res <= 1e-5);
        }
        const cplx diag = ladder_projection(pn, apply_generator(Generator::k_zero, pn, c), &res);
        CHECK(std::abs(diag - (kP.k + n)) <= 1e-5);
        CHECK(res <= 1e-5);
      }
    }
  }
}

TEST_CASE("grid operators are linear") {
  // Rounding of the input is amplified by ||k0|| ~ x^2/dx^2, so the 1e-10
  // bound needs dx ~ 0.02; n = 2048 on the default range gives that.
  GridSpec spec;
  spec.n = 2048;
  const auto grid = RadialGrid::make(spec);
  const auto c = ctx_at(0.6);
  const auto a = basis_state(BasisIndex::bound(1, kP), kP, c.env, grid);
  const auto b = bg_state_closed(cplx(0.4, 0.3), kP, c.env, grid);
  const cplx s(0.3, -1.2), u(2.0, 0.5);
  for (auto op : {Generator::k_minus, Generator::k_plus, Generator::k_zero, Generator::hamiltonian_h0}) {
    const auto lhs = apply_generator(op, s * a + u * b, c);
    const auto rhs = s * apply_generator(op, a, c) + u * apply_generator(op, b, c);
    // L2 norm: pointwise, the stacked stencils amplify rounding next to the origin.
    const double dev = std::sqrt(grid_norm_sq(lhs - rhs) / grid_norm_sq(lhs));
    CHECK_MESSAGE(dev <= 1e-10, to_string(op) << " " << dev << " max " << grid_max_abs(lhs - rhs));
  }
}

TEST_CASE("Casimir identity") {
  CHECK(casimir_check(kP) <= 1e-12);
  CHECK(3.0 / 16.0 - kP.g / 4.0 == doctest::Approx(-5.0 / 16.0));
  CHECK(casimir_check(PhysParams::from_g(0.75)) <= 1e-12);
  for (double g : {-0.2, 0.1, 3.3, 17.0, 250.0}) CHECK(casimir_check(PhysParams::from_g(g)) <= 1e-12);
}

TEST_CASE("holomorphic generators") {
  const double k = kP.k;
  const int n = 40;
  const auto e0 = CoeffVector::basis(0, n);
  const auto k0e0 = holo_generator(Generator::k_zero, e0, k);
  CHECK(std::abs(k0e0.c[0] - k) < 1e-15);
  CHECK(holo_generator(Generator::k_minus, e0, k).norm_sq() == 0.0);
  // k_+ e_n = -c_n^+ e_{n+1} as for the grid basis.
  for (int j = 0; j < 6; ++j) {
    const auto up = holo_generator(Generator::k_plus, CoeffVector::basis(j, n), k);
    CHECK(std::abs(up.c[j + 1] + ladder_coefficient(j, k, true)) < 1e-12);
  }
  auto apply2 = [&](Generator a, Generator b, const CoeffVector& v) {
    return holo_generator(a, holo_generator(b, v, k), k);
  };
  // Commutators on random-ish vectors; interior rows only.
  std::vector<cplx> data(n);
  for (int j = 0; j < n; ++j) data[j] = cplx(std::sin(1.3 * j + 0.2), std::cos(0.7 * j)) / (1.0 + j);
  const CoeffVector v(data);
  const int rows = n - 2;
  double worst = 0.0;
  for (int j = 0; j < rows; ++j) {
    const cplx c0p = apply2(Generator::k_zero, Generator::k_plus, v).c[j] - apply2(Generator::k_plus, Generator::k_zero, v).c[j];
    const cplx c0m = apply2(Generator::k_zero, Generator::k_minus, v).c[j] - apply2(Generator::k_minus, Generator::k_zero, v).c[j];
    const cplx cmp = apply2(Generator::k_minus, Generator::k_plus, v).c[j] - apply2(Generator::k_plus, Generator::k_minus, v).c[j];
    const cplx kp = holo_generator(Generator::k_plus, v, k).c[j];
    const cplx km = holo_generator(Generator::k_minus, v, k).c[j];
    const cplx kz = holo_generator(Generator::k_zero, v, k).c[j];
    worst = std::max({worst, std::abs(c0p - kp), std::abs(c0m + km), std::abs(cmp - 2.0 * kz)});
  }
  CHECK(worst <= 1e-10);
  // BG eigenrelation.
  for (cplx lam : {cplx(1.021), cplx(0.4, -2.2)}) {
    const auto bg = CoeffVector::bg(lam, k, n);
    const auto km = holo_generator(Generator::k_minus, bg, k);
    double dev = 0.0;
    for (int j = 0; j < holo_valid_rows(Generator::k_minus, n); ++j) dev = std::max(dev, std::abs(km.c[j] - lam * bg.c[j]));
    CHECK(dev <= 1e-10);
    CHECK(holo_inner(bg, bg).real() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("grid and holomorphic matrix elements of k0 agree") {
  const auto c = ctx_at(0.8);
  const int n = 8;
  for (int a = 0; a <= 4; ++a) {
    const auto k0a = apply_generator(Generator::k_zero, psi(a, c), c);
    for (int b = 0; b <= 4; ++b) {
      const cplx grid = grid_inner(psi(b, c), k0a);
      const cplx holo = holo_inner(CoeffVector::basis(b, n), holo_generator(Generator::k_zero, CoeffVector::basis(a, n), kP.k));
      CHECK(std::abs(grid - holo) <= 1e-5);
    }
  }
}

TEST_CASE("BG means") {
  const double k = kP.k;
  CHECK(mean_k0(0.0, k) == k);
  CHECK(mean_k0_sq(0.0, k) == k * k);
  for (cplx lam : {cplx(1.021), cplx(0.3, 2.0), cplx(6.0)}) {
    const int n = 120;
    const auto bg = CoeffVector::bg(lam, k, n);
    double m1 = 0.0, m2 = 0.0;
    for (int j = 0; j < n; ++j) {
      m1 += (j + k) * std::norm(bg.c[j]);
      m2 += (j + k) * (j + k) * std::norm(bg.c[j]);
    }
    CHECK(mean_k0(lam, k) == doctest::Approx(m1).epsilon(1e-8));
    CHECK(mean_k0_sq(lam, k) == doctest::Approx(m2).epsilon(1e-8));
  }
  const double root = solve_bg_label(k + 1.0, k);
  CHECK(mean_k0(root, k) == doctest::Approx(k + 1.0).epsilon(1e-13));
  CHECK(root == doctest::Approx(1.814705).epsilon(1e-6));
  CHECK_THROWS_AS(solve_bg_label(k - 0.1, k), std::domain_error);
}
