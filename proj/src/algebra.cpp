#include "sosc/algebra.hpp"

#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <stdexcept>

#include "sosc/special_functions.hpp"

namespace sosc {

namespace {

constexpr cplx kI(0.0, 1.0);

// 2[e^2 f'' - i e ed x f' - (i/2) e ed f - (1/4) ed^2 x^2 f - e^2 g f / x^2].
GridWave lowering_like(const GridWave& f, cplx e, cplx ed, double g) {
  const GridWave d1 = grid_derivative(f, 1);
  const GridWave d2 = grid_derivative(f, 2);
  const RealArray& x = f.x();
  CplxArray v = 2.0 * (e * e * d2.values - kI * e * ed * x * d1.values - 0.5 * kI * e * ed * f.values -
                       0.25 * ed * ed * x.square() * f.values - e * e * g * f.values / x.square());
  return {f.grid, std::move(v), f.t, d2.untrusted};
}

}  // namespace

std::string to_string(Generator g) {
  switch (g) {
    case Generator::k_minus:
      return "k_minus";
    case Generator::k_plus:
      return "k_plus";
    case Generator::k_zero:
      return "k_zero";
    case Generator::hamiltonian_h0:
      return "h0";
  }
  return "?";
}

OperatorContext OperatorContext::at(const PhysParams& p, const FrequencyProfile& profile, double t,
                                    Convention c) {
  return {p, envelope_at(profile, t, c), profile.omega(t)};
}

GridWave apply_generator(Generator op, const GridWave& w, const OperatorContext& ctx) {
  const Envelope env = to_half_i_gauge(ctx.env);
  const double g = ctx.params.g;
  switch (op) {
    case Generator::k_minus:
      return lowering_like(w, env.eps, env.eps_dot, g);
    case Generator::k_plus:
      return lowering_like(w, std::conj(env.eps), std::conj(env.eps_dot), g);
    case Generator::k_zero: {
      const GridWave mp = apply_generator(Generator::k_minus, apply_generator(Generator::k_plus, w, ctx), ctx);
      const GridWave pm = apply_generator(Generator::k_plus, apply_generator(Generator::k_minus, w, ctx), ctx);
      return cplx(0.5) * (mp - pm);
    }
    case Generator::hamiltonian_h0: {
      const GridWave d2 = grid_derivative(w, 2);
      const RealArray& x = w.x();
      CplxArray v = -d2.values + (ctx.omega * ctx.omega * x.square() + g / x.square()) * w.values;
      return {w.grid, std::move(v), w.t, d2.untrusted};
    }
  }
  throw std::invalid_argument("apply_generator: unknown generator");
}

double ladder_coefficient(int n, double k, bool raising) {
  if (n < 0) throw std::invalid_argument("ladder_coefficient: n must be >= 0");
  return raising ? std::sqrt((n + 1.0) * (n + 2.0 * k)) : std::sqrt(n * (n + 2.0 * k - 1.0));
}

CoeffVector CoeffVector::basis(int n, int size) {
  if (n < 0 || n >= size) throw std::out_of_range("CoeffVector::basis: index outside truncation");
  CoeffVector v(std::vector<cplx>(size, 0.0));
  v.c[n] = 1.0;
  return v;
}

CoeffVector CoeffVector::bg(cplx lambda, double k, int size) {
  const double n0 = bg_normalization(lambda, k);
  std::vector<cplx> c(size);
  for (int n = 0; n < size; ++n) c[n] = n0 * bg_coefficient(n, k) * std::pow(lambda, n);
  return CoeffVector(std::move(c));
}

double CoeffVector::norm_sq() const {
  double s = 0.0;
  for (const cplx& x : c) s += std::norm(x);
  return s;
}

int holo_valid_rows(Generator op, int size) {
  switch (op) {
    case Generator::k_zero:
    case Generator::k_plus:
      return size;
    case Generator::k_minus:
      return size - 1;
    default:
      throw std::invalid_argument("holo_valid_rows: h0 has no holomorphic form here");
  }
}

CoeffVector holo_generator(Generator op, const CoeffVector& in, double k) {
  const int n = in.size();
  std::vector<cplx> v(n), out(n, 0.0);
  std::vector<double> a(n);
  for (int j = 0; j < n; ++j) {
    a[j] = bg_coefficient(j, k);
    v[j] = a[j] * in.c[j];
  }
  switch (op) {
    case Generator::k_zero:
      for (int j = 0; j < n; ++j) out[j] = (j + k) * v[j];
      break;
    case Generator::k_plus:
      for (int j = 1; j < n; ++j) out[j] = v[j - 1];
      break;
    case Generator::k_minus:
      for (int j = 0; j + 1 < n; ++j) out[j] = (j + 1.0) * (j + 2.0 * k) * v[j + 1];
      break;
    default:
      throw std::invalid_argument("holo_generator: h0 has no holomorphic form here");
  }
  for (int j = 0; j < n; ++j) out[j] /= a[j];
  return CoeffVector(std::move(out));
}

cplx holo_inner(const CoeffVector& a, const CoeffVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("holo_inner: size mismatch");
  // In monomial form v_n = a_n c_n the weight 1/a_n^2 restores sum conj(c) c'.
  cplx s = 0.0;
  for (int n = 0; n < a.size(); ++n) s += std::conj(a.c[n]) * b.c[n];
  return s;
}

double mean_k0(cplx lambda, double k) {
  if (!(k > 0.5)) throw std::domain_error("mean_k0: need k > 1/2");
  const double r = std::abs(lambda);
  // |l| I_{2k}(2|l|)/I_{2k-1}(2|l|) = |l|^2 Itilde_{2k}/Itilde_{2k-1}.
  const double ratio = num::bessel_i_reduced(2 * k, 2 * r).real() /
                       num::bessel_i_reduced(2 * k - 1, 2 * r).real();
  return k + r * r * ratio;
}

double mean_k0_sq(cplx lambda, double k) {
  if (!(k > 0.5)) throw std::domain_error("mean_k0_sq: need k > 1/2");
  const double r = std::abs(lambda);
  const double base = num::bessel_i_reduced(2 * k - 1, 2 * r).real();
  const double r1 = num::bessel_i_reduced(2 * k, 2 * r).real() / base;
  const double r2 = num::bessel_i_reduced(2 * k + 1, 2 * r).real() / base;
  return k * k + (2 * k + 1) * r * r * r1 + std::pow(r, 4) * r2;
}

double solve_bg_label(double target, double k) {
  if (!(target > k)) throw std::domain_error("solve_bg_label: target must exceed k");
  auto f = [&](double x) { return mean_k0(x, k) - target; };
  double hi = 1.0;
  while (f(hi) < 0.0) {
    hi *= 2.0;
    if (hi > 300.0) throw std::domain_error("solve_bg_label: target out of range");
  }
  std::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, 0.0, hi, boost::math::tools::eps_tolerance<double>(52),
                                                   iters);
  return 0.5 * (r.first + r.second);
}

double casimir_check(const PhysParams& p) {
  return std::abs((3.0 / 16.0 - p.g / 4.0) - p.k * (1.0 - p.k));
}

cplx ladder_projection(const GridWave& target, const GridWave& image, double* residual) {
  const cplx proj = grid_inner(target, image) / grid_inner(target, target);
  if (residual) {
    const GridWave rest = image - proj * target;
    *residual = std::sqrt(grid_norm_sq(rest) / grid_norm_sq(image));
  }
  return proj;
}

}  // namespace sosc
