#include "sosc/states.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "sosc/special_functions.hpp"
#include "sosc/states_detail.hpp"

namespace sosc {

namespace {

constexpr cplx kI(0.0, 1.0);

void check_params(const PhysParams& p) { p.validate(); }

void check_env(const Envelope& env) {
  if (!(env.gamma > 0.0) || !std::isfinite(env.gamma)) {
    throw std::domain_error("envelope: gamma must be finite and > 0");
  }
}

// log(2^{-k} sqrt(n! / Gamma(n+2k))).
double log_bound_norm(int n, double k) {
  return -k * std::log(2.0) + 0.5 * (num::gamma_ln(n + 1.0) - num::gamma_ln(n + 2.0 * k));
}

}  // namespace

PhysParams PhysParams::from_g(double g, int m) {
  if (!(g > -0.25) || !std::isfinite(g)) throw std::domain_error("PhysParams: need g > -1/4");
  PhysParams p;
  p.g = g;
  p.k = 0.5 + 0.25 * std::sqrt(1.0 + 4.0 * g);
  p.m_darboux = m;
  return p;
}

PhysParams PhysParams::from_k(double k, int m) {
  if (!(k > 0.5) || !std::isfinite(k)) throw std::domain_error("PhysParams: need k > 1/2");
  PhysParams p;
  p.k = k;
  p.g = 0.75 + 4.0 * k * (k - 1.0);
  p.m_darboux = m;
  return p;
}

void PhysParams::validate() const {
  if (!(g > -0.25) || !std::isfinite(g)) throw std::domain_error("PhysParams: need g > -1/4");
  if (m_darboux < 0) throw std::domain_error("PhysParams: m must be >= 0");
  const double expect = 0.75 + 4.0 * k * (k - 1.0);
  if (!(std::abs(expect - g) <= 1e-12 * std::max(1.0, std::abs(g))) || !(k > 0.5)) {
    throw std::domain_error("PhysParams: g and k inconsistent (g = 3/4 + 4k(k-1) violated)");
  }
}

double separation_constant(const BasisIndex& idx, const PhysParams& p) {
  (void)p;
  const double v = idx.n + 0.5 * idx.alpha + 0.5;
  return idx.branch == Branch::bound ? v : -v;
}

namespace detail {

BasisSum basis_sum(const std::vector<cplx>& coeffs, const BasisIndex& proto, const PhysParams& p,
                   const Envelope& env_in, std::shared_ptr<const RadialGrid> grid,
                   bool with_derivative, bool normalized) {
  check_params(p);
  const Envelope env = to_half_i_gauge(env_in);
  check_env(env);
  const bool bound = proto.branch == Branch::bound;
  const double alpha = proto.alpha;
  if (bound && std::abs(alpha - (2.0 * p.k - 1.0)) > 1e-12) {
    throw std::invalid_argument("basis_state: bound branch requires alpha = 2k-1");
  }
  if (!bound && std::abs(std::abs(alpha) - std::abs(2.0 * p.k - 1.0)) > 1e-12) {
    throw std::invalid_argument("basis_state: virtual branch requires alpha = +-(2k-1)");
  }
  const double s = bound ? -1.0 : 1.0;
  const cplx a = s / 4.0 + kI * env.gamma_dot / 2.0;
  const double sq = std::sqrt(env.gamma);
  const int nterms = static_cast<int>(coeffs.size());
  // Per-term constants: coefficient * normalization * (conj(eps)/eps)^{lambda_sep}.
  std::vector<cplx> w(nterms);
  for (int n = 0; n < nterms; ++n) {
    BasisIndex idx = proto;
    idx.n = n;
    const double lam = separation_constant(idx, p);
    const double lognorm = normalized ? log_bound_norm(n, p.k) : 0.0;
    w[n] = coeffs[n] * std::exp(lognorm) * std::exp(cplx(0.0, -2.0 * lam * env.arg_eps));
  }
  const RealArray& x = grid->points();
  const int np = grid->size();
  CplxArray val(np), der;
  if (with_derivative) der.resize(np);
  const double pre = std::pow(env.gamma, -0.25);
  for (int i = 0; i < np; ++i) {
    const double y = x[i] / (2.0 * sq);
    const double arg = -s * y * y / 2.0;
    // Recurrences for L^alpha_n(arg) and L^{alpha+1}_{n-1}(arg) together.
    double l_prev = 0.0, l_cur = 1.0;
    double m_prev = 0.0, m_cur = 0.0;  // L^{alpha+1}_{n-1}
    cplx sum = 0.0, dsum = 0.0;
    for (int n = 0; n < nterms; ++n) {
      if (n > 0) {
        const double l_next = ((2.0 * (n - 1) + 1.0 + alpha - arg) * l_cur - (n - 1 + alpha) * l_prev) / n;
        l_prev = l_cur;
        l_cur = l_next;
        if (n == 1) {
          m_prev = 0.0;
          m_cur = 1.0;
        } else {
          const int j = n - 2;  // m_cur holds degree j, step to j+1
          const double m_next =
              ((2.0 * j + 1.0 + alpha + 1.0 - arg) * m_cur - (j + alpha + 1.0) * m_prev) / (j + 1.0);
          m_prev = m_cur;
          m_cur = m_next;
        }
      }
      sum += w[n] * l_cur;
      if (with_derivative) dsum += w[n] * m_cur;
    }
    const cplx common = pre * std::pow(y, alpha + 0.5) * std::exp(a * y * y);
    val[i] = common * sum;
    if (with_derivative) {
      der[i] = common * (((alpha + 0.5) / y + 2.0 * a * y) * sum + s * y * dsum) / (2.0 * sq);
    }
  }
  BasisSum out;
  out.value = GridWave(grid, std::move(val), env_in.t);
  if (with_derivative) out.dx = GridWave(grid, std::move(der), env_in.t);
  return out;
}

}  // namespace detail

GridWave basis_state(const BasisIndex& idx, const PhysParams& p, const Envelope& env,
                     std::shared_ptr<const RadialGrid> grid, bool normalize) {
  if (idx.n < 0) throw std::invalid_argument("basis_state: n must be >= 0");
  if (normalize && idx.branch != Branch::bound) {
    throw std::domain_error("basis_state: virtual-branch solutions are not normalizable");
  }
  std::vector<cplx> c(idx.n + 1, 0.0);
  c[idx.n] = 1.0;
  return detail::basis_sum(c, idx, p, env, std::move(grid), false, normalize).value;
}

GridWave basis_state_dx(const BasisIndex& idx, const PhysParams& p, const Envelope& env,
                        std::shared_ptr<const RadialGrid> grid, bool normalize) {
  if (idx.n < 0) throw std::invalid_argument("basis_state_dx: n must be >= 0");
  if (normalize && idx.branch != Branch::bound) {
    throw std::domain_error("basis_state_dx: virtual-branch solutions are not normalizable");
  }
  std::vector<cplx> c(idx.n + 1, 0.0);
  c[idx.n] = 1.0;
  return detail::basis_sum(c, idx, p, env, std::move(grid), true, normalize).dx;
}

double bg_coefficient(int n, double k) {
  const double mag =
      std::exp(0.5 * (num::gamma_ln(2.0 * k) - num::gamma_ln(n + 1.0) - num::gamma_ln(n + 2.0 * k)));
  return n % 2 == 0 ? mag : -mag;
}

double bg_normalization(cplx lambda, double k) {
  // |l|^{k-1/2} / sqrt(I_nu(2|l|) Gamma(2k)) with I_nu(2r) = r^nu Itilde(2r).
  const double r = std::abs(lambda);
  const double nu = 2.0 * k - 1.0;
  const double it = num::bessel_i_reduced(nu, 2.0 * r).real();
  return 1.0 / std::sqrt(it * std::tgamma(2.0 * k));
}

cplx bg_phase(cplx lambda, double k) {
  if (lambda == cplx(0.0)) return 1.0;
  return std::exp(cplx(0.0, (k - 0.5) * std::arg(lambda)));
}

namespace {

GridWave bg_closed_impl(cplx lambda, const PhysParams& p, const Envelope& env_in,
                        std::shared_ptr<const RadialGrid> grid, bool derivative) {
  check_params(p);
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    throw std::domain_error("bg_state_closed: lambda must be finite");
  }
  const Envelope env = to_half_i_gauge(env_in);
  check_env(env);
  const double nu = 2.0 * p.k - 1.0;
  const cplx mu = std::sqrt(lambda / 2.0);
  const double r2 = std::norm(mu);
  const double it0 = num::bessel_i_reduced(nu, 4.0 * r2).real();
  const double abs_eps = std::abs(env.eps);
  // (x/(2 eps))^nu on the continued branch of arg eps.
  const cplx eps_pow = std::pow(abs_eps, -nu) * std::exp(cplx(0.0, -nu * env.arg_eps));
  const cplx front = bg_phase(lambda, p.k) * std::pow(2.0, -0.5 * nu) / (2.0 * env.eps) * eps_pow /
                     std::sqrt(it0);
  const cplx quad = kI * env.eps_dot / (4.0 * env.eps);
  const cplx shift = -2.0 * std::conj(env.eps) * mu * mu / env.eps;
  const cplx dz = mu / env.eps;
  const RealArray& x = grid->points();
  CplxArray v(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    const double xi = x[i];
    const cplx z = dz * xi;
    const cplx common = front * std::sqrt(xi) * std::pow(0.5 * xi, nu) * std::exp(quad * xi * xi + shift);
    const cplx i0 = num::bessel_i_reduced(nu, z);
    if (!derivative) {
      v[i] = common * i0;
    } else {
      // d/dz Itilde_nu(z) = (z/2) Itilde_{nu+1}(z).
      v[i] = common * (((nu + 0.5) / xi + 2.0 * quad * xi) * i0 +
                       dz * 0.5 * z * num::bessel_i_reduced(nu + 1.0, z));
    }
  }
  return {grid, std::move(v), env_in.t};
}

}  // namespace

GridWave bg_state_closed(cplx lambda, const PhysParams& p, const Envelope& env,
                         std::shared_ptr<const RadialGrid> grid) {
  return bg_closed_impl(lambda, p, env, std::move(grid), false);
}

GridWave bg_state_closed_dx(cplx lambda, const PhysParams& p, const Envelope& env,
                            std::shared_ptr<const RadialGrid> grid) {
  return bg_closed_impl(lambda, p, env, std::move(grid), true);
}

int bg_terms_needed(cplx lambda, double k, double tol, int cap) {
  const double n0 = bg_normalization(lambda, k);
  const double r = std::abs(lambda);
  for (int n = 1; n <= cap; ++n) {
    if (r == 0.0) return 1;
    const double c = n0 * std::abs(bg_coefficient(n, k)) * std::pow(r, n);
    if (c < tol) return n;
  }
  return cap;
}

SeriesResult bg_state_series(cplx lambda, int n_trunc, const PhysParams& p, const Envelope& env,
                             std::shared_ptr<const RadialGrid> grid, double tail_tol) {
  check_params(p);
  if (n_trunc < 1) throw std::invalid_argument("bg_state_series: need at least one term");
  const double n0 = bg_normalization(lambda, p.k);
  std::vector<cplx> c(n_trunc);
  for (int n = 0; n < n_trunc; ++n) c[n] = n0 * bg_coefficient(n, p.k) * std::pow(lambda, n);
  const double tail = n0 * std::abs(bg_coefficient(n_trunc, p.k)) * std::pow(std::abs(lambda), n_trunc);
  if (tail > tail_tol) {
    throw std::runtime_error("bg_state_series: truncation at " + std::to_string(n_trunc) +
                             " leaves tail " + std::to_string(tail));
  }
  SeriesResult r;
  r.wave = detail::basis_sum(c, BasisIndex::bound(0, p), p, env, std::move(grid), false, true).value;
  r.terms = n_trunc;
  r.truncation_error = tail;
  return r;
}

double perelomov_coefficient(int n, double k) {
  return std::exp(0.5 * (num::gamma_ln(n + 2.0 * k) - num::gamma_ln(n + 1.0) - num::gamma_ln(2.0 * k)));
}

namespace {

void check_disc(cplx z, const char* who) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error(std::string(who) + ": need |z| < 1");
}

}  // namespace

namespace {

GridWave perelomov_impl(cplx z, const PhysParams& p, const Envelope& env_in,
                        std::shared_ptr<const RadialGrid> grid, bool derivative) {
  check_params(p);
  check_disc(z, "perelomov_state");
  const Envelope env = to_half_i_gauge(env_in);
  check_env(env);
  const double k = p.k;
  const cplx zeta = z * std::conj(env.eps) / env.eps;
  const cplx eps_pow = std::pow(std::abs(env.eps), -2.0 * k) * std::exp(cplx(0.0, -2.0 * k * env.arg_eps));
  const cplx front = std::pow(2.0, 0.5 - 3.0 * k) / std::sqrt(std::tgamma(2.0 * k)) * eps_pow *
                     std::pow(1.0 - std::norm(z), k) * std::pow(1.0 - zeta, -2.0 * k);
  const cplx quad = -(1.0 + zeta) / ((1.0 - zeta) * 16.0 * env.gamma) +
                    kI * env.gamma_dot / (8.0 * env.gamma);
  const RealArray& x = grid->points();
  CplxArray v(grid->size());
  for (int i = 0; i < grid->size(); ++i) {
    v[i] = front * std::pow(x[i], 2.0 * k - 0.5) * std::exp(quad * x[i] * x[i]);
    if (derivative) v[i] *= (2.0 * k - 0.5) / x[i] + 2.0 * quad * x[i];
  }
  return {grid, std::move(v), env_in.t};
}

}  // namespace

GridWave perelomov_state(cplx z, const PhysParams& p, const Envelope& env,
                         std::shared_ptr<const RadialGrid> grid) {
  return perelomov_impl(z, p, env, std::move(grid), false);
}

GridWave perelomov_state_dx(cplx z, const PhysParams& p, const Envelope& env,
                            std::shared_ptr<const RadialGrid> grid) {
  return perelomov_impl(z, p, env, std::move(grid), true);
}

int perelomov_terms_needed(cplx z, double k, double tol, int cap) {
  const double pre = std::pow(1.0 - std::norm(z), k);
  const double r = std::abs(z);
  if (r == 0.0) return 1;
  for (int n = 1; n <= cap; ++n) {
    if (pre * perelomov_coefficient(n, k) * std::pow(r, n) < tol) return n;
  }
  return cap;
}

SeriesResult perelomov_state_series(cplx z, int n_trunc, const PhysParams& p, const Envelope& env,
                                    std::shared_ptr<const RadialGrid> grid, double tail_tol) {
  check_params(p);
  check_disc(z, "perelomov_state_series");
  if (n_trunc < 1) throw std::invalid_argument("perelomov_state_series: need at least one term");
  const double pre = std::pow(1.0 - std::norm(z), p.k);
  std::vector<cplx> c(n_trunc);
  for (int n = 0; n < n_trunc; ++n) c[n] = pre * perelomov_coefficient(n, p.k) * std::pow(z, n);
  const double tail = pre * perelomov_coefficient(n_trunc, p.k) * std::pow(std::abs(z), n_trunc);
  if (tail > tail_tol) {
    throw std::runtime_error("perelomov_state_series: truncation at " + std::to_string(n_trunc) +
                             " leaves tail " + std::to_string(tail));
  }
  SeriesResult r;
  r.wave = detail::basis_sum(c, BasisIndex::bound(0, p), p, env, std::move(grid), false, true).value;
  r.terms = n_trunc;
  r.truncation_error = tail;
  return r;
}

DensityMoments density_moments(const GridWave& w) {
  const RealArray& x = w.x();
  const RealArray& q = w.grid->weights();
  const RealArray rho = w.values.abs2();
  if (!rho.allFinite()) throw std::domain_error("density_moments: non-finite samples");
  DensityMoments m;
  m.norm = (q * rho).sum();
  if (!(m.norm > 0.0)) throw std::domain_error("density_moments: zero norm");
  m.mean_x = (q * x * rho).sum() / m.norm;
  const double x2 = (q * x.square() * rho).sum() / m.norm;
  m.sigma_x = std::sqrt(std::max(0.0, x2 - m.mean_x * m.mean_x));
  return m;
}

double schrodinger_residual(const Evolution& psi, double t, const FrequencyProfile& profile,
                            double g, const ExtraPotential& extra, double dt) {
  const GridWave now = psi(t);
  const GridWave plus = psi(t + dt);
  const GridWave minus = psi(t - dt);
  const GridWave d2 = grid_derivative(now, 2);
  const RealArray& x = now.x();
  const double w = profile.omega(t);
  RealArray v = w * w * x.square() + g / x.square();
  if (extra) v += extra(t);
  GridWave r(now.grid, kI * (plus.values - minus.values) / (2.0 * dt) + d2.values - v * now.values,
             t, d2.untrusted);
  const double nr = grid_norm_sq(r);
  GridWave ref = now;
  ref.untrusted = r.untrusted;
  return std::sqrt(nr / grid_norm_sq(ref));
}

bool laguerre_has_negative_root(int n, double alpha) { return num::pochhammer(alpha + 1.0, n) < 0.0; }

}  // namespace sosc
