#include "sosc/darboux.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>

#include "sosc/special_functions.hpp"
#include "sosc/states_detail.hpp"

namespace sosc {

namespace {

constexpr cplx kI(0.0, 1.0);

Envelope gauge(const Envelope& env) {
  const Envelope e = to_half_i_gauge(env);
  if (!(e.gamma > 0.0) || !std::isfinite(e.gamma)) throw std::domain_error("darboux: gamma must be > 0");
  return e;
}

// Laguerre polynomials L^{2k-1+j}_{m-j}(zeta) for j = 0, 1, 2 at every grid point.
struct LaguerreTriple {
  RealArray l0, l1, l2;
};

LaguerreTriple laguerre_triple(const DarbouxConfig& cfg, const PhysParams& p, double gamma,
                               const RadialGrid& grid) {
  const RealArray& x = grid.points();
  const double alpha = cfg.alpha(p);
  LaguerreTriple t{RealArray(x.size()), RealArray(x.size()), RealArray(x.size())};
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const double zeta = -x[i] * x[i] / (8.0 * gamma);
    t.l0[i] = num::laguerre(cfg.m, alpha, zeta);
    t.l1[i] = num::laguerre(cfg.m - 1, alpha + 1.0, zeta);
    t.l2[i] = num::laguerre(cfg.m - 2, alpha + 2.0, zeta);
    if (t.l0[i] == 0.0 || !std::isfinite(t.l0[i])) {
      throw NodeError("darboux: L^{2k-1}_m vanishes at x = " + std::to_string(x[i]), x[i]);
    }
  }
  return t;
}

void check_same_grid(const GridWave& a, const GridWave& b, const char* who) {
  if (a.grid != b.grid || a.size() != b.size()) throw std::invalid_argument(std::string(who) + ": grid mismatch");
}

}  // namespace

void DarbouxConfig::validate(const PhysParams& p) const {
  p.validate();
  if (m < 0) throw std::domain_error("DarbouxConfig: m must be >= 0");
  if (!(alpha(p) > 0.0)) throw std::domain_error("DarbouxConfig: need alpha = 2k-1 > 0");
  if (laguerre_has_negative_root(m, alpha(p))) {
    throw std::domain_error("DarbouxConfig: transformation function has a node");
  }
}

GridWave transformation_function(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env,
                                 std::shared_ptr<const RadialGrid> grid) {
  cfg.validate(p);
  return basis_state(BasisIndex::virtual_upper(cfg.m, cfg.alpha(p)), p, env, std::move(grid), false);
}

double reality_condition_check(const GridWave& u) {
  const RealArray& x = u.x();
  const int n = u.size();
  RealArray phase(n);
  for (int i = 0; i < n; ++i) {
    const cplx v = u.values[i];
    if (v == cplx(0.0) || !std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NodeError("reality_condition_check: u vanishes at x = " + std::to_string(x[i]), x[i]);
    }
    if (i == 0) {
      phase[i] = std::arg(v);
      continue;
    }
    const double step = std::arg(v / u.values[i - 1]);
    if (std::abs(step) > 0.5 * std::numbers::pi) {
      const double at = 0.5 * (x[i] + x[i - 1]);
      throw NodeError("reality_condition_check: u changes sign near x = " + std::to_string(at), at);
    }
    phase[i] = phase[i - 1] + step;
  }
  const GridWave d3 = grid_derivative(GridWave(u.grid, phase.cast<cplx>(), u.t, u.untrusted), 3);
  // log(u / conj u) = 2i arg u.
  return 2.0 * grid_max_abs(d3, d3.untrusted);
}

CplxArray darboux_q(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env_in,
                    const RadialGrid& grid) {
  cfg.validate(p);
  const Envelope env = gauge(env_in);
  const double gm = env.gamma;
  const LaguerreTriple lt = laguerre_triple(cfg, p, gm, grid);
  const RealArray& x = grid.points();
  const RealArray re = x / (8.0 * gm) + (4.0 * p.k - 1.0) / (2.0 * x) + x * lt.l1 / (4.0 * gm * lt.l0);
  return re.cast<cplx>() + kI * (x * env.gamma_dot / (4.0 * gm)).cast<cplx>();
}

GridWave apply_L(const GridWave& w, const GridWave& w_x, const DarbouxConfig& cfg, const PhysParams& p,
                 const Envelope& env) {
  check_same_grid(w, w_x, "apply_L");
  const double l1 = std::sqrt(2.0 * gauge(env).gamma);
  const CplxArray q = darboux_q(cfg, p, env, *w.grid);
  return {w.grid, l1 * (w_x.values - q * w.values), w.t, std::max(w.untrusted, w_x.untrusted)};
}

GridWave apply_L(const GridWave& w, const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env) {
  return apply_L(w, grid_derivative(w, 1), cfg, p, env);
}

GridWave apply_L_generic(const GridWave& w, const GridWave& u, double l1) {
  check_same_grid(w, u, "apply_L_generic");
  const GridWave wx = grid_derivative(w, 1);
  const GridWave ux = grid_derivative(u, 1);
  return {w.grid, l1 * (wx.values - ux.values / u.values * w.values), w.t, std::max(wx.untrusted, ux.untrusted)};
}

GridWave apply_L_adjoint(const GridWave& w, const DarbouxConfig& cfg, const PhysParams& p,
                         const Envelope& env) {
  const double l1 = std::sqrt(2.0 * gauge(env).gamma);
  const CplxArray q = darboux_q(cfg, p, env, *w.grid);
  const GridWave wx = grid_derivative(w, 1);
  return {w.grid, l1 * (-wx.values - q.conjugate() * w.values), w.t, wx.untrusted};
}

RealArray potential_difference(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env_in,
                               const RadialGrid& grid) {
  cfg.validate(p);
  const double gm = gauge(env_in).gamma;
  const LaguerreTriple lt = laguerre_triple(cfg, p, gm, grid);
  const RealArray& x = grid.points();
  const RealArray r = x * lt.l1 / (gm * lt.l0);
  return (4.0 * p.k - 1.0) / x.square() + r.square() / 8.0 -
         (x.square() * lt.l2 + 4.0 * gm * lt.l1) / (8.0 * gm * gm * lt.l0) - 1.0 / (4.0 * gm);
}

PotentialDifference potential_difference_check(const DarbouxConfig& cfg, const PhysParams& p,
                                               const Envelope& env,
                                               std::shared_ptr<const RadialGrid> grid) {
  PotentialDifference out;
  out.closed = potential_difference(cfg, p, env, *grid);
  const GridWave u = transformation_function(cfg, p, env, grid);
  const RealArray log_u2 = 2.0 * u.values.abs().log();
  if (!log_u2.allFinite()) throw std::domain_error("potential_difference_check: u overflows on the grid");
  const GridWave d2 = grid_derivative(GridWave(grid, log_u2.cast<cplx>(), u.t), 2);
  out.log_form = -d2.values.real();
  out.untrusted = d2.untrusted;
  const int n = grid->size();
  for (int i = out.untrusted; i < n - out.untrusted; ++i) {
    const double d = std::abs(out.closed[i] - out.log_form[i]) / std::max(1.0, std::abs(out.closed[i]));
    out.discrepancy = std::max(out.discrepancy, d);
  }
  return out;
}

ShapeFit shape_fit(const RealArray& v, const RadialGrid& grid, double x_lo, double x_hi) {
  const RealArray& x = grid.points();
  if (v.size() != x.size()) throw std::invalid_argument("shape_fit: size mismatch");
  std::vector<Eigen::Index> rows;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (x[i] >= x_lo && x[i] <= x_hi) rows.push_back(i);
  }
  if (rows.size() < 3) throw std::invalid_argument("shape_fit: fewer than three points in range");
  const auto nr = static_cast<Eigen::Index>(rows.size());
  Eigen::MatrixXd a(nr, 3);
  Eigen::VectorXd b(nr);
  for (Eigen::Index r = 0; r < nr; ++r) {
    const double xi = x[rows[r]];
    a(r, 0) = xi * xi;
    a(r, 1) = 1.0 / (xi * xi);
    a(r, 2) = 1.0;
    b(r) = v[rows[r]];
  }
  const Eigen::Vector3d c = a.colPivHouseholderQr().solve(b);
  ShapeFit f{c(0), c(1), c(2), 0.0};
  f.relative_residual = (a * c - b).norm() / b.norm();
  return f;
}

double darboux_norm_basis(int n, const PhysParams& p, const DarbouxConfig& cfg) {
  if (n < 0) throw std::invalid_argument("darboux_norm_basis: n must be >= 0");
  return 1.0 / std::sqrt(n + 2.0 * p.k + cfg.m);
}

double darboux_norm_bg(cplx lambda, const PhysParams& p, const DarbouxConfig& cfg) {
  return 1.0 / std::sqrt(mean_k0(lambda, p.k) + p.k + cfg.m);
}

double darboux_norm_perelomov(cplx z, const PhysParams& p, const DarbouxConfig& cfg) {
  if (!(std::abs(z) < 1.0)) throw std::domain_error("darboux_norm_perelomov: need |z| < 1");
  return 1.0 / std::sqrt(cfg.m + 2.0 * p.k / (1.0 - std::norm(z)));
}

double darboux_bg_coefficient(int n, const PhysParams& p, const DarbouxConfig& cfg) {
  return bg_coefficient(n, p.k) * std::sqrt((n + 2.0 * p.k + cfg.m) / (2.0 * p.k + cfg.m));
}

namespace {

// Coefficients d_n of phi = sum d_n phi_n until |d_n| < tol.
template <class Coef>
std::vector<cplx> phi_coefficients(Coef coef, double tol, const char* who) {
  constexpr int kCap = 20000;
  std::vector<cplx> d;
  for (int n = 0; n < kCap; ++n) {
    const cplx c = coef(n);
    if (std::abs(c) < tol && n > 0) return d;
    d.push_back(c);
  }
  throw std::runtime_error(std::string(who) + ": series did not reach the tail tolerance");
}

}  // namespace

TransformedState transformed_state(const TransformedLabel& label, const DarbouxConfig& cfg,
                                   const PhysParams& p, const Envelope& env,
                                   std::shared_ptr<const RadialGrid> grid, Route route, double tail_tol) {
  cfg.validate(p);
  TransformedState out;
  out.label = label;
  const double k = p.k;
  const double sm = std::sqrt(2.0 * k + cfg.m);
  switch (label.kind) {
    case TransformedKind::phi_n: {
      const BasisIndex idx = BasisIndex::bound(label.n, p);
      out.normalization = darboux_norm_basis(label.n, p, cfg);
      out.base = out.normalization * apply_L(basis_state(idx, p, env, grid), basis_state_dx(idx, p, env, grid),
                                             cfg, p, env);
      out.terms = 1;
      return out;
    }
    case TransformedKind::phi_lambda: {
      const cplx lambda = label.value;
      out.normalization = darboux_norm_bg(lambda, p, cfg);
      if (route == Route::closed) {
        out.base = out.normalization *
                   apply_L(bg_state_closed(lambda, p, env, grid), bg_state_closed_dx(lambda, p, env, grid), cfg, p, env);
        return out;
      }
      const double front = out.normalization * bg_normalization(lambda, k) * sm;
      const cplx phase = bg_phase(lambda, k);
      const auto d = phi_coefficients(
          [&](int n) { return phase * front * darboux_bg_coefficient(n, p, cfg) * std::pow(lambda, n); }, tail_tol,
          "transformed_state");
      std::vector<cplx> c(d.size());
      for (std::size_t n = 0; n < d.size(); ++n) c[n] = d[n] * darboux_norm_basis(static_cast<int>(n), p, cfg);
      const auto s = detail::basis_sum(c, BasisIndex::bound(0, p), p, env, grid, true, true);
      out.base = apply_L(s.value, s.dx, cfg, p, env);
      out.terms = static_cast<int>(d.size());
      return out;
    }
    case TransformedKind::phi_z: {
      const cplx z = label.value;
      out.normalization = darboux_norm_perelomov(z, p, cfg);
      if (route == Route::closed) {
        out.base = out.normalization *
                   apply_L(perelomov_state(z, p, env, grid), perelomov_state_dx(z, p, env, grid), cfg, p, env);
        return out;
      }
      const double nz = std::pow(1.0 - std::norm(z), k) * out.normalization * sm;
      const auto d = phi_coefficients(
          [&](int n) {
            return nz * perelomov_coefficient(n, k) * std::sqrt((n + 2.0 * k + cfg.m) / (2.0 * k + cfg.m)) *
                   std::pow(z, n);
          },
          tail_tol, "transformed_state");
      std::vector<cplx> c(d.size());
      for (std::size_t n = 0; n < d.size(); ++n) c[n] = d[n] * darboux_norm_basis(static_cast<int>(n), p, cfg);
      const auto s = detail::basis_sum(c, BasisIndex::bound(0, p), p, env, grid, true, true);
      out.base = apply_L(s.value, s.dx, cfg, p, env);
      out.terms = static_cast<int>(d.size());
      return out;
    }
  }
  throw std::invalid_argument("transformed_state: unknown kind");
}

GridWave p_operator(POperator which, const GridWave& w, const DarbouxConfig& cfg, const OperatorContext& ctx) {
  const PhysParams& p = ctx.params;
  const GridWave adj = apply_L_adjoint(w, cfg, p, ctx.env);
  switch (which) {
    case POperator::p_zero: {
      const GridWave llw = apply_L(adj, cfg, p, ctx.env);
      return llw - cplx(p.k + cfg.m) * w;
    }
    case POperator::p_plus:
      return apply_L(apply_generator(Generator::k_plus, adj, ctx), cfg, p, ctx.env);
    case POperator::p_minus:
      return apply_L(apply_generator(Generator::k_minus, adj, ctx), cfg, p, ctx.env);
  }
  throw std::invalid_argument("p_operator: unknown operator");
}

double p_ladder_coefficient(int n, bool raising, const PhysParams& p, const DarbouxConfig& cfg) {
  if (n < 0) throw std::invalid_argument("p_ladder_coefficient: n must be >= 0");
  if (!raising && n == 0) return 0.0;
  const int n2 = raising ? n + 1 : n - 1;
  const double s = 2.0 * p.k + cfg.m;
  return -ladder_coefficient(n, p.k, raising) * std::sqrt((n + s) * (n2 + s));
}

double p_commutator_polynomial(double p0, const PhysParams& p, const DarbouxConfig& cfg) {
  const double k = p.k;
  const double m = cfg.m;
  return 2.0 * (k * (1.0 - k) + p0 * (k + m) + 2.0 * p0 * p0) * (p0 + k + m);
}

CoeffVector holo_darboux(const CoeffVector& v, HoloDirection dir, const PhysParams& p, const DarbouxConfig& cfg) {
  const double s = 2.0 * p.k + cfg.m;
  CoeffVector out = v;
  for (int n = 0; n < v.size(); ++n) {
    out.c[n] *= dir == HoloDirection::forward ? (n + s) / std::sqrt(s) : std::sqrt(s);
  }
  return out;
}

}  // namespace sosc
