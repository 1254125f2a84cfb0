#include "sosc/verify.hpp"

#include <cfloat>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <stdexcept>

#include "sosc/algebra.hpp"
#include "sosc/darboux.hpp"
#include "sosc/measures.hpp"

namespace sosc {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Runs one check; an exception becomes a FAIL line carrying NaN.
void run(CheckList& out, const std::string& name, double tol, const std::function<double()>& f,
         CheckResult::Compare cmp = CheckResult::Compare::at_most) {
  double v = kNaN;
  try {
    v = f();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "%s: %s\n", name.c_str(), e.what());
  }
  out.push_back({name, v, tol, cmp});
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string tag(double t) { return ".t=" + fmt("%g", t); }

std::shared_ptr<const RadialGrid> grid_of(const RunConfig& c) { return RadialGrid::make(c.grid); }

// Coarse uniform grid for checks that nest several derivatives.
std::shared_ptr<const RadialGrid> nested_grid(const RunConfig& c) {
  GridSpec s;
  s.spacing = GridSpec::Spacing::uniform;
  s.x_min = 1e-3;
  s.x_max = std::min(14.0, c.grid.x_max);
  s.n = 512;
  return RadialGrid::make(s);
}

double rel_l2(GridWave a, GridWave b) {
  const int bad = std::max(a.untrusted, b.untrusted);
  a.untrusted = b.untrusted = bad;
  return std::sqrt(grid_norm_sq(a - b) / grid_norm_sq(b));
}

std::vector<int> darboux_indices(const RunConfig& c) {
  std::vector<int> ms{0, 1, 2};
  if (c.m > 2) ms.push_back(c.m);
  return ms;
}

}  // namespace

bool CheckResult::pass() const {
  if (!std::isfinite(measured)) return false;
  return compare == Compare::at_most ? measured <= tolerance : measured >= tolerance;
}

std::string CheckResult::line() const {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%s", name.c_str(), measured, tolerance, pass() ? "PASS" : "FAIL");
  return buf;
}

Suite parse_suite(const std::string& s) {
  if (s == "all") return Suite::all;
  if (s == "states") return Suite::states;
  if (s == "algebra") return Suite::algebra;
  if (s == "darboux") return Suite::darboux;
  if (s == "measures") return Suite::measures;
  throw std::invalid_argument("unknown suite '" + s + "' (all, states, algebra, darboux, measures)");
}

std::string to_string(Suite s) {
  switch (s) {
    case Suite::all:
      return "all";
    case Suite::states:
      return "states";
    case Suite::algebra:
      return "algebra";
    case Suite::darboux:
      return "darboux";
    case Suite::measures:
      return "measures";
  }
  return "?";
}

CheckList check_orthonormality(const RunConfig& c) {
  CheckList out;
  const PhysParams p = c.params();
  const auto grid = grid_of(c);
  const FrequencyProfile prof = c.frequency_profile();
  for (auto conv : {Convention::paper_free_particle, Convention::wronskian_half_i}) {
    for (double t : {0.0, 1.0, 2.0}) {
      run(out, "states.orthonormality." + to_string(conv) + tag(t), 1e-7, [&] {
        const Envelope env = envelope_at(prof, t, conv);
        std::vector<GridWave> b;
        for (int n = 0; n <= 10; ++n) b.push_back(basis_state(BasisIndex::bound(n, p), p, env, grid));
        double worst = 0.0;
        for (int i = 0; i <= 10; ++i) {
          for (int j = 0; j <= 10; ++j) worst = std::max(worst, std::abs(grid_inner(b[i], b[j]) - (i == j ? 1.0 : 0.0)));
        }
        return worst;
      });
    }
  }
  return out;
}

CheckList check_state_dynamics(const RunConfig& c) {
  CheckList out;
  const PhysParams p = c.params();
  const auto grid = grid_of(c);
  const FrequencyProfile prof = c.frequency_profile();
  const auto env_at = [&](double t) { return envelope_at(prof, t, c.convention); };
  const auto worst_residual = [&](const Evolution& ev) {
    double w = 0.0;
    for (double t : c.times) w = std::max(w, schrodinger_residual(ev, t, prof, p.g));
    return w;
  };
  for (int n = 0; n <= 5; ++n) {
    run(out, "states.residual.psi_n.n=" + std::to_string(n), 1e-5, [&] {
      return worst_residual([&](double t) { return basis_state(BasisIndex::bound(n, p), p, env_at(t), grid); });
    });
  }
  for (cplx l : c.lambdas) {
    const std::string lab = format_complex(l);
    run(out, "states.residual.psi_lambda.lambda=" + lab, 1e-5,
        [&] { return worst_residual([&](double t) { return bg_state_closed(l, p, env_at(t), grid); }); });
    run(out, "states.bg_closed_vs_series.lambda=" + lab, 1e-8, [&] {
      double w = 0.0;
      for (double t : c.times) {
        const Envelope e = env_at(t);
        const auto s = bg_state_series(l, bg_terms_needed(l, p.k, 1e-14), p, e, grid, 1e-13);
        w = std::max(w, grid_max_abs(bg_state_closed(l, p, e, grid) - bg_phase(l, p.k) * s.wave));
      }
      return w;
    });
  }
  for (cplx z : c.perelomov_labels()) {
    const std::string lab = format_complex(z);
    run(out, "states.residual.psi_z.z=" + lab, 1e-5,
        [&] { return worst_residual([&](double t) { return perelomov_state(z, p, env_at(t), grid); }); });
    run(out, "states.perelomov_closed_vs_series.z=" + lab, 1e-8, [&] {
      double w = 0.0;
      for (double t : c.times) {
        const Envelope e = env_at(t);
        const auto s = perelomov_state_series(z, perelomov_terms_needed(z, p.k, 1e-14), p, e, grid, 1e-13);
        w = std::max(w, grid_max_abs(perelomov_state(z, p, e, grid) - s.wave));
      }
      return w;
    });
  }
  return out;
}

CheckList check_algebra(const RunConfig& c) {
  CheckList out;
  const PhysParams p = c.params();
  const double k = p.k;
  const auto grid = grid_of(c);
  const FrequencyProfile prof = c.frequency_profile();
  for (double t : {0.0, 1.0}) {
    const OperatorContext ctx = OperatorContext::at(p, prof, t, c.convention);
    const auto psi = [&](int n) { return basis_state(BasisIndex::bound(n, p), p, ctx.env, grid); };
    run(out, "algebra.ladder" + tag(t), 1e-5, [&] {
      double w = 0.0, res = 0.0;
      for (int n = 0; n <= 5; ++n) {
        const GridWave pn = psi(n);
        const cplx up = ladder_projection(psi(n + 1), apply_generator(Generator::k_plus, pn, ctx), &res);
        w = std::max({w, std::abs(up + ladder_coefficient(n, k, true)), res});
        if (n > 0) {
          const cplx dn = ladder_projection(psi(n - 1), apply_generator(Generator::k_minus, pn, ctx), &res);
          w = std::max({w, std::abs(dn + ladder_coefficient(n, k, false)), res});
        }
        const cplx d0 = ladder_projection(pn, apply_generator(Generator::k_zero, pn, ctx), &res);
        w = std::max({w, std::abs(d0 - (k + n)), res});
      }
      return w;
    });
  }
  run(out, "algebra.casimir", 1e-12, [&] { return casimir_check(p); });
  constexpr int kN = 40;
  run(out, "algebra.holo_commutators.N=40", 1e-10, [&] {
    std::vector<cplx> data(kN);
    for (int j = 0; j < kN; ++j) data[j] = cplx(std::sin(1.3 * j + 0.2), std::cos(0.7 * j)) / (1.0 + j);
    const CoeffVector v(data);
    const auto h = [&](Generator g, const CoeffVector& x) { return holo_generator(g, x, k); };
    using G = Generator;
    double w = 0.0;
    for (int j = 0; j < kN - 2; ++j) {
      const cplx c0p = h(G::k_zero, h(G::k_plus, v)).c[j] - h(G::k_plus, h(G::k_zero, v)).c[j];
      const cplx c0m = h(G::k_zero, h(G::k_minus, v)).c[j] - h(G::k_minus, h(G::k_zero, v)).c[j];
      const cplx cmp = h(G::k_minus, h(G::k_plus, v)).c[j] - h(G::k_plus, h(G::k_minus, v)).c[j];
      w = std::max({w, std::abs(c0p - h(G::k_plus, v).c[j]), std::abs(c0m + h(G::k_minus, v).c[j]),
                    std::abs(cmp - 2.0 * h(G::k_zero, v).c[j])});
    }
    return w;
  });
  for (cplx l : c.lambdas) {
    run(out, "algebra.bg_eigenrelation.lambda=" + format_complex(l), 1e-10, [&] {
      const auto bg = CoeffVector::bg(l, k, kN);
      const auto km = holo_generator(Generator::k_minus, bg, k);
      double w = 0.0;
      for (int j = 0; j < holo_valid_rows(Generator::k_minus, kN); ++j) w = std::max(w, std::abs(km.c[j] - l * bg.c[j]));
      return w;
    });
  }
  run(out, "algebra.label_root_consistency", 1e-12, [&] {
    const double root = solve_bg_label(k + 1.0, k);
    return std::abs(mean_k0(root, k) - (k + 1.0));
  });
  return out;
}

CheckList check_darboux(const RunConfig& c) {
  CheckList out;
  const PhysParams p = c.params();
  const auto grid = grid_of(c);
  const auto coarse = nested_grid(c);
  const FrequencyProfile prof = c.frequency_profile();
  const auto env_at = [&](double t) { return envelope_at(prof, t, c.convention); };
  for (int m : darboux_indices(c)) {
    const DarbouxConfig cfg{m};
    const std::string mt = ".m=" + std::to_string(m);
    run(out, "darboux.factorization" + mt, 1e-5, [&] {
      double w = 0.0;
      for (double t : {0.0, 1.0}) {
        const Envelope env = env_at(t);
        std::vector<GridWave> lw;
        for (int n = 0; n <= 4; ++n) lw.push_back(apply_L(basis_state(BasisIndex::bound(n, p), p, env, grid), cfg, p, env));
        for (int i = 0; i <= 4; ++i) {
          for (int j = 0; j <= 4; ++j) {
            const double expect = i == j ? i + 2.0 * p.k + m : 0.0;
            w = std::max(w, std::abs(grid_inner(lw[i], lw[j], lw[i].untrusted) - expect));
          }
        }
      }
      return w;
    });
    run(out, "darboux.potential_dual_formula" + mt, 1e-4, [&] {
      double w = 0.0;
      for (double t : c.times) w = std::max(w, potential_difference_check(cfg, p, env_at(t), grid).discrepancy);
      return w;
    });
    run(out, "darboux.reality_condition" + mt, 1e-4, [&] {
      double w = 0.0;
      for (double t : c.times) w = std::max(w, reality_condition_check(transformation_function(cfg, p, env_at(t), coarse)));
      return w;
    });
    run(out, "darboux.adjoint" + mt, 1e-5, [&] {
      const Envelope env = env_at(1.0);
      const auto f = basis_state(BasisIndex::bound(1, p), p, env, grid) +
                     cplx(0.3, 0.2) * basis_state(BasisIndex::bound(2, p), p, env, grid);
      const auto g = transformed_state(TransformedLabel::basis(0), cfg, p, env, grid).base +
                     cplx(0.0, 0.5) * transformed_state(TransformedLabel::basis(3), cfg, p, env, grid).base;
      const auto lf = apply_L(f, cfg, p, env);
      const auto la = apply_L_adjoint(g, cfg, p, env);
      return std::abs(grid_inner(lf, g, lf.untrusted) - grid_inner(f, la, la.untrusted));
    });
    for (double t : {0.0, 1.0}) {
      const OperatorContext ctx = OperatorContext::at(p, prof, t, c.convention);
      const auto op = [&](POperator which, const GridWave& w) { return p_operator(which, w, cfg, ctx); };
      const auto phi = [&](int n) { return transformed_state(TransformedLabel::basis(n), cfg, p, ctx.env, coarse).base; };
      run(out, "darboux.p_algebra" + mt + tag(t), 1e-4, [&] {
        std::vector<GridWave> ph;
        for (int n = 0; n <= 5; ++n) ph.push_back(phi(n));
        double w = std::sqrt(grid_norm_sq(op(POperator::p_minus, ph[0]), 12));
        for (int n = 0; n <= 4; ++n) {
          const auto up = op(POperator::p_plus, ph[n]);
          const auto down = op(POperator::p_minus, ph[n]);
          w = std::max(w, rel_l2(op(POperator::p_zero, ph[n]), cplx(p.k + n) * ph[n]));
          w = std::max(w, rel_l2(up, cplx(p_ladder_coefficient(n, true, p, cfg)) * ph[n + 1]));
          if (n > 0) w = std::max(w, rel_l2(down, cplx(p_ladder_coefficient(n, false, p, cfg)) * ph[n - 1]));
          w = std::max(w, rel_l2(op(POperator::p_zero, up) - op(POperator::p_plus, op(POperator::p_zero, ph[n])), up));
          const auto comm = op(POperator::p_minus, up) - op(POperator::p_plus, down);
          w = std::max(w, rel_l2(comm, cplx(p_commutator_polynomial(p.k + n, p, cfg)) * ph[n]));
        }
        return w;
      });
    }
    std::vector<TransformedLabel> coherent;
    for (cplx l : c.lambdas) coherent.push_back(TransformedLabel::bg(l));
    for (cplx z : c.perelomov_labels()) coherent.push_back(TransformedLabel::perelomov(z));
    for (const auto& lab : coherent) {
      const std::string nm = (lab.kind == TransformedKind::phi_lambda ? ".phi_lambda=" : ".phi_z=") + format_complex(lab.value);
      run(out, "darboux.closed_vs_series" + mt + nm, 1e-6, [&] {
        double w = 0.0;
        for (double t : c.times) {
          const Envelope env = env_at(t);
          const auto a = transformed_state(lab, cfg, p, env, grid, Route::closed);
          const auto b = transformed_state(lab, cfg, p, env, grid, Route::series);
          w = std::max({w, grid_max_abs(a.base - b.base), std::abs(grid_norm_sq(a.base) - 1.0)});
        }
        return w;
      });
    }
    std::vector<TransformedLabel> moving = coherent;
    for (int n = 0; n <= 3; ++n) moving.push_back(TransformedLabel::basis(n));
    const ExtraPotential a = [&](double t) { return potential_difference(cfg, p, env_at(t), *grid); };
    for (const auto& lab : moving) {
      const std::string nm = lab.kind == TransformedKind::phi_n ? ".phi_n=" + std::to_string(lab.n)
                             : lab.kind == TransformedKind::phi_lambda ? ".phi_lambda=" + format_complex(lab.value)
                                                                        : ".phi_z=" + format_complex(lab.value);
      run(out, "darboux.residual" + mt + nm, 1e-4, [&] {
        const Evolution ev = [&](double t) { return transformed_state(lab, cfg, p, env_at(t), grid).base; };
        double w = 0.0;
        for (double t : c.times) w = std::max(w, schrodinger_residual(ev, t, prof, p.g, a));
        return w;
      });
    }
  }
  run(out, "darboux.reality_counterexample", 1e-1, [&] {
    const Envelope env = env_at(0.7);
    const auto u = basis_state(BasisIndex::bound(0, p), p, env, coarse) +
                   cplx(0.0, 1.0) * basis_state(BasisIndex::bound(1, p), p, env, coarse);
    return reality_condition_check(u);
  }, CheckResult::Compare::at_least);
  return out;
}

CheckList check_measures(const RunConfig& c) {
  CheckList out;
  const PhysParams p = c.params();
  const double k = p.k;
  const DarbouxConfig cfg{c.m};
  for (int n = 0; n <= 6; ++n) {
    run(out, "measures.f_moment.n=" + std::to_string(n), 1e-5, [&] { return f_moment(n, k).rel_error; });
  }
  for (int n = 0; n <= 6; ++n) {
    run(out, "measures.phi_moment.m=" + std::to_string(c.m) + ".n=" + std::to_string(n), 1e-5,
        [&] { return phi_moment(n, k, c.m).rel_error; });
  }
  for (auto fam : {MeasureFamily::original_bg, MeasureFamily::transformed_bg, MeasureFamily::perelomov}) {
    run(out, "measures.resolution." + to_string(fam), 1e-5, [&] {
      double w = 0.0;
      for (int n = 0; n <= 6; ++n) {
        w = std::max(w, std::abs(identity_resolution_check(fam, n, n, p, cfg) - 1.0));
        if (n > 0) w = std::max(w, std::abs(identity_resolution_check(fam, n - 1, n, p, cfg)));
      }
      return w;
    });
  }
  run(out, "measures.kernel_reproduction", 1e-5, [&] {
    double w = std::abs(reproduce_monomial(2, 0.7, k) - 0.49);
    const cplx l(0.3, -0.5);
    for (int q = 0; q <= 3; ++q) w = std::max(w, std::abs(reproduce_monomial(q, l, k) - std::pow(l, q)));
    return w;
  });
  run(out, "measures.kernel_series", 1e-8, [&] {
    const cplx l(0.7, 0.2), lp(-0.4, 1.1);
    const cplx w = l * std::conj(lp);
    cplx s = 0.0;
    for (int n = 0; n < 60; ++n) s += bg_coefficient(n, k) * bg_coefficient(n, k) * std::pow(w, n);
    return std::abs(s - reproducing_kernel(l, lp, k)) / std::abs(s);
  });
  run(out, "measures.phi_recovery", 1e-4, [&] {
    double w = 0.0;
    for (double x : {0.2, 1.0, 4.0, 15.0}) {
      const double h = 1e-3 * x;
      const auto t = [&](double y) { return std::pow(y, 1.0 - c.m - 2 * k) * phi_weight_direct(y, k, c.m); };
      const double d = (t(x - 2 * h) - 8 * t(x - h) + 8 * t(x + h) - t(x + 2 * h)) / (12 * h);
      w = std::max(w, std::abs(d / (-std::pow(x, -2 * k - c.m) * f_weight(x, k)) - 1.0));
    }
    return w;
  });
  run(out, "measures.positivity", DBL_MIN, [&] {
    double w = std::numeric_limits<double>::infinity();
    for (double x : {1e-8, 1e-3, 0.5, 3.0, 40.0, 400.0}) w = std::min({w, f_weight(x, k), phi_weight(x, k, c.m)});
    return w;
  }, CheckResult::Compare::at_least);
  return out;
}

CheckList run_suite(Suite s, const RunConfig& c, std::optional<double> tolerance) {
  c.validate();
  CheckList out;
  const auto add = [&](const CheckList& l) { out.insert(out.end(), l.begin(), l.end()); };
  if (s == Suite::all || s == Suite::states) {
    add(check_orthonormality(c));
    add(check_state_dynamics(c));
  }
  if (s == Suite::all || s == Suite::algebra) add(check_algebra(c));
  if (s == Suite::all || s == Suite::darboux) add(check_darboux(c));
  if (s == Suite::all || s == Suite::measures) add(check_measures(c));
  if (tolerance) {
    for (auto& r : out) {
      if (r.compare == CheckResult::Compare::at_most) r.tolerance = *tolerance;
    }
  }
  return out;
}

}  // namespace sosc
