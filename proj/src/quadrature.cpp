#include "sosc/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace sosc::num {

namespace {

// QUADPACK qk21 abscissae and weights; the 10-point Gauss rule uses the odd
// Kronrod nodes.
constexpr std::array<double, 11> kXgk = {
    0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
    0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
    0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
    0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
    0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
    0.0};
constexpr std::array<double, 11> kWgk = {
    0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
    0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
    0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
    0.123491976262065851077208931653712, 0.134709217311473325928054001771707,
    0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
    0.149445554002916905664936468389821};
constexpr std::array<double, 5> kWg = {
    0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
    0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
    0.295524224714752870173892994651338};

struct Segment {
  double a;
  double b;
  cplx value;
  double error;
  bool operator<(const Segment& o) const { return error < o.error; }
};

Segment gk21(const Integrand& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  cplx kron = kWgk[10] * f(center);
  cplx gauss = 0.0;
  for (int j = 0; j < 10; ++j) {
    const double dx = half * kXgk[j];
    const cplx fsum = f(center - dx) + f(center + dx);
    kron += kWgk[j] * fsum;
    if (j % 2 == 1) gauss += kWg[j / 2] * fsum;
  }
  kron *= half;
  gauss *= half;
  return {a, b, kron, std::abs(kron - gauss)};
}

struct LaguerreRule {
  std::vector<double> nodes;
  std::vector<double> weights_times_exp;  // w_i e^{x_i}
};

LaguerreRule make_laguerre_rule(int n) {
  LaguerreRule rule;
  rule.nodes.resize(n);
  rule.weights_times_exp.resize(n);
  double z = 0.0;
  for (int i = 0; i < n; ++i) {
    if (i == 0) {
      z = 3.0 / (1.0 + 2.4 * n);
    } else if (i == 1) {
      z += 15.0 / (1.0 + 2.5 * n);
    } else {
      const double ai = i - 1;
      z += ((1.0 + 2.55 * ai) / (1.9 * ai)) * (z - rule.nodes[i - 2]);
    }
    double p1 = 0.0, p2 = 0.0, pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      p1 = 1.0;
      p2 = 0.0;
      for (int j = 1; j <= n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0 - z) * p2 - (j - 1.0) * p3) / j;
      }
      pp = (n * p1 - n * p2) / z;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, z)) break;
    }
    rule.nodes[i] = z;
    const double log_w = -std::log(std::abs(pp * n * p2));
    rule.weights_times_exp[i] = std::exp(log_w + z);
  }
  return rule;
}

const LaguerreRule& laguerre_rule(int index) {
  static const std::array<LaguerreRule, 4> rules = {make_laguerre_rule(16), make_laguerre_rule(32),
                                                    make_laguerre_rule(64), make_laguerre_rule(128)};
  return rules[index];
}

QuadratureResult gauss_laguerre(const Integrand& f, const QuadratureScheme& scheme, double a) {
  QuadratureResult res;
  cplx previous = std::numeric_limits<double>::quiet_NaN();
  for (int r = 0; r < 4; ++r) {
    const LaguerreRule& rule = laguerre_rule(r);
    if (res.evals + static_cast<int>(rule.nodes.size()) > scheme.max_evals) break;
    cplx sum = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      sum += rule.weights_times_exp[i] * f(a + rule.nodes[i]);
    }
    res.evals += static_cast<int>(rule.nodes.size());
    res.value = sum;
    if (r > 0) {
      res.error = std::abs(sum - previous);
      if (res.error <= std::max(scheme.abs_tol, scheme.rel_tol * std::abs(sum))) return res;
    } else {
      res.error = std::abs(sum);
    }
    previous = sum;
  }
  throw QuadratureError("integrate_semiaxis: Gauss-Laguerre rules did not converge", res);
}

}  // namespace

void QuadratureScheme::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw std::invalid_argument("QuadratureScheme: tolerances must be > 0");
  }
  if (max_evals < 21) throw std::invalid_argument("QuadratureScheme: max_evals too small");
}

QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureScheme& scheme) {
  scheme.validate();
  if (a == b) return {};
  std::priority_queue<Segment> open;
  open.push(gk21(f, a, b));
  int evals = 21;
  cplx total = open.top().value;
  double total_err = open.top().error;
  // Segments too narrow to split further; their error is final.
  cplx frozen_value = 0.0;
  double frozen_err = 0.0;
  while (!open.empty()) {
    const double target = std::max(scheme.abs_tol, scheme.rel_tol * std::abs(total));
    if (total_err <= target) break;
    if (evals + 42 > scheme.max_evals) {
      throw QuadratureError("integrate_interval: evaluation budget exhausted",
                            {total, total_err, evals});
    }
    const Segment worst = open.top();
    open.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const double scale = std::max(std::abs(worst.a), std::abs(worst.b));
    if (worst.b - worst.a <= 64.0 * std::numeric_limits<double>::epsilon() * scale ||
        mid <= worst.a || mid >= worst.b) {
      frozen_value += worst.value;
      frozen_err += worst.error;
      continue;
    }
    const Segment left = gk21(f, worst.a, mid);
    const Segment right = gk21(f, mid, worst.b);
    evals += 42;
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    open.push(left);
    open.push(right);
  }
  // Recompute the sum from the pieces to shed accumulated update rounding.
  cplx value = frozen_value;
  double err = frozen_err;
  while (!open.empty()) {
    value += open.top().value;
    err += open.top().error;
    open.pop();
  }
  return {value, err, evals};
}

QuadratureResult integrate_semiaxis(const Integrand& f, const QuadratureScheme& scheme,
                                    double a) {
  scheme.validate();
  if (scheme.kind == QuadratureScheme::Kind::gauss_laguerre_mapped) {
    return gauss_laguerre(f, scheme, a);
  }
  const Integrand mapped = [&f, a](double u) -> cplx {
    const double one_minus = 1.0 - u;
    if (one_minus <= 0.0) return 0.0;
    const double x = a + u / one_minus;
    const cplx v = f(x);
    return v / (one_minus * one_minus);
  };
  return integrate_interval(mapped, 0.0, 1.0, scheme);
}

}  // namespace sosc::num
