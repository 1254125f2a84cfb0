#include "sosc/envelope.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace sosc {

namespace {

constexpr cplx kI(0.0, 1.0);

// Free-particle data at t = 0 for each convention.
void free_initial(Convention c, cplx& eps, cplx& eps_dot) {
  if (c == Convention::wronskian_half_i) {
    eps = cplx(0.0, -0.5);
    eps_dot = 0.5;
  } else {
    eps = cplx(0.0, 1.0 / std::sqrt(2.0));
    eps_dot = 1.0 / std::sqrt(2.0);
  }
}

// Dormand-Prince 5(4) on y = (eps, eps_dot).
using State = std::array<cplx, 2>;

State rhs(const FrequencyProfile& p, double t, const State& y) {
  const double w = p.omega(t);
  return {y[1], -4.0 * w * w * y[0]};
}

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (const auto& [c, k] : terms) {
    out[0] += h * c * (*k)[0];
    out[1] += h * c * (*k)[1];
  }
  return out;
}

cplx wronskian_of(const State& y) { return y[1] * std::conj(y[0]) - y[0] * std::conj(y[1]); }

Envelope integrate(const FrequencyProfile& p, double t_target, Convention conv) {
  constexpr double rtol = 1e-12;
  constexpr double atol = 1e-14;
  State y;
  free_initial(conv, y[0], y[1]);
  double t = p.t_begin();
  double arg = std::arg(y[0]);
  const cplx w0 = wronskian_of(y);
  const double span = std::max(1.0, t_target - t);
  double h = std::min(1e-3, std::max(t_target - t, 1e-12));
  const std::vector<double>& nodes = p.times();
  std::size_t next_node = 1;
  int steps = 0;
  while (t < t_target) {
    if (++steps > 10000000) throw std::runtime_error("envelope_at: step limit reached");
    while (next_node < nodes.size() && nodes[next_node] <= t) ++next_node;
    double stop = t_target;
    if (next_node < nodes.size()) stop = std::min(stop, nodes[next_node]);
    const double hh = std::min(h, stop - t);
    const State k1 = rhs(p, t, y);
    const State k2 = rhs(p, t + hh / 5.0, axpy(y, hh, {{1.0 / 5.0, &k1}}));
    const State k3 = rhs(p, t + 3.0 * hh / 10.0, axpy(y, hh, {{3.0 / 40.0, &k1}, {9.0 / 40.0, &k2}}));
    const State k4 = rhs(p, t + 4.0 * hh / 5.0,
                         axpy(y, hh, {{44.0 / 45.0, &k1}, {-56.0 / 15.0, &k2}, {32.0 / 9.0, &k3}}));
    const State k5 = rhs(p, t + 8.0 * hh / 9.0,
                         axpy(y, hh,
                              {{19372.0 / 6561.0, &k1},
                               {-25360.0 / 2187.0, &k2},
                               {64448.0 / 6561.0, &k3},
                               {-212.0 / 729.0, &k4}}));
    const State k6 = rhs(p, t + hh,
                         axpy(y, hh,
                              {{9017.0 / 3168.0, &k1},
                               {-355.0 / 33.0, &k2},
                               {46732.0 / 5247.0, &k3},
                               {49.0 / 176.0, &k4},
                               {-5103.0 / 18656.0, &k5}}));
    const State y5 = axpy(y, hh,
                          {{35.0 / 384.0, &k1},
                           {500.0 / 1113.0, &k3},
                           {125.0 / 192.0, &k4},
                           {-2187.0 / 6784.0, &k5},
                           {11.0 / 84.0, &k6}});
    const State k7 = rhs(p, t + hh, y5);
    const State y4 = axpy(y, hh,
                          {{5179.0 / 57600.0, &k1},
                           {7571.0 / 16695.0, &k3},
                           {393.0 / 640.0, &k4},
                           {-92097.0 / 339200.0, &k5},
                           {187.0 / 2100.0, &k6},
                           {1.0 / 40.0, &k7}});
    double err = 0.0;
    for (int j = 0; j < 2; ++j) {
      const double sc = atol + rtol * std::max(std::abs(y[j]), std::abs(y5[j]));
      err = std::max(err, std::abs(y5[j] - y4[j]) / sc);
    }
    // The conserved Wronskian is the second acceptance gauge: its change
    // over the step must stay within a share of the total budget.
    const double drift = std::abs(wronskian_of(y5) - wronskian_of(y));
    const bool drift_ok = drift <= 1e-11 * std::abs(w0) * std::max(hh / span, 1e-3);
    if (err <= 1.0 && (drift_ok || hh < 1e-10)) {
      arg += std::arg(y5[0] / y[0]);
      y = y5;
      t += hh;
      const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
      h = hh * std::clamp(grow, 0.2, 5.0);
    } else {
      const double shrink = err > 1.0 ? 0.9 * std::pow(err, -0.25) : 0.5;
      h = hh * std::clamp(shrink, 0.1, 0.5);
    }
  }
  return make_envelope(y[0], y[1], t_target, arg);
}

}  // namespace

FrequencyProfile FrequencyProfile::zero() { return {}; }

FrequencyProfile FrequencyProfile::constant(double omega0) {
  if (!(omega0 > 0.0) || !std::isfinite(omega0)) {
    throw std::invalid_argument("FrequencyProfile::constant: omega0 must be > 0");
  }
  FrequencyProfile p;
  p.kind_ = Kind::constant;
  p.omega0_ = omega0;
  return p;
}

FrequencyProfile FrequencyProfile::tabulated(std::vector<double> t, std::vector<double> omega) {
  if (t.size() != omega.size() || t.size() < 2) {
    throw std::invalid_argument("FrequencyProfile::tabulated: need >= 2 (t, omega) pairs");
  }
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(omega[i])) {
      throw std::invalid_argument("FrequencyProfile::tabulated: non-finite entry");
    }
    if (i > 0 && !(t[i] > t[i - 1])) {
      throw std::invalid_argument("FrequencyProfile::tabulated: t must be strictly increasing");
    }
  }
  FrequencyProfile p;
  p.kind_ = Kind::tabulated;
  p.t_ = std::move(t);
  p.w_ = std::move(omega);
  return p;
}

FrequencyProfile FrequencyProfile::load_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open frequency table: " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty frequency table: " + path);
  std::vector<double> t, w;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ss(line);
    double a = 0.0, b = 0.0;
    if (!(ss >> a >> b)) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 't,omega'");
    }
    t.push_back(a);
    w.push_back(b);
  }
  return tabulated(std::move(t), std::move(w));
}

double FrequencyProfile::t_begin() const {
  return kind_ == Kind::tabulated ? t_.front() : -std::numeric_limits<double>::infinity();
}

double FrequencyProfile::t_end() const {
  return kind_ == Kind::tabulated ? t_.back() : std::numeric_limits<double>::infinity();
}

double FrequencyProfile::omega(double t) const {
  switch (kind_) {
    case Kind::zero:
      return 0.0;
    case Kind::constant:
      return omega0_;
    case Kind::tabulated: {
      if (t < t_.front() || t > t_.back()) {
        throw std::out_of_range("FrequencyProfile: t = " + std::to_string(t) +
                                " outside the table");
      }
      const auto it = std::upper_bound(t_.begin(), t_.end(), t);
      const std::size_t i = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - t_.begin(), 1),
                                                   t_.size() - 1);
      const double u = (t - t_[i - 1]) / (t_[i] - t_[i - 1]);
      return (1.0 - u) * w_[i - 1] + u * w_[i];
    }
  }
  return 0.0;
}

std::string FrequencyProfile::describe() const {
  switch (kind_) {
    case Kind::zero:
      return "zero";
    case Kind::constant:
      return "constant(" + std::to_string(omega0_) + ")";
    case Kind::tabulated:
      return "tabulated(" + std::to_string(t_.size()) + " nodes)";
  }
  return "?";
}

Convention parse_convention(const std::string& s) {
  if (s == "wronskian" || s == "wronskian-half-i") return Convention::wronskian_half_i;
  if (s == "paper" || s == "paper-free-particle") return Convention::paper_free_particle;
  throw std::invalid_argument("unknown convention '" + s + "' (expected paper|wronskian)");
}

std::string to_string(Convention c) {
  return c == Convention::wronskian_half_i ? "wronskian" : "paper";
}

Envelope make_envelope(cplx eps, cplx eps_dot, double t, double arg_eps) {
  Envelope e;
  e.eps = eps;
  e.eps_dot = eps_dot;
  e.gamma = std::norm(eps);
  e.gamma_dot = 2.0 * (eps_dot * std::conj(eps)).real();
  e.t = t;
  e.arg_eps = arg_eps;
  return e;
}

Envelope envelope_at(const FrequencyProfile& profile, double t, Convention convention) {
  if (!std::isfinite(t)) throw std::invalid_argument("envelope_at: t must be finite");
  const bool half_i = convention == Convention::wronskian_half_i;
  switch (profile.kind()) {
    case FrequencyProfile::Kind::zero: {
      if (half_i) {
        const cplx eps = cplx(t, -1.0) / 2.0;
        return make_envelope(eps, 0.5, t, std::atan2(-1.0, t));
      }
      const double r = 1.0 / std::sqrt(2.0);
      return make_envelope(cplx(t, 1.0) * r, r, t, std::atan2(1.0, t));
    }
    case FrequencyProfile::Kind::constant: {
      const double w = profile.omega0();
      // eps = c e^{+-2i w t}; |c| fixes the Wronskian, the sign of the
      // exponent its orientation.
      if (half_i) {
        const cplx c = -kI / std::sqrt(8.0 * w);
        const cplx e = c * std::exp(cplx(0.0, 2.0 * w * t));
        return make_envelope(e, 2.0 * kI * w * e, t, -M_PI / 2.0 + 2.0 * w * t);
      }
      const cplx c = kI / std::sqrt(4.0 * w);
      const cplx e = c * std::exp(cplx(0.0, -2.0 * w * t));
      return make_envelope(e, -2.0 * kI * w * e, t, M_PI / 2.0 - 2.0 * w * t);
    }
    case FrequencyProfile::Kind::tabulated:
      if (t < profile.t_begin() || t > profile.t_end()) {
        throw std::out_of_range("envelope_at: t = " + std::to_string(t) +
                                " outside the frequency table");
      }
      return integrate(profile, t, convention);
  }
  throw std::logic_error("envelope_at: unknown profile kind");
}

Envelope to_half_i_gauge(const Envelope& env) {
  const double w = env.wronskian().imag();
  if (!(std::abs(w) > 0.0)) throw std::domain_error("to_half_i_gauge: vanishing Wronskian");
  if (w > 0.0) {
    const double s = 1.0 / std::sqrt(2.0 * w);
    return make_envelope(s * env.eps, s * env.eps_dot, env.t, env.arg_eps);
  }
  const double s = 1.0 / std::sqrt(-2.0 * w);
  return make_envelope(s * std::conj(env.eps), s * std::conj(env.eps_dot), env.t, -env.arg_eps);
}

double envelope_residual(const FrequencyProfile& profile, double t, Convention convention,
                         double dt) {
  const Envelope e = envelope_at(profile, t, convention);
  double c = t;
  if (profile.kind() == FrequencyProfile::Kind::tabulated) {
    c = std::clamp(t, profile.t_begin() + 2.0 * dt, profile.t_end() - 2.0 * dt);
    // omega' jumps at table nodes; keep the stencil on one linear piece when
    // there is room, since a straddled kink costs O(dt) accuracy.
    double gap = std::numeric_limits<double>::infinity();
    for (double node : profile.times()) {
      if (node != c) gap = std::min(gap, std::abs(node - c));
    }
    dt = std::max(std::min(dt, gap / 2.5), 1e-4);
  }
  auto v = [&](double s) { return envelope_at(profile, s, convention).eps_dot; };
  // Fourth-order centred difference of eps_dot, taken at c (= t away from
  // table ends).
  const cplx acc = (8.0 * (v(c + dt) - v(c - dt)) - (v(c + 2.0 * dt) - v(c - 2.0 * dt))) / (12.0 * dt);
  const Envelope ec = c == t ? e : envelope_at(profile, c, convention);
  const double w = profile.omega(c);
  return std::abs(acc + 4.0 * w * w * ec.eps) / std::abs(ec.eps);
}

}  // namespace sosc
