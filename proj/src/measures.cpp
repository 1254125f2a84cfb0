#include "sosc/measures.hpp"

#include <boost/math/interpolators/cubic_hermite.hpp>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <shared_mutex>
#include <utility>

#include "sosc/quadrature.hpp"
#include "sosc/special_functions.hpp"

namespace sosc {

namespace {

constexpr double kPi = std::numbers::pi;

void check_k(double k, const char* who) {
  if (!(k > 0.5) || !std::isfinite(k)) throw std::domain_error(std::string(who) + ": need k > 1/2");
}

num::QuadratureScheme tight() {
  num::QuadratureScheme s;
  s.abs_tol = 1e-300;
  s.rel_tol = 1e-12;
  return s;
}

// y^{-2k-m} f(y).
double tail_integrand(double y, double k, int m) { return std::pow(y, -2.0 * k - m) * f_weight(y, k); }

// Radius beyond which BG-type radial integrands are negligible for index n.
double bg_radius_cut(int n) { return 60.0 + 5.0 * n; }

}  // namespace

std::string to_string(MeasureFamily f) {
  switch (f) {
    case MeasureFamily::original_bg:
      return "original_bg";
    case MeasureFamily::transformed_bg:
      return "transformed_bg";
    case MeasureFamily::perelomov:
      return "perelomov";
  }
  return "?";
}

double f_weight(double x, double k) {
  check_k(k, "f_weight");
  if (!(x > 0.0)) throw std::domain_error("f_weight: need x > 0");
  return 2.0 * std::pow(x, k - 0.5) * num::bessel_k(2.0 * k - 1.0, 2.0 * std::sqrt(x));
}

double phi_weight_direct(double x, double k, int m) {
  check_k(k, "phi_weight");
  if (m < 0) throw std::domain_error("phi_weight: need m >= 0");
  if (!(x > 0.0)) throw std::domain_error("phi_weight: need x > 0");
  const auto r = num::integrate_semiaxis([&](double y) -> cplx { return tail_integrand(y, k, m); }, tight(), x);
  return std::pow(x, m + 2.0 * k - 1.0) * r.value.real();
}

struct PhiTable::Impl {
  boost::math::interpolators::cardinal_cubic_hermite<std::vector<double>> spline;
};

PhiTable::PhiTable(double k, int m) : k_(k), m_(m), x_lo_(1e-10), x_hi_(2500.0) {
  check_k(k, "PhiTable");
  if (m < 0) throw std::domain_error("PhiTable: need m >= 0");
  constexpr int kNodes = 1600;
  const double s0 = std::log(x_lo_), s1 = std::log(x_hi_);
  const double ds = (s1 - s0) / (kNodes - 1);
  std::vector<double> xs(kNodes), tail(kNodes);
  for (int i = 0; i < kNodes; ++i) xs[i] = std::exp(s0 + i * ds);
  xs.back() = x_hi_;
  const auto g = [&](double y) -> cplx { return tail_integrand(y, k, m); };
  // Positive pieces accumulated from the right keep full relative accuracy.
  tail[kNodes - 1] = num::integrate_semiaxis(g, tight(), x_hi_).value.real();
  for (int i = kNodes - 2; i >= 0; --i) {
    tail[i] = tail[i + 1] + num::integrate_interval(g, xs[i], xs[i + 1], tight()).value.real();
  }
  const double a = m + 2.0 * k - 1.0;
  std::vector<double> y(kNodes), dy(kNodes);
  for (int i = 0; i < kNodes; ++i) {
    const double phi = std::pow(xs[i], a) * tail[i];
    y[i] = std::log(phi);
    dy[i] = a - f_weight(xs[i], k) / phi;
  }
  impl_ = std::make_unique<Impl>(Impl{{std::move(y), std::move(dy), s0, ds}});
}

PhiTable::~PhiTable() = default;

double PhiTable::operator()(double x) const {
  if (!(x > 0.0)) throw std::domain_error("PhiTable: need x > 0");
  if (x < x_lo_ || x > x_hi_) return phi_weight_direct(x, k_, m_);
  return std::exp(impl_->spline(std::log(x)));
}

std::shared_ptr<const PhiTable> phi_table(double k, int m) {
  static std::shared_mutex mutex;
  static std::map<std::pair<double, int>, std::shared_ptr<const PhiTable>> cache;
  const auto key = std::make_pair(k, m);
  {
    std::shared_lock lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  auto built = std::make_shared<const PhiTable>(k, m);
  std::unique_lock lock(mutex);
  // Another thread may have won the race; keep the first table.
  return cache.try_emplace(key, std::move(built)).first->second;
}

double phi_weight(double x, double k, int m) { return (*phi_table(k, m))(x); }

MomentCheck f_moment(int n, double k) {
  check_k(k, "f_moment");
  if (n < 0) throw std::invalid_argument("f_moment: n must be >= 0");
  MomentCheck mc;
  mc.n = n;
  mc.exact = std::exp(num::gamma_ln(n + 1.0) + num::gamma_ln(n + 2.0 * k));
  mc.value = num::integrate_semiaxis([&](double x) -> cplx { return std::pow(x, n) * f_weight(x, k); }, tight())
                 .value.real();
  mc.rel_error = std::abs(mc.value / mc.exact - 1.0);
  return mc;
}

MomentCheck phi_moment(int n, double k, int m) {
  check_k(k, "phi_moment");
  if (n < 0) throw std::invalid_argument("phi_moment: n must be >= 0");
  const auto table = phi_table(k, m);
  MomentCheck mc;
  mc.n = n;
  mc.exact = std::exp(num::gamma_ln(n + 1.0) + num::gamma_ln(n + 2.0 * k)) / (n + 2.0 * k + m);
  // Inside the table integrate in s = ln x; below it Phi is flat to O(x_lo).
  const double lo = table->x_lo();
  const auto in_s = [&](double s) -> cplx {
    const double x = std::exp(s);
    return std::pow(x, n + 1.0) * (*table)(x);
  };
  double v = num::integrate_interval(in_s, std::log(lo), std::log(table->x_hi()), tight()).value.real();
  v += (*table)(lo) * std::pow(lo, n + 1.0) / (n + 1.0);
  v += num::integrate_semiaxis([&](double x) -> cplx { return std::pow(x, n) * phi_weight_direct(x, k, m); },
                               tight(), table->x_hi())
           .value.real();
  mc.value = v;
  mc.rel_error = std::abs(mc.value / mc.exact - 1.0);
  return mc;
}

double bg_measure_weight(cplx lambda, double k) {
  check_k(k, "bg_measure_weight");
  const double r = std::abs(lambda);
  if (r == 0.0) return 0.0;
  const double nu = 2.0 * k - 1.0;
  return 2.0 / kPi * num::bessel_k(nu, 2.0 * r) * num::bessel_i(nu, 2.0 * r).real();
}

double transformed_bg_measure_weight(cplx lambda, const PhysParams& p, const DarbouxConfig& cfg) {
  cfg.validate(p);
  const double n0 = bg_normalization(lambda, p.k);
  const double n1 = darboux_norm_bg(lambda, p, cfg);
  return phi_weight(std::norm(lambda), p.k, cfg.m) / (kPi * std::tgamma(2.0 * p.k) * n0 * n0 * n1 * n1);
}

double perelomov_measure_weight(cplx z, double k) {
  check_k(k, "perelomov_measure_weight");
  const double r2 = std::norm(z);
  if (!(r2 < 1.0)) throw std::domain_error("perelomov_measure_weight: need |z| < 1");
  return (2.0 * k - 1.0) / kPi / ((1.0 - r2) * (1.0 - r2));
}

cplx reproducing_kernel(cplx lambda, cplx lambda_p, double k) {
  check_k(k, "reproducing_kernel");
  const cplx w = lambda * std::conj(lambda_p);
  return std::tgamma(2.0 * k) * num::bessel_i_reduced(2.0 * k - 1.0, 2.0 * std::sqrt(w));
}

cplx reproduce_monomial(int p, cplx lambda, double k, int angles) {
  check_k(k, "reproduce_monomial");
  if (p < 0 || angles < 8) throw std::invalid_argument("reproduce_monomial: bad p or angle count");
  const auto radial = [&](double r) -> cplx {
    if (r == 0.0) return 0.0;
    const double n0 = bg_normalization(r, k);
    const double dens = n0 * n0 * bg_measure_weight(r, k);
    cplx ang = 0.0;
    for (int j = 0; j < angles; ++j) {
      const double phi = 2.0 * kPi * j / angles;
      const cplx lp = std::polar(r, phi);
      ang += reproducing_kernel(lambda, lp, k) * std::pow(lp, p);
    }
    return r * dens * ang * (2.0 * kPi / angles);
  };
  return num::integrate_interval(radial, 0.0, bg_radius_cut(p) + 4.0 * std::abs(lambda), tight()).value;
}

cplx identity_resolution_check(MeasureFamily family, int n, int n_p, const PhysParams& p, const DarbouxConfig& cfg) {
  p.validate();
  if (n < 0 || n_p < 0) throw std::invalid_argument("identity_resolution_check: negative index");
  if (n != n_p) return 0.0;  // int_0^{2 pi} e^{i(n-n')phi} dphi = 0
  const double k = p.k;
  const double a2 = bg_coefficient(n, k) * bg_coefficient(n, k);
  // With lambda = r e^{i phi}: d^2 lambda = r dr dphi; the angle gives 2 pi.
  switch (family) {
    case MeasureFamily::original_bg: {
      const auto g = [&](double r) -> cplx {
        if (r == 0.0) return 0.0;
        const double n0 = bg_normalization(r, k);
        const double overlap = n0 * n0 * a2 * std::pow(r, 2.0 * n);
        return 2.0 * kPi * r * bg_measure_weight(r, k) * overlap;
      };
      return num::integrate_interval(g, 0.0, bg_radius_cut(n), tight()).value;
    }
    case MeasureFamily::transformed_bg: {
      cfg.validate(p);
      const auto g = [&](double r) -> cplx {
        if (r == 0.0) return 0.0;
        // |<phi_n|phi_l>|^2 = N_1l^2 |N_0l|^2 (n+2k+m) a_n^2 r^{2n}.
        const double n0 = bg_normalization(r, k);
        const double n1 = darboux_norm_bg(r, p, cfg);
        const double overlap =
            n1 * n1 * n0 * n0 * (n + 2.0 * k + cfg.m) * a2 * std::pow(r, 2.0 * n);
        return 2.0 * kPi * r * transformed_bg_measure_weight(r, p, cfg) * overlap;
      };
      return num::integrate_interval(g, 0.0, bg_radius_cut(n), tight()).value;
    }
    case MeasureFamily::perelomov: {
      const double c2 = perelomov_coefficient(n, k) * perelomov_coefficient(n, k);
      const auto g = [&](double r) -> cplx {
        const double r2 = r * r;
        if (r2 >= 1.0) return 0.0;
        const double overlap = std::pow(1.0 - r2, 2.0 * k) * c2 * std::pow(r, 2.0 * n);
        return 2.0 * kPi * r * perelomov_measure_weight(r, k) * overlap;
      };
      return num::integrate_interval(g, 0.0, 1.0, tight()).value;
    }
  }
  throw std::invalid_argument("identity_resolution_check: unknown family");
}

}  // namespace sosc
