#include "sosc/special_functions.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace sosc::num {

namespace {

using lcplx = std::complex<long double>;

constexpr double kPi = std::numbers::pi;

// Sum_{m>=0} (z^2/4)^m / (m! Gamma(m+nu+1)), accumulated in extended precision.
cplx reduced_series(double nu, cplx z) {
  const lcplx w = lcplx(z.real(), z.imag()) * lcplx(z.real(), z.imag()) / 4.0L;
  long double lead = 1.0L / std::tgamma(static_cast<long double>(nu) + 1.0L);
  lcplx term(lead, 0.0L);
  lcplx sum = term;
  const long double tiny = std::numeric_limits<long double>::epsilon() * 1e-2L;
  for (int m = 1; m < 500; ++m) {
    term *= w / (static_cast<long double>(m) * (static_cast<long double>(m) + nu));
    sum += term;
    if (m > std::abs(z) && std::abs(term) <= tiny * std::abs(sum)) break;
  }
  return {static_cast<double>(sum.real()), static_cast<double>(sum.imag())};
}

// Large-|w| expansion, Re w >= 0. Both exponentials are kept so the result
// stays accurate near the imaginary axis where they are of equal size.
cplx asymptotic_i(double nu, cplx w) {
  if (w.real() > kBesselMaxRealPart) {
    throw std::overflow_error("bessel_i: |Re z| = " + std::to_string(w.real()) +
                              " exceeds the supported cap " +
                              std::to_string(kBesselMaxRealPart));
  }
  const double mu = 4.0 * nu * nu;
  const cplx inv = 1.0 / w;
  cplx s_alt = 1.0;
  cplx s_pos = 1.0;
  cplx power = 1.0;
  double ak = 1.0;
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 1; k < 200; ++k) {
    const double odd = 2.0 * k - 1.0;
    ak *= (mu - odd * odd) / (8.0 * k);
    power *= inv;
    const cplx term = ak * power;
    const double mag = std::abs(term);
    if (mag == 0.0) break;
    if (mag > prev) break;
    s_alt += (k % 2 == 0 ? 1.0 : -1.0) * term;
    s_pos += term;
    if (mag < 1e-17) break;
    prev = mag;
  }
  const cplx pref = 1.0 / std::sqrt(2.0 * kPi * w);
  const double sigma = w.imag() >= 0.0 ? 1.0 : -1.0;
  const cplx rot = cplx(0.0, sigma) * std::exp(cplx(0.0, sigma * kPi * nu));
  return pref * (std::exp(w) * s_alt + rot * std::exp(-w) * s_pos);
}

void check_order(double nu, const char* who) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) {
    throw std::domain_error(std::string(who) + ": order must be finite and >= 0");
  }
}

// 1/Gamma(1 -/+ mu) combinations used by Temme's series.
void temme_gammas(double mu, double& gam1, double& gam2, double& gampl, double& gammi) {
  if (std::abs(mu) < 0.1) {
    // Taylor coefficients of 1/Gamma(z) (Abramowitz & Stegun 6.1.34).
    static constexpr double c[] = {1.0,
                                   0.5772156649015329,
                                   -0.6558780715202538,
                                   -0.0420026350340952,
                                   0.1665386113822915,
                                   -0.0421977345555443,
                                   -0.0096219715278770,
                                   0.0072189432466630,
                                   -0.0011651675918591,
                                   -0.0002152416741149,
                                   0.0001280502823882,
                                   -0.0000201348547807,
                                   -0.0000012504934821,
                                   0.0000011330272320,
                                   -0.0000002056338417};
    const double m2 = mu * mu;
    double odd = 0.0;
    double even = 0.0;
    double p = 1.0;
    for (int j = 0; j < 7; ++j) {
      odd += c[2 * j + 1] * p;
      even += c[2 * j] * p;
      p *= m2;
    }
    even += c[14] * p;
    gam1 = -odd;
    gam2 = even;
  } else {
    const double inv_minus = 1.0 / std::tgamma(1.0 - mu);
    const double inv_plus = 1.0 / std::tgamma(1.0 + mu);
    gam1 = (inv_minus - inv_plus) / (2.0 * mu);
    gam2 = 0.5 * (inv_minus + inv_plus);
  }
  gampl = gam2 - mu * gam1;
  gammi = gam2 + mu * gam1;
}

template <class T>
T laguerre_impl(int n, double alpha, T z) {
  if (n < 0) return T(0.0);
  T prev(1.0);
  if (n == 0) return prev;
  T cur = T(1.0 + alpha) - z;
  for (int j = 1; j < n; ++j) {
    const T next = ((2.0 * j + 1.0 + alpha - z) * cur - (j + alpha) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

}  // namespace

double gamma_ln(double x) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("gamma_ln: argument must be finite and > 0, got " +
                            std::to_string(x));
  }
  int sign = 0;
  return ::lgamma_r(x, &sign);
}

cplx bessel_i_reduced(double nu, cplx z) {
  check_order(nu, "bessel_i_reduced");
  if (std::abs(z) <= kBesselSeriesRadius) return reduced_series(nu, z);
  const cplx w = z.real() >= 0.0 ? z : -z;
  return asymptotic_i(nu, w) / std::pow(0.5 * w, nu);
}

cplx bessel_i(double nu, cplx z) {
  check_order(nu, "bessel_i");
  if (z == cplx(0.0)) return nu == 0.0 ? cplx(1.0) : cplx(0.0);
  if (std::abs(z) <= kBesselSeriesRadius) {
    return std::pow(0.5 * z, nu) * reduced_series(nu, z);
  }
  if (z.real() >= 0.0) return asymptotic_i(nu, z);
  // I_nu(w e^{+-i pi}) = e^{+-i pi nu} I_nu(w) on the principal branch.
  const double sigma = z.imag() >= 0.0 ? 1.0 : -1.0;
  return std::exp(cplx(0.0, sigma * kPi * nu)) * asymptotic_i(nu, -z);
}

double bessel_k(double nu, double x) {
  check_order(nu, "bessel_k");
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw std::domain_error("bessel_k: argument must be finite and > 0");
  }
  constexpr double eps = 1e-17;
  constexpr int max_iter = 10000;
  const int nl = static_cast<int>(nu + 0.5);
  const double mu = nu - nl;
  const double mu2 = mu * mu;
  const double xi = 1.0 / x;
  const double xi2 = 2.0 * xi;
  double kmu = 0.0;
  double k1 = 0.0;
  if (x < 2.0) {
    const double x2 = 0.5 * x;
    const double pimu = kPi * mu;
    const double fact = std::abs(pimu) < 1e-15 ? 1.0 : pimu / std::sin(pimu);
    double d = -std::log(x2);
    double e = mu * d;
    const double fact2 = std::abs(e) < 1e-15 ? 1.0 : std::sinh(e) / e;
    double gam1 = 0.0, gam2 = 0.0, gampl = 0.0, gammi = 0.0;
    temme_gammas(mu, gam1, gam2, gampl, gammi);
    double ff = fact * (gam1 * std::cosh(e) + gam2 * fact2 * d);
    double sum = ff;
    e = std::exp(e);
    double p = 0.5 * e / gampl;
    double q = 0.5 / (e * gammi);
    double c = 1.0;
    d = x2 * x2;
    double sum1 = p;
    int i = 1;
    for (; i <= max_iter; ++i) {
      ff = (i * ff + p + q) / (i * static_cast<double>(i) - mu2);
      c *= d / i;
      p /= i - mu;
      q /= i + mu;
      const double del = c * ff;
      sum += del;
      sum1 += c * (p - i * ff);
      if (std::abs(del) < std::abs(sum) * eps) break;
    }
    if (i > max_iter) throw std::runtime_error("bessel_k: Temme series did not converge");
    kmu = sum;
    k1 = sum1 * xi2;
  } else {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25 - mu2;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    int i = 2;
    for (; i <= max_iter; ++i) {
      a -= 2 * (i - 1);
      c = -a * c / i;
      const double qnew = (q1 - b * q2) / a;
      q1 = q2;
      q2 = qnew;
      q += c * qnew;
      b += 2.0;
      d = 1.0 / (b + a * d);
      delh = (b * d - 1.0) * delh;
      h += delh;
      const double dels = q * delh;
      s += dels;
      if (std::abs(dels / s) < eps) break;
    }
    if (i > max_iter) throw std::runtime_error("bessel_k: continued fraction did not converge");
    h = a1 * h;
    kmu = std::sqrt(kPi / (2.0 * x)) * std::exp(-x) / s;
    k1 = kmu * (mu + x + 0.5 - h) * xi;
  }
  for (int i = 1; i <= nl; ++i) {
    const double next = (mu + i) * xi2 * k1 + kmu;
    kmu = k1;
    k1 = next;
  }
  return kmu;
}

cplx laguerre(int n, double alpha, cplx z) { return laguerre_impl<cplx>(n, alpha, z); }

double laguerre(int n, double alpha, double z) { return laguerre_impl<double>(n, alpha, z); }

double pochhammer(double a, int n) {
  double r = 1.0;
  for (int j = 0; j < n; ++j) r *= a + j;
  return r;
}

}  // namespace sosc::num
