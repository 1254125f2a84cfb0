#pragma once

#include <complex>

namespace sosc::num {

using cplx = std::complex<double>;

/// |z| at or below which I_nu is summed from its power series; the
/// two-exponential asymptotic expansion is used above.
inline constexpr double kBesselSeriesRadius = 17.5;

/// Largest |Re z| accepted by the I_nu routines. e^{700} is still finite in
/// double precision; anything larger raises std::overflow_error.
inline constexpr double kBesselMaxRealPart = 700.0;

/// Natural log of Gamma(x) for x > 0. Throws std::domain_error otherwise.
double gamma_ln(double x);

/// Modified Bessel function of the first kind I_nu(z), principal branch
/// (cut along the negative real axis), nu >= 0.
cplx bessel_i(double nu, cplx z);

/// I_nu(z) / (z/2)^nu. This is an even entire function of z, so it carries no
/// branch ambiguity; equals 1/Gamma(nu+1) at z = 0.
cplx bessel_i_reduced(double nu, cplx z);

/// Modified Bessel function of the second kind K_nu(x) for real x > 0.
double bessel_k(double nu, double x);

/// Generalized Laguerre polynomial L^alpha_n(z) by the three-term recurrence.
/// Negative degree returns 0 (empty-recurrence convention).
cplx laguerre(int n, double alpha, cplx z);
double laguerre(int n, double alpha, double z);

/// Rising factorial (a)_n = a (a+1) ... (a+n-1).
double pochhammer(double a, int n);

}  // namespace sosc::num
