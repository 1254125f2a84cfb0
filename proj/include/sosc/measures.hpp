#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sosc/darboux.hpp"

namespace sosc {

enum class MeasureFamily { original_bg, transformed_bg, perelomov };

std::string to_string(MeasureFamily f);

/// f(x) = 2 x^{k-1/2} K_{2k-1}(2 sqrt x), with moments Gamma(n+1) Gamma(n+2k).
double f_weight(double x, double k);

/// Phi(x) = x^{m+2k-1} int_x^inf y^{-2k-m} f(y) dy by direct quadrature.
double phi_weight_direct(double x, double k, int m);

/// Phi tabulated on log-spaced nodes and interpolated by cubic Hermite
/// segments in (ln x, ln Phi), using the exact slope d ln Phi / d ln x =
/// m + 2k - 1 - f / Phi. Outside the table it falls back to the direct form.
class PhiTable {
 public:
  PhiTable(double k, int m);
  ~PhiTable();
  PhiTable(const PhiTable&) = delete;
  PhiTable& operator=(const PhiTable&) = delete;

  double operator()(double x) const;
  double k() const { return k_; }
  int m() const { return m_; }
  double x_lo() const { return x_lo_; }
  double x_hi() const { return x_hi_; }

 private:
  struct Impl;
  double k_;
  int m_;
  double x_lo_, x_hi_;
  std::unique_ptr<Impl> impl_;
};

/// Shared table for (k, m). Lookups take a shared lock; a missing table is
/// built outside the lock and inserted under an exclusive one.
std::shared_ptr<const PhiTable> phi_table(double k, int m);

/// Phi(x) through the shared table.
double phi_weight(double x, double k, int m);

struct MomentCheck {
  int n = 0;
  double value = 0.0;
  double exact = 0.0;
  double rel_error = 0.0;
};

/// int_0^inf x^n f(x) dx against Gamma(n+1) Gamma(n+2k).
MomentCheck f_moment(int n, double k);
/// int_0^inf x^n Phi(x) dx against Gamma(n+1) Gamma(n+2k) / (n+2k+m).
MomentCheck phi_moment(int n, double k, int m);

/// Density with respect to area d^2 lambda = d(Re) d(Im).
/// BG: (2/pi) K_{2k-1}(2|l|) I_{2k-1}(2|l|).
double bg_measure_weight(cplx lambda, double k);
/// Transformed BG: Phi(|l|^2) / (pi Gamma(2k) |N_0l N_1l|^2).
double transformed_bg_measure_weight(cplx lambda, const PhysParams& p, const DarbouxConfig& cfg);
/// Perelomov: (2k-1)/pi (1-|z|^2)^{-2} on the unit disc.
double perelomov_measure_weight(cplx z, double k);

/// Gamma(2k) (l conj(l'))^{1/2-k} I_{2k-1}(2 sqrt(l conj(l'))), evaluated as
/// Gamma(2k) Itilde_{2k-1}(2 sqrt(w)), which is entire in w = l conj(l').
cplx reproducing_kernel(cplx lambda, cplx lambda_p, double k);

/// int K(l, l') l'^p |N_0l'|^2 dmu_BG(l') with the angle done by the
/// periodic trapezoid rule on `angles` points and the radius by adaptive
/// quadrature. Reproduces l^p.
cplx reproduce_monomial(int p, cplx lambda, double k, int angles = 64);

/// <psi_n| int |CS><CS| dmu |psi_n'>. Off-diagonal elements vanish by the
/// angular integral and are returned as exact zeros; diagonal ones come from
/// radial quadrature with the family's weight and overlaps.
cplx identity_resolution_check(MeasureFamily family, int n, int n_p, const PhysParams& p,
                               const DarbouxConfig& cfg);

}  // namespace sosc
