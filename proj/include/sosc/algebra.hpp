#pragma once

#include <vector>

#include "sosc/envelope.hpp"
#include "sosc/grid.hpp"
#include "sosc/states.hpp"

namespace sosc {

enum class Generator { k_minus, k_plus, k_zero, hamiltonian_h0 };

std::string to_string(Generator g);

/// Everything a generator needs besides the wave function.
struct OperatorContext {
  PhysParams params;
  Envelope env;  // any gauge; converted to W = i/2 on use
  double omega = 0.0;

  static OperatorContext at(const PhysParams& p, const FrequencyProfile& profile, double t,
                            Convention c);
};

/// Generator applied on the grid by finite differences:
///   k_- = 2[(eps d - (i/2) eps_dot x)^2 - eps^2 g / x^2], k_+ likewise with
///   conjugated eps, k_0 = (k_- k_+ - k_+ k_-)/2, h0 = -d^2 + omega^2 x^2 + g/x^2.
/// The result's `untrusted` grows with each derivative.
GridWave apply_generator(Generator op, const GridWave& w, const OperatorContext& ctx);

/// c_n^+ = sqrt((n+1)(n+2k)), c_n^- = sqrt(n(n+2k-1)); k_+- psi_n = -c_n^+- psi_{n+-1}.
double ladder_coefficient(int n, double k, bool raising);

/// Fourier coefficients over psi_n, c_0..c_{N-1}.
struct CoeffVector {
  std::vector<cplx> c;

  CoeffVector() = default;
  explicit CoeffVector(std::vector<cplx> v) : c(std::move(v)) {}
  static CoeffVector basis(int n, int size);
  /// N_{0 lambda} a_n lambda^n, n < size.
  static CoeffVector bg(cplx lambda, double k, int size);
  int size() const { return static_cast<int>(c.size()); }
  /// Sum of |c_n|^2.
  double norm_sq() const;
};

/// Holomorphic action: in monomial coefficients v_n = a_n c_n of
/// psi(lambda) = sum v_n lambda^n, k_0 = lambda d + k, k_+ = lambda,
/// k_- = lambda d^2 + 2k d. Truncation drops the entry k_+ pushes past the
/// end and the last row of k_- v; holo_valid_rows counts the exact rows.
CoeffVector holo_generator(Generator op, const CoeffVector& v, double k);

/// Exact-row count after applying `op` to a size-N vector.
int holo_valid_rows(Generator op, int size);

/// Holomorphic inner product. Over monomials it is sum conj(v_n) w_n / a_n^2;
/// on the stored Fourier coefficients that is sum conj(c_n) c'_n.
cplx holo_inner(const CoeffVector& a, const CoeffVector& b);

/// <k0> and <k0^2> in the BG state with label lambda.
double mean_k0(cplx lambda, double k);
double mean_k0_sq(cplx lambda, double k);

/// Real lambda with <k0>(lambda) = target (toms748 bracketing).
double solve_bg_label(double target, double k);

/// |(3/16 - g/4) - k(1-k)|.
double casimir_check(const PhysParams& p);

/// Coefficient of `target` in `image` (grid quadrature). If requested,
/// `residual` receives ||image - coeff target|| / ||image||.
cplx ladder_projection(const GridWave& target, const GridWave& image, double* residual = nullptr);

}  // namespace sosc
