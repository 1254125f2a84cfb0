#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>

namespace sosc::num {

using cplx = std::complex<double>;

struct QuadratureScheme {
  enum class Kind { adaptive_subdivision, gauss_laguerre_mapped };
  Kind kind = Kind::adaptive_subdivision;
  double abs_tol = 1e-14;
  double rel_tol = 1e-12;
  int max_evals = 400000;

  void validate() const;
};

struct QuadratureResult {
  cplx value;
  double error = 0.0;
  int evals = 0;
};

/// Raised when the evaluation budget runs out; carries the partial result.
class QuadratureError : public std::runtime_error {
 public:
  QuadratureError(const std::string& what, QuadratureResult partial)
      : std::runtime_error(what), partial_(partial) {}
  const QuadratureResult& partial() const noexcept { return partial_; }

 private:
  QuadratureResult partial_;
};

using Integrand = std::function<cplx(double)>;

/// Globally adaptive Gauss-Kronrod (10/21) on the finite interval [a, b].
QuadratureResult integrate_interval(const Integrand& f, double a, double b,
                                    const QuadratureScheme& scheme = {});

/// Integral of f over [a, inf). The adaptive kind maps x = a + u/(1-u) onto
/// [0, 1); the Gauss-Laguerre kind uses e^{-(x-a)}-weighted rules of growing
/// order, estimating the error from successive orders.
QuadratureResult integrate_semiaxis(const Integrand& f, const QuadratureScheme& scheme = {},
                                    double a = 0.0);

}  // namespace sosc::num
