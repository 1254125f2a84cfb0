#pragma once

#include <complex>
#include <string>
#include <vector>

namespace sosc {

using cplx = std::complex<double>;

/// Real frequency omega(t) of the oscillator.
class FrequencyProfile {
 public:
  enum class Kind { zero, constant, tabulated };

  static FrequencyProfile zero();
  static FrequencyProfile constant(double omega0);
  /// Piecewise-linear interpolation through (t_i, omega_i); t strictly increasing.
  static FrequencyProfile tabulated(std::vector<double> t, std::vector<double> omega);
  /// Two-column CSV "t,omega" with a mandatory header line.
  static FrequencyProfile load_csv(const std::string& path);

  Kind kind() const { return kind_; }
  double omega0() const { return omega0_; }
  const std::vector<double>& times() const { return t_; }
  double t_begin() const;
  double t_end() const;
  double omega(double t) const;
  std::string describe() const;

 private:
  Kind kind_ = Kind::zero;
  double omega0_ = 0.0;
  std::vector<double> t_, w_;
};

enum class Convention {
  wronskian_half_i,    // W = i/2; free particle eps = (t - i)/2
  paper_free_particle  // W = -i; free particle eps = (t + i)/sqrt(2)
};

Convention parse_convention(const std::string& s);
std::string to_string(Convention c);

/// Solution of eps'' + 4 omega^2 eps = 0 at one time.
struct Envelope {
  cplx eps;
  cplx eps_dot;
  double gamma = 0.0;      // |eps|^2
  double gamma_dot = 0.0;  // 2 Re(eps_dot conj(eps))
  double t = 0.0;
  // arg eps continued along the trajectory; phases like eps^{-2k} use it.
  double arg_eps = 0.0;

  /// W = eps_dot conj(eps) - eps conj(eps_dot).
  cplx wronskian() const { return eps_dot * std::conj(eps) - eps * std::conj(eps_dot); }
};

Envelope make_envelope(cplx eps, cplx eps_dot, double t, double arg_eps);

Envelope envelope_at(const FrequencyProfile& profile, double t, Convention convention);

/// Rescale (and conjugate if W is negative imaginary) so that W = i/2. The
/// wave functions and generators assume this gauge.
Envelope to_half_i_gauge(const Envelope& env);

/// |eps'' + 4 omega^2 eps| / |eps| at t, with eps'' from a fourth-order
/// centred difference of eps_dot.
double envelope_residual(const FrequencyProfile& profile, double t, Convention convention,
                         double dt = 1e-3);

}  // namespace sosc
