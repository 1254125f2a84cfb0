#pragma once

#include <stdexcept>
#include <string>

#include "sosc/algebra.hpp"
#include "sosc/states.hpp"

namespace sosc {

/// Transformation function u = psi_m on the virtual branch with alpha = 2k-1,
/// and the operator normalization L1 = sqrt(2 gamma).
struct DarbouxConfig {
  int m = 1;

  /// Throws unless m >= 0, alpha = 2k-1 > 0 and u is nodeless on (0, inf).
  void validate(const PhysParams& p) const;
  double alpha(const PhysParams& p) const { return 2.0 * p.k - 1.0; }
};

/// A sampled function vanishes (or changes sign) at `x`.
class NodeError : public std::domain_error {
 public:
  NodeError(const std::string& what, double x) : std::domain_error(what), x_(x) {}
  double x() const noexcept { return x_; }

 private:
  double x_;
};

/// u = psi_m (virtual branch, unnormalized) on the grid.
GridWave transformation_function(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env,
                                 std::shared_ptr<const RadialGrid> grid);

/// Max interior |(log(u / conj u))_xxx|, from the unwrapped phase of u.
/// Throws NodeError if u vanishes or its phase jumps by more than pi/2.
/// Rounding grows like dx^-3, so prefer uniform grids of moderate size.
double reality_condition_check(const GridWave& u);

/// q = u_x / u = x/(8g) + (4k-1)/(2x) + i x gdot/(4g) + x L^{2k}_{m-1}(z) / (4g L^{2k-1}_m(z)),
/// z = -x^2/(8g), g = gamma in the W = i/2 gauge.
CplxArray darboux_q(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env,
                    const RadialGrid& grid);

/// L w = sqrt(2 gamma) [w_x - q w] with w_x by finite differences.
GridWave apply_L(const GridWave& w, const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env);
/// Same with a caller-supplied derivative (no finite differences).
GridWave apply_L(const GridWave& w, const GridWave& w_x, const DarbouxConfig& cfg, const PhysParams& p,
                 const Envelope& env);
/// L1 [w_x - (u_x/u) w] with both derivatives by finite differences.
GridWave apply_L_generic(const GridWave& w, const GridWave& u, double l1);
/// Formal adjoint sqrt(2 gamma) [-w_x - conj(q) w].
GridWave apply_L_adjoint(const GridWave& w, const DarbouxConfig& cfg, const PhysParams& p,
                         const Envelope& env);

struct PotentialDifference {
  RealArray closed;   // Laguerre-ratio form
  RealArray log_form; // -(ln|u|^2)_xx by finite differences
  int untrusted = 0;
  /// Max interior |closed - log_form| / max(1, |closed|).
  double discrepancy = 0.0;
};

/// A_m = (4k-1)/x^2 + (x L^{2k}_{m-1} / (g L^{2k-1}_m))^2 / 8
///       - [x^2 L^{2k+1}_{m-2} + 4g L^{2k}_{m-1}] / (8 g^2 L^{2k-1}_m) - 1/(4g).
RealArray potential_difference(const DarbouxConfig& cfg, const PhysParams& p, const Envelope& env,
                               const RadialGrid& grid);
/// Both forms and their discrepancy. Throws std::domain_error if u overflows
/// on the grid.
PotentialDifference potential_difference_check(const DarbouxConfig& cfg, const PhysParams& p,
                                               const Envelope& env,
                                               std::shared_ptr<const RadialGrid> grid);

struct ShapeFit {
  double c_x2 = 0.0;
  double c_inv_x2 = 0.0;
  double c_const = 0.0;
  /// RMS of the residual over RMS of the data.
  double relative_residual = 0.0;
};

/// Least-squares fit of v to c1 x^2 + c2 / x^2 + c3 on the points with x in [x_lo, x_hi].
ShapeFit shape_fit(const RealArray& v, const RadialGrid& grid, double x_lo, double x_hi);

enum class TransformedKind { phi_n, phi_lambda, phi_z };
enum class Route { closed, series };

struct TransformedLabel {
  TransformedKind kind = TransformedKind::phi_n;
  int n = 0;
  cplx value = 0.0;  // lambda or z

  static TransformedLabel basis(int n) { return {TransformedKind::phi_n, n, 0.0}; }
  static TransformedLabel bg(cplx lambda) { return {TransformedKind::phi_lambda, 0, lambda}; }
  static TransformedLabel perelomov(cplx z) { return {TransformedKind::phi_z, 0, z}; }
};

struct TransformedState {
  GridWave base;
  TransformedLabel label;
  double normalization = 0.0;  // N_1n, N_1lambda or N_1z
  int terms = 0;               // series terms (series route)
};

/// N_1n = (n+2k+m)^{-1/2}.
double darboux_norm_basis(int n, const PhysParams& p, const DarbouxConfig& cfg);
/// N_1lambda^{-2} = <k0> + k + m.
double darboux_norm_bg(cplx lambda, const PhysParams& p, const DarbouxConfig& cfg);
/// N_1z^{-2} = m + 2k / (1 - |z|^2).
double darboux_norm_perelomov(cplx z, const PhysParams& p, const DarbouxConfig& cfg);
/// b_n = a_n sqrt((n+2k+m)/(2k+m)) with a_n the BG coefficient.
double darboux_bg_coefficient(int n, const PhysParams& p, const DarbouxConfig& cfg);

/// phi = N_1 L psi. The closed route applies L to the closed-form state and
/// its analytic derivative; the series route sums b_n-weighted phi_n.
TransformedState transformed_state(const TransformedLabel& label, const DarbouxConfig& cfg,
                                   const PhysParams& p, const Envelope& env,
                                   std::shared_ptr<const RadialGrid> grid, Route route = Route::closed,
                                   double tail_tol = 1e-12);

enum class POperator { p_zero, p_plus, p_minus };

/// p0 = L L+ - k - m, p+- = L k+- L+, all by finite differences on the grid.
/// Nested use compounds rounding; coarse uniform grids suit commutators.
GridWave p_operator(POperator which, const GridWave& w, const DarbouxConfig& cfg,
                    const OperatorContext& ctx);

/// Ladder factor: p+- phi_n = p_ladder_coefficient(n) phi_{n+-1}.
double p_ladder_coefficient(int n, bool raising, const PhysParams& p, const DarbouxConfig& cfg);

/// Right side of [p-, p+] = 2[k(1-k) + p0(k+m) + 2 p0^2](p0 + k + m) on a p0 eigenvalue.
double p_commutator_polynomial(double p0, const PhysParams& p, const DarbouxConfig& cfg);

enum class HoloDirection { forward, backward };

/// forward: c_n -> (n+2k+m)/sqrt(2k+m) c_n; backward: c_n -> sqrt(2k+m) c_n.
CoeffVector holo_darboux(const CoeffVector& v, HoloDirection dir, const PhysParams& p,
                         const DarbouxConfig& cfg);

}  // namespace sosc
