#pragma once

#include <functional>

#include "sosc/envelope.hpp"
#include "sosc/grid.hpp"

namespace sosc {

/// Coupling g of g/x^2 and the representation parameter k = 1/2 + sqrt(1+4g)/4.
struct PhysParams {
  double g = 2.0;
  double k = 1.25;
  int m_darboux = 0;

  static PhysParams from_g(double g, int m = 0);
  static PhysParams from_k(double k, int m = 0);
  /// Throws unless g > -1/4 and g = 3/4 + 4k(k-1) to 1e-12.
  void validate() const;
};

enum class Branch { bound, virtual_upper };

/// Separated solution label. The bound branch has alpha = 2k-1; the virtual
/// (non-normalizable) branch takes alpha = +-(2k-1).
struct BasisIndex {
  int n = 0;
  Branch branch = Branch::bound;
  double alpha = 0.0;

  static BasisIndex bound(int n, const PhysParams& p) { return {n, Branch::bound, 2.0 * p.k - 1.0}; }
  static BasisIndex virtual_upper(int n, double alpha) { return {n, Branch::virtual_upper, alpha}; }
};

/// Value of the separation constant: psi carries the phase (conj(eps)/eps)^{lambda_sep}.
double separation_constant(const BasisIndex& idx, const PhysParams& p);

/// psi_n(x, t) sampled on the grid. Bound states are normalized; asking for a
/// normalized virtual state throws std::domain_error.
GridWave basis_state(const BasisIndex& idx, const PhysParams& p, const Envelope& env,
                     std::shared_ptr<const RadialGrid> grid, bool normalize = true);

/// d psi_n / dx in closed form (same normalization as basis_state).
GridWave basis_state_dx(const BasisIndex& idx, const PhysParams& p, const Envelope& env,
                        std::shared_ptr<const RadialGrid> grid, bool normalize = true);

/// Coefficient a_n = (-1)^n sqrt(Gamma(2k) / (n! Gamma(n+2k))) of the BG series.
double bg_coefficient(int n, double k);
/// N_{0 lambda} = |lambda|^{k-1/2} I_{2k-1}(2|lambda|)^{-1/2} Gamma(2k)^{-1/2},
/// evaluated without cancellation near lambda = 0.
double bg_normalization(cplx lambda, double k);
/// Constant phase e^{i(k-1/2) arg lambda} between the closed form and the series.
cplx bg_phase(cplx lambda, double k);

/// Closed-form BG state built from I_{2k-1}(mu x / eps), mu = sqrt(lambda/2).
GridWave bg_state_closed(cplx lambda, const PhysParams& p, const Envelope& env,
                         std::shared_ptr<const RadialGrid> grid);
/// d/dx of bg_state_closed.
GridWave bg_state_closed_dx(cplx lambda, const PhysParams& p, const Envelope& env,
                            std::shared_ptr<const RadialGrid> grid);

struct SeriesResult {
  GridWave wave;
  int terms = 0;
  double truncation_error = 0.0;  // first omitted |coefficient|
};

/// Sum over n < n_trunc of c_n psi_n. Throws std::runtime_error if the first
/// omitted coefficient exceeds `tail_tol`.
SeriesResult bg_state_series(cplx lambda, int n_trunc, const PhysParams& p, const Envelope& env,
                             std::shared_ptr<const RadialGrid> grid, double tail_tol = 1e-12);

/// Coefficient sqrt(Gamma(n+2k) / (n! Gamma(2k))) of the Perelomov series.
double perelomov_coefficient(int n, double k);

/// Closed-form Perelomov state, |z| < 1 (std::domain_error otherwise).
GridWave perelomov_state(cplx z, const PhysParams& p, const Envelope& env,
                         std::shared_ptr<const RadialGrid> grid);
/// d/dx of perelomov_state.
GridWave perelomov_state_dx(cplx z, const PhysParams& p, const Envelope& env,
                            std::shared_ptr<const RadialGrid> grid);

SeriesResult perelomov_state_series(cplx z, int n_trunc, const PhysParams& p, const Envelope& env,
                                    std::shared_ptr<const RadialGrid> grid,
                                    double tail_tol = 1e-12);

/// Smallest truncation with first omitted coefficient below tol (capped).
int bg_terms_needed(cplx lambda, double k, double tol = 1e-12, int cap = 400);
int perelomov_terms_needed(cplx z, double k, double tol = 1e-12, int cap = 20000);

struct DensityMoments {
  double norm = 0.0;
  double mean_x = 0.0;
  double sigma_x = 0.0;
};

/// Grid quadrature of |w|^2, x|w|^2, x^2|w|^2; mean and sigma use the
/// normalized density.
DensityMoments density_moments(const GridWave& w);

/// Samples psi(x, t) on a fixed grid for any t.
using Evolution = std::function<GridWave(double t)>;
/// Extra potential added to h0 (for Darboux partners), evaluated on the grid at t.
using ExtraPotential = std::function<RealArray(double t)>;

/// ||i d/dt psi - (h0 + V) psi|| / ||psi|| over the trusted interior, with a
/// centred time difference of step dt and h0 = -d^2/dx^2 + omega^2 x^2 + g/x^2.
double schrodinger_residual(const Evolution& psi, double t, const FrequencyProfile& profile,
                            double g, const ExtraPotential& extra = nullptr, double dt = 1e-4);

/// Whether L^alpha_n has a zero on the negative half-line (virtual branch
/// solutions are nodeless on (0, inf) iff not). Counts sign changes of the
/// shifted Pochhammer criterion: exactly one root iff (alpha+1)_n < 0.
bool laguerre_has_negative_root(int n, double alpha);

}  // namespace sosc
