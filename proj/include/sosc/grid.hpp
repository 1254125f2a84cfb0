#pragma once

#include <Eigen/Core>
#include <complex>
#include <memory>

namespace sosc {

using cplx = std::complex<double>;
using RealArray = Eigen::ArrayXd;
using CplxArray = Eigen::ArrayXcd;

struct GridSpec {
  enum class Spacing { uniform, log_near_zero };
  Spacing spacing = Spacing::log_near_zero;
  double x_max = 40.0;
  int n = 4096;
  // Smallest point. For uniform grids the points run from x_min to x_max.
  double x_min = 1e-3;
  // Scale where the log-spaced map turns linear: x = knee * ln(1 + e^s).
  // Points are log-spaced below it and uniformly spaced above it.
  double knee = 0.1;

  void validate() const;
};

/// Points on (0, x_max], the image of a uniform parameter grid s under a
/// smooth monotone map x(s). Uniform grids use x = s.
class RadialGrid {
 public:
  explicit RadialGrid(const GridSpec& spec);

  static std::shared_ptr<const RadialGrid> make(const GridSpec& spec) {
    return std::make_shared<const RadialGrid>(spec);
  }

  const GridSpec& spec() const { return spec_; }
  int size() const { return static_cast<int>(x_.size()); }
  const RealArray& points() const { return x_; }
  double ds() const { return ds_; }
  // dx/ds and its next two derivatives at every point.
  const RealArray& jac1() const { return j1_; }
  const RealArray& jac2() const { return j2_; }
  const RealArray& jac3() const { return j3_; }
  /// Trapezoid weights in s times dx/ds.
  const RealArray& weights() const { return w_; }

 private:
  GridSpec spec_;
  double ds_ = 0.0;
  RealArray x_, j1_, j2_, j3_, w_;
};

/// Samples of a complex function on a grid. `untrusted` counts points at each
/// end contaminated by one-sided finite differences.
struct GridWave {
  std::shared_ptr<const RadialGrid> grid;
  CplxArray values;
  double t = 0.0;
  int untrusted = 0;

  GridWave() = default;
  GridWave(std::shared_ptr<const RadialGrid> g, CplxArray v, double time = 0.0, int bad = 0)
      : grid(std::move(g)), values(std::move(v)), t(time), untrusted(bad) {}

  const RealArray& x() const { return grid->points(); }
  int size() const { return static_cast<int>(values.size()); }
};

GridWave operator+(const GridWave& a, const GridWave& b);
GridWave operator-(const GridWave& a, const GridWave& b);
GridWave operator*(cplx s, const GridWave& a);

/// Number of points in the finite-difference stencil.
inline constexpr int kStencilWidth = 9;

/// Nominal convergence order of grid_derivative for each derivative order.
int grid_derivative_order(int order);

/// d^order/dx^order with 9-point stencils in the map parameter (order 8 for
/// first and second derivatives, 6 for the third). The four points at each
/// end use shifted one-sided stencils and are added to `untrusted`.
GridWave grid_derivative(const GridWave& w, int order);

/// Quadrature of conj(a) b dx, skipping max(min_exclude, untrusted) points at
/// each end.
cplx grid_inner(const GridWave& a, const GridWave& b, int min_exclude = 3);
double grid_norm_sq(const GridWave& a, int min_exclude = 3);

/// Max |values| over the trusted interior.
double grid_max_abs(const GridWave& a, int min_exclude = 3);

}  // namespace sosc
