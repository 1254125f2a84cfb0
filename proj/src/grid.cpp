#include "sosc/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

namespace sosc {

namespace {

constexpr int kHalf = kStencilWidth / 2;

// Fornberg's recursion: weights c[d][j] of the d-th derivative at z from
// values at the nodes.
template <int N, int M>
std::array<std::array<double, N>, M + 1> fornberg(const std::array<double, N>& nodes, double z) {
  std::array<std::array<double, N>, M + 1> c{};
  double c1 = 1.0;
  double c4 = nodes[0] - z;
  c[0][0] = 1.0;
  for (int i = 1; i < N; ++i) {
    const int mn = std::min(i, M);
    double c2 = 1.0;
    const double c5 = c4;
    c4 = nodes[i] - z;
    for (int j = 0; j < i; ++j) {
      const double c3 = nodes[i] - nodes[j];
      c2 *= c3;
      if (j == i - 1) {
        for (int k = mn; k >= 1; --k) {
          c[k][i] = c1 * (k * c[k - 1][i - 1] - c5 * c[k][i - 1]) / c2;
        }
        c[0][i] = -c1 * c5 * c[0][i - 1] / c2;
      }
      for (int k = mn; k >= 1; --k) c[k][j] = (c4 * c[k][j] - k * c[k - 1][j]) / c3;
      c[0][j] = c4 * c[0][j] / c3;
    }
    c1 = c2;
  }
  return c;
}

using StencilSet = std::array<std::array<std::array<double, kStencilWidth>, 4>, kStencilWidth>;

// table[p][d][j]: derivative d at stencil position p of a stencil on 0..8.
const StencilSet& stencils() {
  static const StencilSet table = [] {
    StencilSet t{};
    std::array<double, kStencilWidth> nodes{};
    for (int j = 0; j < kStencilWidth; ++j) nodes[j] = j;
    for (int p = 0; p < kStencilWidth; ++p) t[p] = fornberg<kStencilWidth, 3>(nodes, p);
    return t;
  }();
  return table;
}

double softplus(double s) { return s > 0.0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

// Inverse of softplus: log(e^u - 1).
double softplus_inv(double u) { return u > 1.0 ? u + std::log1p(-std::exp(-u)) : std::log(std::expm1(u)); }

void require_same_grid(const GridWave& a, const GridWave& b) {
  if (a.grid != b.grid || a.values.size() != b.values.size()) {
    throw std::invalid_argument("GridWave arithmetic on different grids");
  }
}

}  // namespace

void GridSpec::validate() const {
  if (n < 64) throw std::invalid_argument("GridSpec: need at least 64 points");
  if (!(x_min > 0.0) || !(x_max > x_min)) {
    throw std::invalid_argument("GridSpec: need 0 < x_min < x_max");
  }
  if (spacing == Spacing::log_near_zero && !(knee > 0.0 && std::isfinite(knee))) {
    throw std::invalid_argument("GridSpec: knee must be finite and > 0");
  }
}

RadialGrid::RadialGrid(const GridSpec& spec) : spec_(spec) {
  spec.validate();
  const int n = spec.n;
  x_.resize(n);
  j1_.resize(n);
  j2_.resize(n);
  j3_.resize(n);
  if (spec.spacing == GridSpec::Spacing::uniform) {
    ds_ = (spec.x_max - spec.x_min) / (n - 1);
    for (int i = 0; i < n; ++i) x_[i] = spec.x_min + i * ds_;
    x_[n - 1] = spec.x_max;
    j1_.setOnes();
    j2_.setZero();
    j3_.setZero();
  } else {
    const double c = spec.knee;
    const double s0 = softplus_inv(spec.x_min / c);
    const double s1 = softplus_inv(spec.x_max / c);
    ds_ = (s1 - s0) / (n - 1);
    for (int i = 0; i < n; ++i) {
      const double s = s0 + i * ds_;
      const double sig = 1.0 / (1.0 + std::exp(-s));
      x_[i] = c * softplus(s);
      j1_[i] = c * sig;
      j2_[i] = c * sig * (1.0 - sig);
      j3_[i] = c * sig * (1.0 - sig) * (1.0 - 2.0 * sig);
    }
    x_[0] = spec.x_min;
    x_[n - 1] = spec.x_max;
  }
  for (int i = 1; i < n; ++i) {
    if (!(x_[i] > x_[i - 1])) throw std::runtime_error("RadialGrid: points not strictly increasing");
  }
  w_ = j1_ * ds_;
  w_[0] *= 0.5;
  w_[n - 1] *= 0.5;
}

GridWave operator+(const GridWave& a, const GridWave& b) {
  require_same_grid(a, b);
  return {a.grid, a.values + b.values, a.t, std::max(a.untrusted, b.untrusted)};
}

GridWave operator-(const GridWave& a, const GridWave& b) {
  require_same_grid(a, b);
  return {a.grid, a.values - b.values, a.t, std::max(a.untrusted, b.untrusted)};
}

GridWave operator*(cplx s, const GridWave& a) { return {a.grid, s * a.values, a.t, a.untrusted}; }

int grid_derivative_order(int order) {
  switch (order) {
    case 1:
    case 2:
      return 8;
    case 3:
      return 6;
    default:
      throw std::invalid_argument("grid_derivative_order: order must be 1, 2 or 3");
  }
}

GridWave grid_derivative(const GridWave& w, int order) {
  grid_derivative_order(order);
  const RadialGrid& g = *w.grid;
  const int n = g.size();
  if (n < kStencilWidth || w.size() != n) {
    throw std::invalid_argument("grid_derivative: grid smaller than the stencil (" +
                                std::to_string(n) + " points)");
  }
  const StencilSet& st = stencils();
  // Derivatives with respect to s, orders 1..order.
  std::array<CplxArray, 4> ds;
  for (int d = 1; d <= order; ++d) ds[d].resize(n);
  for (int i = 0; i < n; ++i) {
    int start = i - kHalf;
    if (start < 0) start = 0;
    if (start > n - kStencilWidth) start = n - kStencilWidth;
    const int p = i - start;
    for (int d = 1; d <= order; ++d) {
      cplx acc = 0.0;
      for (int j = 0; j < kStencilWidth; ++j) acc += st[p][d][j] * w.values[start + j];
      ds[d][i] = acc;
    }
  }
  const double h = g.ds();
  const RealArray& a1 = g.jac1();
  const RealArray& a2 = g.jac2();
  const RealArray& a3 = g.jac3();
  const CplxArray fs = ds[1] / h;
  CplxArray out;
  if (order == 1) {
    out = fs / a1;
  } else if (order == 2) {
    const CplxArray fss = ds[2] / (h * h);
    out = fss / a1.square() - a2 * fs / a1.cube();
  } else {
    const CplxArray fss = ds[2] / (h * h);
    const CplxArray fsss = ds[3] / (h * h * h);
    out = fsss / a1.cube() - 3.0 * a2 * fss / a1.pow(4) +
          (3.0 * a2.square() / a1.pow(5) - a3 / a1.pow(4)) * fs;
  }
  return {w.grid, std::move(out), w.t, w.untrusted + kHalf};
}

cplx grid_inner(const GridWave& a, const GridWave& b, int min_exclude) {
  require_same_grid(a, b);
  const int skip = std::max({min_exclude, a.untrusted, b.untrusted});
  const int n = a.size();
  if (2 * skip >= n) throw std::invalid_argument("grid_inner: no trusted points left");
  const RealArray& w = a.grid->weights();
  cplx acc = 0.0;
  for (int i = skip; i < n - skip; ++i) acc += w[i] * std::conj(a.values[i]) * b.values[i];
  return acc;
}

double grid_norm_sq(const GridWave& a, int min_exclude) { return grid_inner(a, a, min_exclude).real(); }

double grid_max_abs(const GridWave& a, int min_exclude) {
  const int skip = std::max(min_exclude, a.untrusted);
  const int n = a.size();
  if (2 * skip >= n) throw std::invalid_argument("grid_max_abs: no trusted points left");
  return a.values.segment(skip, n - 2 * skip).abs().maxCoeff();
}

}  // namespace sosc
