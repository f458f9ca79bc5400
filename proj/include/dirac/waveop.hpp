#pragma once

// The wave operator W_- in the representation where the thresholds +-m sit at
// x = +-inf and the energies +-inf at x = 0. There
//   W_- - 1 = R(D) T0(lambda(X)),   D = -i d/dx,   lambda(x) = m (e^x + 1)/(e^x - 1),
// a momentum multiplier (independent of C, D) times a position multiplier.
// Both factors are realized on a uniform grid; R(D) goes through the FFT.

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <unsupported/Eigen/FFT>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"
#include "dirac/scattering.hpp"
#include "dirac/topology.hpp"

namespace dirac {

inline double lambda_of_x(double x, double m) {
  if (x == 0.0) throw Error(ErrorKind::OriginOrThreshold, "lambda(x) has a pole at x = 0");
  return m / std::tanh(0.5 * x);
}

inline double x_of_lambda(double lambda, double m) {
  if (!(std::abs(lambda) > m)) throw Error(ErrorKind::OriginOrThreshold, "x(lambda) needs |lambda| > m");
  return std::log((lambda + m) / (lambda - m));
}

// Jacobian weight of the change of variables lambda <-> x.
inline double upside_down_weight(double x, double m) {
  return std::sqrt(2.0 * m) * std::exp(0.5 * x) / (std::exp(x) - 1.0);
}

// Nodes x_j = (j + 1/2) h - L avoid the origin. Momenta are the half-shifted
// lattice (k + 1/2) pi/L, k = -N/2 .. N/2-1, stored in FFT bin order; the
// half shift makes them symmetric about 0.
struct GridSpec {
  double half_width = 40.0;
  int points = 4096;
  double spacing = 0.0;
  std::vector<double> x_nodes;
  std::vector<double> momentum_nodes;

  static GridSpec make(double half_width, int points) {
    if (!(half_width > 0.0)) throw Error(ErrorKind::InvalidArgument, "grid half width must be positive");
    if (points < 2 || !std::has_single_bit(static_cast<unsigned>(points))) {
      throw Error(ErrorKind::InvalidArgument, "grid size must be a power of two");
    }
    GridSpec g;
    g.half_width = half_width;
    g.points = points;
    g.spacing = 2.0 * half_width / points;
    g.x_nodes.resize(static_cast<std::size_t>(points));
    g.momentum_nodes.resize(static_cast<std::size_t>(points));
    const double dk = std::numbers::pi / half_width;
    for (int j = 0; j < points; ++j) {
      g.x_nodes[static_cast<std::size_t>(j)] = (j + 0.5) * g.spacing - half_width;
      const int k = j < points / 2 ? j : j - points;
      g.momentum_nodes[static_cast<std::size_t>(j)] = (k + 0.5) * dk;
    }
    return g;
  }
};

using GridFunction = std::vector<Vec2C>;

inline double l2_norm(const GridFunction& f, const GridSpec& grid) {
  double acc = 0.0;
  for (const auto& v : f) acc += std::norm(v[0]) + std::norm(v[1]);
  return std::sqrt(grid.spacing * acc);
}

// Unit-width Gaussian exciting both components, L2-normalized on the grid.
inline GridFunction gaussian_probe(const GridSpec& grid, double center = 0.0, double width = 1.0) {
  GridFunction f(grid.x_nodes.size());
  for (std::size_t j = 0; j < f.size(); ++j) {
    const double d = (grid.x_nodes[j] - center) / width;
    const double g = std::exp(-0.5 * d * d);
    f[j] = {g, kI * g};
  }
  const double n = l2_norm(f, grid);
  for (auto& v : f) v = (1.0 / n) * v;
  return f;
}

// T0(lambda(x_j)) at every node; s = e^{-|x|/4} on the branch sgn(x).
inline std::vector<Mat2C> T_of_position(const BoundaryPair& pair, const GridSpec& grid) {
  const BoundaryGamma g(pair);
  std::vector<Mat2C> out(grid.x_nodes.size());
  for (std::size_t j = 0; j < out.size(); ++j) {
    const double x = grid.x_nodes[j];
    if (x == 0.0) throw Error(ErrorKind::OriginOrThreshold, "grid node at the origin");
    out[j] = g.t0(continuum_point_of_x(x));
  }
  return out;
}

class RMultiplier {
 public:
  explicit RMultiplier(const GridSpec& grid) : n_(grid.x_nodes.size()), symbol_(n_), twist_(n_) {
    for (std::size_t b = 0; b < n_; ++b) symbol_[b] = R_matrix(grid.momentum_nodes[b]);
    for (std::size_t j = 0; j < n_; ++j) {
      twist_[j] = std::polar(1.0, -std::numbers::pi * static_cast<double>(j) / static_cast<double>(n_));
    }
  }

  GridFunction apply(const GridFunction& f) const {
    std::vector<Complex> c1(n_), c2(n_), f1, f2;
    for (std::size_t j = 0; j < n_; ++j) {
      c1[j] = f[j][0] * twist_[j];
      c2[j] = f[j][1] * twist_[j];
    }
    fft_.fwd(f1, c1);
    fft_.fwd(f2, c2);
    for (std::size_t b = 0; b < n_; ++b) {
      f1[b] *= symbol_[b].a11;
      f2[b] *= symbol_[b].a22;
    }
    fft_.inv(c1, f1);
    fft_.inv(c2, f2);
    GridFunction out(n_);
    for (std::size_t j = 0; j < n_; ++j) {
      const Complex back = std::conj(twist_[j]);
      out[j] = {c1[j] * back, c2[j] * back};
    }
    return out;
  }

  const std::vector<Mat2C>& symbol() const { return symbol_; }

 private:
  std::size_t n_;
  std::vector<Mat2C> symbol_;
  std::vector<Complex> twist_;
  mutable Eigen::FFT<double> fft_;
};

inline GridFunction apply_R_multiplier(const GridFunction& f, const GridSpec& grid) {
  return RMultiplier(grid).apply(f);
}

class WaveOperator {
 public:
  WaveOperator(const BoundaryPair& pair, const GridSpec& grid)
      : t_(T_of_position(pair, grid)), r_(grid) {}

  // W f = f + R(D) [T0(lambda(X)) f]
  GridFunction apply(const GridFunction& f) const {
    GridFunction tf(f.size());
    for (std::size_t j = 0; j < f.size(); ++j) tf[j] = t_[j] * f[j];
    GridFunction out = r_.apply(tf);
    for (std::size_t j = 0; j < f.size(); ++j) out[j] = out[j] + f[j];
    return out;
  }

 private:
  std::vector<Mat2C> t_;
  RMultiplier r_;
};

inline GridFunction wave_operator_apply(const BoundaryPair& pair, const GridFunction& f, const GridSpec& grid) {
  return WaveOperator(pair, grid).apply(f);
}

// | |Wf| - |f| | / |f|
inline double isometry_defect(const BoundaryPair& pair, const GridFunction& f, const GridSpec& grid) {
  const double nf = l2_norm(f, grid);
  return std::abs(l2_norm(wave_operator_apply(pair, f, grid), grid) - nf) / nf;
}

inline constexpr int kTraceMaxPoints = 1024;

// trace(1 - W W^*) = 2N - |W|_F^2 for the discretized W, column by column.
// Exploratory: the periodic grid distorts the symbol near the box edge.
inline double bound_state_trace(const BoundaryPair& pair, const GridSpec& grid) {
  if (grid.points > kTraceMaxPoints) {
    throw Error(ErrorKind::InvalidArgument, "bound_state_trace is limited to N <= 1024");
  }
  const WaveOperator w(pair, grid);
  const std::size_t n = grid.x_nodes.size();
  double frob = 0.0;
  GridFunction e(n, Vec2C{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) {
    for (int c = 0; c < 2; ++c) {
      e[j][static_cast<std::size_t>(c)] = 1.0;
      for (const auto& v : w.apply(e)) frob += std::norm(v[0]) + std::norm(v[1]);
      e[j][static_cast<std::size_t>(c)] = 0.0;
    }
  }
  return 2.0 * static_cast<double>(n) - frob;
}

}  // namespace dirac
