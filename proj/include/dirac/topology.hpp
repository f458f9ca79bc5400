#pragma once

// Gamma(x, y) = 1 + R(y) T0(lambda(x)), lambda(x) = m (e^x + 1)/(e^x - 1), on
// the compactified square [-inf, inf]^2. Its restriction to the boundary is
// U(2)-valued and the winding of its determinant counts bound states with a
// minus sign.
//
// Edges, as restrictions of Gamma (lambda(-inf) = -m, lambda(+inf) = +m):
//   B1: x = -inf   Gamma = 1 + R(y) T0(-m)
//   B2: y = +inf   Gamma = 1 + T0(lambda(x))
//   B3: x = +inf   Gamma = 1 + R(y) T0(+m)
//   B4: y = -inf   Gamma = 1

#include <cmath>
#include <numbers>
#include <string_view>
#include <vector>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"
#include "dirac/scattering.hpp"
#include "dirac/spectrum.hpp"

namespace dirac {

// R(y) = (1/2) [diag(tanh(2 pi y) - i sech(2 pi y), tanh(2 pi y) + i sech(2 pi y)) + 1],
// R(-inf) = 0, R(+inf) = 1.
inline Mat2C R_matrix(double y) {
  if (y == -std::numeric_limits<double>::infinity()) return Mat2C::zero();
  if (y == std::numeric_limits<double>::infinity()) return Mat2C::identity();
  const double a = 2.0 * std::numbers::pi * y;
  const double th = std::tanh(a);
  const double sech = 1.0 / std::cosh(a);
  return Mat2C::diag(0.5 * (Complex(th, -sech) + 1.0), 0.5 * (Complex(th, sech) + 1.0));
}

enum class Edge { B1, B2, B3, B4 };

inline std::string_view edge_name(Edge e) {
  switch (e) {
    case Edge::B1: return "B1";
    case Edge::B2: return "B2";
    case Edge::B3: return "B3";
    case Edge::B4: return "B4";
  }
  return "?";
}

// Position x on B2 in branch/s form: s = e^{-|x|/4}, lower branch for x < 0.
inline ContinuumPoint continuum_point_of_x(double x) {
  if (x == 0.0) return ContinuumPoint::infinity(Branch::Positive);
  return {x < 0.0 ? Branch::Negative : Branch::Positive, std::exp(-std::abs(x) / 4.0)};
}

// Evaluates Gamma on the boundary with the Laurent forms of T0 built once.
class BoundaryGamma {
 public:
  explicit BoundaryGamma(const BoundaryPair& pair)
      : neg_(T0_laurent(Branch::Negative, pair)), pos_(T0_laurent(Branch::Positive, pair)) {
    t0_minus_m_ = laurent_ratio_limit(neg_.num, neg_.den, 0.0);
    t0_plus_m_ = laurent_ratio_limit(pos_.num, pos_.den, 0.0);
  }

  Mat2C t0(const ContinuumPoint& p) const {
    const T0Laurent& t = p.branch == Branch::Negative ? neg_ : pos_;
    return laurent_ratio_limit(t.num, t.den, p.s);
  }

  Mat2C threshold_t0(Branch b) const { return b == Branch::Negative ? t0_minus_m_ : t0_plus_m_; }

  Mat2C on_b1(double y) const { return Mat2C::identity() + R_matrix(y) * t0_minus_m_; }
  Mat2C on_b2(const ContinuumPoint& p) const { return Mat2C::identity() + t0(p); }
  Mat2C on_b3(double y) const { return Mat2C::identity() + R_matrix(y) * t0_plus_m_; }

 private:
  T0Laurent neg_;
  T0Laurent pos_;
  Mat2C t0_minus_m_;
  Mat2C t0_plus_m_;
};

// Edge parameter is y on B1/B3 and x on B2/B4; infinities are allowed.
inline Mat2C gamma_edge(const BoundaryPair& pair, Edge edge, double param) {
  const BoundaryGamma g(pair);
  switch (edge) {
    case Edge::B1: return g.on_b1(param);
    case Edge::B2: return g.on_b2(continuum_point_of_x(param));
    case Edge::B3: return g.on_b3(param);
    case Edge::B4: return Mat2C::identity();
  }
  return Mat2C::identity();
}

struct LoopSample {
  Edge edge = Edge::B4;
  double param = 0.0;  // y on B1/B3, x on B2/B4
  Mat2C gamma;
  Complex det;
  double unwrapped_phase = 0.0;
};

struct BoundaryLoop {
  std::vector<LoopSample> samples;
  int winding = 0;
  double closure_residual = 0.0;
  double max_modulus_defect = 0.0;  // max | |det Gamma| - 1 |
};

struct WindingOptions {
  double refine_tol = std::numbers::pi / 4.0;  // cap on |phase increment|
  int density = 1;                             // multiplies the initial sample counts
  int max_depth = 60;
};

inline constexpr double kClosureTol = 0.05;

namespace detail {

struct LoopBuilder {
  const WindingOptions& opt;
  BoundaryLoop loop;
  double phase = 0.0;
  bool unresolved = false;

  void push(Edge edge, double param, const Mat2C& g) {
    const Complex d = g.det();
    if (!loop.samples.empty()) phase += std::arg(d / loop.samples.back().det);
    loop.max_modulus_defect = std::max(loop.max_modulus_defect, std::abs(std::abs(d) - 1.0));
    loop.samples.push_back({edge, param, g, d, phase});
  }

  // Adds samples on (a, b]; `at(t)` returns (Gamma, reported param).
  template <class F>
  void refine(Edge edge, F&& at, double a, const Complex& da, double b, const Mat2C& gb, int depth) {
    const Complex db = gb.det();
    const double full = std::abs(std::arg(db / da));
    if (depth < opt.max_depth && std::isfinite(a) && std::isfinite(b)) {
      const double mid = 0.5 * (a + b);
      const auto [gm, pm] = at(mid);
      const Complex dm = gm.det();
      const bool fine = full < opt.refine_tol && std::abs(std::arg(dm / da)) < opt.refine_tol &&
                        std::abs(std::arg(db / dm)) < opt.refine_tol;
      if (!fine) {
        refine(edge, at, a, da, mid, gm, depth + 1);
        refine(edge, at, mid, dm, b, gb, depth + 1);
        return;
      }
    } else if (full >= std::numbers::pi / 2.0) {
      // Either the depth ran out or one end is an exact infinity.
      unresolved = true;
    }
    push(edge, at(b).second, gb);
  }

  // Walks the parameter nodes in order, refining between consecutive ones.
  template <class F>
  void walk(Edge edge, F&& at, const std::vector<double>& nodes) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const auto [g, p] = at(nodes[i]);
      if (i == 0) {
        if (loop.samples.empty()) push(edge, p, g);
        else refine(edge, at, nodes[i], loop.samples.back().det, nodes[i], g, opt.max_depth);
        continue;
      }
      refine(edge, at, nodes[i - 1], loop.samples.back().det, nodes[i], g, 0);
    }
  }
};

inline std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) v[static_cast<std::size_t>(i)] = a + (b - a) * i / (n - 1);
  return v;
}

}  // namespace detail

// Clockwise loop, calibrated so that the pair (diag(-1/2, 1/2), 1) with its
// double eigenvalue at 0 winds -2:
//   B4 (x: -inf -> +inf), B3 (y: -inf -> +inf), B2 (x: +inf -> -inf), B1 (y: +inf -> -inf).
// Finite parts of B1/B3 are y in [-3, 3]; |tanh(6 pi) - 1| < 3e-8 covers the rest.
// B2 is sampled in s on each branch and glued at s = 1 (lambda = +-inf).
inline BoundaryLoop winding(const BoundaryPair& pair, const WindingOptions& opt = {}) {
  const BoundaryGamma g(pair);
  detail::LoopBuilder lb{opt, {}, 0.0, false};
  const double inf = std::numeric_limits<double>::infinity();
  const int ny = 30 * opt.density + 1;
  const int ns = 32 * opt.density + 1;

  const auto identity_at = [](double x) { return std::pair{Mat2C::identity(), x}; };
  lb.walk(Edge::B4, identity_at, {-inf, inf});

  auto y_nodes = detail::linspace(-3.0, 3.0, ny);
  y_nodes.insert(y_nodes.begin(), -inf);
  y_nodes.push_back(inf);
  lb.walk(Edge::B3, [&](double y) { return std::pair{g.on_b3(y), y}; }, y_nodes);

  // Upper branch from lambda = m (s = 0, x = +inf) out to +inf (s = 1, x = 0+),
  // then the lower branch from -inf (s = 1, x = 0-) to -m (s = 0, x = -inf).
  auto x_of = [inf](Branch b, double s) {
    if (s == 0.0) return b == Branch::Positive ? inf : -inf;
    const double x = -4.0 * std::log(s);
    return b == Branch::Positive ? x : -x;
  };
  lb.walk(Edge::B2, [&](double s) {
    const ContinuumPoint p{Branch::Positive, s};
    return std::pair{g.on_b2(p), x_of(Branch::Positive, s)};
  }, detail::linspace(0.0, 1.0, ns));
  auto s_down = detail::linspace(1.0, 0.0, ns);
  lb.walk(Edge::B2, [&](double s) {
    const ContinuumPoint p{Branch::Negative, s};
    return std::pair{g.on_b2(p), x_of(Branch::Negative, s)};
  }, s_down);

  std::reverse(y_nodes.begin(), y_nodes.end());
  lb.walk(Edge::B1, [&](double y) { return std::pair{g.on_b1(y), y}; }, y_nodes);

  BoundaryLoop loop = std::move(lb.loop);
  const double turns = lb.phase / (2.0 * std::numbers::pi);
  loop.winding = static_cast<int>(std::lround(turns));
  loop.closure_residual = std::abs(turns - loop.winding);
  if (lb.unresolved || loop.closure_residual >= kClosureTol) {
    throw Error(ErrorKind::NonClosure, "boundary loop could not be resolved into a closed phase lift");
  }
  return loop;
}

struct LevinsonReport {
  int winding = 0;
  int eigen_count = 0;
  bool holds = false;
  double closure_residual = 0.0;
  std::size_t samples_used = 0;
};

inline LevinsonReport levinson_verdict(const BoundaryPair& pair, const WindingOptions& opt = {}) {
  const BoundaryLoop loop = winding(pair, opt);
  const SpectralReport spec = eigenvalues_closed_form(pair);
  return {loop.winding, spec.total_count, loop.winding == -spec.total_count, loop.closure_residual,
          loop.samples.size()};
}

}  // namespace dirac
