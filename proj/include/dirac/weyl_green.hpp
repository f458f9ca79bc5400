#pragma once

// Closed-form objects attached to the boundary triple of the free Dirac
// operator H0 = [[0,-1],[1,0]] d/dx + diag(m, -m): the momentum branch k(z),
// the Weyl function M(z), B(lambda), the gamma-field vectors h^1_z, h^2_z and
// the free and perturbed Green kernels.

#include <cmath>
#include <complex>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"

namespace dirac {

enum class Side { PlusI0, MinusI0 };

// A real energy approached from above (lambda + i0) or below (lambda - i0).
struct EnergyPoint {
  double lambda = 0.0;
  Side side = Side::PlusI0;

  bool in_gap(double m) const { return std::abs(lambda) < m; }
};

inline double sgn(double x) { return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0); }

// k = sqrt(z^2 - m^2) on the branch Im k > 0.
inline Complex k_of_z(Complex z, double m) {
  if (z.imag() == 0.0 && std::abs(z.real()) >= m) {
    throw Error(ErrorKind::OnSpectrum, "k_of_z: z lies on the continuous spectrum");
  }
  Complex k = std::sqrt(z * z - m * m);
  if (k.imag() <= 0.0) k = -k;
  return k;
}

inline Complex k_boundary(double lambda, Side side, double m) {
  if (std::abs(lambda) == m) throw Error(ErrorKind::AtThreshold, "k_boundary at lambda = +-m");
  if (std::abs(lambda) < m) return {0.0, std::sqrt(m * m - lambda * lambda)};
  const double r = sgn(lambda) * std::sqrt(lambda * lambda - m * m);
  return side == Side::PlusI0 ? r : -r;
}

inline Mat2C weyl_M_from_k(Complex z, Complex k, double m) {
  const Complex mz = m + z;
  if (mz == 0.0) throw Error(ErrorKind::PoleAtMinusM, "Weyl function has a pole at z = -m");
  return Mat2C::diag(kI * k / (2.0 * mz), kI * mz / (2.0 * k));
}

inline Mat2C weyl_M(Complex z, double m) { return weyl_M_from_k(z, k_of_z(z, m), m); }

inline Mat2C weyl_M(const EnergyPoint& e, double m) {
  const double l = e.lambda;
  if (std::abs(l) == m) throw Error(ErrorKind::AtThreshold, "Weyl function at lambda = +-m");
  if (std::abs(l) < m) {
    return Mat2C::diag(-0.5 * std::sqrt((m - l) / (m + l)), 0.5 * std::sqrt((m + l) / (m - l)));
  }
  const double sign = e.side == Side::PlusI0 ? 1.0 : -1.0;
  const Complex f = sign * 0.5 * kI;
  return Mat2C::diag(f * std::sqrt((l - m) / (l + m)), f * std::sqrt((l + m) / (l - m)));
}

// B(lambda) = 2^{-1/2} diag(r^{1/4}, r^{-1/4}), r = (lambda - m)/(lambda + m);
// i B^2 = M(lambda + i0).
inline Mat2C B_matrix(double lambda, double m) {
  if (std::abs(lambda) <= m) throw Error(ErrorKind::InGap, "B(lambda) needs |lambda| > m");
  const double q = std::pow((lambda - m) / (lambda + m), 0.25);
  return Mat2C::diag(q / std::sqrt(2.0), 1.0 / (q * std::sqrt(2.0)));
}

struct GammaVectors {
  Vec2C h1;
  Vec2C h2;
};

inline GammaVectors gamma_vectors_from_k(Complex z, Complex k, double m, double x) {
  if (x == 0.0) throw Error(ErrorKind::OriginEvaluation, "gamma vectors need x != 0");
  const Complex mz = m + z;
  if (mz == 0.0) throw Error(ErrorKind::PoleAtMinusM, "gamma vectors have a pole at z = -m");
  const Complex e = 0.5 * std::exp(kI * k * std::abs(x));
  const double s = sgn(x);
  return {{e * s, e * kI * k / mz}, {e * kI * mz / k, -e * s}};
}

inline GammaVectors gamma_vectors(Complex z, double m, double x) {
  return gamma_vectors_from_k(z, k_of_z(z, m), m, x);
}

// Boundary-value version; in the gap both sides give the decaying vectors.
inline GammaVectors gamma_vectors(const EnergyPoint& e, double m, double x) {
  return gamma_vectors_from_k(e.lambda, k_boundary(e.lambda, e.side, m), m, x);
}

// G0(x, y; z) = (e^{ik|x-y|}/2) [[i(m+z)/k, sgn(x-y)], [-sgn(x-y), ik/(m+z)]].
inline Mat2C green_free(double x, double y, Complex z, double m) {
  if (x == y) throw Error(ErrorKind::DiagonalPoint, "free Green kernel needs x != y");
  const Complex k = k_of_z(z, m);
  const Complex mz = m + z;
  const double s = sgn(x - y);
  const Complex e = 0.5 * std::exp(kI * k * std::abs(x - y));
  return Mat2C{kI * mz / k, s, -s, kI * k / mz} * e;
}

// (D M(z) - C)^{-1} D, the matrix in the resolvent formula.
inline Mat2C krein_matrix(const BoundaryPair& pair, const Mat2C& weyl) {
  const Mat2C a = pair.D() * weyl - pair.C();
  const double scale = pair.scale() * std::max(1.0, weyl.max_abs());
  if (std::abs(a.det()) <= kArithmeticTol * scale * scale) {
    throw Error(ErrorKind::NearEigenvalue, "D M(z) - C is numerically singular");
  }
  return inverse2(a, 0.0) * pair.D();
}

// Kernel of (H^{CD} - z)^{-1}:
// G0(x,y;z) - sum_{jl} A_{jl} h^j_z(x) h^l_{conj z}(y)^*, A = (DM(z) - C)^{-1} D.
inline Mat2C green_perturbed(double x, double y, Complex z, const BoundaryPair& pair) {
  if (x == 0.0 || y == 0.0) throw Error(ErrorKind::OriginEvaluation, "perturbed kernel needs x, y != 0");
  const double m = pair.mass();
  const Mat2C a = krein_matrix(pair, weyl_M(z, m));
  const GammaVectors hx = gamma_vectors(z, m, x);
  const GammaVectors hy = gamma_vectors(std::conj(z), m, y);
  const std::array<const Vec2C*, 2> left{&hx.h1, &hx.h2};
  const std::array<const Vec2C*, 2> right{&hy.h1, &hy.h2};
  const std::array<std::array<Complex, 2>, 2> am{{{a.a11, a.a12}, {a.a21, a.a22}}};

  Mat2C g = green_free(x, y, z, m);
  for (int j = 0; j < 2; ++j) {
    for (int l = 0; l < 2; ++l) g -= am[j][l] * outer(*left[j], *right[l]);
  }
  return g;
}

// ---------------------------------------------------------------------------
// Boundary maps of the triple, applied to a sampled function.
//   Gamma_1 f = (f1(+0) - f1(-0), f2(-0) - f2(+0))
//   Gamma_2 f = (1/2) (f2(-0) + f2(+0), f1(-0) + f1(+0))
// One-sided limits come from samples at +-delta and +-2 delta, extrapolated
// linearly (error O(delta^2)).

struct BoundaryTraces {
  Vec2C gamma1;
  Vec2C gamma2;
};

template <class F>
BoundaryTraces boundary_traces(F&& f, double delta = 1e-6) {
  const Vec2C fp = 2.0 * f(delta) - f(2.0 * delta);
  const Vec2C fm = 2.0 * f(-delta) - f(-2.0 * delta);
  return {{fp[0] - fm[0], fm[1] - fp[1]}, {0.5 * (fm[1] + fp[1]), 0.5 * (fm[0] + fp[0])}};
}

// |C Gamma_1 f - D Gamma_2 f|_max.
inline double boundary_relation_defect(const BoundaryPair& pair, const BoundaryTraces& t) {
  return max_abs(pair.C() * t.gamma1 - pair.D() * t.gamma2);
}

}  // namespace dirac
