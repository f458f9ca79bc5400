#pragma once

// On-shell scattering data. Energies on the continuum are addressed by a
// branch and a compact parameter s in [0, 1]:
//   lambda > m :  s = ((lambda - m)/(lambda + m))^{1/4}
//   lambda < -m:  s = ((lambda + m)/(lambda - m))^{1/4}
// so s = 0 is the threshold +-m and s = 1 is +-infinity. In s the matrices
// B and M(lambda + i0) are monomial:
//   B = 2^{-1/2} diag(s^{e1}, s^{e2}),  M = (i/2) diag(s^{2 e1}, s^{2 e2}),
// with (e1, e2) = (1, -1) on the upper branch and (-1, 1) on the lower one.

#include <cmath>
#include <limits>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"
#include "dirac/weyl_green.hpp"

namespace dirac {

enum class Branch { Negative, Positive };

inline std::string_view branch_name(Branch b) { return b == Branch::Negative ? "neg" : "pos"; }

struct ContinuumPoint {
  Branch branch = Branch::Positive;
  double s = 1.0;

  static ContinuumPoint threshold(Branch b) { return {b, 0.0}; }
  static ContinuumPoint infinity(Branch b) { return {b, 1.0}; }

  static ContinuumPoint from_lambda(double lambda, double m) {
    if (std::abs(lambda) <= m) throw Error(ErrorKind::InGap, "continuum point needs |lambda| > m");
    if (std::isinf(lambda)) return infinity(lambda > 0 ? Branch::Positive : Branch::Negative);
    if (lambda > m) return {Branch::Positive, std::pow((lambda - m) / (lambda + m), 0.25)};
    return {Branch::Negative, std::pow((lambda + m) / (lambda - m), 0.25)};
  }

  // +-m at s = 0, +-infinity at s = 1.
  double lambda(double m) const {
    const double sign = branch == Branch::Positive ? 1.0 : -1.0;
    if (s >= 1.0) return sign * std::numeric_limits<double>::infinity();
    const double s4 = s * s * s * s;
    return sign * m * (1.0 + s4) / (1.0 - s4);
  }

  int e1() const { return branch == Branch::Positive ? 1 : -1; }
  int e2() const { return -e1(); }
};

struct T0Laurent {
  LaurentMat2 num;
  LaurentPoly den;
};

// T0 = -2i B (DM - C)^{-1} D B = num / den with
// den = det(DM - C), num = -2i B adj(DM - C) D B.
inline T0Laurent T0_laurent(Branch branch, const BoundaryPair& pair) {
  const ContinuumPoint proto{branch, 0.5};
  const int e1 = proto.e1();
  const int e2 = proto.e2();
  const LaurentMat2 weyl{LaurentPoly::monomial(2 * e1, 0.5 * kI), {}, {}, LaurentPoly::monomial(2 * e2, 0.5 * kI)};
  const LaurentMat2 x = [&] {
    LaurentMat2 dm = constant_matrix(pair.D()) * weyl;
    const LaurentMat2 c = constant_matrix(pair.C());
    return LaurentMat2{dm.a11 - c.a11, dm.a12 - c.a12, dm.a21 - c.a21, dm.a22 - c.a22};
  }();
  const LaurentMat2 adj_d = x.adjugate() * constant_matrix(pair.D());
  // -2i * (1/2) s^{e_j + e_k}
  auto sandwich = [](const LaurentPoly& p, int degree) { return p * LaurentPoly::monomial(degree, -kI); };
  return {{sandwich(adj_d.a11, e1 + e1), sandwich(adj_d.a12, e1 + e2), sandwich(adj_d.a21, e2 + e1),
           sandwich(adj_d.a22, e2 + e2)},
          x.det()};
}

inline Mat2C T0(const ContinuumPoint& point, const BoundaryPair& pair) {
  if (!(point.s >= 0.0 && point.s <= 1.0)) throw Error(ErrorKind::InvalidArgument, "s must lie in [0, 1]");
  const T0Laurent t = T0_laurent(point.branch, pair);
  return laurent_ratio_limit(t.num, t.den, point.s);
}

inline Mat2C T0(double lambda, const BoundaryPair& pair) {
  return T0(ContinuumPoint::from_lambda(lambda, pair.mass()), pair);
}

// -2i B(lambda) (D M(lambda + i eps) - C)^{-1} D B(lambda).
inline Mat2C T_eps(double lambda, double eps, const BoundaryPair& pair) {
  if (!(eps > 0.0)) throw Error(ErrorKind::InvalidArgument, "T_eps needs eps > 0");
  const double m = pair.mass();
  const Mat2C b = B_matrix(lambda, m);
  Mat2C a;
  try {
    a = krein_matrix(pair, weyl_M(Complex(lambda, eps), m));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::NearEigenvalue) throw;
    throw Error(ErrorKind::NearSingular, "D M(lambda + i eps) - C is numerically singular");
  }
  return (-2.0 * kI) * (b * a * b);
}

// Same product with the boundary value M(lambda + i0) plugged in directly.
inline Mat2C T0_direct(double lambda, const BoundaryPair& pair) {
  const double m = pair.mass();
  const Mat2C b = B_matrix(lambda, m);
  const Mat2C a = krein_matrix(pair, weyl_M(EnergyPoint{lambda, Side::PlusI0}, m));
  return (-2.0 * kI) * (b * a * b);
}

// Rank-one reduction: (DM - C)^{-1} D = I (m(z) - ell)^{-1} P with
// m(z) = q^* M(z) q, so T0 = -2i (Bq)(Bq)^* / (m(lambda + i0) - ell).
// Valid for interior points s in (0, 1].
inline Mat2C T0_rank_one(const ContinuumPoint& point, const RankOneD& rk) {
  if (!(point.s > 0.0 && point.s <= 1.0)) throw Error(ErrorKind::InvalidArgument, "s must lie in (0, 1]");
  const double s = point.s;
  const double b1 = std::pow(s, point.e1()) / std::sqrt(2.0);
  const double b2 = std::pow(s, point.e2()) / std::sqrt(2.0);
  const Vec2C bq{b1 * rk.q[0], b2 * rk.q[1]};
  const Complex weyl_scalar = kI * (b1 * b1 * std::norm(rk.q[0]) + b2 * b2 * std::norm(rk.q[1]));
  return outer(bq, bq) * (-2.0 * kI / (weyl_scalar - rk.ell));
}

inline Mat2C N_matrix(Branch branch) {
  const double r = 1.0 / std::sqrt(2.0);
  if (branch == Branch::Negative) return Mat2C{1.0, 1.0, -kI, kI} * r;
  return Mat2C{-kI, kI, 1.0, 1.0} * r;
}

inline Mat2C N_matrix(double lambda, double m) {
  if (std::abs(lambda) <= m) throw Error(ErrorKind::InGap, "N(lambda) needs |lambda| > m");
  return N_matrix(lambda > 0 ? Branch::Positive : Branch::Negative);
}

// S = 1 + N^* T0 N.
inline Mat2C S_matrix(const ContinuumPoint& point, const BoundaryPair& pair) {
  const Mat2C n = N_matrix(point.branch);
  return Mat2C::identity() + n.adjoint() * T0(point, pair) * n;
}

inline Mat2C S_matrix(double lambda, const BoundaryPair& pair) {
  return S_matrix(ContinuumPoint::from_lambda(lambda, pair.mass()), pair);
}

// ---------------------------------------------------------------------------
// Fiber of the free operator in momentum space: h(p) = [[m, -ip], [ip, -m]].

struct FreeFiber {
  double p = 0.0;
  Vec2C xi_plus;
  Vec2C xi_minus;
  double energy = 0.0;  // sqrt(p^2 + m^2)
};

inline Mat2C free_symbol(double p, double m) { return Mat2C{m, -kI * p, kI * p, -m}; }

inline FreeFiber free_fiber(double p, double m) {
  if (!(m > 0.0)) throw Error(ErrorKind::InvalidArgument, "mass must be positive");
  const double e = std::hypot(p, m);
  const double c = 1.0 / std::sqrt(2.0 * (p * p + m * m + m * e));
  return {p, {c * (m + e), c * kI * p}, {c * kI * p, c * (m + e)}, e};
}

inline Mat2C spectral_projector(const Vec2C& xi) { return outer(xi, xi); }

}  // namespace dirac
