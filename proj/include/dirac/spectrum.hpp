#pragma once

// Bound states of H^{CD}. All of them sit in the gap (-m, m) and are the
// zeros of det(D M(lambda + i0) - C). With t = sqrt((m - lambda)/(m + lambda)),
// M(lambda + i0) = (1/2) diag(-t, 1/t), and the problem becomes a quadratic in
// t whose shape depends on the rank of D.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dirac/algebra.hpp"
#include "dirac/extensions.hpp"
#include "dirac/weyl_green.hpp"

namespace dirac {

struct Eigenvalue {
  double lambda = 0.0;
  int multiplicity = 0;
  double t_root = 0.0;
  std::vector<Vec2C> kernel_basis;
};

struct SpectralReport {
  std::vector<Eigenvalue> eigenvalues;
  int total_count = 0;
  PairClass pair_class;
};

inline double lambda_of_t(double t, double m) { return m * (1.0 - t * t) / (1.0 + t * t); }
inline double t_of_lambda(double lambda, double m) { return std::sqrt((m - lambda) / (m + lambda)); }

// D M(lambda(t) + i0) - C, assembled in t to avoid the square roots in lambda.
inline Mat2C gap_matrix(const BoundaryPair& pair, double t) {
  return pair.D() * Mat2C::diag(-0.5 * t, 0.5 / t) - pair.C();
}

// Natural size of gap_matrix(pair, t); singular values are measured against it.
inline double gap_matrix_scale(const BoundaryPair& pair, double t) {
  return pair.D().max_abs() * 0.5 * std::max(t, 1.0 / t) + pair.C().max_abs();
}

inline constexpr double kKernelTol = 1e-10;
inline constexpr double kThresholdMargin = 1e-12;

struct PositiveRoot {
  double t = 0.0;
  bool double_root = false;
};

// Positive roots of a t^2 + b t + c.
inline std::vector<PositiveRoot> positive_roots(double a, double b, double c) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c)});
  if (scale <= kArithmeticTol) {
    throw Error(ErrorKind::DegenerateQuadratic, "all coefficients of the eigenvalue equation vanish");
  }
  std::vector<PositiveRoot> out;
  auto keep = [&](double t, bool dbl) {
    if (t > 0.0 && std::isfinite(t)) out.push_back({t, dbl});
  };
  if (std::abs(a) <= 1e-15 * scale) {
    if (b != 0.0) keep(-c / b, false);
    return out;
  }
  const double disc = b * b - 4.0 * a * c;
  const double disc_tol = kArithmeticTol * std::max(b * b, std::abs(4.0 * a * c));
  if (std::abs(disc) <= disc_tol) {
    keep(-b / (2.0 * a), true);
    return out;
  }
  if (disc < 0.0) return out;
  const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
  keep(q / a, false);
  if (q != 0.0) keep(c / q, false);
  return out;
}

inline Eigenvalue make_eigenvalue(const BoundaryPair& pair, double t) {
  const Mat2C a = gap_matrix(pair, t);
  const auto sv = singular_values(a);
  Eigenvalue e;
  e.lambda = lambda_of_t(t, pair.mass());
  e.t_root = t;
  if (sv.max <= kKernelTol * gap_matrix_scale(pair, t)) {
    e.multiplicity = 2;
    e.kernel_basis = {Vec2C{1.0, 0.0}, Vec2C{0.0, 1.0}};
  } else {
    e.multiplicity = 1;
    e.kernel_basis = {null_vector(a)};
  }
  return e;
}

inline SpectralReport eigenvalues_closed_form(const BoundaryPair& pair) {
  const double m = pair.mass();
  SpectralReport report{{}, 0, classify(pair)};

  std::vector<PositiveRoot> roots;
  if (const auto* inv = std::get_if<InvertibleD>(&report.pair_class)) {
    // D_Lambda(t) * t = (l22/2) t^2 + (det Lambda - 1/4) t - l11/2
    const double det_lambda = inv->l11 * inv->l22 - std::norm(inv->l12);
    roots = positive_roots(0.5 * inv->l22, det_lambda - 0.25, -0.5 * inv->l11);
  } else if (const auto* rk = std::get_if<RankOneD>(&report.pair_class)) {
    // d_ell(t) * t = |p2|^2 t^2 + 2 ell t - |p1|^2
    roots = positive_roots(std::norm(rk->p[1]), 2.0 * rk->ell, -std::norm(rk->p[0]));
  }

  for (const auto& r : roots) {
    const double lambda = lambda_of_t(r.t, m);
    if (!(std::abs(lambda) < m * (1.0 - kThresholdMargin))) continue;
    report.eigenvalues.push_back(make_eigenvalue(pair, r.t));
  }
  std::sort(report.eigenvalues.begin(), report.eigenvalues.end(),
            [](const Eigenvalue& x, const Eigenvalue& y) { return x.lambda < y.lambda; });
  for (const auto& e : report.eigenvalues) report.total_count += e.multiplicity;
  return report;
}

// Eigenvalue count read off the case table, without solving anything.
inline int predicted_eigen_count(const PairClass& pc, double tol = kArithmeticTol) {
  if (const auto* inv = std::get_if<InvertibleD>(&pc)) {
    if (inv->l11 < 0.0 && inv->l22 > 0.0) return 2;
    if (inv->l11 >= 0.0 && inv->l22 <= 0.0) return 0;
    return 1;
  }
  if (const auto* rk = std::get_if<RankOneD>(&pc)) {
    const bool p1_zero = std::abs(rk->p[0]) <= tol;
    const bool p2_zero = std::abs(rk->p[1]) <= tol;
    if (!p1_zero && !p2_zero) return 1;
    if (p2_zero && rk->trace_cd_star > 0.0) return 1;
    if (p1_zero && rk->trace_cd_star < 0.0) return 1;
    return 0;
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Independent locator: scan the smallest singular value of D M(lambda+i0) - C
// over the gap and polish every local minimum by golden-section search.

template <class F>
double golden_section_minimize(F&& f, double lo, double hi, double tol = 1e-15) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (b - a) > tol * (1.0 + std::abs(a) + std::abs(b)); ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc < fd ? c : d;
}

inline constexpr double kOracleDipTol = 1e-10;

// Locations are returned sorted; multiplicity is not resolved by the scan.
inline std::vector<double> eigenvalue_oracle_scan(const BoundaryPair& pair, int grid_points = 4000) {
  if (grid_points < 1000) throw Error(ErrorKind::InvalidArgument, "oracle scan needs >= 1000 grid points");
  const double m = pair.mass();
  // u = ln t, lambda = -m tanh(u); |u| <= 14.5 reaches within ~1e-12 m of the thresholds.
  const double u_max = 14.5;
  auto dip = [&](double u) {
    const double t = std::exp(u);
    return singular_values(gap_matrix(pair, t)).min / gap_matrix_scale(pair, t);
  };

  std::vector<double> u(static_cast<std::size_t>(grid_points));
  std::vector<double> f(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) {
    u[i] = -u_max + 2.0 * u_max * static_cast<double>(i) / static_cast<double>(u.size() - 1);
    f[i] = dip(u[i]);
  }

  std::vector<double> found;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const bool left_ok = i == 0 || f[i] <= f[i - 1];
    const bool right_ok = i + 1 == u.size() || f[i] < f[i + 1];
    if (!left_ok || !right_ok) continue;
    const double lo = u[i == 0 ? 0 : i - 1];
    const double hi = u[i + 1 == u.size() ? i : i + 1];
    const double best = golden_section_minimize(dip, lo, hi);
    if (dip(best) >= kOracleDipTol) continue;
    const double lambda = -m * std::tanh(best);
    if (!(std::abs(lambda) < m * (1.0 - kThresholdMargin))) continue;
    found.push_back(lambda);
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end(), [](double x, double y) { return std::abs(x - y) < 1e-9; }),
              found.end());
  return found;
}

// ---------------------------------------------------------------------------
// Eigenfunctions: gamma(lambda) applied to a kernel vector of D M - C.

class EigenFunction {
 public:
  EigenFunction(const BoundaryPair& pair, const Eigenvalue& eig, int kernel_index)
      : m_(pair.mass()), lambda_(eig.lambda) {
    if (kernel_index < 0 || kernel_index >= eig.multiplicity ||
        static_cast<std::size_t>(kernel_index) >= eig.kernel_basis.size()) {
      throw Error(ErrorKind::InvalidArgument, "kernel index out of range");
    }
    xi_ = eig.kernel_basis[static_cast<std::size_t>(kernel_index)];
    const double kappa = decay_rate();
    // |f|^2 on each half-line; the tail beyond 40/kappa is below e^{-80}.
    const double cutoff = 40.0 / kappa;
    auto density = [this](double x) {
      const Vec2C v = raw(x);
      return std::norm(v[0]) + std::norm(v[1]);
    };
    using Quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double right = Quad::integrate(density, 0.0, cutoff, 15, 1e-14);
    const double left = Quad::integrate(density, -cutoff, 0.0, 15, 1e-14);
    scale_ = 1.0 / std::sqrt(left + right);
  }

  double lambda() const { return lambda_; }
  double decay_rate() const { return std::sqrt(m_ * m_ - lambda_ * lambda_); }

  Vec2C operator()(double x) const { return scale_ * raw(x); }

 private:
  Vec2C raw(double x) const {
    const GammaVectors h = gamma_vectors(EnergyPoint{lambda_, Side::PlusI0}, m_, x);
    return xi_[0] * h.h1 + xi_[1] * h.h2;
  }

  double m_;
  double lambda_;
  Vec2C xi_{};
  double scale_ = 1.0;
};

inline Vec2C eigenfunction(const BoundaryPair& pair, const Eigenvalue& eig, int kernel_index, double x) {
  return EigenFunction(pair, eig, kernel_index)(x);
}

}  // namespace dirac
