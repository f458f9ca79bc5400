#pragma once

// Admissible boundary pairs (C, D): the self-adjoint extension H^{CD} is the
// restriction of the adjoint to functions with C Gamma_1 f = D Gamma_2 f.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <string_view>
#include <variant>

#include "dirac/algebra.hpp"
#include "dirac/random.hpp"

namespace dirac {

inline constexpr double kClassTol = 1e-8;
inline constexpr double kAdmissibleRelTol = 1e-10;

struct AdmissibilityReport {
  bool admissible = false;
  double hermiticity_defect = 0.0;  // of C D^*
  double det_ccdd = 0.0;            // |det(C C^* + D D^*)|
};

inline AdmissibilityReport admissibility(const Mat2C& c, const Mat2C& d) {
  const Mat2C cd = c * d.adjoint();
  const Mat2C gram = c * c.adjoint() + d * d.adjoint();
  return {false, hermiticity_defect(cd), std::abs(gram.det())};
}

// CD^* hermitian within tol and det(CC^* + DD^*) away from zero.
inline bool check_admissible(const Mat2C& c, const Mat2C& d, double tol) {
  const auto r = admissibility(c, d);
  return r.hermiticity_defect <= tol && r.det_ccdd > tol;
}

// Admissibility measured relative to the pair's own scale; used by make().
inline bool admissible_relative(const Mat2C& c, const Mat2C& d) {
  if (!c.finite() || !d.finite()) return false;
  const double scale = std::max(c.max_abs(), d.max_abs());
  const auto r = admissibility(c, d);
  return scale > 0.0 && r.hermiticity_defect <= kAdmissibleRelTol * scale * scale &&
         r.det_ccdd > kAdmissibleRelTol * std::pow(scale, 4);
}

class BoundaryPair {
 public:
  // Throws InvalidArgument unless (c, d) is admissible relative to its own
  // scale and mass > 0.
  static BoundaryPair make(const Mat2C& c, const Mat2C& d, double mass = 1.0) {
    if (!(mass > 0.0) || !std::isfinite(mass)) {
      throw Error(ErrorKind::InvalidArgument, "mass must be positive");
    }
    if (!admissible_relative(c, d)) throw Error(ErrorKind::InvalidArgument, "pair (C, D) is not admissible");
    return BoundaryPair(c, d, mass);
  }

  const Mat2C& C() const { return c_; }
  const Mat2C& D() const { return d_; }
  double mass() const { return m_; }

  // Largest entry of [C D]; the natural unit for tolerances on this pair.
  double scale() const { return std::max(c_.max_abs(), d_.max_abs()); }

  friend bool operator==(const BoundaryPair&, const BoundaryPair&) = default;

 private:
  BoundaryPair(const Mat2C& c, const Mat2C& d, double m) : c_(c), d_(d), m_(m) {}

  Mat2C c_;
  Mat2C d_;
  double m_;
};

// C = (1 - U)/2, D = (i/2)(1 + U). Then CD^* = (-i/4)(U - U^*) and CC^* + DD^* = 1.
inline BoundaryPair from_unitary(const Mat2C& u, double mass = 1.0) {
  if (!is_unitary(u, 1e-10)) throw Error(ErrorKind::NotUnitary, "from_unitary needs a unitary matrix");
  const Mat2C one = Mat2C::identity();
  return BoundaryPair::make(0.5 * (one - u), (0.5 * kI) * (one + u), mass);
}

inline BoundaryPair random_admissible(std::uint64_t seed, double mass = 1.0, std::uint64_t index = 0) {
  return from_unitary(haar_unitary(seed, index), mass);
}

// ---------------------------------------------------------------------------
// Classification by the rank of D.

struct InvertibleD {
  Mat2C lambda_matrix;  // D^{-1} C, hermitian
  double l11 = 0.0;
  Complex l12;
  double l22 = 0.0;
};

struct RankOneD {
  Vec2C p;      // unit vector spanning ker D
  Vec2C q;      // unit vector spanning (ker D)^perp
  double ell = 0.0;  // (D q)^{-1} C q
  double trace_cd_star = 0.0;
};

struct ZeroD {};

using PairClass = std::variant<InvertibleD, RankOneD, ZeroD>;

inline std::string_view class_name(const PairClass& pc) {
  struct {
    std::string_view operator()(const InvertibleD&) const { return "InvertibleD"; }
    std::string_view operator()(const RankOneD&) const { return "RankOneD"; }
    std::string_view operator()(const ZeroD&) const { return "ZeroD"; }
  } v;
  return std::visit(v, pc);
}

inline PairClass classify(const BoundaryPair& pair, double tol = kClassTol) {
  const Mat2C& c = pair.C();
  const Mat2C& d = pair.D();
  // Unit for D: sqrt of the largest eigenvalue of CC^* + DD^*.
  const double unit = singular_values(c * c.adjoint() + d * d.adjoint()).max;
  const double unit_sqrt = std::sqrt(unit);
  const auto sv = singular_values(d);

  if (sv.max < tol * unit_sqrt) return ZeroD{};

  if (sv.min > tol * unit_sqrt) {
    Mat2C lam = inverse2(d) * c;
    const double lam_scale = std::max(1.0, lam.max_abs());
    if (!is_hermitian(lam, 1e-10 * lam_scale)) {
      throw Error(ErrorKind::InvalidArgument, "D^{-1} C is not hermitian; pair is not admissible");
    }
    lam = 0.5 * (lam + lam.adjoint());
    return InvertibleD{lam, lam.a11.real(), lam.a12, lam.a22.real()};
  }

  if (sv.min > kArithmeticTol * unit_sqrt) {
    throw Error(ErrorKind::ClassificationAmbiguous, "D is neither clearly invertible nor clearly rank one");
  }

  const Vec2C p = null_vector(d);
  const Vec2C q = orthogonal_complement(p);
  const Vec2C dq = d * q;
  const Vec2C cq = c * q;
  const double ell = inner(dq, cq).real() / (std::norm(dq[0]) + std::norm(dq[1]));
  const double tr = (c * d.adjoint()).trace().real();
  return RankOneD{p, q, ell, tr};
}

// ---------------------------------------------------------------------------
// Equivalence (C, D) ~ (KC, KD): compare orthogonal projectors onto the row
// spaces of the 2x4 blocks [C D].

using Mat4C = std::array<std::array<Complex, 4>, 4>;

inline Mat4C row_space_projector(const BoundaryPair& pair) {
  const Mat2C& c = pair.C();
  const Mat2C& d = pair.D();
  const std::array<std::array<Complex, 4>, 2> x{{{c.a11, c.a12, d.a11, d.a12},
                                                 {c.a21, c.a22, d.a21, d.a22}}};
  const Mat2C g = inverse2(c * c.adjoint() + d * d.adjoint());
  const std::array<std::array<Complex, 2>, 2> gm{{{g.a11, g.a12}, {g.a21, g.a22}}};
  Mat4C p{};
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      Complex acc = 0.0;
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) acc += std::conj(x[i][a]) * gm[i][j] * x[j][b];
      }
      p[a][b] = acc;
    }
  }
  return p;
}

inline bool equivalent(const BoundaryPair& a, const BoundaryPair& b, double tol = 1e-10) {
  const Mat4C pa = row_space_projector(a);
  const Mat4C pb = row_space_projector(b);
  double diff = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) diff = std::max(diff, std::abs(pa[i][j] - pb[i][j]));
  }
  return diff <= tol;
}

}  // namespace dirac
