#pragma once

// 2x2 complex matrices and Laurent polynomials in one real variable.
//
// Everything here is closed-form: inversion goes through the adjugate, the
// singular values through the hermitian square A*A, and Laurent ratios are
// evaluated after clearing negative powers so that the endpoint s = 0 is a
// coefficient ratio rather than a limit.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

#include "dirac/error.hpp"

namespace dirac {

using Complex = std::complex<double>;
using Vec2C = std::array<Complex, 2>;

inline constexpr Complex kI{0.0, 1.0};
inline constexpr double kArithmeticTol = 1e-12;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

struct Mat2C {
  Complex a11{}, a12{}, a21{}, a22{};

  static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static constexpr Mat2C zero() { return {}; }
  static constexpr Mat2C diag(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

  Complex det() const { return a11 * a22 - a12 * a21; }
  Complex trace() const { return a11 + a22; }
  Mat2C adjugate() const { return {a22, -a12, -a21, a11}; }
  Mat2C adjoint() const { return {std::conj(a11), std::conj(a21), std::conj(a12), std::conj(a22)}; }
  double max_abs() const {
    return std::max({std::abs(a11), std::abs(a12), std::abs(a21), std::abs(a22)});
  }
  bool finite() const { return is_finite(a11) && is_finite(a12) && is_finite(a21) && is_finite(a22); }

  Mat2C& operator+=(const Mat2C& o) {
    a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
    return *this;
  }
  Mat2C& operator-=(const Mat2C& o) {
    a11 -= o.a11; a12 -= o.a12; a21 -= o.a21; a22 -= o.a22;
    return *this;
  }
  Mat2C& operator*=(Complex c) {
    a11 *= c; a12 *= c; a21 *= c; a22 *= c;
    return *this;
  }

  friend bool operator==(const Mat2C&, const Mat2C&) = default;
};

inline Mat2C operator+(Mat2C a, const Mat2C& b) { return a += b; }
inline Mat2C operator-(Mat2C a, const Mat2C& b) { return a -= b; }
inline Mat2C operator-(const Mat2C& a) { return {-a.a11, -a.a12, -a.a21, -a.a22}; }
inline Mat2C operator*(Mat2C a, Complex c) { return a *= c; }
inline Mat2C operator*(Complex c, Mat2C a) { return a *= c; }
inline Mat2C operator*(const Mat2C& a, const Mat2C& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}
inline Vec2C operator*(const Mat2C& a, const Vec2C& v) {
  return {a.a11 * v[0] + a.a12 * v[1], a.a21 * v[0] + a.a22 * v[1]};
}

inline Vec2C operator+(const Vec2C& a, const Vec2C& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2C operator-(const Vec2C& a, const Vec2C& b) { return {a[0] - b[0], a[1] - b[1]}; }
inline Vec2C operator*(Complex c, const Vec2C& v) { return {c * v[0], c * v[1]}; }

inline double norm(const Vec2C& v) { return std::sqrt(std::norm(v[0]) + std::norm(v[1])); }
inline double max_abs(const Vec2C& v) { return std::max(std::abs(v[0]), std::abs(v[1])); }

// <u, v>, conjugate-linear in the first slot.
inline Complex inner(const Vec2C& u, const Vec2C& v) {
  return std::conj(u[0]) * v[0] + std::conj(u[1]) * v[1];
}

// u v^* (column times conjugated row).
inline Mat2C outer(const Vec2C& u, const Vec2C& v) {
  return {u[0] * std::conj(v[0]), u[0] * std::conj(v[1]), u[1] * std::conj(v[0]),
          u[1] * std::conj(v[1])};
}

inline double max_abs_diff(const Mat2C& a, const Mat2C& b) { return (a - b).max_abs(); }

// Adjugate / determinant inverse. The tolerance is relative to the largest
// entry squared, i.e. to the natural scale of det.
inline Mat2C inverse2(const Mat2C& m, double rel_tol = kArithmeticTol) {
  const Complex d = m.det();
  const double scale = m.max_abs();
  if (!(std::abs(d) > rel_tol * scale * scale) || scale == 0.0) {
    throw Error(ErrorKind::Singular, "2x2 matrix is numerically singular");
  }
  return m.adjugate() * (1.0 / d);
}

inline double hermiticity_defect(const Mat2C& m) { return max_abs_diff(m, m.adjoint()); }

inline bool is_hermitian(const Mat2C& m, double tol) { return hermiticity_defect(m) <= tol; }

inline double unitarity_defect(const Mat2C& m) {
  return max_abs_diff(m * m.adjoint(), Mat2C::identity());
}

inline bool is_unitary(const Mat2C& m, double tol) { return unitarity_defect(m) <= tol; }

struct SingularValues {
  double max = 0.0;
  double min = 0.0;
};

// sigma_max from the hermitian square, sigma_min as |det| / sigma_max, which
// keeps full relative accuracy for nearly singular input.
inline SingularValues singular_values(const Mat2C& m) {
  const double p = std::norm(m.a11) + std::norm(m.a12) + std::norm(m.a21) + std::norm(m.a22);
  const double d = std::abs(m.det());
  const double disc = std::sqrt(std::max(0.0, p * p - 4.0 * d * d));
  const double smax = std::sqrt(0.5 * (p + disc));
  if (smax == 0.0) return {0.0, 0.0};
  return {smax, d / smax};
}

// Unit vector v with m v ~ 0, built from the row of larger norm. Meaningful
// only when m is (nearly) rank one.
inline Vec2C null_vector(const Mat2C& m) {
  const double r1 = std::norm(m.a11) + std::norm(m.a12);
  const double r2 = std::norm(m.a21) + std::norm(m.a22);
  Vec2C v = r1 >= r2 ? Vec2C{m.a12, -m.a11} : Vec2C{m.a22, -m.a21};
  const double n = norm(v);
  if (n == 0.0) return {1.0, 0.0};
  return (1.0 / n) * v;
}

// Unit vector orthogonal to the unit vector p.
inline Vec2C orthogonal_complement(const Vec2C& p) { return {-std::conj(p[1]), std::conj(p[0])}; }

// ---------------------------------------------------------------------------
// Laurent polynomials with degrees in [-4, 4].

class LaurentPoly {
 public:
  static constexpr int kMinDegree = -4;
  static constexpr int kMaxDegree = 4;
  static constexpr std::size_t kSize = kMaxDegree - kMinDegree + 1;

  LaurentPoly() = default;

  static LaurentPoly constant(Complex c) { return monomial(0, c); }
  static LaurentPoly monomial(int degree, Complex c) {
    LaurentPoly p;
    p.at(degree) = c;
    return p;
  }

  Complex coeff(int degree) const {
    if (degree < kMinDegree || degree > kMaxDegree) return 0.0;
    return c_[index(degree)];
  }
  Complex& at(int degree) {
    if (degree < kMinDegree || degree > kMaxDegree) {
      throw Error(ErrorKind::InvalidArgument, "Laurent degree outside [-4, 4]");
    }
    return c_[index(degree)];
  }

  double max_abs() const {
    double r = 0.0;
    for (const auto& c : c_) r = std::max(r, std::abs(c));
    return r;
  }

  // Plain evaluation; callers handling s near 0 should go through
  // laurent_ratio_limit.
  Complex operator()(double s) const {
    Complex acc = 0.0;
    for (int d = kMaxDegree; d >= kMinDegree; --d) acc = acc * s + coeff(d);
    return acc * std::pow(s, kMinDegree);
  }

  // Sum_d c_d s^(d - shift), only for degrees d >= shift.
  Complex eval_shifted(double s, int shift) const {
    Complex acc = 0.0;
    for (int d = kMaxDegree; d >= shift; --d) acc = acc * s + coeff(d);
    return acc;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] += o.c_[i];
    return *this;
  }
  LaurentPoly& operator-=(const LaurentPoly& o) {
    for (std::size_t i = 0; i < kSize; ++i) c_[i] -= o.c_[i];
    return *this;
  }
  LaurentPoly& operator*=(Complex k) {
    for (auto& c : c_) c *= k;
    return *this;
  }

  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, Complex k) { return a *= k; }
  friend LaurentPoly operator*(Complex k, LaurentPoly a) { return a *= k; }

  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (int i = kMinDegree; i <= kMaxDegree; ++i) {
      if (a.coeff(i) == 0.0) continue;
      for (int j = kMinDegree; j <= kMaxDegree; ++j) {
        if (b.coeff(j) == 0.0) continue;
        r.at(i + j) += a.coeff(i) * b.coeff(j);
      }
    }
    return r;
  }

 private:
  static constexpr std::size_t index(int degree) { return static_cast<std::size_t>(degree - kMinDegree); }

  std::array<Complex, kSize> c_{};
};

struct LaurentMat2 {
  LaurentPoly a11, a12, a21, a22;

  LaurentPoly det() const { return a11 * a22 - a12 * a21; }
  LaurentMat2 adjugate() const { return {a22, LaurentPoly{} - a12, LaurentPoly{} - a21, a11}; }
};

inline LaurentMat2 operator*(const LaurentMat2& a, const LaurentMat2& b) {
  return {a.a11 * b.a11 + a.a12 * b.a21, a.a11 * b.a12 + a.a12 * b.a22,
          a.a21 * b.a11 + a.a22 * b.a21, a.a21 * b.a12 + a.a22 * b.a22};
}

inline LaurentMat2 constant_matrix(const Mat2C& m) {
  return {LaurentPoly::constant(m.a11), LaurentPoly::constant(m.a12), LaurentPoly::constant(m.a21),
          LaurentPoly::constant(m.a22)};
}

// Coefficients below this fraction of the largest one count as vanished.
inline constexpr double kLaurentVanishTol = 1e-14;

// Entrywise num/den at s in [0, 1]. Both are multiplied by s^(-k), k the
// lowest surviving degree of den, so the value at s = 0 is the ratio of the
// degree-k coefficients.
inline Mat2C laurent_ratio_limit(const LaurentMat2& num, const LaurentPoly& den, double s) {
  if (!(s >= 0.0)) throw Error(ErrorKind::InvalidArgument, "laurent_ratio_limit needs s >= 0");
  const double den_scale = den.max_abs();
  if (den_scale == 0.0) throw Error(ErrorKind::DegenerateLimit, "denominator identically zero");

  int low = LaurentPoly::kMaxDegree + 1;
  for (int d = LaurentPoly::kMinDegree; d <= LaurentPoly::kMaxDegree; ++d) {
    if (std::abs(den.coeff(d)) > kLaurentVanishTol * den_scale) {
      low = d;
      break;
    }
  }

  const std::array<const LaurentPoly*, 4> entries{&num.a11, &num.a12, &num.a21, &num.a22};
  double num_scale = 0.0;
  for (auto* e : entries) num_scale = std::max(num_scale, e->max_abs());

  if (s == 0.0) {
    // Anything of lower order in the numerator would make the ratio blow up.
    for (auto* e : entries) {
      for (int d = LaurentPoly::kMinDegree; d < low; ++d) {
        if (std::abs(e->coeff(d)) > kLaurentVanishTol * std::max(num_scale, den_scale)) {
          throw Error(ErrorKind::DegenerateLimit, "numerator dominates denominator at s = 0");
        }
      }
    }
    const Complex dl = den.coeff(low);
    return {num.a11.coeff(low) / dl, num.a12.coeff(low) / dl, num.a21.coeff(low) / dl,
            num.a22.coeff(low) / dl};
  }

  const int shift = LaurentPoly::kMinDegree;
  const Complex dv = den.eval_shifted(s, shift);
  if (dv == 0.0) throw Error(ErrorKind::DegenerateLimit, "denominator vanishes at s");
  return {num.a11.eval_shifted(s, shift) / dv, num.a12.eval_shifted(s, shift) / dv,
          num.a21.eval_shifted(s, shift) / dv, num.a22.eval_shifted(s, shift) / dv};
}

}  // namespace dirac
