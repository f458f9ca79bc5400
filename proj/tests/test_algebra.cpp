#include <gtest/gtest.h>

#include <random>

#include "dirac/algebra.hpp"
#include "dirac/error.hpp"
#include "support/oracles.hpp"

using namespace dirac;

namespace {

Mat2C random_matrix(std::mt19937_64& rng, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  return {Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng)), Complex(u(rng), u(rng))};
}

}  // namespace

TEST(Inverse2, IdentityAndDiagonal) {
  EXPECT_EQ(inverse2(Mat2C::identity()), Mat2C::identity());
  const Mat2C inv = inverse2(Mat2C::diag(2.0, 4.0));
  EXPECT_NEAR(std::abs(inv.a11 - 0.5), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inv.a22 - 0.25), 0.0, 1e-15);
  EXPECT_EQ(inv.a12, Complex(0.0));
}

TEST(Inverse2, SingularThrows) {
  try {
    inverse2(Mat2C{1.0, 1.0, 1.0, 1.0});
    FAIL() << "expected Singular";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Singular);
  }
}

TEST(Inverse2, RoundTripMatchesEigen) {
  std::mt19937_64 rng(11);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const Mat2C m = random_matrix(rng);
    const auto sv = singular_values(m);
    if (sv.min < 0.1 * sv.max) continue;  // well-conditioned only
    ++checked;
    const Mat2C inv = inverse2(m);
    EXPECT_LT(max_abs_diff(m * inv, Mat2C::identity()), 1e-12);
    EXPECT_LT(max_abs_diff(inv, oracle::from_eigen(oracle::to_eigen(m).inverse())), 1e-12);
  }
  EXPECT_GT(checked, 100);
}

TEST(Adjugate, Identity) {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 200; ++i) {
    const Mat2C m = random_matrix(rng);
    EXPECT_LT(max_abs_diff(m * m.adjugate(), m.det() * Mat2C::identity()), 1e-13);
  }
}

TEST(Hermitian, Examples) {
  EXPECT_TRUE(is_hermitian(Mat2C::diag(1.0, -3.0), 1e-14));
  EXPECT_TRUE(is_hermitian(Mat2C{1.0, kI, -kI, 2.0}, 1e-14));
  EXPECT_FALSE(is_hermitian(Mat2C{0.0, 1.0, 0.0, 0.0}, 1e-14));
}

TEST(Unitary, Examples) {
  EXPECT_TRUE(is_unitary(Mat2C::identity(), 1e-15));
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_TRUE(is_unitary(Mat2C{1.0, 1.0, -kI, kI} * r, 1e-15));
  EXPECT_FALSE(is_unitary(Mat2C::diag(2.0, 1.0), 1e-10));
}

TEST(SingularValues, MatchEigenSvd) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const Mat2C m = random_matrix(rng, 3.0);
    const auto sv = singular_values(m);
    Eigen::JacobiSVD<Eigen::Matrix2cd> svd(oracle::to_eigen(m));
    EXPECT_NEAR(sv.max, svd.singularValues()(0), 1e-12 * sv.max);
    EXPECT_NEAR(sv.min, svd.singularValues()(1), 1e-12 * sv.max);
  }
}

TEST(NullVector, AnnihilatesRankOne) {
  const Mat2C m = outer(Vec2C{1.0, kI}, Vec2C{2.0, -1.0});
  const Vec2C v = null_vector(m);
  EXPECT_NEAR(norm(v), 1.0, 1e-15);
  EXPECT_LT(max_abs(m * v), 1e-15);
}

TEST(Laurent, CommonFactorCancellation) {
  const Mat2C a{1.0, 2.0, kI, -3.0};
  const LaurentMat2 num{LaurentPoly::monomial(2, a.a11), LaurentPoly::monomial(2, a.a12),
                        LaurentPoly::monomial(2, a.a21), LaurentPoly::monomial(2, a.a22)};
  EXPECT_LT(max_abs_diff(laurent_ratio_limit(num, LaurentPoly::monomial(2, 1.0), 0.0), a), 1e-15);
}

TEST(Laurent, FasterVanishingNumerator) {
  const Mat2C a{1.0, 2.0, kI, -3.0};
  const LaurentMat2 num{LaurentPoly::monomial(-1, a.a11), LaurentPoly::monomial(-1, a.a12),
                        LaurentPoly::monomial(-1, a.a21), LaurentPoly::monomial(-1, a.a22)};
  EXPECT_LT(laurent_ratio_limit(num, LaurentPoly::monomial(-2, 1.0), 0.0).max_abs(), 1e-15);
}

TEST(Laurent, ConstantRatio) {
  const Mat2C a{1.0, 2.0, kI, -3.0};
  EXPECT_LT(max_abs_diff(laurent_ratio_limit(constant_matrix(a), LaurentPoly::constant(1.0), 0.5), a), 1e-15);
}

TEST(Laurent, DegenerateLimitWhenDenominatorVanishes) {
  try {
    laurent_ratio_limit(constant_matrix(Mat2C::identity()), LaurentPoly{}, 0.0);
    FAIL() << "expected DegenerateLimit";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::DegenerateLimit);
  }
}

TEST(Laurent, AgreesWithPointwiseDivision) {
  std::mt19937_64 rng(14);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::uniform_real_distribution<double> us(0.2, 1.0);
  for (int it = 0; it < 200; ++it) {
    LaurentMat2 num;
    LaurentPoly den;
    for (int deg = -2; deg <= 2; ++deg) {
      num.a11 = num.a11 + LaurentPoly::monomial(deg, Complex(u(rng), u(rng)));
      num.a12 = num.a12 + LaurentPoly::monomial(deg, Complex(u(rng), u(rng)));
      num.a21 = num.a21 + LaurentPoly::monomial(deg, Complex(u(rng), u(rng)));
      num.a22 = num.a22 + LaurentPoly::monomial(deg, Complex(u(rng), u(rng)));
      den = den + LaurentPoly::monomial(deg, Complex(u(rng), u(rng)));
    }
    const double s = us(rng);
    const Complex d = den(s);
    if (std::abs(d) < 0.1 * den.max_abs()) continue;
    const Mat2C naive{num.a11(s) / d, num.a12(s) / d, num.a21(s) / d, num.a22(s) / d};
    EXPECT_LT(max_abs_diff(laurent_ratio_limit(num, den, s), naive), 1e-12 * std::max(1.0, naive.max_abs()));
  }
}

TEST(Laurent, ProductDegreesAdd) {
  const LaurentPoly p = LaurentPoly::monomial(1, 2.0) * LaurentPoly::monomial(-3, kI);
  EXPECT_EQ(p.coeff(-2), 2.0 * kI);
  EXPECT_EQ(p.coeff(1), Complex(0.0));
}
