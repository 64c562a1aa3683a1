#include "plwe/geometry.h"

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "plwe/error.h"
#include "plwe/irreducibility.h"
#include "plwe/paramgen.h"

using namespace plwe;

namespace {

double residual_scale(const IntPolynomial& f, std::complex<double> z) {
  double s = 0, r = 1;
  for (const auto& c : f.coefficients()) {
    s += std::abs(c.get_d()) * r;
    r *= std::abs(z);
  }
  return s;
}

std::complex<double> eval(const IntPolynomial& f, std::complex<double> z) {
  std::complex<double> acc = 0;
  for (std::size_t i = f.coefficients().size(); i-- > 0;) acc = acc * z + f.coefficients()[i].get_d();
  return acc;
}

IntPolynomial random_squarefree(std::mt19937_64& rng, int degree) {
  for (;;) {
    const IntPolynomial f = oracle::random_monic(rng, degree, 5);
    if (discriminant(f) != 0) return f;
  }
}

}  // namespace

TEST(ComplexRoots, KnownCases) {
  RootSet rs = complex_roots(IntPolynomial::parse("x^2-2"));
  EXPECT_EQ(rs.s1, 2u);
  EXPECT_EQ(rs.s2, 0u);
  EXPECT_NEAR(rs.roots[0].real(), std::sqrt(2.0), 1e-14);
  EXPECT_NEAR(rs.roots[1].real(), -std::sqrt(2.0), 1e-14);

  rs = complex_roots(IntPolynomial::parse("x^2+1"));
  EXPECT_EQ(rs.s1, 0u);
  EXPECT_EQ(rs.s2, 1u);
  EXPECT_NEAR(std::abs(rs.roots[0] - std::complex<double>(0, 1)), 0, 1e-14);
  EXPECT_NEAR(std::abs(rs.roots[1] - std::complex<double>(0, -1)), 0, 1e-14);

  const IntPolynomial f = IntPolynomial::parse("x^3-x+1");
  rs = complex_roots(f);
  EXPECT_EQ(rs.s1, 1u);
  EXPECT_EQ(rs.s2, 1u);
  EXPECT_NEAR(rs.roots[0].real(), -1.324717957244746, 1e-12);
  for (auto z : rs.roots) EXPECT_LE(std::abs(eval(f, z)), 1e-10);
}

TEST(ComplexRoots, Errors) {
  EXPECT_THROW(complex_roots(IntPolynomial::parse("x^2+2x+1")), PreconditionError);
  EXPECT_THROW(complex_roots(IntPolynomial::parse("5")), PreconditionError);
  RootOptions small;
  small.max_degree = 4;
  EXPECT_THROW(complex_roots(IntPolynomial::parse("x^5-2"), small), PreconditionError);
  small.allow_high_degree = true;
  EXPECT_EQ(complex_roots(IntPolynomial::parse("x^5-2"), small).roots.size(), 5u);
}

TEST(ComplexRoots, InvariantsOnRandomPolynomials) {
  std::mt19937_64 rng(20);
  for (int i = 0; i < 200; ++i) {
    const IntPolynomial f = random_squarefree(rng, 1 + static_cast<int>(rng() % 12));
    const RootSet rs = complex_roots(f);
    ASSERT_EQ(rs.s1 + 2 * rs.s2, static_cast<std::size_t>(f.degree()));
    for (std::size_t k = 0; k < rs.s2; ++k) {
      EXPECT_EQ(rs.roots[rs.s1 + rs.s2 + k], std::conj(rs.roots[rs.s1 + k]));
      EXPECT_GT(rs.roots[rs.s1 + k].imag(), 0);
    }
    for (auto z : rs.roots) EXPECT_LE(std::abs(eval(f, z)), 1e-8 * residual_scale(f, z));
  }
}

TEST(EmbeddingMatrix, KnownCases) {
  Matrix m = embedding_matrix(complex_roots(IntPolynomial::parse("x^2-2")));
  EXPECT_DOUBLE_EQ(m(0, 0), 1);
  EXPECT_DOUBLE_EQ(m(1, 0), 1);
  EXPECT_NEAR(m(0, 1), std::sqrt(2.0), 1e-15);
  EXPECT_NEAR(m(1, 1), -std::sqrt(2.0), 1e-15);

  m = embedding_matrix(complex_roots(IntPolynomial::parse("x^2+1")));
  EXPECT_NEAR(m(0, 0), 1, 1e-15);
  EXPECT_NEAR(m(1, 0), 0, 1e-15);
  EXPECT_NEAR(m(0, 1), 0, 1e-15);
  EXPECT_NEAR(m(1, 1), 1, 1e-15);

  const RootSet rs = complex_roots(IntPolynomial::parse("x^5-x+1"));
  m = embedding_matrix(rs);
  for (std::size_t j = 0; j < rs.s1 + rs.s2; ++j) EXPECT_EQ(m(j, 0), 1.0);
  for (std::size_t j = rs.s1 + rs.s2; j < 5; ++j) EXPECT_EQ(m(j, 0), 0.0);
}

TEST(SpectralDistortion, PowerOfTwoCyclotomicsAreUndistorted) {
  for (const char* s : {"x^4+1", "x^8+1", "x^16+1", "x^32+1"}) {
    const EmbeddingReport rep = spectral_distortion(IntPolynomial::parse(s));
    EXPECT_NEAR(rep.distortion, 1.0, 1e-9) << s;
    EXPECT_NEAR(rep.forward_distortion, 1.0, 1e-9) << s;
  }
}

TEST(SpectralDistortion, ReportFieldsAreConsistent) {
  const EmbeddingReport rep = spectral_distortion(IntPolynomial::parse("x^3-x+1"));
  EXPECT_NEAR(rep.abs_det, std::exp(rep.log_abs_det), 1e-12 * rep.abs_det);
  EXPECT_NEAR(rep.forward_distortion, rep.spectral_norm / std::cbrt(rep.abs_det), 1e-12);
  EXPECT_NEAR(rep.distortion, rep.inverse_spectral_norm * std::cbrt(rep.abs_det), 1e-12);
  EXPECT_NEAR(rep.condition_number, rep.spectral_norm * rep.inverse_spectral_norm, 1e-9);
  EXPECT_NEAR(rep.mahler, 1.324717957244746, 1e-12);
}

TEST(SpectralNorm, AgreesWithJacobiSvd) {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 100; ++i) {
    const IntPolynomial f = random_squarefree(rng, 2 + static_cast<int>(rng() % 7));
    const Matrix m = embedding_matrix(complex_roots(f));
    const auto sv = oracle::jacobi_singular_values(m);
    EXPECT_NEAR(spectral_norm(m) / sv.front(), 1.0, 1e-9) << f.to_string();
    LuDecomposition lu(m);
    EXPECT_NEAR(smallest_singular_value(m, lu) / sv.back(), 1.0, 1e-8) << f.to_string();
  }
}

TEST(SpectralNorm, JacobiOracleOnKnownMatrix) {
  Matrix m(2, 2);
  m(0, 0) = 3;
  m(0, 1) = 0;
  m(1, 0) = 4;
  m(1, 1) = 5;
  const auto sv = oracle::jacobi_singular_values(m);
  EXPECT_NEAR(sv[0], 3 * std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(sv[1], std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(spectral_norm(m), 3 * std::sqrt(5.0), 1e-12);
}

TEST(SpectralDistortion, DeterminantMatchesDiscriminant) {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 200; ++i) {
    const IntPolynomial f = random_squarefree(rng, 2 + static_cast<int>(rng() % 11));
    const EmbeddingReport rep = spectral_distortion(f);
    const double lhs = 2 * rep.log_abs_det + static_cast<double>(rep.s2) * std::log(4.0);
    const double rhs = std::log(std::abs(discriminant(f).get_d()));
    EXPECT_NEAR(lhs, rhs, 1e-6) << f.to_string();
  }
}

TEST(SpectralDistortion, ScaleInvariance) {
  const Matrix m = embedding_matrix(complex_roots(IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")));
  const double base = normalized_spectral_norm(m);
  for (double c : {1e-3, 0.5, 7.0, 1e4}) {
    EXPECT_NEAR(normalized_spectral_norm(m.scaled(c)) / base, 1.0, 1e-10) << c;
  }
}

TEST(Mahler, Examples) {
  EXPECT_NEAR(mahler_measure(IntPolynomial::parse("x^2-x-1")), (1 + std::sqrt(5.0)) / 2, 1e-12);
  EXPECT_NEAR(mahler_measure(IntPolynomial::parse("x^3-x+1")), 1.324717957244746, 1e-12);
  EXPECT_NEAR(mahler_measure(IntPolynomial::parse("x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1")),
              1.17628081825991750, 1e-12);
  EXPECT_NEAR(mahler_measure(IntPolynomial::parse("3x^2-1")), 3.0, 1e-12);
}

TEST(Mahler, Multiplicative) {
  std::mt19937_64 rng(23);
  int checked = 0;
  while (checked < 100) {
    const IntPolynomial f = random_squarefree(rng, 1 + static_cast<int>(rng() % 6));
    const IntPolynomial g = random_squarefree(rng, 1 + static_cast<int>(rng() % 6));
    if (resultant(f, g) == 0) continue;
    const IntPolynomial fg = f * g;
    EXPECT_NEAR(mahler_measure(fg) / (mahler_measure(f) * mahler_measure(g)), 1.0, 1e-9)
        << f.to_string() << " | " << g.to_string();
    ++checked;
  }
}

TEST(Mahler, CyclotomicsHaveMeasureOneAndStableDistortion) {
  for (unsigned m = 3; m <= 32; ++m) {
    const IntPolynomial phi = cyclotomic_poly(m);
    EXPECT_NEAR(mahler_measure(phi), 1.0, 1e-9) << m;
    const double d1 = spectral_distortion(phi).distortion;
    const double d2 = spectral_distortion(phi).distortion;
    EXPECT_NEAR(d1, d2, 1e-10 * d1) << m;
  }
}

TEST(ChangeOfBasis, GaussianIntegersAreUndistorted) {
  const ChangeOfBasis cb = change_of_basis_monogenic(IntPolynomial::parse("x^2+1"));
  EXPECT_NEAR(cb.normalized_spectral_norm, 1.0, 1e-9);
}

TEST(ChangeOfBasis, SqrtTwoByHand) {
  // Roots +-r, r = sqrt 2; gamma = 1/(2 alpha) gives D = diag(1/(2r), -1/(2r)).
  // M^{-1} = [[1/2, 1/2], [1/(2r), -1/(2r)]], so
  // N = [[1/(4r), 1/(4r)], [-1/8, 1/8]]: orthogonal rows of norms 1/4 and
  // r/8, so |det N| = 1/(16r) and ||N|| / |det N|^{1/2} = 2^{1/4}.
  const ChangeOfBasis cb = change_of_basis_monogenic(IntPolynomial::parse("x^2-2"));
  const double r = std::sqrt(2.0);
  EXPECT_NEAR(cb.N(0, 0), 1 / (4 * r), 1e-15);
  EXPECT_NEAR(cb.N(0, 1), 1 / (4 * r), 1e-15);
  EXPECT_NEAR(cb.N(1, 0), -0.125, 1e-15);
  EXPECT_NEAR(cb.N(1, 1), 0.125, 1e-15);
  EXPECT_NEAR(std::exp(cb.log_abs_det), 1 / (16 * r), 1e-15);
  EXPECT_NEAR(cb.normalized_spectral_norm, std::pow(2.0, 0.25), 1e-12);
}

TEST(ChangeOfBasis, DeterminantIsMultiplicative) {
  std::mt19937_64 rng(24);
  for (int i = 0; i < 50; ++i) {
    const IntPolynomial f = random_squarefree(rng, 2 + static_cast<int>(rng() % 7));
    const ChangeOfBasis cb = change_of_basis_monogenic(f);
    const LuDecomposition n_lu(cb.N), d_lu(cb.D_gamma);
    const LuDecomposition m_lu(embedding_matrix(complex_roots(f)));
    EXPECT_NEAR(n_lu.log_abs_det(), d_lu.log_abs_det() - m_lu.log_abs_det(), 1e-9);
    EXPECT_NEAR(cb.log_abs_det, n_lu.log_abs_det(), 1e-9);
  }
}

TEST(SpectralNorm, SurvivesHugeEntries) {
  Matrix a(2, 2);
  a(0, 0) = 1e200;
  a(1, 1) = 1.0;
  a(0, 1) = 3e199;
  EXPECT_NEAR(spectral_norm(a) / 1e200, std::hypot(1.0, 0.3), 1e-9);
}

TEST(SpectralDistortion, RefusesHopelesslyConditionedEmbeddings) {
  IntPolynomial f{1};
  for (long k = 1; k <= 14; ++k) f = f * IntPolynomial::linear(k * 1000003);
  f = f + IntPolynomial{1};
  EXPECT_THROW(spectral_distortion(f), NumericError);
}
