#include "plwe/roots.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "plwe/error.h"
#include "plwe/zq_poly.h"

using namespace plwe;

TEST(ZqPoly, DivmodReconstructs) {
  std::mt19937_64 rng(6);
  const std::uint64_t q = 97;
  for (int i = 0; i < 200; ++i) {
    zq::Poly a(1 + rng() % 12), b(1 + rng() % 6);
    for (auto& x : a) x = rng() % q;
    for (auto& x : b) x = rng() % q;
    b.back() = 1 + rng() % (q - 1);
    zq::trim(a);
    zq::Poly quot, rem;
    zq::divmod(a, b, q, quot, rem);
    EXPECT_LT(zq::degree(rem), zq::degree(b));
    EXPECT_EQ(zq::add(zq::mul(quot, b, q), rem, q), a);
  }
}

TEST(ZqPoly, GcdOfProductsContainsCommonFactor) {
  const std::uint64_t q = 101;
  const zq::Poly common{3, 1};          // x + 3
  const zq::Poly a = zq::mul(common, zq::Poly{5, 0, 1}, q);
  const zq::Poly b = zq::mul(common, zq::Poly{7, 1}, q);
  EXPECT_EQ(zq::gcd(a, b, q), common);
}

TEST(FindRoots, KnownCases) {
  EXPECT_EQ(find_roots_mod_q(IntPolynomial::parse("x^2+x+1"), PrimeModulus(7)),
            (std::vector<Residue>{2, 4}));
  EXPECT_EQ(find_roots_mod_q(IntPolynomial::parse("x^2+1"), PrimeModulus(7)), std::vector<Residue>{});
  EXPECT_EQ(find_roots_mod_q(IntPolynomial::parse("x^4+1"), PrimeModulus(17)),
            (std::vector<Residue>{2, 8, 9, 15}));
  EXPECT_THROW(find_roots_mod_q(IntPolynomial::parse("7x^2+7"), PrimeModulus(7)), PreconditionError);
}

TEST(FindRoots, AgreesWithExhaustiveEvaluation) {
  std::mt19937_64 rng(7);
  for (std::uint64_t q : oracle::primes_up_to(300)) {
    if (q < 3) continue;
    for (int i = 0; i < 4; ++i) {
      const IntPolynomial f = oracle::random_monic(rng, 1 + static_cast<int>(rng() % 9), 1000);
      EXPECT_EQ(find_roots_mod_q(f, PrimeModulus(q)), oracle::brute_roots(f, q))
          << f.to_string() << " mod " << q;
    }
  }
}

TEST(FindRoots, ResultDoesNotDependOnSplittingSeed) {
  const IntPolynomial f = IntPolynomial::parse("x^6 - 21x^4 + 84x^2 - 64");  // roots +-1, +-2, +-4
  const PrimeModulus q(1125901148356951ULL);
  const auto base = find_roots_mod_q(f, q, 1);
  EXPECT_EQ(base.size(), 6u);
  for (std::uint64_t seed = 2; seed < 10; ++seed) EXPECT_EQ(find_roots_mod_q(f, q, seed), base);
}
