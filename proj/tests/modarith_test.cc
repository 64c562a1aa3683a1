#include "plwe/modarith.h"

#include <random>

#include <gtest/gtest.h>

#include "oracles.h"
#include "plwe/error.h"

using namespace plwe;

TEST(PrimeModulus, RejectsCompositesAndSmallValues) {
  EXPECT_THROW(PrimeModulus(2), DomainError);
  EXPECT_THROW(PrimeModulus(15), DomainError);
  EXPECT_THROW(PrimeModulus(1ULL << 63), DomainError);
  EXPECT_EQ(PrimeModulus(7).value(), 7u);
  EXPECT_EQ(PrimeModulus(1125901148356951ULL).value(), 1125901148356951ULL);
}

TEST(ModOp, SmallExamples) {
  const PrimeModulus q(7);
  EXPECT_EQ(mod_op(5, 4, q, ModOpKind::kAdd), 2u);
  EXPECT_EQ(mod_op(2, 5, q, ModOpKind::kSub), 4u);
  EXPECT_EQ(mod_op(3, 5, q, ModOpKind::kMul), 1u);
  EXPECT_EQ(mod_op(3, 6, q, ModOpKind::kPow), 1u);
  EXPECT_EQ(mod_op(3, 0, q, ModOpKind::kInv), 5u);
  EXPECT_THROW(mod_op(0, 0, q, ModOpKind::kInv), DomainError);
}

TEST(ModOp, AgreesWithWideArithmeticOnRandomInputs) {
  std::mt19937_64 rng(1);
  const std::uint64_t moduli[] = {7, 65537, 1125901148356951ULL, (1ULL << 61) - 1};
  for (std::uint64_t qv : moduli) {
    const PrimeModulus q(qv);
    std::uniform_int_distribution<std::uint64_t> d(0, qv - 1);
    for (int i = 0; i < 2000; ++i) {
      const std::uint64_t x = d(rng), y = d(rng);
      const auto wx = static_cast<unsigned __int128>(x), wy = static_cast<unsigned __int128>(y);
      EXPECT_EQ(add_mod(x, y, q), static_cast<std::uint64_t>((wx + wy) % qv));
      EXPECT_EQ(sub_mod(x, y, q), static_cast<std::uint64_t>((wx + qv - wy) % qv));
      EXPECT_EQ(mul_mod(x, y, q), static_cast<std::uint64_t>(wx * wy % qv));
      if (x != 0) EXPECT_EQ(mul_mod(x, inv_mod(x, q), q), 1u);
    }
  }
}

TEST(ModOp, PowMatchesRepeatedMultiplication) {
  const std::uint64_t q = 10007;
  for (std::uint64_t a = 1; a < 50; ++a) {
    std::uint64_t acc = 1;
    for (std::uint64_t e = 0; e < 60; ++e) {
      EXPECT_EQ(pow_mod(a, e, q), acc);
      acc = acc * a % q;
    }
  }
}

TEST(MinimalResidue, RangeAndInverse) {
  for (std::uint64_t q : {3ULL, 7ULL, 8ULL, 101ULL}) {
    for (std::uint64_t x = 0; x < q; ++x) {
      const std::int64_t m = minimal_residue(x, q);
      EXPECT_LE(2 * m, static_cast<std::int64_t>(q));
      EXPECT_GE(2 * m, -static_cast<std::int64_t>(q));
      EXPECT_EQ(reduce_signed(m, q), x);
    }
  }
  EXPECT_EQ(minimal_residue(6, 7), -1);
  EXPECT_EQ(minimal_residue(3, 7), 3);
  EXPECT_EQ(reduce_signed(-15, 7), 6u);
}

TEST(Primality, DeterministicMillerRabinAgreesWithTrialDivision) {
  for (std::uint64_t m = 0; m < 20000; ++m) {
    EXPECT_EQ(is_prime_u64(m), oracle::trial_division_prime(m)) << m;
  }
  EXPECT_TRUE(is_prime_u64(1000000000000000009ULL));
  EXPECT_TRUE(is_prime_u64((1ULL << 61) - 1));
  EXPECT_FALSE(is_prime_u64(3215031751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
  EXPECT_FALSE(is_prime_u64(1ULL << 50));
}

TEST(Factor, ProductOfFactorsReconstructsInput) {
  std::mt19937_64 rng(2);
  std::uniform_int_distribution<std::uint64_t> d(2, (1ULL << 62));
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t m = d(rng);
    const auto f = factor_u64(m);
    ASSERT_TRUE(f.has_value()) << m;
    unsigned __int128 prod = 1;
    for (const auto& pp : *f) {
      EXPECT_TRUE(is_prime_u64(pp.prime));
      for (unsigned e = 0; e < pp.exponent; ++e) prod *= pp.prime;
    }
    EXPECT_EQ(static_cast<std::uint64_t>(prod), m);
  }
  const auto semiprime = factor_u64(1000003ULL * 1000033ULL);
  ASSERT_TRUE(semiprime.has_value());
  EXPECT_EQ(semiprime->size(), 2u);
}

TEST(ElementOrder, KnownCases) {
  EXPECT_EQ(element_order(2, PrimeModulus(7)), 3u);
  EXPECT_EQ(element_order(6, PrimeModulus(7)), 2u);
  EXPECT_EQ(element_order(1, PrimeModulus(7)), 1u);
  EXPECT_EQ(element_order(5, PrimeModulus(31)), 3u);
  EXPECT_EQ(element_order(33554450, PrimeModulus(1125901148356951ULL)), 3u);
  EXPECT_THROW(element_order(0, PrimeModulus(7)), DomainError);
}

TEST(ElementOrder, AgreesWithBruteForce) {
  for (std::uint64_t q : oracle::primes_up_to(400)) {
    if (q < 3) continue;
    const PrimeModulus pq(q);
    for (std::uint64_t a = 1; a < q; ++a) {
      const std::uint64_t ord = element_order(a, pq);
      EXPECT_EQ(ord, oracle::brute_order(a, q)) << a << " mod " << q;
      EXPECT_EQ((q - 1) % ord, 0u);
    }
  }
}

TEST(EulerPhi, SmallValues) {
  const std::uint64_t expected[] = {0, 1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4};
  for (std::uint64_t r = 1; r <= 12; ++r) EXPECT_EQ(euler_phi(r), expected[r]);
}
