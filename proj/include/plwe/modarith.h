#pragma once

// Word-size modular arithmetic for prime moduli below 2^63.

#include <cstdint>
#include <optional>
#include <vector>

namespace plwe {

using Residue = std::uint64_t;

// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime_u64(std::uint64_t m);

// A prime q with 2 < q < 2^63. Construction verifies primality.
class PrimeModulus {
 public:
  explicit PrimeModulus(std::uint64_t q);

  std::uint64_t value() const { return q_; }
  operator std::uint64_t() const { return q_; }

  bool operator==(const PrimeModulus&) const = default;

 private:
  std::uint64_t q_;
};

enum class ModOpKind { kAdd, kSub, kMul, kPow, kInv };

inline Residue add_mod(Residue x, Residue y, std::uint64_t q) {
  Residue s = x + y;  // q < 2^63 so no wrap
  return s >= q ? s - q : s;
}

inline Residue sub_mod(Residue x, Residue y, std::uint64_t q) {
  return x >= y ? x - y : x + q - y;
}

inline Residue mul_mod(Residue x, Residue y, std::uint64_t q) {
  return static_cast<Residue>(static_cast<unsigned __int128>(x) * y % q);
}

inline Residue neg_mod(Residue x, std::uint64_t q) { return x == 0 ? 0 : q - x; }

Residue pow_mod(Residue base, std::uint64_t exponent, std::uint64_t q);

// Throws DomainError for x == 0.
Residue inv_mod(Residue x, std::uint64_t q);

// Dispatching form; `y` is the exponent for kPow and ignored for kInv.
Residue mod_op(Residue x, Residue y, const PrimeModulus& q, ModOpKind kind);

// Representative of smallest absolute value: x if x <= (q-1)/2, else x - q.
inline std::int64_t minimal_residue(Residue x, std::uint64_t q) {
  return x <= (q - 1) / 2 ? static_cast<std::int64_t>(x)
                          : static_cast<std::int64_t>(x) - static_cast<std::int64_t>(q);
}

// Inverse of minimal_residue for arbitrary signed integers.
inline Residue reduce_signed(std::int64_t v, std::uint64_t q) {
  std::int64_t r = v % static_cast<std::int64_t>(q);
  return static_cast<Residue>(r < 0 ? r + static_cast<std::int64_t>(q) : r);
}

struct PrimePower {
  std::uint64_t prime;
  unsigned exponent;
};

// Trial division up to 10^6 followed by Pollard-Brent rho. Returns nullopt if
// the rho iteration budget runs out on some cofactor.
std::optional<std::vector<PrimePower>> factor_u64(
    std::uint64_t m, std::uint64_t rho_budget = 1u << 22);

// Exact multiplicative order of alpha modulo q. Throws DomainError for
// alpha == 0 and SearchExhausted if q - 1 cannot be factored within budget.
std::uint64_t element_order(Residue alpha, const PrimeModulus& q);

// Same, reusing a known factorization of q - 1.
std::uint64_t element_order(Residue alpha, const PrimeModulus& q,
                            const std::vector<PrimePower>& q_minus_1);

// Euler's totient for small arguments.
std::uint64_t euler_phi(std::uint64_t r);

}  // namespace plwe
