#include "plwe/modarith.h"

#include <algorithm>
#include <numeric>
#include <string>

#include "plwe/error.h"

namespace plwe {

namespace {

bool miller_rabin_witness(std::uint64_t n, std::uint64_t a, std::uint64_t d,
                          unsigned s) {
  std::uint64_t x = pow_mod(a % n, d, n);
  if (x == 1 || x == n - 1) return false;
  for (unsigned i = 1; i < s; ++i) {
    x = mul_mod(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

std::uint64_t pollard_brent(std::uint64_t n, std::uint64_t budget) {
  if (n % 2 == 0) return 2;
  // Deterministic parameter sweep; c changes on failure.
  for (std::uint64_t c = 1; c < 64; ++c) {
    std::uint64_t y = 2, g = 1, r = 1, q = 1, x = 0, ys = 0;
    const std::uint64_t m = 128;
    std::uint64_t steps = 0;
    auto f = [&](std::uint64_t v) { return add_mod(mul_mod(v, v, n), c, n); };
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      std::uint64_t k = 0;
      do {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
        k += m;
        steps += m;
      } while (k < r && g == 1);
      r *= 2;
      if (steps > budget) return 0;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

bool split_into(std::uint64_t n, std::uint64_t budget,
                std::vector<std::uint64_t>& primes) {
  if (n == 1) return true;
  if (is_prime_u64(n)) {
    primes.push_back(n);
    return true;
  }
  std::uint64_t d = pollard_brent(n, budget);
  if (d == 0) return false;
  return split_into(d, budget, primes) && split_into(n / d, budget, primes);
}

}  // namespace

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::uint64_t kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (std::uint64_t p : kSmall) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve prime bases are deterministic below 3.18e23.
  for (std::uint64_t a : kSmall) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

PrimeModulus::PrimeModulus(std::uint64_t q) : q_(q) {
  if (q <= 2 || q >= (std::uint64_t{1} << 63)) {
    throw DomainError("modulus must satisfy 2 < q < 2^63, got " + std::to_string(q));
  }
  if (!is_prime_u64(q)) {
    throw DomainError("modulus " + std::to_string(q) + " is not prime");
  }
}

Residue pow_mod(Residue base, std::uint64_t e, std::uint64_t q) {
  Residue result = 1 % q;
  base %= q;
  while (e > 0) {
    if (e & 1) result = mul_mod(result, base, q);
    base = mul_mod(base, base, q);
    e >>= 1;
  }
  return result;
}

Residue inv_mod(Residue x, std::uint64_t q) {
  if (x % q == 0) throw DomainError("inverse of zero modulo " + std::to_string(q));
  // Extended Euclid on signed 128-bit to avoid overflow.
  __int128 t = 0, new_t = 1;
  __int128 r = q, new_r = x % q;
  while (new_r != 0) {
    __int128 quotient = r / new_r;
    __int128 tmp = t - quotient * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quotient * new_r;
    r = new_r;
    new_r = tmp;
  }
  if (t < 0) t += q;
  return static_cast<Residue>(t);
}

Residue mod_op(Residue x, Residue y, const PrimeModulus& q, ModOpKind kind) {
  const std::uint64_t m = q.value();
  if (x >= m || (kind != ModOpKind::kPow && kind != ModOpKind::kInv && y >= m)) {
    throw DomainError("operand not reduced modulo q");
  }
  switch (kind) {
    case ModOpKind::kAdd: return add_mod(x, y, m);
    case ModOpKind::kSub: return sub_mod(x, y, m);
    case ModOpKind::kMul: return mul_mod(x, y, m);
    case ModOpKind::kPow: return pow_mod(x, y, m);
    case ModOpKind::kInv: return inv_mod(x, m);
  }
  return 0;
}

std::optional<std::vector<PrimePower>> factor_u64(std::uint64_t m,
                                                  std::uint64_t rho_budget) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t p = 2; p <= 1000000 && p * p <= m; p += (p == 2 ? 1 : 2)) {
    while (m % p == 0) {
      primes.push_back(p);
      m /= p;
    }
  }
  if (m > 1 && !split_into(m, rho_budget, primes)) return std::nullopt;
  std::sort(primes.begin(), primes.end());
  std::vector<PrimePower> out;
  for (std::uint64_t p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

std::uint64_t element_order(Residue alpha, const PrimeModulus& q,
                            const std::vector<PrimePower>& q_minus_1) {
  if (alpha % q.value() == 0) throw DomainError("element_order: alpha = 0 has no order");
  std::uint64_t order = q.value() - 1;
  for (const auto& [p, e] : q_minus_1) {
    for (unsigned i = 0; i < e; ++i) {
      if (pow_mod(alpha, order / p, q.value()) != 1) break;
      order /= p;
    }
  }
  return order;
}

std::uint64_t element_order(Residue alpha, const PrimeModulus& q) {
  if (alpha % q.value() == 0) throw DomainError("element_order: alpha = 0 has no order");
  auto factors = factor_u64(q.value() - 1);
  if (!factors) {
    throw SearchExhausted("element_order: could not factor q - 1 within the rho budget");
  }
  return element_order(alpha, q, *factors);
}

std::uint64_t euler_phi(std::uint64_t r) {
  std::uint64_t result = r;
  for (std::uint64_t p = 2; p * p <= r; ++p) {
    if (r % p == 0) {
      while (r % p == 0) r /= p;
      result -= result / p;
    }
  }
  if (r > 1) result -= result / r;
  return result;
}

}  // namespace plwe
