#pragma once

// Dense polynomials over F_q (q < 2^63), constant term first, no trailing
// zeros. Used for root finding and for reduction in F_q[x]/(f).

#include <cstdint>
#include <vector>

#include "plwe/modarith.h"

namespace plwe::zq {

using Poly = std::vector<Residue>;

void trim(Poly& p);
inline int degree(const Poly& p) { return static_cast<int>(p.size()) - 1; }

Poly add(const Poly& a, const Poly& b, std::uint64_t q);
Poly sub(const Poly& a, const Poly& b, std::uint64_t q);
Poly mul(const Poly& a, const Poly& b, std::uint64_t q);
// Remainder of a modulo a nonzero b.
Poly rem(Poly a, const Poly& b, std::uint64_t q);
// Quotient and remainder.
void divmod(const Poly& a, const Poly& b, std::uint64_t q, Poly& quot, Poly& rem);
// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b, std::uint64_t q);
Poly make_monic(Poly a, std::uint64_t q);
Poly derivative(const Poly& a, std::uint64_t q);
// base^e mod m, m nonzero of degree >= 1.
Poly powmod(const Poly& base, std::uint64_t e, const Poly& m, std::uint64_t q);
Residue eval(const Poly& p, Residue x, std::uint64_t q);

}  // namespace plwe::zq
