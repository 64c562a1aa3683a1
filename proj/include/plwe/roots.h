#pragma once

#include <cstdint>
#include <vector>

#include "plwe/int_poly.h"
#include "plwe/modarith.h"
#include "plwe/zq_poly.h"

namespace plwe {

// All distinct roots of f modulo q in increasing order. Computes
// gcd(x^q - x, f) and splits it by random (x + d)^((q-1)/2) - 1 gcds; the
// seed only steers the splitting, never the result.
std::vector<Residue> find_roots_mod_q(const IntPolynomial& f, const PrimeModulus& q,
                                      std::uint64_t seed = 0x5eed);
std::vector<Residue> find_roots_mod_q(const zq::Poly& f, std::uint64_t q,
                                      std::uint64_t seed = 0x5eed);

}  // namespace plwe
