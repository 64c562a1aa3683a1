#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "plwe/int_poly.h"

namespace plwe {

enum class Irreducibility { kIrreducible, kComposite, kUnknown };

const char* to_string(Irreducibility v);

struct IrreducibilityOptions {
  // Small primes p (in increasing order) at which f mod p is factored by
  // distinct degrees.
  std::size_t max_primes = 50;
};

// Sufficient test for irreducibility over Z of a monic f:
//  - irreducible if a small shift f(x + t) is Eisenstein at a prime, or if the
//    possible factor degrees allowed by the distinct-degree factorizations of
//    f mod p (over several p) collapse to {0, deg f};
//  - composite if f has an integer root (rational root test);
//  - unknown otherwise.
Irreducibility irreducibility_check(const IntPolynomial& f,
                                    const IrreducibilityOptions& options = {});

// Integer root or zero constant term.
bool has_obvious_factor(const IntPolynomial& f);

// f(x + t) Eisenstein at some prime for t in {-2..2} or t = -a_{n-1}/n.
bool is_shifted_eisenstein(const IntPolynomial& f);

// Degrees of the irreducible factors of f mod p, ascending, or nullopt if f
// mod p is not squarefree or loses degree. p must be a prime below 2^16.
std::optional<std::vector<unsigned>> factor_degrees_mod_p(const IntPolynomial& f,
                                                          std::uint32_t p);

}  // namespace plwe
