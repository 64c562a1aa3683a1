#include "plwe/roots.h"

#include <algorithm>
#include <random>

#include "plwe/error.h"
#include "plwe/ring.h"

namespace plwe {

namespace {

void split_linear_product(const zq::Poly& g, std::uint64_t q, std::mt19937_64& rng,
                          std::vector<Residue>& out) {
  const int d = zq::degree(g);
  if (d <= 0) return;
  if (d == 1) {
    // monic x + c
    out.push_back(neg_mod(g[0], q));
    return;
  }
  std::uniform_int_distribution<std::uint64_t> pick(0, q - 1);
  for (;;) {
    const zq::Poly shifted{pick(rng), 1};
    zq::Poly w = zq::powmod(shifted, (q - 1) / 2, g, q);
    w = zq::sub(w, zq::Poly{1}, q);
    zq::Poly h = zq::gcd(w, g, q);
    const int dh = zq::degree(h);
    if (dh > 0 && dh < d) {
      zq::Poly quot, r;
      zq::divmod(g, h, q, quot, r);
      split_linear_product(h, q, rng, out);
      split_linear_product(zq::make_monic(quot, q), q, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Residue> find_roots_mod_q(const zq::Poly& f_in, std::uint64_t q,
                                      std::uint64_t seed) {
  zq::Poly f = f_in;
  zq::trim(f);
  if (f.empty()) throw PreconditionError("find_roots_mod_q: f vanishes identically modulo q");
  if (zq::degree(f) == 0) return {};
  f = zq::make_monic(std::move(f), q);

  const zq::Poly x{0, 1};
  zq::Poly xq = zq::powmod(x, q, f, q);
  zq::Poly g = zq::gcd(zq::sub(xq, x, q), f, q);

  std::vector<Residue> roots;
  std::mt19937_64 rng(seed);
  split_linear_product(g, q, rng, roots);
  std::sort(roots.begin(), roots.end());
  return roots;
}

std::vector<Residue> find_roots_mod_q(const IntPolynomial& f, const PrimeModulus& q,
                                      std::uint64_t seed) {
  if (f.degree() < 1) throw PreconditionError("find_roots_mod_q: deg f must be >= 1");
  return find_roots_mod_q(reduce_mod(f, q.value()), q.value(), seed);
}

}  // namespace plwe
