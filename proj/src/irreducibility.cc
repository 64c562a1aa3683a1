#include "plwe/irreducibility.h"

#include <algorithm>
#include <numeric>

#include "plwe/error.h"
#include "plwe/modarith.h"

namespace plwe {

const char* to_string(Irreducibility v) {
  switch (v) {
    case Irreducibility::kIrreducible: return "irreducible";
    case Irreducibility::kComposite: return "composite";
    case Irreducibility::kUnknown: return "unknown";
  }
  return "unknown";
}

namespace {

// Arithmetic in F_p[x] for p < 2^16; products fit in 32 bits and dot
// products of length <= 2^30 fit in 64 bits before reduction.
using SmallPoly = std::vector<std::uint32_t>;

void trim(SmallPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

std::uint32_t inv_small(std::uint32_t a, std::uint32_t p) {
  return static_cast<std::uint32_t>(pow_mod(a, p - 2, p));
}

// a mod b, in place, b nonzero.
void rem_in_place(SmallPoly& a, const SmallPoly& b, std::uint32_t p) {
  trim(a);
  const std::size_t db = b.size() - 1;
  if (a.size() <= db) return;
  const std::uint32_t inv = inv_small(b.back(), p);
  for (std::size_t i = a.size(); i-- > db;) {
    const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{a[i]} * inv % p);
    if (c == 0) continue;
    const std::uint32_t neg = p - c;
    for (std::size_t j = 0; j <= db; ++j) {
      a[i - db + j] = static_cast<std::uint32_t>((a[i - db + j] + std::uint64_t{neg} * b[j]) % p);
    }
  }
  a.resize(db);
  trim(a);
}

SmallPoly gcd_small(SmallPoly a, SmallPoly b, std::uint32_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    rem_in_place(a, b, p);
    std::swap(a, b);
  }
  if (!a.empty()) {
    const std::uint32_t inv = inv_small(a.back(), p);
    for (auto& c : a) c = static_cast<std::uint32_t>(std::uint64_t{c} * inv % p);
  }
  return a;
}

SmallPoly div_exact_small(const SmallPoly& a, const SmallPoly& b, std::uint32_t p) {
  SmallPoly r = a;
  const std::size_t db = b.size() - 1;
  SmallPoly quot(a.size() - db, 0);
  const std::uint32_t inv = inv_small(b.back(), p);
  for (std::size_t i = r.size(); i-- > db;) {
    const std::uint32_t c = static_cast<std::uint32_t>(std::uint64_t{r[i]} * inv % p);
    quot[i - db] = c;
    if (c == 0) continue;
    const std::uint32_t neg = p - c;
    for (std::size_t j = 0; j <= db; ++j) {
      r[i - db + j] = static_cast<std::uint32_t>((r[i - db + j] + std::uint64_t{neg} * b[j]) % p);
    }
  }
  trim(quot);
  return quot;
}

SmallPoly derivative_small(const SmallPoly& a, std::uint32_t p) {
  SmallPoly d(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) {
    d[i - 1] = static_cast<std::uint32_t>(std::uint64_t{a[i]} * (i % p) % p);
  }
  trim(d);
  return d;
}

// Distinct-degree factorization of a monic squarefree f. Frobenius is applied
// as a matrix whose row j holds x^(jp) mod f.
std::vector<unsigned> ddf(const SmallPoly& f, std::uint32_t p) {
  const std::size_t n = f.size() - 1;
  std::vector<SmallPoly> frob(n, SmallPoly(n, 0));
  {
    SmallPoly cur(n, 0);
    cur[0] = 1;
    frob[0] = cur;
    for (std::size_t j = 1; j < n; ++j) {
      // cur <- cur * x^p mod f, one shift at a time.
      for (std::uint32_t s = 0; s < p; ++s) {
        const std::uint32_t top = cur[n - 1];
        for (std::size_t i = n - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        if (top != 0) {
          const std::uint32_t neg = p - top;
          for (std::size_t i = 0; i < n; ++i) {
            cur[i] = static_cast<std::uint32_t>((cur[i] + std::uint64_t{neg} * f[i]) % p);
          }
        }
      }
      frob[j] = cur;
    }
  }

  std::vector<unsigned> degrees;
  SmallPoly g = f;
  SmallPoly h(n, 0);
  if (n >= 2) {
    h[1] = 1;
  } else {
    h = SmallPoly{0};
  }
  std::vector<std::uint64_t> acc(n);
  for (unsigned k = 1; 2 * k <= g.size() - 1; ++k) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t j = 0; j < n && j < h.size(); ++j) {
      const std::uint64_t c = h[j];
      if (c == 0) continue;
      const SmallPoly& row = frob[j];
      for (std::size_t i = 0; i < n; ++i) acc[i] += c * row[i];
      if ((j & 0xfff) == 0xfff) {
        for (auto& v : acc) v %= p;
      }
    }
    h.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i) h[i] = static_cast<std::uint32_t>(acc[i] % p);

    SmallPoly t = h;
    t.resize(std::max<std::size_t>(t.size(), 2), 0);
    t[1] = (t[1] + p - 1) % p;
    rem_in_place(t, g, p);
    SmallPoly d = gcd_small(t, g, p);
    if (d.size() > 1) {
      const unsigned dd = static_cast<unsigned>(d.size() - 1);
      for (unsigned c = 0; c < dd / k; ++c) degrees.push_back(k);
      g = div_exact_small(g, d, p);
    }
  }
  if (g.size() > 1) degrees.push_back(static_cast<unsigned>(g.size() - 1));
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

std::vector<std::uint32_t> small_primes(std::size_t count) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t c = 2; out.size() < count; ++c) {
    if (is_prime_u64(c)) out.push_back(c);
  }
  return out;
}

std::vector<bool> subset_sums(const std::vector<unsigned>& degrees, unsigned n) {
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (unsigned d : degrees) {
    for (unsigned s = n; s >= d; --s) {
      if (reach[s - d]) reach[s] = true;
      if (s == d) break;
    }
  }
  return reach;
}

}  // namespace

std::optional<std::vector<unsigned>> factor_degrees_mod_p(const IntPolynomial& f,
                                                          std::uint32_t p) {
  if (p >= (1u << 16) || !is_prime_u64(p)) {
    throw DomainError("factor_degrees_mod_p needs a prime below 2^16");
  }
  SmallPoly fp(f.coefficients().size());
  mpz_class r;
  for (std::size_t i = 0; i < fp.size(); ++i) {
    mpz_fdiv_r_ui(r.get_mpz_t(), f.coefficients()[i].get_mpz_t(), p);
    fp[i] = static_cast<std::uint32_t>(r.get_ui());
  }
  trim(fp);
  if (static_cast<int>(fp.size()) - 1 != f.degree() || fp.size() < 2) return std::nullopt;
  if (fp.back() != 1) {
    const std::uint32_t inv = inv_small(fp.back(), p);
    for (auto& c : fp) c = static_cast<std::uint32_t>(std::uint64_t{c} * inv % p);
  }
  if (gcd_small(fp, derivative_small(fp, p), p).size() != 1) return std::nullopt;
  return ddf(fp, p);
}

bool has_obvious_factor(const IntPolynomial& f) {
  const int n = f.degree();
  if (n <= 1) return false;
  const mpz_class& a0 = f.coefficients()[0];
  if (a0 == 0) return true;
  // Monic: every integer root divides a0.
  mpz_class mag = abs(a0);
  std::vector<mpz_class> candidates{1};
  if (mag.fits_ulong_p() && mag.get_ui() <= (1ull << 62)) {
    auto factors = factor_u64(mag.get_ui());
    if (factors) {
      for (const auto& [prime, e] : *factors) {
        const std::size_t base = candidates.size();
        mpz_class pk = 1;
        for (unsigned k = 1; k <= e; ++k) {
          pk *= static_cast<unsigned long>(prime);
          for (std::size_t i = 0; i < base; ++i) candidates.push_back(candidates[i] * pk);
        }
      }
    }
  }
  for (const auto& d : candidates) {
    if (f(d) == 0 || f(-d) == 0) return true;
  }
  return false;
}

namespace {

bool eisenstein_somewhere(const IntPolynomial& g) {
  const int n = g.degree();
  mpz_class content = 0;
  for (int i = 0; i < n; ++i) {
    mpz_gcd(content.get_mpz_t(), content.get_mpz_t(), g.coefficients()[i].get_mpz_t());
  }
  if (content == 0 || content == 1) return false;
  const mpz_class& g0 = g.coefficients()[0];
  auto eisenstein_at = [&](const mpz_class& prime) { return g0 % (prime * prime) != 0; };
  mpz_class rest = content;
  for (unsigned long p = 2; p < 100000 && rest > 1; ++p) {
    if (rest % p != 0) continue;
    if (eisenstein_at(p)) return true;
    while (rest % p == 0) rest /= p;
  }
  if (rest > 1 && mpz_probab_prime_p(rest.get_mpz_t(), 40) > 0) return eisenstein_at(rest);
  return false;
}

}  // namespace

bool is_shifted_eisenstein(const IntPolynomial& f) {
  const int n = f.degree();
  if (n < 1 || !f.is_monic()) return false;
  std::vector<mpz_class> shifts{-2, -1, 0, 1, 2};
  const mpz_class& an1 = f.coefficient(n - 1);
  if (an1 % n == 0) shifts.push_back(-an1 / n);
  for (const auto& t : shifts) {
    if (eisenstein_somewhere(f.taylor_shift(t))) return true;
  }
  return false;
}

Irreducibility irreducibility_check(const IntPolynomial& f,
                                    const IrreducibilityOptions& options) {
  const int n = f.degree();
  if (n < 1 || !f.is_monic()) {
    throw PreconditionError("irreducibility_check expects a monic polynomial of degree >= 1");
  }
  if (n == 1) return Irreducibility::kIrreducible;
  if (has_obvious_factor(f)) return Irreducibility::kComposite;
  if (is_shifted_eisenstein(f)) return Irreducibility::kIrreducible;

  std::vector<bool> allowed(n + 1, true);
  for (std::uint32_t p : small_primes(options.max_primes)) {
    auto degrees = factor_degrees_mod_p(f, p);
    if (!degrees) continue;
    if (degrees->size() == 1) return Irreducibility::kIrreducible;
    const auto reach = subset_sums(*degrees, n);
    bool only_trivial = true;
    for (int k = 1; k < n; ++k) {
      allowed[k] = allowed[k] && reach[k];
      if (allowed[k]) only_trivial = false;
    }
    if (only_trivial) return Irreducibility::kIrreducible;
  }
  return Irreducibility::kUnknown;
}

}  // namespace plwe
