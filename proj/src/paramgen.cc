#include "plwe/paramgen.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "plwe/attacks.h"
#include "plwe/error.h"
#include "plwe/geometry.h"
#include "plwe/roots.h"

namespace plwe {

namespace {

std::size_t bit_length(const mpz_class& m) { return m == 0 ? 0 : mpz_sizeinbase(m.get_mpz_t(), 2); }

bool miller_rabin_round(const mpz_class& m, const mpz_class& d, unsigned s, const mpz_class& base) {
  mpz_class x;
  mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), m.get_mpz_t());
  const mpz_class m1 = m - 1;
  if (x == 1 || x == m1) return true;
  for (unsigned i = 1; i < s; ++i) {
    x = x * x % m;
    if (x == m1) return true;
  }
  return false;
}

IntPolynomial product_of_linears(const std::vector<std::int64_t>& roots) {
  // Balanced product tree keeps the bignum sizes even.
  std::vector<IntPolynomial> level;
  level.reserve(roots.size());
  for (std::int64_t s : roots) level.push_back(IntPolynomial::linear(mpz_class(static_cast<long>(s))));
  if (level.empty()) return IntPolynomial{1};
  while (level.size() > 1) {
    std::vector<IntPolynomial> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) next.push_back(level[i] * level[i + 1]);
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  return level.front();
}

IntPolynomial add_constant(IntPolynomial p, const mpz_class& c) {
  std::vector<mpz_class> coeffs = p.coefficients();
  if (coeffs.empty()) coeffs.push_back(0);
  coeffs[0] += c;
  return IntPolynomial(std::move(coeffs));
}

std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t r) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= r; ++p) {
    if (r % p == 0) {
      out.push_back(p);
      while (r % p == 0) r /= p;
    }
  }
  if (r > 1) out.push_back(r);
  return out;
}

}  // namespace

IntPolynomial cyclotomic_poly(unsigned r) {
  if (r == 0) throw InputError("cyclotomic index must be positive");
  static std::mutex mu;
  static std::map<unsigned, IntPolynomial> cache;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(r); it != cache.end()) return it->second;
  }
  IntPolynomial p = IntPolynomial::monomial(r) - IntPolynomial{1};
  for (unsigned d = 1; d < r; ++d) {
    if (r % d == 0) p = p.exact_div_monic(cyclotomic_poly(d));
  }
  std::lock_guard lock(mu);
  cache.emplace(r, p);
  return p;
}

bool is_prime(const mpz_class& m) {
  if (m < 2) return false;
  static const unsigned kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41};
  for (unsigned p : kSmall) {
    if (m == p) return true;
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) return false;
  }
  mpz_class d = m - 1;
  unsigned s = 0;
  while (mpz_even_p(d.get_mpz_t())) {
    d >>= 1;
    ++s;
  }
  static const mpz_class kDeterministicLimit("3317044064679887385961981");
  if (m < kDeterministicLimit) {
    for (unsigned p : kSmall) {
      if (!miller_rabin_round(m, d, s, mpz_class(p))) return false;
    }
    return true;
  }
  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(0x9e3779b9UL);
  const mpz_class span = m - 3;
  for (int i = 0; i < 64; ++i) {
    const mpz_class base = rng.get_z_range(span) + 2;
    if (!miller_rabin_round(m, d, s, base)) return false;
  }
  return true;
}

std::pair<IntPolynomial, std::uint64_t> construct_split_polynomial(
    const std::vector<std::int64_t>& roots, std::uint64_t q, std::uint64_t i_budget,
    const IrreducibilityOptions& options) {
  if (roots.empty()) throw InputError("need at least one root");
  const IntPolynomial base = product_of_linears(roots);
  const mpz_class qz(std::to_string(q));
  for (std::uint64_t i = 1; i <= i_budget; ++i) {
    IntPolynomial f = add_constant(base, qz * mpz_class(std::to_string(i)));
    if (irreducibility_check(f, options) == Irreducibility::kIrreducible) return {std::move(f), i};
  }
  throw SearchExhausted("no certified irreducible prod(x - s) + q i with i <= " +
                        std::to_string(i_budget));
}

VulnerableInstance find_vulnerable_params(unsigned r, unsigned n, unsigned q0,
                                          const ParamSearchOptions& options) {
  if (r <= 2) throw PreconditionError("r must exceed 2");
  if (n < 1) throw PreconditionError("degree must be at least 1");
  if (static_cast<double>(q0) <= std::log2(static_cast<double>(n))) {
    throw PreconditionError("q0 must exceed log2(n)");
  }
  if (q0 > 62) throw PreconditionError("q0 above 62 bits exceeds the word-size modulus");

  const IntPolynomial phi = cyclotomic_poly(r);
  const unsigned s = static_cast<unsigned>(phi.degree());
  mpz_class start;
  mpz_root(start.get_mpz_t(), mpz_class(mpz_class(1) << q0).get_mpz_t(), s);
  if (start < 2) start = 2;
  mpz_class limit = mpz_class(1) << ((q0 + s - 1) / s + 8);

  std::optional<std::pair<mpz_class, mpz_class>> found;
  bool relaxed = false;
  for (unsigned slack = 1; slack <= 2 && !found; ++slack) {
    for (mpz_class a = start; a <= limit; ++a) {
      const mpz_class value = phi(a);
      const std::size_t bits = bit_length(value);
      if (bits > q0 + slack) break;
      if (bits + slack < q0) continue;
      if (value < 3 || bits > 62 || !is_prime(value)) continue;
      const std::uint64_t qv = value.get_ui();
      if (element_order(mpz_class(a % value).get_ui(), PrimeModulus(qv)) != r) continue;
      found.emplace(a, value);
      relaxed = slack > 1;
      break;
    }
  }
  if (!found) {
    throw SearchExhausted("no prime value of Phi_" + std::to_string(r) + " with bit size near " +
                          std::to_string(q0));
  }

  VulnerableInstance inst{IntPolynomial{}, PrimeModulus(found->second.get_ui()), 0, r, 0, {},
                          relaxed, options.fallback};
  inst.a = found->first.get_ui();
  const std::uint64_t q = inst.q.value();
  if (n > q - 1) throw PreconditionError("degree exceeds the number of nonzero residues");

  if (options.fallback) {
    IntPolynomial f = IntPolynomial{1};
    const IntPolynomial lin = IntPolynomial::linear(found->first);
    for (unsigned k = 0; k < n; ++k) f = f * lin;
    inst.f = add_constant(f, found->second);
    inst.i_used = 0;
    return inst;
  }

  std::vector<std::int64_t> roots{static_cast<std::int64_t>(inst.a)};
  for (std::int64_t k = 1; roots.size() < n; ++k) {
    for (std::int64_t cand : {k, -k}) {
      if (roots.size() >= n) break;
      if (reduce_signed(cand, q) == inst.a % q) continue;
      roots.push_back(cand);
    }
  }
  auto [f, i] = construct_split_polynomial(roots, q, options.i_budget, options.irreducibility);
  inst.f = std::move(f);
  inst.i_used = i;
  for (std::int64_t v : roots) inst.split_roots.push_back(reduce_signed(v, q));
  std::sort(inst.split_roots.begin(), inst.split_roots.end());
  return inst;
}

RingPtr make_ring(const VulnerableInstance& instance) {
  if (instance.fallback) {
    throw PreconditionError("the (x - a)^n + q fallback does not split into distinct roots mod q");
  }
  return RingSpec::from_parts(instance.f, instance.q, instance.split_roots,
                              IrreducibilityPolicy::kTrust);
}

void verify_instance(const VulnerableInstance& inst) {
  const std::uint64_t q = inst.q.value();
  auto fail = [](const std::string& what) {
    throw InputError("instance invariant violated: " + what);
  };
  if (!inst.f.is_monic()) fail("f is not monic");
  if (inst.f.eval_mod(inst.a % q, q) != 0) fail("f(a) is not 0 mod q");
  if (element_order(inst.a % q, inst.q) != inst.r) fail("a does not have exact order r");
  if (inst.fallback) {
    if (!is_shifted_eisenstein(inst.f) &&
        irreducibility_check(inst.f) != Irreducibility::kIrreducible) {
      fail("f is not certified irreducible");
    }
    return;
  }
  if (inst.split_roots.size() != static_cast<std::size_t>(inst.f.degree())) {
    fail("number of split roots differs from deg f");
  }
  if (std::adjacent_find(inst.split_roots.begin(), inst.split_roots.end()) !=
      inst.split_roots.end()) {
    fail("split roots are not distinct");
  }
  for (Residue s : inst.split_roots) {
    if (inst.f.eval_mod(s, q) != 0) fail("f(s) is not 0 mod q for a split root");
  }
  if (!std::binary_search(inst.split_roots.begin(), inst.split_roots.end(), inst.a % q)) {
    fail("a is not among the split roots");
  }
  if (irreducibility_check(inst.f) != Irreducibility::kIrreducible) {
    fail("f is not certified irreducible");
  }
}

OrderSearchResult smallest_residue_of_order(std::uint64_t r, const PrimeModulus& q) {
  if (r == 0 || (q.value() - 1) % r != 0) {
    throw PreconditionError("no element of order " + std::to_string(r) + " mod " +
                            std::to_string(q.value()) + ": r does not divide q - 1");
  }
  const auto factors = factor_u64(q.value() - 1);
  if (!factors) throw SearchExhausted("could not factor q - 1");
  OrderSearchResult res{r, q.value(), 0, euler_phi(r), 0, false};
  const double phi = static_cast<double>(res.phi_r);
  res.lower_bound = std::pow(static_cast<double>(q.value()) / phi, 1.0 / phi);
  bool found = false;
  for (std::uint64_t k = 1; k <= q.value() / 2 && !found; ++k) {
    for (std::int64_t cand : {static_cast<std::int64_t>(k), -static_cast<std::int64_t>(k)}) {
      if (element_order(reduce_signed(cand, q), q, *factors) == r) {
        res.n_rq = cand;
        found = true;
        break;
      }
    }
  }
  if (!found) throw SearchExhausted("no residue of the requested order found");
  const mpz_class value = cyclotomic_poly(static_cast<unsigned>(r))(mpz_class(static_cast<long>(res.n_rq)));
  res.is_minimal = abs(value) == mpz_class(std::to_string(q.value()));
  return res;
}

const char* to_string(BoundVerdict v) {
  switch (v) {
    case BoundVerdict::kHolds: return "holds";
    case BoundVerdict::kViolated: return "violated";
    case BoundVerdict::kInapplicable: return "inapplicable";
  }
  return "?";
}

BoundVerdict verify_nrq_bound(const OrderSearchResult& result) {
  const auto primes = distinct_prime_factors(result.r);
  if (result.r < 3 || primes.size() > 2 ||
      std::any_of(primes.begin(), primes.end(), [](std::uint64_t p) { return p == 2; })) {
    return BoundVerdict::kInapplicable;
  }
  // |n| >= (q/phi)^(1/phi)  <=>  phi * |n|^phi >= q, checked exactly.
  mpz_class lhs;
  mpz_ui_pow_ui(lhs.get_mpz_t(), static_cast<unsigned long>(std::llabs(result.n_rq)),
                static_cast<unsigned long>(result.phi_r));
  lhs *= static_cast<unsigned long>(result.phi_r);
  return lhs >= mpz_class(std::to_string(result.q)) ? BoundVerdict::kHolds : BoundVerdict::kViolated;
}

AuditReport audit_conditions(const RingSpec& ring, const GaussianSpec& spec,
                             const AuditOptions& options) {
  AuditReport rep;
  const std::uint64_t q = ring.modulus();
  const std::size_t n = ring.degree();
  rep.splits_completely = n == static_cast<std::size_t>(ring.f().degree());
  rep.has_root_one = ring.has_root(1);

  const auto factors = factor_u64(q - 1);
  ResidueAdvantageOptions adv;
  adv.r_max = options.r_max;
  for (Residue alpha : ring.roots()) {
    if (alpha == 0) continue;
    const std::int64_t minimal = minimal_residue(alpha, q);
    const bool small_residue = std::llabs(minimal) <= options.residue_cap;
    std::uint64_t order = 0;
    if (factors) order = element_order(alpha, ring.q(), *factors);
    const bool small_order = factors && order <= options.r_max;
    if (!small_order && !small_residue) continue;
    const double eps = residue_advantage(n, ring.q(), spec, alpha, order ? order : q - 1, adv).epsilon;
    const RootFinding rf{alpha, minimal, order, eps};
    if (small_order) rep.small_order_roots.push_back(rf);
    if (small_residue) rep.small_residue_roots.push_back(rf);
    if (!rep.best_root || eps > rep.best_root->epsilon ||
        (eps == rep.best_root->epsilon && std::llabs(minimal) < std::llabs(rep.best_root->minimal))) {
      rep.best_root = rf;
    }
  }

  if (n > options.distortion_max_degree) {
    rep.distortion_note = "degree above the distortion cap of " +
                          std::to_string(options.distortion_max_degree);
  } else {
    try {
      RootOptions ro;
      ro.max_degree = options.distortion_max_degree;
      rep.distortion = spectral_distortion(ring.f(), ro).distortion;
      rep.distortion_within_cap = *rep.distortion <= options.distortion_cap;
    } catch (const Error& e) {
      rep.distortion_note = e.what();
    }
  }
  return rep;
}

}  // namespace plwe
