#include "plwe/ring.h"

#include <algorithm>
#include <string>

#include "plwe/error.h"
#include "plwe/irreducibility.h"
#include "plwe/roots.h"

namespace plwe {

zq::Poly reduce_mod(const IntPolynomial& f, std::uint64_t q) {
  zq::Poly out(f.coefficients().size());
  mpz_class r;
  for (std::size_t i = 0; i < out.size(); ++i) {
    mpz_fdiv_r_ui(r.get_mpz_t(), f.coefficients()[i].get_mpz_t(), q);
    out[i] = r.get_ui();
  }
  zq::trim(out);
  return out;
}

namespace {

void apply_policy(const IntPolynomial& f, IrreducibilityPolicy policy) {
  switch (policy) {
    case IrreducibilityPolicy::kTrust:
      return;
    case IrreducibilityPolicy::kRejectComposite:
      if (has_obvious_factor(f)) {
        throw InputError("ring invariant violated: f is reducible over the integers");
      }
      return;
    case IrreducibilityPolicy::kRequireCertificate: {
      const auto verdict = irreducibility_check(f);
      if (verdict == Irreducibility::kComposite) {
        throw InputError("ring invariant violated: f is reducible over the integers");
      }
      if (verdict == Irreducibility::kUnknown) {
        throw InputError("ring invariant violated: irreducibility of f could not be certified");
      }
      return;
    }
  }
}

}  // namespace

RingSpec::RingSpec(IntPolynomial f, PrimeModulus q, std::vector<Residue> roots)
    : f_(std::move(f)), q_(q), roots_(std::move(roots)), f_mod_(reduce_mod(f_, q.value())) {}

std::shared_ptr<const RingSpec> RingSpec::create(IntPolynomial f, PrimeModulus q,
                                                 IrreducibilityPolicy policy) {
  if (f.degree() < 1 || !f.is_monic()) {
    throw InputError("ring invariant violated: f must be monic of degree >= 1");
  }
  std::vector<Residue> roots = find_roots_mod_q(f, q);
  if (roots.size() != static_cast<std::size_t>(f.degree())) {
    throw InputError("ring invariant violated: f does not split completely modulo " +
                     std::to_string(q.value()) + " (" + std::to_string(roots.size()) +
                     " distinct roots for degree " + std::to_string(f.degree()) + ")");
  }
  apply_policy(f, policy);
  return std::shared_ptr<const RingSpec>(new RingSpec(std::move(f), q, std::move(roots)));
}

std::shared_ptr<const RingSpec> RingSpec::from_parts(IntPolynomial f, PrimeModulus q,
                                                     std::vector<Residue> roots,
                                                     IrreducibilityPolicy policy) {
  if (f.degree() < 1 || !f.is_monic()) {
    throw InputError("ring invariant violated: f must be monic of degree >= 1");
  }
  std::sort(roots.begin(), roots.end());
  if (std::adjacent_find(roots.begin(), roots.end()) != roots.end()) {
    throw InputError("ring invariant violated: roots are not pairwise distinct");
  }
  for (Residue r : roots) {
    if (r >= q.value()) throw InputError("ring invariant violated: root not in [0, q)");
    if (f.eval_mod(r, q.value()) != 0) {
      throw InputError("ring invariant violated: f(" + std::to_string(r) + ") != 0 mod q");
    }
  }
  if (roots.size() != static_cast<std::size_t>(f.degree())) {
    throw InputError("ring invariant violated: f does not split completely (" +
                     std::to_string(roots.size()) + " roots for degree " +
                     std::to_string(f.degree()) + ")");
  }
  apply_policy(f, policy);
  return std::shared_ptr<const RingSpec>(new RingSpec(std::move(f), q, std::move(roots)));
}

bool RingSpec::has_root(Residue alpha) const {
  return std::binary_search(roots_.begin(), roots_.end(), alpha);
}

ResiduePolynomial::ResiduePolynomial(RingPtr ring)
    : ring_(std::move(ring)), coeffs_(ring_->degree(), 0) {}

ResiduePolynomial::ResiduePolynomial(RingPtr ring, std::vector<Residue> coefficients)
    : ring_(std::move(ring)), coeffs_(std::move(coefficients)) {
  if (coeffs_.size() != ring_->degree()) {
    throw InputError("residue polynomial length " + std::to_string(coeffs_.size()) +
                     " does not match ring degree " + std::to_string(ring_->degree()));
  }
  for (Residue c : coeffs_) {
    if (c >= ring_->modulus()) throw InputError("residue polynomial coefficient not in [0, q)");
  }
}

ResiduePolynomial ResiduePolynomial::from_signed(RingPtr ring,
                                                 std::span<const std::int64_t> coeffs) {
  std::vector<Residue> v(coeffs.size());
  const std::uint64_t q = ring->modulus();
  std::transform(coeffs.begin(), coeffs.end(), v.begin(),
                 [q](std::int64_t c) { return reduce_signed(c, q); });
  return ResiduePolynomial(std::move(ring), std::move(v));
}

std::vector<std::int64_t> ResiduePolynomial::minimal_coefficients() const {
  std::vector<std::int64_t> out(coeffs_.size());
  const std::uint64_t q = ring_->modulus();
  std::transform(coeffs_.begin(), coeffs_.end(), out.begin(),
                 [q](Residue c) { return minimal_residue(c, q); });
  return out;
}

ResiduePolynomial ResiduePolynomial::operator+(const ResiduePolynomial& o) const {
  std::vector<Residue> v(coeffs_.size());
  const std::uint64_t q = ring_->modulus();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = add_mod(coeffs_[i], o.coeffs_[i], q);
  return ResiduePolynomial(ring_, std::move(v));
}

ResiduePolynomial ResiduePolynomial::operator-(const ResiduePolynomial& o) const {
  std::vector<Residue> v(coeffs_.size());
  const std::uint64_t q = ring_->modulus();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = sub_mod(coeffs_[i], o.coeffs_[i], q);
  return ResiduePolynomial(ring_, std::move(v));
}

ResiduePolynomial ResiduePolynomial::operator*(const ResiduePolynomial& o) const {
  const std::uint64_t q = ring_->modulus();
  const std::size_t n = coeffs_.size();
  const zq::Poly& f = ring_->f_mod_q();
  std::vector<Residue> prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (coeffs_[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      prod[i + j] = add_mod(prod[i + j], mul_mod(coeffs_[i], o.coeffs_[j], q), q);
    }
  }
  // f is monic of degree n.
  for (std::size_t k = prod.size(); k-- > n;) {
    const Residue c = prod[k];
    if (c == 0) continue;
    for (std::size_t j = 0; j < n; ++j) {
      prod[k - n + j] = sub_mod(prod[k - n + j], mul_mod(c, f[j], q), q);
    }
  }
  prod.resize(n);
  return ResiduePolynomial(ring_, std::move(prod));
}

Residue ResiduePolynomial::evaluate(Residue alpha) const {
  return zq::eval(coeffs_, alpha, ring_->modulus());
}

Residue poly_eval(const ResiduePolynomial& p, Residue alpha) { return p.evaluate(alpha); }

Residue poly_eval(const IntPolynomial& p, Residue alpha, const PrimeModulus& q) {
  return p.eval_mod(alpha % q.value(), q.value());
}

}  // namespace plwe
