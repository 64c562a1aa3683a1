#pragma once

// The quotient ring P_q = F_q[x]/(f) for a monic f that splits completely
// modulo q, and its elements.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "plwe/int_poly.h"
#include "plwe/modarith.h"
#include "plwe/zq_poly.h"

namespace plwe {

enum class IrreducibilityPolicy {
  kTrust,               // caller vouches (e.g. a constructed instance)
  kRejectComposite,     // run the cheap composite detectors only
  kRequireCertificate,  // irreducibility_check must answer "irreducible"
};

class RingSpec {
 public:
  // Computes the roots of f modulo q and requires complete splitting.
  static std::shared_ptr<const RingSpec> create(
      IntPolynomial f, PrimeModulus q,
      IrreducibilityPolicy policy = IrreducibilityPolicy::kRejectComposite);

  // Validates externally supplied roots (from a ring file). Every failure
  // throws InputError naming the violated invariant.
  static std::shared_ptr<const RingSpec> from_parts(
      IntPolynomial f, PrimeModulus q, std::vector<Residue> roots,
      IrreducibilityPolicy policy = IrreducibilityPolicy::kRejectComposite);

  const IntPolynomial& f() const { return f_; }
  const PrimeModulus& q() const { return q_; }
  std::uint64_t modulus() const { return q_.value(); }
  std::size_t degree() const { return roots_.size(); }
  const std::vector<Residue>& roots() const { return roots_; }
  // f reduced modulo q (monic).
  const zq::Poly& f_mod_q() const { return f_mod_; }

  bool has_root(Residue alpha) const;

 private:
  RingSpec(IntPolynomial f, PrimeModulus q, std::vector<Residue> roots);

  IntPolynomial f_;
  PrimeModulus q_;
  std::vector<Residue> roots_;
  zq::Poly f_mod_;
};

using RingPtr = std::shared_ptr<const RingSpec>;

// An element of P_q in the power basis: exactly deg f residues in [0, q).
class ResiduePolynomial {
 public:
  explicit ResiduePolynomial(RingPtr ring);  // zero
  ResiduePolynomial(RingPtr ring, std::vector<Residue> coefficients);

  // Signed coefficients, reduced into [0, q).
  static ResiduePolynomial from_signed(RingPtr ring, std::span<const std::int64_t> coeffs);

  const RingSpec& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  const std::vector<Residue>& coefficients() const { return coeffs_; }
  std::vector<std::int64_t> minimal_coefficients() const;

  ResiduePolynomial operator+(const ResiduePolynomial& other) const;
  ResiduePolynomial operator-(const ResiduePolynomial& other) const;
  // Product reduced modulo f and q.
  ResiduePolynomial operator*(const ResiduePolynomial& other) const;
  bool operator==(const ResiduePolynomial& other) const { return coeffs_ == other.coeffs_; }

  // pi_alpha: p(x) -> p(alpha) mod q.
  Residue evaluate(Residue alpha) const;

 private:
  RingPtr ring_;
  std::vector<Residue> coeffs_;
};

// Horner evaluation modulo q. Integer inputs are reduced first.
Residue poly_eval(const ResiduePolynomial& p, Residue alpha);
Residue poly_eval(const IntPolynomial& p, Residue alpha, const PrimeModulus& q);

// f with coefficients reduced into [0, q), trailing zeros removed.
zq::Poly reduce_mod(const IntPolynomial& f, std::uint64_t q);

}  // namespace plwe
