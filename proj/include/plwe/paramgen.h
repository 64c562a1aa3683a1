#pragma once

// Construction of PLWE parameter sets with a small root of small order, and
// the arithmetic around the smallest residue of a given order.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plwe/int_poly.h"
#include "plwe/irreducibility.h"
#include "plwe/modarith.h"
#include "plwe/ring.h"
#include "plwe/sampling.h"

namespace plwe {

// r-th cyclotomic polynomial by exact division of x^r - 1.
IntPolynomial cyclotomic_poly(unsigned r);

// Miller-Rabin; deterministic below 3.3e24 (first 13 prime bases), 64 bases
// drawn from a fixed-seed generator above.
bool is_prime(const mpz_class& m);

struct VulnerableInstance {
  IntPolynomial f;
  PrimeModulus q;
  Residue a;
  std::uint64_t r;
  std::uint64_t i_used;             // 0 for the (x - a)^n + q fallback
  std::vector<Residue> split_roots;  // sorted; empty for the fallback
  bool size_relaxed = false;         // bit size accepted at +-2 instead of +-1
  bool fallback = false;
};

struct ParamSearchOptions {
  // f = (x - a)^n + q instead of the split product; no irreducibility search.
  bool fallback = false;
  std::uint64_t i_budget = 10000;
  IrreducibilityOptions irreducibility;
};

// Parameter construction: smallest a >= floor(2^(q0/s)) with
// Phi_r(a) prime of bit length within one of q0; S = {a} plus the n-1
// residues 1, -1, 2, -2, ... other than a; smallest i >= 1 for which
// prod_{s in S}(x - s) + q*i is certified irreducible.
VulnerableInstance find_vulnerable_params(unsigned r, unsigned n, unsigned q0,
                                          const ParamSearchOptions& options = {});

// prod_{s in roots}(x - s) + q*i for the smallest certified-irreducible i.
// Roots are minimal residues. Returns the polynomial and i.
std::pair<IntPolynomial, std::uint64_t> construct_split_polynomial(
    const std::vector<std::int64_t>& roots, std::uint64_t q, std::uint64_t i_budget,
    const IrreducibilityOptions& options = {});

// Ring from an instance (irreducible by construction).
RingPtr make_ring(const VulnerableInstance& instance);

// Re-verifies every invariant of an instance; throws InputError on failure.
void verify_instance(const VulnerableInstance& instance);

struct OrderSearchResult {
  std::uint64_t r;
  std::uint64_t q;
  std::int64_t n_rq;  // signed minimal residue
  std::uint64_t phi_r;
  double lower_bound;  // (q / phi(r))^(1 / phi(r))
  bool is_minimal;     // |Phi_r(n_rq)| == q
};

// Scans 1, -1, 2, -2, ... for the first residue of exact order r. Throws
// PreconditionError when r does not divide q - 1.
OrderSearchResult smallest_residue_of_order(std::uint64_t r, const PrimeModulus& q);

enum class BoundVerdict { kHolds, kViolated, kInapplicable };
const char* to_string(BoundVerdict v);

// Lower bound |n_rq| >= (q/phi(r))^(1/phi(r)); inapplicable unless r has at
// most two distinct prime factors, all odd.
BoundVerdict verify_nrq_bound(const OrderSearchResult& result);

// Parameter audit of a ring against the decidable vulnerability conditions.
struct RootFinding {
  Residue alpha;
  std::int64_t minimal;
  std::uint64_t order;
  double epsilon;
};

struct AuditReport {
  bool splits_completely = false;
  bool has_root_one = false;
  std::vector<RootFinding> small_order_roots;    // order <= r_max
  std::vector<RootFinding> small_residue_roots;  // |minimal| <= residue_cap
  std::optional<double> distortion;               // absent if not computed
  std::optional<bool> distortion_within_cap;
  std::string distortion_note;
  std::optional<RootFinding> best_root;  // largest epsilon
  std::string galois = "not decided";
  std::string monogenic = "not decided";
};

struct AuditOptions {
  std::uint64_t r_max = 64;
  std::int64_t residue_cap = 16;
  double distortion_cap = 10.0;
  unsigned distortion_max_degree = 128;
};

AuditReport audit_conditions(const RingSpec& ring, const GaussianSpec& spec,
                             const AuditOptions& options = {});

}  // namespace plwe
