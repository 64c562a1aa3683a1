#pragma once

// Distinguishing attacks on PLWE samples through evaluation at a root alpha
// of f modulo q: elimination for alpha = 1, value-set elimination for roots
// of small order, and the statistical distinguisher for small residues.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "plwe/modarith.h"
#include "plwe/ring.h"
#include "plwe/sampling.h"

namespace plwe {

enum class Verdict { kValid, kUniform };
const char* to_string(Verdict v);

struct EliminationResult {
  // Surviving guesses for s(alpha), sorted. When `all_of_field` is set no
  // sample has constrained the guess yet and the set is all of F_q.
  std::vector<Residue> surviving;
  bool all_of_field = false;
  std::size_t samples_consumed = 0;
  // Samples with a(alpha) = 0, used only as a test on b(alpha).
  std::size_t zero_evaluation_samples = 0;
  Verdict verdict = Verdict::kUniform;

  std::uint64_t surviving_count(std::uint64_t q) const {
    return all_of_field ? q : surviving.size();
  }
};

// n * B: the largest |e(1)| a truncated error can produce.
std::int64_t default_threshold(std::size_t n, const GaussianSpec& spec);

// Keeps guesses g with |minimal residue of b(alpha) - g a(alpha)| <= t.
// Stops early once no guess survives.
EliminationResult attack_alpha_one(const SampleBatch& batch, Residue alpha,
                                   std::int64_t threshold_t);

struct ValueSet {
  Residue alpha = 0;
  std::uint64_t r = 1;
  std::vector<std::int64_t> class_bounds;  // bound on each residue-class sum
  std::int64_t bound_B = 0;                // max of class_bounds
  std::vector<Residue> values;             // sorted, distinct

  bool contains(Residue v) const;
};

inline constexpr std::uint64_t kValueSetBudget = 100'000'000;

// Class j collects coefficients i = j mod r; its sum is bounded by
// |class| * floor(truncation * sigma). Requires alpha^r = 1.
ValueSet build_value_set(Residue alpha, std::uint64_t r, std::size_t n, const GaussianSpec& spec,
                         const PrimeModulus& q);

// Same with one explicit bound B for every class.
ValueSet build_value_set(Residue alpha, std::uint64_t r, std::int64_t bound_B,
                         const PrimeModulus& q);

ValueSet build_value_set(Residue alpha, std::uint64_t r, std::vector<std::int64_t> class_bounds,
                         const PrimeModulus& q);

EliminationResult attack_small_order(const SampleBatch& batch, const ValueSet& vset);

enum class ResidueCase { kOne, kTwo, kThree };
const char* to_string(ResidueCase c);

// Which integer stands for alpha in the width formulas: the canonical
// representative in [0, q) or the minimal residue.
enum class Representative { kCanonical, kMinimal };

struct ResidueAdvantageOptions {
  std::uint64_t r_max = 64;
  Representative representative = Representative::kCanonical;
  double max_wraps = 1e7;
};

struct ResidueAttackPlan {
  Residue alpha = 0;
  std::uint64_t r = 0;
  ResidueCase case_id = ResidueCase::kOne;
  double sigma_bar = 0;      // may be +inf when only the log is representable
  double log_sigma_bar = 0;  // natural log
  double sigma_tilde = 0;    // case two only
  double epsilon = 0;
  double raw_epsilon = 0;    // before flooring at 0
  double n_wraps = 0;        // (2 sigma_bar - q/2) / q
  bool floored = false;      // raw_epsilon < 0
  bool negligible = false;   // too many wraps to sum; epsilon reported as 0
};

ResidueAttackPlan residue_advantage(std::size_t n, const PrimeModulus& q, const GaussianSpec& spec,
                                    Residue alpha, std::uint64_t r,
                                    const ResidueAdvantageOptions& options = {});

// Monte Carlo estimate of P(minimal residue of e(alpha) in [-q/4, q/4)) - 1/2.
double empirical_advantage(std::size_t n, const PrimeModulus& q, const GaussianSpec& spec,
                           Residue alpha, std::size_t trials, std::uint64_t seed);

enum class DistinguisherMode {
  kAggregate,  // C summed over every guess and sample
  kPerGuess,   // C_g per guess against ceil((l + eps l)/2); G if any guess passes
};

enum class DistinguisherVerdict { kU, kG };
const char* to_string(DistinguisherVerdict v);

struct DistinguisherOptions {
  DistinguisherMode mode = DistinguisherMode::kAggregate;
  unsigned workers = 1;
  std::uint64_t max_q = 1ULL << 22;
};

struct DistinguisherRun {
  std::size_t ell = 0;
  std::uint64_t threshold_N = 0;
  std::uint64_t count_C = 0;  // per-guess mode: the largest C_g
  std::optional<Residue> best_guess;  // per-guess mode
  DistinguisherMode mode = DistinguisherMode::kAggregate;
  DistinguisherVerdict verdict = DistinguisherVerdict::kU;
  bool degenerate = false;  // ell == 0
};

// ceil((ell q + eps ell) / 2).
std::uint64_t distinguisher_threshold(std::size_t ell, std::uint64_t q, double epsilon);

// True when the minimal residue of v lies in [-q/4, q/4).
bool in_central_quarter(Residue v, std::uint64_t q);

DistinguisherRun residue_distinguisher(const SampleBatch& batch, Residue alpha,
                                       const ResidueAttackPlan& plan,
                                       const DistinguisherOptions& options = {});

struct SuccessProbability {
  double p_given_U = 0;
  double p_given_G = 0;
  double overall = 0;
  bool exact = true;  // false: normal approximation with continuity correction
};

inline constexpr double kExactBinomialLimit = 1e6;

SuccessProbability success_probability(std::size_t ell, std::uint64_t q, double epsilon);

// F(k; m, 1/2); exact below kExactBinomialLimit trials.
double binomial_half_cdf(std::int64_t k, std::uint64_t m);

struct SmearingResult {
  bool smears = false;
  std::uint64_t image_size = 0;
  bool sampled = false;
  std::uint64_t draws = 0;
};

// Image of every polynomial with n coefficients in [lo, hi].
SmearingResult check_smearing_box(std::size_t n, std::int64_t lo, std::int64_t hi, Residue alpha,
                                  const PrimeModulus& q, std::uint64_t budget = 2'000'000'000);

SmearingResult check_smearing(const std::vector<ResiduePolynomial>& set, Residue alpha);

// Draws from `generator` until the image covers F_q or the coupon-collector
// horizon q (ln q + 10) passes without covering it. Throws CapacityError if
// that horizon exceeds max_draws.
SmearingResult check_smearing_sampled(const std::function<ResiduePolynomial(Rng&)>& generator,
                                      Residue alpha, const PrimeModulus& q, std::uint64_t seed,
                                      std::uint64_t max_draws = 100'000'000);

}  // namespace plwe
