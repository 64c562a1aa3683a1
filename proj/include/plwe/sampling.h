#pragma once

// Error distributions and PLWE/RLWE sample generation.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "plwe/ring.h"

namespace plwe {

struct EmbeddingReport;

using Rng = std::mt19937_64;

// Independent stream for item `index` of a run seeded with `seed`.
Rng stream_rng(std::uint64_t seed, std::uint64_t index);

struct GaussianSpec {
  double sigma = 1.0;  // standard deviation
  double truncation_multiplier = 2.0;

  // Hard bound floor(truncation_multiplier * sigma).
  std::int64_t bound() const;
  void validate() const;  // throws InputError
};

// Rounded normal deviate, redrawn while |value| > bound().
std::int64_t sample_error_coeff(const GaussianSpec& spec, Rng& rng);

ResiduePolynomial uniform_element(const RingPtr& ring, Rng& rng);
ResiduePolynomial error_element(const RingPtr& ring, const GaussianSpec& spec, Rng& rng);

struct PlweSample {
  ResiduePolynomial a;
  ResiduePolynomial b;
};

enum class Provenance { kValid, kUniform };
const char* to_string(Provenance p);

struct SampleBatch {
  RingPtr ring;
  std::vector<PlweSample> samples;
  Provenance provenance = Provenance::kUniform;  // harness bookkeeping only
  std::uint64_t seed = 0;
  // Self-description of how errors were drawn, e.g.
  // "plwe-coefficient-rounded sigma=8 trunc=2".
  std::string error_model;
};

SampleBatch gen_plwe_batch(const RingPtr& ring, const ResiduePolynomial& secret,
                           const GaussianSpec& spec, std::size_t count, std::uint64_t seed);

SampleBatch gen_uniform_batch(const RingPtr& ring, std::size_t count, std::uint64_t seed);

// Spherical Gaussian in theta coordinates, mapped through M^{-1}, rounded to
// integers coordinate-wise. Throws NumericError when cond(M) > 1e12.
SampleBatch gen_rlwe_batch_monogenic(const RingPtr& ring, const EmbeddingReport& embedding,
                                     const ResiduePolynomial& secret, double sigma,
                                     std::size_t count, std::uint64_t seed);

// b - a*s for a candidate secret.
ResiduePolynomial residual(const PlweSample& sample, const ResiduePolynomial& secret);

}  // namespace plwe
