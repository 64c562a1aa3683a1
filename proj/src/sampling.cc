#include "plwe/sampling.h"

#include <cmath>
#include <sstream>

#include "plwe/error.h"
#include "plwe/geometry.h"

namespace plwe {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void require_same_ring(const RingPtr& ring, const ResiduePolynomial& p) {
  if (p.ring_ptr() != ring && !(p.ring().f() == ring->f() && p.ring().q() == ring->q())) {
    throw PreconditionError("secret does not belong to the batch ring");
  }
}

}  // namespace

Rng stream_rng(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t a = splitmix64(seed);
  const std::uint64_t b = splitmix64(a ^ splitmix64(index + 0x632be59bd9b4e019ULL));
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return Rng(seq);
}

std::int64_t GaussianSpec::bound() const {
  return static_cast<std::int64_t>(std::floor(truncation_multiplier * sigma));
}

void GaussianSpec::validate() const {
  if (!(sigma > 0) || !std::isfinite(sigma)) throw InputError("sigma must be positive");
  if (!(truncation_multiplier > 0) || !std::isfinite(truncation_multiplier)) {
    throw InputError("truncation multiplier must be positive");
  }
}

std::int64_t sample_error_coeff(const GaussianSpec& spec, Rng& rng) {
  std::normal_distribution<double> normal(0.0, spec.sigma);
  const std::int64_t b = spec.bound();
  for (;;) {
    const double v = std::nearbyint(normal(rng));
    if (std::abs(v) <= static_cast<double>(b)) return static_cast<std::int64_t>(v);
  }
}

ResiduePolynomial uniform_element(const RingPtr& ring, Rng& rng) {
  std::uniform_int_distribution<Residue> dist(0, ring->modulus() - 1);
  std::vector<Residue> c(ring->degree());
  for (auto& x : c) x = dist(rng);
  return ResiduePolynomial(ring, std::move(c));
}

ResiduePolynomial error_element(const RingPtr& ring, const GaussianSpec& spec, Rng& rng) {
  std::vector<std::int64_t> c(ring->degree());
  for (auto& x : c) x = sample_error_coeff(spec, rng);
  return ResiduePolynomial::from_signed(ring, c);
}

const char* to_string(Provenance p) {
  return p == Provenance::kValid ? "valid" : "uniform";
}

SampleBatch gen_plwe_batch(const RingPtr& ring, const ResiduePolynomial& secret,
                           const GaussianSpec& spec, std::size_t count, std::uint64_t seed) {
  spec.validate();
  require_same_ring(ring, secret);
  SampleBatch batch;
  batch.ring = ring;
  batch.provenance = Provenance::kValid;
  batch.seed = seed;
  std::ostringstream model;
  model << "plwe-coefficient-rounded sigma=" << spec.sigma
        << " trunc=" << spec.truncation_multiplier;
  batch.error_model = model.str();
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed, i);
    ResiduePolynomial a = uniform_element(ring, rng);
    ResiduePolynomial e = error_element(ring, spec, rng);
    ResiduePolynomial b = a * secret + e;
    batch.samples.push_back({std::move(a), std::move(b)});
  }
  return batch;
}

SampleBatch gen_uniform_batch(const RingPtr& ring, std::size_t count, std::uint64_t seed) {
  SampleBatch batch;
  batch.ring = ring;
  batch.provenance = Provenance::kUniform;
  batch.seed = seed;
  batch.error_model = "uniform";
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed, i);
    ResiduePolynomial a = uniform_element(ring, rng);
    ResiduePolynomial b = uniform_element(ring, rng);
    batch.samples.push_back({std::move(a), std::move(b)});
  }
  return batch;
}

SampleBatch gen_rlwe_batch_monogenic(const RingPtr& ring, const EmbeddingReport& embedding,
                                     const ResiduePolynomial& secret, double sigma,
                                     std::size_t count, std::uint64_t seed) {
  if (!(sigma > 0)) throw InputError("sigma must be positive");
  require_same_ring(ring, secret);
  if (!(embedding.f == ring->f())) {
    throw PreconditionError("embedding was computed for a different polynomial");
  }
  if (!(embedding.condition_number <= 1e12)) {
    throw NumericError("embedding matrix condition number above 1e12");
  }
  LuDecomposition lu(embedding.M);
  if (lu.singular()) throw NumericError("embedding matrix is singular");
  const std::size_t n = ring->degree();

  SampleBatch batch;
  batch.ring = ring;
  batch.provenance = Provenance::kValid;
  batch.seed = seed;
  std::ostringstream model;
  model << "rlwe-monogenic-power-basis-rounded sigma=" << sigma;
  batch.error_model = model.str();
  batch.samples.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Rng rng = stream_rng(seed, i);
    ResiduePolynomial a = uniform_element(ring, rng);
    std::normal_distribution<double> normal(0.0, sigma);
    std::vector<double> g(n);
    for (auto& x : g) x = normal(rng);
    const std::vector<double> coords = lu.solve(g);
    std::vector<std::int64_t> e(n);
    for (std::size_t j = 0; j < n; ++j) {
      e[j] = static_cast<std::int64_t>(std::nearbyint(coords[j]));
    }
    ResiduePolynomial b = a * secret + ResiduePolynomial::from_signed(ring, e);
    batch.samples.push_back({std::move(a), std::move(b)});
  }
  return batch;
}

ResiduePolynomial residual(const PlweSample& sample, const ResiduePolynomial& secret) {
  return sample.b - sample.a * secret;
}

}  // namespace plwe
