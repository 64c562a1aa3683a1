#include "plwe/attacks.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "plwe/error.h"

namespace plwe {

namespace {

void require_root(const SampleBatch& batch, Residue alpha) {
  if (!batch.ring) throw PreconditionError("batch has no ring");
  if (!batch.ring->has_root(alpha)) {
    throw PreconditionError("alpha = " + std::to_string(alpha) + " is not a root of f mod q");
  }
}

// Elimination shared by the alpha = 1 and small-order attacks. `support`
// lists every admissible value of e(alpha); `accept` tests membership.
template <class Accept>
EliminationResult eliminate(const SampleBatch& batch, Residue alpha,
                            const std::vector<Residue>& support, bool support_is_field,
                            Accept accept) {
  const std::uint64_t q = batch.ring->modulus();
  EliminationResult res;
  res.all_of_field = true;
  for (const PlweSample& s : batch.samples) {
    ++res.samples_consumed;
    const Residue av = s.a.evaluate(alpha);
    const Residue bv = s.b.evaluate(alpha);
    if (av == 0) {
      ++res.zero_evaluation_samples;
      if (!accept(bv)) {
        res.all_of_field = false;
        res.surviving.clear();
      }
    } else if (res.all_of_field) {
      if (!support_is_field) {
        const Residue inv = inv_mod(av, q);
        res.surviving.reserve(support.size());
        for (Residue e : support) res.surviving.push_back(mul_mod(sub_mod(bv, e, q), inv, q));
        std::sort(res.surviving.begin(), res.surviving.end());
        res.all_of_field = false;
      }
    } else {
      std::erase_if(res.surviving,
                    [&](Residue g) { return !accept(sub_mod(bv, mul_mod(g, av, q), q)); });
    }
    if (!res.all_of_field && res.surviving.empty()) break;
  }
  res.verdict = (res.all_of_field || !res.surviving.empty()) ? Verdict::kValid : Verdict::kUniform;
  return res;
}

double log_geometric_ratio(double log_a, std::uint64_t k) {
  // log((A^{2k} - 1) / (A^2 - 1)) = 2(k-1) log A + log((1 - A^{-2k}) / (1 - A^{-2}))
  const double inv2 = std::exp(-2 * log_a);
  const double tail = std::log1p(-std::exp(-2.0 * static_cast<double>(k) * log_a)) -
                      std::log1p(-inv2);
  return 2.0 * static_cast<double>(k - 1) * log_a + tail;
}

// P(0 <= X <= x) for X ~ N(0, s^2), computed from erf.
double half_mass(double x, double s) { return 0.5 * std::erf(x / (s * std::numbers::sqrt2)); }

std::vector<double> log_binomial_pmf(std::uint64_t m, double p) {
  std::vector<double> out(m + 1);
  const double lp = std::log(p), lq = std::log1p(-p);
  const double lgm = std::lgamma(static_cast<double>(m) + 1);
  for (std::uint64_t k = 0; k <= m; ++k) {
    const double kd = static_cast<double>(k);
    out[k] = lgm - std::lgamma(kd + 1) - std::lgamma(static_cast<double>(m - k) + 1) +
             (p > 0 ? kd * lp : (k == 0 ? 0.0 : -INFINITY)) +
             (p < 1 ? static_cast<double>(m - k) * lq : (k == m ? 0.0 : -INFINITY));
  }
  return out;
}

// Upper tail P(X >= k) for X ~ Bin(m, 1/2).
double binomial_half_upper(std::int64_t k, std::uint64_t m) {
  if (k <= 0) return 1.0;
  if (static_cast<std::uint64_t>(k) > m) return 0.0;
  if (static_cast<double>(m) <= kExactBinomialLimit) {
    const auto pmf = log_binomial_pmf(m, 0.5);
    double s = 0;
    for (std::uint64_t j = static_cast<std::uint64_t>(k); j <= m; ++j) s += std::exp(pmf[j]);
    return std::min(1.0, s);
  }
  const double mean = static_cast<double>(m) / 2, sd = std::sqrt(static_cast<double>(m)) / 2;
  return 0.5 * std::erfc((static_cast<double>(k) - 0.5 - mean) / (sd * std::numbers::sqrt2));
}

template <class Fn>
void parallel_ranges(unsigned workers, std::uint64_t total, Fn fn) {
  workers = std::max(1u, workers);
  if (workers == 1 || total < 4096) {
    fn(0, total, 0u);
    return;
  }
  std::vector<std::thread> pool;
  const std::uint64_t chunk = (total + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t lo = w * chunk, hi = std::min(total, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back(fn, lo, hi, w);
  }
  for (auto& t : pool) t.join();
}

}  // namespace

const char* to_string(Verdict v) { return v == Verdict::kValid ? "valid" : "uniform"; }

std::int64_t default_threshold(std::size_t n, const GaussianSpec& spec) {
  return static_cast<std::int64_t>(n) * spec.bound();
}

EliminationResult attack_alpha_one(const SampleBatch& batch, Residue alpha,
                                   std::int64_t threshold_t) {
  require_root(batch, alpha);
  if (threshold_t < 0) throw InputError("threshold must be nonnegative");
  const std::uint64_t q = batch.ring->modulus();
  const bool whole = 2 * static_cast<std::uint64_t>(threshold_t) + 1 >= q;
  std::vector<Residue> support;
  if (!whole) {
    for (std::int64_t e = -threshold_t; e <= threshold_t; ++e) support.push_back(reduce_signed(e, q));
  }
  return eliminate(batch, alpha, support, whole, [&](Residue e) {
    if (whole) return true;
    const std::int64_t m = minimal_residue(e, q);
    return m <= threshold_t && m >= -threshold_t;
  });
}

bool ValueSet::contains(Residue v) const {
  return std::binary_search(values.begin(), values.end(), v);
}

ValueSet build_value_set(Residue alpha, std::uint64_t r, std::vector<std::int64_t> class_bounds,
                         const PrimeModulus& q) {
  if (r == 0) throw InputError("order must be positive");
  if (class_bounds.size() != r) throw InputError("need one bound per residue class");
  if (pow_mod(alpha % q, r, q) != 1) {
    throw PreconditionError("alpha^r is not 1 mod q (order mismatch)");
  }
  double product = 1;
  for (std::int64_t b : class_bounds) {
    if (b < 0) throw InputError("class bound must be nonnegative");
    product *= 2.0 * static_cast<double>(b) + 1.0;
  }
  if (product > static_cast<double>(kValueSetBudget)) {
    throw CapacityError("value set would need " + std::to_string(product) +
                            " combinations (budget 1e8)",
                        "residue");
  }
  ValueSet vs;
  vs.alpha = alpha % q;
  vs.r = r;
  vs.bound_B = *std::max_element(class_bounds.begin(), class_bounds.end());
  std::vector<Residue> cur{0};
  Residue w = 1;
  for (std::uint64_t j = 0; j < r; ++j) {
    const std::int64_t b = class_bounds[j];
    std::vector<Residue> next;
    next.reserve(std::min<std::uint64_t>(q, cur.size() * (2 * b + 1)));
    for (std::int64_t s = -b; s <= b; ++s) {
      const Residue shift = mul_mod(w, reduce_signed(s, q), q);
      for (Residue c : cur) next.push_back(add_mod(c, shift, q));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    cur = std::move(next);
    w = mul_mod(w, vs.alpha, q);
  }
  vs.class_bounds = std::move(class_bounds);
  vs.values = std::move(cur);
  return vs;
}

ValueSet build_value_set(Residue alpha, std::uint64_t r, std::int64_t bound_B,
                         const PrimeModulus& q) {
  return build_value_set(alpha, r, std::vector<std::int64_t>(r, bound_B), q);
}

ValueSet build_value_set(Residue alpha, std::uint64_t r, std::size_t n, const GaussianSpec& spec,
                         const PrimeModulus& q) {
  spec.validate();
  if (r == 0) throw InputError("order must be positive");
  std::vector<std::int64_t> bounds(r);
  for (std::uint64_t j = 0; j < r; ++j) {
    const std::uint64_t size = j < n ? (n - 1 - j) / r + 1 : 0;
    bounds[j] = static_cast<std::int64_t>(size) * spec.bound();
  }
  return build_value_set(alpha, r, std::move(bounds), q);
}

EliminationResult attack_small_order(const SampleBatch& batch, const ValueSet& vset) {
  require_root(batch, vset.alpha);
  const bool whole = vset.values.size() >= batch.ring->modulus();
  return eliminate(batch, vset.alpha, vset.values, whole,
                   [&](Residue e) { return whole || vset.contains(e); });
}

const char* to_string(ResidueCase c) {
  switch (c) {
    case ResidueCase::kOne: return "one";
    case ResidueCase::kTwo: return "two";
    case ResidueCase::kThree: return "three";
  }
  return "?";
}

ResidueAttackPlan residue_advantage(std::size_t n, const PrimeModulus& q, const GaussianSpec& spec,
                                    Residue alpha, std::uint64_t r,
                                    const ResidueAdvantageOptions& options) {
  spec.validate();
  if (n == 0) throw InputError("degree must be positive");
  alpha %= q;
  if (alpha == 0) throw PreconditionError("alpha = 0 has no multiplicative order");
  ResidueAttackPlan plan;
  plan.alpha = alpha;
  plan.r = r;

  const double qd = static_cast<double>(q.value());
  const std::int64_t minimal = minimal_residue(alpha, q);
  const double rep = options.representative == Representative::kCanonical
                         ? static_cast<double>(alpha)
                         : std::abs(static_cast<double>(minimal));
  const double log_sigma = std::log(spec.sigma);
  const double nd = static_cast<double>(n);

  if (rep == 1.0) {
    plan.case_id = ResidueCase::kOne;
    plan.log_sigma_bar = log_sigma + 0.5 * std::log(nd);
  } else if (r <= options.r_max) {
    plan.case_id = ResidueCase::kTwo;
    const double classes = nd / static_cast<double>(r);
    plan.sigma_tilde = spec.sigma * std::sqrt(classes);
    plan.log_sigma_bar =
        0.5 * (std::log(classes) + 2 * log_sigma + log_geometric_ratio(std::log(rep), r));
  } else {
    plan.case_id = ResidueCase::kThree;
    plan.log_sigma_bar = 0.5 * (2 * log_sigma + log_geometric_ratio(std::log(rep), n));
  }
  plan.sigma_bar = std::exp(plan.log_sigma_bar);

  const double two_sb = 2 * plan.sigma_bar;
  plan.n_wraps = (two_sb - qd / 2) / qd;
  if (qd / 4 >= two_sb) {
    plan.epsilon = plan.raw_epsilon = 0.5;
    return plan;
  }
  if (!std::isfinite(plan.sigma_bar) || two_sb / qd > options.max_wraps) {
    plan.negligible = true;
    plan.epsilon = plan.raw_epsilon = 0.0;
    return plan;
  }
  const double sb = plan.sigma_bar;
  double good = half_mass(qd / 4, sb);
  for (double k = 0;; k += 1) {
    const double lo = 0.75 * qd + k * qd;
    if (lo >= two_sb) break;
    const double hi = std::min(1.25 * qd + k * qd, two_sb);
    good += half_mass(hi, sb) - half_mass(lo, sb);
  }
  const double p = good / half_mass(two_sb, sb);
  plan.raw_epsilon = p - 0.5;
  plan.floored = plan.raw_epsilon < 0;
  plan.epsilon = std::clamp(plan.raw_epsilon, 0.0, 0.5);
  return plan;
}

double empirical_advantage(std::size_t n, const PrimeModulus& q, const GaussianSpec& spec,
                           Residue alpha, std::size_t trials, std::uint64_t seed) {
  spec.validate();
  if (trials == 0) return 0.0;
  std::size_t hits = 0;
  for (std::size_t t = 0; t < trials; ++t) {
    Rng rng = stream_rng(seed, t);
    Residue acc = 0, w = 1;
    for (std::size_t i = 0; i < n; ++i) {
      acc = add_mod(acc, mul_mod(w, reduce_signed(sample_error_coeff(spec, rng), q), q), q);
      w = mul_mod(w, alpha % q, q);
    }
    if (in_central_quarter(acc, q)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trials) - 0.5;
}

const char* to_string(DistinguisherVerdict v) { return v == DistinguisherVerdict::kG ? "G" : "U"; }

std::uint64_t distinguisher_threshold(std::size_t ell, std::uint64_t q, double epsilon) {
  const double ld = static_cast<double>(ell);
  return static_cast<std::uint64_t>(std::ceil((ld * static_cast<double>(q) + epsilon * ld) / 2));
}

bool in_central_quarter(Residue v, std::uint64_t q) {
  const __int128 m = minimal_residue(v, q);
  return 4 * m >= -static_cast<__int128>(q) && 4 * m < static_cast<__int128>(q);
}

DistinguisherRun residue_distinguisher(const SampleBatch& batch, Residue alpha,
                                       const ResidueAttackPlan& plan,
                                       const DistinguisherOptions& options) {
  require_root(batch, alpha);
  const std::uint64_t q = batch.ring->modulus();
  if (q > options.max_q) {
    throw CapacityError("guess space of size " + std::to_string(q) +
                            " is above the desk-scale budget",
                        "scaled experiment with a smaller modulus");
  }
  DistinguisherRun run;
  run.ell = batch.samples.size();
  run.mode = options.mode;
  if (run.ell == 0) {
    run.degenerate = true;
    run.threshold_N = 0;
    run.count_C = 0;
    run.verdict = DistinguisherVerdict::kG;
    return run;
  }
  std::vector<std::pair<Residue, Residue>> evals;
  evals.reserve(run.ell);
  for (const auto& s : batch.samples) evals.emplace_back(s.a.evaluate(alpha), s.b.evaluate(alpha));

  const unsigned workers = std::max(1u, options.workers);
  if (options.mode == DistinguisherMode::kAggregate) {
    run.threshold_N = distinguisher_threshold(run.ell, q, plan.epsilon);
    std::vector<std::uint64_t> partial(workers, 0);
    parallel_ranges(workers, q, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
      std::uint64_t c = 0;
      for (std::uint64_t g = lo; g < hi; ++g) {
        for (const auto& [av, bv] : evals) {
          if (in_central_quarter(sub_mod(bv, mul_mod(g, av, q), q), q)) ++c;
        }
      }
      partial[w] = c;
    });
    for (auto c : partial) run.count_C += c;
  } else {
    run.threshold_N = distinguisher_threshold(run.ell, 1, plan.epsilon);
    std::vector<std::pair<std::uint64_t, Residue>> best(workers, {0, 0});
    parallel_ranges(workers, q, [&](std::uint64_t lo, std::uint64_t hi, unsigned w) {
      std::pair<std::uint64_t, Residue> top{0, lo};
      for (std::uint64_t g = lo; g < hi; ++g) {
        std::uint64_t c = 0;
        for (const auto& [av, bv] : evals) {
          if (in_central_quarter(sub_mod(bv, mul_mod(g, av, q), q), q)) ++c;
        }
        if (c > top.first) top = {c, g};
      }
      best[w] = top;
    });
    auto it = std::max_element(best.begin(), best.end(), [](const auto& x, const auto& y) {
      return x.first < y.first || (x.first == y.first && x.second > y.second);
    });
    run.count_C = it->first;
    run.best_guess = it->second;
  }
  run.verdict = run.count_C >= run.threshold_N ? DistinguisherVerdict::kG : DistinguisherVerdict::kU;
  return run;
}

double binomial_half_cdf(std::int64_t k, std::uint64_t m) {
  return 1.0 - binomial_half_upper(k + 1, m);
}

SuccessProbability success_probability(std::size_t ell, std::uint64_t q, double epsilon) {
  if (!(epsilon >= 0 && epsilon <= 0.5)) throw InputError("epsilon must lie in [0, 1/2]");
  if (q < 2) throw InputError("q must be at least 2");
  SuccessProbability out;
  const std::uint64_t trials = static_cast<std::uint64_t>(ell) * q;
  const std::int64_t big_n = static_cast<std::int64_t>(distinguisher_threshold(ell, q, epsilon));
  out.exact = static_cast<double>(trials) <= kExactBinomialLimit;
  out.p_given_U = 1.0 - binomial_half_upper(big_n, trials);

  // P(C >= N | G) = sum_i (1 - F(N - i - 1; lq - l, 1/2)) B(i; l, 1/2 + eps)
  const std::uint64_t rest = trials - ell;
  const auto pmf = log_binomial_pmf(ell, 0.5 + epsilon);
  if (out.exact) {
    // Suffix sums of the Bin(rest, 1/2) pmf give every needed upper tail.
    const auto rest_pmf = log_binomial_pmf(rest, 0.5);
    std::vector<double> upper(rest + 2, 0.0);
    for (std::uint64_t j = rest + 1; j-- > 0;) upper[j] = upper[j + 1] + std::exp(rest_pmf[j]);
    for (std::size_t i = 0; i <= ell; ++i) {
      const std::int64_t k = big_n - static_cast<std::int64_t>(i);
      const double tail = k <= 0 ? 1.0
                          : static_cast<std::uint64_t>(k) > rest
                              ? 0.0
                              : std::min(1.0, upper[static_cast<std::uint64_t>(k)]);
      out.p_given_G += tail * std::exp(pmf[i]);
    }
  } else {
    for (std::size_t i = 0; i <= ell; ++i) {
      out.p_given_G +=
          binomial_half_upper(big_n - static_cast<std::int64_t>(i), rest) * std::exp(pmf[i]);
    }
  }
  out.overall = (out.p_given_U + out.p_given_G) / 2;
  return out;
}

SmearingResult check_smearing_box(std::size_t n, std::int64_t lo, std::int64_t hi, Residue alpha,
                                  const PrimeModulus& q, std::uint64_t budget) {
  if (lo > hi) throw InputError("empty coefficient range");
  if (q.value() > (1ULL << 32)) throw CapacityError("image bitmap above 2^32 entries", "sampled smearing check");
  alpha %= q;
  const std::uint64_t qv = q.value();
  const std::uint64_t width = static_cast<std::uint64_t>(hi - lo) + 1;
  std::vector<char> cur(qv, 0), next(qv, 0);
  cur[0] = 1;
  std::uint64_t size = 1, work = 0;
  Residue w = 1;
  for (std::size_t j = 0; j < n && size < qv; ++j) {
    std::fill(next.begin(), next.end(), 0);
    std::uint64_t next_size = 0;
    const std::uint64_t steps = std::min(width, qv);
    work += size * steps;
    if (work > budget) throw CapacityError("smearing enumeration budget exceeded", "sampled smearing check");
    for (std::uint64_t c = 0; c < qv; ++c) {
      if (!cur[c]) continue;
      Residue v = add_mod(c, mul_mod(w, reduce_signed(lo, qv), qv), qv);
      for (std::uint64_t s = 0; s < steps; ++s) {
        if (!next[v]) {
          next[v] = 1;
          ++next_size;
        }
        v = add_mod(v, w, qv);
      }
    }
    std::swap(cur, next);
    size = next_size;
    w = mul_mod(w, alpha, qv);
  }
  return {size == qv, size, false, 0};
}

SmearingResult check_smearing(const std::vector<ResiduePolynomial>& set, Residue alpha) {
  if (set.empty()) return {false, 0, false, 0};
  const std::uint64_t q = set.front().ring().modulus();
  std::vector<Residue> image;
  image.reserve(set.size());
  for (const auto& p : set) image.push_back(p.evaluate(alpha));
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  return {image.size() == q, image.size(), false, 0};
}

SmearingResult check_smearing_sampled(const std::function<ResiduePolynomial(Rng&)>& generator,
                                      Residue alpha, const PrimeModulus& q, std::uint64_t seed,
                                      std::uint64_t max_draws) {
  const double qd = static_cast<double>(q.value());
  const double horizon = qd * (std::log(qd) + 10.0);
  if (horizon > static_cast<double>(max_draws)) {
    throw CapacityError("coupon-collector horizon exceeds the draw budget", "smaller modulus");
  }
  const auto limit = static_cast<std::uint64_t>(std::ceil(horizon));
  std::vector<char> seen(q.value(), 0);
  SmearingResult res;
  res.sampled = true;
  Rng rng = stream_rng(seed, 0);
  while (res.draws < limit && res.image_size < q.value()) {
    const Residue v = generator(rng).evaluate(alpha);
    ++res.draws;
    if (!seen[v]) {
      seen[v] = 1;
      ++res.image_size;
    }
  }
  res.smears = res.image_size == q.value();
  return res;
}

}  // namespace plwe
