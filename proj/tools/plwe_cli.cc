// plwe: command-line front end for parameter search, sample generation,
// attacks and geometry reports.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "plwe/attacks.h"
#include "plwe/error.h"
#include "plwe/geometry.h"
#include "plwe/paramgen.h"
#include "plwe/roots.h"
#include "plwe/sampling.h"
#include "plwe/serialize.h"

namespace {

using namespace plwe;

constexpr int kExitInput = 2;
constexpr int kExitCapacity = 3;
constexpr int kExitNumeric = 4;

const char* kLehmer = "x^10+x^9-x^7-x^6-x^5-x^4-x^3+x+1";

struct Common {
  std::uint64_t seed = 0;
  unsigned workers = std::max(1u, std::thread::hardware_concurrency());
  std::string format = "json";
  std::string out;
};

struct PolySource {
  std::string expr;
  std::string file;
  bool lehmer = false;
  unsigned cyclotomic = 0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--f", expr, "Polynomial expression, e.g. \"x^4+1\"");
    cmd->add_option("--f-file", file, "JSON file with an \"f\" field");
    cmd->add_flag("--lehmer", lehmer, "Lehmer's polynomial");
    cmd->add_option("--cyclotomic", cyclotomic, "The m-th cyclotomic polynomial");
  }

  IntPolynomial get() const {
    const int given = !expr.empty() + !file.empty() + lehmer + (cyclotomic > 0);
    if (given != 1) throw InputError("give exactly one of --f, --f-file, --lehmer, --cyclotomic");
    if (lehmer) return IntPolynomial::parse(kLehmer);
    if (cyclotomic) return cyclotomic_poly(cyclotomic);
    if (!expr.empty()) return IntPolynomial::parse(expr);
    return poly_from_json(read_json(file).at("f"));
  }

  static Json read_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    try {
      return Json::parse(in);
    } catch (const Json::parse_error& e) {
      throw InputError(path + ": " + e.what());
    }
  }
};

Json read_json(const std::string& path) { return PolySource::read_json(path); }

std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

std::string csv_field(std::string s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

std::string render(const Json& j, const std::string& format) {
  std::ostringstream out;
  if (format == "json") {
    out << j.dump(2) << '\n';
  } else if (format == "table") {
    std::size_t width = 0;
    for (const auto& [k, v] : j.items()) width = std::max(width, k.size());
    for (const auto& [k, v] : j.items()) {
      out << k << std::string(width - k.size() + 2, ' ') << scalar_text(v) << '\n';
    }
  } else {
    bool first = true;
    for (const auto& [k, v] : j.items()) {
      out << (first ? "" : ",") << csv_field(k);
      first = false;
    }
    out << '\n';
    first = true;
    for (const auto& [k, v] : j.items()) {
      out << (first ? "" : ",") << csv_field(scalar_text(v));
      first = false;
    }
    out << '\n';
  }
  return out.str();
}

void emit(const std::string& text, const Common& common) {
  if (common.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(common.out);
  if (!f) throw InputError("cannot write " + common.out);
  f << text;
}

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

RingPtr load_ring(const std::string& ring_file, const std::string& expr, std::uint64_t q) {
  if (!ring_file.empty()) return ring_from_json(read_json(ring_file));
  if (expr.empty() || q == 0) throw InputError("give --ring FILE or both --f and --q");
  return RingSpec::create(IntPolynomial::parse(expr), PrimeModulus(q));
}

// Index of the secret's stream, kept apart from the per-sample streams.
constexpr std::uint64_t kSecretStream = ~0ULL;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PLWE parameter search, sampling, attacks and geometry"};
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("--seed", common.seed, "Seed for all randomness")->default_val(0);
  app.add_option("--workers", common.workers, "Worker threads for attacks");
  app.add_option("--format", common.format, "Output format")
      ->check(CLI::IsMember({"json", "csv", "table"}));
  app.add_option("--out", common.out, "Write output to PATH instead of stdout");

  // gen
  auto* gen = app.add_subcommand("gen", "Generate a sample batch");
  std::string gen_ring, gen_f, gen_secret_out;
  std::uint64_t gen_q = 0;
  double gen_sigma = 1.0, gen_trunc = 2.0;
  std::size_t gen_count = 10;
  bool gen_uniform = false, gen_rlwe = false;
  gen->add_option("--ring,--f-file", gen_ring, "Ring or PARAMS JSON file");
  gen->add_option("--f", gen_f, "Inline polynomial (with --q)");
  gen->add_option("--q", gen_q, "Prime modulus for --f");
  gen->add_option("--sigma", gen_sigma, "Gaussian standard deviation");
  gen->add_option("--trunc", gen_trunc, "Truncation multiplier");
  gen->add_option("--count", gen_count, "Number of samples");
  gen->add_flag("--uniform", gen_uniform, "Uniform samples instead of PLWE samples");
  gen->add_flag("--rlwe", gen_rlwe, "Errors spherical in the embedding (monogenic model)");
  gen->add_option("--secret-out", gen_secret_out, "Write the secret to this JSON file");

  // attack
  auto* attack = app.add_subcommand("attack", "Run an attack on a batch");
  std::string atk_batch, atk_mode = "aggregate";
  bool atk_one = false, atk_small = false, atk_residue = false;
  std::optional<std::uint64_t> atk_alpha, atk_order;
  std::optional<std::int64_t> atk_threshold;
  std::optional<double> atk_epsilon;
  double atk_sigma = 1.0, atk_trunc = 2.0;
  std::uint64_t atk_rmax = 64;
  attack->add_option("--batch", atk_batch, "Batch JSON file")->required();
  attack->add_flag("--alpha-one", atk_one, "Elimination at alpha = 1");
  attack->add_flag("--small-order", atk_small, "Value-set elimination at a root of small order");
  attack->add_flag("--residue", atk_residue, "Statistical distinguisher");
  attack->add_option("--alpha", atk_alpha, "Root to attack");
  attack->add_option("--order", atk_order, "Order of the root (computed if omitted)");
  attack->add_option("--threshold", atk_threshold, "Elimination threshold (default n*B)");
  attack->add_option("--epsilon", atk_epsilon, "Precomputed advantage");
  attack->add_option("--sigma", atk_sigma, "Gaussian standard deviation of the errors");
  attack->add_option("--trunc", atk_trunc, "Truncation multiplier");
  attack->add_option("--r-max", atk_rmax, "Largest order treated as small");
  attack->add_option("--mode", atk_mode, "Distinguisher mode")
      ->check(CLI::IsMember({"aggregate", "per-guess"}));

  // geometry / mahler
  auto* geometry = app.add_subcommand("geometry", "Embedding report for f");
  PolySource geo_src;
  bool geo_high = false;
  geo_src.add_to(geometry);
  geometry->add_flag("--allow-high-degree", geo_high, "Lift the degree cap of 128");

  auto* mahler = app.add_subcommand("mahler", "Mahler measure of f");
  PolySource mah_src;
  bool mah_high = false;
  mah_src.add_to(mahler);
  mahler->add_flag("--allow-high-degree", mah_high, "Lift the degree cap of 128");

  // search
  auto* search = app.add_subcommand("search", "Find a vulnerable parameter set");
  unsigned s_r = 3, s_n = 16, s_q0 = 20;
  std::uint64_t s_budget = 10000;
  bool s_fallback = false;
  search->add_option("--r", s_r, "Order of the small root")->required();
  search->add_option("--n", s_n, "Degree")->required();
  search->add_option("--q0", s_q0, "Target bit size of q")->required();
  search->add_option("--i-budget", s_budget, "Largest offset multiplier tried");
  search->add_flag("--fallback", s_fallback, "Use f = (x - a)^n + q");

  // audit
  auto* audit = app.add_subcommand("audit", "Check a ring against the vulnerability conditions");
  std::string aud_ring, aud_f;
  std::uint64_t aud_q = 0;
  double aud_sigma = 8.0, aud_trunc = 2.0;
  AuditOptions aud_opts;
  audit->add_option("--ring,--f-file", aud_ring, "Ring JSON file");
  audit->add_option("--f", aud_f, "Inline polynomial (with --q)");
  audit->add_option("--q", aud_q, "Prime modulus for --f");
  audit->add_option("--sigma", aud_sigma, "Gaussian standard deviation");
  audit->add_option("--trunc", aud_trunc, "Truncation multiplier");
  audit->add_option("--r-max", aud_opts.r_max, "Largest order treated as small");
  audit->add_option("--residue-cap", aud_opts.residue_cap, "Largest |minimal residue| treated as small");
  audit->add_option("--distortion-cap", aud_opts.distortion_cap, "Distortion threshold");

  // epsilon
  auto* epsilon = app.add_subcommand("epsilon", "Advantage of the small-residue distinguisher");
  std::size_t eps_n = 0;
  std::uint64_t eps_q = 0, eps_alpha = 1, eps_rmax = 64;
  std::optional<std::uint64_t> eps_r;
  double eps_sigma = 8.0, eps_trunc = 2.0;
  std::string eps_rep = "canonical";
  std::size_t eps_trials = 0;
  epsilon->add_option("--n", eps_n, "Degree")->required();
  epsilon->add_option("--q", eps_q, "Prime modulus")->required();
  epsilon->add_option("--sigma", eps_sigma, "Gaussian standard deviation");
  epsilon->add_option("--trunc", eps_trunc, "Truncation multiplier");
  epsilon->add_option("--alpha", eps_alpha, "Root, as a residue in [0, q)");
  epsilon->add_option("--r", eps_r, "Order of alpha (computed if omitted)");
  epsilon->add_option("--r-max", eps_rmax, "Largest order treated as small");
  epsilon->add_option("--representative", eps_rep, "Integer standing for alpha")
      ->check(CLI::IsMember({"canonical", "minimal"}));
  epsilon->add_option("--empirical", eps_trials, "Also estimate epsilon from this many draws");

  // success-prob
  auto* success = app.add_subcommand("success-prob", "Success probability of the distinguisher");
  std::size_t sp_ell = 10;
  std::uint64_t sp_q = 0;
  double sp_eps = 0;
  success->add_option("--ell", sp_ell, "Number of samples")->required();
  success->add_option("--q", sp_q, "Modulus")->required();
  success->add_option("--epsilon", sp_eps, "Advantage in [0, 1/2]")->required();

  // nrq
  auto* nrq = app.add_subcommand("nrq", "Smallest residue of exact order r modulo q");
  std::uint64_t nrq_r = 3, nrq_q = 7;
  nrq->add_option("--r", nrq_r, "Order")->required();
  nrq->add_option("--q", nrq_q, "Prime modulus")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*gen) {
      const RingPtr ring = load_ring(gen_ring, gen_f, gen_q);
      const GaussianSpec spec{gen_sigma, gen_trunc};
      spec.validate();
      SampleBatch batch;
      if (gen_uniform) {
        batch = gen_uniform_batch(ring, gen_count, common.seed);
      } else {
        Rng rng = stream_rng(common.seed, kSecretStream);
        const ResiduePolynomial secret = uniform_element(ring, rng);
        if (gen_rlwe) {
          const EmbeddingReport emb = spectral_distortion(ring->f());
          batch = gen_rlwe_batch_monogenic(ring, emb, secret, gen_sigma, gen_count, common.seed);
        } else {
          batch = gen_plwe_batch(ring, secret, spec, gen_count, common.seed);
        }
        if (!gen_secret_out.empty()) {
          std::ofstream f(gen_secret_out);
          if (!f) throw InputError("cannot write " + gen_secret_out);
          const std::uint64_t q = ring->modulus();
          Json evals = Json::object();
          for (Residue r : ring->roots()) evals[std::to_string(r)] = secret.evaluate(r);
          f << Json{{"schema", kSchemaVersion}, {"secret", secret.coefficients()}, {"q", q},
                    {"evaluations", evals}}
                   .dump(2)
            << '\n';
        }
      }
      emit(common.format == "csv" ? batch_to_csv(batch) : batch_to_json(batch).dump(2) + "\n",
           common);
    } else if (*attack) {
      if (atk_one + atk_small + atk_residue != 1) {
        throw InputError("choose exactly one of --alpha-one, --small-order, --residue");
      }
      const SampleBatch batch = batch_from_json(read_json(atk_batch));
      const RingSpec& ring = *batch.ring;
      const std::uint64_t q = ring.modulus();
      const GaussianSpec spec{atk_sigma, atk_trunc};
      spec.validate();
      auto order_of = [&](Residue a) { return atk_order ? *atk_order : element_order(a, ring.q()); };
      const auto t0 = std::chrono::steady_clock::now();
      Json report;
      if (atk_one) {
        const Residue alpha = atk_alpha.value_or(1);
        const std::int64_t t = atk_threshold.value_or(default_threshold(ring.degree(), spec));
        const EliminationResult res = attack_alpha_one(batch, alpha, t);
        report = elimination_to_json(res, "alpha_one", q, elapsed_ms(t0));
      } else if (atk_small) {
        Residue alpha = 0;
        if (atk_alpha) {
          alpha = *atk_alpha;
        } else {
          for (Residue r : ring.roots()) {
            if (r > 1 && order_of(r) <= atk_rmax) {
              alpha = r;
              break;
            }
          }
          if (alpha == 0) throw PreconditionError("no root of order <= r-max; pass --alpha");
        }
        const ValueSet vs = build_value_set(alpha, order_of(alpha), ring.degree(), spec, ring.q());
        const EliminationResult res = attack_small_order(batch, vs);
        report = elimination_to_json(res, "small_order", q, elapsed_ms(t0));
        report["alpha"] = alpha;
        report["value_set_size"] = vs.values.size();
      } else {
        const Residue alpha = atk_alpha.value_or(1);
        ResidueAdvantageOptions adv;
        adv.r_max = atk_rmax;
        ResidueAttackPlan plan = residue_advantage(ring.degree(), ring.q(), spec, alpha,
                                                   order_of(alpha), adv);
        if (atk_epsilon) plan.epsilon = *atk_epsilon;
        DistinguisherOptions opts;
        opts.workers = common.workers;
        opts.mode = atk_mode == "aggregate" ? DistinguisherMode::kAggregate
                                            : DistinguisherMode::kPerGuess;
        const DistinguisherRun run = residue_distinguisher(batch, alpha, plan, opts);
        report = distinguisher_to_json(run, plan, elapsed_ms(t0));
      }
      emit(render(report, common.format), common);
    } else if (*geometry) {
      RootOptions ro;
      ro.allow_high_degree = geo_high;
      emit(render(embedding_to_json(spectral_distortion(geo_src.get(), ro)), common.format), common);
    } else if (*mahler) {
      RootOptions ro;
      ro.allow_high_degree = mah_high;
      const IntPolynomial f = mah_src.get();
      emit(render(Json{{"schema", kSchemaVersion}, {"f", poly_to_json(f)}, {"mahler", mahler_measure(f, ro)}},
                  common.format),
           common);
    } else if (*search) {
      ParamSearchOptions opts;
      opts.fallback = s_fallback;
      opts.i_budget = s_budget;
      const VulnerableInstance inst = find_vulnerable_params(s_r, s_n, s_q0, opts);
      Json j = instance_to_json(inst);
      if (common.format != "json") {
        j["f"] = inst.f.to_string();
        j.erase("roots");
      }
      emit(render(j, common.format), common);
    } else if (*audit) {
      const RingPtr ring = load_ring(aud_ring, aud_f, aud_q);
      const GaussianSpec spec{aud_sigma, aud_trunc};
      spec.validate();
      emit(render(audit_to_json(audit_conditions(*ring, spec, aud_opts)), common.format), common);
    } else if (*epsilon) {
      const PrimeModulus q(eps_q);
      const GaussianSpec spec{eps_sigma, eps_trunc};
      ResidueAdvantageOptions adv;
      adv.r_max = eps_rmax;
      adv.representative = eps_rep == "canonical" ? Representative::kCanonical : Representative::kMinimal;
      const std::uint64_t r = eps_r ? *eps_r : element_order(eps_alpha % q, q);
      Json j = plan_to_json(residue_advantage(eps_n, q, spec, eps_alpha, r, adv));
      j["schema"] = kSchemaVersion;
      if (eps_trials > 0) {
        j["empirical_epsilon"] = empirical_advantage(eps_n, q, spec, eps_alpha, eps_trials, common.seed);
        j["empirical_trials"] = eps_trials;
      }
      emit(render(j, common.format), common);
    } else if (*success) {
      emit(render(success_to_json(success_probability(sp_ell, sp_q, sp_eps)), common.format), common);
    } else if (*nrq) {
      const OrderSearchResult res = smallest_residue_of_order(nrq_r, PrimeModulus(nrq_q));
      Json j = order_result_to_json(res);
      j["bound"] = to_string(verify_nrq_bound(res));
      emit(render(j, common.format), common);
    }
  } catch (const CapacityError& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (!e.suggestion().empty()) std::cerr << "suggestion: try " << e.suggestion() << '\n';
    return kExitCapacity;
  } catch (const SearchExhausted& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const Json::exception& e) {
    std::cerr << "error: malformed input: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
