#include "plwe/serialize.h"

#include <cmath>
#include <sstream>

#include "plwe/error.h"

namespace plwe {

namespace {

mpz_class integer_from_json(const Json& v) {
  if (v.is_string()) {
    mpz_class z;
    if (z.set_str(v.get<std::string>(), 10) != 0) {
      throw InputError("not a decimal integer: " + v.get<std::string>());
    }
    return z;
  }
  if (v.is_number_unsigned()) return mpz_class(std::to_string(v.get<std::uint64_t>()));
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<std::int64_t>()));
  throw InputError("expected an integer");
}

std::uint64_t u64_from_json(const Json& v) {
  const mpz_class z = integer_from_json(v);
  if (z < 0 || !z.fits_ulong_p()) throw InputError("value out of the 64-bit range");
  return z.get_ui();
}

const Json& field(const Json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) throw InputError(std::string("missing field \"") + name + "\"");
  return j.at(name);
}

std::vector<Residue> residues_from_json(const Json& arr, std::uint64_t q, std::size_t n) {
  if (!arr.is_array() || arr.size() != n) {
    throw InputError("expected " + std::to_string(n) + " coefficients");
  }
  std::vector<Residue> out;
  out.reserve(n);
  for (const auto& v : arr) {
    const std::uint64_t x = u64_from_json(v);
    if (x >= q) throw InputError("coefficient not reduced mod q");
    out.push_back(x);
  }
  return out;
}

Json root_finding_to_json(const RootFinding& r) {
  return Json{{"alpha", r.alpha}, {"minimal", r.minimal}, {"order", r.order}, {"epsilon", r.epsilon}};
}

}  // namespace

void require_schema(const Json& j) {
  if (!j.is_object()) throw InputError("expected a JSON object");
  if (j.contains("schema") && j.at("schema") != kSchemaVersion) {
    throw InputError("unsupported schema version " + j.at("schema").dump());
  }
}

Json poly_to_json(const IntPolynomial& f) {
  Json arr = Json::array();
  for (const auto& c : f.coefficients()) arr.push_back(c.get_str());
  return arr;
}

IntPolynomial poly_from_json(const Json& j) {
  if (j.is_string()) return IntPolynomial::parse(j.get<std::string>());
  if (!j.is_array()) throw InputError("polynomial must be an array or an expression string");
  std::vector<mpz_class> c;
  for (const auto& v : j) c.push_back(integer_from_json(v));
  return IntPolynomial(std::move(c));
}

Json ring_to_json(const RingSpec& ring) {
  return Json{{"schema", kSchemaVersion},
              {"f", poly_to_json(ring.f())},
              {"f_text", ring.f().to_string()},
              {"q", ring.modulus()},
              {"roots", ring.roots()}};
}

RingPtr ring_from_json(const Json& j, IrreducibilityPolicy policy) {
  require_schema(j);
  IntPolynomial f = poly_from_json(field(j, "f"));
  PrimeModulus q(u64_from_json(field(j, "q")));
  if (j.contains("roots")) {
    std::vector<Residue> roots;
    for (const auto& v : j.at("roots")) roots.push_back(u64_from_json(v));
    return RingSpec::from_parts(std::move(f), q, std::move(roots), policy);
  }
  return RingSpec::create(std::move(f), q, policy);
}

Json instance_to_json(const VulnerableInstance& inst) {
  Json j{{"schema", kSchemaVersion},
         {"f", poly_to_json(inst.f)},
         {"q", inst.q.value()},
         {"roots", inst.split_roots},
         {"a", inst.a},
         {"r", inst.r},
         {"i", inst.i_used},
         {"size_relaxed", inst.size_relaxed},
         {"fallback", inst.fallback}};
  return j;
}

VulnerableInstance instance_from_json(const Json& j) {
  require_schema(j);
  VulnerableInstance inst{poly_from_json(field(j, "f")), PrimeModulus(u64_from_json(field(j, "q"))),
                          u64_from_json(field(j, "a")), u64_from_json(field(j, "r")),
                          u64_from_json(field(j, "i")), {}, false, false};
  if (j.contains("roots")) {
    for (const auto& v : j.at("roots")) inst.split_roots.push_back(u64_from_json(v));
  }
  inst.size_relaxed = j.value("size_relaxed", false);
  inst.fallback = j.value("fallback", false);
  return inst;
}

Json batch_to_json(const SampleBatch& batch) {
  Json samples = Json::array();
  for (const auto& s : batch.samples) {
    samples.push_back(Json{{"a", s.a.coefficients()}, {"b", s.b.coefficients()}});
  }
  Json ring = ring_to_json(*batch.ring);
  ring.erase("schema");
  return Json{{"schema", kSchemaVersion},
              {"ring", std::move(ring)},
              {"seed", batch.seed},
              {"provenance", to_string(batch.provenance)},
              {"error_model", batch.error_model},
              {"samples", std::move(samples)}};
}

SampleBatch batch_from_json(const Json& j) {
  require_schema(j);
  SampleBatch batch;
  batch.ring = ring_from_json(field(j, "ring"), IrreducibilityPolicy::kTrust);
  batch.seed = j.contains("seed") ? u64_from_json(j.at("seed")) : 0;
  const std::string prov = j.value("provenance", std::string("uniform"));
  if (prov != "valid" && prov != "uniform") throw InputError("unknown provenance " + prov);
  batch.provenance = prov == "valid" ? Provenance::kValid : Provenance::kUniform;
  batch.error_model = j.value("error_model", std::string());
  const std::uint64_t q = batch.ring->modulus();
  const std::size_t n = batch.ring->degree();
  const Json& samples = field(j, "samples");
  if (!samples.is_array()) throw InputError("\"samples\" must be an array");
  for (const auto& s : samples) {
    batch.samples.push_back({ResiduePolynomial(batch.ring, residues_from_json(field(s, "a"), q, n)),
                             ResiduePolynomial(batch.ring, residues_from_json(field(s, "b"), q, n))});
  }
  return batch;
}

std::string batch_to_csv(const SampleBatch& batch) {
  std::ostringstream out;
  const std::size_t n = batch.ring->degree();
  for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << 'a' << i;
  for (std::size_t i = 0; i < n; ++i) out << ",b" << i;
  out << '\n';
  for (const auto& s : batch.samples) {
    for (std::size_t i = 0; i < n; ++i) out << (i ? "," : "") << s.a.coefficients()[i];
    for (std::size_t i = 0; i < n; ++i) out << ',' << s.b.coefficients()[i];
    out << '\n';
  }
  return out.str();
}

Json embedding_to_json(const EmbeddingReport& rep) {
  return Json{{"schema", kSchemaVersion},
              {"f", poly_to_json(rep.f)},
              {"s1", rep.s1},
              {"s2", rep.s2},
              {"spectral_norm", rep.spectral_norm},
              {"inverse_spectral_norm", rep.inverse_spectral_norm},
              {"abs_det", rep.abs_det},
              {"log_abs_det", rep.log_abs_det},
              {"distortion", rep.distortion},
              {"forward_distortion", rep.forward_distortion},
              {"mahler", rep.mahler},
              {"condition_number", rep.condition_number}};
}

Json elimination_to_json(const EliminationResult& res, const std::string& attack, std::uint64_t q,
                         double wall_time_ms) {
  Json surviving = res.all_of_field ? Json("all") : Json(res.surviving);
  return Json{{"schema", kSchemaVersion},
              {"attack", attack},
              {"verdict", to_string(res.verdict)},
              {"surviving", std::move(surviving)},
              {"surviving_count", res.surviving_count(q)},
              {"samples_consumed", res.samples_consumed},
              {"zero_evaluation_samples", res.zero_evaluation_samples},
              {"epsilon", nullptr},
              {"C", nullptr},
              {"N", nullptr},
              {"wall_time_ms", wall_time_ms}};
}

Json plan_to_json(const ResidueAttackPlan& plan) {
  return Json{{"alpha", plan.alpha},
              {"r", plan.r},
              {"case", to_string(plan.case_id)},
              {"sigma_bar", std::isfinite(plan.sigma_bar) ? Json(plan.sigma_bar) : Json(nullptr)},
              {"log2_sigma_bar", plan.log_sigma_bar / std::log(2.0)},
              {"sigma_tilde", plan.sigma_tilde},
              {"epsilon", plan.epsilon},
              {"raw_epsilon", plan.raw_epsilon},
              {"n_wraps", std::isfinite(plan.n_wraps) ? Json(plan.n_wraps) : Json(nullptr)},
              {"floored", plan.floored},
              {"negligible", plan.negligible}};
}

Json distinguisher_to_json(const DistinguisherRun& run, const ResidueAttackPlan& plan,
                           double wall_time_ms) {
  Json j{{"schema", kSchemaVersion},
         {"attack", "residue"},
         {"mode", run.mode == DistinguisherMode::kAggregate ? "aggregate" : "per-guess"},
         {"verdict", to_string(run.verdict)},
         {"surviving", run.best_guess ? Json::array({*run.best_guess}) : Json::array()},
         {"epsilon", plan.epsilon},
         {"C", run.count_C},
         {"N", run.threshold_N},
         {"ell", run.ell},
         {"degenerate", run.degenerate},
         {"plan", plan_to_json(plan)},
         {"wall_time_ms", wall_time_ms}};
  return j;
}

Json audit_to_json(const AuditReport& rep) {
  Json small_order = Json::array(), small_residue = Json::array();
  for (const auto& r : rep.small_order_roots) small_order.push_back(root_finding_to_json(r));
  for (const auto& r : rep.small_residue_roots) small_residue.push_back(root_finding_to_json(r));
  return Json{{"schema", kSchemaVersion},
              {"splits_completely", rep.splits_completely},
              {"root_one", rep.has_root_one},
              {"small_order_roots", std::move(small_order)},
              {"small_residue_roots", std::move(small_residue)},
              {"distortion", rep.distortion ? Json(*rep.distortion) : Json(nullptr)},
              {"distortion_within_cap",
               rep.distortion_within_cap ? Json(*rep.distortion_within_cap) : Json(nullptr)},
              {"distortion_note", rep.distortion_note},
              {"best_root", rep.best_root ? root_finding_to_json(*rep.best_root) : Json(nullptr)},
              {"galois", rep.galois},
              {"monogenic", rep.monogenic}};
}

Json success_to_json(const SuccessProbability& sp) {
  return Json{{"schema", kSchemaVersion},
              {"p_given_U", sp.p_given_U},
              {"p_given_G", sp.p_given_G},
              {"overall", sp.overall},
              {"method", sp.exact ? "exact binomial" : "normal approximation with continuity correction"}};
}

Json order_result_to_json(const OrderSearchResult& res) {
  return Json{{"schema", kSchemaVersion},
              {"r", res.r},
              {"q", res.q},
              {"n_rq", res.n_rq},
              {"phi_r", res.phi_r},
              {"lower_bound", res.lower_bound},
              {"is_minimal", res.is_minimal}};
}

}  // namespace plwe
