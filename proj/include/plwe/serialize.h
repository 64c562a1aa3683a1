#pragma once

// JSON and CSV forms of rings, instances, batches and reports. Every
// top-level document carries "schema": 1.

#include <string>

#include <json.hpp>

#include "plwe/attacks.h"
#include "plwe/geometry.h"
#include "plwe/paramgen.h"
#include "plwe/ring.h"
#include "plwe/sampling.h"

namespace plwe {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

Json poly_to_json(const IntPolynomial& f);
// Accepts an array of integers / decimal strings or an inline expression.
IntPolynomial poly_from_json(const Json& j);

Json ring_to_json(const RingSpec& ring);
// "roots" is optional; when present it is validated, otherwise recomputed.
RingPtr ring_from_json(const Json& j,
                       IrreducibilityPolicy policy = IrreducibilityPolicy::kRejectComposite);

Json instance_to_json(const VulnerableInstance& inst);
VulnerableInstance instance_from_json(const Json& j);

Json batch_to_json(const SampleBatch& batch);
SampleBatch batch_from_json(const Json& j);
// Header a0..a{n-1},b0..b{n-1}; one row per sample.
std::string batch_to_csv(const SampleBatch& batch);

Json embedding_to_json(const EmbeddingReport& rep);

Json elimination_to_json(const EliminationResult& res, const std::string& attack, std::uint64_t q,
                         double wall_time_ms);
Json distinguisher_to_json(const DistinguisherRun& run, const ResidueAttackPlan& plan,
                           double wall_time_ms);
Json plan_to_json(const ResidueAttackPlan& plan);
Json audit_to_json(const AuditReport& rep);
Json success_to_json(const SuccessProbability& sp);
Json order_result_to_json(const OrderSearchResult& res);

// Any document: checks the schema field and throws InputError on mismatch.
void require_schema(const Json& j);

}  // namespace plwe
