#pragma once

#include <string>

#include <json.hpp>

#include "multipeak/coversystem.hpp"
#include "multipeak/disjointness.hpp"
#include "multipeak/formulas.hpp"
#include "multipeak/instance.hpp"
#include "multipeak/setsystem.hpp"
#include "multipeak/solvers.hpp"
#include "multipeak/valuation.hpp"

// JSON interchange. Every document carries schema_version and a type tag;
// rationals are always "p/q" strings so files round-trip without float
// drift; floating-point fields are flagged by a float_precision marker.

namespace multipeak {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;
inline constexpr const char* kFloatPrecision = "ieee754-double";

Json rational_to_json(const Rational& q);
Rational rational_from_json(const Json& j);

Json valuation_to_json(const MultiPeakValuation& v);
MultiPeakValuation valuation_from_json(const Json& j);

Json partition_family_to_json(const PartitionFamily& fam);
PartitionFamily partition_family_from_json(const Json& j);
Json pairwise_report_to_json(const PairwiseReport& report);
Json union_report_to_json(const UnionBoundReport& report);

Json disjointness_to_json(const DisjointnessInstance& inst);
DisjointnessInstance disjointness_from_json(const Json& j);

Json cover_system_to_json(const CoverSystem& cover);
/// Parses and structurally checks an externally supplied cover document.
CoverSystem cover_system_from_json(const Json& j);
Json cover_report_to_json(const CoverValidationReport& report);

Json instance_to_json(const AuctionInstance& inst);
AuctionInstance instance_from_json(const Json& j);

Json solve_result_to_json(const SolveResult& result);
Json demand_result_to_json(const DemandResult& result);
Json gap_report_to_json(const GapReport& report);
Json profile_to_json(const NormalizedProfile& profile);

/// Reads and parses; throws ValidationError on I/O or parse problems.
Json load_json_file(const std::string& path);
/// Pretty-prints to path; adds a generated_at timestamp unless suppressed.
void write_json_file(const std::string& path, Json doc, bool with_timestamp = true);

}  // namespace multipeak
