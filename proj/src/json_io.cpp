#include "multipeak/json_io.hpp"

#include <ctime>
#include <fstream>
#include <sstream>

#include "multipeak/errors.hpp"

namespace multipeak {

namespace {

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) {
    throw ValidationError(std::string("missing JSON field: ") + key);
  }
  return *it;
}

std::vector<std::size_t> indices_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ValidationError(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  out.reserve(j.size());
  for (const Json& e : j) {
    if (!e.is_number_unsigned()) {
      throw ValidationError(std::string(what) + " must hold non-negative integers");
    }
    out.push_back(e.get<std::size_t>());
  }
  return out;
}

Json itemset_to_json(const ItemSet& set) { return Json(set.to_indices()); }

ItemSet itemset_from_json(const Json& j, std::size_t universe, const char* what) {
  const auto idx = indices_from_json(j, what);
  for (std::size_t i : idx) {
    if (i >= universe) {
      throw ValidationError(std::string(what) + ": index " + std::to_string(i) +
                            " outside universe of size " + std::to_string(universe));
    }
  }
  return ItemSet::from_indices(universe, idx);
}

Json stamp(Json j, const char* type) {
  j["schema_version"] = kSchemaVersion;
  j["type"] = type;
  return j;
}

void expect_type(const Json& j, const char* type) {
  if (j.contains("type") && j.at("type") != type) {
    throw ValidationError(std::string("expected document type \"") + type +
                          "\", found \"" + j.at("type").get<std::string>() + "\"");
  }
}

}  // namespace

Json rational_to_json(const Rational& q) { return Json(format_rational(q)); }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_number_unsigned()) return Rational(static_cast<long>(j.get<std::uint64_t>()));
  throw ValidationError("rational fields must be \"p/q\" strings or integers");
}

Json valuation_to_json(const MultiPeakValuation& v) {
  Json j;
  j["m"] = v.ground_size();
  j["a"] = rational_to_json(v.a());
  j["b"] = rational_to_json(v.b());
  if (v.support()) {
    j["support"] = itemset_to_json(*v.support());
  } else {
    j["support"] = nullptr;
  }
  Json peaks = Json::array();
  for (const ItemSet& peak : v.family().peaks) peaks.push_back(itemset_to_json(peak));
  j["peaks"] = peaks;
  return stamp(std::move(j), "multipeak_valuation");
}

MultiPeakValuation valuation_from_json(const Json& j) {
  expect_type(j, "multipeak_valuation");
  if (!require(j, "m").is_number_unsigned()) {
    throw ValidationError("valuation m must be a non-negative integer");
  }
  const std::size_t m = j.at("m").get<std::size_t>();
  PeakFamily family;
  family.b = rational_from_json(require(j, "b"));
  const Json& peaks = require(j, "peaks");
  if (!peaks.is_array()) throw ValidationError("peaks must be an array");
  for (const Json& p : peaks) {
    family.peaks.push_back(itemset_from_json(p, m, "peak"));
  }
  std::optional<ItemSet> support;
  const Json& sup = require(j, "support");
  if (!sup.is_null()) support = itemset_from_json(sup, m, "support");
  return MultiPeakValuation(m, std::move(family), rational_from_json(require(j, "a")),
                            std::move(support));
}

Json partition_family_to_json(const PartitionFamily& fam) {
  Json j;
  j["k"] = fam.k;
  j["s"] = fam.s;
  j["t"] = fam.t;
  j["seed"] = fam.seed;
  j["epsilon"] = rational_to_json(fam.epsilon);
  Json blocks = Json::array();
  for (const auto& partition : fam.blocks) {
    Json row = Json::array();
    for (const ItemSet& block : partition) row.push_back(itemset_to_json(block));
    blocks.push_back(std::move(row));
  }
  j["blocks"] = blocks;
  return stamp(std::move(j), "partition_family");
}

PartitionFamily partition_family_from_json(const Json& j) {
  expect_type(j, "partition_family");
  PartitionFamily fam;
  fam.k = require(j, "k").get<std::size_t>();
  fam.s = require(j, "s").get<std::size_t>();
  fam.t = require(j, "t").get<std::size_t>();
  fam.seed = require(j, "seed").get<std::uint64_t>();
  fam.epsilon = rational_from_json(require(j, "epsilon"));
  if (fam.k < 2 || fam.s == 0) {
    throw ValidationError("partition family needs k >= 2 and s >= 1");
  }
  const Json& blocks = require(j, "blocks");
  if (!blocks.is_array() || blocks.size() != fam.t) {
    throw ValidationError("blocks must be an array of t partitions");
  }
  const std::size_t m = fam.k * fam.s;
  for (const Json& row : blocks) {
    if (!row.is_array() || row.size() != fam.k) {
      throw ValidationError("each partition must list k blocks");
    }
    std::vector<ItemSet> partition;
    for (const Json& b : row) partition.push_back(itemset_from_json(b, m, "block"));
    fam.blocks.push_back(std::move(partition));
  }
  return fam;
}

Json pairwise_report_to_json(const PairwiseReport& report) {
  Json j;
  j["max_intersection"] = report.max_intersection;
  j["bound"] = rational_to_json(report.bound);
  j["within_bound"] = report.within_bound;
  j["witness"] = Json{{"j", report.arg_j},
                      {"i", report.arg_i},
                      {"j2", report.arg_j2},
                      {"i2", report.arg_i2}};
  j["effective_epsilon"] = rational_to_json(report.effective_epsilon);
  j["pairs_checked"] = report.pairs_checked;
  j["cross_mean"] = report.cross_mean;
  j["expected_mean"] = report.expected_mean;
  j["sigma_mean"] = report.sigma_mean;
  j["mean_within_3_sigma"] = report.mean_within_3_sigma;
  j["same_partition_disjoint"] = report.same_partition_disjoint;
  j["float_precision"] = kFloatPrecision;
  return stamp(std::move(j), "pairwise_report");
}

Json union_report_to_json(const UnionBoundReport& report) {
  Json j;
  Json per_ell = Json::array();
  for (const UnionBoundEntry& e : report.per_ell) {
    per_ell.push_back(Json{{"ell", e.ell},
                           {"max_union", e.max_union},
                           {"bound_items", rational_to_json(e.bound_items)},
                           {"effective_epsilon", rational_to_json(e.effective_epsilon)},
                           {"within_bound", e.within_bound},
                           {"exhaustive", e.exhaustive},
                           {"tuples_checked", e.tuples_checked}});
  }
  j["per_ell"] = per_ell;
  j["within_bound"] = report.within_bound;
  j["effective_epsilon"] = rational_to_json(report.effective_epsilon);
  j["same_partition_epsilon_at_k"] =
      rational_to_json(report.same_partition_epsilon_at_k);
  return stamp(std::move(j), "union_bound_report");
}

Json disjointness_to_json(const DisjointnessInstance& inst) {
  Json j;
  j["k"] = inst.k;
  j["t"] = inst.t;
  j["tag"] = to_string(inst.tag);
  j["seed"] = inst.seed;
  Json strings = Json::array();
  for (const auto& row : inst.strings) {
    std::string bits(row.size(), '0');
    for (std::size_t i = 0; i < row.size(); ++i) bits[i] = row[i] ? '1' : '0';
    strings.push_back(std::move(bits));
  }
  j["strings"] = strings;
  return stamp(std::move(j), "disjointness_instance");
}

DisjointnessInstance disjointness_from_json(const Json& j) {
  expect_type(j, "disjointness_instance");
  DisjointnessInstance inst;
  inst.k = require(j, "k").get<std::size_t>();
  inst.t = require(j, "t").get<std::size_t>();
  inst.tag = disjointness_case_from_string(require(j, "tag").get<std::string>());
  inst.seed = require(j, "seed").get<std::uint64_t>();
  const Json& strings = require(j, "strings");
  if (!strings.is_array() || strings.size() != inst.k) {
    throw ValidationError("strings must list k bitstrings");
  }
  for (const Json& row : strings) {
    const std::string bits = row.get<std::string>();
    if (bits.size() != inst.t) {
      throw ValidationError("each bitstring must have t characters");
    }
    std::vector<std::uint8_t> decoded(inst.t, 0);
    for (std::size_t i = 0; i < inst.t; ++i) {
      if (bits[i] != '0' && bits[i] != '1') {
        throw ValidationError("bitstrings may only contain 0/1");
      }
      decoded[i] = bits[i] == '1' ? 1 : 0;
    }
    inst.strings.push_back(std::move(decoded));
  }
  return inst;
}

Json cover_system_to_json(const CoverSystem& cover) {
  Json j;
  j["universe_size"] = cover.universe_size;
  j["s"] = cover.s;
  j["g"] = cover.g;
  j["d"] = cover.d;
  j["intersection_bound"] = rational_to_json(cover.intersection_bound);
  Json groups = Json::array();
  for (const auto& group : cover.groups) {
    Json row = Json::array();
    for (const ItemSet& set : group) row.push_back(itemset_to_json(set));
    groups.push_back(std::move(row));
  }
  j["groups"] = groups;
  return stamp(std::move(j), "cover_system");
}

CoverSystem cover_system_from_json(const Json& j) {
  expect_type(j, "cover_system");
  CoverSystem cover;
  cover.universe_size = require(j, "universe_size").get<std::size_t>();
  cover.s = require(j, "s").get<std::size_t>();
  cover.g = require(j, "g").get<std::size_t>();
  cover.d = require(j, "d").get<std::size_t>();
  cover.intersection_bound = rational_from_json(require(j, "intersection_bound"));
  const Json& groups = require(j, "groups");
  if (!groups.is_array() || groups.empty()) {
    throw ValidationError("cover system needs a non-empty groups array");
  }
  for (const Json& row : groups) {
    if (!row.is_array()) throw ValidationError("each group must be an array of sets");
    std::vector<ItemSet> group;
    for (const Json& set : row) {
      group.push_back(itemset_from_json(set, cover.universe_size, "cover set"));
    }
    cover.groups.push_back(std::move(group));
  }
  return cover;
}

Json cover_report_to_json(const CoverValidationReport& report) {
  Json j;
  j["set_sizes_ok"] = report.set_sizes_ok;
  j["group_sizes_ok"] = report.group_sizes_ok;
  j["degrees_ok"] = report.degrees_ok;
  j["intersections_ok"] = report.intersections_ok;
  j["max_intersection"] = report.max_intersection;
  j["passed"] = report.passed();
  if (report.first_issue) {
    j["first_issue"] = *report.first_issue;
  } else {
    j["first_issue"] = nullptr;
  }
  if (report.cover_witness) {
    j["cover_witness"] = *report.cover_witness;
  } else {
    j["cover_witness"] = nullptr;
  }
  j["witness_search_skipped"] = report.witness_search_skipped;
  return stamp(std::move(j), "cover_report");
}

Json instance_to_json(const AuctionInstance& inst) {
  Json j;
  j["m"] = inst.m;
  j["objective"] = to_string(inst.objective);
  if (inst.objective == Objective::Cpp) j["cpp_cardinality"] = inst.cpp_cardinality;
  Json valuations = Json::array();
  for (const auto& v : inst.valuations) valuations.push_back(valuation_to_json(v));
  j["valuations"] = valuations;
  j["provenance"] = Json{{"source", inst.provenance.source},
                         {"k", inst.provenance.k},
                         {"s", inst.provenance.s},
                         {"a", rational_to_json(inst.provenance.a)},
                         {"b", rational_to_json(inst.provenance.b)},
                         {"alpha", rational_to_json(inst.provenance.alpha)},
                         {"beta", rational_to_json(inst.provenance.beta)},
                         {"epsilon", rational_to_json(inst.provenance.epsilon)}};
  return stamp(std::move(j), "auction_instance");
}

AuctionInstance instance_from_json(const Json& j) {
  expect_type(j, "auction_instance");
  AuctionInstance inst;
  inst.m = require(j, "m").get<std::size_t>();
  inst.objective = objective_from_string(require(j, "objective").get<std::string>());
  if (inst.objective == Objective::Cpp) {
    inst.cpp_cardinality = require(j, "cpp_cardinality").get<std::size_t>();
    if (inst.cpp_cardinality > inst.m) {
      throw ValidationError("cpp_cardinality exceeds ground set size");
    }
  }
  const Json& valuations = require(j, "valuations");
  if (!valuations.is_array()) throw ValidationError("valuations must be an array");
  for (const Json& v : valuations) {
    inst.valuations.push_back(valuation_from_json(v));
    if (inst.valuations.back().ground_size() != inst.m) {
      throw ValidationError("valuation ground set differs from instance m");
    }
  }
  const Json& prov = require(j, "provenance");
  inst.provenance.source = require(prov, "source").get<std::string>();
  inst.provenance.k = require(prov, "k").get<std::size_t>();
  inst.provenance.s = require(prov, "s").get<std::size_t>();
  inst.provenance.a = rational_from_json(require(prov, "a"));
  inst.provenance.b = rational_from_json(require(prov, "b"));
  inst.provenance.alpha = rational_from_json(require(prov, "alpha"));
  inst.provenance.beta = rational_from_json(require(prov, "beta"));
  inst.provenance.epsilon = rational_from_json(require(prov, "epsilon"));
  return inst;
}

Json solve_result_to_json(const SolveResult& result) {
  Json j;
  j["solver"] = result.solver;
  j["value"] = rational_to_json(result.value);
  if (result.allocation) {
    Json bundles = Json::array();
    for (const ItemSet& b : result.allocation->bundles) {
      bundles.push_back(itemset_to_json(b));
    }
    j["allocation"] = bundles;
  } else {
    j["allocation"] = nullptr;
  }
  if (result.chosen_set) {
    j["chosen_set"] = itemset_to_json(*result.chosen_set);
  } else {
    j["chosen_set"] = nullptr;
  }
  j["nodes"] = result.nodes;
  j["wall_ms"] = result.wall_ms;
  j["float_precision"] = kFloatPrecision;
  return stamp(std::move(j), "solve_result");
}

Json demand_result_to_json(const DemandResult& result) {
  Json j;
  j["bundle"] = itemset_to_json(result.bundle);
  j["utility"] = rational_to_json(result.utility);
  j["value"] = rational_to_json(result.value);
  j["price"] = rational_to_json(result.price);
  j["candidates"] = result.candidates;
  return stamp(std::move(j), "demand_result");
}

Json gap_report_to_json(const GapReport& report) {
  Json j;
  j["yes_value"] = rational_to_json(report.yes_value);
  j["no_bound"] = rational_to_json(report.no_bound);
  j["ratio"] = rational_to_json(report.ratio);
  j["target"] = to_string(report.target);
  j["target_value"] = report.target_value;
  j["deviation"] = report.deviation;
  j["parameters"] = report.parameters;
  j["epsilon"] = rational_to_json(report.epsilon);
  j["float_precision"] = kFloatPrecision;
  return stamp(std::move(j), "gap_report");
}

Json profile_to_json(const NormalizedProfile& profile) {
  Json j;
  Json entries = Json::array();
  for (const auto& e : profile.entries) {
    Json row{{"x", rational_to_json(e.x)},
             {"y", rational_to_json(e.y)},
             {"player", e.player}};
    if (e.peak) {
      row["peak"] = *e.peak;
    } else {
      row["peak"] = nullptr;
    }
    entries.push_back(std::move(row));
  }
  j["entries"] = entries;
  j["alpha"] = rational_to_json(profile.alpha);
  j["beta"] = rational_to_json(profile.beta);
  j["epsilon"] = rational_to_json(profile.epsilon);
  if (profile.kstar) {
    j["kstar"] = *profile.kstar;
  } else {
    j["kstar"] = nullptr;
  }
  if (profile.y_star) {
    j["y_star"] = rational_to_json(*profile.y_star);
  } else {
    j["y_star"] = nullptr;
  }
  if (profile.checked) {
    j["constraints"] = Json{{"sorted_ok", profile.checked->sorted_ok},
                            {"budget_ok", profile.checked->budget_ok},
                            {"prefix_ok", profile.checked->prefix_ok},
                            {"detail", profile.checked->detail}};
  } else {
    j["constraints"] = nullptr;
  }
  return stamp(std::move(j), "normalized_profile");
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return Json::parse(buffer.str());
  } catch (const Json::parse_error& err) {
    throw ValidationError("malformed JSON in " + path + ": " + err.what());
  }
}

void write_json_file(const std::string& path, Json doc, bool with_timestamp) {
  if (with_timestamp) {
    std::time_t now = std::time(nullptr);
    char stampbuf[32];
    std::tm parts{};
    gmtime_r(&now, &parts);
    std::strftime(stampbuf, sizeof(stampbuf), "%Y-%m-%dT%H:%M:%SZ", &parts);
    doc["generated_at"] = stampbuf;
  }
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << doc.dump(2) << '\n';
  if (!out) throw ValidationError("write failed: " + path);
}

}  // namespace multipeak
