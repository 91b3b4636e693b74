#include "multipeak/coversystem.hpp"

#include <sstream>

#include "multipeak/errors.hpp"

namespace multipeak {

namespace {

// g^groups with saturation, for the witness-search guard.
std::uint64_t pow_saturating(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

// Backtracking over one set per group; selections whose union stops being
// disjoint are pruned, so this only walks a fraction of the g^G space.
bool find_cover(const CoverSystem& cover, std::size_t group,
                ItemSet& acc, std::vector<std::size_t>& pick) {
  if (group == cover.groups.size()) return acc.count() == cover.universe_size;
  for (std::size_t i = 0; i < cover.groups[group].size(); ++i) {
    const ItemSet& candidate = cover.groups[group][i];
    if (acc.intersects(candidate)) continue;
    ItemSet next = acc | candidate;
    pick.push_back(i);
    if (find_cover(cover, group + 1, next, pick)) return true;
    pick.pop_back();
  }
  return false;
}

}  // namespace

std::string CoverValidationReport::describe() const {
  std::ostringstream out;
  out << (passed() ? "cover system valid" : "cover system INVALID");
  if (first_issue) out << ": " << *first_issue;
  out << " (max pairwise intersection " << max_intersection << ")";
  if (cover_witness) {
    out << "; disjoint cover witness found";
  } else if (witness_search_skipped) {
    out << "; cover witness search skipped (guard)";
  } else {
    out << "; no disjoint cover exists";
  }
  return out.str();
}

CoverValidationReport validate_cover_system(const CoverSystem& cover,
                                            std::uint64_t witness_guard) {
  if (cover.universe_size == 0 || cover.groups.empty()) {
    throw ValidationError("cover system needs a nonempty universe and at least one group");
  }
  CoverValidationReport report;
  auto note = [&report](const std::string& msg) {
    if (!report.first_issue) report.first_issue = msg;
  };

  std::vector<std::size_t> degree(cover.universe_size, 0);
  std::vector<const ItemSet*> all;
  for (std::size_t g = 0; g < cover.groups.size(); ++g) {
    if (cover.groups[g].size() != cover.g) {
      report.group_sizes_ok = false;
      note("group " + std::to_string(g) + " has " +
           std::to_string(cover.groups[g].size()) + " sets, expected " +
           std::to_string(cover.g));
    }
    for (const ItemSet& set : cover.groups[g]) {
      if (set.universe() != cover.universe_size) {
        throw ValidationError("cover set universe mismatch in group " + std::to_string(g));
      }
      if (set.count() != cover.s) {
        report.set_sizes_ok = false;
        note("set of size " + std::to_string(set.count()) + " in group " +
             std::to_string(g) + ", expected " + std::to_string(cover.s));
      }
      set.for_each([&degree](std::size_t item) { ++degree[item]; });
      all.push_back(&set);
    }
  }

  for (std::size_t e = 0; e < degree.size(); ++e) {
    if (degree[e] != cover.d) {
      report.degrees_ok = false;
      note("element " + std::to_string(e) + " covered " + std::to_string(degree[e]) +
           " times, expected " + std::to_string(cover.d));
      break;
    }
  }

  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = i + 1; j < all.size(); ++j) {
      std::size_t inter = all[i]->intersect_count(*all[j]);
      report.max_intersection = std::max(report.max_intersection, inter);
    }
  }
  if (Rational(static_cast<long>(report.max_intersection)) > cover.intersection_bound) {
    report.intersections_ok = false;
    note("pairwise intersection " + std::to_string(report.max_intersection) +
         " exceeds bound " + format_rational(cover.intersection_bound));
  }

  std::uint64_t space = pow_saturating(cover.g, cover.groups.size(), witness_guard);
  if (space > witness_guard) {
    report.witness_search_skipped = true;
  } else {
    ItemSet acc(cover.universe_size);
    std::vector<std::size_t> pick;
    pick.reserve(cover.groups.size());
    if (find_cover(cover, 0, acc, pick)) report.cover_witness = pick;
  }
  return report;
}

WellStructuredCollection collection_from_cover(const CoverSystem& cover) {
  WellStructuredCollection out;
  out.m = cover.universe_size;
  out.k = cover.groups.size();
  out.s = cover.s;
  out.b = cover.intersection_bound;
  out.groups = cover.groups;
  return out;
}

}  // namespace multipeak
