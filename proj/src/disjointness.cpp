#include "multipeak/disjointness.hpp"

#include <algorithm>
#include <cctype>

#include "multipeak/errors.hpp"
#include "multipeak/rng.hpp"

namespace multipeak {

std::string to_string(DisjointnessCase c) {
  switch (c) {
    case DisjointnessCase::Yes: return "YES";
    case DisjointnessCase::No: return "NO";
    case DisjointnessCase::Unknown: return "UNKNOWN";
  }
  return "UNKNOWN";
}

DisjointnessCase disjointness_case_from_string(const std::string& s) {
  std::string upper(s);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return std::toupper(c); });
  if (upper == "YES") return DisjointnessCase::Yes;
  if (upper == "NO") return DisjointnessCase::No;
  if (upper == "UNKNOWN") return DisjointnessCase::Unknown;
  throw ValidationError("unknown disjointness case '" + s + "'");
}

bool DisjointnessInstance::column_all_ones(std::size_t j) const {
  for (std::size_t i = 0; i < k; ++i) {
    if (!strings[i][j]) return false;
  }
  return true;
}

std::size_t DisjointnessInstance::column_sum(std::size_t j) const {
  std::size_t total = 0;
  for (std::size_t i = 0; i < k; ++i) total += strings[i][j];
  return total;
}

bool DisjointnessInstance::promise_holds() const {
  switch (tag) {
    case DisjointnessCase::Yes:
      for (std::size_t j = 0; j < t; ++j) {
        if (column_all_ones(j)) return true;
      }
      return false;
    case DisjointnessCase::No:
      for (std::size_t j = 0; j < t; ++j) {
        if (column_sum(j) > 1) return false;
      }
      return true;
    case DisjointnessCase::Unknown:
      return true;
  }
  return true;
}

DisjointnessInstance make_disjointness(std::size_t k, std::size_t t,
                                       DisjointnessCase tag,
                                       std::uint64_t seed,
                                       const Rational& density) {
  if (k == 0 || t == 0) throw ValidationError("disjointness needs k, t >= 1");
  if (density < 0 || density > 1) {
    throw ValidationError("density must lie in [0,1]");
  }
  if (tag == DisjointnessCase::Unknown) {
    throw ValidationError("generator produces YES or NO instances only");
  }

  DisjointnessInstance inst;
  inst.k = k;
  inst.t = t;
  inst.tag = tag;
  inst.seed = seed;
  inst.strings.assign(k, std::vector<std::uint8_t>(t, 0));
  const double p = to_double(density);

  if (tag == DisjointnessCase::Yes) {
    for (std::size_t j = 0; j < t; ++j) {
      SplitMix64 rng(stream_seed(seed, j));
      for (std::size_t i = 0; i < k; ++i) {
        inst.strings[i][j] = rng.next_unit() < p ? 1 : 0;
      }
    }
    SplitMix64 pick(stream_seed(seed, t, 0xA11));
    const std::size_t forced = static_cast<std::size_t>(pick.next_below(t));
    for (std::size_t i = 0; i < k; ++i) inst.strings[i][forced] = 1;
  } else {
    for (std::size_t j = 0; j < t; ++j) {
      SplitMix64 rng(stream_seed(seed, j));
      if (rng.next_unit() < p) {
        const std::size_t owner = static_cast<std::size_t>(rng.next_below(k));
        inst.strings[owner][j] = 1;
      }
    }
  }
  return inst;
}

std::string to_string(CollectionMode mode) {
  return mode == CollectionMode::PerPlayer ? "per_player" : "shared_first";
}

std::string WellStructuredCollection::ValidationReport::describe() const {
  if (passed()) {
    return "collection: ok (max within-group intersection " +
           std::to_string(max_intersection) + ")";
  }
  std::string out = "collection: INVALID;";
  if (!universe_ok) out += " wrong universe;";
  if (!set_sizes_ok) out += " set size != s;";
  if (!group_sizes_equal) out += " unequal group sizes;";
  if (!intersections_ok) out += " intersection above b;";
  if (witness) out += " witness: " + *witness;
  return out;
}

WellStructuredCollection::ValidationReport
WellStructuredCollection::validate() const {
  ValidationReport report;
  if (m != k * s) {
    report.universe_ok = false;
    report.witness = "m = " + std::to_string(m) + ", expected k*s = " +
                     std::to_string(k * s);
  }
  std::optional<std::size_t> group_size;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    if (!group_size) {
      group_size = groups[i].size();
    } else if (groups[i].size() != *group_size) {
      report.group_sizes_equal = false;
    }
    for (std::size_t x = 0; x < groups[i].size(); ++x) {
      const ItemSet& set = groups[i][x];
      if (set.universe() != m) {
        report.universe_ok = false;
        continue;
      }
      if (set.count() != s) {
        report.set_sizes_ok = false;
        if (!report.witness) {
          report.witness = "group " + std::to_string(i) + " set " +
                           std::to_string(x) + " has " +
                           std::to_string(set.count()) + " items";
        }
      }
      for (std::size_t y = x + 1; y < groups[i].size(); ++y) {
        const std::size_t inter = set.intersect_count(groups[i][y]);
        report.max_intersection = std::max(report.max_intersection, inter);
        if (Rational(static_cast<long>(inter)) > b) {
          report.intersections_ok = false;
          if (!report.witness) {
            report.witness = "group " + std::to_string(i) + " sets " +
                             std::to_string(x) + "," + std::to_string(y) +
                             " intersect in " + std::to_string(inter) +
                             " items, above b = " + format_rational(b);
          }
        }
      }
    }
  }
  return report;
}

WellStructuredCollection collection_from_disjointness(
    const PartitionFamily& fam, const DisjointnessInstance& inst,
    CollectionMode mode, const std::optional<Rational>& epsilon_override) {
  if (inst.k != fam.k) {
    throw ValidationError("player count does not match the block count");
  }
  if (inst.t != fam.t) {
    throw ValidationError("column count does not match the partition count");
  }

  WellStructuredCollection col;
  col.m = fam.universe();
  col.k = fam.k;
  col.s = fam.s;
  const Rational eps = epsilon_override.value_or(fam.epsilon);
  col.b = (1 + eps) * Rational(static_cast<long>(fam.s)) /
          Rational(static_cast<long>(fam.k));
  col.groups.assign(fam.k, {});
  for (std::size_t i = 0; i < fam.k; ++i) {
    const std::size_t block = mode == CollectionMode::PerPlayer ? i : 0;
    for (std::size_t j = 0; j < fam.t; ++j) {
      if (inst.strings[i][j]) {
        col.groups[i].push_back(fam.blocks[j][block]);
      }
    }
  }
  return col;
}

}  // namespace multipeak
