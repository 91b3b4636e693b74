#include "multipeak/instance.hpp"

#include <algorithm>
#include <sstream>

#include "multipeak/errors.hpp"

namespace multipeak {

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::Welfare: return "welfare";
    case Objective::MaxMin: return "maxmin";
    case Objective::Cpp: return "cpp";
  }
  return "?";
}

Objective objective_from_string(const std::string& name) {
  if (name == "welfare") return Objective::Welfare;
  if (name == "maxmin") return Objective::MaxMin;
  if (name == "cpp") return Objective::Cpp;
  throw ValidationError("unknown objective: " + name);
}

void Allocation::validate_for(const AuctionInstance& inst) const {
  if (bundles.size() != inst.players()) {
    throw ValidationError("allocation has " + std::to_string(bundles.size()) +
                          " bundles for " + std::to_string(inst.players()) + " players");
  }
  for (const ItemSet& bundle : bundles) {
    if (bundle.universe() != inst.m) {
      throw ValidationError("allocation bundle universe mismatch");
    }
  }
  for (std::size_t i = 0; i < bundles.size(); ++i) {
    for (std::size_t j = i + 1; j < bundles.size(); ++j) {
      if (bundles[i].intersects(bundles[j])) {
        throw ValidationError("bundles " + std::to_string(i) + " and " +
                              std::to_string(j) + " overlap");
      }
    }
  }
}

namespace {

AuctionInstance build_common(const WellStructuredCollection& col, const Rational& a,
                             const Rational& b, const InstanceOptions& opts,
                             Objective objective) {
  // Group sizes may differ (bitstring weights do); only the properties the
  // valuation semantics rely on are enforced here.
  auto structure = col.validate();
  if (!structure.universe_ok || !structure.set_sizes_ok) {
    throw ValidationError("collection rejected: " + structure.describe());
  }
  // Each player's family must be b-intersecting for the supplied b (which may
  // be tighter than the bound the collection was built against).
  for (std::size_t g = 0; g < col.groups.size(); ++g) {
    const auto& group = col.groups[g];
    for (std::size_t i = 0; i < group.size(); ++i) {
      for (std::size_t j = i + 1; j < group.size(); ++j) {
        std::size_t inter = group[i].intersect_count(group[j]);
        if (Rational(static_cast<long>(inter)) > b) {
          throw ValidationError(
              "group " + std::to_string(g) + " sets " + std::to_string(i) + "," +
              std::to_string(j) + " intersect in " + std::to_string(inter) +
              " items > b = " + format_rational(b));
        }
      }
    }
  }

  AuctionInstance inst;
  inst.m = col.m;
  inst.objective = objective;
  inst.valuations.reserve(col.groups.size());
  for (const auto& group : col.groups) {
    PeakFamily family{group, b};
    std::optional<ItemSet> support;
    if (opts.restrict_support) {
      ItemSet u(col.m);
      for (const ItemSet& peak : group) u = u | peak;
      support = u;
    }
    inst.valuations.emplace_back(col.m, family, a, support);
  }
  inst.provenance.source = opts.source;
  inst.provenance.k = col.k;
  inst.provenance.s = col.s;
  inst.provenance.a = a;
  inst.provenance.b = b;
  inst.provenance.alpha = a * Rational(static_cast<long>(col.s));
  inst.provenance.beta = col.s == 0 ? Rational(0) : b / Rational(static_cast<long>(col.s));
  inst.provenance.epsilon = opts.epsilon;
  return inst;
}

}  // namespace

AuctionInstance build_welfare_instance(const WellStructuredCollection& col,
                                       const Rational& a, const Rational& b,
                                       InstanceOptions opts) {
  return build_common(col, a, b, opts, Objective::Welfare);
}

AuctionInstance build_maxmin_instance(const WellStructuredCollection& col,
                                      const Rational& a, const Rational& b,
                                      InstanceOptions opts) {
  return build_common(col, a, b, opts, Objective::MaxMin);
}

AuctionInstance build_cpp_instance(const WellStructuredCollection& col,
                                   const Rational& a, const Rational& b,
                                   std::size_t cardinality, InstanceOptions opts) {
  if (cardinality > col.m) {
    throw ValidationError("cpp cardinality " + std::to_string(cardinality) +
                          " exceeds ground set size " + std::to_string(col.m));
  }
  AuctionInstance inst = build_common(col, a, b, opts, Objective::Cpp);
  inst.cpp_cardinality = cardinality;
  return inst;
}

NormalizedProfile::ConstraintReport NormalizedProfile::check_constraints() const {
  ConstraintReport report;
  std::ostringstream detail;
  const std::size_t k = entries.size();
  for (std::size_t i = 0; i + 1 < k; ++i) {
    if (entries[i].x < entries[i + 1].x) {
      report.sorted_ok = false;
      detail << "x not sorted at rows " << i << "," << i + 1 << "; ";
      break;
    }
  }
  Rational total = 0;
  for (const Entry& e : entries) total += e.x + e.y;
  if (total > Rational(static_cast<long>(k))) {
    report.budget_ok = false;
    detail << "mass " << format_rational(total) << " exceeds k; ";
  }
  if (k > 0) {
    const Rational q = 1 - Rational(1, static_cast<long>(k));
    Rational q_pow = 1;
    Rational prefix = 0;
    for (std::size_t ell = 1; ell <= k; ++ell) {
      q_pow *= q;
      prefix += entries[ell - 1].x;
      Rational cap = (1 - q_pow + epsilon) * Rational(static_cast<long>(k));
      if (prefix > cap) {
        report.prefix_ok = false;
        detail << "prefix " << ell << " mass " << format_rational(prefix)
               << " exceeds cap " << format_rational(cap) << "; ";
        break;
      }
    }
  }
  report.detail = detail.str();
  return report;
}

NormalizedProfile normalized_profile_from_allocation(const AuctionInstance& inst,
                                                     const Allocation& alloc) {
  alloc.validate_for(inst);
  if (inst.provenance.s == 0) {
    throw ValidationError("profile extraction needs provenance with s >= 1");
  }
  const Rational s(static_cast<long>(inst.provenance.s));

  NormalizedProfile profile;
  profile.alpha = inst.provenance.alpha;
  profile.beta = inst.provenance.beta;
  profile.epsilon = inst.provenance.epsilon;
  profile.entries.reserve(inst.players());
  for (std::size_t p = 0; p < inst.players(); ++p) {
    const ItemSet& bundle = alloc.bundles[p];
    const auto& peaks = inst.valuations[p].family().peaks;
    NormalizedProfile::Entry entry;
    entry.player = p;
    if (peaks.empty()) {
      entry.x = 0;
      entry.y = Rational(static_cast<long>(bundle.count())) / s;
    } else {
      std::size_t best = 0;
      long best_closeness = closeness(bundle, peaks[0]);
      for (std::size_t idx = 1; idx < peaks.size(); ++idx) {
        long c = closeness(bundle, peaks[idx]);
        if (c > best_closeness) {
          best_closeness = c;
          best = idx;
        }
      }
      entry.peak = best;
      entry.x = Rational(static_cast<long>(bundle.intersect_count(peaks[best]))) / s;
      entry.y = Rational(static_cast<long>(bundle.minus_count(peaks[best]))) / s;
    }
    profile.entries.push_back(std::move(entry));
  }
  std::stable_sort(profile.entries.begin(), profile.entries.end(),
                   [](const auto& lhs, const auto& rhs) { return lhs.x > rhs.x; });
  profile.checked = profile.check_constraints();
  return profile;
}

}  // namespace multipeak
