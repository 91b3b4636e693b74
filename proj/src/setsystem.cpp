#include "multipeak/setsystem.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "multipeak/errors.hpp"
#include "multipeak/rng.hpp"

namespace multipeak {

PartitionFamily generate_partition_family(std::size_t k, std::size_t s,
                                          std::size_t t, Rational epsilon,
                                          std::uint64_t seed) {
  if (k < 2 || s == 0) {
    throw ValidationError("partition family needs k >= 2 and s >= 1");
  }
  if (epsilon < 0) throw ValidationError("epsilon must be nonnegative");

  PartitionFamily fam;
  fam.k = k;
  fam.s = s;
  fam.t = t;
  fam.seed = seed;
  fam.epsilon = std::move(epsilon);
  const std::size_t m = k * s;
  fam.blocks.assign(t, std::vector<ItemSet>(k, ItemSet(m)));

  std::vector<std::size_t> perm(k);
  for (std::size_t j = 0; j < t; ++j) {
    for (std::size_t r = 0; r < s; ++r) {
      std::iota(perm.begin(), perm.end(), std::size_t{0});
      SplitMix64 rng(stream_seed(seed, j, r));
      shuffle(std::span<std::size_t>(perm), rng);
      for (std::size_t i = 0; i < k; ++i) {
        fam.blocks[j][i].add(r * k + perm[i]);
      }
    }
  }
  return fam;
}

std::string PairwiseReport::describe() const {
  std::string out = "pairwise: max |C ∩ C'| = " + std::to_string(max_intersection) +
                    " at (" + std::to_string(arg_j) + "," + std::to_string(arg_i) +
                    ")x(" + std::to_string(arg_j2) + "," + std::to_string(arg_i2) +
                    "), bound " + format_rational(bound) +
                    (within_bound ? " (ok)" : " (EXCEEDED)");
  out += "; effective epsilon " + format_rational(effective_epsilon);
  out += "; cross-partition mean " + std::to_string(cross_mean) + " vs " +
         std::to_string(expected_mean) +
         (mean_within_3_sigma ? " (within 3 sigma)" : " (OUTSIDE 3 sigma)");
  if (!same_partition_disjoint) out += "; same-partition blocks NOT disjoint";
  return out;
}

PairwiseReport verify_pairwise(const PartitionFamily& fam) {
  PairwiseReport report;
  report.bound = fam.pairwise_bound();
  report.expected_mean =
      static_cast<double>(fam.s) / static_cast<double>(fam.k);

  std::uint64_t cross_pairs = 0;
  std::uint64_t cross_total = 0;
  bool have_witness = false;

  for (std::size_t j = 0; j < fam.t; ++j) {
    for (std::size_t i = 0; i < fam.k; ++i) {
      for (std::size_t j2 = j; j2 < fam.t; ++j2) {
        for (std::size_t i2 = (j2 == j ? i + 1 : 0); i2 < fam.k; ++i2) {
          const std::size_t inter =
              fam.blocks[j][i].intersect_count(fam.blocks[j2][i2]);
          ++report.pairs_checked;
          if (j2 == j) {
            if (inter != 0) report.same_partition_disjoint = false;
          } else {
            ++cross_pairs;
            cross_total += inter;
          }
          if (!have_witness || inter > report.max_intersection) {
            have_witness = true;
            report.max_intersection = inter;
            report.arg_j = j;
            report.arg_i = i;
            report.arg_j2 = j2;
            report.arg_i2 = i2;
          }
        }
      }
    }
  }

  report.within_bound =
      Rational(static_cast<long>(report.max_intersection)) <= report.bound;
  report.effective_epsilon = clamp_nonneg(
      Rational(static_cast<long>(fam.k * report.max_intersection)) /
          Rational(static_cast<long>(fam.s)) -
      1);

  if (cross_pairs > 0) {
    report.cross_mean =
        static_cast<double>(cross_total) / static_cast<double>(cross_pairs);
    const double p = 1.0 / static_cast<double>(fam.k);
    const double var_single = static_cast<double>(fam.s) * p * (1.0 - p);
    report.sigma_mean = std::sqrt(var_single / static_cast<double>(cross_pairs));
    report.mean_within_3_sigma =
        std::abs(report.cross_mean - report.expected_mean) <=
        3.0 * report.sigma_mean;
  } else {
    report.cross_mean = report.expected_mean;
    report.sigma_mean = 0.0;
    report.mean_within_3_sigma = true;
  }
  return report;
}

std::string UnionBoundReport::describe() const {
  std::string out = "union bounds:";
  for (const auto& e : per_ell) {
    out += " ell=" + std::to_string(e.ell) + " max " +
           std::to_string(e.max_union) + "/" + format_rational(e.bound_items) +
           (e.within_bound ? " ok" : " EXCEEDED") +
           (e.exhaustive ? " (exhaustive)" : " (sampled)") + ";";
  }
  out += " mixed-tuple effective epsilon " + format_rational(effective_epsilon);
  out += "; same-partition full union at ell=k needs epsilon >= " +
         format_rational(same_partition_epsilon_at_k);
  return out;
}

UnionBoundReport verify_union_bounds(const PartitionFamily& fam,
                                     std::size_t ell_max,
                                     std::uint64_t samples, std::uint64_t seed,
                                     std::uint64_t max_exhaustive) {
  UnionBoundReport report;
  report.effective_epsilon = Rational(0);
  const std::size_t k = fam.k;
  const std::size_t m = fam.universe();
  ell_max = std::min(ell_max, k);
  const Rational q = Rational(static_cast<long>(k) - 1, static_cast<long>(k));
  report.same_partition_epsilon_at_k =
      rational_pow(q, static_cast<unsigned long>(k));
  if (fam.t == 0) return report;  // no blocks, nothing to bound

  for (std::size_t ell = 1; ell <= ell_max; ++ell) {
    UnionBoundEntry entry;
    entry.ell = ell;
    const Rational coverage = 1 - rational_pow(q, static_cast<unsigned long>(ell));
    entry.bound_items =
        (coverage + fam.epsilon) * Rational(static_cast<long>(m));

    // Count the tuples: C(k, ell) index subsets times t^ell partitions.
    double tuple_count = 1.0;
    for (std::size_t i = 0; i < ell; ++i) {
      tuple_count *= static_cast<double>(k - i) / static_cast<double>(i + 1);
      tuple_count *= static_cast<double>(fam.t);
    }
    entry.exhaustive = tuple_count <= static_cast<double>(max_exhaustive);

    ItemSet acc(m);
    const auto consider = [&](const std::vector<std::size_t>& idx,
                              const std::vector<std::size_t>& parts) {
      if (ell >= 2) {
        bool all_same = true;
        for (std::size_t r = 1; r < ell; ++r) {
          if (parts[r] != parts[0]) { all_same = false; break; }
        }
        if (all_same) return;  // mixed-partition tuples only
      }
      acc = fam.blocks[parts[0]][idx[0]];
      for (std::size_t r = 1; r < ell; ++r) {
        acc = acc | fam.blocks[parts[r]][idx[r]];
      }
      const std::size_t u = acc.count();
      ++entry.tuples_checked;
      if (u > entry.max_union) entry.max_union = u;
    };

    if (entry.exhaustive) {
      std::vector<std::size_t> idx(ell);
      std::iota(idx.begin(), idx.end(), std::size_t{0});
      std::vector<std::size_t> parts(ell, 0);
      for (;;) {
        // All partition assignments for the current index subset.
        std::fill(parts.begin(), parts.end(), 0);
        for (;;) {
          consider(idx, parts);
          std::size_t pos = ell;
          while (pos > 0 && parts[pos - 1] + 1 == fam.t) --pos;
          if (pos == 0) break;
          ++parts[pos - 1];
          std::fill(parts.begin() + pos, parts.end(), 0);
        }
        // Next combination of block indices.
        std::size_t pos = ell;
        while (pos > 0 && idx[pos - 1] == k - ell + pos - 1) --pos;
        if (pos == 0) break;
        ++idx[pos - 1];
        for (std::size_t r = pos; r < ell; ++r) idx[r] = idx[r - 1] + 1;
      }
    } else {
      SplitMix64 rng(stream_seed(seed, ell));
      std::vector<std::size_t> pool(k);
      std::vector<std::size_t> idx(ell), parts(ell);
      for (std::uint64_t trial = 0; trial < samples; ++trial) {
        std::iota(pool.begin(), pool.end(), std::size_t{0});
        for (std::size_t r = 0; r < ell; ++r) {
          const std::size_t pick =
              r + static_cast<std::size_t>(rng.next_below(k - r));
          std::swap(pool[r], pool[pick]);
          idx[r] = pool[r];
        }
        std::sort(idx.begin(), idx.end());
        bool all_same = true;
        for (std::size_t r = 0; r < ell; ++r) {
          parts[r] = static_cast<std::size_t>(rng.next_below(fam.t));
          if (r > 0 && parts[r] != parts[0]) all_same = false;
        }
        if (ell >= 2 && fam.t > 1 && all_same) {
          parts[ell - 1] = (parts[ell - 1] + 1 +
                            static_cast<std::size_t>(rng.next_below(fam.t - 1))) %
                           fam.t;
        }
        consider(idx, parts);
      }
    }

    if (entry.tuples_checked > 0) {
      entry.effective_epsilon = clamp_nonneg(
          Rational(static_cast<long>(entry.max_union)) /
              Rational(static_cast<long>(m)) -
          coverage);
    } else {
      entry.effective_epsilon = Rational(0);
    }
    entry.within_bound =
        Rational(static_cast<long>(entry.max_union)) <= entry.bound_items;
    if (!entry.within_bound) report.within_bound = false;
    if (entry.effective_epsilon > report.effective_epsilon) {
      report.effective_epsilon = entry.effective_epsilon;
    }
    report.per_ell.push_back(std::move(entry));
  }
  return report;
}

Rational effective_epsilon(const PairwiseReport& pairwise,
                           const UnionBoundReport& unions) {
  return std::max(pairwise.effective_epsilon, unions.effective_epsilon);
}

}  // namespace multipeak
