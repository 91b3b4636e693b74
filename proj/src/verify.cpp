#include "multipeak/verify.hpp"

#include <algorithm>
#include <cmath>

#include "multipeak/continuous.hpp"
#include "multipeak/errors.hpp"
#include "multipeak/parallel.hpp"
#include "multipeak/rng.hpp"

namespace multipeak {

namespace {

ItemSet set_from_mask(std::size_t m, std::uint64_t mask) {
  ItemSet s(m);
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    s.add(static_cast<std::size_t>(bit));
    mask &= mask - 1;
  }
  return s;
}

ItemSet random_set(std::size_t m, SplitMix64& rng) {
  ItemSet s(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (rng.next() & 1u) s.add(i);
  }
  return s;
}

std::vector<Rational> value_table(const SetFunction& f, std::size_t m) {
  const std::uint64_t size = std::uint64_t{1} << m;
  std::vector<Rational> table(size);
  run_chunked(size, default_worker_count() * 4,
              [&](unsigned, std::uint64_t begin, std::uint64_t end) {
                for (std::uint64_t mask = begin; mask < end; ++mask) {
                  table[mask] = f(set_from_mask(m, mask));
                }
              });
  return table;
}

std::string set_to_string(const ItemSet& s) {
  std::string out = "{";
  bool first = true;
  s.for_each([&](std::size_t i) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  });
  return out + "}";
}

}  // namespace

std::string MonotoneReport::describe() const {
  if (passed) {
    return "monotone: ok (" + std::to_string(cases_checked) + " cases, " +
           (exhaustive ? "exhaustive" : "sampled") + ")";
  }
  return "monotone: FAILED at S = " + set_to_string(*violating_set) +
         ", item " + std::to_string(*violating_item);
}

MonotoneReport check_monotone(const SetFunction& f, std::size_t m,
                              std::uint64_t samples, std::uint64_t seed) {
  MonotoneReport report;
  if (m <= kExhaustiveLimit) {
    report.exhaustive = true;
    const auto table = value_table(f, m);
    const std::uint64_t size = std::uint64_t{1} << m;
    // Lowest (mask, item) violation wins so the answer is deterministic.
    struct Hit {
      std::uint64_t mask;
      std::size_t item;
    };
    std::vector<std::optional<Hit>> hits(default_worker_count() * 4);
    std::vector<std::uint64_t> counts(hits.size(), 0);
    run_chunked(size, static_cast<unsigned>(hits.size()),
                [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
                  for (std::uint64_t mask = begin; mask < end; ++mask) {
                    for (std::size_t i = 0; i < m; ++i) {
                      if (mask & (std::uint64_t{1} << i)) continue;
                      ++counts[chunk];
                      if (table[mask | (std::uint64_t{1} << i)] < table[mask]) {
                        if (!hits[chunk]) hits[chunk] = Hit{mask, i};
                      }
                    }
                    if (hits[chunk]) return;
                  }
                });
    for (std::uint64_t c : counts) report.cases_checked += c;
    for (const auto& hit : hits) {
      if (hit) {
        report.passed = false;
        report.violating_set = set_from_mask(m, hit->mask);
        report.violating_item = hit->item;
        break;
      }
    }
    return report;
  }

  SplitMix64 rng(stream_seed(seed, m));
  for (std::uint64_t t = 0; t < samples; ++t) {
    ItemSet s = random_set(m, rng);
    const std::size_t item = static_cast<std::size_t>(rng.next_below(m));
    if (s.contains(item)) s.remove(item);
    ItemSet grown = s;
    grown.add(item);
    ++report.cases_checked;
    if (f(grown) < f(s)) {
      report.passed = false;
      report.violating_set = s;
      report.violating_item = item;
      return report;
    }
  }
  return report;
}

MonotoneReport check_monotone(const MultiPeakValuation& v,
                              std::uint64_t samples, std::uint64_t seed) {
  return check_monotone([&v](const ItemSet& s) { return v.eval(s); },
                        v.ground_size(), samples, seed);
}

std::string SubmodularReport::describe() const {
  if (passed) {
    return "submodular: ok (" + std::to_string(cases_checked) + " cases, " +
           (exhaustive ? "exhaustive" : "sampled") + ")";
  }
  return "submodular: FAILED at S = " + set_to_string(*violating_set) +
         ", items " + std::to_string(*violating_first) + ", " +
         std::to_string(*violating_second);
}

SubmodularReport check_submodular(const SetFunction& f, std::size_t m,
                                  std::uint64_t samples, std::uint64_t seed) {
  SubmodularReport report;
  if (m <= kExhaustiveLimit) {
    report.exhaustive = true;
    const auto table = value_table(f, m);
    const std::uint64_t size = std::uint64_t{1} << m;
    struct Hit {
      std::uint64_t mask;
      std::size_t i, j;
    };
    std::vector<std::optional<Hit>> hits(default_worker_count() * 4);
    std::vector<std::uint64_t> counts(hits.size(), 0);
    run_chunked(size, static_cast<unsigned>(hits.size()),
                [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
                  for (std::uint64_t mask = begin; mask < end; ++mask) {
                    for (std::size_t i = 0; i + 1 < m; ++i) {
                      const std::uint64_t bi = std::uint64_t{1} << i;
                      if (mask & bi) continue;
                      for (std::size_t j = i + 1; j < m; ++j) {
                        const std::uint64_t bj = std::uint64_t{1} << j;
                        if (mask & bj) continue;
                        ++counts[chunk];
                        if (table[mask | bi | bj] + table[mask] >
                            table[mask | bi] + table[mask | bj]) {
                          if (!hits[chunk]) hits[chunk] = Hit{mask, i, j};
                        }
                      }
                      if (hits[chunk]) return;
                    }
                    if (hits[chunk]) return;
                  }
                });
    for (std::uint64_t c : counts) report.cases_checked += c;
    for (const auto& hit : hits) {
      if (hit) {
        report.passed = false;
        report.violating_set = set_from_mask(m, hit->mask);
        report.violating_first = hit->i;
        report.violating_second = hit->j;
        break;
      }
    }
    return report;
  }

  SplitMix64 rng(stream_seed(seed, m));
  for (std::uint64_t t = 0; t < samples; ++t) {
    ItemSet s = random_set(m, rng);
    std::size_t i = static_cast<std::size_t>(rng.next_below(m));
    std::size_t j = static_cast<std::size_t>(rng.next_below(m));
    if (i == j) continue;
    if (s.contains(i)) s.remove(i);
    if (s.contains(j)) s.remove(j);
    ItemSet si = s, sj = s, sij = s;
    si.add(i);
    sj.add(j);
    sij.add(i);
    sij.add(j);
    ++report.cases_checked;
    if (f(sij) + f(s) > f(si) + f(sj)) {
      report.passed = false;
      report.violating_set = s;
      report.violating_first = i;
      report.violating_second = j;
      return report;
    }
  }
  return report;
}

SubmodularReport check_submodular(const MultiPeakValuation& v,
                                  std::uint64_t samples, std::uint64_t seed) {
  return check_submodular([&v](const ItemSet& s) { return v.eval(s); },
                          v.ground_size(), samples, seed);
}

std::string UniquenessReport::describe() const {
  if (passed) return "close-peak uniqueness: ok (" + std::to_string(trials) + " trials)";
  return "close-peak uniqueness: FAILED at S = " + set_to_string(*violating_set) +
         ", peaks " + std::to_string(*first_peak) + " and " +
         std::to_string(*second_peak);
}

UniquenessReport check_close_peak_unique(const MultiPeakValuation& v,
                                         std::uint64_t trials,
                                         std::uint64_t seed) {
  UniquenessReport report;
  const auto& peaks = v.family().peaks;
  const std::size_t m = v.ground_size();

  const auto probe = [&](const ItemSet& s) -> bool {
    std::optional<std::size_t> found;
    for (std::size_t p = 0; p < peaks.size(); ++p) {
      if (v.close_to(s, p)) {
        if (found) {
          report.passed = false;
          report.violating_set = s;
          report.first_peak = *found;
          report.second_peak = p;
          return true;
        }
        found = p;
      }
    }
    return false;
  };

  SplitMix64 rng(stream_seed(seed, m, peaks.size()));
  for (std::uint64_t t = 0; t < trials; ++t) {
    ++report.trials;
    ItemSet s(m);
    if (peaks.size() >= 2 && t % 2 == 0) {
      // Half the budget goes to the only place a violation can hide:
      // subsets concentrated on the union of two peaks.
      const std::size_t p = static_cast<std::size_t>(rng.next_below(peaks.size()));
      std::size_t q = static_cast<std::size_t>(rng.next_below(peaks.size()));
      if (q == p) q = (q + 1) % peaks.size();
      const ItemSet universe = peaks[p] | peaks[q];
      universe.for_each([&](std::size_t i) {
        if (rng.next() % 4 != 0) s.add(i);  // dense subsets stay close
      });
    } else {
      s = random_set(m, rng);
    }
    if (probe(s)) return report;
  }
  return report;
}

std::string BoundaryReport::describe() const {
  std::string out = passed ? "boundary agreement: ok" : "boundary agreement: FAILED";
  out += " (max value dev " + std::to_string(max_value_deviation) +
         ", max gradient dev " + std::to_string(max_gradient_deviation) + ")";
  if (!note.empty()) out += " [" + note + "]";
  return out;
}

BoundaryReport boundary_agreement_check(const MultiPeakValuation& v,
                                        std::size_t peak_index,
                                        const BoundaryOptions& opt) {
  if (peak_index >= v.family().peaks.size()) {
    throw ValidationError("peak index outside the family");
  }
  BoundaryReport report;
  const std::size_t m = v.ground_size();
  const ItemSet& peak = v.family().peaks[peak_index];
  const double a = to_double(v.a());
  const double b = to_double(v.b());

  std::vector<char> effective(m, 0);
  if (v.support()) {
    v.support()->for_each([&](std::size_t i) { effective[i] = 1; });
  } else {
    std::fill(effective.begin(), effective.end(), 1);
  }
  std::vector<char> inside(m, 0);
  peak.for_each([&](std::size_t i) { inside[i] = 1; });

  // Signed distance to the region boundary; affine in x.
  const auto margin = [&](const std::vector<double>& x) {
    double g = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!effective[i]) continue;
      g += inside[i] ? x[i] : -x[i];
    }
    return g;
  };

  // Branch values recomputed from the raw formulas so that the probe points
  // may step slightly outside the cube during differencing.
  const auto base_value = [&](const std::vector<double>& x) {
    double total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (effective[i]) total += x[i];
    }
    const double lin = std::max(0.0, 1.0 - a * total);
    return 1.0 - lin * lin;
  };
  const auto peak_value = [&](const std::vector<double>& x) {
    double in = 0.0, total = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (!effective[i]) continue;
      total += x[i];
      if (inside[i]) in += x[i];
    }
    const double out = total - in;
    const double in_term = std::max(0.0, 1.0 - a * (2 * in - (b + opt.b_skew)));
    const double out_term = std::max(0.0, 1.0 - a * (2 * out + b));
    return 1.0 - in_term * out_term;
  };

  const double peak_margin = static_cast<double>(peak.count());
  if (peak_margin <= b) {
    report.note = "peak region is empty (|A| <= b); nothing to check";
    return report;
  }

  SplitMix64 rng(stream_seed(opt.seed, peak_index, m));
  std::vector<double> point(m, 0.0);
  std::vector<double> probe(m, 0.0);
  for (int trial = 0; trial < opt.trials; ++trial) {
    // One endpoint inside the region, one outside, then the exact affine
    // crossing between them. The indicator of A is always inside; the zero
    // point (margin 0 <= b) is the outside fallback.
    std::vector<double> far_end(m, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      if (effective[i]) far_end[i] = rng.next_unit();
    }
    if (margin(far_end) > b) {
      for (std::size_t i = 0; i < m; ++i) far_end[i] = 0.0;
    }
    std::vector<double> near_end(m, 0.0);
    // Peak coordinates drawn high enough that the inner endpoint is
    // guaranteed past the threshold: lo·|A| > b.
    const double lo = std::max(0.75, 0.5 * (1.0 + b / peak_margin));
    peak.for_each([&](std::size_t i) {
      near_end[i] = lo + (1.0 - lo) * rng.next_unit();
    });
    const double g_near = margin(near_end);
    const double g_far = margin(far_end);
    if (g_near <= b) continue;  // randomized inner point fell short; skip
    const double t = (b - g_far) / (g_near - g_far);
    for (std::size_t i = 0; i < m; ++i) {
      point[i] = (1.0 - t) * far_end[i] + t * near_end[i];
    }

    ++report.points_checked;
    const double dv = std::abs(peak_value(point) - base_value(point));
    report.max_value_deviation = std::max(report.max_value_deviation, dv);

    probe = point;
    for (std::size_t i = 0; i < m; ++i) {
      if (!effective[i]) continue;
      probe[i] = point[i] + opt.step;
      const double peak_hi = peak_value(probe), base_hi = base_value(probe);
      probe[i] = point[i] - opt.step;
      const double peak_lo = peak_value(probe), base_lo = base_value(probe);
      probe[i] = point[i];
      const double d_peak = (peak_hi - peak_lo) / (2 * opt.step);
      const double d_base = (base_hi - base_lo) / (2 * opt.step);
      report.max_gradient_deviation =
          std::max(report.max_gradient_deviation, std::abs(d_peak - d_base));
    }
  }

  if (report.points_checked == 0) {
    report.note = "no boundary points sampled";
  }
  report.passed = report.max_value_deviation <= opt.tol_value &&
                  report.max_gradient_deviation <= opt.tol_gradient;
  return report;
}

}  // namespace multipeak
