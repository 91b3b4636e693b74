#include "multipeak/solvers.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <stdexcept>

#include "multipeak/errors.hpp"
#include "multipeak/parallel.hpp"

namespace multipeak {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

std::uint64_t pow_saturating(std::uint64_t base, std::size_t exp, std::uint64_t cap) {
  std::uint64_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > cap / base) return cap + 1;
    out *= base;
  }
  return out;
}

std::uint64_t binomial_saturating(std::size_t n, std::size_t r, std::uint64_t cap) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::size_t i = 1; i <= r; ++i) {
    // out * (n - r + i) / i stays integral at every step.
    if (out > (cap + 1) / (n - r + i) * i) return cap + 1;
    out = out * (n - r + i) / i;
  }
  return out;
}

// Assignment counters are read with item 0 as the most significant digit, so
// counter order is lexicographic order of assignment vectors.
void decode_assignment(std::uint64_t index, std::size_t k,
                       std::vector<std::size_t>& digits) {
  for (std::size_t pos = digits.size(); pos-- > 0;) {
    digits[pos] = static_cast<std::size_t>(index % k);
    index /= k;
  }
}

struct ChunkBest {
  bool found = false;
  Rational value;
  std::uint64_t index = 0;
};

// Walks assignments [begin, end) keeping bundles/values incremental: one
// counter step only touches the players of the changed digits.
template <typename Score>
ChunkBest sweep_assignments(const AuctionInstance& inst, std::uint64_t begin,
                            std::uint64_t end, const Score& score) {
  const std::size_t m = inst.m;
  const std::size_t k = inst.players();
  std::vector<std::size_t> digits(m, 0);
  decode_assignment(begin, k, digits);

  std::vector<ItemSet> bundles(k, ItemSet(m));
  for (std::size_t item = 0; item < m; ++item) bundles[digits[item]].add(item);
  std::vector<Rational> values(k);
  Rational total = 0;
  for (std::size_t p = 0; p < k; ++p) {
    values[p] = inst.valuations[p].eval(bundles[p]);
    total += values[p];
  }

  ChunkBest best;
  std::vector<std::size_t> dirty;
  for (std::uint64_t index = begin; index < end; ++index) {
    Rational current = score(values, total);
    if (!best.found || current > best.value) {
      best.found = true;
      best.value = std::move(current);
      best.index = index;
    }
    if (index + 1 == end) break;

    dirty.clear();
    std::size_t pos = m;
    while (pos-- > 0) {
      const std::size_t from = digits[pos];
      const std::size_t to = (from + 1 == k) ? 0 : from + 1;
      bundles[from].remove(pos);
      bundles[to].add(pos);
      digits[pos] = to;
      dirty.push_back(from);
      dirty.push_back(to);
      if (to != 0) break;  // no carry
    }
    std::sort(dirty.begin(), dirty.end());
    dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
    for (std::size_t p : dirty) {
      total -= values[p];
      values[p] = inst.valuations[p].eval(bundles[p]);
      total += values[p];
    }
  }
  return best;
}

template <typename Score>
SolveResult solve_assignments(const AuctionInstance& inst, std::uint64_t guard,
                              unsigned workers, const Score& score,
                              const std::string& name) {
  const auto start = Clock::now();
  if (inst.players() == 0) throw ValidationError(name + " needs at least one player");
  if (inst.objective == Objective::Cpp) {
    throw ValidationError(name + " does not apply to a cpp-objective instance");
  }
  const std::size_t k = inst.players();
  const std::uint64_t space = pow_saturating(k, inst.m, guard);
  if (space > guard) {
    throw GuardExceededError(name + " enumeration", space, guard);
  }

  const unsigned chunks = space < 1024 ? 1 : 64;
  std::vector<ChunkBest> per_chunk(std::max(1u, chunks));
  run_chunked(space, chunks, [&](unsigned chunk, std::uint64_t begin, std::uint64_t end) {
    per_chunk[chunk] = sweep_assignments(inst, begin, end, score);
  }, workers);

  ChunkBest best;
  for (const ChunkBest& candidate : per_chunk) {
    if (!candidate.found) continue;
    // Chunks are scanned in counter order, so "first strict improvement"
    // keeps the lexicographically-least witness.
    if (!best.found || candidate.value > best.value) best = candidate;
  }
  if (!best.found) throw std::logic_error(name + ": empty enumeration");

  std::vector<std::size_t> digits(inst.m, 0);
  decode_assignment(best.index, k, digits);
  Allocation alloc;
  alloc.bundles.assign(k, ItemSet(inst.m));
  for (std::size_t item = 0; item < inst.m; ++item) {
    alloc.bundles.at(digits[item]).add(item);
  }
  alloc.validate_for(inst);
  std::vector<Rational> values(k);
  Rational total = 0;
  for (std::size_t p = 0; p < k; ++p) {
    values[p] = inst.valuations[p].eval(alloc.bundles[p]);
    total += values[p];
  }
  if (score(values, total) != best.value) {
    throw std::logic_error(name + ": witness re-evaluation mismatch");
  }

  SolveResult result;
  result.value = best.value;
  result.allocation = std::move(alloc);
  result.nodes = space;
  result.solver = name;
  result.wall_ms = elapsed_ms(start);
  return result;
}

Rational min_value(const std::vector<Rational>& values) {
  Rational out = values.front();
  for (const Rational& v : values) {
    if (v < out) out = v;
  }
  return out;
}

}  // namespace

void PriceVector::validate(std::size_t m) const {
  if (prices.size() != m) {
    throw ValidationError("price vector has " + std::to_string(prices.size()) +
                          " entries for " + std::to_string(m) + " items");
  }
  for (std::size_t i = 0; i < prices.size(); ++i) {
    if (prices[i] < 0) {
      throw ValidationError("negative price at item " + std::to_string(i));
    }
  }
}

Rational PriceVector::total(const ItemSet& set) const {
  Rational out = 0;
  set.for_each([&](std::size_t item) { out += prices[item]; });
  return out;
}

SolveResult brute_force_welfare(const AuctionInstance& inst, std::uint64_t guard,
                                unsigned workers) {
  return solve_assignments(
      inst, guard, workers,
      [](const std::vector<Rational>&, const Rational& total) { return total; },
      "brute_force_welfare");
}

SolveResult brute_force_maxmin(const AuctionInstance& inst, std::uint64_t guard,
                               unsigned workers) {
  return solve_assignments(
      inst, guard, workers,
      [](const std::vector<Rational>& values, const Rational&) { return min_value(values); },
      "brute_force_maxmin");
}

SolveResult brute_force_cpp(const AuctionInstance& inst, std::uint64_t guard) {
  const auto start = Clock::now();
  if (inst.objective != Objective::Cpp) {
    throw ValidationError("brute_force_cpp needs a cpp-objective instance");
  }
  if (inst.players() == 0) throw ValidationError("brute_force_cpp needs players");
  const std::size_t m = inst.m;
  const std::size_t s = inst.cpp_cardinality;
  const std::uint64_t space = binomial_saturating(m, s, guard);
  if (space > guard) throw GuardExceededError("brute_force_cpp enumeration", space, guard);

  auto total_of = [&inst](const ItemSet& set) {
    Rational total = 0;
    for (const auto& v : inst.valuations) total += v.eval(set);
    return total;
  };

  // Lexicographic enumeration of index combinations; first strict max keeps
  // the lexicographically-least witness.
  std::vector<std::size_t> comb(s);
  std::iota(comb.begin(), comb.end(), 0);
  auto next_combination = [&comb, m, s]() {
    for (std::size_t i = s; i-- > 0;) {
      if (comb[i] + 1 <= m - s + i) {
        ++comb[i];
        for (std::size_t j = i + 1; j < s; ++j) comb[j] = comb[j - 1] + 1;
        return true;
      }
    }
    return false;
  };
  std::optional<ItemSet> best_set;
  Rational best_value;
  std::uint64_t nodes = 0;
  do {
    ItemSet candidate = ItemSet::from_indices(m, comb);
    Rational value = total_of(candidate);
    ++nodes;
    if (!best_set || value > best_value) {
      best_set = std::move(candidate);
      best_value = std::move(value);
    }
  } while (next_combination());
  if (!best_set) throw std::logic_error("brute_force_cpp: empty enumeration");
  if (best_set->count() != s) throw std::logic_error("brute_force_cpp: bad witness size");
  if (total_of(*best_set) != best_value) {
    throw std::logic_error("brute_force_cpp: witness re-evaluation mismatch");
  }

  SolveResult result;
  result.value = best_value;
  result.chosen_set = std::move(best_set);
  result.nodes = nodes;
  result.solver = "brute_force_cpp";
  result.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult greedy_welfare(const AuctionInstance& inst) {
  const auto start = Clock::now();
  if (inst.players() == 0) throw ValidationError("greedy_welfare needs players");
  if (inst.objective == Objective::Cpp) {
    throw ValidationError("greedy_welfare does not apply to a cpp-objective instance");
  }
  const std::size_t k = inst.players();
  Allocation alloc;
  alloc.bundles.assign(k, ItemSet(inst.m));
  std::uint64_t nodes = 0;
  for (std::size_t item = 0; item < inst.m; ++item) {
    std::size_t best_player = 0;
    Rational best_gain;
    for (std::size_t p = 0; p < k; ++p) {
      Rational gain = inst.valuations[p].marginal(alloc.bundles[p], item);
      ++nodes;
      if (p == 0 || gain > best_gain) {
        best_gain = std::move(gain);
        best_player = p;
      }
    }
    alloc.bundles[best_player].add(item);
  }
  alloc.validate_for(inst);
  Rational value = 0;
  for (std::size_t p = 0; p < k; ++p) value += inst.valuations[p].eval(alloc.bundles[p]);

  SolveResult result;
  result.value = std::move(value);
  result.allocation = std::move(alloc);
  result.nodes = nodes;
  result.solver = "greedy_welfare";
  result.wall_ms = elapsed_ms(start);
  return result;
}

SolveResult greedy_cpp(const AuctionInstance& inst) {
  const auto start = Clock::now();
  if (inst.objective != Objective::Cpp) {
    throw ValidationError("greedy_cpp needs a cpp-objective instance");
  }
  if (inst.players() == 0) throw ValidationError("greedy_cpp needs players");
  ItemSet chosen(inst.m);
  Rational current = 0;
  std::uint64_t nodes = 0;
  for (std::size_t step = 0; step < inst.cpp_cardinality; ++step) {
    std::optional<std::size_t> best_item;
    Rational best_total;
    for (std::size_t item = 0; item < inst.m; ++item) {
      if (chosen.contains(item)) continue;
      ItemSet candidate = chosen;
      candidate.add(item);
      Rational total = 0;
      for (const auto& v : inst.valuations) total += v.eval(candidate);
      ++nodes;
      if (!best_item || total > best_total) {
        best_item = item;
        best_total = std::move(total);
      }
    }
    if (!best_item) throw std::logic_error("greedy_cpp: ran out of items");
    chosen.add(*best_item);
    current = best_total;
  }
  Rational check = 0;
  for (const auto& v : inst.valuations) check += v.eval(chosen);
  if (inst.cpp_cardinality > 0 && check != current) {
    throw std::logic_error("greedy_cpp: witness re-evaluation mismatch");
  }

  SolveResult result;
  result.value = std::move(check);
  result.chosen_set = std::move(chosen);
  result.nodes = nodes;
  result.solver = "greedy_cpp";
  result.wall_ms = elapsed_ms(start);
  return result;
}

namespace {

// Items ordered by (price, index): the prefix of length n is the unique
// cheapest size-n subset under that deterministic ordering.
std::vector<std::size_t> by_price(const ItemSet& pool, const PriceVector& p) {
  std::vector<std::size_t> order = pool.to_indices();
  std::stable_sort(order.begin(), order.end(), [&p](std::size_t a, std::size_t b) {
    if (p.prices[a] != p.prices[b]) return p.prices[a] < p.prices[b];
    return a < b;
  });
  return order;
}

}  // namespace

DemandResult demand_query(const MultiPeakValuation& v, const PriceVector& p) {
  p.validate(v.ground_size());
  const ItemSet pool = v.support() ? *v.support() : ItemSet::full(v.ground_size());

  std::optional<DemandResult> best;
  std::uint64_t candidates = 0;
  auto consider = [&](const ItemSet& bundle) {
    ++candidates;
    Rational value = v.eval(bundle);
    Rational price = p.total(bundle);
    Rational utility = value - price;
    bool better = false;
    if (!best) {
      better = true;
    } else if (utility != best->utility) {
      better = utility > best->utility;
    } else if (bundle.count() != best->bundle.count()) {
      better = bundle.count() < best->bundle.count();
    } else {
      better = ItemSet::lex_less(bundle, best->bundle);
    }
    if (better) best = DemandResult{bundle, utility, value, price, 0};
  };

  // Far candidates: cheapest n support items for every n (the far value
  // depends only on the count, so the cheapest prefix dominates).
  const std::vector<std::size_t> pool_order = by_price(pool, p);
  ItemSet prefix(v.ground_size());
  consider(prefix);
  for (std::size_t item : pool_order) {
    prefix.add(item);
    consider(prefix);
  }

  // Close candidates per peak: cheapest x inside + cheapest y outside with
  // x − y > b; any other close bundle with those counts has the same value
  // and at least that price.
  for (const ItemSet& peak : v.family().peaks) {
    const std::vector<std::size_t> inside = by_price(peak, p);
    const std::vector<std::size_t> outside = by_price(pool - peak, p);
    ItemSet in_prefix(v.ground_size());
    for (std::size_t x = 0; x <= inside.size(); ++x) {
      if (x > 0) in_prefix.add(inside[x - 1]);
      long y_hi = strict_floor(Rational(static_cast<long>(x)) - v.b());
      if (y_hi < 0) continue;
      ItemSet bundle = in_prefix;
      consider(bundle);
      const std::size_t y_max = std::min<std::size_t>(outside.size(),
                                                      static_cast<std::size_t>(y_hi));
      for (std::size_t y = 1; y <= y_max; ++y) {
        bundle.add(outside[y - 1]);
        consider(bundle);
      }
    }
  }

  best->candidates = candidates;
  return *best;
}

namespace {

// Exact maximizer of f(t) = normalized_value(xk, t) + tail·normalized_value(0,
// (r − t)/tail) over t ∈ [0, r]. f is piecewise quadratic; each piece's
// optimum is either a breakpoint or the vertex of the quadratic through three
// of its points, and every candidate is re-evaluated through f itself.
std::pair<Rational, Rational> best_extra_mass(const Rational& xk, std::size_t tail,
                                              const Rational& r, const Rational& alpha,
                                              const Rational& beta) {
  auto f = [&](const Rational& t) {
    Rational out = normalized_value(xk, t, alpha, beta);
    if (tail > 0) {
      Rational tail_q(static_cast<long>(tail));
      out += tail_q * normalized_value(Rational(0), (r - t) / tail_q, alpha, beta);
    }
    return out;
  };
  if (r == 0) return {Rational(0), f(Rational(0))};
  if (tail == 0) return {r, f(r)};  // pointwise monotone in y

  std::vector<Rational> cuts{Rational(0), r};
  auto add_cut = [&cuts, &r](const Rational& t) {
    if (t > 0 && t < r) cuts.push_back(t);
  };
  add_cut(xk - beta);                              // close/far switch
  add_cut(1 / alpha - xk);                         // far slack hits zero
  add_cut((1 / alpha - beta) / 2);                 // close outside factor hits zero
  add_cut(r - Rational(static_cast<long>(tail)) / alpha);  // tail slack hits zero
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::vector<Rational> candidates = cuts;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const Rational& lo = cuts[i];
    const Rational& hi = cuts[i + 1];
    Rational mid = (lo + hi) / 2;
    // Quadratic through (lo, mid, hi); vertex where the derivative vanishes.
    Rational f0 = f(lo), f1 = f(mid), f2 = f(hi);
    Rational d10 = (f1 - f0) / (mid - lo);
    Rational d21 = (f2 - f1) / (hi - mid);
    Rational curve = (d21 - d10) / (hi - lo);  // leading coefficient
    if (curve != 0) {
      Rational vertex = (lo + mid) / 2 - d10 / (2 * curve);
      if (vertex > lo && vertex < hi) candidates.push_back(vertex);
    }
    candidates.push_back(mid);
  }

  std::sort(candidates.begin(), candidates.end());
  Rational best_t = candidates.front();
  Rational best_f = f(best_t);
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    Rational val = f(candidates[i]);
    if (val > best_f) {
      best_f = std::move(val);
      best_t = candidates[i];
    }
  }
  return {best_t, best_f};
}

}  // namespace

StructuredNoValue structured_no_value(std::size_t k, const Rational& alpha,
                                     const Rational& beta, const Rational& eps) {
  if (k == 0) throw ValidationError("structured_no_value needs k >= 1");
  if (alpha <= 0) throw ValidationError("structured_no_value needs alpha > 0");
  if (beta < 0 || eps < 0) {
    throw ValidationError("structured_no_value needs beta, eps >= 0");
  }
  const Rational kq(static_cast<long>(k));
  const Rational x_sat = (1 + alpha * beta) / (2 * alpha);

  // Prefix caps (1 − q^ℓ + ε)k, 1-indexed.
  std::vector<Rational> caps(k + 1);
  const Rational q = 1 - Rational(1, static_cast<long>(k));
  Rational q_pow = 1;
  for (std::size_t ell = 1; ell <= k; ++ell) {
    q_pow *= q;
    caps[ell] = (1 - q_pow + eps) * kq;
  }

  StructuredNoValue result;
  bool have_best = false;
  for (std::size_t kstar = 0; kstar <= k; ++kstar) {
    std::vector<Rational> xs(k, Rational(0));
    Rational prefix = 0;
    Rational budget = kq;
    Rational prev = x_sat;
    for (std::size_t i = 1; i <= kstar; ++i) {
      Rational xi = prev;
      if (x_sat < xi) xi = x_sat;
      const Rational cap_room = caps[i] - prefix;
      if (cap_room < xi) xi = cap_room;
      if (budget < xi) xi = budget;
      if (xi < 0) xi = 0;
      xs[i - 1] = xi;
      prefix += xi;
      budget -= xi;
      prev = xi;
    }

    const std::size_t tail = k - kstar;
    Rational total = 0;
    for (std::size_t i = 0; i + 1 < kstar; ++i) {
      total += normalized_value(xs[i], Rational(0), alpha, beta);
    }
    std::vector<Rational> ys(k, Rational(0));
    Rational tail_y = 0;
    if (kstar == 0) {
      tail_y = budget / kq;
      total = kq * normalized_value(Rational(0), tail_y, alpha, beta);
    } else {
      auto [t, tail_value] = best_extra_mass(xs[kstar - 1], tail, budget, alpha, beta);
      total += tail_value;
      ys[kstar - 1] = t;
      if (tail > 0) tail_y = (budget - t) / Rational(static_cast<long>(tail));
    }
    for (std::size_t i = kstar; i < k; ++i) ys[i] = tail_y;

    result.per_kstar.emplace_back(kstar, total);
    if (!have_best || total > result.value) {
      have_best = true;
      result.value = total;
      result.profile.entries.clear();
      for (std::size_t i = 0; i < k; ++i) {
        result.profile.entries.push_back({xs[i], ys[i], i, std::nullopt});
      }
      result.profile.kstar = kstar;
      result.profile.y_star = tail_y;
    }
  }

  result.profile.alpha = alpha;
  result.profile.beta = beta;
  result.profile.epsilon = eps;
  result.profile.checked = result.profile.check_constraints();
  if (k == 2) result.closed_form = no_value_two_players(alpha, beta, eps);
  return result;
}

namespace {

struct GridState {
  std::size_t k;
  double alpha, beta, eps, h;
  long budget_units;
  std::vector<long> x_cap_units;  // prefix cap in grid units, 1-indexed
  std::vector<long> xs, ys;
  double best = 0.0;
  std::vector<long> best_xs, best_ys;
};

void grid_sweep_y(GridState& st, std::size_t i, long used) {
  if (i + 1 == st.k) {
    st.ys[i] = st.budget_units - used;  // exhaust the budget: monotone in y
    double total = 0.0;
    for (std::size_t p = 0; p < st.k; ++p) {
      total += normalized_value(st.xs[p] * st.h, st.ys[p] * st.h, st.alpha, st.beta);
    }
    if (total > st.best) {
      st.best = total;
      st.best_xs = st.xs;
      st.best_ys = st.ys;
    }
    return;
  }
  for (long y = 0; used + y <= st.budget_units; ++y) {
    st.ys[i] = y;
    grid_sweep_y(st, i + 1, used + y);
  }
}

void grid_sweep_x(GridState& st, std::size_t i, long used, long prev) {
  if (i == st.k) {
    grid_sweep_y(st, 0, used);
    return;
  }
  long hi = std::min({prev, st.x_cap_units[i + 1] - used, st.budget_units - used});
  for (long x = hi; x >= 0; --x) {
    st.xs[i] = x;
    grid_sweep_x(st, i + 1, used + x, x);
  }
}

bool grid_point_feasible(const GridState& st, const std::vector<double>& xs,
                         const std::vector<double>& ys) {
  constexpr double kSlack = 1e-12;
  double mass = 0.0, prefix = 0.0;
  for (std::size_t i = 0; i < st.k; ++i) {
    if (xs[i] < -kSlack || ys[i] < -kSlack) return false;
    if (i > 0 && xs[i] > xs[i - 1] + kSlack) return false;
    mass += xs[i] + ys[i];
    prefix += xs[i];
    if (prefix > st.x_cap_units[i + 1] * st.h + kSlack) return false;
  }
  return mass <= st.budget_units * st.h + kSlack;
}

}  // namespace

double grid_no_value(std::size_t k, double alpha, double beta, double eps,
                        std::size_t resolution) {
  if (k == 0) throw ValidationError("grid_no_value needs k >= 1");
  if (resolution < 2) resolution = 2;
  GridState st;
  st.k = k;
  st.alpha = alpha;
  st.beta = beta;
  st.eps = eps;
  st.h = 1.0 / static_cast<double>(resolution);
  st.budget_units = static_cast<long>(k * resolution);
  st.x_cap_units.assign(k + 1, 0);
  const double q = 1.0 - 1.0 / static_cast<double>(k);
  double q_pow = 1.0;
  for (std::size_t ell = 1; ell <= k; ++ell) {
    q_pow *= q;
    const double cap = (1.0 - q_pow + eps) * static_cast<double>(k);
    st.x_cap_units[ell] = static_cast<long>(cap / st.h + 1e-9);
  }
  st.xs.assign(k, 0);
  st.ys.assign(k, 0);
  grid_sweep_x(st, 0, 0, st.budget_units);

  // Coordinate-descent refinement around the incumbent at shrinking steps.
  std::vector<double> xs(k), ys(k);
  for (std::size_t i = 0; i < k; ++i) {
    xs[i] = st.best_xs.empty() ? 0.0 : st.best_xs[i] * st.h;
    ys[i] = st.best_ys.empty() ? 0.0 : st.best_ys[i] * st.h;
  }
  auto value_of = [&](const std::vector<double>& x, const std::vector<double>& y) {
    double total = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      total += normalized_value(x[i], y[i], alpha, beta);
    }
    return total;
  };
  double step = st.h;
  for (int round = 0; round < 4; ++round) {
    step /= 5.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t i = 0; i < 2 * k; ++i) {
        std::vector<double>& coords = i < k ? xs : ys;
        const std::size_t idx = i < k ? i : i - k;
        const double base = coords[idx];
        double best_delta = 0.0;
        for (int d = -5; d <= 5; ++d) {
          if (d == 0) continue;
          coords[idx] = base + d * step;
          if (!grid_point_feasible(st, xs, ys)) continue;
          const double val = value_of(xs, ys);
          if (val > st.best) {
            st.best = val;
            best_delta = d * step;
          }
        }
        coords[idx] = base + best_delta;
      }
    }
  }
  return st.best;
}

}  // namespace multipeak
