// Command-line front end: generate set systems and instances, run solvers
// and verifiers, emit JSON documents. Exit codes: 0 ok, 1 verification
// failure, 2 invalid input, 3 enumeration guard exceeded.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "multipeak/errors.hpp"
#include "multipeak/json_io.hpp"
#include "multipeak/verify.hpp"

namespace mp = multipeak;

namespace {

mp::Rational rational_flag(const std::string& text, const char* what) {
  try {
    return mp::parse_rational(text);
  } catch (const std::invalid_argument& err) {
    throw mp::ValidationError(std::string(what) + ": " + err.what());
  }
}

std::vector<mp::Rational> parse_price_list(const std::string& text) {
  std::vector<mp::Rational> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    if (comma == std::string::npos) comma = text.size();
    const std::string piece = text.substr(start, comma - start);
    if (!piece.empty()) out.push_back(rational_flag(piece, "price"));
    start = comma + 1;
  }
  return out;
}

struct CommonFlags {
  bool no_timestamp = false;
};

void add_common(CLI::App* sub, CommonFlags& common) {
  sub->add_flag("--no-timestamp", common.no_timestamp,
                "Omit the generated_at field for byte-identical reruns");
}

int run(int argc, char** argv) {
  CLI::App app{"multi-peak valuation workbench"};
  app.require_subcommand(1);
  CommonFlags common;
  int exit_code = 0;

  // ---------------------------------------------------------------- gen-setsystem
  struct {
    std::size_t k = 2, s = 1, t = 1, ell_max = 0;
    std::string epsilon = "1/2";
    std::uint64_t seed = 1, samples = 100000;
    std::string out, report;
  } gs;
  {
    auto* sub = app.add_subcommand("gen-setsystem",
                                   "Generate a random partition family and verify it");
    sub->add_option("--k", gs.k, "Player count (>= 2)")->required();
    sub->add_option("--s", gs.s, "Block size")->required();
    sub->add_option("--t", gs.t, "Partition count")->required();
    sub->add_option("--epsilon", gs.epsilon, "Slack target as p/q (default 1/2)");
    sub->add_option("--seed", gs.seed, "Generator seed");
    sub->add_option("--ell-max", gs.ell_max, "Largest union size to check (default k)");
    sub->add_option("--samples", gs.samples, "Union-bound samples when not exhaustive");
    sub->add_option("--out", gs.out, "Family JSON path")->required();
    sub->add_option("--report", gs.report, "Verification report JSON path");
    add_common(sub, common);
    sub->callback([&] {
      auto fam = mp::generate_partition_family(gs.k, gs.s, gs.t,
                                               rational_flag(gs.epsilon, "--epsilon"),
                                               gs.seed);
      auto pairwise = mp::verify_pairwise(fam);
      auto unions = mp::verify_union_bounds(fam, gs.ell_max == 0 ? gs.k : gs.ell_max,
                                            gs.samples);
      mp::write_json_file(gs.out, mp::partition_family_to_json(fam), !common.no_timestamp);
      if (!gs.report.empty()) {
        mp::Json report;
        report["schema_version"] = mp::kSchemaVersion;
        report["type"] = "setsystem_report";
        report["pairwise"] = mp::pairwise_report_to_json(pairwise);
        report["union_bounds"] = mp::union_report_to_json(unions);
        report["effective_epsilon"] =
            mp::rational_to_json(mp::effective_epsilon(pairwise, unions));
        mp::write_json_file(gs.report, std::move(report), !common.no_timestamp);
      }
      std::cout << "family k=" << fam.k << " s=" << fam.s << " t=" << fam.t
                << " written to " << gs.out << "\n"
                << pairwise.describe() << "\n"
                << unions.describe() << "\n";
    });
  }

  // ------------------------------------------------------------- gen-disjointness
  struct {
    std::size_t k = 2, t = 1;
    std::string tag = "yes", density = "1/2", out;
    std::uint64_t seed = 1;
  } gd;
  {
    auto* sub = app.add_subcommand("gen-disjointness",
                                   "Generate a YES/NO set-disjointness instance");
    sub->add_option("--k", gd.k, "Player count")->required();
    sub->add_option("--t", gd.t, "Bitstring length")->required();
    sub->add_option("--case", gd.tag, "yes or no")->required();
    sub->add_option("--density", gd.density, "Per-bit density as p/q (default 1/2)");
    sub->add_option("--seed", gd.seed, "Generator seed");
    sub->add_option("--out", gd.out, "Instance JSON path")->required();
    add_common(sub, common);
    sub->callback([&] {
      auto inst = mp::make_disjointness(gd.k, gd.t,
                                        mp::disjointness_case_from_string(gd.tag),
                                        gd.seed, rational_flag(gd.density, "--density"));
      mp::write_json_file(gd.out, mp::disjointness_to_json(inst), !common.no_timestamp);
      std::cout << "disjointness " << mp::to_string(inst.tag) << " k=" << inst.k
                << " t=" << inst.t << " written to " << gd.out << "\n";
    });
  }

  // ---------------------------------------------------------------- build-instance
  struct {
    std::string family, disjointness, mode = "per_player", objective = "welfare";
    std::string a, b, b_epsilon, effective_epsilon, out;
    std::size_t cardinality = 0;
    bool restrict_support = false;
  } bi;
  {
    auto* sub = app.add_subcommand("build-instance",
                                   "Assemble an auction instance from a family and a "
                                   "disjointness instance");
    sub->add_option("--family", bi.family, "Partition family JSON")->required();
    sub->add_option("--disjointness", bi.disjointness, "Disjointness JSON")->required();
    sub->add_option("--mode", bi.mode, "per_player or shared_first");
    sub->add_option("--objective", bi.objective, "welfare, maxmin, or cpp");
    sub->add_option("--a", bi.a, "Peak slope as p/q (default 1/(2s))");
    sub->add_option("--b", bi.b, "Closeness bound as p/q (default (1+eps)s/k)");
    sub->add_option("--b-epsilon", bi.b_epsilon,
                    "Epsilon used for the default b (default: family target)");
    sub->add_option("--effective-epsilon", bi.effective_epsilon,
                    "Effective epsilon for provenance (default: run the verifiers)");
    sub->add_option("--cardinality", bi.cardinality, "CPP cardinality (default s)");
    sub->add_flag("--restrict-support", bi.restrict_support,
                  "Support = union of each player's peaks");
    sub->add_option("--out", bi.out, "Instance JSON path")->required();
    add_common(sub, common);
    sub->callback([&] {
      auto fam = mp::partition_family_from_json(mp::load_json_file(bi.family));
      auto disj = mp::disjointness_from_json(mp::load_json_file(bi.disjointness));
      const mp::CollectionMode mode = bi.mode == "per_player" ? mp::CollectionMode::PerPlayer
                                      : bi.mode == "shared_first"
                                          ? mp::CollectionMode::SharedFirst
                                          : throw mp::ValidationError("unknown mode: " + bi.mode);
      std::optional<mp::Rational> b_eps;
      if (!bi.b_epsilon.empty()) b_eps = rational_flag(bi.b_epsilon, "--b-epsilon");
      auto col = mp::collection_from_disjointness(fam, disj, mode, b_eps);

      const mp::Rational a = bi.a.empty() ? mp::default_a(col.s)
                                          : rational_flag(bi.a, "--a");
      const mp::Rational b = bi.b.empty() ? col.b : rational_flag(bi.b, "--b");
      mp::InstanceOptions opts;
      opts.restrict_support = bi.restrict_support;
      if (!bi.effective_epsilon.empty()) {
        opts.epsilon = rational_flag(bi.effective_epsilon, "--effective-epsilon");
      } else {
        auto pairwise = mp::verify_pairwise(fam);
        auto unions = mp::verify_union_bounds(fam, fam.k, 20000);
        opts.epsilon = mp::effective_epsilon(pairwise, unions);
      }
      opts.source = "disjointness:" + mp::to_string(disj.tag) + ":" +
                    mp::to_string(mode) + ":seed=" + std::to_string(disj.seed);

      mp::AuctionInstance inst;
      if (bi.objective == "welfare") {
        inst = mp::build_welfare_instance(col, a, b, opts);
      } else if (bi.objective == "maxmin") {
        inst = mp::build_maxmin_instance(col, a, b, opts);
      } else if (bi.objective == "cpp") {
        inst = mp::build_cpp_instance(col, a, b,
                                      bi.cardinality == 0 ? col.s : bi.cardinality, opts);
      } else {
        throw mp::ValidationError("unknown objective: " + bi.objective);
      }
      mp::write_json_file(bi.out, mp::instance_to_json(inst), !common.no_timestamp);
      std::cout << "instance " << mp::to_string(inst.objective) << " m=" << inst.m
                << " players=" << inst.players() << " alpha="
                << mp::format_rational(inst.provenance.alpha) << " beta="
                << mp::format_rational(inst.provenance.beta) << " eps="
                << mp::format_rational(inst.provenance.epsilon) << " written to "
                << bi.out << "\n";
    });
  }

  // ------------------------------------------------------------------ ingest-cover
  struct {
    std::string in, report, instance, objective = "welfare", a, b;
    std::uint64_t witness_guard = 1000000;
  } ic;
  {
    auto* sub = app.add_subcommand("ingest-cover",
                                   "Validate an external cover system; optionally build "
                                   "an instance from it");
    sub->add_option("--in", ic.in, "Cover system JSON")->required();
    sub->add_option("--report", ic.report, "Validation report JSON path");
    sub->add_option("--instance", ic.instance, "Instance JSON path (optional build)");
    sub->add_option("--objective", ic.objective, "welfare or maxmin");
    sub->add_option("--a", ic.a, "Peak slope (default 1/(2s))");
    sub->add_option("--b", ic.b, "Closeness bound (default: cover intersection bound)");
    sub->add_option("--witness-guard", ic.witness_guard,
                    "Skip the disjoint-cover search beyond this many selections");
    add_common(sub, common);
    sub->callback([&] {
      auto cover = mp::cover_system_from_json(mp::load_json_file(ic.in));
      auto report = mp::validate_cover_system(cover, ic.witness_guard);
      if (!ic.report.empty()) {
        mp::write_json_file(ic.report, mp::cover_report_to_json(report),
                            !common.no_timestamp);
      }
      std::cout << report.describe() << "\n";
      if (!report.passed()) {
        exit_code = 1;
        return;
      }
      if (!ic.instance.empty()) {
        auto col = mp::collection_from_cover(cover);
        const mp::Rational a = ic.a.empty() ? mp::default_a(col.s)
                                            : rational_flag(ic.a, "--a");
        const mp::Rational b = ic.b.empty() ? col.b : rational_flag(ic.b, "--b");
        mp::InstanceOptions opts;
        opts.restrict_support = true;  // cover-style valuations live on their union
        opts.epsilon = col.s == 0 ? mp::Rational(0)
                                  : col.b / mp::Rational(static_cast<long>(col.s));
        opts.source = "cover:" + ic.in;
        mp::AuctionInstance inst = ic.objective == "maxmin"
                                       ? mp::build_maxmin_instance(col, a, b, opts)
                                       : mp::build_welfare_instance(col, a, b, opts);
        mp::write_json_file(ic.instance, mp::instance_to_json(inst), !common.no_timestamp);
        std::cout << "instance written to " << ic.instance << "\n";
      }
    });
  }

  // ------------------------------------------------------------------------ solve
  struct {
    std::string instance, solver = "brute", out, profile;
    std::uint64_t guard = mp::kDefaultEnumerationGuard;
    unsigned workers = 0;
  } so;
  {
    auto* sub = app.add_subcommand("solve", "Run a solver on an instance");
    sub->add_option("--instance", so.instance, "Instance JSON")->required();
    sub->add_option("--solver", so.solver, "brute or greedy");
    sub->add_option("--guard", so.guard, "Enumeration guard (default 1e8)");
    sub->add_option("--workers", so.workers, "Worker threads (default: hardware)");
    sub->add_option("--out", so.out, "Result JSON path")->required();
    sub->add_option("--profile", so.profile,
                    "Also write the normalized profile of the witness (brute only)");
    add_common(sub, common);
    sub->callback([&] {
      auto inst = mp::instance_from_json(mp::load_json_file(so.instance));
      mp::SolveResult result;
      if (so.solver == "brute") {
        switch (inst.objective) {
          case mp::Objective::Welfare:
            result = mp::brute_force_welfare(inst, so.guard, so.workers);
            break;
          case mp::Objective::MaxMin:
            result = mp::brute_force_maxmin(inst, so.guard, so.workers);
            break;
          case mp::Objective::Cpp:
            result = mp::brute_force_cpp(inst, so.guard);
            break;
        }
      } else if (so.solver == "greedy") {
        switch (inst.objective) {
          case mp::Objective::Welfare:
            result = mp::greedy_welfare(inst);
            break;
          case mp::Objective::Cpp:
            result = mp::greedy_cpp(inst);
            break;
          case mp::Objective::MaxMin:
            throw mp::ValidationError("no greedy max-min solver");
        }
      } else {
        throw mp::ValidationError("unknown solver: " + so.solver);
      }
      mp::write_json_file(so.out, mp::solve_result_to_json(result), !common.no_timestamp);
      std::cout << result.solver << " value " << mp::format_rational(result.value)
                << " (~" << mp::to_double(result.value) << ") nodes " << result.nodes
                << " in " << result.wall_ms << " ms, written to " << so.out << "\n";
      if (!so.profile.empty()) {
        if (!result.allocation) {
          throw mp::ValidationError("--profile needs an allocation-producing solver");
        }
        auto profile = mp::normalized_profile_from_allocation(inst, *result.allocation);
        mp::write_json_file(so.profile, mp::profile_to_json(profile), !common.no_timestamp);
        std::cout << "profile written to " << so.profile
                  << (profile.checked && profile.checked->passed()
                          ? " (constraints hold)"
                          : " (CONSTRAINTS VIOLATED)")
                  << "\n";
      }
    });
  }

  // ----------------------------------------------------------------- demand-query
  struct {
    std::string valuation, prices, prices_file, out;
  } dq;
  {
    auto* sub = app.add_subcommand("demand-query",
                                   "Answer one exact demand query for a valuation");
    sub->add_option("--valuation", dq.valuation, "Valuation JSON")->required();
    sub->add_option("--prices", dq.prices, "Comma-separated p/q prices");
    sub->add_option("--prices-file", dq.prices_file, "JSON array of p/q prices");
    sub->add_option("--out", dq.out, "Result JSON path")->required();
    add_common(sub, common);
    sub->callback([&] {
      auto v = mp::valuation_from_json(mp::load_json_file(dq.valuation));
      mp::PriceVector prices;
      if (!dq.prices.empty()) {
        prices.prices = parse_price_list(dq.prices);
      } else if (!dq.prices_file.empty()) {
        for (const mp::Json& e : mp::load_json_file(dq.prices_file)) {
          prices.prices.push_back(mp::rational_from_json(e));
        }
      } else {
        throw mp::ValidationError("need --prices or --prices-file");
      }
      auto result = mp::demand_query(v, prices);
      mp::write_json_file(dq.out, mp::demand_result_to_json(result), !common.no_timestamp);
      std::cout << "demand bundle size " << result.bundle.count() << " utility "
                << mp::format_rational(result.utility) << " (~"
                << mp::to_double(result.utility) << "), written to " << dq.out << "\n";
    });
  }

  // ------------------------------------------------------------------- gap-report
  struct {
    std::string target = "17/18", yes, no, alpha, beta, a, b, eps = "0", out;
    std::size_t k = 2, s = 0;
    bool two_player = false;
  } gr;
  {
    auto* sub = app.add_subcommand("gap-report",
                                   "Evaluate the YES/NO gap formulas and the target ratio");
    sub->add_option("--target", gr.target, "17/18, 1-1/(2e), 3/4, 7/8, or 1-1/e");
    sub->add_option("--yes", gr.yes, "YES value p/q (skip the formula)");
    sub->add_option("--no", gr.no, "NO bound p/q (skip the formula)");
    sub->add_option("--k", gr.k, "Player count");
    sub->add_option("--s", gr.s, "Set size (with --a/--b)");
    sub->add_option("--alpha", gr.alpha, "Normalized slope a*s as p/q");
    sub->add_option("--beta", gr.beta, "Normalized bound b/s as p/q");
    sub->add_option("--a", gr.a, "Raw slope p/q (needs --s)");
    sub->add_option("--b", gr.b, "Raw bound p/q (needs --s)");
    sub->add_option("--eps", gr.eps, "Effective epsilon p/q (default 0)");
    sub->add_flag("--two-player", gr.two_player,
                  "Use the two-player closed form for the NO side (k=2)");
    sub->add_option("--out", gr.out, "Report JSON path")->required();
    add_common(sub, common);
    sub->callback([&] {
      const mp::Rational eps = rational_flag(gr.eps, "--eps");
      mp::Rational alpha, beta;
      std::size_t yes_s = 1;
      mp::Rational yes_a, yes_b;
      if (!gr.alpha.empty()) {
        alpha = rational_flag(gr.alpha, "--alpha");
        beta = gr.beta.empty() ? mp::Rational(0) : rational_flag(gr.beta, "--beta");
        yes_a = alpha;
        yes_b = beta;
      } else if (!gr.a.empty() && gr.s > 0) {
        yes_s = gr.s;
        yes_a = rational_flag(gr.a, "--a");
        yes_b = gr.b.empty() ? mp::Rational(0) : rational_flag(gr.b, "--b");
        alpha = yes_a * mp::Rational(static_cast<long>(gr.s));
        beta = yes_b / mp::Rational(static_cast<long>(gr.s));
      } else if (gr.yes.empty() || gr.no.empty()) {
        throw mp::ValidationError("need --alpha/--beta, or --a/--b with --s, or "
                                  "explicit --yes and --no");
      }

      const mp::Rational yes = gr.yes.empty()
                                   ? mp::yes_value_formula(gr.k, yes_s, yes_a, yes_b)
                                   : rational_flag(gr.yes, "--yes");
      mp::Rational no;
      std::string no_detail;
      if (!gr.no.empty()) {
        no = rational_flag(gr.no, "--no");
      } else if (gr.two_player) {
        auto two = mp::no_value_two_players(alpha, beta, eps);
        no = two.value;
        no_detail = two.describe();
      } else {
        auto bound = mp::no_bound_formula(gr.k, alpha, eps);
        no = bound.value;
        no_detail = bound.describe();
      }

      auto report = mp::gap_ratio(yes, no, mp::gap_target_from_string(gr.target));
      report.epsilon = eps;
      report.parameters = "k=" + std::to_string(gr.k) +
                          " alpha=" + mp::format_rational(alpha) +
                          " beta=" + mp::format_rational(beta) +
                          " eps=" + mp::format_rational(eps);
      mp::write_json_file(gr.out, mp::gap_report_to_json(report), !common.no_timestamp);
      std::cout << report.describe() << "\n";
      if (!no_detail.empty()) std::cout << no_detail << "\n";
    });
  }

  // ------------------------------------------------------------------------ check
  struct {
    std::string valuation, out;
    std::uint64_t trials = 20000, seed = 0;
  } ck;
  {
    auto* sub = app.add_subcommand("check",
                                   "Run every core verifier against a valuation");
    sub->add_option("--valuation", ck.valuation, "Valuation JSON")->required();
    sub->add_option("--trials", ck.trials, "Sampled trials per verifier");
    sub->add_option("--seed", ck.seed, "Extra seed offset for the sampled sweeps");
    sub->add_option("--out", ck.out, "Report JSON path");
    add_common(sub, common);
    sub->callback([&] {
      auto v = mp::valuation_from_json(mp::load_json_file(ck.valuation));
      auto structural = v.validate();
      auto monotone = mp::check_monotone(v, ck.trials, 1 + ck.seed);
      auto submodular = mp::check_submodular(v, ck.trials, 2 + ck.seed);
      auto unique = mp::check_close_peak_unique(v, ck.trials, 3 + ck.seed);

      bool boundary_ok = true;
      mp::Json boundary = mp::Json::array();
      for (std::size_t p = 0; p < v.family().peaks.size(); ++p) {
        mp::BoundaryOptions opt;
        opt.seed = 4 + ck.seed;
        auto rep = mp::boundary_agreement_check(v, p, opt);
        boundary_ok = boundary_ok && rep.passed;
        boundary.push_back(mp::Json{{"peak", p},
                                    {"passed", rep.passed},
                                    {"points_checked", rep.points_checked},
                                    {"max_value_deviation", rep.max_value_deviation},
                                    {"max_gradient_deviation", rep.max_gradient_deviation},
                                    {"note", rep.note}});
      }

      const bool passed = structural.ok() && monotone.passed && submodular.passed &&
                          unique.passed && boundary_ok;
      mp::Json report;
      report["schema_version"] = mp::kSchemaVersion;
      report["type"] = "check_report";
      report["structural"] =
          mp::Json{{"errors", structural.errors}, {"warnings", structural.warnings}};
      report["monotone"] = mp::Json{{"passed", monotone.passed},
                                    {"exhaustive", monotone.exhaustive},
                                    {"cases_checked", monotone.cases_checked},
                                    {"detail", monotone.describe()}};
      report["submodular"] = mp::Json{{"passed", submodular.passed},
                                      {"exhaustive", submodular.exhaustive},
                                      {"cases_checked", submodular.cases_checked},
                                      {"detail", submodular.describe()}};
      report["close_peak_unique"] = mp::Json{{"passed", unique.passed},
                                             {"trials", unique.trials},
                                             {"detail", unique.describe()}};
      report["boundary"] = boundary;
      report["passed"] = passed;
      report["float_precision"] = mp::kFloatPrecision;
      if (!ck.out.empty()) {
        mp::write_json_file(ck.out, std::move(report), !common.no_timestamp);
      }
      std::cout << (passed ? "all checks passed" : "CHECKS FAILED") << "\n"
                << monotone.describe() << "\n"
                << submodular.describe() << "\n"
                << unique.describe() << "\n";
      if (!passed) exit_code = 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // unknown flags / bad usage = invalid input
  }
  return exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const mp::GuardExceededError& err) {
    std::cerr << "guard exceeded: " << err.what() << "\n";
    return 3;
  } catch (const mp::FamilyIntegrityError& err) {
    std::cerr << "verification failure: " << err.what() << "\n";
    return 1;
  } catch (const mp::ValidationError& err) {
    std::cerr << "invalid input: " << err.what() << "\n";
    return 2;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 2;
  }
}
