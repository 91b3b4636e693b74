// End-to-end exercises of the command-line tool. Every subcommand runs as a
// real subprocess against files on disk, and each output file is re-read
// through the library's own parsers so the CLI and the JSON layer stay honest
// with each other.
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "helpers.hpp"
#include "multipeak/coversystem.hpp"
#include "multipeak/json_io.hpp"
#include "multipeak/solvers.hpp"

using namespace multipeak;
using testutil::set_of;

namespace fs = std::filesystem;

namespace {

const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "multipeak_cli_tests";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

std::string path_of(const std::string& name) { return (scratch_dir() / name).string(); }

struct CliRun {
  int status = -1;
  std::string output;  // stdout and stderr combined
};

CliRun run_cli(const std::string& args) {
  static int counter = 0;
  const std::string capture = path_of("capture_" + std::to_string(counter++) + ".log");
  const std::string cmd =
      std::string(MULTIPEAK_CLI_PATH) + " " + args + " > '" + capture + "' 2>&1";
  const int raw = std::system(cmd.c_str());
  CliRun run;
  run.status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(capture);
  std::ostringstream buf;
  buf << in.rdbuf();
  run.output = buf.str();
  return run;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in.good());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Runs the generate -> generate -> assemble pipeline with tiny parameters
// (m = k*s = 8, so every downstream solve is instant) and returns the
// instance path.
std::string make_pipeline_instance(const std::string& prefix,
                                   const std::string& objective,
                                   const std::string& kase) {
  const std::string fam = path_of(prefix + "_family.json");
  const std::string dis = path_of(prefix + "_disjointness.json");
  const std::string inst = path_of(prefix + "_instance.json");
  auto g1 = run_cli("gen-setsystem --k 2 --s 4 --t 6 --seed 5 --out '" + fam + "'");
  REQUIRE(g1.status == 0);
  auto g2 = run_cli("gen-disjointness --k 2 --t 6 --case " + kase +
                    " --seed 3 --out '" + dis + "'");
  REQUIRE(g2.status == 0);
  auto g3 = run_cli("build-instance --family '" + fam + "' --disjointness '" + dis +
                    "' --mode per_player --objective " + objective + " --out '" +
                    inst + "'");
  REQUIRE(g3.status == 0);
  return inst;
}

Json valid_cover_doc() {
  // Universe of 4, two groups of two 2-sets; every element covered twice,
  // pairwise intersections at most 1.
  CoverSystem cover;
  cover.universe_size = 4;
  cover.s = 2;
  cover.g = 2;
  cover.d = 2;
  cover.intersection_bound = Rational(1);
  cover.groups = {{set_of(4, {0, 1}), set_of(4, {2, 3})},
                  {set_of(4, {0, 2}), set_of(4, {1, 3})}};
  return cover_system_to_json(cover);
}

std::string write_demand_valuation(const std::string& name) {
  // m = 4, one peak {0,1}, a = 1/4, b = 0 (same shape the demand unit tests
  // pin down).
  PeakFamily fam;
  fam.peaks.push_back(set_of(4, {0, 1}));
  fam.b = Rational(0);
  MultiPeakValuation v(4, fam, Rational(1, 4));
  const std::string path = path_of(name);
  write_json_file(path, valuation_to_json(v), false);
  return path;
}

}  // namespace

TEST_CASE("gen-setsystem writes a loadable family and a verification report") {
  const std::string fam_path = path_of("gen_family.json");
  const std::string rep_path = path_of("gen_family_report.json");
  auto run = run_cli("gen-setsystem --k 3 --s 10 --t 8 --seed 11 --out '" + fam_path +
                     "' --report '" + rep_path + "' --no-timestamp");
  CHECK(run.status == 0);
  CHECK(run.output.find("family k=3 s=10 t=8") != std::string::npos);

  auto fam = partition_family_from_json(load_json_file(fam_path));
  CHECK(fam.k == 3);
  CHECK(fam.s == 10);
  CHECK(fam.t == 8);
  CHECK(fam.blocks.size() == 8);

  Json report = load_json_file(rep_path);
  CHECK(report["type"] == "setsystem_report");
  CHECK(report["pairwise"].contains("within_bound"));
  CHECK(report["union_bounds"].contains("within_bound"));
  // The effective epsilon is a rational string and must parse.
  CHECK_NOTHROW(rational_from_json(report["effective_epsilon"]));
  CHECK(!report.contains("generated_at"));
}

TEST_CASE("gen-disjointness produces the requested case") {
  const std::string yes_path = path_of("dis_yes.json");
  const std::string no_path = path_of("dis_no.json");
  REQUIRE(run_cli("gen-disjointness --k 2 --t 12 --case yes --seed 7 --out '" +
                  yes_path + "'").status == 0);
  REQUIRE(run_cli("gen-disjointness --k 2 --t 12 --case NO --seed 7 --out '" +
                  no_path + "'").status == 0);

  auto yes = disjointness_from_json(load_json_file(yes_path));
  CHECK(yes.tag == DisjointnessCase::Yes);
  auto no = disjointness_from_json(load_json_file(no_path));
  CHECK(no.tag == DisjointnessCase::No);

  // The promise: YES instances share an all-ones column, NO instances have
  // column sums at most one.
  CHECK(yes.promise_holds());
  CHECK(no.promise_holds());
  bool shared = false;
  for (std::size_t j = 0; j < yes.t; ++j) shared = shared || yes.column_all_ones(j);
  CHECK(shared);
  for (std::size_t j = 0; j < no.t; ++j) CHECK(no.column_sum(j) <= 1);
}

TEST_CASE("build-instance assembles a welfare instance from the two generators") {
  const std::string inst_path = make_pipeline_instance("pipe_welfare", "welfare", "yes");
  auto inst = instance_from_json(load_json_file(inst_path));
  CHECK(inst.objective == Objective::Welfare);
  CHECK(inst.m == 8);  // k*s
  CHECK(inst.players() == 2);
  // Pipeline provenance carries the normalized parameters.
  CHECK(inst.provenance.alpha == inst.valuations[0].a() * Rational(4));
  CHECK(inst.provenance.source.find("disjointness:YES:per_player") != std::string::npos);
}

TEST_CASE("ingest-cover validates a sound cover and builds an instance") {
  const std::string cover_path = path_of("cover_ok.json");
  write_json_file(cover_path, valid_cover_doc(), false);
  const std::string rep_path = path_of("cover_ok_report.json");
  const std::string inst_path = path_of("cover_ok_instance.json");

  auto run = run_cli("ingest-cover --in '" + cover_path + "' --report '" + rep_path +
                     "' --instance '" + inst_path + "' --no-timestamp");
  CHECK(run.status == 0);
  CHECK(run.output.find("cover system valid") != std::string::npos);

  Json report = load_json_file(rep_path);
  CHECK(report["passed"] == true);

  auto inst = instance_from_json(load_json_file(inst_path));
  CHECK(inst.objective == Objective::Welfare);
  CHECK(inst.m == 4);
  CHECK(inst.players() == 2);
}

TEST_CASE("ingest-cover rejects a broken cover with exit code 1") {
  Json doc = valid_cover_doc();
  doc["groups"][0][0] = Json::array({0, 1, 2});  // wrong set size
  const std::string cover_path = path_of("cover_bad.json");
  write_json_file(cover_path, std::move(doc), false);

  auto run = run_cli("ingest-cover --in '" + cover_path + "'");
  CHECK(run.status == 1);
  CHECK(run.output.find("INVALID") != std::string::npos);
}

TEST_CASE("solve runs the exhaustive solver and writes result plus profile") {
  const std::string inst_path = make_pipeline_instance("solve_brute", "welfare", "yes");
  const std::string res_path = path_of("solve_brute_result.json");
  const std::string prof_path = path_of("solve_brute_profile.json");

  auto run = run_cli("solve --instance '" + inst_path + "' --solver brute --out '" +
                     res_path + "' --profile '" + prof_path + "' --no-timestamp");
  CHECK(run.status == 0);

  Json res = load_json_file(res_path);
  CHECK(res["type"] == "solve_result");
  CHECK(res["solver"] == "brute_force_welfare");
  const Rational value = rational_from_json(res["value"]);
  CHECK(value > Rational(0));
  CHECK(res["allocation"].is_array());
  CHECK(res["allocation"].size() == 2);

  Json prof = load_json_file(prof_path);
  CHECK(prof["type"] == "normalized_profile");
  CHECK(prof["entries"].is_array());

  // The greedy solver on the same instance is within its guarantee.
  const std::string greedy_path = path_of("solve_greedy_result.json");
  auto greedy = run_cli("solve --instance '" + inst_path +
                        "' --solver greedy --out '" + greedy_path + "' --no-timestamp");
  CHECK(greedy.status == 0);
  Json gres = load_json_file(greedy_path);
  CHECK(gres["solver"] == "greedy_welfare");
  const Rational gvalue = rational_from_json(gres["value"]);
  CHECK(gvalue * Rational(2) >= value);
  CHECK(gvalue <= value);
}

TEST_CASE("solve refuses greedy max-min and trips the enumeration guard") {
  const std::string inst_path = make_pipeline_instance("solve_guard", "maxmin", "no");
  const std::string out_path = path_of("solve_guard_result.json");

  auto greedy = run_cli("solve --instance '" + inst_path + "' --solver greedy --out '" +
                        out_path + "'");
  CHECK(greedy.status == 2);  // invalid request

  auto guarded = run_cli("solve --instance '" + inst_path +
                         "' --solver brute --guard 10 --out '" + out_path + "'");
  CHECK(guarded.status == 3);  // 2^8 assignments > 10
  CHECK(guarded.output.find("guard exceeded") != std::string::npos);
}

TEST_CASE("demand-query answers exactly from a valuation file") {
  const std::string val_path = write_demand_valuation("demand_valuation.json");
  const std::string out_path = path_of("demand_result.json");

  // All-zero prices: the peak itself is the cheapest utility-1 bundle.
  auto free_run = run_cli("demand-query --valuation '" + val_path +
                          "' --prices '0,0,0,0' --out '" + out_path + "' --no-timestamp");
  CHECK(free_run.status == 0);
  Json res = load_json_file(out_path);
  CHECK(res["type"] == "demand_result");
  CHECK(res["bundle"] == Json::array({0, 1}));
  CHECK(rational_from_json(res["utility"]) == Rational(1));

  // Expensive peak items push the demand to the far branch.
  auto priced = run_cli("demand-query --valuation '" + val_path +
                        "' --prices '3/5,3/5,1/10,1/10' --out '" + out_path +
                        "' --no-timestamp");
  CHECK(priced.status == 0);
  res = load_json_file(out_path);
  CHECK(res["bundle"] == Json::array({2, 3}));
  CHECK(rational_from_json(res["utility"]) == Rational(11, 20));

  // A prices file works the same way.
  const std::string prices_path = path_of("demand_prices.json");
  write_json_file(prices_path, Json::array({"3/5", "3/5", "1/10", "1/10"}), false);
  auto from_file = run_cli("demand-query --valuation '" + val_path +
                           "' --prices-file '" + prices_path + "' --out '" + out_path +
                           "' --no-timestamp");
  CHECK(from_file.status == 0);
  CHECK(rational_from_json(load_json_file(out_path)["utility"]) == Rational(11, 20));
}

TEST_CASE("gap-report reproduces the two-player separation at its target") {
  const std::string out_path = path_of("gap_report.json");
  auto run = run_cli("gap-report --alpha 2/3 --beta 1/2 --two-player --target 17/18 "
                     "--out '" + out_path + "' --no-timestamp");
  CHECK(run.status == 0);

  Json report = load_json_file(out_path);
  CHECK(report["type"] == "gap_report");
  CHECK(rational_from_json(report["yes_value"]) == Rational(2));
  CHECK(rational_from_json(report["no_bound"]) == Rational(17, 9));
  CHECK(rational_from_json(report["ratio"]) == Rational(17, 18));
  CHECK(report["deviation"].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("check passes a sound valuation and flags a corrupted one") {
  const std::string val_path = write_demand_valuation("check_valuation.json");
  const std::string rep_path = path_of("check_report.json");
  auto ok = run_cli("check --valuation '" + val_path + "' --trials 200 --out '" +
                    rep_path + "' --no-timestamp");
  CHECK(ok.status == 0);
  CHECK(ok.output.find("all checks passed") != std::string::npos);
  Json report = load_json_file(rep_path);
  CHECK(report["type"] == "check_report");
  CHECK(report["passed"] == true);

  // Duplicate peaks survive construction but fail the structural sweep.
  Json doc = load_json_file(val_path);
  doc["peaks"].push_back(doc["peaks"][0]);
  const std::string bad_path = path_of("check_valuation_bad.json");
  write_json_file(bad_path, std::move(doc), false);
  auto bad = run_cli("check --valuation '" + bad_path + "' --trials 200");
  CHECK(bad.status == 1);
  CHECK(bad.output.find("CHECKS FAILED") != std::string::npos);
}

TEST_CASE("bad usage exits with code 2") {
  CHECK(run_cli("solve --nonsense").status == 2);
  CHECK(run_cli("gen-setsystem --k 2 --s 4").status == 2);  // missing required flags
  const std::string inst_path = make_pipeline_instance("bad_solver", "welfare", "yes");
  auto run = run_cli("solve --instance '" + inst_path + "' --solver dynamic --out '" +
                     path_of("unused.json") + "'");
  CHECK(run.status == 2);
  CHECK(run.output.find("unknown solver") != std::string::npos);
}

TEST_CASE("--no-timestamp reruns are byte-identical") {
  const std::string first = path_of("det_family_1.json");
  const std::string second = path_of("det_family_2.json");
  const std::string args = "gen-setsystem --k 2 --s 4 --t 6 --seed 9 ";
  REQUIRE(run_cli(args + "--out '" + first + "' --no-timestamp").status == 0);
  REQUIRE(run_cli(args + "--out '" + second + "' --no-timestamp").status == 0);
  CHECK(slurp(first) == slurp(second));

  // Without the flag a timestamp field appears.
  const std::string stamped = path_of("det_family_stamped.json");
  REQUIRE(run_cli(args + "--out '" + stamped + "'").status == 0);
  CHECK(load_json_file(stamped).contains("generated_at"));
}
