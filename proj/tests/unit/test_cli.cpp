#include <doctest.h>

#include "mixscope/cli/experiment.hpp"
#include "mixscope/error.hpp"

using namespace mixscope;
using namespace mixscope::cli;
using nlohmann::json;

namespace {

ExperimentConfig sst_example() {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::sst_check;
  cfg.chain = "rtt";
  cfg.n = 4;
  cfg.t = 3;
  cfg.statistic = "top_k_order:2";
  cfg.predicate = "k_distinct:2";
  return cfg;
}

}  // namespace

TEST_CASE("sst-check example certifies with bound 1/16") {
  const auto rep = run_experiment(sst_example());
  const auto& r = rep.body["results"];
  CHECK(r["certified"] == true);
  CHECK(r["sep_bound"] == "1/16");
  CHECK(rep.body["version"] == kArtifactVersion);
  CHECK(rep.body["config"]["n"] == 4);
  CHECK(rep.table.size() == 13);  // header + 12 ordered pairs
}

TEST_CASE("counterexample report") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::counterexample;
  cfg.n = 52;
  cfg.t = 10;
  const auto r = run_experiment(cfg).body["results"];
  CHECK(r["nonnegative_paths"] == "252");
  CHECK(r["ballot_share"] == "252/1024");
  CHECK(r["lower_bound_at_least_ballot_share"] == true);
  CHECK(r["naive_bound_refuted"] == true);
  CHECK(r["prob_bottom_card_on_top_reduced"] == "41008709629674851/2846623624842969088");
  // The ballot argument's estimate is not the exact probability.
  CHECK(r["ballot_estimate"] == "772/53248");
  CHECK(r["ballot_estimate_exact"] == false);
}

TEST_CASE("cycle example: alternating 4-cycle mixes in one step") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::cycle;
  cfg.coloring = "RBRB";
  cfg.horizon = 5;
  const auto r = run_experiment(cfg).body["results"];
  CHECK(r["k"] == 1);
  CHECK(r["series"][0]["separation"] == "1/1");
  CHECK(r["series"][1]["separation"] == "0/1");
  CHECK(r["coverage_bound_holds"] == true);
  CHECK(r["sets"][0]["midpoints_half_units"] == json::array({1, 3, 5, 7}));
}

TEST_CASE("supplied sets drive the coverage bound") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::cycle;
  cfg.coloring = "RRBRBBRRBRBB";
  cfg.horizon = 40;
  CHECK(run_experiment(cfg).body["results"]["coverage_bound_holds"] == false);
  cfg.sets = "[[0,2,3,5,6,8,9,11],[1,4,7,10]]";
  const auto r = run_experiment(cfg).body["results"];
  CHECK(r["sets_source"] == "supplied");
  CHECK(r["coverage_bound_holds"] == true);
  CHECK(r["red_dominance"]["status"] == "holds");
  cfg.sets = "[[0,1],[2,3]]";
  CHECK_THROWS_AS(run_experiment(cfg), InvalidArgument);
}

TEST_CASE("decompose report") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::decompose;
  cfg.coloring = "RRBB";
  const auto rep = run_experiment(cfg);
  const auto& r = rep.body["results"];
  CHECK(r["k"] == 2);
  CHECK(r["decomposition"]["partition_ok"] == true);
  CHECK(r["decomposition"]["gaps_within_limit"] == true);
  CHECK(rep.table.size() == 5);
}

TEST_CASE("stat-mix report") {
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::stat_mix;
  cfg.n = 4;
  cfg.t = 1;
  cfg.statistic = "parity";
  const auto r = run_experiment(cfg).body["results"];
  CHECK(r["series"][0]["separation"] == "1/1");
  CHECK(r["series"][1]["separation"] == "0/1");
}

TEST_CASE("reports are deterministic") {
  auto cfg = sst_example();
  CHECK(render(run_experiment(cfg), OutputFormat::json) == render(run_experiment(cfg), OutputFormat::json));
  cfg.monte_carlo = true;
  cfg.samples = 2000;
  cfg.seed = 17;
  const auto a = render(run_experiment(cfg), OutputFormat::json);
  CHECK(a == render(run_experiment(cfg), OutputFormat::json));
  CHECK(run_experiment(cfg).body["results"]["certified"] == false);
  cfg.seed = 18;
  CHECK(a != render(run_experiment(cfg), OutputFormat::json));
}

TEST_CASE("float view") {
  const json j = {{"a", "1/4"}, {"b", {"-3/2", "x/y", "12"}}, {"c", 5}};
  const auto f = float_view(j);
  CHECK(f["a"].get<double>() == doctest::Approx(0.25));
  CHECK(f["b"][0].get<double>() == doctest::Approx(-1.5));
  CHECK(f["b"][1] == "x/y");
  CHECK(f["b"][2] == "12");
  CHECK(f["c"] == 5);

  auto cfg = sst_example();
  cfg.float_values = true;
  const auto rep = run_experiment(cfg);
  CHECK(rep.body["results"]["sep_bound"].get<double>() == doctest::Approx(0.0625));
}

TEST_CASE("csv rendering") {
  CHECK(render_csv({{"a", "b"}, {"1/2", "x,y"}, {"q\"", ""}}) == "a,b\n1/2,\"x,y\"\n\"q\"\"\",\n");
  ExperimentConfig cfg;
  cfg.kind = ExperimentKind::cycle;
  cfg.coloring = "RBRB";
  cfg.horizon = 2;
  const auto csv = render(run_experiment(cfg), OutputFormat::csv);
  CHECK(csv.rfind("t,separation,coverage_tail,displacement_tail,vertex_count_tail,bound_ok\n", 0) == 0);
}

TEST_CASE("configuration errors") {
  auto cfg = sst_example();
  cfg.monte_carlo = true;
  cfg.samples = 10;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);  // no seed
  cfg.seed = 1;
  cfg.samples = 0;
  CHECK_THROWS_AS(validate(cfg), InvalidArgument);

  ExperimentConfig c2;
  c2.kind = ExperimentKind::cycle;
  CHECK_THROWS_AS(run_experiment(c2), InvalidArgument);  // no coloring
  c2.coloring = "RRB";
  CHECK_THROWS_AS(run_experiment(c2), InvalidArgument);
  c2.coloring = "RB";
  c2.x0 = 2;
  CHECK_THROWS_AS(run_experiment(c2), InvalidArgument);
  c2.coloring = std::string(40, 'R') + std::string(40, 'B');
  c2.x0 = 0;
  CHECK_THROWS_AS(run_experiment(c2), CapacityError);

  auto big = sst_example();
  big.n = 7;
  big.t = 12;
  CHECK_THROWS_AS(run_experiment(big), CapacityError);
  CHECK_THROWS_AS(parse_kind("nope"), InvalidArgument);
  CHECK(parse_kind(kind_name(ExperimentKind::decompose)) == ExperimentKind::decompose);
}
