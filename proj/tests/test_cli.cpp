#include "catch_amalgamated.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "anticonc/cli.hpp"

using namespace anticonc;
using json = nlohmann::json;

namespace {

struct run_result {
  int code;
  std::string out;
  std::string err;
  json report() const { return json::parse(out); }
};

run_result run(std::vector<std::string> args) {
  args.insert(args.begin(), "anticonc");
  std::ostringstream out, err;
  int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string sample(const std::string& name) { return std::string(ANTICONC_SAMPLES) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& content) {
  std::string path = std::string("/tmp/anticonc_cli_test_") + name;
  std::ofstream(path) << content;
  return path;
}

}  // namespace

TEST_CASE("nu-star prints the lattice measure") {
  auto r = run({"nu-star", "--alpha", "2/5"});
  REQUIRE(r.code == 0);
  json j = r.report();
  CHECK(j["offset_index"] == -2);
  CHECK(j["weights"].size() == 5);
  CHECK(j["weights"][0] == "1/5");
}

TEST_CASE("t-value is exact with repetition syntax") {
  auto r = run({"t-value", "--alphas", "1/2*3"});
  REQUIRE(r.code == 0);
  CHECK(r.report() == "3/8");
  auto many = run({"t-value", "--alphas", "1/2*100"});
  REQUIRE(many.code == 0);
  CHECK(many.report().is_number_float());
}

TEST_CASE("csv output flattens the report") {
  auto r = run({"--output", "csv", "nu-star", "--alpha", "1/2"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "key,value\noffset_index,-1\nweights[0],1/2\nweights[1],0/1\nweights[2],1/2\n");
  auto after = run({"nu-star", "--alpha", "1/2", "--output", "csv"});
  CHECK(after.out == r.out);
}

TEST_CASE("concentration handles lattice and vector inputs") {
  auto lattice = run({"concentration", "--input", sample("lattice_bernoulli.json")});
  REQUIRE(lattice.code == 0);
  CHECK(lattice.report()["value"] == "1/2");
  auto vec = run({"concentration", "--input", sample("pentagon_measure.json")});
  REQUIRE(vec.code == 0);
  CHECK(vec.report()["value"] == "1/4");
}

TEST_CASE("berge-check finds the five-cycle") {
  auto r = run({"berge-check", "--input", sample("c5_graph.json")});
  REQUIRE(r.code == 0);
  CHECK(r.report()["odd_hole"]["cycle"].size() == 5);
  auto full = run({"berge-check", "--input", sample("near_line_points.json"), "--complement"});
  REQUIRE(full.code == 0);
  CHECK(full.report()["berge"] == true);
}

TEST_CASE("decompose reports separated classes") {
  auto r = run({"decompose", "--input", sample("near_line_points.json")});
  REQUIRE(r.code == 0);
  json j = r.report();
  CHECK(j["holds"] == true);
  CHECK(j["K"] == j["omega"]);
  CHECK(j["alpha"] == "1/3");
  auto tight = run({"decompose", "--input", sample("near_line_points.json"), "--alpha", "1/6"});
  CHECK(tight.code == 2);
  CHECK(tight.err.find("domain error") != std::string::npos);
}

TEST_CASE("btk-chains and jones-bound on sample blocks") {
  auto pair = run({"btk-chains", "--input", sample("blocks.json")});
  REQUIRE(pair.code == 0);
  CHECK(pair.report()["sizes"] == json::array({4, 2}));
  CHECK(pair.report()["verified"] == true);
  auto triple = run({"btk-chains", "--input", sample("blocks3.json")});
  REQUIRE(triple.code == 0);
  CHECK(triple.report()["middle_layer_count"] == "4");
  auto jones = run({"jones-bound", "--input", sample("blocks3.json")});
  REQUIRE(jones.code == 0);
  CHECK(jones.report()["bound"] == "1/3");
  CHECK(jones.report()["q_within_bound"] == true);
}

TEST_CASE("invalid blocks are input errors") {
  auto path = write_temp("bad_blocks.json", R"({"norm":"l2","dim":2,"blocks":[[["0","0"],["1/2","0"]]]})");
  auto r = run({"btk-chains", "--input", path});
  CHECK(r.code == 2);
  CHECK(r.err.find("blocks[0]") != std::string::npos);
}

TEST_CASE("clt-window exits 1 when a hypothesis fails") {
  auto r = run({"clt-window", "--alphas", "1/2*400", "--delta-prime", "0.05"});
  CHECK(r.code == 1);
  json j = r.report();
  CHECK(j["first_failure"] == "epsilon_at_most_half");
  CHECK(j["contained"] == true);
}

TEST_CASE("main-bound exits 1 and still prints the expression") {
  auto r = run({"main-bound", "--alphas", "1/2*1000"});
  CHECK(r.code == 1);
  json j = r.report();
  CHECK(j["value"].is_null());
  CHECK(j["expression"].is_number());
  CHECK(j["conditions"].size() == 10);
}

TEST_CASE("halasz on the sample measures") {
  auto r = run({"halasz", "--input", sample("halasz_measures.json"), "--c-h", "1"});
  REQUIRE(r.code == 0);
  json j = r.report();
  CHECK(j["per_measure_D"].size() == 3);
  CHECK(j["bound"].is_number());
  auto l1 = write_temp("halasz_l1.json",
                       R"({"measures":[{"norm":"l1","dim":2,"atoms":[{"point":["0","0"],"weight":"1"}]}]})");
  auto bad = run({"halasz", "--input", l1});
  CHECK(bad.code == 2);
}

TEST_CASE("bundled scenarios pass") {
  auto oct = run({"octagon"});
  REQUIRE(oct.code == 0);
  CHECK(oct.report()["q_sum"] == "3/8");
  CHECK(oct.report()["t"] == "11/32");
  auto sharp = run({"sharpness", "--epsilon", "1/1000", "--instances", "50"});
  REQUIRE(sharp.code == 0);
  CHECK(sharp.report()["odd_hole"]["cycle"].size() == 5);
  auto thm = run({"verify-theorem22", "--config", sample("sum_bound_config.json"), "--seed", "3"});
  REQUIRE(thm.code == 0);
  CHECK(thm.report()["violations"] == 0);
  auto given = run({"verify-theorem22", "--input", sample("sum_bound_instances.json"), "--details"});
  REQUIRE(given.code == 0);
  CHECK(given.report()["instances"].size() == 1);
}

TEST_CASE("empirical measures depend only on the seed") {
  auto a = run({"--seed", "4", "empirical", "--input", sample("pentagon_measure.json"), "--n", "20"});
  auto b = run({"empirical", "--input", sample("pentagon_measure.json"), "--n", "20", "--seed", "4"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("bad input exits 2 with a message") {
  CHECK(run({}).code == 2);
  CHECK(run({"nu-star"}).code == 2);
  CHECK(run({"nu-star", "--alpha", "3/2"}).code == 2);
  CHECK(run({"t-value", "--alphas", "x"}).code == 2);
  CHECK(run({"--output", "xml", "octagon"}).code == 2);
  auto missing = run({"concentration", "--input", "/nonexistent.json"});
  CHECK(missing.code == 2);
  CHECK(missing.err.find("cannot open") != std::string::npos);
  auto path = write_temp("bad_weight.json", R"({"norm":"l2","dim":2,"atoms":[{"point":["0","0"],"weight":"x"}]})");
  auto bad = run({"concentration", "--input", path});
  CHECK(bad.code == 2);
  CHECK(bad.err.find("atoms[0].weight") != std::string::npos);
  auto garbage = run({"concentration", "--input", write_temp("garbage.json", "{not json")});
  CHECK(garbage.code == 2);
}

TEST_CASE("resource caps come from the environment") {
  ::setenv("ANTICONC_CAPS", "lattice_points=3", 1);
  auto capped = run({"t-value", "--alphas", "1/2,1/2"});
  ::unsetenv("ANTICONC_CAPS");
  CHECK(capped.code == 2);
  CHECK(capped.err.find("resource cap") != std::string::npos);
  CHECK(run({"t-value", "--alphas", "1/2,1/2"}).code == 0);
}

TEST_CASE("the installed binary behaves like the in-process runner") {
  const std::string cmd = std::string(ANTICONC_CLI) + " t-value --alphas 1/2*3 > /tmp/anticonc_cli_test_out.txt";
  REQUIRE(std::system(cmd.c_str()) == 0);
  std::ifstream in("/tmp/anticonc_cli_test_out.txt");
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run({"t-value", "--alphas", "1/2*3"}).out);
  CHECK(std::system((std::string(ANTICONC_CLI) + " nu-star --alpha 0 2>/dev/null").c_str()) != 0);
}
