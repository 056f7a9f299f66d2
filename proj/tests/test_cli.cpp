#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "hallcrit/cli.hpp"

using namespace hallcrit;
using hallcrit::cli::Request;
using hallcrit::cli::run_command;

namespace {

const std::filesystem::path kData = HALLCRIT_DATA_DIR;

std::string data(const char* name) { return (kData / name).string(); }

Request req(std::string command, std::optional<std::string> input = std::nullopt) {
  Request r;
  r.command = std::move(command);
  r.input = std::move(input);
  return r;
}

}  // namespace

TEST(Cli, CommandList) {
  EXPECT_EQ(cli::commands().size(), 10u);
}

TEST(Cli, CounterexampleReportIsReproduced) {
  auto r = run_command(req("paper-example"));
  EXPECT_EQ(r.exit_code, 0);
  const auto& res = r.body["result"];
  EXPECT_TRUE(res["reproduced"].get<bool>());
  for (const auto& [k, v] : res["checks"].items()) EXPECT_TRUE(v.get<bool>()) << k;
  EXPECT_FALSE(r.body.contains("timing_ms"));
}

TEST(Cli, ReportsAreDeterministic) {
  for (const char* cmd : {"paper-example", "catalog"}) {
    auto a = run_command(req(cmd)), b = run_command(req(cmd));
    EXPECT_EQ(a.rendered, b.rendered) << cmd;
    EXPECT_EQ(nlohmann::json::parse(a.rendered), a.body) << cmd;
  }
  auto a = run_command(req("jacobi", data("d4.json")));
  auto b = run_command(req("jacobi", data("d4.json")));
  EXPECT_EQ(a.rendered, b.rendered);
  EXPECT_EQ(a.body["input_digest"], b.body["input_digest"]);
  EXPECT_NE(a.body["input_digest"], run_command(req("jacobi", data("s3.json"))).body["input_digest"]);
}

TEST(Cli, TimingIsOptIn) {
  auto r = req("catalog");
  r.timing = true;
  EXPECT_TRUE(run_command(r).body.contains("timing_ms"));
}

TEST(Cli, ClassAndSeries) {
  auto d4 = run_command(req("class", data("d4.json")));
  EXPECT_EQ(d4.exit_code, 0);
  EXPECT_EQ(d4.body["result"]["class"]["status"], "nilpotent");
  EXPECT_EQ(d4.body["result"]["class"]["class"], 2);
  auto s3 = run_command(req("class", "catalog:S3"));
  EXPECT_EQ(s3.body["result"]["class"]["status"], "not_nilpotent");
  auto ring = run_command(req("series", data("ring_e.json")));
  EXPECT_EQ(ring.exit_code, 0);
  EXPECT_EQ(ring.body["result"]["series"]["status"], "stabilized_nonzero");
}

TEST(Cli, LawsOnGroupsRingsAndTables) {
  EXPECT_EQ(run_command(req("axioms", data("d4.json"))).exit_code, 0);
  EXPECT_EQ(run_command(req("jacobi", data("divisors12.json"))).exit_code, 0);
  EXPECT_EQ(run_command(req("associative", data("chain3_meet.json"))).exit_code, 0);
  auto ring = req("jacobi", data("ring_e.json"));
  ring.subobjects = {data("ring_n.json")};
  auto r = run_command(ring);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_FALSE(r.body["result"]["jacobi"]["holds"].get<bool>());
  EXPECT_TRUE(r.body["result"]["jacobi"].contains("witness_elements"));
}

TEST(Cli, HallOnGroupsAndRings) {
  auto g = req("hall", data("d4.json"));
  g.subobjects = {data("d4_whole.json")};
  g.quotient_by = "commutator";
  auto gr = run_command(g);
  EXPECT_EQ(gr.exit_code, 0);
  EXPECT_TRUE(gr.body["result"]["verdict"]["theorem_holds"].get<bool>());

  auto r = req("hall", data("ring_e.json"));
  r.subobjects = {data("ring_n.json")};
  r.hom = data("ring_p.json");
  r.codomain = data("ring_b.json");
  auto rr = run_command(r);
  EXPECT_EQ(rr.exit_code, 1);
  EXPECT_TRUE(rr.body["result"]["verdict"]["hypotheses_hold"].get<bool>());
  EXPECT_FALSE(rr.body["result"]["verdict"]["theorem_holds"].get<bool>());

  r.quotient_by = "commutator";
  EXPECT_EQ(run_command(r).exit_code, 2);
}

TEST(Cli, ConditionsAndBounds) {
  EXPECT_EQ(run_command(req("conditions", "catalog:Q8")).exit_code, 0);
  auto ring = req("conditions", data("ring_e.json"));
  ring.subobjects = {data("ring_n.json")};
  auto r = run_command(ring);
  EXPECT_EQ(r.exit_code, 1);
  EXPECT_FALSE(r.body["result"]["conditions"]["b_ii"]["holds"].get<bool>());
  auto b = run_command(req("bounds-verify", "catalog:D4"));
  EXPECT_EQ(b.exit_code, 0);
  EXPECT_TRUE(b.body["result"]["all_hold"].get<bool>());
  auto bad = req("bounds-verify", data("ring_e.json"));
  bad.subobjects = {data("ring_n.json")};
  auto br = run_command(bad);
  EXPECT_EQ(br.exit_code, 1);
  EXPECT_TRUE(br.body["result"].contains("preconditions"));
}

TEST(Cli, InputErrorsExitTwo) {
  auto missing = run_command(req("class"));
  EXPECT_EQ(missing.exit_code, 2);
  EXPECT_EQ(missing.body["error"]["location"], "--input");
  EXPECT_EQ(run_command(req("class", data("bad_group.json"))).exit_code, 2);
  EXPECT_EQ(run_command(req("class", data("nope.json"))).exit_code, 2);
  EXPECT_EQ(run_command(req("class", "catalog:Nope")).exit_code, 2);
  EXPECT_EQ(run_command(req("frobnicate")).exit_code, 2);
  auto fmt = req("catalog");
  fmt.format = "xml";
  EXPECT_EQ(run_command(fmt).exit_code, 2);
  auto steps = req("class", data("d4.json"));
  steps.max_steps = 0;
  EXPECT_EQ(run_command(steps).exit_code, 2);
  auto not_ideal = req("jacobi", data("ring_e.json"));
  not_ideal.subobjects = {data("d4_center.json")};
  EXPECT_EQ(run_command(not_ideal).exit_code, 2);
}

TEST(Cli, TextFormat) {
  auto r = req("paper-example");
  r.format = "text";
  auto out = run_command(r).rendered;
  EXPECT_NE(out.find("reproduced: true"), std::string::npos);
  EXPECT_EQ(out.find('{'), std::string::npos);
}

TEST(Cli, CatalogDirectoryExtendsLookups) {
  auto dir = std::filesystem::temp_directory_path() / "hallcrit_cli_catalog";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  std::filesystem::copy_file(kData / "s3.json", dir / "my_s3.json");
  auto cat = req("catalog");
  cat.catalog_dir = dir.string();
  auto r = run_command(cat);
  EXPECT_EQ(r.body["result"]["count"], 43);
  EXPECT_EQ(r.body["result"]["groups"].back()["source"], "directory");
  auto cls = req("class", "catalog:my_s3");
  cls.catalog_dir = dir.string();
  EXPECT_EQ(run_command(cls).body["result"]["class"]["status"], "not_nilpotent");
  std::filesystem::remove_all(dir);
}
