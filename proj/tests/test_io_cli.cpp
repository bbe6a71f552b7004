#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <sstream>

#include <unistd.h>

#include "oracles.hpp"
#include "weylkit/cli.hpp"
#include "weylkit/corpus.hpp"
#include "weylkit/error.hpp"
#include "weylkit/io.hpp"

using namespace weylkit;
namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code;
  std::string out, err;
  json doc() const { return json::parse(out); }
};

CliResult cli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("weylkit_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()) + "_" +
            std::to_string(::getpid()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write_corpus(const std::string& name) {
    const std::string p = path(name + ".json");
    write_json_file(p, emit_groupoid_json(file_from_corpus(corpus_by_name(name))));
    return p;
  }

  fs::path dir_;
};

ErrorCode parse_code(const json& doc, std::string* witness = nullptr) {
  try {
    parse_groupoid_json(doc);
  } catch (const Error& e) {
    if (witness) *witness = e.witness();
    return e.code();
  }
  ADD_FAILURE() << "no error";
  return ErrorCode::Io;
}
}  // namespace

TEST(Io, CorpusRoundTrip) {
  for (const auto& e : standard_corpus(5)) {
    const GroupoidFile f = file_from_corpus(e);
    const json doc = emit_groupoid_json(f);
    const GroupoidFile back = parse_groupoid_json(json::parse(doc.dump()));
    EXPECT_TRUE(same_file_content(f, back)) << e.name;
    EXPECT_EQ(emit_groupoid_json(back), doc) << e.name;
  }
}

TEST(Io, SchemaErrorsCarryPointers) {
  const json base = emit_groupoid_json(file_from_corpus(corpus_pauli()));
  std::string witness;

  json doc = base;
  doc["cocycle"]["(1,0),(1,0)"] = "2/0";
  EXPECT_EQ(parse_code(doc, &witness), ErrorCode::Schema);
  EXPECT_EQ(witness, "/cocycle/(1,0),(1,0)");

  doc = base;
  doc.erase("units");
  EXPECT_EQ(parse_code(doc, &witness), ErrorCode::Schema);

  doc = base;
  doc["arrows"][1]["source"] = 7;
  EXPECT_EQ(parse_code(doc, &witness), ErrorCode::Schema);
  EXPECT_EQ(witness, "/arrows/1/source");

  doc = base;
  doc["grading"]["values"].erase("(1,1)");
  EXPECT_EQ(parse_code(doc, &witness), ErrorCode::Schema);
  EXPECT_EQ(witness, "/grading/values");

  doc = base;
  doc["compose"].erase("(1,0),(0,1)");
  EXPECT_EQ(parse_code(doc), ErrorCode::MissingComposite);

  doc = base;
  doc["cocycle"]["(1,0),(1,0)"] = "1/3";
  const GroupoidFile f = parse_groupoid_json(doc);  // parses; the cocycle check is separate
  EXPECT_EQ(f.cocycle(f.groupoid.at("(1,0)"), f.groupoid.at("(1,0)")), Phase::of(1, 3));
}

TEST(Io, CommaKeysSplitUniquely) {
  const std::map<std::string, int> known{{"a", 0}, {"a,b", 1}, {"b,c", 2}, {"c", 3}};
  EXPECT_EQ(split_pair_key("a,b,a", known, "/k"), (std::pair<std::string, std::string>{"a,b", "a"}));
  EXPECT_EQ(split_pair_key("c,b,c", known, "/k"), (std::pair<std::string, std::string>{"c", "b,c"}));
  try {
    split_pair_key("a,b,c", known, "/k");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Schema);
    EXPECT_EQ(e.witness(), "/k");
  }
  try {
    split_pair_key("x,y", known, "/k");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownArrowId);
  }
}

TEST(Io, ActionPackageSidecarRoundTrip) {
  const CorpusEntry e = corpus_d4();
  const WeylData w = weyl_action(e.g, e.s, e.omega);
  const WeylGroupoid gw = build_weyl_groupoid(w);
  const ActionPackage pkg = derive_weyl_actions(w, gw);
  const json doc = emit_action_package(pkg, "d4.weyl");
  const ActionPackage back = parse_action_package(json::parse(doc.dump()), gw.groupoid);
  EXPECT_EQ(back.left, pkg.left);
  EXPECT_EQ(back.right, pkg.right);
  EXPECT_EQ(back.lambda, pkg.lambda);
  EXPECT_EQ(back.rho, pkg.rho);
  EXPECT_EQ(back.orbit_label, pkg.orbit_label);
  EXPECT_TRUE(verify_assumption_51(back).all_pass());

  const QuotientHT q = quotient_HT(pkg);
  const DiamondAction diamond = diamond_action(pkg, q);
  const ThetaDatum theta = theta_from_section(w, choose_section(w), q, diamond);
  EXPECT_EQ(parse_theta(json::parse(emit_theta(q, diamond, theta, "d4").dump()), q, diamond), theta);
}

TEST_F(TempDir, FileRoundTrip) {
  const std::string p = write_corpus("q8");
  const GroupoidFile f = read_groupoid_file(p);
  EXPECT_TRUE(same_file_content(f, file_from_corpus(corpus_q8())));
  try {
    read_groupoid_file(path("missing.json"));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Io);
  }
}

TEST(Cli, GenRotationTable) {
  const CliResult r = cli({"gen", "rotation", "2", "1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const GroupoidFile f = parse_groupoid_json(r.doc());
  ASSERT_EQ(f.groupoid.size(), 4);
  for (int h1 = 0; h1 < 2; ++h1)
    for (int k1 = 0; k1 < 2; ++k1)
      for (int h2 = 0; h2 < 2; ++h2)
        for (int k2 = 0; k2 < 2; ++k2) {
          const auto id = [](int h, int k) { return "(" + std::to_string(h) + "," + std::to_string(k) + ")"; };
          const auto [num, den] = oracle::rotation_phase(2, 1, k1, h2);
          EXPECT_EQ(f.cocycle(f.groupoid.at(id(h1, k1)), f.groupoid.at(id(h2, k2))), Phase::of(num, den));
        }
  EXPECT_EQ(*f.marked, (std::vector<std::string>{"(0,0)", "(1,0)"}));
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(cli({}).code, 2);
  EXPECT_EQ(cli({"validate"}).code, 2);
  EXPECT_EQ(cli({"gen", "spiral", "3"}).code, 2);
  EXPECT_EQ(cli({"validate", "/nonexistent/file.json"}).code, 2);
}

TEST_F(TempDir, ValidateReportsErrors) {
  json doc = emit_groupoid_json(file_from_corpus(corpus_pauli()));
  doc["cocycle"]["(1,0),(1,0)"] = "2/0";
  write_json_file(path("bad_phase.json"), doc);
  CliResult r = cli({"validate", path("bad_phase.json"), "--format", "json"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(r.doc()["error"], "Schema");
  EXPECT_EQ(r.doc()["witness"], "/cocycle/(1,0),(1,0)");

  doc = emit_groupoid_json(file_from_corpus(corpus_pauli()));
  doc["compose"].erase("(1,0),(0,1)");
  write_json_file(path("missing.json"), doc);
  r = cli({"validate", path("missing.json"), "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["error"], "MissingComposite");

  r = cli({"validate", write_corpus("pauli"), "--format", "json"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.doc()["status"], "valid");
}

TEST_F(TempDir, RoundtripQ8) {
  const CliResult r = cli({"roundtrip", write_corpus("q8"), "--format", "json", "-o", path("q8.boxtimes.json")});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["status"], "PASS");
  EXPECT_EQ(d["size_boxtimes"], 8);
  EXPECT_EQ(d["theta_max_order"], 2);
  EXPECT_TRUE(d.contains("note"));
  EXPECT_FALSE(d["sufficient_hypotheses"]["imm_centralizing_action"].get<bool>());
  const GroupoidFile out = read_groupoid_file(path("q8.boxtimes.json"));
  EXPECT_TRUE(oracle::brute_isomorphic(out.groupoid, corpus_q8().g));
}

TEST_F(TempDir, AlgebraCompareAgainstWeyl) {
  const std::string pauli = write_corpus("pauli");
  CliResult r = cli({"weyl", pauli, "-o", path("pauli.weyl.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = cli({"algebra", pauli, "--compare", path("pauli.weyl.json"), "--format", "json"});
  ASSERT_EQ(r.code, 0) << r.out << r.err;
  const json d = r.doc();
  EXPECT_EQ(d["verdict"], "PASS");
  EXPECT_EQ(d["blocks"], json::parse("[[2],[2]]"));

  const std::string flat = write_corpus("z2z2");
  r = cli({"algebra", pauli, "--compare", flat, "--format", "json"});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.doc()["verdict"], "FAIL");
}

TEST_F(TempDir, SeedFromEnvironment) {
  const std::string p = write_corpus("d4");
  ::setenv("WEYLKIT_SEED", "12345", 1);
  CliResult r = cli({"algebra", p, "--format", "json"});
  EXPECT_EQ(r.doc()["seed"], 12345);
  ::setenv("WEYLKIT_SEED", "twelve", 1);
  r = cli({"algebra", p, "--format", "json"});
  EXPECT_EQ(r.code, 2);
  ::unsetenv("WEYLKIT_SEED");
  r = cli({"algebra", p, "--format", "json", "--seed", "99"});
  EXPECT_EQ(r.doc()["seed"], 99);
}

TEST_F(TempDir, PackageSidecarThroughCli) {
  const std::string q8 = write_corpus("q8");
  ASSERT_EQ(cli({"weyl", q8, "-o", path("q8.weyl.json")}).code, 0);
  ASSERT_EQ(cli({"assumption51", q8, "-o", path("q8.package.json")}).code, 0);
  const CliResult r = cli({"assumption51", path("q8.weyl.json"), "--package", path("q8.package.json"), "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_EQ(r.doc()["status"], "PASS");
}

TEST_F(TempDir, HypothesesAndExpectation) {
  const std::string pauli = write_corpus("pauli");
  CliResult r = cli({"hypotheses", pauli, "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.doc()["status"], "PASS");
  r = cli({"hypotheses", write_corpus("s3_ungraded"), "--subgroupoid", "auto", "--format", "json"});
  EXPECT_EQ(r.doc()["command"], "hypotheses");
  r = cli({"expectation", pauli, "--trials", "20", "--format", "json"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(r.doc()["trials"], 20);
  r = cli({"twist", pauli});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
}
