#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>
#include <json.hpp>
#include <sys/wait.h>

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

struct Outcome {
  int exit_code;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("plwe_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  fs::path path(const std::string& name) const { return dir_ / name; }

  Outcome run(const std::string& args) const {
    const fs::path out = dir_ / "stdout", err = dir_ / "stderr";
    const std::string cmd = std::string(PLWE_CLI_PATH) + " " + args + " >" + out.string() + " 2>" +
                            err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
  }

  Json run_json(const std::string& args) const {
    const Outcome r = run(args);
    EXPECT_EQ(r.exit_code, 0) << args << "\n" << r.err;
    return Json::parse(r.out);
  }

  fs::path dir_;
};

}  // namespace

TEST_F(Cli, LehmerGeometry) {
  const Json j = run_json("geometry --lehmer");
  EXPECT_EQ(j.at("schema"), 1);
  EXPECT_NEAR(j.at("distortion").get<double>(), 3.214, 1e-3);
  EXPECT_NEAR(j.at("mahler").get<double>(), 1.17628, 1e-5);
}

TEST_F(Cli, PowerOfTwoCyclotomicGeometry) {
  const Json j = run_json("geometry --f \"x^4+1\"");
  EXPECT_NEAR(j.at("distortion").get<double>(), 1.0, 1e-9);
  EXPECT_EQ(j.at("s1"), 0);
  EXPECT_EQ(j.at("s2"), 2);
  EXPECT_NEAR(run_json("mahler --cyclotomic 11").at("mahler").get<double>(), 1.0, 1e-9);
}

TEST_F(Cli, SearchGenAttackRoundTrip) {
  const std::string params = path("params.json").string();
  const std::string batch = path("batch.json").string();
  ASSERT_EQ(run("search --r 3 --n 8 --q0 20 --out " + params).exit_code, 0);
  const Json p = Json::parse(slurp(params));
  const std::uint64_t a = p.at("a");
  ASSERT_EQ(run("gen --ring " + params + " --count 40 --sigma 1 --seed 7 --out " + batch).exit_code, 0);
  Json rep = run_json("attack --batch " + batch + " --alpha-one --sigma 1");
  EXPECT_EQ(rep.at("verdict"), "valid");
  rep = run_json("attack --batch " + batch + " --small-order --alpha " + std::to_string(a) + " --sigma 1");
  EXPECT_EQ(rep.at("verdict"), "valid");

  ASSERT_EQ(run("gen --ring " + params + " --count 40 --uniform --seed 7 --out " + batch).exit_code, 0);
  EXPECT_EQ(Json::parse(slurp(batch)).at("provenance"), "uniform");
  rep = run_json("attack --batch " + batch + " --alpha-one --sigma 1");
  EXPECT_EQ(rep.at("verdict"), "uniform");
}

TEST_F(Cli, SeedDeterminism) {
  const std::string base = "gen --f \"x^4+1\" --q 257 --count 5 --seed 11";
  const Outcome a = run(base), b = run(base), c = run("gen --f \"x^4+1\" --q 257 --count 5 --seed 12");
  ASSERT_EQ(a.exit_code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_NE(a.out, c.out);
  // Flags are accepted before and after the subcommand.
  EXPECT_EQ(run("--seed 11 gen --f \"x^4+1\" --q 257 --count 5").out, a.out);
}

TEST_F(Cli, SecretFileMatchesBatch) {
  const std::string batch = path("b.json").string(), secret = path("s.json").string();
  ASSERT_EQ(run("gen --f \"x^4+1\" --q 257 --count 3 --seed 3 --secret-out " + secret + " --out " + batch)
                .exit_code,
            0);
  const Json s = Json::parse(slurp(secret));
  EXPECT_EQ(s.at("secret").size(), 4u);
  EXPECT_EQ(s.at("evaluations").size(), 4u);
}

TEST_F(Cli, CsvOutput) {
  const Outcome r = run("gen --f \"x^2+x+1\" --q 7 --count 2 --format csv");
  ASSERT_EQ(r.exit_code, 0);
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "a0,a1,b0,b1");
  const Outcome n = run("nrq --r 3 --q 31 --format csv");
  ASSERT_EQ(n.exit_code, 0);
  EXPECT_NE(n.out.find("n_rq"), std::string::npos);
}

TEST_F(Cli, InputErrorsExitTwo) {
  Outcome r = run("gen --f \"x^2+1\" --q 7 --count 2");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.err.find("split"), std::string::npos);
  EXPECT_EQ(run("gen --f \"x^^2\" --q 7").exit_code, 2);
  EXPECT_EQ(run("gen --f \"x^2+1\" --q 9").exit_code, 2);
  EXPECT_EQ(run("frobnicate").exit_code, 2);
  EXPECT_EQ(run("attack --batch " + path("missing.json").string() + " --alpha-one").exit_code, 2);
  std::ofstream(path("junk.json")) << "{not json";
  EXPECT_EQ(run("attack --batch " + path("junk.json").string() + " --alpha-one").exit_code, 2);
}

TEST_F(Cli, CapacityErrorExitsThreeWithSuggestion) {
  const std::string params = path("params.json").string();
  const std::string batch = path("batch.json").string();
  ASSERT_EQ(run("search --r 3 --n 8 --q0 30 --out " + params).exit_code, 0);
  ASSERT_EQ(run("gen --ring " + params + " --count 4 --sigma 100 --out " + batch).exit_code, 0);
  const Outcome r = run("attack --batch " + batch + " --small-order --sigma 100");
  EXPECT_EQ(r.exit_code, 3);
  EXPECT_NE(r.err.find("suggestion"), std::string::npos);
}

TEST_F(Cli, SearchExhaustedExitsThree) {
  EXPECT_EQ(run("search --r 3 --n 8 --q0 20 --i-budget 0").exit_code, 3);
}

TEST_F(Cli, IllConditionedGeometryExitsFour) {
  const std::string params = path("params.json").string();
  ASSERT_EQ(run("search --r 3 --n 16 --q0 40 --out " + params).exit_code, 0);
  const Outcome r = run("geometry --f-file " + params);
  EXPECT_EQ(r.exit_code, 4) << r.out;
}

TEST_F(Cli, EpsilonAndSuccessProbability) {
  Json j = run_json("epsilon --n 64 --q 1125901148356951 --alpha 1");
  EXPECT_DOUBLE_EQ(j.at("epsilon").get<double>(), 0.5);
  j = run_json("success-prob --ell 10 --q 257 --epsilon 0.1");
  EXPECT_GT(j.at("overall").get<double>(), 0.5);
  EXPECT_LE(j.at("overall").get<double>(), 1.0);
}

TEST_F(Cli, Audit) {
  const std::string params = path("params.json").string();
  ASSERT_EQ(run("search --r 3 --n 8 --q0 16 --out " + params).exit_code, 0);
  const Json j = run_json("audit --ring " + params);
  EXPECT_TRUE(j.at("root_one").get<bool>());
  EXPECT_EQ(j.at("galois"), "not decided");
}
