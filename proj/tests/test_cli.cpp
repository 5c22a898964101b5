#include <gcn/cli.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace gcn;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  args.insert(args.begin(), "gcn");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = std::filesystem::temp_directory_path() /
           ("gcn_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    std::filesystem::create_directories(dir_);
  }
  void TearDown() override { std::filesystem::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p);
    return std::string(std::istreambuf_iterator<char>(in), {});
  }

  std::filesystem::path dir_;
};

}  // namespace

TEST_F(CliTest, GenerateAnalyzeVerifyRoundTrip) {
  const auto set = path("p3.json");
  ASSERT_EQ(run({"generate", "--family", "principal", "--degree", "3", "-o", set}).code, 0);
  const Json X = Json::parse(slurp(set));
  EXPECT_EQ(X["degree"], 3);
  EXPECT_EQ(X["nodes"].size(), 10u);
  EXPECT_EQ(to_json(nodeset_from_json(X)), X);

  const auto analyzed = run({"analyze", set, "--svg", path("p3.svg"), "--line", "0,1,-1"});
  ASSERT_EQ(analyzed.code, 0) << analyzed.err;
  const Json report = Json::parse(analyzed.out);
  EXPECT_EQ(report["gc_status"], "yes");
  EXPECT_EQ(report["fingerprint"], fingerprint(nodeset_from_json(X)));
  EXPECT_NE(slurp(path("p3.svg")).find("<svg"), std::string::npos);

  const auto verified = run({"verify", set, "--check", "all", "-o", path("v.json")});
  EXPECT_EQ(verified.code, 0) << verified.err;
  const Json v = Json::parse(slurp(path("v.json")));
  EXPECT_EQ(v["summary"]["fail"], 0);
  EXPECT_GT(v["summary"]["pass"].get<int>(), 0);
  EXPECT_EQ(v["conjecture"]["findings"], 0);
}

TEST_F(CliTest, OutputIsByteIdenticalAcrossRuns) {
  for (const char* family : {"chung_yao", "random_poised", "gc3_four_maximal"}) {
    const auto a = run({"generate", "--family", family, "--degree", "3", "--seed", "9", "--perturb", "affine"});
    const auto b = run({"generate", "--family", family, "--degree", "3", "--seed", "9", "--perturb", "affine"});
    ASSERT_EQ(a.code, 0) << a.err;
    EXPECT_EQ(a.out, b.out);
    const auto set = write(std::string(family) + ".json", a.out);
    EXPECT_EQ(run({"analyze", set}).out, run({"analyze", set}).out);
    EXPECT_EQ(run({"verify", set, "--check", "all"}).out, run({"verify", set, "--check", "all"}).out);
  }
}

TEST_F(CliTest, GenerateWithExplicitLines) {
  const auto lines = write("lines.json", R"({"lines": [{"a": "1", "b": "0", "c": "0"}, {"a": "0", "b": "1", "c": "0"},
                                                       {"a": "1", "b": "1", "c": "-3"}, {"a": 1, "b": -1, "c": -1}]})");
  const auto r = run({"generate", "--family", "chung_yao", "--degree", "2", "--lines", lines});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out)["nodes"].size(), 6u);
  const auto parallel = write("par.json", R"([{"a": 1, "b": 0, "c": 0}, {"a": 1, "b": 0, "c": -1},
                                                {"a": 0, "b": 1, "c": 0}, {"a": 1, "b": 1, "c": -5}])");
  const auto bad = run({"generate", "--family", "chung_yao", "--degree", "2", "--lines", parallel});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("parallel"), std::string::npos);
}

TEST_F(CliTest, InvalidInputsExitWithUsageCode) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "principal"}).code, 2);  // missing degree
  EXPECT_EQ(run({"generate", "--family", "nope", "--degree", "2"}).code, 2);
  EXPECT_EQ(run({"generate", "--family", "principal", "--degree", "2", "--bogus"}).code, 2);
  EXPECT_EQ(run({"verify", path("missing.json"), "--check", "nline"}).code, 2);

  const auto dup = write("dup.json", R"({"degree": 1, "nodes": [{"x": "0", "y": "0"}, {"x": "0", "y": "0"},
                                                                 {"x": "1", "y": "0"}]})");
  const auto r = run({"analyze", dup});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("duplicate"), std::string::npos);

  EXPECT_EQ(run({"analyze", write("broken.json", "{\"degree\": 2, \"nodes\": [")}).code, 2);
  EXPECT_EQ(run({"analyze", write("badnum.json", R"({"degree": 1, "nodes": [{"x": "1/0", "y": "0"}]})")}).code, 2);
  EXPECT_EQ(run({"analyze", write("deg0.json", R"({"degree": 0, "nodes": [{"x": "1", "y": "0"}]})")}).code, 2);
  const auto set = write("ok.json", run({"generate", "--family", "principal", "--degree", "2"}).out);
  EXPECT_EQ(run({"verify", set, "--check", "bogus"}).code, 2);
  EXPECT_EQ(run({"analyze", set, "--line", "1,2"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(CliTest, NonPoisedAnalyzeReportsWitness) {
  const auto set = write("row.json", R"({"degree": 1, "nodes": [{"x": "0", "y": "0"}, {"x": "1", "y": "0"},
                                                                 {"x": "2", "y": "0"}]})");
  const auto r = run({"analyze", set});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_FALSE(j["is_poised"].get<bool>());
  EXPECT_EQ(j["dependence_witness"]["kind"], "collinear_n_plus_2");
  const auto v = run({"verify", set, "--check", "all"});
  EXPECT_EQ(v.code, 0);
  EXPECT_EQ(Json::parse(v.out)["summary"]["pass"], 0);
}

TEST_F(CliTest, ScanWritesDeterministicReport) {
  const auto config = write("scan.json", R"({"checks": ["nline", "structure", "conjecture"],
    "corpus": [{"family": "principal", "degrees": [2, 3, 4]},
               {"family": "gc3_four_maximal", "degree": 3, "count": 3, "bound": 6}]})");
  const auto one = run({"scan", "--config", config, "-o", path("r1.json"), "--threads", "1"});
  ASSERT_EQ(one.code, 0) << one.err;
  ASSERT_EQ(run({"scan", "--config", config, "-o", path("r2.json"), "--threads", "2"}).code, 0);
  EXPECT_EQ(slurp(path("r1.json")), slurp(path("r2.json")));
  const Json r = Json::parse(slurp(path("r1.json")));
  EXPECT_EQ(r["summary"]["items"], 6);
  EXPECT_EQ(r["summary"]["fail"], 0);
  EXPECT_FALSE(r["config"].contains("threads"));
  EXPECT_EQ(run({"scan", "--config", config}).code, 2);  // -o is required
  EXPECT_EQ(run({"scan", "--config", write("arr.json", "[]"), "-o", path("x.json")}).code, 2);
}
