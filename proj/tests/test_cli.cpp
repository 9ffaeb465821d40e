#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "abconvex");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = abconvex::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("abconvex_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string slurp(const std::string& name) const {
    std::ifstream in(path(name));
    return {std::istreambuf_iterator<char>(in), {}};
  }
  void write(const std::string& name, const std::string& content) const { std::ofstream(path(name)) << content; }

  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, EggJson) {
  const auto r = run({"egg", "--alpha", "1", "--beta", "2", "--perimeter", "9.42477796076938"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto body = std::get<abconvex::ArcBody>(abconvex::parse_body(r.out));
  EXPECT_EQ(body.arcs().size(), 4u);
}

TEST_F(CliTest, LuneHasCorners) {
  const auto r = run({"egg", "--alpha", "0", "--beta", "1", "--perimeter", "3.141592653589793"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto body = std::get<abconvex::ArcBody>(abconvex::parse_body(r.out));
  int corners = 0;
  for (const auto& a : body.arcs()) corners += a.radius == 0.0 ? 1 : 0;
  EXPECT_EQ(corners, 2);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(run({"egg", "--alpha", "1", "--beta", "2"}).code, 2);
  EXPECT_EQ(run({"egg", "--alpha", "1", "--beta", "2", "--perimeter", "1"}).code, 2);
  EXPECT_EQ(run({"egg", "--alpha", "1", "--beta", "2", "--perimeter", "9", "--perimeter-pi", "3"}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({}).code, 2);
  const auto bad = run({"bound", "--alpha", "1", "--beta", "2", "--perimeter", "20"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("2*pi*beta"), std::string::npos) << bad.err;
}

TEST_F(CliTest, EggCsvToFile) {
  const auto r = run({"egg", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "--format", "csv", "--samples",
                      "128", "--out", path("egg.csv")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const std::string csv = slurp("egg.csv");
  EXPECT_EQ(csv.rfind("t,x,y\n", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 129);
}

TEST_F(CliTest, IoFailureIsExitThree) {
  const auto r = run({"egg", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "--out", path("no/such/dir.json")});
  EXPECT_EQ(r.code, 3);
}

TEST_F(CliTest, NGon) {
  const auto r = run({"ngon", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "-n", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(std::get<abconvex::ArcBody>(abconvex::parse_body(r.out)).arcs().size(), 6u);
  EXPECT_EQ(run({"ngon", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "-n", "1"}).code, 2);
}

TEST_F(CliTest, BoundTable) {
  auto r = run({"bound", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("6.853981633974483"), std::string::npos) << r.out;
  r = run({"bound", "--alpha", "1", "--beta", "2", "--perimeter-pi", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("3.141592653589793"), std::string::npos) << r.out;
  r = run({"bound", "--alpha", "1", "--beta", "2", "--perimeter-pi", "4"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("12.566370614359172"), std::string::npos) << r.out;
}

TEST_F(CliTest, CheckVerdicts) {
  ASSERT_EQ(run({"egg", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "--out", path("egg.json")}).code, 0);
  auto r = run({"check", path("egg.json")});
  EXPECT_EQ(r.code, 0) << r.out << r.err;
  EXPECT_NE(r.out.find("deficit"), std::string::npos);

  write("disk.json", abconvex::to_json(abconvex::make_disk(1.5, 1.0, 2.0)));
  r = run({"check", path("disk.json"), "--json"});
  EXPECT_EQ(r.code, 0);
  const auto report = nlohmann::json::parse(r.out.substr(0, r.out.find('\n')));
  EXPECT_GT(report.at("deficit").get<double>(), 0.0);

  // Sampled body whose radius of curvature exceeds beta on a patch.
  std::vector<double> rho(256, 1.5);
  for (std::size_t i = 40; i < 60; ++i) rho[i] = 3.0;
  for (std::size_t i = 168; i < 188; ++i) rho[i] = 3.0;
  write("bad.json", abconvex::to_json(abconvex::support_from_curvature(rho, 10.0)));
  r = run({"check", path("bad.json"), "--alpha", "1", "--beta", "2", "--samples", "256"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("violation nodes"), std::string::npos) << r.out;

  EXPECT_EQ(run({"check", path("bad.json")}).code, 2);
  write("junk.json", "{not json");
  EXPECT_EQ(run({"check", path("junk.json")}).code, 2);
  EXPECT_EQ(run({"check", path("missing.json")}).code, 2);
}

TEST_F(CliTest, OptimizeSummaryAndDeterminism) {
  const std::vector<std::string> args{"optimize", "--alpha", "1",       "--beta", "2", "--perimeter-pi", "3",
                                      "--seeds",  "1",       "--cells", "128",    "--sharpen"};
  auto a = args;
  a.insert(a.end(), {"--out", path("a.json"), "--trace", path("a.csv")});
  auto b = args;
  b.insert(b.end(), {"--out", path("b.json")});
  const auto ra = run(a);
  const auto rb = run(b);
  ASSERT_EQ(ra.code, 0) << ra.err;
  ASSERT_EQ(rb.code, 0) << rb.err;
  EXPECT_EQ(slurp("a.json"), slurp("b.json"));
  EXPECT_EQ(ra.out, rb.out);
  EXPECT_NE(ra.out.find("switch_count                4"), std::string::npos) << ra.out;
  EXPECT_EQ(slurp("a.csv").rfind("iter,area,residual\n", 0), 0u);
  const auto j = nlohmann::json::parse(slurp("a.json"));
  EXPECT_LT(std::abs(j.at("gap").get<double>()), 1e-2);
  EXPECT_LE(j.at("egg_distance").get<double>(), 1e-2);
}

TEST_F(CliTest, Sweep) {
  const auto r = run({"sweep", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "--nmax", "16"});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("argmin N                    2"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("6.853981633974483"), std::string::npos);
}

TEST_F(CliTest, Render) {
  ASSERT_EQ(run({"egg", "--alpha", "1", "--beta", "2", "--perimeter-pi", "3", "--out", path("egg.json")}).code, 0);
  auto r = run({"render", path("egg.json"), "--out", path("egg.svg"), "--width", "400"});
  ASSERT_EQ(r.code, 0) << r.err;
  const std::string svg = slurp("egg.svg");
  EXPECT_NE(svg.find("width=\"400\""), std::string::npos);

  write("sampled.json", abconvex::to_json(abconvex::SampledSupport(std::vector<double>(64, 1.0))));
  r = run({"render", path("sampled.json")});
  ASSERT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("<polygon"), std::string::npos);

  write("empty.json", R"({"kind":"arcs","alpha":1,"beta":2,"arcs":[]})");
  EXPECT_EQ(run({"render", path("empty.json")}).code, 2);
  EXPECT_EQ(run({"render", path("egg.json"), "--out", path("no/dir/x.svg")}).code, 3);
}
