#include <gtest/gtest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "icb/io.hpp"
#include "icb/rational.hpp"

namespace fs = std::filesystem;

namespace {

struct CliResult {
  int code = -1;
  std::string out;
};

class Cli : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("icb_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    write("c5.json", R"({"graph":{"vertices":[1,2,3,4,5],"edges":[[1,2],[2,3],[3,4],[4,5],[5,1]]}})");
    write("empty3.json", R"({"graph":{"vertices":["a","b","c"],"edges":[]}})");
    write("bad.json", "{ nope");
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::string path(const std::string& name) { return (dir_ / name).string(); }
  static void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }

  static CliResult run(const std::string& args, const std::string& env = "") {
    const std::string cmd = "cd '" + dir_.string() + "' && " + env + " '" + ICB_BINARY + "' " + args + " 2>&1";
    CliResult r;
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) return r;
    std::array<char, 4096> buf{};
    while (std::fgets(buf.data(), buf.size(), pipe) != nullptr) r.out += buf.data();
    const int status = ::pclose(pipe);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
  }

  // Value printed after "prefix = ".
  static icb::Rational value_after(const std::string& out, const std::string& prefix) {
    const auto at = out.find(prefix + " = ");
    if (at == std::string::npos) return -1;
    const auto start = at + prefix.size() + 3;
    return icb::parse_rational(out.substr(start, out.find_first_of(" \n", start) - start));
  }

  static fs::path dir_;
};

fs::path Cli::dir_;

}  // namespace

TEST_F(Cli, SolveC5) {
  const CliResult r = run("solve c5.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_NE(r.out.find("b = 5/2"), std::string::npos) << r.out;
}

TEST_F(Cli, SolveEdgeless) {
  const CliResult r = run("solve empty3.json --exact-only");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(value_after(r.out, "b"), 3);
}

TEST_F(Cli, SolveFanoUnderOddSchema) {
  ASSERT_EQ(run("matroid2ic --named fano -o fano.json").code, 0);
  const CliResult r = run("solve fano.json --schema submod+fano-odd --rows identity");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_GT(value_after(r.out, "bound"), 4);
}

TEST_F(Cli, ProductCombineVerify) {
  ASSERT_EQ(run("solve c5.json --emit-cert c5cert.json").code, 0);
  ASSERT_EQ(run("product c5.json c5.json -o c5c5.json").code, 0);
  ASSERT_EQ(run("combine c5.json c5.json c5cert.json c5cert.json -o c5c5cert.json").code, 0);
  const CliResult r = run("verify c5c5.json c5c5cert.json --expect 25/4");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_EQ(value_after(r.out, "verified value"), icb::parse_rational("25/4"));
  EXPECT_EQ(run("verify c5c5.json c5c5cert.json --expect 7").code, 1);
}

TEST_F(Cli, TamperedCertificateFails) {
  ASSERT_EQ(run("solve c5.json --emit-cert t.json").code, 0);
  icb::Json j = icb::read_json_file(path("t.json"));
  j["x"][0]["v"] = "7/3";
  icb::write_json_file(path("t.json"), j);
  const CliResult r = run("verify c5.json t.json");
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_NE(r.out.find("at"), std::string::npos) << r.out;
}

TEST_F(Cli, SeparationPipeline) {
  ASSERT_EQ(run("matroid2ic --named fano -o f.json").code, 0);
  ASSERT_EQ(run("matroid2ic --named nonfano -o n.json").code, 0);
  ASSERT_EQ(run("solve f.json --schema submod+fano-odd --emit-cert fodd.json").code, 0);
  ASSERT_EQ(run("solve n.json --emit-cert nb.json").code, 0);
  ASSERT_EQ(run("product f.json n.json -o fn.json").code, 0);
  ASSERT_EQ(run("combine f.json n.json fodd.json nb.json --lift-f left -o fn_cert.json").code, 0);
  const CliResult r = run("verify fn.json fn_cert.json");
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_GT(value_after(r.out, "verified value"), 16);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run("solve missing.json").code, 2);
  EXPECT_EQ(run("solve bad.json").code, 2);
  EXPECT_EQ(run("solve c5.json --schema nonsense").code, 2);
  EXPECT_EQ(run("demo nonsense").code, 2);
  EXPECT_EQ(run("matroid2ic --named petersen -o x.json").code, 2);
}

TEST_F(Cli, DenseCapFromEnvironment) {
  EXPECT_EQ(run("solve c5.json", "ICB_DENSE_CAP=4").code, 3);
  EXPECT_EQ(run("solve c5.json", "ICB_DENSE_CAP=5").code, 0);
}

TEST_F(Cli, AlphaAndSearch) {
  const CliResult a = run("alpha c5.json");
  EXPECT_EQ(a.code, 0);
  EXPECT_NE(a.out.find("2"), std::string::npos);
  const CliResult s = run("search-linear c5.json --prime 2 --emit-code code.json");
  EXPECT_EQ(s.code, 0) << s.out;
  EXPECT_NE(s.out.find("3"), std::string::npos) << s.out;
  EXPECT_TRUE(fs::exists(path("code.json")));
  EXPECT_EQ(run("search-linear c5.json --prime 3").code, 3);
}

TEST_F(Cli, Matroid2icReceivers) {
  ASSERT_EQ(run("matroid2ic --named fano -o min.json").code, 0);
  ASSERT_EQ(run("matroid2ic --named fano --all-receivers -o all.json").code, 0);
  EXPECT_EQ(icb::read_json_file(path("min.json"))["receivers"].size(), 49u);
  EXPECT_GT(icb::read_json_file(path("all.json"))["receivers"].size(), 49u);
}

TEST_F(Cli, Demos) {
  for (const char* name : {"c5", "alpha-beta", "fano-gap", "separation"}) {
    const CliResult r = run(std::string("demo ") + name);
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find(std::string("demo ") + name + ": pass"), std::string::npos) << r.out;
  }
}
