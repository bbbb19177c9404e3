#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "hl/hl.hpp"
#include "hl/json_io.hpp"

// Runs the CLI from the data directory and compares combined output with
// tests/golden/<name>.out. Set HL_UPDATE_GOLDEN=1 to rewrite the files.

namespace {

struct Output {
  std::string text;
  int exit = -1;
};

Output run(const std::string& args) {
  const std::string cmd = std::string("cd '") + HL_DATA_DIR + "' && '" + HL_BINARY + "' " + args + " 2>&1";
  Output out;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return out;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) out.text.append(buf, n);
  const int status = pclose(p);
  out.exit = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return out;
}

std::string goldenPath(const std::string& name) { return std::string(HL_GOLDEN_DIR) + "/" + name + ".out"; }

struct Case {
  const char* name;
  const char* args;
  int exit;
};

const Case kCases[] = {
    {"parse", "parse 'p ~> q & r'", 0},
    {"parse_json", "--json parse '[]~p -> q'", 0},
    {"parse_bi", "--lang bi parse '<i>p & [m]q'", 0},
    {"parse_error", "parse 'p & (q'", 2},
    {"translate", "translate 'p ~> q'", 0},
    {"translate_box", "translate '[]p'", 0},
    {"translate_catalogue", "translate @Box", 0},
    {"eval", "eval --model iele_model.json --formula 'p ~> q'", 0},
    {"eval_json", "--json eval --model iele_model.json --formula 'p -> ~~q'", 0},
    {"valid_box_iele", "valid --frame fix_iele.json --formula '(p ~> q) -> [](p -> q)'", 0},
    {"valid_hug_iele", "valid --frame fix_iele.json --formula @Hug", 1},
    {"valid_hug_iele_json", "--json valid --frame fix_iele.json --formula @Hug", 1},
    {"valid_incoherent", "valid --frame fig1_raw.json --formula p", 2},
    {"valid_close", "valid --frame fig1_raw.json --close --formula @Box", 0},
    {"enumerate_count", "enumerate --size 1 --kind sto --count-only", 0},
    {"enumerate_count2", "enumerate --size 2 --kind sto --count-only", 0},
    {"enumerate_list", "enumerate --size 1 --kind sto", 0},
    {"enumerate_s4k_bhl", "enumerate --size 2 --kind s4k --filter Bhl --dedup --count-only", 0},
    {"decide_box", "decide --axioms iele.axioms --goal @Box --max-size 4", 1},
    {"decide_hug_bounded", "decide --axioms iele.axioms --goal @Hug --max-size 2", 0},
    {"bridge_box", "bridge --axioms iele.axioms --goal @Box --max-size 4", 0},
    {"correspond_sa", "correspond --formula @Sa --condition SubPrec --max-size 2", 0},
    {"correspond_wrong", "correspond --formula @Sa --condition IrSucc --max-size 2", 1},
    {"correspond_mismatch", "correspond --formula @Sa --condition Bhl --max-size 2", 2},
    {"algebra_ok", "algebra-check --algebra bool2.json", 0},
    {"algebra_bad", "algebra-check --algebra bad_c4.json", 1},
    {"dualize", "dualize --algebra bool2.json", 0},
    {"rho_kind", "rho --frame fix_iele.json", 2},
    {"sigma", "--json sigma --frame fix_iele.json", 0},
    {"roundtrip_frame", "roundtrip --frame fix_iele.json", 0},
    {"roundtrip_algebra", "roundtrip --algebra bool2.json", 0},
    {"minimize", "minimize --model iele_s4k_model.json --formula '[i]p -> [i]q'", 0},
    {"minimize_not_refuted", "minimize --model iele_s4k_model.json --formula '[i]p'", 2},
    {"missing_file", "eval --model nowhere.json --formula p", 2},
    {"no_subcommand", "", 2},
};

class Golden : public ::testing::TestWithParam<Case> {};

TEST_P(Golden, MatchesFile) {
  const Case& c = GetParam();
  const auto out = run(c.args);
  EXPECT_EQ(out.exit, c.exit) << out.text;
  const std::string path = goldenPath(c.name);
  if (std::getenv("HL_UPDATE_GOLDEN")) {
    std::ofstream(path) << out.text;
    return;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden file " << path;
  std::stringstream want;
  want << in.rdbuf();
  EXPECT_EQ(out.text, want.str());
}

INSTANTIATE_TEST_SUITE_P(Cli, Golden, ::testing::ValuesIn(kCases),
                         [](const ::testing::TestParamInfo<Case>& i) { return std::string(i.param.name); });

}  // namespace

TEST(Cli, SigmaThenRhoIsIdentity) {
  const auto sigma = run("--json sigma --frame fix_iele.json");
  ASSERT_EQ(sigma.exit, 0);
  const std::string tmp = ::testing::TempDir() + "/sigma.json";
  std::ofstream(tmp) << sigma.text;
  const auto rho = run("--json rho --frame '" + tmp + "'");
  ASSERT_EQ(rho.exit, 0) << rho.text;
  const auto back = hl::validateSto(hl::io::rawFrameFromJson(hl::io::json::parse(rho.text)));
  EXPECT_EQ(back.preceq(), hl::fixtures::iele().preceq());
  EXPECT_EQ(back.sqsubset(), hl::fixtures::iele().sqsubset());
}

TEST(Cli, EnumeratedFramesReload) {
  const auto out = run("enumerate --size 2 --kind sto");
  ASSERT_EQ(out.exit, 0);
  std::istringstream lines(out.text);
  std::string line;
  int count = 0;
  while (std::getline(lines, line)) {
    const auto j = hl::io::json::parse(line);
    const auto f = hl::validateSto(hl::io::rawFrameFromJson(j));
    ASSERT_EQ(hl::io::frameToJson(f), j);
    ++count;
  }
  EXPECT_EQ(count, 34);
}

TEST(Cli, JobsDoNotChangeResults) {
  const auto a = run("decide --axioms iele.axioms --goal @Box --max-size 3");
  const auto b = run("--jobs 3 decide --axioms iele.axioms --goal @Box --max-size 3");
  EXPECT_EQ(a.exit, 1);
  EXPECT_EQ(a.text, b.text);
}

TEST(Cli, CandidateCapFromEnvironment) {
  const auto out = run("enumerate --size 3 --kind s4k --count-only");
  EXPECT_EQ(out.exit, 0);
  const std::string cmd = std::string("cd '") + HL_DATA_DIR + "' && HL_MAX_CANDIDATES=10 '" + HL_BINARY +
                          "' enumerate --size 3 --kind s4k --count-only >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  EXPECT_EQ(WEXITSTATUS(status), 2);
}
