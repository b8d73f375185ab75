#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>
#include <unistd.h>

#include "cli.hpp"
#include "pseudoform/facet_io.hpp"
#include "pseudoform/isomorphism.hpp"
#include "pseudoform/reducer.hpp"
#include "pseudoform/rigidity.hpp"

using namespace pseudoform;

namespace {

const std::filesystem::path kDir = PSEUDOFORM_FIXTURES;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args, std::optional<std::string> env_seed = std::nullopt) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, std::move(env_seed));
  return {code, out.str(), err.str()};
}

std::string fx(const char* name) { return (kDir / name).string(); }

class TempDir {
 public:
  TempDir() : path_(std::filesystem::temp_directory_path() / ("pseudoform-cli-" + std::to_string(::getpid()))) {
    std::filesystem::create_directories(path_);
  }
  ~TempDir() { std::filesystem::remove_all(path_); }
  std::string operator/(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace

TEST(Cli, FVectorText) {
  auto r = run({"fvector", fx("boundary4simplex.txt")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_EQ(r.out, "f=(5,10,10,5) g2=0 g3=0\n");
}

TEST(Cli, JsonCarriesSchema) {
  auto r = run({"--json", "fvector", fx("cross_polytope.txt")});
  ASSERT_EQ(r.code, cli::kOk);
  auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["schema"], "pseudoform-cli/1");
  // Options may also follow the subcommand.
  auto again = run({"fvector", fx("cross_polytope.txt"), "--json"});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, ValidateSingular) {
  auto r = run({"validate", fx("folded_g2_3.txt")});
  EXPECT_EQ(r.code, cli::kOk);
  EXPECT_NE(r.out.find("singular 2 RP2"), std::string::npos);
  EXPECT_NE(r.out.find("singular 4 RP2"), std::string::npos);
}

TEST(Cli, IsoExitCodes) {
  EXPECT_EQ(run({"iso", fx("stacked_8.txt"), fx("chain9.txt")}).code, cli::kFalse);
  EXPECT_EQ(run({"iso", fx("cross_polytope.txt"), fx("cross_polytope.txt")}).code, cli::kOk);
}

TEST(Cli, MalformedInputReportsLine) {
  TempDir tmp;
  const auto bad = tmp / "bad.txt";
  std::ofstream(bad) << "0 1 2 3\n# fine\n0 1 1 2\n";
  auto r = run({"validate", bad});
  EXPECT_EQ(r.code, cli::kBadInput);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;
  EXPECT_EQ(run({"fvector", tmp / "absent.txt"}).code, cli::kBadInput);
  EXPECT_EQ(run({"no-such-command"}).code, cli::kBadInput);
  EXPECT_EQ(run({"gen", "stacked:x"}).code, cli::kBadInput);
}

TEST(Cli, ReduceSummaryAndPipeline) {
  TempDir tmp;
  const auto trace = tmp / "t.trace";
  const auto rebuilt = tmp / "k.txt";
  auto r = run({"reduce", fx("folded_g2_3.txt"), "-o", trace});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  EXPECT_EQ(r.out.rfind("two-singular-g2-3-or-4: 1 fold", 0), 0u) << r.out;
  EXPECT_NE(r.out.find("seeds="), std::string::npos);
  ASSERT_EQ(run({"replay", trace, "--check", "-o", rebuilt}).code, cli::kOk);
  EXPECT_EQ(run({"iso", fx("folded_g2_3.txt"), rebuilt}).code, cli::kOk);
}

TEST(Cli, ReduceRejects) {
  auto r = run({"reduce", fx("rp2_six.txt")});
  EXPECT_EQ(r.code, cli::kBadInput);
  TempDir tmp;
  const auto glued = tmp / "two.txt";
  std::ofstream(glued) << "0 1 2 3\n0 1 2 4\n";
  EXPECT_EQ(run({"reduce", glued}).code, cli::kFalse);
}

TEST(Cli, MoveRecordsDelta) {
  auto r = run({"move", "fold", fx("foldable_sphere.txt"), "--face", "2,4,5,7", "--other", "2,4,6,8", "--map",
                "2:2,4:4,5:8,7:6"});
  ASSERT_EQ(r.code, cli::kOk) << r.err;
  const auto first = r.out.substr(0, r.out.find('\n'));
  EXPECT_NE(first.find("g2_delta=3"), std::string::npos) << first;
  EXPECT_EQ(parse_facets_text(r.out), read_facet_file(kDir / "folded_g2_3.txt"));
  // A fold site that breaks admissibility is a precondition failure, not bad input.
  auto bad = run({"move", "fold", fx("foldable_sphere.txt"), "--face", "0,1,2,3", "--other", "2,4,6,8", "--map",
                  "0:2,1:4,2:6,3:8"});
  EXPECT_EQ(bad.code, cli::kFalse);
}

TEST(Cli, AuditExitCode) {
  // Not a candidate at all, so there are findings.
  EXPECT_EQ(run({"audit-g", fx("folded_g2_4.txt")}).code, cli::kOk);
}

TEST(Cli, RigidityHonoursSeed) {
  auto by_flag = run({"--json", "rigidity", fx("cross_polytope.txt"), "--seed", "99"});
  ASSERT_EQ(by_flag.code, cli::kOk);
  EXPECT_EQ(nlohmann::json::parse(by_flag.out)["seed"], 99);
  auto by_env = run({"--json", "rigidity", fx("cross_polytope.txt")}, "12345");
  EXPECT_EQ(nlohmann::json::parse(by_env.out)["seed"], 12345);
  auto flag_wins = run({"--json", "rigidity", fx("cross_polytope.txt"), "--seed", "5"}, "12345");
  EXPECT_EQ(nlohmann::json::parse(flag_wins.out)["seed"], 5);
  auto fallback = run({"--json", "rigidity", fx("cross_polytope.txt")});
  EXPECT_EQ(nlohmann::json::parse(fallback.out)["seed"], kDefaultSeed);
  EXPECT_EQ(run({"rigidity", fx("cross_polytope.txt")}, "abc").code, cli::kBadInput);
}

TEST(Cli, GenIsDeterministic) {
  TempDir tmp;
  auto a = run({"gen", "random:3:40:fold", "--trace-out", tmp / "a.trace"});
  auto b = run({"gen", "random:3:40:fold"});
  ASSERT_EQ(a.code, cli::kOk) << a.err;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(replay(read_trace_file(tmp / "a.trace")), parse_facets_text(a.out));
}
