// Copyright anisocurv contributors
// SPDX-License-Identifier: Apache-2.0
#include "anisocurv/experiment.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

using namespace anisocurv;
namespace fs = std::filesystem;

namespace {

const std::string kDiskConfig = std::string(ANISOCURV_SOURCE_DIR) + "/configs/disk.cfg";

std::string message_of(const std::string& text) {
  try {
    parse_config(text, "inline.cfg");
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::config_error);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path scratch(const std::string& leaf) {
  const fs::path p = fs::temp_directory_path() / ("anisocurv_test_config_" + leaf);
  fs::remove_all(p);
  return p;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(ANISOCURV_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

const char* kHeader = R"(seed: 3
norms:
  - name: e
    kind: euclidean
    dim: 2
shapes:
  - name: disk
    kind: ball
    center: [0, 0]
    radius: 1
)";

}  // namespace

TEST(ParseConfig, ReadsDeclarations) {
  const ExperimentConfig cfg = parse_config(std::string(kHeader) + "checks:\n  - name: r\n    type: reach\n    shape: disk\n    norm: e\n");
  EXPECT_EQ(cfg.seed, 3u);
  ASSERT_EQ(cfg.norms.size(), 1u);
  ASSERT_NE(cfg.find_shape("disk"), nullptr);
  EXPECT_EQ(cfg.find_shape("nope"), nullptr);
  ASSERT_EQ(cfg.checks.size(), 1u);
  EXPECT_EQ(cfg.checks[0].shape, "disk");
}

TEST(ParseConfig, UndeclaredShapeNamesLine) {
  const std::string msg =
      message_of(std::string(kHeader) + "checks:\n  - name: r\n    type: reach\n    shape: square\n    norm: e\n");
  EXPECT_NE(msg.find("inline.cfg:14"), std::string::npos) << msg;
  EXPECT_NE(msg.find("field 'shape'"), std::string::npos) << msg;
  EXPECT_NE(msg.find("square"), std::string::npos) << msg;
}

TEST(ParseConfig, UnknownKeyNamesLine) {
  const std::string msg = message_of(std::string(kHeader) + "    colour: red\n");
  EXPECT_NE(msg.find("inline.cfg:11"), std::string::npos) << msg;
  EXPECT_NE(msg.find("colour"), std::string::npos) << msg;
}

TEST(ParseConfig, RejectsBadValues) {
  EXPECT_NE(message_of(std::string(kHeader) + "    radius2: 1\n").find("radius2"), std::string::npos);
  const std::string neg = R"(norms:
  - name: e
    kind: euclidean
    dim: 2
shapes:
  - name: disk
    kind: ball
    center: [0, 0]
    radius: -1
)";
  EXPECT_NE(message_of(neg).find("inline.cfg:9"), std::string::npos);
  EXPECT_NE(message_of("norms: [\n").find("inline.cfg:"), std::string::npos);
  EXPECT_NE(message_of("").find("empty"), std::string::npos);
}

TEST(ParseConfig, AcceptsJson) {
  const std::string json = R"({
  "seed": 11,
  "norms": [{"name": "q", "kind": "ellipsoidal", "q": [[4, 0], [0, 1]]}],
  "shapes": [{"name": "w", "kind": "wulff", "norm": "q", "center": [0, 0], "radius": 1}],
  "checks": [{"name": "h", "type": "heintze-karcher", "shape": "w", "norm": "q"}]
})";
  const ExperimentConfig cfg = parse_config(json, "inline.json");
  EXPECT_EQ(cfg.seed, 11u);
  ASSERT_NE(cfg.find_shape("w"), nullptr);
  EXPECT_EQ(cfg.checks.at(0).type, "heintze-karcher");
}

TEST(LoadConfig, BundledDiskConfig) {
  const ExperimentConfig cfg = load_config(kDiskConfig);
  EXPECT_EQ(cfg.seed, 7u);
  EXPECT_GE(cfg.checks.size(), 5u);
  EXPECT_THROW(load_config("/nonexistent/anisocurv.cfg"), Error);
}

TEST(LoadConfig, EveryBundledConfigParses) {
  int seen = 0;
  for (const auto& entry : fs::directory_iterator(fs::path(ANISOCURV_SOURCE_DIR) / "configs")) {
    if (entry.path().extension() != ".cfg") continue;
    ++seen;
    EXPECT_NO_THROW(load_config(entry.path().string())) << entry.path();
  }
  EXPECT_GE(seen, 3);
}

TEST(Cli, DiskRunIsAccurateAndDeterministic) {
  const fs::path a = scratch("a"), b = scratch("b"), c = scratch("c");
  ASSERT_EQ(run_cli("run-all --config " + kDiskConfig + " --out " + a.string() + " --threads 1"), 0);
  ASSERT_EQ(run_cli("run-all --config " + kDiskConfig + " --out " + b.string() + " --threads 1"), 0);
  ASSERT_EQ(run_cli("run-all --config " + kDiskConfig + " --out " + c.string() + " --threads 3"), 0);

  const auto tube = nlohmann::json::parse(slurp(a / "tube.json"));
  ASSERT_FALSE(tube["tubes"].empty());
  for (const auto& t : tube["tubes"]) EXPECT_LT(t["max_residual"].get<double>(), 0.01);

  int csvs = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    if (entry.path().extension() != ".csv") continue;
    ++csvs;
    const std::string bytes = slurp(entry.path());
    EXPECT_FALSE(bytes.empty());
    EXPECT_EQ(bytes, slurp(b / entry.path().filename())) << entry.path();
    EXPECT_EQ(bytes, slurp(c / entry.path().filename())) << entry.path();
  }
  EXPECT_GE(csvs, 2);
  EXPECT_EQ(slurp(a / "verify.json"), slurp(c / "verify.json"));
  for (const fs::path& p : {a, b, c}) fs::remove_all(p);
}

TEST(Cli, ExitCodes) {
  const fs::path dir = scratch("bad");
  fs::create_directories(dir);
  {
    std::ofstream(dir / "bad.cfg") << kHeader << "checks:\n  - name: r\n    type: reach\n    shape: missing\n    norm: e\n";
  }
  EXPECT_EQ(run_cli("reach --config " + (dir / "bad.cfg").string() + " --out " + (dir / "out").string()), 2);
  EXPECT_NE(run_cli("no-such-command"), 0);

  // A check whose expectation is wrong exits with 1.
  {
    std::ofstream(dir / "wrong.cfg") << kHeader
                                     << "checks:\n  - name: r\n    type: reach\n    shape: disk\n    norm: e\n    expect_reach: 0.5\n";
  }
  EXPECT_EQ(run_cli("reach --config " + (dir / "wrong.cfg").string() + " --out " + (dir / "out").string()), 1);
  fs::remove_all(dir);
}
