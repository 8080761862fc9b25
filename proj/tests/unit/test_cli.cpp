#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <string>

#include <nlohmann/json.hpp>

#include "support.hpp"
#include "zerocap/fsutil.hpp"
#include "zerocap/raster.hpp"

using namespace zerocap;
namespace fs = std::filesystem;
using testing::TempDir;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

std::string quote(const std::string& s) { return "'" + s + "'"; }

// Runs the CLI through the shell; `env` is a prefix such as "A=1 B=2".
Outcome cli(const TempDir& dir, const std::string& args, const std::string& env = "") {
  const fs::path out = dir / "stdout.txt", err = dir / "stderr.txt";
  const std::string cmd = "env -u ZEROCAP_GATE_THRESHOLD -u ZEROCAP_SOLVER -u ZEROCAP_MOCK_DIR " + env + " " +
                          quote(ZEROCAP_CLI_PATH) + " " + args + " >" + quote(out.string()) + " 2>" +
                          quote(err.string());
  const int status = std::system(cmd.c_str());
  Outcome o;
  o.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  o.out = read_file_text(out);
  o.err = read_file_text(err);
  return o;
}

std::string p(const fs::path& path) { return quote(path.string()); }

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

struct Suite {
  TempDir dir;
  fs::path caging, infill, general;
  explicit Suite(const std::string& extra = "") {
    const Outcome o = cli(dir, "synth --per-category 1 --out " + p(dir / "suite") + " " + extra);
    REQUIRE(o.code == 0);
    caging = dir / "suite/caging_0.json";
    infill = dir / "suite/infill_0.json";
    general = dir / "suite/general_0.json";
    REQUIRE(fs::exists(caging));
  }
  std::string mocks() const { return "--mock-dir " + p(dir / "suite/mocks"); }
};

}  // namespace

TEST_CASE("run succeeds and writes every artifact") {
  Suite s;
  const Outcome o = cli(s.dir, "run --scenario " + p(s.caging) + " " + s.mocks() + " --out " + p(s.dir / "out"));
  INFO(o.err);
  CHECK(o.code == 0);
  CHECK(o.out.find("sr=1") != std::string::npos);
  for (const char* n : {"context.json", "mask.png", "shape.json", "descriptor.txt", "prompt.txt", "plan.json",
                        "trajectory.csv", "initial.png", "final.png", "result.json"})
    CHECK_MESSAGE(fs::exists(s.dir / (std::string("out/") + n)), n);
  const auto result = nlohmann::json::parse(read_file_text(s.dir / "out/result.json"));
  CHECK(result["status"] == "success");
  CHECK(result["gcr"] == 1.0);
}

TEST_CASE("run artifacts are byte-identical across invocations") {
  Suite s;
  for (int k = 0; k < 2; ++k)
    REQUIRE(cli(s.dir, "run --scenario " + p(s.infill) + " " + s.mocks() + " --out " + p(s.dir / ("o" + std::to_string(k))))
                .code == 0);
  for (const auto& e : fs::directory_iterator(s.dir / "o0"))
    CHECK(read_file_bytes(e.path()) == read_file_bytes(s.dir / "o1" / e.path().filename()));
}

TEST_CASE("geometric solver needs no language fixtures") {
  // Vision fixtures are still required; drop only the language ones.
  Suite t;
  for (const auto& e : fs::directory_iterator(t.dir / "suite/mocks"))
    if (e.path().string().ends_with(".llm.json")) fs::remove(e.path());
  const Outcome o =
      cli(t.dir, "--solver geometric run --scenario " + p(t.caging) + " " + t.mocks() + " --out " + p(t.dir / "out"));
  INFO(o.err);
  CHECK(o.code == 0);
  CHECK(o.out.find("sr=1") != std::string::npos);
  const Outcome llm = cli(t.dir, "run --scenario " + p(t.caging) + " " + t.mocks() + " --out " + p(t.dir / "out2"));
  CHECK(llm.code == 1);
  CHECK(llm.err.find("MissingFixture") != std::string::npos);
}

TEST_CASE("gate abort exits 2 with the exact message") {
  Suite s("--alpha 0.3");
  const Outcome o = cli(s.dir, "run --scenario " + p(s.caging) + " " + s.mocks() + " --out " + p(s.dir / "out"));
  CHECK(o.code == 2);
  CHECK(o.err == "Insufficient segmentation accuracy.\n");
  const auto result = nlohmann::json::parse(read_file_text(s.dir / "out/result.json"));
  CHECK(result["status"] == "aborted");
}

TEST_CASE("faults exit 1") {
  TempDir dir;
  CHECK(cli(dir, "run --scenario " + p(dir / "missing.json") + " --out " + p(dir / "out")).code == 1);
  CHECK(cli(dir, "run").code == 1);
  CHECK(cli(dir, "").code == 1);
  CHECK(cli(dir, "bogus").code == 1);
  CHECK(cli(dir, "--help").code == 0);
  Suite s;
  const Outcome o = cli(s.dir, "--solver rl run --scenario " + p(s.caging) + " " + s.mocks());
  CHECK(o.code == 1);
  // No clients configured at all.
  CHECK(cli(s.dir, "run --scenario " + p(s.caging) + " --out " + p(s.dir / "out")).code == 1);
  CHECK(cli(s.dir, "eval --suite " + p(s.dir / "empty") + " " + s.mocks()).code == 1);
}

TEST_CASE("eval prints and writes the report") {
  Suite s;
  const auto args = "eval --suite " + p(s.dir / "suite") + " " + s.mocks();
  const Outcome one = cli(s.dir, args + " --trials 1 --out " + p(s.dir / "r1"));
  const Outcome ten = cli(s.dir, args + " --trials 10 --out " + p(s.dir / "r10"));
  INFO(one.err);
  REQUIRE(one.code == 0);
  REQUIRE(ten.code == 0);
  CHECK(one.out.find("Total") != std::string::npos);
  CHECK(lines(one.out) == 10);
  CHECK(fs::exists(s.dir / "r1/report.txt"));
  const auto r1 = nlohmann::json::parse(read_file_text(s.dir / "r1/report.json"));
  const auto r10 = nlohmann::json::parse(read_file_text(s.dir / "r10/report.json"));
  CHECK(r1["total"]["mean_sr"] == 1.0);
  CHECK(r1["total"]["mean_sr"] == r10["total"]["mean_sr"]);
  CHECK(r1["total"]["mean_gcr"] == r10["total"]["mean_gcr"]);
  CHECK(cli(s.dir, args + " --trials 0").code == 1);
}

TEST_CASE("describe-shape prints each descriptor variant") {
  TempDir dir;
  Image img(64, 64, 1, 0);
  for (int y = 10; y < 40; ++y)
    for (int x = 12; x < 52; ++x) img.at(x, y) = 255;
  write_png(dir / "mask.png", img);
  const auto base = "describe-shape --mask " + p(dir / "mask.png") + " --out " + p(dir / "o") + " --world-scale 0.01";
  const Outcome e = cli(dir, base);
  REQUIRE(e.code == 0);
  CHECK(lines(e.out) == 4);
  CHECK(fs::exists(dir / "o/shape.json"));
  const Outcome ev = cli(dir, base + " --descriptor edges-vertices");
  CHECK(ev.code == 0);
  CHECK(ev.out.rfind("V: v0 v1 v2 v3\n", 0) == 0);
  const Outcome bm = cli(dir, base + " --descriptor binary-matrix");
  CHECK(bm.code == 0);
  CHECK(lines(bm.out) == 100);
  CHECK(cli(dir, base + " --descriptor polar").code == 1);

  write_png(dir / "black.png", Image(64, 64, 1, 0));
  const Outcome black = cli(dir, "describe-shape --mask " + p(dir / "black.png") + " --out " + p(dir / "o"));
  CHECK(black.code == 1);
  CHECK(black.err.find("EmptyMask") != std::string::npos);
}

TEST_CASE("config precedence is flags, then config file, then environment") {
  Suite s("--alpha 0.4");  // aborts under the default t = 0.5
  const auto run = "run --scenario " + p(s.caging) + " " + s.mocks() + " --out " + p(s.dir / "out");
  write_file_atomic(s.dir / "strict.toml", std::string_view("gate-threshold = 0.9\n"));
  write_file_atomic(s.dir / "lenient.toml", std::string_view("gate-threshold = 0.3\n"));
  const std::string strict = " --config " + p(s.dir / "strict.toml");
  const std::string lenient = " --config " + p(s.dir / "lenient.toml");

  CHECK(cli(s.dir, run).code == 2);
  CHECK(cli(s.dir, run, "ZEROCAP_GATE_THRESHOLD=0.3").code == 0);
  CHECK(cli(s.dir, run + strict, "ZEROCAP_GATE_THRESHOLD=0.3").code == 2);
  CHECK(cli(s.dir, run + lenient, "ZEROCAP_GATE_THRESHOLD=0.9").code == 0);
  CHECK(cli(s.dir, run + strict + " --gate-threshold 0.3").code == 0);
  CHECK(cli(s.dir, run + lenient + " --gate-threshold 0.9").code == 2);
}
