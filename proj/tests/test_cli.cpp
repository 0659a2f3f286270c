// Drives the installed binary through std::system; each case gets its own
// stdout/stderr capture files inside one shared temp directory.

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

const std::string kCli = MSTN_CLI_PATH;
const std::string kData = MSTN_DATA_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

const fs::path& work_dir() {
  static const fs::path dir = [] {
    std::string tmpl =
        (fs::temp_directory_path() / "mstn-cli-XXXXXX").string();
    const char* made = mkdtemp(tmpl.data());
    REQUIRE(made != nullptr);
    return fs::path(made);
  }();
  return dir;
}

struct CliResult {
  int exit_code;
  std::string out;
  std::string err;
};

CliResult run_cli(const std::string& args) {
  static int counter = 0;
  const fs::path o = work_dir() / ("stdout." + std::to_string(counter));
  const fs::path e = work_dir() / ("stderr." + std::to_string(counter));
  ++counter;
  // the harness may start us anywhere, so pin the fixture lookup explicitly
  const std::string cmd = "MSTN_DATA_DIR=" + kData + " " + kCli + " " + args +
                          " >" + o.string() + " 2>" + e.string();
  const int status = std::system(cmd.c_str());
  const int code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return {code, slurp(o), slurp(e)};
}

int count_lines(const std::string& s, const std::string& needle) {
  int n = 0;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line))
    if (line.find(needle) != std::string::npos) ++n;
  return n;
}

int line_count(const std::string& s) {
  int n = 0;
  for (char c : s)
    if (c == '\n') ++n;
  return n;
}

const fs::path& fast_config() {
  static const fs::path p = [] {
    const fs::path path = work_dir() / "fast.cfg";
    spit(path, "rnn.epochs = 10\nrnn.hidden = 5\n");
    return path;
  }();
  return p;
}

// one trained bundle shared by the freq/traits cases
const fs::path& trained_bundle() {
  static const fs::path p = [] {
    const fs::path path = work_dir() / "trained.json";
    const auto r = run_cli("train --scenario " + kData +
                           "/scenario1.json --config " +
                           fast_config().string() + " --bundle " +
                           path.string() + " --out /dev/null");
    REQUIRE(r.exit_code == 0);
    REQUIRE(fs::exists(path));
    return path;
  }();
  return p;
}

}  // namespace

TEST_CASE("check passes out of the box") {
  const auto r = run_cli("check");
  CHECK(r.exit_code == 0);
  CHECK(count_lines(r.out, "[ ok ]") == 4);
  CHECK(r.out.find("baseline-fixture") != std::string::npos);
  CHECK(r.out.find("credit-suppression") != std::string::npos);
  CHECK(r.out.find("gradient-spot-check") != std::string::npos);
  CHECK(r.out.find("pattern-count") != std::string::npos);
  CHECK(count_lines(r.out, "[fail]") == 0);
}

TEST_CASE("usage problems exit with 2") {
  CHECK(run_cli("").exit_code == 2);                  // subcommand required
  CHECK(run_cli("train").exit_code == 2);             // --scenario required
  CHECK(run_cli("check --no-such-flag").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);

  const auto r = run_cli("simulate");  // neither scenario nor self-play
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("simulate needs") != std::string::npos);
}

TEST_CASE("a missing scenario file is a clean validation error") {
  const auto r = run_cli("simulate --scenario /no/such/file.json");
  CHECK(r.exit_code == 2);
  CHECK(r.err.rfind("error:", 0) == 0);
}

TEST_CASE("simulate is reproducible for a fixed seed") {
  const std::string args =
      "simulate --scenario " + kData + "/scenario1.json --seed 7";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("mode: simulate") != std::string::npos);

  const auto c = run_cli("simulate --scenario " + kData +
                         "/scenario1.json --seed 8");
  CHECK(c.exit_code == 0);  // a different seed is fine, just different
}

TEST_CASE("the seed override lands in the structured report") {
  const auto r = run_cli("simulate --scenario " + kData +
                         "/scenario1.json --seed 99 --format structured");
  REQUIRE(r.exit_code == 0);
  const json doc = json::parse(r.out);
  CHECK(doc.at("seed") == 99);
  CHECK(doc.at("mode") == "simulate");
  CHECK(doc.at("episodes").size() == 14);
}

TEST_CASE("train writes the bundle next to the report") {
  const auto& bundle = trained_bundle();
  const std::string text = slurp(bundle);
  CHECK(text.find("mstn-bundle/1") != std::string::npos);
  CHECK(text.find("\"rnn_weights\"") != std::string::npos);
  const json doc = json::parse(text);
  CHECK(doc.at("provenance").at("scenario") == "scenario-1");
}

TEST_CASE("freq renders an eight-line csv table from a bundle") {
  const auto r = run_cli("freq " + trained_bundle().string() +
                         " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(line_count(r.out) == 8);
  CHECK(r.out.rfind("current,", 0) == 0);
}

TEST_CASE("table order changes only the labeling") {
  const auto a = run_cli("freq " + trained_bundle().string() +
                         " --format csv --table-order paper1");
  const auto b = run_cli("freq " + trained_bundle().string() +
                         " --format csv --table-order paper3");
  REQUIRE(a.exit_code == 0);
  REQUIRE(b.exit_code == 0);
  CHECK(a.out.rfind("current,happy,quiet", 0) == 0);
  CHECK(b.out.rfind("current,surprise,happy", 0) == 0);
  CHECK(a.out != b.out);
}

TEST_CASE("traits lists the five dimensions") {
  const auto r = run_cli("traits " + trained_bundle().string() +
                         " --format csv");
  REQUIRE(r.exit_code == 0);
  CHECK(line_count(r.out) == 6);
  CHECK(r.out.rfind("trait,score,support", 0) == 0);
  CHECK(r.out.find("neuroticism,") != std::string::npos);
}

TEST_CASE("a doctored bundle still loads but warns about the hash") {
  const std::string text = slurp(trained_bundle());
  const auto pos = text.find("seed = 42");
  REQUIRE(pos != std::string::npos);
  std::string doctored = text;
  doctored.replace(pos, 9, "seed = 43");
  const fs::path path = work_dir() / "doctored.json";
  spit(path, doctored);

  const auto r = run_cli("traits " + path.string() + " --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.err.find("warning:") != std::string::npos);
  CHECK(r.err.find("hash") != std::string::npos);
}

TEST_CASE("a tampered baseline fails the checksum check with exit 3") {
  std::string rows = slurp(kData + "/baseline_transitions.csv");
  const auto pos = rows.find("0.421");
  REQUIRE(pos != std::string::npos);
  rows.replace(pos, 5, "0.422");
  const fs::path path = work_dir() / "tampered.csv";
  spit(path, rows);

  const auto r = run_cli("check --baseline " + path.string());
  CHECK(r.exit_code == 3);
  CHECK(r.out.find("[fail] baseline-fixture") != std::string::npos);
}

TEST_CASE("an invalid config is rejected before any work happens") {
  const fs::path path = work_dir() / "bad.cfg";
  spit(path, "ps.decay_m = 2.0\nps.conflict_l = 2.0\n");  // needs m > l
  const auto r = run_cli("check --config " + path.string());
  CHECK(r.exit_code == 2);
  CHECK(r.err.rfind("error:", 0) == 0);

  const fs::path unknown = work_dir() / "unknown.cfg";
  spit(unknown, "no.such.key = 1\n");
  const auto u = run_cli("check --config " + unknown.string());
  CHECK(u.exit_code == 2);
  CHECK(u.err.find("unknown key") != std::string::npos);
}

TEST_CASE("--out redirects the rendered output to a file") {
  const fs::path path = work_dir() / "redirected.txt";
  const auto r = run_cli("simulate --scenario " + kData +
                         "/scenario1.json --out " + path.string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.empty());
  const std::string text = slurp(path);
  CHECK(text.find("run report") != std::string::npos);

  const auto direct = run_cli("simulate --scenario " + kData +
                              "/scenario1.json");
  CHECK(direct.out == text);
}

TEST_CASE("self-play walks from the trained bundle deterministically") {
  const std::string args = "simulate --self-play 12 --bundle " +
                           trained_bundle().string() + " --seed 3";
  const auto a = run_cli(args);
  const auto b = run_cli(args);
  REQUIRE(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(line_count(a.out) == 12);
  CHECK(a.out.rfind("step 1: quiet ", 0) == 0);
}
