#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace fs = std::filesystem;

namespace {

#ifdef FUZZYCHAIN_CLI
const std::string kCli = FUZZYCHAIN_CLI;
#else
const std::string kCli = "fuzzychain";
#endif

const fs::path kScratch = fs::temp_directory_path() / "fuzzychain-cli-test";

int cli(const std::string& args) {
  const std::string cmd = "'" + kCli + "' " + args + " >" + (kScratch / "stdout.txt").string() +
                          " 2>" + (kScratch / "stderr.txt").string();
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string write_config(const std::string& name, const std::string& body) {
  const auto path = kScratch / name;
  std::ofstream(path) << body;
  return path.string();
}

struct Scratch {
  Scratch() {
    fs::remove_all(kScratch);
    fs::create_directories(kScratch);
  }
  ~Scratch() { fs::remove_all(kScratch); }
};

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("successful runs exit zero and write results") {
  Scratch s;
  const auto out = (kScratch / "exp1").string();
  CHECK(cli("run exp1 --seed 7 --rounds 20,40 --reps 2 --out " + out) == 0);
  CHECK(fs::exists(fs::path(out) / "frequencies.csv"));
  CHECK(fs::exists(fs::path(out) / "summary.json"));
  CHECK(slurp(fs::path(out) / "summary.json").find("\"seed\": 7") != std::string::npos);

  CHECK(cli("report " + out) == 0);
  CHECK(slurp(kScratch / "stdout.txt").find("fuzzychain, 40 rounds") != std::string::npos);

  const auto cfg = write_config("ok.json", R"({"population": [30, 20, 10, 5, 5], "rounds": [15],
    "repetitions": 1, "granularity": "per-participant"})");
  CHECK(cli("run custom --config " + cfg + " --out " + (kScratch / "custom").string()) == 0);
  CHECK(slurp(kScratch / "custom" / "frequencies.csv").find("per-participant") != std::string::npos);
}

TEST_CASE("configuration problems exit one") {
  Scratch s;
  const auto out = " --out " + (kScratch / "x").string();
  CHECK(cli("run custom" + out) == 1);
  CHECK(cli("run exp1 --granularity per-block" + out) == 1);
  CHECK(cli("run exp1 --reps 0" + out) == 1);
  CHECK(cli("run exp4" + out) == 1);
  CHECK(cli("run exp1 --bogus" + out) == 1);
  CHECK(cli("") == 1);
  CHECK(cli("run custom --config " + write_config("bad.json", R"({"roundz": [1]})") + out) == 1);
  CHECK(slurp(kScratch / "stderr.txt").find("roundz") != std::string::npos);
  CHECK(cli("run custom --config " + (kScratch / "missing.json").string() + out) == 1);
}

TEST_CASE("runtime failures exit two") {
  Scratch s;
  CHECK(cli("report " + (kScratch / "nowhere").string()) == 2);
  CHECK(cli("run exp1 --rounds 5 --reps 1 --out /proc/fuzzychain-denied") == 2);
}

}  // TEST_SUITE
