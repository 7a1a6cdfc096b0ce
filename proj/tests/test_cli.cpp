#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include <nlohmann/json.hpp>

#include "odforge/cli.hpp"

namespace fs = std::filesystem;
using namespace odforge::cli;

namespace {

struct Result {
  int rc;
  std::string out, err;
};

Result run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "odforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {rc, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("odforge-cli-" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("gen la 12 writes the [792, 12, 462] document") {
  const Result r = run_cli({"gen", "--family", "la", "--n", "12", "--trials", "1"});
  REQUIRE(r.rc == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["params"]["p"] == 792);
  CHECK(j["params"]["k"] == 462);
  CHECK(j["verification"]["symbolic"] == "pass");
  CHECK(j["verification"]["numeric"] == "pass");
}

TEST_CASE("gen rate1-rod 8 is dense [16, 8, 16]") {
  const Result r = run_cli({"gen", "--family", "rate1-rod", "--n", "8"});
  REQUIRE(r.rc == kOk);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["kind"] == "ROD");
  CHECK(j["params"]["p"] == 16);
  CHECK(j["entries"].size() == 16 * 8);
}

TEST_CASE("dr at n = 9 is unsupported") {
  const Result r = run_cli({"gen", "--family", "dr", "--n", "9"});
  CHECK(r.rc == kUnsupported);
  CHECK(r.err.find("1 mod 8") != std::string::npos);
  CHECK(run_cli({"gen", "--family", "la", "--n", "40"}).rc == kUnsupported);
}

TEST_CASE("usage errors") {
  CHECK(run_cli({}).rc == kUsage);
  CHECK(run_cli({"gen", "--family", "xyz", "--n", "4"}).rc == kUsage);
  CHECK(run_cli({"gen", "--family", "la"}).rc == kUsage);
  CHECK(run_cli({"gen", "--family", "la", "--n", "4", "--format", "pdf"}).rc == kUsage);
  CHECK(run_cli({"report", "--max-n", "99"}).rc == kUsage);
  CHECK(run_cli({"--help"}).rc == kOk);
}

TEST_CASE("gen output is identical across runs") {
  const Result a = run_cli({"gen", "--family", "tjc", "--n", "6", "--seed", "9"});
  const Result b = run_cli({"gen", "--family", "tjc", "--n", "6", "--seed", "9"});
  REQUIRE(a.rc == kOk);
  CHECK(a.out == b.out);
  CHECK(a.err == b.err);
  const Result s = run_cli({"--isa", "scalar", "gen", "--family", "tjc", "--n", "6", "--seed", "9"});
  CHECK(s.out == a.out);
}

TEST_CASE("verify round trip, corruption and unreadable input") {
  TempDir tmp;
  const fs::path file = tmp.path / "dr6.json";
  REQUIRE(run_cli({"gen", "--family", "dr", "--n", "6", "--out", file.string()}).rc == kOk);
  const Result ok = run_cli({"verify", file.string()});
  CHECK(ok.rc == kOk);
  CHECK(ok.out.find("[8, 6, 4]") != std::string::npos);

  auto j = nlohmann::json::parse(slurp(file));
  j["entries"][3]["sign"] = -j["entries"][3]["sign"].get<int>();
  const fs::path bad = tmp.path / "bad.json";
  std::ofstream(bad) << j.dump();
  const Result corrupted = run_cli({"verify", bad.string()});
  CHECK(corrupted.rc == kVerificationFailed);
  CHECK(corrupted.out.find("z") != std::string::npos);

  std::ofstream(tmp.path / "junk.json") << "{not json";
  CHECK(run_cli({"verify", (tmp.path / "junk.json").string()}).rc == kParseFailure);
  CHECK(run_cli({"verify", (tmp.path / "missing.json").string()}).rc == kParseFailure);
}

TEST_CASE("default output directory from the environment") {
  TempDir tmp;
  ::setenv(kOutDirEnv, tmp.path.c_str(), 1);
  const Result r = run_cli({"gen", "--family", "la", "--n", "5", "--format", "csv"});
  ::unsetenv(kOutDirEnv);
  REQUIRE(r.rc == kOk);
  const fs::path expected = tmp.path / "la-n5.csv";
  CHECK(fs::exists(expected));
  CHECK(slurp(expected).rfind("row,", 0) == 0);
}

TEST_CASE("bounds, ssi and report") {
  const Result b = run_cli({"bounds", "--n", "12"});
  REQUIRE(b.rc == kOk);
  CHECK(b.out.find("7/12") != std::string::npos);
  CHECK(b.out.find("792") != std::string::npos);

  const Result s = run_cli({"ssi", "--n", "2"});
  REQUIRE(s.rc == kOk);
  CHECK(s.out.find("c0 = a0 b0 - a1 b1") != std::string::npos);
  CHECK(run_cli({"ssi", "--r", "3", "--format", "json"}).rc == kOk);

  const Result rep = run_cli({"report"});
  REQUIRE(rep.rc == kOk);
  CHECK(rep.out.find("[792, 12, 462]") != std::string::npos);
  CHECK(rep.out.find("[64, 12, 32]") != std::string::npos);
  CHECK(rep.out.find("[128, 12, 64]") != std::string::npos);
  const Result csv = run_cli({"report", "--format", "csv", "--max-n", "4"});
  CHECK(csv.rc == kOk);
  CHECK(std::count(csv.out.begin(), csv.out.end(), '\n') == 4);
}
