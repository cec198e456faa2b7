#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(POLYFORM_CLI_PATH) + " " + args + " 2>/dev/null";
  RunResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe))
    result.out.append(buf, n);
  int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string tmp_path(const std::string& name) {
  return std::string("cli_test_") + name;
}

}  // namespace

TEST_CASE("eval prints the value and exits cleanly") {
  auto r = run("eval --m 35 --x -1");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 3) == "32\n");
}

TEST_CASE("truant prints the bare answer") {
  auto r = run("truant --m 35 --coeffs 1,2,4,8,16 --bound 100");
  CHECK(r.exit_code == 0);
  CHECK(r.out.substr(0, 3) == "33\n");

  auto u = run("truant --m 3 --coeffs 1,1,1 --bound 100");
  CHECK(u.exit_code == 0);
  CHECK(u.out.substr(0, 10) == "universal\n");
}

TEST_CASE("usage errors exit with 2") {
  CHECK(run("eval --m 35").exit_code == 2);          // missing --x
  CHECK(run("nonsense").exit_code == 2);             // unknown subcommand
  CHECK(run("eval --m 2 --x 1").exit_code == 2);     // domain error
  CHECK(run("truant --m 5 --coeffs 2,1 --bound 50").exit_code == 2);
}

TEST_CASE("values emits one record per value in both formats") {
  std::string lines_path = tmp_path("values.ndjson");
  auto r = run("--out " + lines_path + " values --m 3 --bound 10");
  CHECK(r.exit_code == 0);
  std::string lines = slurp(lines_path);
  CHECK(lines.find("\"value\":0") != std::string::npos);
  CHECK(lines.find("\"value\":10") != std::string::npos);

  std::string csv_path = tmp_path("values.csv");
  auto c = run("--out " + csv_path + " --format csv values --m 3 --bound 10");
  CHECK(c.exit_code == 0);
  std::string csv = slurp(csv_path);
  CHECK(csv.substr(0, csv.find('\n')) == "m,value,index");

  std::remove(lines_path.c_str());
  std::remove(csv_path.c_str());
}

TEST_CASE("identical invocations produce identical payload bytes") {
  std::string a = tmp_path("det_a"), b = tmp_path("det_b");
  CHECK(run("--out " + a + " tree --m 5 --bound 200").exit_code == 0);
  CHECK(run("--out " + b + " tree --m 5 --bound 200").exit_code == 0);
  CHECK(slurp(a) == slurp(b));
  CHECK(!slurp(a).empty());
  std::remove(a.c_str());
  std::remove(b.c_str());
}

TEST_CASE("table --save round-trips through table --load") {
  std::string table_path = tmp_path("table.bin");
  auto save = run("table --m 35 --coeffs 1,2,4,8,16 --bound 100 --save " + table_path);
  CHECK(save.exit_code == 0);
  auto load = run("table --m 35 --load " + table_path);
  CHECK(load.exit_code == 0);
  CHECK(load.out.find("\"truant\":33") != std::string::npos);
  std::remove(table_path.c_str());

  // A truncated file must be rejected, not silently rebuilt.
  std::ofstream(table_path, std::ios::trunc) << "PFT";
  CHECK(run("table --m 35 --load " + table_path).exit_code == 2);
  std::remove(table_path.c_str());
}

TEST_CASE("verify-identities reports every set and passes") {
  std::string path = tmp_path("identities.ndjson");
  auto r = run("--out " + path + " verify-identities");
  CHECK(r.exit_code == 0);
  std::string out = slurp(path);
  for (const char* set : {"\"11\"", "\"122\"", "\"123\"", "\"124\"",
                          "\"116,3\"", "\"115\"", "\"TT\"", "residue-cover"})
    CHECK(out.find(set) != std::string::npos);
  CHECK(out.find("fail") == std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("recompute-s writes the grid and an allowlisted diff") {
  std::string path = tmp_path("sgrid.ndjson");
  auto r = run("--out " + path + " recompute-s");
  CHECK(r.exit_code == 0);  // nothing beyond the allowlist
  std::string grid = slurp(path);
  CHECK(grid.find("\"a\":116,\"r\":3,\"class\":\"pos-only\"") != std::string::npos);
  CHECK(grid.find("\"a\":1,\"r\":7,\"class\":\"neg-only\"") != std::string::npos);
  std::string diff = slurp(path + ".diff.csv");
  CHECK(diff.substr(0, diff.find('\n')) == "a,r,detail,allowlisted");
  CHECK(diff.find("false") == std::string::npos);
  CHECK(diff.find("(16.3)") != std::string::npos);
  std::remove(path.c_str());
  std::remove((path + ".diff.csv").c_str());
}

TEST_CASE("stabilize reports the confirmed gamma bound") {
  std::string path = tmp_path("stab.ndjson");
  auto r = run("--out " + path + " stabilize --m 3 --bound 64");
  CHECK(r.exit_code == 0);
  std::string out = slurp(path);
  CHECK(out.find("\"gamma_bound\":8") != std::string::npos);
  CHECK(out.find("\"converged\":true") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("lab verdicts gate the exit code") {
  auto ok = run("lab multiples --m 10 --a 3 --count 20");
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("pass") != std::string::npos);

  auto ell = run("lab ell --m-lo 3 --m-hi 12 --bound 20000");
  CHECK(ell.exit_code == 0);
  CHECK(ell.out.find("differs") == std::string::npos);
}

TEST_CASE("POLYFORM_CACHE stores and reuses tables") {
  std::string cache_dir = tmp_path("cache");
  std::string mkdir = "mkdir -p " + cache_dir;
  REQUIRE(std::system(mkdir.c_str()) == 0);
  std::string env = "POLYFORM_CACHE=" + cache_dir + " " + POLYFORM_CLI_PATH;
  auto run_env = [&](const std::string& args) {
    std::string cmd = env + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    char buf[4096];
    while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
    pclose(pipe);
    return out;
  };
  CHECK(run_env("truant --m 35 --coeffs 1,2,4,8,16 --bound 100").substr(0, 3) == "33\n");
  std::string cached = cache_dir + "/m35_B100_1_2_4_8_16.reptable";
  CHECK(!slurp(cached).empty());
  // Second run must read the cached table back and agree.
  CHECK(run_env("truant --m 35 --coeffs 1,2,4,8,16 --bound 100").substr(0, 3) == "33\n");
  // A corrupted cache entry is dropped and rebuilt, not trusted.
  std::ofstream(cached, std::ios::trunc) << "garbage";
  CHECK(run_env("truant --m 35 --coeffs 1,2,4,8,16 --bound 100").substr(0, 3) == "33\n");
  std::system(("rm -rf " + cache_dir).c_str());
}

TEST_CASE("manifest lands on stderr as a single record") {
  std::string manifest_path = tmp_path("manifest.json");
  auto r = run("--manifest " + manifest_path + " eval --m 7 --x 2");
  CHECK(r.exit_code == 0);
  std::string manifest = slurp(manifest_path);
  CHECK(manifest.find("\"command\":\"eval\"") != std::string::npos);
  CHECK(manifest.find("\"input_hash\":") != std::string::npos);
  CHECK(manifest.find("\"version\":\"polyform 1.0.0\"") != std::string::npos);
  std::remove(manifest_path.c_str());
}
