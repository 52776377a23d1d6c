// End-to-end checks of the pcg-eur binary. The test runner passes the binary
// location through the PCG_EUR_BIN environment variable.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("PCG_EUR_BIN");
  REQUIRE_MESSAGE(env != nullptr, "PCG_EUR_BIN is not set");
  return env;
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("pcg_eur_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& path, const std::string& body) {
  std::ofstream f(path);
  f << body;
}

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  REQUIRE_MESSAGE(f.good(), "missing file: " << path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

int run(const std::string& args) {
  const int status = std::system((binary() + " " + args).c_str());
  return WEXITSTATUS(status);
}

const char* kSmallVerify =
    R"({"d":2,"theta":0.0,"theta_prime":1.5707963267948966,"states":4,"seed":11})";

}  // namespace

TEST_CASE("verify-eur produces reports and a manifest") {
  const fs::path dir = fresh_dir("verify");
  write(dir / "cfg.json", kSmallVerify);
  const int code = run("verify-eur --config " + (dir / "cfg.json").string() +
                       " --out " + (dir / "out").string() + " --quiet");
  CHECK(code == 0);

  const std::string csv = slurp(dir / "out" / "reports.csv");
  CHECK(csv.rfind("scheme_id,state_id,alpha,beta,H_alpha,H_beta,sum,bound,"
                  "deficit\n", 0) == 0);
  // 4 states x 5 default orders plus the header line.
  int lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 21);

  const std::string manifest = slurp(dir / "out" / "manifest.json");
  CHECK(manifest.find("\"config_hash\"") != std::string::npos);
  CHECK(manifest.find("\"seed\": 11") != std::string::npos);
  CHECK(manifest.find("\"version\"") != std::string::npos);
  CHECK(manifest.find("\"command\": \"verify-eur\"") != std::string::npos);
}

TEST_CASE("identical config and seed reproduce the outputs byte-for-byte") {
  const fs::path dir = fresh_dir("idempotent");
  write(dir / "cfg.json", kSmallVerify);
  const std::string base = (dir / "cfg.json").string();
  REQUIRE(run("verify-eur --config " + base + " --out " +
              (dir / "a").string() + " --quiet") == 0);
  REQUIRE(run("verify-eur --config " + base + " --out " +
              (dir / "b").string() + " --quiet") == 0);
  CHECK(slurp(dir / "a" / "reports.csv") == slurp(dir / "b" / "reports.csv"));
  CHECK(slurp(dir / "a" / "reports.json") == slurp(dir / "b" / "reports.json"));

  // The thread cap must not change the merged results.
  const std::string capped = "env PCG_EUR_THREADS=1 " + binary() +
                             " verify-eur --config " + base + " --out " +
                             (dir / "c").string() + " --quiet";
  REQUIRE(WEXITSTATUS(std::system(capped.c_str())) == 0);
  CHECK(slurp(dir / "a" / "reports.csv") == slurp(dir / "c" / "reports.csv"));

  // A different seed changes the reports.
  REQUIRE(run("verify-eur --config " + base + " --seed 99 --out " +
              (dir / "d").string() + " --quiet") == 0);
  CHECK(slurp(dir / "a" / "reports.csv") != slurp(dir / "d" / "reports.csv"));
}

TEST_CASE("check-mub verdicts and exit codes") {
  const fs::path dir = fresh_dir("mub");
  // T_x T_p = 2 pi at d = 2 forces M = 2: coprimality failure, exit 3.
  write(dir / "bad.json",
        R"({"d":2,"T_theta":2.5066282746310002,)"
        R"("T_theta_prime":2.5066282746310002,"dtheta":1.5707963267948966})");
  CHECK(run("check-mub --config " + (dir / "bad.json").string() + " --out " +
            (dir / "bad_out").string() + " --quiet 2>/dev/null") == 3);
  const std::string verdict = slurp(dir / "bad_out" / "reports.json");
  CHECK(verdict.find("coprimality-failure") != std::string::npos);

  write(dir / "good.json",
        R"({"d":2,"T_theta":3.5449077018110318,)"
        R"("T_theta_prime":3.5449077018110318,"dtheta":1.5707963267948966})");
  CHECK(run("check-mub --config " + (dir / "good.json").string() + " --out " +
            (dir / "good_out").string() + " --quiet") == 0);
}

TEST_CASE("config errors exit with code 2 and write nothing") {
  const fs::path dir = fresh_dir("badcfg");
  write(dir / "broken.json", "{not json");
  CHECK(run("verify-eur --config " + (dir / "broken.json").string() +
            " --out " + (dir / "out").string() + " 2>/dev/null") == 2);
  CHECK_FALSE(fs::exists(dir / "out" / "reports.csv"));

  write(dir / "missing_key.json", R"({"d":2})");
  CHECK(run("verify-eur --config " + (dir / "missing_key.json").string() +
            " --out " + (dir / "out2").string() + " 2>/dev/null") == 2);
  CHECK_FALSE(fs::exists(dir / "out2" / "reports.csv"));

  CHECK(run("verify-eur --config " + (dir / "absent.json").string() +
            " 2>/dev/null") == 2);
}

TEST_CASE("invalid schemes exit with code 3") {
  const fs::path dir = fresh_dir("badscheme");
  write(dir / "cfg.json",
        R"({"d":4,"M":2,"theta":0.0,"theta_prime":1.5707963267948966})");
  CHECK(run("minimize --config " + (dir / "cfg.json").string() + " --out " +
            (dir / "out").string() + " 2>/dev/null") == 3);
  CHECK_FALSE(fs::exists(dir / "out" / "reports.csv"));
}

TEST_CASE("mask-demo summarizes the series reconstruction") {
  const fs::path dir = fresh_dir("mask");
  write(dir / "cfg.json", R"({"T":2.0,"d":2,"k":0,"n_max":500,"samples":400})");
  CHECK(run("mask-demo --config " + (dir / "cfg.json").string() + " --out " +
            (dir / "out").string() + " --quiet") == 0);
  const std::string csv = slurp(dir / "out" / "reports.csv");
  CHECK(csv.rfind("z,mask,partial_sum,abs_err\n", 0) == 0);
  const std::string body = slurp(dir / "out" / "reports.json");
  CHECK(body.find("l2_error") != std::string::npos);
}

TEST_CASE("limit-study emits one record per dimension") {
  const fs::path dir = fresh_dir("limit");
  write(dir / "cfg.json", R"({"d_list":[4,16],"alpha":1.0})");
  CHECK(run("limit-study --config " + (dir / "cfg.json").string() + " --out " +
            (dir / "out").string() + " --quiet") == 0);
  const std::string csv = slurp(dir / "out" / "reports.csv");
  int lines = 0;
  for (char c : csv) lines += (c == '\n');
  CHECK(lines == 3);  // header + 2 records
}
