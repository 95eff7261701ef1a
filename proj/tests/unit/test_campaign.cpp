#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oppenheim/campaign.hpp"

using namespace oppenheim;
using namespace oppenheim::campaign;
using report::Json;

namespace {

namespace fs = std::filesystem;

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("oppenheim-test-" + name)) {
    fs::remove_all(path);
  }
  ~TempDir() { fs::remove_all(path); }
};

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

std::string without_timing(const fs::path& p) {
  Json j = Json::parse(slurp(p));
  j.erase("timing");
  return j.dump();
}

}  // namespace

TEST_SUITE("campaign") {

TEST_CASE("empty suite list gives an empty passing report") {
  TempDir dir("empty");
  CampaignConfig c;
  c.output_dir = dir.path.string();
  CampaignReport r = run_campaign(c);
  CHECK(r.suites.empty());
  CHECK(r.passed());
  Json j = Json::parse(slurp(r.summary_path));
  CHECK(j["schema"] == "campaign/1");
  CHECK(j["suites"] == 0);
  CHECK(j["passed"] == true);
}

TEST_CASE("tables suite passes on d in [8, 20]") {
  TempDir dir("tables");
  CampaignConfig c;
  c.output_dir = dir.path.string();
  SuiteResult s = run_suite("tables", c);
  CHECK(s.passed);
  CHECK_FALSE(s.crashed);
  CHECK(s.failures == 0);
  CHECK(s.checks > 1000);
  REQUIRE(s.files.size() == 1);
  Json t = Json::parse(slurp(s.files[0]));
  CHECK(t["schema"] == "tables/1");
  CHECK(t["rows"].size() > 50);
}

TEST_CASE("reports are identical across runs and thread counts, timing aside") {
  TempDir a("det-a"), b("det-b");
  CampaignConfig c;
  c.seed = 99;
  c.suites = {"tables", "dichotomy", "gauss", "smallzeros"};
  c.d_min = 8;
  c.d_max = 10;
  c.dichotomy_trials = 50;
  c.gauss_prime_max = 60;
  c.instances = 12;
  c.coefficient_bound = 10;
  c.output_dir = a.path.string();
  CampaignReport ra = run_campaign(c);
  c.output_dir = b.path.string();
  c.threads = 3;
  CampaignReport rb = run_campaign(c);
  CHECK(ra.passed());
  CHECK(rb.passed());
  std::size_t compared = 0;
  for (const auto& entry : fs::directory_iterator(a.path)) {
    CAPTURE(entry.path().filename().string());
    CHECK(without_timing(entry.path()) == without_timing(b.path / entry.path().filename()));
    ++compared;
  }
  std::size_t files = 1;
  for (const auto& s : ra.suites) files += s.files.size();
  CHECK(compared == files);
  CHECK(files >= 3);
}

TEST_CASE("a crashing suite is isolated") {
  TempDir dir("crash");
  CampaignConfig c;
  c.output_dir = dir.path.string();
  c.suites = {"smallzeros", "gauss"};
  c.signatures = {"(9,9)"};  // no d = 5 form has this signature
  c.gauss_prime_max = 50;
  CampaignReport r = run_campaign(c);
  REQUIRE(r.suites.size() == 2);
  CHECK(r.suites[0].crashed);
  CHECK_FALSE(r.suites[0].passed);
  CHECK(r.suites[0].error.find("signature filter") != std::string::npos);
  CHECK(r.suites[1].passed);
  CHECK_FALSE(r.passed());
  Json j = Json::parse(slurp(r.summary_path));
  CHECK(j["passed"] == false);
  CHECK(j["rows"][0]["crashed"] == true);
  CHECK(j["rows"][1]["passed"] == true);
}

TEST_CASE("configuration") {
  CampaignConfig c = config_from_json(Json::parse(R"({"seed": 5, "suites": ["kernel"], "moment_N": [100]})"));
  CHECK(c.seed == 5);
  CHECK(c.suites == std::vector<std::string>{"kernel"});
  CHECK(c.moment_N == std::vector<std::int64_t>{100});
  CHECK(c.d_min == 8);
  CampaignConfig back = config_from_json(to_json(c));
  CHECK(to_json(back) == to_json(c));
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"seeed": 5})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"suites": ["nope"]})")), std::invalid_argument);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"format": "xml"})")), std::invalid_argument);
}

TEST_CASE("environment overrides only output directory and threads") {
  CampaignConfig c;
  ::setenv("OPPENHEIM_OUTPUT_DIR", "/tmp/elsewhere", 1);
  ::setenv("OPPENHEIM_THREADS", "4", 1);
  apply_environment(c);
  CHECK(c.output_dir == "/tmp/elsewhere");
  CHECK(c.threads == 4);
  ::setenv("OPPENHEIM_THREADS", "0", 1);
  CHECK_THROWS_AS(apply_environment(c), std::invalid_argument);
  ::unsetenv("OPPENHEIM_OUTPUT_DIR");
  ::unsetenv("OPPENHEIM_THREADS");
}

TEST_CASE("suite streams depend on seed and name only") {
  Rng a = suite_rng(3, "solver"), b = suite_rng(3, "solver"), c = suite_rng(3, "tables"), d = suite_rng(4, "solver");
  auto x = a();
  CHECK(x == b());
  CHECK(x != c());
  CHECK(x != d());
}

TEST_CASE("random forms") {
  Rng rng = suite_rng(1, "forms");
  for (int i = 0; i < 100; ++i) {
    IntegerForm f = random_integer_form(rng, 5, 30);
    CHECK(f.indefinite());
    for (Eigen::Index j = 0; j < 5; ++j) CHECK((f[j] != 0 && std::abs(f[j]) <= 30));
    RealForm g = random_real_form(rng, 5, i % 2 == 0);
    CHECK(g.indefinite());
    CHECK(exact(g).has_value() == (i % 2 == 0));
    long double top = 0;
    for (Eigen::Index j = 0; j < 5; ++j) top = std::max(top, std::fabs(g[j].approx()));
    CHECK(top >= 1);
  }
}

}  // TEST_SUITE
