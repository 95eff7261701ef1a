#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "oppenheim/forms.hpp"
#include "oppenheim/report.hpp"

namespace oppenheim::campaign {

using Rng = std::mt19937_64;

struct CampaignConfig {
  std::uint64_t seed = 1;
  std::vector<std::string> suites;
  // tables
  int d_min = 8;
  int d_max = 20;
  // smallzeros: d = 5 integer forms with 1 <= |f_i| <= coefficient_bound
  int instances = 200;
  int coefficient_bound = 30;
  std::vector<std::string> signatures;  // "(r,s)" filters; empty keeps all
  // gauss
  int gauss_prime_max = 500;
  int gauss_units = 20;
  // dichotomy: eta X <= dichotomy_eta_x
  int dichotomy_trials = 1000;
  double dichotomy_eta_x = 50;
  // kernel and moments
  std::vector<std::int64_t> moment_N = {1000, 10000, 100000};
  int moment_ranges = 5;
  // solver
  int solver_instances = 50;
  std::string solver_epsilon = "1/2";
  double solver_budget = 1e6;
  std::string output_dir = "campaign-out";
  report::Format format = report::Format::json;
  unsigned threads = 1;
};

CampaignConfig config_from_json(const report::Json& j);
report::Json to_json(const CampaignConfig& config);
CampaignConfig load_config(const std::string& path);
/// OPPENHEIM_OUTPUT_DIR and OPPENHEIM_THREADS, the only environment overrides.
void apply_environment(CampaignConfig& config);

const std::vector<std::string>& known_suites();

struct SuiteResult {
  std::string name;
  bool passed = false;
  bool crashed = false;
  std::string error;
  std::int64_t checks = 0;
  std::int64_t failures = 0;
  report::Json summary = report::Json::object();
  std::vector<std::string> files;
  double wall_ms = 0;
};

struct CampaignReport {
  std::vector<SuiteResult> suites;
  std::string summary_path;
  bool passed() const;
};

/// Runs one suite; exceptions are caught and reported as a crash.
SuiteResult run_suite(const std::string& name, const CampaignConfig& config);
/// Runs the configured suites on a worker pool and writes per-suite files plus a summary.
CampaignReport run_campaign(const CampaignConfig& config);
report::Document summary_document(const CampaignReport& report);

/// Seeded stream for one suite, independent of the order suites run in.
Rng suite_rng(std::uint64_t seed, const std::string& suite);

/// Indefinite d-dimensional form with 1 <= |f_i| <= bound.
IntegerForm random_integer_form(Rng& rng, int d, int bound);
/// Indefinite real form with max |q_i| >= 1: coefficients p/q, or p/q sqrt(n) with n squarefree when irrational.
RealForm random_real_form(Rng& rng, int d, bool rational);

}  // namespace oppenheim::campaign
