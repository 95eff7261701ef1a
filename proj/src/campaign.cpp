#include "oppenheim/campaign.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>

#include <boost/random/uniform_int_distribution.hpp>
#include <boost/random/uniform_real_distribution.hpp>

#include "oppenheim/analysis/calibration.hpp"
#include "oppenheim/analysis/kernel.hpp"
#include "oppenheim/analysis/moments.hpp"
#include "oppenheim/analysis/weyl.hpp"
#include "oppenheim/closed_forms.hpp"
#include "oppenheim/dirichlet.hpp"
#include "oppenheim/exponents.hpp"
#include "oppenheim/rational.hpp"
#include "oppenheim/solver.hpp"

namespace oppenheim::campaign {

namespace {

using report::Json;

int uniform_int(Rng& rng, int lo, int hi) { return boost::random::uniform_int_distribution<int>(lo, hi)(rng); }
double uniform_real(Rng& rng, double lo, double hi) { return boost::random::uniform_real_distribution<double>(lo, hi)(rng); }

// Tally of checks within one suite.
struct Tally {
  SuiteResult& out;
  void check(bool ok) {
    ++out.checks;
    if (!ok) ++out.failures;
  }
};

std::string extension(report::Format f) { return f == report::Format::json ? "json" : f == report::Format::csv ? "csv" : "txt"; }

std::string write_document(const CampaignConfig& config, const std::string& stem, const report::Document& doc) {
  std::filesystem::create_directories(config.output_dir);
  std::string path = (std::filesystem::path(config.output_dir) / (stem + "." + extension(config.format))).string();
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << report::emit(doc, config.format);
  if (!os) throw std::runtime_error("write failed for " + path);
  return path;
}

std::string signature_text(int r, int s) { return "(" + std::to_string(r) + "," + std::to_string(s) + ")"; }

void tables_suite(const CampaignConfig& config, SuiteResult& out) {
  Tally t{out};
  for (int d = config.d_min; d <= config.d_max; ++d) {
    for (int r = 1; r < d; ++r)
      if (d >= 5) t.check(beta(r, d - r) >= beta_lower_bound(d));
    if (d < 7 || (d % 2 == 0 && d < 8)) continue;
    for (long l = 0;; ++l) {
      closed_form::Row row = d % 2 == 0 ? closed_form::even_row(d, l) : closed_form::odd_row(d, l);
      if (row.s2 < 2) break;
      const int r = static_cast<int>(row.r2 / 2), s = static_cast<int>(row.s2 / 2);
      t.check(two_beta(r, s) == row.two_beta);
      for (int k = 1; k <= 3; ++k) {
        if (d - k < 5) continue;
        auto got = restricted_signatures(r, s, k);
        std::vector<closed_form::Entry> want;
        for (const auto& e : row.q[k - 1])
          if (e.r2 >= 0 && e.s2 >= 0) want.push_back(e);
        t.check(got.size() == want.size());
        if (got.size() != want.size()) continue;
        for (std::size_t i = 0; i < got.size(); ++i) {
          t.check(2 * got[i].r == want[i].r2 && 2 * got[i].s == want[i].s2);
          if (got[i].indefinite) t.check(two_beta(got[i].r, got[i].s) == want[i].two_beta);
        }
        if (!p_exponent_applicable(k, r, s)) continue;
        Rational p = p_exponent(k, r, s);
        auto bound = closed_form::p_bound(d, l, k);
        if (bound) {
          t.check(p <= *bound);
          t.check(p < 0);
        } else {
          t.check(p == 0);
        }
      }
    }
  }
  out.summary["d_min"] = config.d_min;
  out.summary["d_max"] = config.d_max;
  out.files.push_back(write_document(config, "tables", report::tables_document(std::max(5, config.d_min), config.d_max)));
}

constexpr std::size_t kMinSlopeClass = 10;

// least-squares slope of y on x
double slope(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double mx = std::accumulate(x.begin(), x.end(), 0.0) / n, my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0, sxx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxx > 0 ? sxy / sxx : 0;
}

void smallzeros_suite(const CampaignConfig& config, SuiteResult& out) {
  Rng rng = suite_rng(config.seed, "smallzeros");
  std::vector<IntegerForm> forms;
  for (int tries = 0; static_cast<int>(forms.size()) < config.instances; ++tries) {
    if (tries > 1000 * (config.instances + 1)) throw std::runtime_error("signature filter rejects every generated form");
    IntegerForm f = random_integer_form(rng, 5, config.coefficient_bound);
    const auto& sg = f.signature();
    if (!config.signatures.empty() &&
        std::find(config.signatures.begin(), config.signatures.end(), signature_text(sg.r, sg.s)) == config.signatures.end())
      continue;
    forms.push_back(f);
  }

  std::vector<std::optional<SchlickeweiCheck>> results(forms.size());
  std::vector<std::string> errors(forms.size());
  analysis::parallel_for(forms.size(), config.threads, [&](std::size_t i) {
    try {
      results[i] = verify_schlickewei(forms[i]);
    } catch (const SearchExhausted& e) {
      errors[i] = e.what();
    }
  });

  Tally t{out};
  report::Document doc;
  doc.schema = "smallzeros/1";
  doc.columns = {"coeffs", "signature", "det", "min_norm", "bound_base", "ratio", "witness"};
  std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_signature;
  std::map<std::string, Rational> exponents;
  double max_ratio = 0;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    t.check(results[i].has_value());
    const auto& f = forms[i];
    std::vector<std::int64_t> coeffs(f.coeffs().begin(), f.coeffs().end());
    std::string sig = signature_text(f.signature().r, f.signature().s);
    BigInt det = extremes(f).detQ;
    if (!results[i]) {
      doc.rows.push_back({coeffs, sig, report::integer(det), nullptr, nullptr, nullptr, errors[i]});
      continue;
    }
    const auto& r = *results[i];
    std::vector<std::int64_t> w(r.witness.m.begin(), r.witness.m.end());
    doc.rows.push_back({coeffs, sig, report::integer(det), r.min_norm, static_cast<double>(r.bound_base), static_cast<double>(r.ratio), w});
    max_ratio = std::max(max_ratio, static_cast<double>(r.ratio));
    by_signature[sig].first.push_back(std::log(static_cast<double>(det)));
    by_signature[sig].second.push_back(std::log(static_cast<double>(r.min_norm)));
    exponents[sig] = r.exponent;
  }
  Json slopes = Json::object();
  for (const auto& [sig, xy] : by_signature) {
    double s = slope(xy.first, xy.second);
    double e = static_cast<double>(mp::numerator(exponents[sig])) / static_cast<double>(mp::denominator(exponents[sig]));
    // a regression on a handful of points says nothing; small classes are reported but not judged
    Json within = nullptr;
    if (xy.first.size() >= kMinSlopeClass) {
      within = s <= e + 0.15;
      t.check(within.get<bool>());
    }
    slopes[sig] = {{"instances", xy.first.size()}, {"slope", s}, {"exponent", to_string(exponents[sig])}, {"within", within}};
  }
  doc.fields["instances"] = forms.size();
  doc.fields["max_ratio"] = max_ratio;
  doc.fields["slopes"] = slopes;
  out.summary["instances"] = forms.size();
  out.summary["max_ratio"] = max_ratio;
  out.summary["slopes"] = slopes;
  out.files.push_back(write_document(config, "smallzeros", doc));
}

std::vector<std::int64_t> odd_primes_below(std::int64_t n) {
  std::vector<bool> composite(static_cast<std::size_t>(std::max<std::int64_t>(n, 2)), false);
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p < n; ++p) {
    if (composite[static_cast<std::size_t>(p)]) continue;
    if (p > 2) out.push_back(p);
    for (std::int64_t q = p * p; q < n; q += p) composite[static_cast<std::size_t>(q)] = true;
  }
  return out;
}

void gauss_suite(const CampaignConfig& config, SuiteResult& out) {
  Rng rng = suite_rng(config.seed, "gauss");
  Tally t{out};
  double worst = 0;
  for (std::int64_t y : odd_primes_below(config.gauss_prime_max)) {
    for (int k = 0; k < config.gauss_units; ++k) {
      std::int64_t a = uniform_int(rng, 1, static_cast<int>(y - 1));
      double err = std::fabs(std::abs(analysis::gauss_sum(a, y)) - std::sqrt(static_cast<double>(y)));
      worst = std::max(worst, err);
      t.check(err < 1e-9);
    }
  }
  out.summary["max_error"] = worst;
}

void dichotomy_suite(const CampaignConfig& config, SuiteResult& out) {
  Rng rng = suite_rng(config.seed, "dichotomy");
  Tally t{out};
  std::int64_t same_ratio = 0;
  for (int i = 0; i < config.dichotomy_trials; ++i) {
    int X = uniform_int(rng, 1, 500);
    Coefficient theta(exact_rational(uniform_real(rng, -2, 2)));
    Coefficient eta(exact_rational(uniform_real(rng, 1e-3, 1) * config.dichotomy_eta_x / X));
    ApproximantCount c = count_approximants(theta, eta, Coefficient(static_cast<long long>(X)));
    t.check(c.dichotomy);
    same_ratio += c.all_same_ratio && c.count > 0;
  }
  out.summary["trials"] = config.dichotomy_trials;
  out.summary["single_ratio_trials"] = same_ratio;
}

void kernel_suite(const CampaignConfig&, SuiteResult& out) {
  Tally t{out};
  analysis::KernelSpec k = analysis::ingham_kernel();
  t.check(std::fabs(k.hat(0) - 1) <= 1e-12L);
  for (long double a : {0.3L, 1.0L, 7.5L, 42.0L, 640.0L}) t.check(k.hat(a) == k.hat(-a));
  long double decay = k.decay_maximum(1, 1000);
  t.check(decay < analysis::calibration::kernel_decay);
  analysis::PsiGrid g = k.psi_grid();
  double lowest = 0, mass = 0, outside = 0;
  for (std::size_t i = 0; i < g.x.size(); ++i) {
    lowest = std::min(lowest, g.psi[i]);
    mass += g.psi[i] * g.spacing;
    if (std::fabs(g.x[i]) >= 1.05) outside = std::max(outside, std::fabs(g.psi[i]));
  }
  t.check(lowest >= -1e-6);
  t.check(std::fabs(mass - 1) <= 1e-3);
  t.check(outside <= 1e-6);
  long double delta = k.delta();
  t.check(delta > 0);
  out.summary["decay_maximum"] = static_cast<double>(decay);
  out.summary["grid_minimum"] = lowest;
  out.summary["grid_mass"] = mass;
  out.summary["outside_maximum"] = outside;
  out.summary["delta"] = static_cast<double>(delta);
}

void moments_suite(const CampaignConfig& config, SuiteResult& out) {
  Rng rng = suite_rng(config.seed, "moments");
  Tally t{out};
  Json ranges = Json::array();
  for (int i = 0; i < config.moment_ranges; ++i) {
    std::int64_t lo = uniform_int(rng, 1, 1000), len = uniform_int(rng, 1, 200);
    std::int64_t count = analysis::fourth_moment_count(lo, lo + len - 1);
    double integral = analysis::fourth_moment_integral(lo, lo + len - 1);
    double rel = std::fabs(integral - static_cast<double>(count)) / static_cast<double>(count);
    t.check(rel <= 1e-6);
    ranges.push_back({{"lo", lo}, {"hi", lo + len - 1}, {"count", count}, {"integral", integral}, {"relative_error", rel}});
  }
  Json growth = Json::array();
  for (std::int64_t N : config.moment_N) {
    double g = analysis::r2_growth_ratio(N);
    t.check(g <= analysis::calibration::r2_growth);
    growth.push_back({{"N", N}, {"ratio", g}});
  }
  out.summary["ranges"] = ranges;
  out.summary["r2_growth"] = growth;
}

void solver_suite(const CampaignConfig& config, SuiteResult& out) {
  Rng rng = suite_rng(config.seed, "solver");
  std::vector<RealForm> forms;
  for (int i = 0; i < config.solver_instances; ++i) forms.push_back(random_real_form(rng, 5, i % 2 == 0));
  const Coefficient eps = Coefficient::parse(config.solver_epsilon);
  SolveOptions opt;
  opt.budget = config.solver_budget;

  std::vector<std::optional<SolutionCertificate>> certs(forms.size());
  std::vector<std::string> errors(forms.size());
  analysis::parallel_for(forms.size(), config.threads, [&](std::size_t i) {
    try {
      certs[i] = solve(forms[i], eps, opt);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });

  Tally t{out};
  report::Document doc;
  doc.schema = "solver-regression/1";
  doc.fields["epsilon"] = config.solver_epsilon;
  doc.columns = {"coeffs", "rational", "m", "weighted_norm", "q_value", "verified", "within_theorem_bound", "error"};
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::vector<std::string> coeffs;
    for (Eigen::Index j = 0; j < forms[i].dim(); ++j) coeffs.push_back(forms[i][j].text());
    bool rational = exact(forms[i]).has_value();
    if (!certs[i]) {
      t.check(false);
      doc.rows.push_back({coeffs, rational, nullptr, nullptr, nullptr, false, nullptr, errors[i]});
      continue;
    }
    const auto& c = *certs[i];
    bool verified = verify_certificate(c, forms[i], eps).valid;
    bool within = c.within_theorem_bound.value_or(false);
    t.check(verified);
    t.check(within);
    std::vector<std::int64_t> m(c.m.begin(), c.m.end());
    doc.rows.push_back({coeffs, rational, m, report::decimal(c.weighted_norm), report::decimal(c.q_value), verified, within, nullptr});
  }
  out.summary["instances"] = forms.size();
  out.files.push_back(write_document(config, "solver", doc));
}

using SuiteFn = std::function<void(const CampaignConfig&, SuiteResult&)>;

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> r = {
      {"tables", tables_suite},   {"smallzeros", smallzeros_suite}, {"gauss", gauss_suite},   {"dichotomy", dichotomy_suite},
      {"kernel", kernel_suite},   {"moments", moments_suite},       {"solver", solver_suite},
  };
  return r;
}

template <typename T>
void read(const Json& j, const char* key, T& into) {
  if (j.contains(key)) into = j.at(key).get<T>();
}

}  // namespace

const std::vector<std::string>& known_suites() {
  static const std::vector<std::string> names = {"tables", "smallzeros", "gauss", "dichotomy", "kernel", "moments", "solver"};
  return names;
}

CampaignConfig config_from_json(const Json& j) {
  static const std::vector<std::string> keys = {"seed", "suites", "d_min", "d_max", "instances", "coefficient_bound", "signatures",
                                                "gauss_prime_max", "gauss_units", "dichotomy_trials", "dichotomy_eta_x", "moment_N",
                                                "moment_ranges", "solver_instances", "solver_epsilon", "solver_budget", "output_dir",
                                                "format", "threads"};
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) throw std::invalid_argument("unknown campaign key '" + k + "'");
  CampaignConfig c;
  read(j, "seed", c.seed);
  read(j, "suites", c.suites);
  read(j, "d_min", c.d_min);
  read(j, "d_max", c.d_max);
  read(j, "instances", c.instances);
  read(j, "coefficient_bound", c.coefficient_bound);
  read(j, "signatures", c.signatures);
  read(j, "gauss_prime_max", c.gauss_prime_max);
  read(j, "gauss_units", c.gauss_units);
  read(j, "dichotomy_trials", c.dichotomy_trials);
  read(j, "dichotomy_eta_x", c.dichotomy_eta_x);
  read(j, "moment_N", c.moment_N);
  read(j, "moment_ranges", c.moment_ranges);
  read(j, "solver_instances", c.solver_instances);
  read(j, "solver_epsilon", c.solver_epsilon);
  read(j, "solver_budget", c.solver_budget);
  read(j, "output_dir", c.output_dir);
  read(j, "threads", c.threads);
  if (j.contains("format")) c.format = report::parse_format(j.at("format").get<std::string>());
  for (const auto& s : c.suites)
    if (!registry().count(s)) throw std::invalid_argument("unknown suite '" + s + "'");
  if (c.threads < 1) throw std::invalid_argument("threads must be >= 1");
  return c;
}

Json to_json(const CampaignConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["suites"] = c.suites;
  j["d_min"] = c.d_min;
  j["d_max"] = c.d_max;
  j["instances"] = c.instances;
  j["coefficient_bound"] = c.coefficient_bound;
  j["signatures"] = c.signatures;
  j["gauss_prime_max"] = c.gauss_prime_max;
  j["gauss_units"] = c.gauss_units;
  j["dichotomy_trials"] = c.dichotomy_trials;
  j["dichotomy_eta_x"] = c.dichotomy_eta_x;
  j["moment_N"] = c.moment_N;
  j["moment_ranges"] = c.moment_ranges;
  j["solver_instances"] = c.solver_instances;
  j["solver_epsilon"] = c.solver_epsilon;
  j["solver_budget"] = c.solver_budget;
  j["output_dir"] = c.output_dir;
  j["format"] = c.format == report::Format::json ? "json" : c.format == report::Format::csv ? "csv" : "text";
  j["threads"] = c.threads;
  return j;
}

CampaignConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::runtime_error("cannot read " + path);
  return config_from_json(Json::parse(is));
}

void apply_environment(CampaignConfig& config) {
  if (const char* dir = std::getenv("OPPENHEIM_OUTPUT_DIR"); dir && *dir) config.output_dir = dir;
  if (const char* th = std::getenv("OPPENHEIM_THREADS"); th && *th) {
    int n = std::stoi(th);
    if (n < 1) throw std::invalid_argument("OPPENHEIM_THREADS must be >= 1");
    config.threads = static_cast<unsigned>(n);
  }
}

Rng suite_rng(std::uint64_t seed, const std::string& suite) {
  // FNV-1a of the name keeps streams stable across platforms
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : suite) h = (h ^ c) * 1099511628211ULL;
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32), static_cast<std::uint32_t>(h),
                    static_cast<std::uint32_t>(h >> 32)};
  return Rng(seq);
}

IntegerForm random_integer_form(Rng& rng, int d, int bound) {
  if (bound < 1 || d < 2) throw std::invalid_argument("random_integer_form needs d >= 2 and bound >= 1");
  for (;;) {
    IntVector c(d);
    for (int i = 0; i < d; ++i) c[i] = uniform_int(rng, 1, bound) * (uniform_int(rng, 0, 1) ? 1 : -1);
    IntegerForm f(c);
    if (f.indefinite()) return f;
  }
}

RealForm random_real_form(Rng& rng, int d, bool rational) {
  static const int squarefree[] = {2, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23};
  for (;;) {
    RealForm::Vector q(d);
    bool any_irrational = false;
    for (int i = 0; i < d; ++i) {
      std::string text = std::to_string(uniform_int(rng, 1, 40)) + "/" + std::to_string(uniform_int(rng, 1, 9));
      if (!rational && (uniform_int(rng, 0, 1) || (i == d - 1 && !any_irrational))) {
        text += "*sqrt(" + std::to_string(squarefree[uniform_int(rng, 0, 14)]) + ")";
        any_irrational = true;
      }
      if (uniform_int(rng, 0, 1)) text = "-" + text;
      q[i] = Coefficient::parse(text);
    }
    RealForm f(q);
    if (!f.indefinite()) continue;
    if (extremes(approximate(f)).q < 1) continue;
    return f;
  }
}

bool CampaignReport::passed() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.passed; });
}

SuiteResult run_suite(const std::string& name, const CampaignConfig& config) {
  SuiteResult out;
  out.name = name;
  const auto start = std::chrono::steady_clock::now();
  auto it = registry().find(name);
  try {
    if (it == registry().end()) throw std::invalid_argument("unknown suite '" + name + "'");
    it->second(config, out);
    out.passed = out.failures == 0 && out.checks > 0;
  } catch (const std::exception& e) {
    out.crashed = true;
    out.error = e.what();
  } catch (...) {
    out.crashed = true;
    out.error = "unknown exception";
  }
  out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return out;
}

CampaignReport run_campaign(const CampaignConfig& config) {
  CampaignReport rep;
  rep.suites.resize(config.suites.size());
  analysis::parallel_for(config.suites.size(), config.threads, [&](std::size_t i) { rep.suites[i] = run_suite(config.suites[i], config); });
  rep.summary_path = write_document(config, "summary", summary_document(rep));
  return rep;
}

report::Document summary_document(const CampaignReport& rep) {
  report::Document doc;
  doc.schema = "campaign/1";
  doc.fields["passed"] = rep.passed();
  doc.fields["suites"] = rep.suites.size();
  doc.columns = {"suite", "passed", "crashed", "checks", "failures", "error", "files", "summary"};
  for (const auto& s : rep.suites) {
    std::vector<std::string> files;
    for (const auto& f : s.files) files.push_back(std::filesystem::path(f).filename().string());
    doc.rows.push_back({s.name, s.passed, s.crashed, s.checks, s.failures, s.error, files, s.summary});
    doc.timing[s.name + "_ms"] = s.wall_ms;
  }
  return doc;
}

}  // namespace oppenheim::campaign
