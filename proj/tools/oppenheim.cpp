// oppenheim: command-line front end for the library.
// Exit codes: 0 ok, 1 usage or invalid input, 2 certified empty, 3 suite or computational failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oppenheim/analysis/calibration.hpp"
#include "oppenheim/analysis/identity.hpp"
#include "oppenheim/analysis/kernel.hpp"
#include "oppenheim/analysis/moments.hpp"
#include "oppenheim/analysis/peak.hpp"
#include "oppenheim/analysis/weyl.hpp"
#include "oppenheim/campaign.hpp"
#include "oppenheim/dirichlet.hpp"
#include "oppenheim/exponents.hpp"
#include "oppenheim/rational.hpp"
#include "oppenheim/report.hpp"
#include "oppenheim/solver.hpp"

namespace {

using namespace oppenheim;
using report::Document;
using report::Json;

enum Exit { kOk = 0, kUsage = 1, kEmpty = 2, kFailure = 3 };

struct Global {
  std::string format = "json";
  CLI::Option* format_opt = nullptr;
  int precision = 0;  // 0: module default
  unsigned threads = 1;
  std::uint64_t seed = 1;

  report::Format output(report::Format fallback = report::Format::json) const {
    return format_opt->count() > 0 ? report::parse_format(format) : fallback;
  }
};

using Clock = std::chrono::steady_clock;
double ms_since(Clock::time_point start) { return std::chrono::duration<double, std::milli>(Clock::now() - start).count(); }

void print(const Document& doc, report::Format format) { std::cout << report::emit(doc, format); }

Json number(long double x) { return std::isfinite(x) ? Json(static_cast<double>(x)) : Json(nullptr); }

Json vector_json(const IntVector& m) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < m.size(); ++i) out.push_back(m[i]);
  return out;
}

std::vector<std::string> coeff_texts(const RealForm& form) {
  std::vector<std::string> out;
  for (Eigen::Index i = 0; i < form.dim(); ++i) out.push_back(form[i].text());
  return out;
}

// "lo:hi:n" with n >= 2 points, ends included.
std::vector<long double> parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
  if (parts.size() != 3) throw std::invalid_argument("grid must be lo:hi:n, got '" + text + "'");
  const long double lo = std::stold(parts[0]), hi = std::stold(parts[1]);
  const long n = std::stol(parts[2]);
  if (n < 2 || !(hi > lo)) throw std::invalid_argument("grid needs hi > lo and n >= 2");
  std::vector<long double> out;
  for (long i = 0; i < n; ++i) out.push_back(lo + (hi - lo) * i / (n - 1));
  return out;
}

IntegerForm integer_form(const RealForm& form) {
  auto ex = exact(form);
  auto in = ex ? to_integer(*ex) : std::nullopt;
  if (!in) throw std::invalid_argument("small zeros need integer coefficients, got " + to_string(form));
  return *in;
}

RealForm form_from_json(const Json& j) {
  if (j.is_string()) return parse_form(j.get<std::string>());
  if (!j.is_array()) throw std::invalid_argument("batch entries must be arrays or strings");
  std::vector<std::string> items;
  for (const auto& v : j) items.push_back(v.is_string() ? v.get<std::string>() : v.dump());
  return parse_form(items);
}

Json read_json_file(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot read " + path);
  return Json::parse(is);
}

// ---- beta, tables

void add_beta(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("beta", "Exponent beta(r, s) and its lower bound");
  auto r = std::make_shared<int>(0), s = std::make_shared<int>(0), d = std::make_shared<int>(0);
  auto* r_opt = sub->add_option("--r", *r, "Positive coefficients");
  auto* s_opt = sub->add_option("--s", *s, "Negative coefficients");
  auto* d_opt = sub->add_option("--d", *d, "List every signature with r >= s of this dimension");
  r_opt->needs(s_opt);
  s_opt->needs(r_opt);
  d_opt->excludes(r_opt)->excludes(s_opt);
  sub->callback([&, r, s, d, r_opt, d_opt] {
    action = [&, r, s, d, r_opt, d_opt] {
      if (!r_opt->count() && !d_opt->count()) throw CLI::ValidationError("beta needs --r and --s, or --d");
      Document doc;
      doc.schema = "beta/1";
      if (r_opt->count()) {
        const int dim = *r + *s;
        Rational b = beta(*r, *s), low = beta_lower_bound(dim);
        doc.fields["r"] = *r;
        doc.fields["s"] = *s;
        doc.fields["d"] = dim;
        doc.fields["beta"] = to_string(b);
        doc.fields["two_beta"] = to_string(2 * b);
        doc.fields["beta_lower_bound"] = to_string(low);
        doc.fields["above_lower_bound"] = b >= low;
      } else {
        doc.fields["d"] = *d;
        doc.fields["beta_lower_bound"] = to_string(beta_lower_bound(*d));
        doc.columns = {"r", "s", "beta", "two_beta", "defined"};
        for (int rr = (*d + 1) / 2; rr < *d; ++rr) {
          try {
            Rational v = beta(rr, *d - rr);
            doc.rows.push_back({rr, *d - rr, to_string(v), to_string(2 * v), true});
          } catch (const std::domain_error&) {
            doc.rows.push_back({rr, *d - rr, nullptr, nullptr, false});
          }
        }
      }
      print(doc, g.output());
      return kOk;
    };
  });
}

void add_tables(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("tables", "Signature tables: 2beta, restricted signatures, 2beta_k and p_k");
  auto lo = std::make_shared<int>(7), hi = std::make_shared<int>(20);
  sub->add_option("--d-min", *lo, "Smallest dimension")->capture_default_str();
  sub->add_option("--d-max", *hi, "Largest dimension")->capture_default_str();
  sub->callback([&, lo, hi] {
    action = [&, lo, hi] {
      print(report::tables_document(*lo, *hi), g.output());
      return kOk;
    };
  });
}

// ---- smallzeros

struct ZeroResult {
  std::optional<IsotropicWitness> witness;
  std::optional<Rational> exponent;
  std::optional<long double> bound_base;
  std::int64_t budget = 0;
  double elapsed_ms = 0;
};

ZeroResult small_zero(const IntegerForm& form, std::optional<std::int64_t> budget) {
  ZeroResult out;
  const auto start = Clock::now();
  if (!budget) {
    SchlickeweiCheck c = verify_schlickewei(form);
    out.witness = c.witness;
    out.exponent = c.exponent;
    out.bound_base = c.bound_base;
    out.budget = c.budget;
  } else {
    if (*budget < 1) throw std::domain_error("budget must be positive");
    out.budget = *budget;
    out.witness = min_isotropic(form, *budget);
    const Signature sig = form.signature();
    if (form.dim() >= 5 && sig.t == 0) {
      try {
        out.exponent = (2 * beta(sig.r, sig.s) + 1) / Rational(form.dim());
      } catch (const std::domain_error&) {
      }
      if (out.exponent) {
        Float50 e = Float50(mp::numerator(*out.exponent)) / Float50(mp::denominator(*out.exponent));
        out.bound_base = to_long_double(exp(e * log(Float50(extremes(form).detQ))));
      }
    }
  }
  out.elapsed_ms = ms_since(start);
  return out;
}

std::vector<Json> zero_row(const std::vector<std::string>& coeffs, const ZeroResult& z) {
  Json witness = nullptr, norm = nullptr, ratio = nullptr;
  if (z.witness) {
    witness = vector_json(z.witness->m);
    norm = report::integer(z.witness->weighted_norm);
    if (z.bound_base) ratio = number(static_cast<long double>(z.witness->weighted_norm) / *z.bound_base);
  }
  return {coeffs, witness, norm, z.exponent ? Json(to_string(*z.exponent)) : Json(nullptr),
          z.bound_base ? number(*z.bound_base) : Json(nullptr), ratio, z.budget};
}

void add_smallzeros(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("smallzeros", "Least isotropic vector of an integer diagonal form");
  auto coeffs = std::make_shared<std::string>();
  auto budget = std::make_shared<std::int64_t>(0);
  auto batch = std::make_shared<std::string>();
  auto* c_opt = sub->add_option("--coeffs", *coeffs, "Integer coefficients, comma separated");
  auto* b_opt = sub->add_option("--budget", *budget, "Search only weighted norms up to N (default: doubling from 64 |det|^((2beta+1)/d))");
  auto* f_opt = sub->add_option("--batch", *batch, "JSON file with an array of coefficient lists")->check(CLI::ExistingFile);
  c_opt->excludes(f_opt);
  sub->callback([&, coeffs, budget, batch, c_opt, b_opt, f_opt] {
    action = [&, coeffs, budget, batch, c_opt, b_opt, f_opt]() -> int {
      std::optional<std::int64_t> cap;
      if (b_opt->count()) cap = *budget;
      const std::vector<std::string> cols = {"coeffs", "witness", "norm", "exponent", "bound_base", "ratio", "budget"};
      if (c_opt->count()) {
        IntegerForm f = integer_form(parse_form(*coeffs));
        ZeroResult z = small_zero(f, cap);
        std::vector<Json> row = zero_row(coeff_texts(to_real(f)), z);
        Document doc;
        doc.schema = "smallzeros/1";
        for (std::size_t i = 0; i < cols.size(); ++i) doc.fields[cols[i]] = row[i];
        doc.timing["elapsed_ms"] = z.elapsed_ms;
        print(doc, g.output());
        return z.witness ? kOk : kEmpty;
      }
      if (!f_opt->count()) throw CLI::ValidationError("smallzeros needs --coeffs or --batch");
      Json list = read_json_file(*batch);
      if (!list.is_array()) throw std::invalid_argument("batch file must hold a JSON array");
      std::vector<IntegerForm> forms;
      for (const auto& item : list) forms.push_back(integer_form(form_from_json(item)));
      std::vector<ZeroResult> results(forms.size());
      std::vector<std::string> errors(forms.size());
      const auto start = Clock::now();
      analysis::parallel_for(forms.size(), g.threads, [&](std::size_t i) {
        try {
          results[i] = small_zero(forms[i], cap);
        } catch (const std::exception& e) {
          errors[i] = e.what();
        }
      });
      Document doc;
      doc.schema = "smallzeros-batch/1";
      doc.fields["instances"] = forms.size();
      doc.columns = cols;
      doc.columns.push_back("error");
      bool all = true, failed = false;
      for (std::size_t i = 0; i < forms.size(); ++i) {
        std::vector<Json> row = zero_row(coeff_texts(to_real(forms[i])), results[i]);
        row.push_back(errors[i].empty() ? Json(nullptr) : Json(errors[i]));
        doc.rows.push_back(row);
        all = all && results[i].witness.has_value();
        failed = failed || !errors[i].empty();
      }
      doc.timing["elapsed_ms"] = ms_since(start);
      print(doc, g.output());
      return failed ? kFailure : all ? kOk : kEmpty;
    };
  });
}

// ---- solve, verify

SolveMethod parse_method(const std::string& text) {
  if (text == "auto") return SolveMethod::automatic;
  if (text == "shell") return SolveMethod::shell;
  if (text == "rational") return SolveMethod::rational;
  throw std::invalid_argument("unknown method '" + text + "'");
}

void add_solve(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("solve", "Least nonzero m with |Q[m]| < epsilon, with a certificate");
  struct Args {
    std::string coeffs, epsilon, method = "auto", cd = "1", out;
    long double budget = 1e6L;
    std::int64_t denominator = 1000000;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--coeffs", a->coeffs, "Coefficients: numbers, p/q or expressions such as sqrt(2), comma separated")->required();
  sub->add_option("--epsilon", a->epsilon, "Positive threshold")->required();
  sub->add_option("--budget", a->budget, "Largest weighted norm searched")->capture_default_str();
  sub->add_option("--method", a->method, "auto, shell or rational")->check(CLI::IsMember({"auto", "shell", "rational"}))->capture_default_str();
  sub->add_option("--cd", a->cd, "Constant C_d used for the theorem bound")->capture_default_str();
  sub->add_option("--denominator", a->denominator, "Common denominator of the rational reduction")->capture_default_str();
  sub->add_option("--out", a->out, "Also write the certificate to this file");
  sub->callback([&, a] {
    action = [&, a]() -> int {
      RealForm form = parse_form(a->coeffs);
      Coefficient eps = Coefficient::parse(a->epsilon);
      SolveOptions opt;
      opt.budget = a->budget;
      opt.method = parse_method(a->method);
      opt.C_d = report::parse_decimal(a->cd);
      opt.denominator = a->denominator;
      try {
        SolutionCertificate cert = solve(form, eps, opt);
        Document doc = report::certificate_document(cert);
        if (!a->out.empty()) {
          std::ofstream os(a->out);
          os << report::to_json(doc).dump(2) << "\n";
          if (!os) throw std::runtime_error("cannot write " + a->out);
        }
        print(doc, g.output());
        return kOk;
      } catch (const CertifiedEmpty& e) {
        Document doc;
        doc.schema = "cert-empty/1";
        doc.fields["coeffs"] = coeff_texts(form);
        doc.fields["epsilon"] = eps.text();
        doc.fields["radius"] = number(e.radius);
        doc.fields["message"] = e.what();
        doc.fields["search_stats"] = {{"shells", e.stats.shells}, {"nodes", e.stats.nodes}, {"pairs", e.stats.pairs},
                                      {"undecided", e.stats.undecided}, {"fallback", e.stats.fallback}};
        doc.timing["wall_ms"] = e.stats.wall_ms;
        print(doc, g.output());
        return kEmpty;
      }
    };
  });
}

void add_verify(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("verify", "Re-check a solver certificate at high precision");
  auto path = std::make_shared<std::string>();
  auto cd = std::make_shared<std::string>("1");
  sub->add_option("certificate", *path, "Certificate file written by solve")->required()->check(CLI::ExistingFile);
  sub->add_option("--cd", *cd, "Constant C_d used for the theorem bound")->capture_default_str();
  sub->callback([&, path, cd] {
    action = [&, path, cd]() -> int {
      SolutionCertificate cert = report::certificate_from_json(read_json_file(*path));
      RealForm form = parse_form(cert.coeffs);
      Coefficient eps = Coefficient::parse(cert.epsilon);
      const auto start = Clock::now();
      Verification v = verify_certificate(cert, form, eps, report::parse_decimal(*cd), g.precision > 0 ? g.precision : 256);
      Document doc;
      doc.schema = "verify/1";
      doc.fields["valid"] = v.valid;
      doc.fields["indeterminate"] = v.indeterminate;
      doc.fields["bits"] = v.bits;
      doc.fields["issues"] = v.issues;
      doc.timing["elapsed_ms"] = ms_since(start);
      print(doc, g.output());
      return v.valid ? kOk : kFailure;
    };
  });
}

// ---- approx, dichotomy

void add_approx(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("approx", "Dirichlet pair: coprime x/y, y <= N, |theta - x/y| < 1/(y N)");
  auto theta = std::make_shared<std::string>();
  auto n = std::make_shared<std::int64_t>(0);
  sub->add_option("--theta", *theta, "Real number or expression")->required();
  sub->add_option("--n", *n, "Denominator bound N >= 1")->required();
  sub->callback([&, theta, n] {
    action = [&, theta, n] {
      Coefficient t = Coefficient::parse(*theta);
      ApproximationPair p = dirichlet_pair(t, *n);
      Document doc;
      doc.schema = "approx/1";
      doc.fields["theta"] = t.text();
      if (g.precision > 0) doc.fields["theta_enclosure"] = t.enclose(g.precision).str(static_cast<int>(g.precision * 0.30103) + 1);
      doc.fields["N"] = std::to_string(p.bound_N);
      doc.fields["x"] = std::to_string(p.x);
      doc.fields["y"] = std::to_string(p.y);
      doc.fields["rho"] = number(p.rho);
      doc.fields["exact"] = p.exact;
      doc.fields["certified"] = check_pair(t, p);
      print(doc, g.output());
      return kOk;
    };
  });
}

void add_dichotomy(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("dichotomy", "All (x, y) with 0 < |x| < X and |theta x - y| < eta");
  auto theta = std::make_shared<std::string>(), eta = std::make_shared<std::string>(), x = std::make_shared<std::string>();
  sub->add_option("--theta", *theta, "Real number or expression")->required();
  sub->add_option("--eta", *eta, "Positive width")->required();
  sub->add_option("--x-max", *x, "Bound X on |x|")->required();
  sub->callback([&, theta, eta, x] {
    action = [&, theta, eta, x] {
      ApproximantCount c = count_approximants(Coefficient::parse(*theta), Coefficient::parse(*eta), Coefficient::parse(*x));
      Document doc;
      doc.schema = "dichotomy/1";
      doc.fields["theta"] = *theta;
      doc.fields["eta"] = *eta;
      doc.fields["x_max"] = *x;
      doc.fields["count"] = std::to_string(c.count);
      doc.fields["threshold"] = number(c.threshold);
      doc.fields["all_same_ratio"] = c.all_same_ratio;
      doc.fields["dichotomy"] = c.dichotomy;
      doc.columns = {"x", "y"};
      for (const auto& [px, py] : c.pairs) doc.rows.push_back({std::to_string(px), std::to_string(py)});
      print(doc, g.output());
      return kOk;
    };
  });
}

// ---- weyl, kernel, moments, identity

Json complex_json(const analysis::Complex& z) { return {{"re", z.real()}, {"im", z.imag()}, {"abs", std::abs(z)}}; }

void add_weyl(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("weyl", "Weyl sums S_j(alpha) over P < |q_j|^(1/2) m < 2dP");
  struct Args {
    std::string coeffs, grid;
    long double P = 0, alpha = 0;
    std::size_t scan = 0;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--coeffs", a->coeffs, "Coefficients q_j, comma separated")->required();
  sub->add_option("--p", a->P, "Scale P")->required();
  auto* alpha = sub->add_option("--alpha", a->alpha, "Single frequency");
  auto* grid = sub->add_option("--alpha-grid", a->grid, "Frequencies lo:hi:n, emitted as CSV unless --format is given");
  alpha->excludes(grid);
  sub->add_option("--vdc-scan", a->scan, "Also run a seeded van der Corput scan with this many samples (P_max = --p)");
  sub->callback([&, a, alpha, grid] {
    action = [&, a, alpha, grid]() -> int {
      if (!alpha->count() && !grid->count()) throw CLI::ValidationError("weyl needs --alpha or --alpha-grid");
      const FloatForm f = approximate(parse_form(a->coeffs));
      const int d = static_cast<int>(f.dim());
      const long double P = a->P;
      Document doc;
      doc.schema = "weyl/1";
      doc.fields["coeffs"] = coeff_texts(parse_form(a->coeffs));
      doc.fields["P"] = number(P);
      doc.fields["d"] = d;
      if (a->scan > 0) {
        analysis::ScanMaximum s = analysis::vdc_scan(g.seed, a->scan, d, P, g.threads);
        doc.fields["vdc_scan"] = {{"seed", g.seed}, {"samples", s.samples}, {"max_residual", s.value}, {"q", number(s.q)},
                                  {"alpha", number(s.alpha)}, {"P", number(s.P)}, {"calibration", analysis::calibration::vdc_residual}};
      }
      if (alpha->count()) {
        doc.fields["alpha"] = number(a->alpha);
        doc.fields["product"] = complex_json(analysis::weyl_product(f, a->alpha, P));
        doc.fields["integral"] = complex_json(analysis::oscillatory_integral(a->alpha, P, d));
        doc.columns = {"j", "q", "lo", "hi", "re", "im", "abs", "N", "x", "y", "rho", "bound_ratio", "vdc_residual"};
        for (int j = 0; j < d; ++j) {
          const long double q = f[j];
          analysis::WeylRange r = analysis::weyl_range(q, P, d);
          analysis::Complex S = analysis::weyl_sum(q, a->alpha, P, d);
          std::int64_t N = analysis::approximation_bound(q, P, d);
          Json pair_x = nullptr, pair_y = nullptr, rho = nullptr, ratio = nullptr, residual = nullptr;
          if (N >= 1) {
            ApproximationPair p = dirichlet_pair(q * a->alpha, N);
            pair_x = std::to_string(p.x);
            pair_y = std::to_string(p.y);
            rho = number(p.rho);
            if (P > 1) ratio = analysis::weyl_bound_ratio(q, a->alpha, P, d, p);
          }
          if (a->alpha > 0 && a->alpha < analysis::vdc_limit(q, P, d)) residual = analysis::vdc_residual(q, a->alpha, P, d);
          doc.rows.push_back({j + 1, number(q), r.lo, r.hi, S.real(), S.imag(), std::abs(S), N, pair_x, pair_y, rho, ratio, residual});
        }
        print(doc, g.output());
        return kOk;
      }
      doc.columns = {"alpha", "re", "im", "abs", "integral_abs", "envelope_ratio"};
      for (long double al : parse_grid(a->grid)) {
        analysis::Complex S = analysis::weyl_product(f, al, P);
        Json env = al != 0 ? Json(analysis::envelope_ratio(al, P, d)) : Json(nullptr);
        doc.rows.push_back({number(al), S.real(), S.imag(), std::abs(S), std::abs(analysis::oscillatory_integral(al, P, d)), env});
      }
      print(doc, g.output(report::Format::csv));
      return kOk;
    };
  });
}

void add_kernel(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("kernel", "Smoothing kernel: hat(alpha) on a grid, or psi(x) with --psi");
  struct Args {
    long double alpha_max = 10;
    std::size_t grid = 101;
    bool psi = false;
    long double tolerance = 0.05L;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--alpha-max", a->alpha_max, "Grid covers [0, alpha-max]")->capture_default_str();
  sub->add_option("--grid", a->grid, "Number of grid points")->check(CLI::Range(std::size_t{2}, std::size_t{10000000}))->capture_default_str();
  sub->add_flag("--psi", a->psi, "Tabulate psi on [-alpha-max, alpha-max] instead");
  sub->add_option("--tolerance", a->tolerance, "Truncation tolerance of the product")->capture_default_str();
  sub->callback([&, a] {
    action = [&, a] {
      if (!(a->alpha_max > 0)) throw std::domain_error("--alpha-max must be positive");
      analysis::KernelSpec k = analysis::ingham_kernel(a->tolerance);
      Document doc;
      doc.schema = "kernel/1";
      doc.fields["normalizer"] = number(k.normalizer());
      doc.fields["mass_bracket"] = {number(k.mass_bracket().first), number(k.mass_bracket().second)};
      doc.fields["support_radius"] = number(k.support_radius());
      doc.fields["delta"] = number(k.delta());
      const std::size_t n = a->grid;
      if (a->psi) {
        doc.columns = {"x", "psi"};
        for (std::size_t i = 0; i < n; ++i) {
          long double x = -a->alpha_max + 2 * a->alpha_max * i / (n - 1);
          doc.rows.push_back({number(x), number(k.psi(x))});
        }
      } else {
        doc.columns = {"alpha", "hat", "remainder_bound", "envelope"};
        for (std::size_t i = 0; i < n; ++i) {
          long double al = a->alpha_max * i / (n - 1);
          analysis::HatValue h = k.hat_with_bound(al);
          doc.rows.push_back({number(al), number(h.value), number(h.remainder_bound), number(k.envelope(al))});
        }
      }
      print(doc, g.output(report::Format::csv));
      return kOk;
    };
  });
}

void add_moments(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("moments", "Second moment of r2 and fourth moment counts");
  auto n = std::make_shared<std::int64_t>(0);
  auto range = std::make_shared<std::vector<std::int64_t>>();
  sub->add_option("--n", *n, "N for sum_{k <= N} r2(k)^2")->required()->check(CLI::PositiveNumber);
  sub->add_option("--range", *range, "Also compare the fourth moment count with its integral on [lo, hi]")->expected(2);
  sub->callback([&, n, range] {
    action = [&, n, range] {
      Document doc;
      doc.schema = "moments/1";
      const std::int64_t m = analysis::r2_moment(*n);
      doc.fields["N"] = *n;
      doc.fields["r2_moment"] = report::integer(BigInt(m));
      doc.fields["growth_ratio"] = *n > 1 ? Json(analysis::r2_growth_ratio(*n)) : Json(nullptr);
      doc.fields["growth_calibration"] = analysis::calibration::r2_growth;
      if (range->size() == 2) {
        const std::int64_t c = analysis::fourth_moment_count((*range)[0], (*range)[1]);
        const double integral = analysis::fourth_moment_integral((*range)[0], (*range)[1]);
        doc.fields["fourth_moment"] = {{"lo", (*range)[0]},
                                       {"hi", (*range)[1]},
                                       {"count", report::integer(BigInt(c))},
                                       {"integral", integral},
                                       {"relative_difference", c != 0 ? std::fabs(integral - c) / c : std::fabs(integral)}};
      }
      print(doc, g.output());
      return kOk;
    };
  });
}

void add_identity(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("identity", "Both sides of the smoothed counting identity on the lattice box");
  struct Args {
    std::string coeffs;
    long double P = 0;
    long double tolerance = 1e-6L;
    bool decompose = false;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--coeffs", a->coeffs, "Coefficients q_j, comma separated")->required();
  sub->add_option("--p", a->P, "Scale P")->required();
  sub->add_option("--tolerance", a->tolerance, "Truncation tolerance of the integral")->capture_default_str();
  sub->add_flag("--decompose", a->decompose, "Also split the integral into its four ranges");
  sub->callback([&, a] {
    action = [&, a] {
      const RealForm form = parse_form(a->coeffs);
      const FloatForm f = approximate(form);
      const analysis::KernelSpec k = analysis::ingham_kernel();
      const auto start = Clock::now();
      analysis::IdentityOptions opt;
      opt.quad_tolerance = a->tolerance;
      analysis::IdentityResult r = analysis::smoothed_count_identity(f, a->P, k, opt);
      Document doc;
      doc.schema = "identity/1";
      doc.fields["coeffs"] = coeff_texts(form);
      doc.fields["P"] = number(a->P);
      doc.fields["lhs"] = number(r.lhs);
      doc.fields["rhs"] = number(r.rhs);
      doc.fields["difference"] = number(r.difference());
      doc.fields["box_sum"] = number(r.box_sum);
      doc.fields["box_points"] = number(r.box_points);
      doc.fields["support_points"] = r.support_points;
      doc.fields["value_bound"] = number(r.value_bound);
      doc.fields["truncation"] = number(r.truncation);
      doc.fields["step"] = number(r.step);
      doc.fields["nodes"] = r.nodes;
      doc.fields["tail_bound"] = number(r.tail_bound);
      if (a->decompose) {
        analysis::IntegralDecomposition D = analysis::integral_decomposition(f, a->P, k, a->tolerance);
        Json ranges = Json::array();
        for (const auto& rc : D.ranges)
          ranges.push_back({{"lo", number(rc.lo)}, {"hi", number(rc.hi)}, {"real_part", number(rc.real_part)}, {"absolute", number(rc.absolute)}});
        doc.fields["decomposition"] = {{"cuts", {number(D.cuts[0]), number(D.cuts[1]), number(D.cuts[2])}},
                                       {"ranges", ranges},
                                       {"M1", number(D.M1)},
                                       {"M1_lower", number(D.M1_lower)},
                                       {"R1", number(D.R1)},
                                       {"R2", number(D.R2)},
                                       {"M2", number(D.M2)},
                                       {"R3", number(D.R3)},
                                       {"total_real", number(D.total_real)}};
      }
      doc.timing["elapsed_ms"] = ms_since(start);
      print(doc, g.output());
      return kOk;
    };
  });
}

// ---- campaign

void add_campaign(CLI::App& app, Global& g, std::function<int()>& action) {
  auto* sub = app.add_subcommand("campaign", "Run verification suites and write per-suite reports plus a summary");
  struct Args {
    std::string config, output_dir;
    std::vector<std::string> suites;
  };
  auto a = std::make_shared<Args>();
  sub->add_option("--config", a->config, "JSON configuration file")->check(CLI::ExistingFile);
  auto* suites = sub->add_option("--suites", a->suites, "Suites to run: tables smallzeros gauss dichotomy kernel moments solver")->delimiter(',');
  auto* out = sub->add_option("--output-dir", a->output_dir, "Directory for the report files");
  auto* seed = app.get_option("--seed");
  auto* threads = app.get_option("--threads");
  sub->callback([&, a, suites, out, seed, threads] {
    action = [&, a, suites, out, seed, threads]() -> int {
      campaign::CampaignConfig c = a->config.empty() ? campaign::CampaignConfig{} : campaign::load_config(a->config);
      campaign::apply_environment(c);
      if (suites->count()) {
        std::erase(a->suites, std::string{});
        for (const auto& s : a->suites)
          if (std::find(campaign::known_suites().begin(), campaign::known_suites().end(), s) == campaign::known_suites().end())
            throw std::invalid_argument("unknown suite '" + s + "'");
        c.suites = a->suites;
      }
      if (out->count()) c.output_dir = a->output_dir;
      if (seed->count()) c.seed = g.seed;
      if (threads->count()) c.threads = g.threads;
      if (g.format_opt->count()) c.format = report::parse_format(g.format);
      campaign::CampaignReport r = campaign::run_campaign(c);
      print(campaign::summary_document(r), c.format);
      return r.passed() ? kOk : kFailure;
    };
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantitative Oppenheim toolkit: exponents, small zeros, Diophantine inequalities and circle-method checks"};
  app.name("oppenheim");
  app.require_subcommand(1);
  app.fallthrough();

  Global g;
  g.format_opt = app.add_option("--format", g.format, "Output format: json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--precision", g.precision, "Starting MPFR precision in bits for certified checks")->check(CLI::Range(64, 65536));
  app.add_option("--threads", g.threads, "Worker threads")->check(CLI::Range(1u, 1024u))->capture_default_str();
  app.add_option("--seed", g.seed, "Seed for randomized runs")->capture_default_str();

  std::function<int()> action;
  add_beta(app, g, action);
  add_tables(app, g, action);
  add_smallzeros(app, g, action);
  add_solve(app, g, action);
  add_approx(app, g, action);
  add_dichotomy(app, g, action);
  add_weyl(app, g, action);
  add_kernel(app, g, action);
  add_moments(app, g, action);
  add_identity(app, g, action);
  add_verify(app, g, action);
  add_campaign(app, g, action);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    return action ? action() : kUsage;
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const CertifiedEmpty& e) {
    std::cerr << "certified empty: " << e.what() << "\n";
    return kEmpty;
  } catch (const SearchExhausted& e) {
    std::cerr << "certified empty: " << e.what() << "\n";
    return kEmpty;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kFailure;
  }
}
