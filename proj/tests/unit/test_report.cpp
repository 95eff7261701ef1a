#include "doctest.h"

#include <random>

#include "oppenheim/report.hpp"
#include "oppenheim/solver.hpp"

using namespace oppenheim;
using report::Json;

namespace {

SolutionCertificate certify(const char* coeffs, const char* eps) { return solve(parse_form(std::string(coeffs)), Coefficient::parse(eps)); }

void same_certificate(const SolutionCertificate& a, const SolutionCertificate& b) {
  CHECK(a.coeffs == b.coeffs);
  CHECK(a.epsilon == b.epsilon);
  CHECK(a.m == b.m);
  CHECK(a.q_value == b.q_value);
  CHECK(a.weighted_norm == b.weighted_norm);
  CHECK(a.within_theorem_bound == b.within_theorem_bound);
  CHECK(a.within_llcurly == b.within_llcurly);
  CHECK(a.method == b.method);
  CHECK(a.below_ee == b.below_ee);
  CHECK(a.stats.shells == b.stats.shells);
  CHECK(a.stats.nodes == b.stats.nodes);
  CHECK(a.stats.radius == b.stats.radius);
  CHECK(a.stats.fallback == b.stats.fallback);
  REQUIRE(a.bound.has_value() == b.bound.has_value());
  if (a.bound) {
    CHECK(a.bound->beta == b.bound->beta);
    CHECK(a.bound->log_shell_radius == b.bound->log_shell_radius);
    CHECK(a.bound->theorem_rhs == b.bound->theorem_rhs);
    CHECK(a.bound->C_d == b.bound->C_d);
  }
}

}  // namespace

TEST_SUITE("report") {

TEST_CASE("integers switch to strings at 2^53") {
  const BigInt top = BigInt(1) << 53;
  CHECK(report::integer(top - 1).is_number_integer());
  CHECK(report::integer(-(top - 1)).is_number_integer());
  CHECK(report::integer(top).is_string());
  CHECK(report::integer(-top).get<std::string>() == "-9007199254740992");
  const BigInt big = BigInt(1) << 100;
  CHECK(report::read_integer(report::integer(big)) == big);
  CHECK(report::read_integer(report::integer(BigInt(-12))) == -12);
  CHECK(report::integer(int128(1) << 70).is_string());
}

TEST_CASE("decimals read back exactly") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-30, 30);
  for (int i = 0; i < 200; ++i) {
    Float50 x = exp(Float50(u(rng))) / Float50(3) * (i % 2 ? 1 : -1);
    CHECK(report::parse_decimal(report::decimal(x)) == x);
  }
  CHECK(report::decimal(Float50(0)) == "0");
  CHECK_THROWS_AS(report::parse_decimal("1.5x"), std::invalid_argument);
}

TEST_CASE("certificates round trip through JSON text") {
  for (auto [coeffs, eps] : {std::pair{"1, 1, 1, 1, -2", "1/2"}, std::pair{"pi, e, -sqrt(7), 10, -exp(2)", "0.01"},
                             std::pair{"1, -1", "1/3"}, std::pair{"1/3, 2/7, -1, 5, -sqrt(2)", "1/4"}}) {
    CAPTURE(coeffs);
    SolutionCertificate cert = certify(coeffs, eps);
    std::string text = report::to_json(cert).dump(2);
    SolutionCertificate back = report::certificate_from_json(Json::parse(text));
    same_certificate(cert, back);
    CHECK(report::to_json(back).dump() == report::to_json(cert).dump());
    CHECK(report::to_json(report::certificate_document(cert)).dump() == report::to_json(cert).dump());
  }
}

TEST_CASE("a certificate without a bound keeps the nulls") {
  SolutionCertificate cert = certify("1, -1", "1/2");
  CHECK_FALSE(cert.bound.has_value());
  Json j = report::to_json(cert);
  CHECK(j["bound"].is_null());
  CHECK(j["within_theorem_bound"].is_null());
  same_certificate(cert, report::certificate_from_json(j));
}

TEST_CASE("foreign documents are not certificates") {
  Json j = report::to_json(report::tables_document(8, 8));
  CHECK_THROWS_AS(report::certificate_from_json(j), std::invalid_argument);
}

TEST_CASE("every document carries its schema first") {
  std::vector<report::Document> docs = {report::tables_document(7, 9), report::certificate_document(certify("2, -3", "2"))};
  report::Document empty;
  empty.schema = "empty/1";
  docs.push_back(empty);
  for (const auto& d : docs) {
    Json j = report::to_json(d);
    REQUIRE(j.begin() != j.end());
    CHECK(j.begin().key() == "schema");
    CHECK(j["schema"].get<std::string>().find('/') != std::string::npos);
    CHECK(report::to_text(d).rfind("schema: " + d.schema + "\n", 0) == 0);
  }
}

TEST_CASE("CSV and JSON carry the same table") {
  report::Document doc = report::tables_document(7, 12);
  Json j = report::to_json(doc);
  auto csv = report::parse_csv(report::to_csv(doc));
  REQUIRE(csv.size() == doc.rows.size() + 1);
  CHECK(csv[0] == doc.columns);
  for (std::size_t r = 0; r < doc.rows.size(); ++r)
    for (std::size_t c = 0; c < doc.columns.size(); ++c) {
      CHECK(csv[r + 1][c] == report::cell(j["rows"][r][doc.columns[c]]));
      CHECK(j["rows"][r][doc.columns[c]] == doc.rows[r][c]);
    }
}

TEST_CASE("CSV and JSON carry the same fields") {
  report::Document doc = report::certificate_document(certify("pi, e, -sqrt(7), 10, -exp(2)", "0.001"));
  Json j = report::to_json(doc);
  j.erase("timing");
  auto csv = report::parse_csv(report::to_csv(doc));
  REQUIRE(csv.size() == 2);
  std::map<std::string, std::string> from_csv;
  for (std::size_t c = 0; c < csv[0].size(); ++c) from_csv[csv[0][c]] = csv[1][c];
  auto flat = report::flatten(j);
  CHECK(from_csv.size() == flat.size());
  for (const auto& [k, v] : flat) CHECK(from_csv[k] == v);
  CHECK(from_csv.count("timing.wall_ms") == 0);
  CHECK(from_csv["m"] == "2;19;19;11;13");
}

TEST_CASE("CSV quoting survives commas, quotes and newlines") {
  report::Document doc;
  doc.schema = "quote/1";
  doc.columns = {"a", "b"};
  doc.rows = {{"x,y", "say \"hi\""}, {"line\nbreak", 3}};
  auto csv = report::parse_csv(report::to_csv(doc));
  REQUIRE(csv.size() == 3);
  CHECK(csv[1][0] == "x,y");
  CHECK(csv[1][1] == "say \"hi\"");
  CHECK(csv[2][0] == "line\nbreak");
  CHECK(csv[2][1] == "3");
}

TEST_CASE("formats") {
  CHECK(report::parse_format("csv") == report::Format::csv);
  CHECK_THROWS_AS(report::parse_format("xml"), std::invalid_argument);
  report::Document doc;
  doc.schema = "t/1";
  doc.fields["n"] = 1;
  doc.timing["ms"] = 2.5;
  CHECK(report::emit(doc, report::Format::json).find("\"timing\"") != std::string::npos);
  CHECK(report::emit(doc, report::Format::csv).find("timing") == std::string::npos);
}

}  // TEST_SUITE
