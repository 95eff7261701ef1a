#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "oppenheim/exponents.hpp"
#include "oppenheim/numeric.hpp"
#include "oppenheim/solver.hpp"

namespace oppenheim::report {

using Json = nlohmann::ordered_json;

enum class Format { json, csv, text };
Format parse_format(const std::string& text);

inline constexpr const char* kCertificateSchema = "cert/1";

/// JSON number when |x| < 2^53, decimal string otherwise.
Json integer(const BigInt& x);
Json integer(int128 x);
/// Decimal string that reads back to the same Float50.
std::string decimal(const Float50& x);
Float50 parse_decimal(const std::string& text);
/// Reads a number or a decimal string written by integer().
BigInt read_integer(const Json& value);

/// A module result: scalar fields, an optional table, and timing kept apart so that
/// everything outside "timing" is deterministic.
struct Document {
  std::string schema;
  Json fields = Json::object();
  std::vector<std::string> columns;
  std::vector<std::vector<Json>> rows;
  Json timing = Json::object();
};

Json to_json(const Document& doc);
/// One CSV row per table row; without a table, the flattened fields form a single row.
std::string to_csv(const Document& doc);
std::string to_text(const Document& doc);
std::string emit(const Document& doc, Format format);

/// Flattens nested objects to dotted keys and joins scalar arrays with ';'.
std::vector<std::pair<std::string, std::string>> flatten(const Json& value);
/// Text form of a scalar cell, identical in CSV and text output.
std::string cell(const Json& value);
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

Json to_json(const BoundParameters& b);
BoundParameters bound_from_json(const Json& j);

Json to_json(const SolutionCertificate& cert);
SolutionCertificate certificate_from_json(const Json& j);
Document certificate_document(const SolutionCertificate& cert);

/// Signature tables for every d in [d_min, d_max]; columns follow the printed tables.
Document tables_document(int d_min, int d_max);

}  // namespace oppenheim::report
