#include "oppenheim/report.hpp"

#include <algorithm>
#include <iomanip>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace oppenheim::report {

namespace {

const BigInt kExactDouble = BigInt(1) << 53;

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) out += (i ? sep : "") + items[i];
  return out;
}

std::string quote_csv(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += c == '"' ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

void flatten_into(const std::string& prefix, const Json& value, std::vector<std::pair<std::string, std::string>>& out) {
  if (value.is_object()) {
    for (const auto& [k, v] : value.items()) flatten_into(prefix.empty() ? k : prefix + "." + k, v, out);
    return;
  }
  if (value.is_array()) {
    bool scalar = true;
    for (const auto& v : value) scalar = scalar && !v.is_structured();
    if (!scalar) {
      for (std::size_t i = 0; i < value.size(); ++i) flatten_into(prefix + "." + std::to_string(i), value[i], out);
      return;
    }
    out.emplace_back(prefix, cell(value));
    return;
  }
  out.emplace_back(prefix, cell(value));
}

std::string signature_list(const std::vector<RestrictedSignature>& sigs) {
  std::vector<std::string> items;
  for (const auto& s : sigs) items.push_back("(" + std::to_string(s.r) + "," + std::to_string(s.s) + ")");
  return join(items, " ");
}

Json optional_rational(const std::optional<Rational>& x) { return x ? Json(to_string(*x)) : Json(nullptr); }

}  // namespace

Format parse_format(const std::string& text) {
  if (text == "json") return Format::json;
  if (text == "csv") return Format::csv;
  if (text == "text") return Format::text;
  throw std::invalid_argument("unknown format '" + text + "' (json, csv or text)");
}

Json integer(const BigInt& x) {
  if (mp::abs(x) < kExactDouble) return Json(static_cast<std::int64_t>(x));
  return Json(to_string(x));
}

Json integer(int128 x) { return integer(BigInt(x)); }

std::string decimal(const Float50& x) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<Float50>::max_digits10) << x;
  return os.str();
}

Float50 parse_decimal(const std::string& text) {
  try {
    return Float50(text);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("not a decimal number: '" + text + "'");
  }
}

BigInt read_integer(const Json& value) {
  if (value.is_string()) {
    try {
      return BigInt(value.get<std::string>());
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("not an integer: " + value.dump());
    }
  }
  if (value.is_number_integer()) return BigInt(value.get<std::int64_t>());
  throw std::invalid_argument("expected an integer, got " + value.dump());
}

std::string cell(const Json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_null()) return "";
  if (value.is_array() && std::none_of(value.begin(), value.end(), [](const Json& v) { return v.is_structured(); })) {
    std::vector<std::string> items;
    for (const auto& v : value) items.push_back(cell(v));
    return join(items, ";");
  }
  return value.dump();
}

std::vector<std::pair<std::string, std::string>> flatten(const Json& value) {
  std::vector<std::pair<std::string, std::string>> out;
  flatten_into("", value, out);
  return out;
}

Json to_json(const Document& doc) {
  Json j;
  j["schema"] = doc.schema;
  for (const auto& [k, v] : doc.fields.items()) j[k] = v;
  if (!doc.columns.empty()) {
    Json rows = Json::array();
    for (const auto& row : doc.rows) {
      Json r = Json::object();
      for (std::size_t c = 0; c < doc.columns.size(); ++c) r[doc.columns[c]] = row.at(c);
      rows.push_back(std::move(r));
    }
    j["rows"] = std::move(rows);
  }
  if (!doc.timing.empty()) j["timing"] = doc.timing;
  return j;
}

std::string to_csv(const Document& doc) {
  std::ostringstream os;
  if (!doc.columns.empty()) {
    std::vector<std::string> head;
    for (const auto& c : doc.columns) head.push_back(quote_csv(c));
    os << join(head, ",") << "\n";
    for (const auto& row : doc.rows) {
      std::vector<std::string> cells;
      for (const auto& v : row) cells.push_back(quote_csv(cell(v)));
      os << join(cells, ",") << "\n";
    }
    return os.str();
  }
  Json all = doc.fields;
  all["schema"] = doc.schema;
  std::vector<std::string> head, cells;
  for (const auto& [k, v] : flatten(all)) {
    head.push_back(quote_csv(k));
    cells.push_back(quote_csv(v));
  }
  os << join(head, ",") << "\n" << join(cells, ",") << "\n";
  return os.str();
}

std::string to_text(const Document& doc) {
  std::ostringstream os;
  os << "schema: " << doc.schema << "\n";
  for (const auto& [k, v] : flatten(doc.fields)) os << k << ": " << v << "\n";
  if (!doc.columns.empty()) {
    std::vector<std::size_t> width(doc.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t c = 0; c < doc.columns.size(); ++c) width[c] = doc.columns[c].size();
    for (const auto& row : doc.rows) {
      std::vector<std::string> t;
      for (std::size_t c = 0; c < row.size(); ++c) {
        t.push_back(cell(row[c]));
        width[c] = std::max(width[c], t.back().size());
      }
      text.push_back(std::move(t));
    }
    auto line = [&](const std::vector<std::string>& items) {
      for (std::size_t c = 0; c < items.size(); ++c) os << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << items[c];
      os << "\n";
    };
    line(doc.columns);
    for (const auto& t : text) line(t);
  }
  for (const auto& [k, v] : flatten(doc.timing)) os << "timing." << k << ": " << v << "\n";
  return os.str();
}

std::string emit(const Document& doc, Format format) {
  switch (format) {
    case Format::json:
      return to_json(doc).dump(2) + "\n";
    case Format::csv:
      return to_csv(doc);
    case Format::text:
      return to_text(doc);
  }
  return {};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::vector<std::string> row;
  std::string cur;
  bool quoted = false, any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    char c = text[i];
    if (quoted) {
      if (c == '"' && i + 1 < text.size() && text[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
      continue;
    }
    any = true;
    if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      row.push_back(cur);
      cur.clear();
    } else if (c == '\n') {
      row.push_back(cur);
      out.push_back(row);
      row.clear();
      cur.clear();
      any = false;
    } else {
      cur += c;
    }
  }
  if (any) {
    row.push_back(cur);
    out.push_back(row);
  }
  return out;
}

Json to_json(const BoundParameters& b) {
  Json j;
  j["d"] = b.d;
  j["beta"] = to_string(b.beta);
  j["C_d"] = decimal(b.C_d);
  j["q"] = decimal(b.q);
  j["log_H"] = decimal(b.log_H);
  j["H"] = decimal(b.H);
  j["log_P"] = decimal(b.log_P);
  j["P"] = decimal(b.P);
  j["log_shell_radius"] = decimal(b.log_shell_radius);
  j["shell_radius"] = decimal(b.shell_radius);
  j["log_B"] = decimal(b.log_B);
  j["llcurly_exponent"] = decimal(b.llcurly_exponent);
  j["log_theorem_rhs"] = decimal(b.log_theorem_rhs);
  j["theorem_rhs"] = decimal(b.theorem_rhs);
  return j;
}

BoundParameters bound_from_json(const Json& j) {
  BoundParameters b;
  b.d = j.at("d").get<int>();
  b.beta = parse_rational(j.at("beta").get<std::string>());
  auto f = [&](const char* key) { return parse_decimal(j.at(key).get<std::string>()); };
  b.C_d = f("C_d");
  b.q = f("q");
  b.log_H = f("log_H");
  b.H = f("H");
  b.log_P = f("log_P");
  b.P = f("P");
  b.log_shell_radius = f("log_shell_radius");
  b.shell_radius = f("shell_radius");
  b.log_B = f("log_B");
  b.llcurly_exponent = f("llcurly_exponent");
  b.log_theorem_rhs = f("log_theorem_rhs");
  b.theorem_rhs = f("theorem_rhs");
  return b;
}

Json to_json(const SolutionCertificate& cert) {
  Json j;
  j["schema"] = kCertificateSchema;
  j["coeffs"] = cert.coeffs;
  j["epsilon"] = cert.epsilon;
  Json m = Json::array();
  for (Eigen::Index i = 0; i < cert.m.size(); ++i) m.push_back(integer(BigInt(cert.m[i])));
  j["m"] = std::move(m);
  j["q_value"] = decimal(cert.q_value);
  j["weighted_norm"] = decimal(cert.weighted_norm);
  j["bound"] = cert.bound ? to_json(*cert.bound) : Json(nullptr);
  j["within_theorem_bound"] = cert.within_theorem_bound ? Json(*cert.within_theorem_bound) : Json(nullptr);
  j["within_llcurly"] = cert.within_llcurly ? Json(*cert.within_llcurly) : Json(nullptr);
  j["method"] = to_string(cert.method);
  j["below_ee"] = cert.below_ee;
  j["search_stats"] = {{"shells", cert.stats.shells},
                       {"nodes", cert.stats.nodes},
                       {"pairs", cert.stats.pairs},
                       {"undecided", cert.stats.undecided},
                       {"radius", cert.stats.radius},
                       {"fallback", cert.stats.fallback}};
  j["timing"] = {{"wall_ms", cert.stats.wall_ms}};
  return j;
}

SolutionCertificate certificate_from_json(const Json& j) {
  if (j.value("schema", "") != kCertificateSchema) throw std::invalid_argument("not a " + std::string(kCertificateSchema) + " document");
  SolutionCertificate c;
  c.coeffs = j.at("coeffs").get<std::vector<std::string>>();
  c.epsilon = j.at("epsilon").get<std::string>();
  const Json& m = j.at("m");
  c.m.resize(static_cast<Eigen::Index>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) c.m[static_cast<Eigen::Index>(i)] = to_int64(read_integer(m[i]));
  c.q_value = parse_decimal(j.at("q_value").get<std::string>());
  c.weighted_norm = parse_decimal(j.at("weighted_norm").get<std::string>());
  if (!j.at("bound").is_null()) c.bound = bound_from_json(j.at("bound"));
  if (!j.at("within_theorem_bound").is_null()) c.within_theorem_bound = j.at("within_theorem_bound").get<bool>();
  if (!j.at("within_llcurly").is_null()) c.within_llcurly = j.at("within_llcurly").get<bool>();
  c.method = parse_certificate_method(j.at("method").get<std::string>());
  c.below_ee = j.at("below_ee").get<std::vector<int>>();
  const Json& s = j.at("search_stats");
  c.stats.shells = s.at("shells").get<std::int64_t>();
  c.stats.nodes = s.at("nodes").get<std::int64_t>();
  c.stats.pairs = s.at("pairs").get<std::int64_t>();
  c.stats.undecided = s.at("undecided").get<std::int64_t>();
  c.stats.radius = s.at("radius").get<double>();
  c.stats.fallback = s.at("fallback").get<bool>();
  if (j.contains("timing")) c.stats.wall_ms = j["timing"].value("wall_ms", 0.0);
  return c;
}

Document certificate_document(const SolutionCertificate& cert) {
  Document doc;
  doc.schema = kCertificateSchema;
  Json j = to_json(cert);
  for (const auto& [k, v] : j.items())
    if (k != "schema" && k != "timing") doc.fields[k] = v;
  doc.timing = j["timing"];
  return doc;
}

Document tables_document(int d_min, int d_max) {
  if (d_min < 5 || d_max < d_min) throw std::invalid_argument("tables need 5 <= d_min <= d_max");
  Document doc;
  doc.schema = "tables/1";
  doc.fields["d_min"] = d_min;
  doc.fields["d_max"] = d_max;
  doc.columns = {"d", "signature", "2beta", "restricted_3", "restricted_2", "restricted_1", "2beta_3", "2beta_2", "2beta_1", "p_3", "p_2", "p_1"};
  for (int d = d_min; d <= d_max; ++d) {
    for (const auto& row : exponent_table(d).rows) {
      std::vector<Json> r;
      r.emplace_back(d);
      r.emplace_back("(" + std::to_string(row.r) + "," + std::to_string(row.s) + ")");
      r.emplace_back(to_string(row.two_beta));
      for (int k = 3; k >= 1; --k) r.emplace_back(signature_list(row.restricted[k - 1]));
      for (int k = 3; k >= 1; --k) r.push_back(optional_rational(row.two_beta_k[k - 1]));
      for (int k = 3; k >= 1; --k) r.push_back(optional_rational(row.p[k - 1]));
      doc.rows.push_back(std::move(r));
    }
  }
  return doc;
}

}  // namespace oppenheim::report
