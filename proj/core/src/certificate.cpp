#include "dforge/certificate.hpp"

#include <algorithm>
#include <utility>

#include "json.hpp"

namespace dforge {

namespace {

using Json = nlohmann::ordered_json;

std::string_view kind_name(CertValue::Kind kind) {
  switch (kind) {
    case CertValue::Kind::Integer:
      return "integer";
    case CertValue::Kind::Interval:
      return "interval";
    case CertValue::Kind::Text:
      return "text";
  }
  return "text";
}

Json value_to_json(const CertValue& v) {
  Json j;
  j["type"] = kind_name(v.kind);
  if (v.kind == CertValue::Kind::Interval) {
    j["lo"] = v.interval.lo;
    j["hi"] = v.interval.hi;
    j["bits"] = v.interval.bits;
  } else {
    j["value"] = v.text;
  }
  return j;
}

CertValue value_from_json(const Json& j) {
  CertValue v;
  const std::string type = j.at("type").get<std::string>();
  if (type == "integer") {
    v.kind = CertValue::Kind::Integer;
    v.text = j.at("value").get<std::string>();
  } else if (type == "interval") {
    v.kind = CertValue::Kind::Interval;
    v.interval.lo = j.at("lo").get<std::string>();
    v.interval.hi = j.at("hi").get<std::string>();
    v.interval.bits = j.at("bits").get<int>();
  } else if (type == "text") {
    v.kind = CertValue::Kind::Text;
    v.text = j.at("value").get<std::string>();
  } else {
    throw CertificateFormatError("unknown value type: " + type);
  }
  return v;
}

}  // namespace

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Matches:
      return "matches";
    case Verdict::Conservative:
      return "conservative";
    case Verdict::Discrepancy:
      return "discrepancy";
  }
  return "discrepancy";
}

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "matches") return Verdict::Matches;
  if (text == "conservative") return Verdict::Conservative;
  if (text == "discrepancy") return Verdict::Discrepancy;
  return std::nullopt;
}

CertValue CertValue::integer(const BigInt& value) {
  CertValue v;
  v.kind = Kind::Integer;
  v.text = value.get_str();
  return v;
}

CertValue CertValue::integer(const mpq_class& value) {
  if (value.get_den() != 1) throw std::invalid_argument("CertValue::integer: value is not integral");
  return integer(BigInt(value.get_num()));
}

CertValue CertValue::rational(const mpq_class& value) {
  if (value.get_den() == 1) return integer(BigInt(value.get_num()));
  return note(value.get_str());
}

CertValue CertValue::interval_of(const VerifiedReal& value) {
  CertValue v;
  v.kind = Kind::Interval;
  v.interval.lo = exact_decimal(value.lo());
  v.interval.hi = exact_decimal(value.hi());
  v.interval.bits = value.bits();
  return v;
}

CertValue CertValue::note(std::string value) {
  CertValue v;
  v.kind = Kind::Text;
  v.text = std::move(value);
  return v;
}

bool ProofCertificate::has_discrepancy() const {
  return std::any_of(stages.begin(), stages.end(),
                     [](const StageRecord& s) { return s.verdict == Verdict::Discrepancy; });
}

const StageRecord* ProofCertificate::find_stage(std::string_view name) const {
  const auto it = std::find_if(stages.begin(), stages.end(), [&](const StageRecord& s) { return s.name == name; });
  return it == stages.end() ? nullptr : &*it;
}

const CertTable* ProofCertificate::find_table(std::string_view name) const {
  const auto it = std::find_if(reduction_tables.begin(), reduction_tables.end(),
                               [&](const CertTable& t) { return t.name == name; });
  return it == reduction_tables.end() ? nullptr : &*it;
}

std::string emit_certificate(const ProofCertificate& cert) {
  Json root;
  root["equation"] = to_string(cert.equation);
  Json stages = Json::array();
  for (const auto& s : cert.stages) {
    Json j;
    j["name"] = s.name;
    j["paper_tag"] = s.paper_tag;
    j["computed_value"] = value_to_json(s.computed_value);
    j["paper_value"] = s.paper_value ? value_to_json(*s.paper_value) : Json(nullptr);
    j["verdict"] = to_string(s.verdict);
    j["note"] = s.note;
    stages.push_back(std::move(j));
  }
  root["stages"] = std::move(stages);
  Json tables = Json::array();
  for (const auto& t : cert.reduction_tables) {
    Json j;
    j["name"] = t.name;
    j["columns"] = t.columns;
    j["rows"] = t.rows;
    tables.push_back(std::move(j));
  }
  root["reduction_tables"] = std::move(tables);
  Json solutions = Json::array();
  for (const auto& s : cert.solutions) {
    solutions.push_back(Json{{"r", s.r}, {"m", s.m}, {"n", s.n}, {"k", s.k}});
  }
  root["solutions"] = std::move(solutions);
  Json precision = Json::array();
  for (const auto& p : cert.precision_report) precision.push_back(Json{{"stage", p.stage}, {"bits", p.bits}});
  root["precision_report"] = std::move(precision);
  root["toolkit_version"] = cert.toolkit_version;
  return root.dump(2) + "\n";
}

ProofCertificate parse_certificate(std::string_view json_text) {
  try {
    const Json root = Json::parse(json_text);
    ProofCertificate cert;
    const auto kind = parse_sequence_kind(root.at("equation").get<std::string>());
    if (!kind) throw CertificateFormatError("unknown equation");
    cert.equation = *kind;
    for (const auto& j : root.at("stages")) {
      StageRecord s;
      s.name = j.at("name").get<std::string>();
      s.paper_tag = j.at("paper_tag").get<std::string>();
      s.computed_value = value_from_json(j.at("computed_value"));
      if (!j.at("paper_value").is_null()) s.paper_value = value_from_json(j.at("paper_value"));
      const auto verdict = parse_verdict(j.at("verdict").get<std::string>());
      if (!verdict) throw CertificateFormatError("unknown verdict in stage " + s.name);
      s.verdict = *verdict;
      s.note = j.at("note").get<std::string>();
      cert.stages.push_back(std::move(s));
    }
    for (const auto& j : root.at("reduction_tables")) {
      CertTable t;
      t.name = j.at("name").get<std::string>();
      t.columns = j.at("columns").get<std::vector<std::string>>();
      t.rows = j.at("rows").get<std::vector<std::vector<std::string>>>();
      cert.reduction_tables.push_back(std::move(t));
    }
    for (const auto& j : root.at("solutions")) {
      cert.solutions.push_back({j.at("r").get<std::uint32_t>(), j.at("m").get<std::uint32_t>(),
                                j.at("n").get<std::uint32_t>(), j.at("k").get<std::uint32_t>()});
    }
    for (const auto& j : root.at("precision_report")) {
      cert.precision_report.push_back({j.at("stage").get<std::string>(), j.at("bits").get<int>()});
    }
    cert.toolkit_version = root.at("toolkit_version").get<std::string>();
    return cert;
  } catch (const nlohmann::json::exception& e) {
    throw CertificateFormatError(std::string("malformed certificate: ") + e.what());
  }
}

std::string toolkit_version() { return DFORGE_VERSION; }

}  // namespace dforge
