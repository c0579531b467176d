#pragma once

// Machine-readable record of a pipeline run.
//
// Serialized as a single JSON document with keys in a fixed order, big
// integers as decimal strings, and intervals as exact decimal endpoints with
// the nominal precision in bits.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dforge/realkit.hpp"
#include "dforge/seqkit.hpp"

namespace dforge {

enum class Verdict { Matches, Conservative, Discrepancy };

std::string_view to_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

struct IntervalText {
  std::string lo;
  std::string hi;
  int bits = 0;

  friend bool operator==(const IntervalText&, const IntervalText&) = default;
};

struct CertValue {
  enum class Kind { Integer, Interval, Text };

  Kind kind = Kind::Text;
  std::string text;  // decimal integer or free text
  IntervalText interval;

  static CertValue integer(const BigInt& value);
  static CertValue integer(const mpq_class& value);  // must be integral
  static CertValue rational(const mpq_class& value);  // written as text "num/den"
  static CertValue interval_of(const VerifiedReal& value);
  static CertValue note(std::string value);

  friend bool operator==(const CertValue&, const CertValue&) = default;
};

struct StageRecord {
  std::string name;
  std::string paper_tag;
  CertValue computed_value;
  std::optional<CertValue> paper_value;
  Verdict verdict = Verdict::Matches;
  std::string note;

  friend bool operator==(const StageRecord&, const StageRecord&) = default;
};

struct CertTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  friend bool operator==(const CertTable&, const CertTable&) = default;
};

struct PrecisionEntry {
  std::string stage;
  int bits = 0;

  friend bool operator==(const PrecisionEntry&, const PrecisionEntry&) = default;
};

struct ProofCertificate {
  SequenceKind equation = SequenceKind::Lucas;
  std::vector<StageRecord> stages;
  std::vector<CertTable> reduction_tables;
  std::vector<SolutionTuple> solutions;
  std::vector<PrecisionEntry> precision_report;
  std::string toolkit_version;

  friend bool operator==(const ProofCertificate&, const ProofCertificate&) = default;

  bool has_discrepancy() const;
  const StageRecord* find_stage(std::string_view name) const;
  const CertTable* find_table(std::string_view name) const;
};

class CertificateFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string emit_certificate(const ProofCertificate& cert);
ProofCertificate parse_certificate(std::string_view json_text);

std::string toolkit_version();

}  // namespace dforge
