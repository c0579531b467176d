#pragma once

// End-to-end run for one equation: bounds, reduction, search, certificate.

#include <optional>
#include <stdexcept>
#include <string>

#include "dforge/certificate.hpp"
#include "dforge/searchkit.hpp"

namespace dforge {

enum class PipelineStage { All, Bounds, Reduce, Search };
enum class PaperCheck { Strict, Report };

std::optional<PipelineStage> parse_pipeline_stage(std::string_view text);
std::optional<PaperCheck> parse_paper_check(std::string_view text);

struct PipelineConfig {
  SequenceKind equation = SequenceKind::Lucas;
  int precision_bits = kDefaultPrecisionBits;
  PipelineStage stage = PipelineStage::All;
  unsigned threads = 1;
};

/// Raised when a stage cannot complete; carries the stage name.
class StageFailure : public std::runtime_error {
 public:
  StageFailure(std::string stage, const std::string& what)
      : std::runtime_error(stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_;
};

ProofCertificate run_pipeline(const PipelineConfig& config);

/// The box searched when bounds are not recomputed.
SearchBox published_search_box(SequenceKind kind);

namespace exit_code {
inline constexpr int kSuccess = 0;
inline constexpr int kDiscrepancy = 2;
inline constexpr int kStageFailure = 3;
}  // namespace exit_code

int exit_code_for(const ProofCertificate& cert, PaperCheck mode);

}  // namespace dforge
