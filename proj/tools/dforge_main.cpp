#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "dforge/pipeline.hpp"

namespace {

int default_precision() {
  if (const char* env = std::getenv("DFORGE_PRECISION_BITS")) {
    try {
      std::size_t used = 0;
      const int bits = std::stoi(env, &used);
      if (used == std::string(env).size() && bits >= 16) return bits;
    } catch (const std::exception&) {
    }
    std::cerr << "dforge: ignoring invalid DFORGE_PRECISION_BITS=" << env << "\n";
  }
  return dforge::kDefaultPrecisionBits;
}

void print_summary(const dforge::ProofCertificate& cert) {
  std::size_t counts[3] = {0, 0, 0};
  for (const auto& s : cert.stages) ++counts[static_cast<int>(s.verdict)];
  std::cerr << "dforge " << cert.toolkit_version << ": " << dforge::to_string(cert.equation) << ", "
            << cert.stages.size() << " stages, " << counts[0] << " matches, " << counts[1] << " conservative, "
            << counts[2] << " discrepancies, " << cert.solutions.size() << " solutions\n";
  for (const auto& s : cert.stages) {
    if (s.verdict == dforge::Verdict::Discrepancy) {
      std::cerr << "  discrepancy: " << s.name << " [" << s.paper_tag << "] computed " << s.computed_value.text
                << s.computed_value.interval.hi << "\n";
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified solver for W_m^(n+k) + W_m^n = W_r over Lucas and Pell numbers"};

  dforge::PipelineConfig config;
  config.precision_bits = default_precision();
  std::string equation;
  std::string stage = "all";
  std::string paper_check = "strict";
  std::string certificate_path;

  app.add_option("--equation", equation, "lucas or pell")->required()->check(CLI::IsMember({"lucas", "pell"}));
  app.add_option("--precision-bits", config.precision_bits, "starting precision in bits (env DFORGE_PRECISION_BITS)")
      ->check(CLI::Range(16, 1 << 20));
  app.add_option("--stage", stage, "all, bounds, reduce or search")
      ->check(CLI::IsMember({"all", "bounds", "reduce", "search"}));
  app.add_option("--certificate", certificate_path, "output path; stdout when omitted");
  app.add_option("--paper-check", paper_check, "strict: exit 2 on any discrepancy; report: record only")
      ->check(CLI::IsMember({"strict", "report"}));
  app.add_option("--threads", config.threads, "worker threads for reduction and search")
      ->check(CLI::Range(1u, 1024u));

  CLI11_PARSE(app, argc, argv);
  config.equation = *dforge::parse_sequence_kind(equation);
  config.stage = *dforge::parse_pipeline_stage(stage);
  const dforge::PaperCheck check = *dforge::parse_paper_check(paper_check);

  dforge::ProofCertificate cert;
  try {
    cert = dforge::run_pipeline(config);
  } catch (const dforge::StageFailure& e) {
    std::cerr << "dforge: stage " << e.stage() << " failed: " << e.what() << "\n";
    return dforge::exit_code::kStageFailure;
  } catch (const std::exception& e) {
    std::cerr << "dforge: " << e.what() << "\n";
    return dforge::exit_code::kStageFailure;
  }

  const std::string json = dforge::emit_certificate(cert);
  if (certificate_path.empty()) {
    std::cout << json;
  } else {
    std::ofstream out(certificate_path, std::ios::binary);
    out << json;
    if (!out) {
      std::cerr << "dforge: cannot write " << certificate_path << "\n";
      return dforge::exit_code::kStageFailure;
    }
  }
  print_summary(cert);
  return dforge::exit_code_for(cert, check);
}
