#include "dforge/pipeline.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <utility>

#include "dforge/bakerkit.hpp"
#include "dforge/redkit.hpp"
#include "dforge/reference.hpp"

namespace dforge {

namespace {

enum class Sense { Exact, UpperBound, LowerBound };

// Where the computed number sits relative to the published one. Outside the
// window is a discrepancy; inside, a bound at least as strong as the
// published one matches and a weaker one is conservative.
struct Check {
  Sense sense = Sense::Exact;
  mpq_class window_lo;
  mpq_class window_hi;
};

Check exact() { return {Sense::Exact, 0, 0}; }
Check upper(mpq_class lo, mpq_class hi) { return {Sense::UpperBound, std::move(lo), std::move(hi)}; }
Check lower(mpq_class lo, mpq_class hi) { return {Sense::LowerBound, std::move(lo), std::move(hi)}; }
Check relative(const mpq_class& published, long percent) {
  return upper(published * ratio_of(100 - percent, 100), published * ratio_of(100 + percent, 100));
}

Verdict judge(const mpq_class& computed, const mpq_class& published, const Check& check) {
  if (check.sense == Sense::Exact) return computed == published ? Verdict::Matches : Verdict::Discrepancy;
  if (computed < check.window_lo || computed > check.window_hi) return Verdict::Discrepancy;
  const bool stronger = check.sense == Sense::UpperBound ? computed <= published : computed >= published;
  return stronger ? Verdict::Matches : Verdict::Conservative;
}

std::string table_decimal(const Float& x, Rounding direction) { return rounded_decimal(x, 25, direction); }

std::string to_text(const std::vector<SolutionTuple>& sols) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < sols.size(); ++i) {
    const auto& s = sols[i];
    out << (i ? ", " : "") << "(" << s.r << ", " << s.m << ", " << s.n << ", " << s.k << ")";
  }
  out << "]";
  return out.str();
}

class Recorder {
 public:
  Recorder(ProofCertificate& cert, const ReferenceValues& ref) : cert_(cert), ref_(ref) {}

  void integer(std::string name, const BigInt& computed, const mpq_class& published,
               const Check& check, std::string note = {}) {
    add(std::move(name), CertValue::integer(computed), CertValue::rational(published),
        judge(mpq_class(computed), published, check), std::move(note));
  }

  // `use_upper` picks the endpoint that makes the comparison conservative.
  void interval(std::string name, const VerifiedReal& computed, const mpq_class& published,
                const Check& check, std::string note = {}) {
    const bool use_upper = check.sense != Sense::LowerBound;
    const mpq_class endpoint = use_upper ? computed.hi_rational() : computed.lo_rational();
    add(std::move(name), CertValue::interval_of(computed), CertValue::rational(published),
        judge(endpoint, published, check), std::move(note));
  }

  void fact(std::string name, CertValue computed, bool holds, std::string note = {}) {
    add(std::move(name), std::move(computed), std::nullopt,
        holds ? Verdict::Matches : Verdict::Discrepancy, std::move(note));
  }

  void add(std::string name, CertValue computed, std::optional<CertValue> published, Verdict verdict,
           std::string note) {
    std::string tag(ref_.tag_for(name));
    cert_.stages.push_back(
        {std::move(name), std::move(tag), std::move(computed), std::move(published), verdict, std::move(note)});
  }

  void precision(std::string stage, int bits) { cert_.precision_report.push_back({std::move(stage), bits}); }

  void table(CertTable t) { cert_.reduction_tables.push_back(std::move(t)); }

 private:
  ProofCertificate& cert_;
  const ReferenceValues& ref_;
};

template <typename Fn>
auto run_stage(const std::string& name, Fn&& fn) {
  try {
    return fn();
  } catch (const StageFailure&) {
    throw;
  } catch (const std::exception& e) {
    throw StageFailure(name, e.what());
  }
}

BigInt max_of(const BigInt& a, const BigInt& b) { return a < b ? b : a; }

struct Carried {
  BigInt r_max;
  BigInt k_max;
  unsigned m_max = 0;
  unsigned n_max = 0;
};

// Stages shared by both equations up to the carried Matveev bounds.
Carried bound_stages(const PipelineConfig& config, Recorder& rec) {
  const SequenceKind kind = config.equation;
  const ReferenceValues& ref = reference_values(kind);
  const int bits = config.precision_bits;
  const bool lucas_eq = kind == SequenceKind::Lucas;

  rec.integer("trivial-r-floor", trivial_r_floor(kind), ref.r_floor, exact());

  run_stage("slack", [&] {
    const SlackCheck slack = certify_slack(kind, bits);
    const std::string allowance = rounded_decimal(slack.allowance.lo(), 6, Rounding::TowardLower);
    if (lucas_eq) {
      Check c = upper(0, ref.tail_bound);
      if (!slack.certified) c = upper(0, 0);
      rec.interval("slack-tail", slack.tail, ref.tail_bound, c,
                   "|beta|^8 below the allowance (1.0025 - 1) * L_2^2 = " + allowance);
    } else {
      rec.fact("slack-tail", CertValue::interval_of(slack.tail), slack.certified,
               "|psi|^4 / (2 sqrt2) below the allowance (1.00275 - 1) * P_2^2 = " + allowance);
    }
  });

  run_stage("nonvanishing", [&] {
    const GuardRecord guard = nonvanishing_guard(kind, 2, 2, 1);
    rec.fact("nonvanishing", CertValue::note(guard.justification), guard.identity_checked,
             "power identity verified exactly for 1 <= r <= 64");
  });

  run_stage("heights", [&] {
    CertTable heights{"heights", {"label", "height_lo", "height_hi", "weight_hi"}, {}};
    std::vector<std::pair<HeightLabel, unsigned>> labels;
    if (lucas_eq) {
      labels = {{HeightLabel::Alpha, 0}, {HeightLabel::LucasM, 2}};
    } else {
      labels = {{HeightLabel::TwoSqrtTwo, 0}, {HeightLabel::Phi, 0}, {HeightLabel::PellM, 2}};
    }
    for (const auto& [label, m] : labels) {
      const HeightEntry e = height_entry(label, m, bits);
      const VerifiedReal weight = admissible_weight(e.height, e.log_abs, 2);
      heights.rows.push_back({height_name(label, m), table_decimal(e.height.lo(), Rounding::TowardLower),
                              table_decimal(e.height.hi(), Rounding::TowardUpper),
                              table_decimal(weight.hi(), Rounding::TowardUpper)});
    }
    rec.table(std::move(heights));
  });

  const VerifiedReal coefficient = run_stage("matveev", [&] { return k_coefficient(kind, bits); });
  rec.interval("matveev-k-coefficient", coefficient, ref.k_coefficient,
               relative(ref.k_coefficient, 10),
               lucas_eq ? "" : "degree D = 2 in Q(sqrt2); the three numbers do not lie in Q(sqrt5)");

  const std::vector<BoundSet> sets = run_stage("propagate-bounds", [&] { return propagate_bounds(kind, bits); });
  const BoundSet& independent = sets.at(0);
  const BoundSet& replay = sets.at(1);
  const BoundSet& carried = sets.at(2);

  const mpq_class r_ref(ref.r_bound);
  const mpq_class k_ref(ref.k_bound);
  const Check r_check = lucas_eq ? upper(mpq_class(BigInt("10000000000000")), mpq_class(BigInt("13000000000000")))
                                 : upper(mpq_class(BigInt("5500000000000000")), mpq_class(BigInt("7000000000000000")));
  const Check k_check =
      lucas_eq ? upper(k_ref * ratio_of(9, 10), mpq_class(BigInt("180000000000"))) : relative(k_ref, 10);
  rec.integer("r-bound", independent.r_max, r_ref, r_check, "certified bisection, inclusive");
  rec.integer("k-bound", independent.k_max, k_ref, k_check, "from the independent r-bound");
  rec.integer("m-bound", independent.m_max, ref.m_bound, upper(ref.m_bound * ratio_of(9, 10), ref.m_bound));
  rec.integer("n-bound", independent.n_max, ref.n_bound, upper(ref.n_bound * ratio_of(9, 10), ref.n_bound));
  rec.integer("k-bound-replay", replay.k_max, k_ref, k_check, "published r-bound fed back verbatim");
  rec.integer("m-bound-replay", replay.m_max, ref.m_bound, exact(), "published r-bound fed back verbatim");
  rec.integer("n-bound-replay", replay.n_max, ref.n_bound, exact(), "published r-bound fed back verbatim");

  CertTable table{"bound_sets", {"stage", "r_max", "k_max", "m_max", "n_max"}, {}};
  for (const auto& s : sets) {
    table.rows.push_back({s.stage_label, s.r_max.get_str(), s.k_max.get_str(), std::to_string(s.m_max),
                          std::to_string(s.n_max)});
  }
  rec.table(std::move(table));
  rec.precision("bounds", bits);

  return {carried.r_max, carried.k_max, carried.m_max, carried.n_max};
}

SearchBox lucas_reduction_stages(const PipelineConfig& config, const Carried& carried, Recorder& rec) {
  const ReferenceValues& ref = reference_values(SequenceKind::Lucas);
  const int bits = config.precision_bits;
  const bool ok = legendre_precondition(carried.n_max, bits);
  rec.fact("legendre-precondition",
           CertValue::note("3^9 > (2.005 / log alpha)(" + std::to_string(carried.n_max) + " + 9)"), ok,
           "k >= 9 puts the approximation inside the 1/(2q^2) regime");

  LegendreOptions options;
  options.threads = config.threads;
  options.expansion.start_bits = bits;
  const LegendreReduction main = run_stage("legendre", [&] {
    return legendre_reduce_lucas(carried.m_max, carried.n_max, carried.k_max, options);
  });
  options.linear_offset = ref.legendre_offset;
  const LegendreReduction printed = run_stage("legendre", [&] {
    return legendre_reduce_lucas(carried.m_max, carried.n_max, carried.k_max, options);
  });

  CertTable table{"legendre", {"m", "N", "q_N", "J", "k_bound", "k_bound_printed_offset"}, {}};
  int used_bits = bits;
  for (std::size_t i = 0; i < main.rows.size(); ++i) {
    const auto& row = main.rows[i];
    table.rows.push_back({std::to_string(row.m), std::to_string(row.index), row.q.get_str(),
                          row.max_quotient.get_str(), std::to_string(row.k_bound),
                          std::to_string(printed.rows[i].k_bound)});
    used_bits = std::max(used_bits, row.bits);
  }
  rec.table(std::move(table));
  rec.precision("legendre", used_bits);

  rec.integer("legendre-threshold", main.threshold, mpq_class(BigInt(ref.n_bound) + ref.k_bound), exact(),
              "S = n_max + k_max");
  rec.integer("legendre-k", main.k_bound, ref.legendre_k, exact(),
              "linear factor (n_max + k) = (" + std::to_string(main.linear_offset) + " + k)");
  rec.integer("legendre-k-printed-offset", printed.k_bound, ref.legendre_k, exact(),
              "linear factor as printed, (28 + k)");

  const unsigned k_max = std::max(main.k_bound, printed.k_bound);
  const BigInt r_reduced = r_bound_from_exponents(SequenceKind::Lucas, carried.m_max, carried.n_max, k_max);
  rec.integer("r-bound-reduced", r_reduced, mpq_class(ref.reduced_r), exact());
  const ExponentBounds mn = divisibility_bounds(SequenceKind::Lucas, max_of(r_reduced, ref.reduced_r), bits);
  rec.integer("m-bound-reduced", mn.m_max, ref.reduced_m, exact());
  rec.integer("n-bound-reduced", mn.n_max, ref.reduced_n, exact());

  const unsigned m_final = std::max(mn.m_max, ref.reduced_m);
  const unsigned n_final = std::max(mn.n_max, ref.reduced_n);
  const BigInt r_cap = r_bound_from_exponents(SequenceKind::Lucas, m_final, n_final, k_max);
  rec.integer("r-cap", r_cap, mpq_class(ref.r_cap), upper(0, mpq_class(ref.r_cap)));
  return {SequenceKind::Lucas, m_final, n_final, k_max,
          static_cast<std::uint32_t>(max_of(r_cap, ref.r_cap).get_ui())};
}

void record_pass(Recorder& rec, const ReductionPass& pass, const ReductionReference& ref, int pass_number) {
  const std::string prefix = "reduction-" + std::to_string(pass_number) + "-";
  CertTable table{"reduction_pass_" + std::to_string(pass_number), {"m", "t", "q_t", "epsilon_lo", "k_bound"}, {}};
  int used_bits = 0;
  for (const auto& row : pass.rows) {
    table.rows.push_back({std::to_string(row.m), std::to_string(row.index), row.q.get_str(),
                          table_decimal(row.epsilon.lo(), Rounding::TowardLower), std::to_string(row.k_bound)});
    used_bits = std::max(used_bits, row.bits);
  }
  rec.table(std::move(table));
  rec.precision("reduction-pass-" + std::to_string(pass_number), used_bits);

  rec.integer(prefix + "M", pass.M, mpq_class(ref.exponent_sum_bound), exact(), "M = n_max + k_max");
  rec.integer(prefix + "max-q", pass.max_q, mpq_class(ref.max_denominator), exact());
  rec.integer(prefix + "max-q-m", pass.max_q_m, ref.max_denominator_m, exact());
  rec.integer(prefix + "max-q-index", pass.max_q_index, ref.max_denominator_index, exact(),
              "a_0 is convergent index 0");
  rec.interval(prefix + "min-epsilon", pass.min_epsilon, ref.min_epsilon,
               lower(ref.min_epsilon * ratio_of(99999, 100000), ref.min_epsilon * ratio_of(101, 100)),
               "attained at m = " + std::to_string(pass.min_epsilon_m));
  rec.integer(prefix + "k", pass.k_bound, ref.k_bound, exact(),
              "log(C max_q / min_eps) / log 2 < " +
                  rounded_decimal(pass.exclusion.hi(), 6, Rounding::TowardUpper));
}

SearchBox pell_reduction_stages(const PipelineConfig& config, const Carried& carried, Recorder& rec) {
  const ReferenceValues& ref = reference_values(SequenceKind::Pell);
  const int bits = config.precision_bits;
  ReductionConfig rc;
  rc.expansion.start_bits = bits;

  const BigInt M1 = carried.n_max + carried.k_max;
  const ReductionPass first =
      run_stage("reduction-pass-1", [&] { return pell_reduction_pass(carried.m_max, M1, config.threads, rc); });
  record_pass(rec, first, ref.reductions.at(0), 1);
  const unsigned k1 = std::max(first.k_bound, ref.reductions.at(0).k_bound);

  const BigInt r_reduced = r_bound_from_exponents(SequenceKind::Pell, carried.m_max, carried.n_max, k1);
  rec.integer("r-bound-reduced", r_reduced, mpq_class(ref.reduced_r), exact());
  const ExponentBounds mn = divisibility_bounds(SequenceKind::Pell, max_of(r_reduced, ref.reduced_r), bits);
  rec.integer("m-bound-reduced", mn.m_max, ref.reduced_m, exact());
  rec.integer("n-bound-reduced", mn.n_max, ref.reduced_n, exact());
  const unsigned m2 = std::max(mn.m_max, ref.reduced_m);
  const unsigned n2 = std::max(mn.n_max, ref.reduced_n);

  const BigInt M2 = BigInt(n2) + k1;
  const ReductionPass second =
      run_stage("reduction-pass-2", [&] { return pell_reduction_pass(m2, M2, config.threads, rc); });
  record_pass(rec, second, ref.reductions.at(1), 2);
  const unsigned k2 = std::max(second.k_bound, ref.reductions.at(1).k_bound);

  const BigInt r_cap = r_bound_from_exponents(SequenceKind::Pell, m2, n2, k2);
  rec.integer("r-cap", r_cap, mpq_class(ref.r_cap), upper(0, mpq_class(ref.r_cap)),
              "from r < 3 + (m - 1)(n + k)");
  return {SequenceKind::Pell, m2, n2, k2, static_cast<std::uint32_t>(max_of(r_cap, ref.r_cap).get_ui())};
}

void search_stages(const PipelineConfig& config, const SearchBox& box, ProofCertificate& cert, Recorder& rec) {
  const ReferenceValues& ref = reference_values(box.kind);

  const GuardRecord guard =
      run_stage("nonvanishing-search", [&] { return nonvanishing_guard(box.kind, box.m_max, box.n_max, box.k_max); });
  rec.integer("nonvanishing-search", guard.violations, 0, exact(),
              std::to_string(guard.tuples_checked) + " tuples: W_m^(n+k) is never a sequence term");

  SearchOptions options;
  options.threads = config.threads;
  std::vector<SolutionTuple> solutions = run_stage("search", [&] { return search(box, options); });

  std::uint64_t inadmissible = 0;
  for (const auto& s : solutions) {
    if (!satisfies_equation(box.kind, s) || s.n + s.k > 2 * s.r) ++inadmissible;
  }
  rec.integer("solution-recheck", inadmissible, 0, exact(),
              "every hit re-evaluated from scratch and n + k <= 2r");

  std::ostringstream box_text;
  box_text << "m <= " << box.m_max << ", n <= " << box.n_max << ", k <= " << box.k_max;
  rec.add("solutions", CertValue::note(to_text(solutions)), CertValue::note(to_text(ref.solutions)),
          solutions == ref.solutions ? Verdict::Matches : Verdict::Discrepancy, box_text.str());
  rec.precision("search", 0);
  cert.solutions = std::move(solutions);
}

}  // namespace

std::optional<PipelineStage> parse_pipeline_stage(std::string_view text) {
  if (text == "all") return PipelineStage::All;
  if (text == "bounds") return PipelineStage::Bounds;
  if (text == "reduce") return PipelineStage::Reduce;
  if (text == "search") return PipelineStage::Search;
  return std::nullopt;
}

std::optional<PaperCheck> parse_paper_check(std::string_view text) {
  if (text == "strict") return PaperCheck::Strict;
  if (text == "report") return PaperCheck::Report;
  return std::nullopt;
}

SearchBox published_search_box(SequenceKind kind) {
  const ReferenceValues& ref = reference_values(kind);
  return {kind, ref.reduced_m, ref.reduced_n, ref.final_k, static_cast<std::uint32_t>(ref.r_cap.get_ui())};
}

ProofCertificate run_pipeline(const PipelineConfig& config) {
  if (config.precision_bits < 16) throw std::invalid_argument("run_pipeline: precision must be >= 16 bits");
  ProofCertificate cert;
  cert.equation = config.equation;
  cert.toolkit_version = toolkit_version();
  Recorder rec(cert, reference_values(config.equation));

  if (config.stage == PipelineStage::Search) {
    search_stages(config, published_search_box(config.equation), cert, rec);
    return cert;
  }
  const Carried carried = bound_stages(config, rec);
  if (config.stage == PipelineStage::Bounds) return cert;

  const SearchBox box = config.equation == SequenceKind::Lucas ? lucas_reduction_stages(config, carried, rec)
                                                               : pell_reduction_stages(config, carried, rec);
  if (config.stage == PipelineStage::Reduce) return cert;

  search_stages(config, box, cert, rec);
  return cert;
}

int exit_code_for(const ProofCertificate& cert, PaperCheck mode) {
  if (mode == PaperCheck::Strict && cert.has_discrepancy()) return exit_code::kDiscrepancy;
  return exit_code::kSuccess;
}

}  // namespace dforge
