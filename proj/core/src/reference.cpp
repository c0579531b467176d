#include "dforge/reference.hpp"

namespace dforge {

namespace {

mpq_class ratio(const char* text) {
  mpq_class q(text);
  q.canonicalize();
  return q;
}

ReferenceValues make_lucas() {
  ReferenceValues v;
  v.kind = SequenceKind::Lucas;
  v.r_floor = 8;
  v.tail_bound = ratio("22/1000");
  v.k_coefficient = ratio("5380000000");
  v.r_bound = BigInt("11000000000000");
  v.k_bound = BigInt("171000000000");
  v.m_bound = 55;
  v.n_bound = 61;
  v.legendre_k = 8;
  v.legendre_offset = 28;
  v.reduced_r = 3865;
  v.reduced_m = 12;
  v.reduced_n = 16;
  v.r_cap = 313;
  v.final_k = 8;
  v.tags = {{"trivial-r-floor", "Thm 3.1 proof"},
            {"slack-tail", "(3.3)"},
            {"nonvanishing-search", "Thm 3.1"},
            {"nonvanishing", "(3.3)"},
            {"matveev-k-coefficient", "(3.4)"},
            {"r-bound-reduced", "(3.1)"},
            {"m-bound-reduced", "(2.1)"},
            {"n-bound-reduced", "(2.1)"},
            {"r-bound", "(3.5)"},
            {"k-bound", "(3.6)"},
            {"m-bound", "(3.7)"},
            {"n-bound", "(3.7)"},
            {"legendre-precondition", "(3.9)"},
            {"legendre-threshold", "(3.10)"},
            {"legendre-k", "(3.11)"},
            {"r-cap", "(3.1)"},
            {"solution", "Thm 3.1"}};
  return v;
}

ReferenceValues make_pell() {
  ReferenceValues v;
  v.kind = SequenceKind::Pell;
  v.r_floor = 4;
  v.k_coefficient = ratio("3810000000000");
  v.r_bound = BigInt("6130000000000000");
  v.k_bound = BigInt("145000000000000");
  v.m_bound = 43;
  v.n_bound = 52;

  ReductionReference first;
  first.exponent_sum_bound = BigInt("145000000000052");
  first.max_denominator = BigInt("641041703362692900403363");
  first.max_denominator_m = 43;
  first.max_denominator_index = 47;
  first.min_epsilon = ratio("819224442290261/1000000000000000000000000");
  first.k_bound = 109;
  ReductionReference second;
  second.exponent_sum_bound = 121;
  second.max_denominator = 706130;
  second.max_denominator_m = 12;
  second.max_denominator_index = 15;
  second.min_epsilon = ratio("761409861253325/10000000000000000000");
  second.k_bound = 33;
  v.reductions = {first, second};

  v.reduced_r = 6764;
  v.reduced_m = 12;
  v.reduced_n = 12;
  v.r_cap = 618;
  v.final_k = 33;
  v.solutions = {SolutionTuple{4, 2, 2, 1}};
  v.tags = {{"trivial-r-floor", "Thm 3.2 proof"},
            {"slack-tail", "(3.15)"},
            {"nonvanishing-search", "Thm 3.2"},
            {"nonvanishing", "(3.15)"},
            {"matveev-k-coefficient", "(3.16)"},
            {"r-bound-reduced", "(3.23)"},
            {"m-bound-reduced", "(3.24)"},
            {"n-bound-reduced", "(3.24)"},
            {"r-bound", "(3.17)"},
            {"k-bound", "(3.18)"},
            {"m-bound", "(3.19)"},
            {"n-bound", "(3.20)"},
            {"reduction-1-", "(3.22)"},
            {"reduction-2-", "(3.25)"},
            {"r-cap", "(3.25)"},
            {"solution", "Thm 3.2"}};
  return v;
}

}  // namespace

std::string_view ReferenceValues::tag_for(std::string_view stage) const {
  for (const auto& [prefix, tag] : tags) {
    if (stage.substr(0, prefix.size()) == prefix) return tag;
  }
  return {};
}

const ReferenceValues& reference_values(SequenceKind kind) {
  static const ReferenceValues lucas_values = make_lucas();
  static const ReferenceValues pell_values = make_pell();
  return kind == SequenceKind::Lucas ? lucas_values : pell_values;
}

}  // namespace dforge
