#pragma once

// Published constants the pipeline is checked against. Values are kept
// exactly as printed; a bound "x < c" is stored as c.

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dforge/seqkit.hpp"

namespace dforge {

struct ReductionReference {
  BigInt exponent_sum_bound;   // M
  BigInt max_denominator;      // largest selected q over all m
  unsigned max_denominator_m = 0;
  std::size_t max_denominator_index = 0;
  mpq_class min_epsilon;       // every epsilon exceeds this
  unsigned k_bound = 0;
};

struct ReferenceValues {
  SequenceKind kind = SequenceKind::Lucas;
  unsigned r_floor = 0;
  mpq_class tail_bound;        // |beta|^r < 0.022 (Lucas); 0 when not printed
  mpq_class k_coefficient;
  BigInt r_bound;
  BigInt k_bound;
  unsigned m_bound = 0;
  unsigned n_bound = 0;
  unsigned legendre_k = 0;     // Lucas only
  unsigned legendre_offset = 0;  // the printed "(28 + k)" constant, Lucas only
  std::vector<ReductionReference> reductions;  // Pell only, in pass order
  BigInt reduced_r;
  unsigned reduced_m = 0;
  unsigned reduced_n = 0;
  BigInt r_cap;
  unsigned final_k = 0;
  std::vector<SolutionTuple> solutions;
  /// Stage-name prefix to source label, first match wins.
  std::vector<std::pair<std::string, std::string>> tags;

  /// Source label for a certificate stage; empty when none applies.
  std::string_view tag_for(std::string_view stage) const;
};

const ReferenceValues& reference_values(SequenceKind kind);

}  // namespace dforge
