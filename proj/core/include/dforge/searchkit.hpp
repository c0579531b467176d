#pragma once

// Exhaustive search over a bounded (m, n, k) box in exact integer
// arithmetic.

#include <cstdint>
#include <vector>

#include "dforge/seqkit.hpp"

namespace dforge {

struct SearchBox {
  SequenceKind kind = SequenceKind::Lucas;
  std::uint32_t m_max = 2;  // m in [2, m_max]
  std::uint32_t n_max = 2;  // n in [2, n_max]
  std::uint32_t k_max = 1;  // k in [1, k_max]
  std::uint32_t r_cap = 0;  // sizes the membership cache only
};

struct SearchOptions {
  unsigned threads = 1;
  bool use_prefilter = true;
};

/// Throws std::invalid_argument for an empty box.
void validate(const SearchBox& box);

/// Every (r, m, n, k) in the box with W_m^{n+k} + W_m^n = W_r, sorted by
/// (m, n, k).
std::vector<SolutionTuple> search(const SearchBox& box, const SearchOptions& options = {});

/// Residues of W_t mod `modulus` over one period.
std::vector<bool> residue_set(SequenceKind kind, std::uint32_t modulus);

/// False only when value mod `modulus` never occurs in the sequence.
bool residue_prefilter(const BigInt& value, SequenceKind kind, std::uint32_t modulus);

}  // namespace dforge
