#pragma once

// Baker-Davenport style reduction in the Dujella-Petho form.
//
// For 0 < |u delta - v + mu| < C F^-w with u <= M: take the first convergent
// denominator q of delta with q > 6M and eps = ||mu q|| - M ||delta q|| > 0.
// Then no solution has w >= log(C q / eps) / log F.

#include <cstddef>
#include <vector>

#include "dforge/cfkit.hpp"
#include "dforge/realkit.hpp"

namespace dforge {

struct ReductionInstance {
  unsigned m = 0;  // label carried into the result
  RealSource delta;
  RealSource mu;
  RealSource C;
  RealSource F;
  BigInt M;
};

struct ReductionResult {
  unsigned m = 0;
  std::size_t index = 0;  // convergent index t (a_0 is index 0)
  BigInt q;
  VerifiedReal epsilon;
  /// Largest w not excluded: ceil(upper(log(C q / eps) / log F)) - 1.
  unsigned k_bound = 0;
  VerifiedReal exclusion;  // log(C q / eps) / log F
  int bits = 0;
};

struct ReductionConfig {
  ExpansionConfig expansion;
  std::size_t max_convergents = 200;
};

/// Enclosure of the distance from x to the nearest integer.
VerifiedReal nearest_integer_distance(const VerifiedReal& x);

/// Throws std::invalid_argument when C > 0, F > 1 or M >= 1 is not certified,
/// and std::runtime_error naming m when no convergent qualifies.
ReductionResult reduce(const ReductionInstance& inst, const ReductionConfig& config = {});

/// The instance for P_m: delta = log P_m / log phi, mu = log(2 sqrt 2) / log phi,
/// C = 1.00275 / log phi, F = 2.
ReductionInstance pell_reduction_instance(unsigned m, const BigInt& M);

struct ReductionPass {
  BigInt M;
  std::vector<ReductionResult> rows;  // m = 2 .. m_max
  BigInt max_q;
  unsigned max_q_m = 0;
  std::size_t max_q_index = 0;
  VerifiedReal min_epsilon;
  unsigned min_epsilon_m = 0;
  /// Bound from the aggregate (largest q, smallest eps), as reported in
  /// one line for all m; never below any per-m bound.
  unsigned k_bound = 0;
  VerifiedReal exclusion;
};

ReductionPass pell_reduction_pass(unsigned m_max, const BigInt& M, unsigned threads = 1,
                                  const ReductionConfig& config = {});

}  // namespace dforge
