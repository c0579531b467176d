#pragma once

// Continued fractions of verified reals.
//
// Partial quotients are read off the exact rational endpoints of an
// enclosure: a quotient is accepted only when both endpoints have the same
// floor at that depth, so every accepted quotient belongs to the enclosed
// real. When the certified prefix is too short the source is re-evaluated at
// doubled precision.

#include <cstddef>
#include <functional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dforge/realkit.hpp"

namespace dforge {

/// A real given by its enclosures at any requested precision.
using RealSource = std::function<VerifiedReal(int bits)>;

struct Convergent {
  BigInt p;
  BigInt q;
};

struct ContinuedFraction {
  std::vector<BigInt> quotients;       // a_0, a_1, ...
  std::vector<Convergent> convergents;  // p_i / q_i built from a_0..a_i
  int stable_at_bits = 0;
};

struct LegendreGate {
  BigInt threshold;    // S
  std::size_t index = 0;  // N: first index with q_N > S
  BigInt max_quotient;  // J(S) = max{a_0, ..., a_N}
};

struct ExpansionConfig {
  int start_bits = kDefaultPrecisionBits;
  int max_doublings = 16;
  std::size_t max_terms = 200;
};

/// Raised when the precision cap is reached without certifying what was
/// asked for. A real that is secretly rational ends up here instead of
/// producing a silently truncated expansion.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Longest prefix of quotients shared by every real in [x.lo, x.hi].
std::vector<BigInt> certified_quotients(const VerifiedReal& x, std::size_t max_terms);

std::vector<Convergent> convergents_of(const std::vector<BigInt>& quotients);

/// Expands until `done(prefix)` holds for some certified prefix and returns
/// the shortest such prefix. The result is re-derived at twice the accepting
/// precision and must agree term by term.
ContinuedFraction expand_while(const RealSource& x,
                               const std::function<bool(const ContinuedFraction&)>& done,
                               const ExpansionConfig& config = {});

std::pair<ContinuedFraction, LegendreGate> expand_until(const RealSource& x, const BigInt& threshold,
                                                        const ExpansionConfig& config = {});

/// Certified test of |x - p/q| < 1/(2 q^2).
bool legendre_is_convergent(const RealSource& x, const BigInt& p, const BigInt& q,
                            const ExpansionConfig& config = {});

/// Enclosure of 1 / ((J + 2) q^2); requires 1 <= q <= S.
VerifiedReal legendre_lower_bound(const LegendreGate& gate, const BigInt& q,
                                  int bits = kDefaultPrecisionBits);

}  // namespace dforge
