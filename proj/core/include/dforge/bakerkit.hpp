#pragma once

// Upper bounds from linear forms in logarithms.
//
// Heights of the five algebraic numbers involved, the Matveev lower bound
// for |beta_1^r_1 ... beta_n^r_n - 1|, the resulting k-bound, the
// substitution chain that turns it into bounds on r, m and n, and the
// Legendre-based reduction of k for the Lucas equation.

#include <cstdint>
#include <string>
#include <vector>

#include "dforge/cfkit.hpp"
#include "dforge/realkit.hpp"
#include "dforge/seqkit.hpp"

namespace dforge {

enum class HeightLabel { Alpha, Phi, TwoSqrtTwo, LucasM, PellM };

struct HeightEntry {
  HeightLabel label = HeightLabel::Alpha;
  unsigned m = 0;  // only for LucasM / PellM
  VerifiedReal height;
  VerifiedReal log_abs;  // |log beta|
};

/// Fixed table: h(alpha) = log(alpha)/2, h(phi) = log(phi)/2,
/// h(2 sqrt 2) = 3 log(2)/2, h(L_m) = log L_m, h(P_m) = log P_m.
HeightEntry height_entry(HeightLabel label, unsigned m, int bits);
std::string height_name(HeightLabel label, unsigned m);

struct MatveevInstance {
  unsigned num_logs = 2;
  unsigned degree = 2;
  std::vector<VerifiedReal> A;
  VerifiedReal T;
};

/// max(D h(beta), |log beta|, 0.16).
VerifiedReal admissible_weight(const VerifiedReal& height, const VerifiedReal& log_abs, unsigned degree);
/// Clamp only: max(natural, 0.16).
VerifiedReal clamp_weight(const VerifiedReal& natural);

/// The instance used for the equation: (alpha, L_m) or (2 sqrt 2, phi, P_m).
MatveevInstance matveev_instance(SequenceKind kind, unsigned m, const VerifiedReal& T, int bits);

/// 1.4 * 30^(n+3) * n^4.5 * D^2 (1 + log D) * A_1 ... A_n.
VerifiedReal matveev_coefficient(const MatveevInstance& inst);

/// Matveev coefficient divided by log W_m: the c in k < c (1 + log 2r).
/// Independent of m because the W_m weight is 2 log W_m.
VerifiedReal k_coefficient(SequenceKind kind, int bits);

/// Upper bound for k: c (1 + log(2 r)) + log(slack) / log(W_2).
VerifiedReal derive_k_bound(SequenceKind kind, const BigInt& r_bound, int bits);

/// Slack factor on the right of 0 < Delta < slack / W_m^k: 1.0025 or 1.00275.
mpq_class slack_factor(SequenceKind kind);

/// Inclusive bounds. k_max and r_max from real-valued inequalities are
/// rounded up, so they may be weaker than the strict inequality by one.
struct BoundSet {
  BigInt r_max;
  BigInt k_max;
  unsigned m_max = 0;
  unsigned n_max = 0;
  std::string stage_label;
  int bits = 0;
};

struct ExponentBounds {
  unsigned m_max = 0;
  unsigned n_max = 0;
};

/// Smallest r allowed by W_r >= W_2^3 + W_2^2.
std::uint32_t trivial_r_floor(SequenceKind kind);

/// m and n bounds from the exact-divisibility inequalities for r <= r_max.
/// Lucas: log m + (n-1)(m-1) log(alpha) <= log r.
/// Pell: n <= log r / log 2, m < 2 + log r / log(phi).
ExponentBounds divisibility_bounds(SequenceKind kind, const BigInt& r_max, int bits);

/// Inclusive r bound from the size comparison of both sides:
/// Lucas r < 2 + (m+1)(n+k), Pell r < 3 + (m-1)(n+k).
BigInt r_bound_from_exponents(SequenceKind kind, unsigned m_max, unsigned n_max, const BigInt& k_max);

/// Largest integer r that can satisfy the substituted r-inequality, found by
/// certified bisection.
BigInt solve_r_bound(SequenceKind kind, int bits);

/// Three stages: "matveev" (independent), "matveev-replay" (published
/// r-bound fed back verbatim) and "matveev-carried" (componentwise max, used
/// downstream).
std::vector<BoundSet> propagate_bounds(SequenceKind kind, int bits = kDefaultPrecisionBits);

struct LegendreRow {
  unsigned m = 0;
  std::size_t index = 0;  // N
  BigInt q;               // q_N
  BigInt max_quotient;    // J(S)
  unsigned k_bound = 0;
  int bits = 0;
};

struct LegendreReduction {
  unsigned k_bound = 0;
  BigInt threshold;  // S
  unsigned linear_offset = 0;
  std::vector<LegendreRow> rows;
};

struct LegendreOptions {
  unsigned threads = 1;
  ExpansionConfig expansion;
  /// Constant c in L_m^k < (1.0025 (J+2) / log alpha)(c + k); 0 means n_max.
  unsigned linear_offset = 0;
};

/// Certified L_m^k >= 3^k > (2.005 / log alpha)(n_max + k) for all k >= 9.
bool legendre_precondition(unsigned n_max, int bits);

/// For m in [2, m_max] expand log L_m / log alpha past S = n_max + k_max and
/// return the largest k that survives L_m^k > (1.0025 (J+2)/log alpha)(c + k),
/// never less than 8.
LegendreReduction legendre_reduce_lucas(unsigned m_max, unsigned n_max, const BigInt& k_max,
                                        const LegendreOptions& options = {});

struct SlackCheck {
  VerifiedReal tail;       // |beta|^8 or |psi|^4 / (2 sqrt 2)
  VerifiedReal allowance;  // (slack - 1) * W_2^2
  bool certified = false;
};

/// Re-certifies the slack constant: the conjugate term at the smallest
/// admissible r is below (slack - 1) times the smallest W_m^n.
SlackCheck certify_slack(SequenceKind kind, int bits);

struct GuardRecord {
  SequenceKind kind = SequenceKind::Lucas;
  std::string justification;
  std::uint64_t tuples_checked = 0;
  std::uint64_t violations = 0;
  bool identity_checked = false;
};

/// Records why Delta != 0 and confirms W_m^{n+k} is never a term of the
/// sequence over the given box (exact arithmetic).
GuardRecord nonvanishing_guard(SequenceKind kind, unsigned m_max, unsigned n_max, unsigned k_max);

}  // namespace dforge
