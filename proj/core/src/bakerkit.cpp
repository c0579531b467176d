#include "dforge/bakerkit.hpp"

#include <algorithm>
#include <stdexcept>

#include "dforge/parallel.hpp"
#include "dforge/reference.hpp"

namespace dforge {

namespace {

VerifiedReal log_of_integer(const BigInt& x, int bits) {
  return ver_log(VerifiedReal::from_integer(x, bits), bits);
}

VerifiedReal rational(const mpq_class& q, int bits) { return VerifiedReal::from_rational(q, bits); }

VerifiedReal integer(long v, int bits) { return VerifiedReal::exact(v, bits); }

VerifiedReal log_base(SequenceKind kind, int bits) {
  return ver_log(kind == SequenceKind::Lucas ? golden_ratio(bits) : silver_ratio(bits), bits);
}

BigInt power(const BigInt& base, unsigned long e) {
  BigInt out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

BigInt max_of(const BigInt& a, const BigInt& b) { return a < b ? b : a; }

// Right-hand side of the substituted r-inequality; r is feasible while
// r < rhs(r).
class RInequality {
 public:
  RInequality(SequenceKind kind, int bits)
      : kind_(kind),
        bits_(bits),
        log_base_(log_base(kind, bits)),
        log_two_(ver_log(integer(2, bits), bits)),
        coefficient_(k_coefficient(kind, bits)),
        slack_term_(ver_log(rational(slack_factor(kind), bits), bits) /
                    log_of_integer(sequence_term(kind, 2), bits)) {}

  VerifiedReal rhs(const BigInt& r) const {
    const VerifiedReal log_r = log_of_integer(r, bits_);
    const VerifiedReal log_2r = log_of_integer(2 * r, bits_);
    const VerifiedReal k_bound = coefficient_ * (integer(1, bits_) + log_2r) + slack_term_;
    if (kind_ == SequenceKind::Lucas) {
      // 2 + (2 + log r / log alpha)(1 + log(r/2) / log alpha + k)
      const VerifiedReal log_half_r = ver_log(rational(ratio_of(r, 2), bits_), bits_);
      return integer(2, bits_) + (integer(2, bits_) + log_r / log_base_) *
                                     (integer(1, bits_) + log_half_r / log_base_ + k_bound);
    }
    // 3 + (1 + log r / log phi)(log r / log 2 + k)
    return integer(3, bits_) +
           (integer(1, bits_) + log_r / log_base_) * (log_r / log_two_ + k_bound);
  }

  Ordering test(const BigInt& r) const {
    return ver_compare(VerifiedReal::from_integer(r, bits_), rhs(r));
  }

 private:
  SequenceKind kind_;
  int bits_;
  VerifiedReal log_base_;
  VerifiedReal log_two_;
  VerifiedReal coefficient_;
  VerifiedReal slack_term_;
};

// Less: r certainly feasible. Greater: certainly infeasible. Overlapping
// after a few doublings is resolved as feasible, which can only enlarge the
// bound.
bool r_feasible(SequenceKind kind, const BigInt& r, int bits) {
  for (int attempt = 0; attempt < 4; ++attempt, bits *= 2) {
    switch (RInequality(kind, bits).test(r)) {
      case Ordering::Less:
        return true;
      case Ordering::Greater:
        return false;
      case Ordering::Overlapping:
        break;
    }
  }
  return true;
}

}  // namespace

std::string height_name(HeightLabel label, unsigned m) {
  switch (label) {
    case HeightLabel::Alpha:
      return "alpha";
    case HeightLabel::Phi:
      return "phi";
    case HeightLabel::TwoSqrtTwo:
      return "2sqrt2";
    case HeightLabel::LucasM:
      return "L_" + std::to_string(m);
    case HeightLabel::PellM:
      return "P_" + std::to_string(m);
  }
  return "?";
}

HeightEntry height_entry(HeightLabel label, unsigned m, int bits) {
  HeightEntry e;
  e.label = label;
  e.m = m;
  const VerifiedReal two = integer(2, bits);
  switch (label) {
    case HeightLabel::Alpha:
      e.log_abs = ver_log(golden_ratio(bits), bits);
      e.height = e.log_abs / two;
      break;
    case HeightLabel::Phi:
      e.log_abs = ver_log(silver_ratio(bits), bits);
      e.height = e.log_abs / two;
      break;
    case HeightLabel::TwoSqrtTwo:
      // minimal polynomial x^2 - 8, conjugates +-2 sqrt 2
      e.log_abs = ver_log(ver_sqrt(8, bits), bits);
      e.height = e.log_abs;
      break;
    case HeightLabel::LucasM:
      if (m < 2) throw std::invalid_argument("height_entry: m must be >= 2");
      e.log_abs = log_of_integer(lucas(m), bits);
      e.height = e.log_abs;
      break;
    case HeightLabel::PellM:
      if (m < 2) throw std::invalid_argument("height_entry: m must be >= 2");
      e.log_abs = log_of_integer(pell(m), bits);
      e.height = e.log_abs;
      break;
  }
  return e;
}

VerifiedReal clamp_weight(const VerifiedReal& natural) {
  return max(natural, VerifiedReal::from_rational(ratio_of(16, 100), natural.bits()));
}

VerifiedReal admissible_weight(const VerifiedReal& height, const VerifiedReal& log_abs, unsigned degree) {
  const int bits = height.bits();
  const VerifiedReal scaled = integer(static_cast<long>(degree), bits) * height;
  return clamp_weight(max(scaled, abs(log_abs)));
}

MatveevInstance matveev_instance(SequenceKind kind, unsigned m, const VerifiedReal& T, int bits) {
  MatveevInstance inst;
  inst.degree = 2;
  inst.T = T;
  const auto weight = [&](HeightLabel label, unsigned index) {
    const HeightEntry e = height_entry(label, index, bits);
    return admissible_weight(e.height, e.log_abs, inst.degree);
  };
  if (kind == SequenceKind::Lucas) {
    inst.num_logs = 2;
    inst.A = {weight(HeightLabel::Alpha, 0), weight(HeightLabel::LucasM, m)};
  } else {
    inst.num_logs = 3;
    inst.A = {weight(HeightLabel::TwoSqrtTwo, 0), weight(HeightLabel::Phi, 0),
              weight(HeightLabel::PellM, m)};
  }
  return inst;
}

VerifiedReal matveev_coefficient(const MatveevInstance& inst) {
  if (inst.A.size() != inst.num_logs) {
    throw std::invalid_argument("matveev_coefficient: need one weight per logarithm");
  }
  int bits = inst.T.bits();
  for (const auto& a : inst.A) bits = std::max(bits, a.bits());
  const long n = inst.num_logs;
  const long d = inst.degree;
  BigInt thirty_pow;
  mpz_ui_pow_ui(thirty_pow.get_mpz_t(), 30, static_cast<unsigned long>(n + 3));
  VerifiedReal c = rational(ratio_of(14, 10), bits) * VerifiedReal::from_integer(thirty_pow, bits);
  c = c * integer(n * n * n * n, bits) * ver_sqrt(n, bits);
  c = c * integer(d * d, bits) * (integer(1, bits) + ver_log(integer(d, bits), bits));
  for (const auto& a : inst.A) c = c * clamp_weight(a);
  return c;
}

mpq_class slack_factor(SequenceKind kind) {
  return kind == SequenceKind::Lucas ? ratio_of(10025, 10000) : ratio_of(100275, 100000);
}

VerifiedReal k_coefficient(SequenceKind kind, int bits) {
  const MatveevInstance inst = matveev_instance(kind, 2, integer(1, bits), bits);
  return matveev_coefficient(inst) / log_of_integer(sequence_term(kind, 2), bits);
}

VerifiedReal derive_k_bound(SequenceKind kind, const BigInt& r_bound, int bits) {
  const VerifiedReal one = integer(1, bits);
  const VerifiedReal slack_term = ver_log(rational(slack_factor(kind), bits), bits) /
                                  log_of_integer(sequence_term(kind, 2), bits);
  return k_coefficient(kind, bits) * (one + log_of_integer(2 * r_bound, bits)) + slack_term;
}

std::uint32_t trivial_r_floor(SequenceKind kind) {
  const BigInt w2 = sequence_term(kind, 2);
  const BigInt smallest = w2 * w2 * w2 + w2 * w2;
  std::uint32_t r = 1;
  while (sequence_term(kind, r) < smallest) ++r;
  return r;
}

ExponentBounds divisibility_bounds(SequenceKind kind, const BigInt& r_max, int bits) {
  if (r_max < 2) throw std::invalid_argument("divisibility_bounds: r_max must be >= 2");
  const VerifiedReal log_r = log_of_integer(r_max, bits);
  ExponentBounds out;
  if (kind == SequenceKind::Lucas) {
    const VerifiedReal log_alpha = log_base(kind, bits);
    // Largest m (resp. n) not certainly excluded, with the other at 2.
    const auto lhs = [&](long log_arg, long factor) {
      return ver_log(integer(log_arg, bits), bits) + integer(factor, bits) * log_alpha;
    };
    unsigned m = 2;
    while (!certainly_greater(lhs(m + 1, m), log_r)) ++m;
    unsigned n = 2;
    while (!certainly_greater(lhs(2, n), log_r)) ++n;
    out.m_max = m;
    out.n_max = n;
    return out;
  }
  const VerifiedReal m_limit = integer(2, bits) + log_r / log_base(kind, bits);
  const VerifiedReal n_limit = log_r / ver_log(integer(2, bits), bits);
  // m < m_limit: largest integer strictly below the upper endpoint.
  const BigInt m_max = ceil_of(m_limit.hi()) - 1;
  const BigInt n_max = floor_of(n_limit.hi());
  out.m_max = static_cast<unsigned>(m_max.get_ui());
  out.n_max = static_cast<unsigned>(n_max.get_ui());
  return out;
}

BigInt r_bound_from_exponents(SequenceKind kind, unsigned m_max, unsigned n_max, const BigInt& k_max) {
  const BigInt sum = n_max + k_max;
  if (kind == SequenceKind::Lucas) return 1 + BigInt(m_max + 1) * sum;
  return 2 + BigInt(m_max - 1) * sum;
}

BigInt solve_r_bound(SequenceKind kind, int bits) {
  BigInt lo = trivial_r_floor(kind);
  BigInt hi;
  mpz_ui_pow_ui(hi.get_mpz_t(), 10, 40);
  if (!r_feasible(kind, lo, bits) || r_feasible(kind, hi, bits)) {
    throw std::runtime_error("solve_r_bound: bisection bracket is not certified");
  }
  while (hi - lo > 1) {
    BigInt mid = (lo + hi) / 2;
    if (r_feasible(kind, mid, bits)) {
      lo = std::move(mid);
    } else {
      hi = std::move(mid);
    }
  }
  return lo;
}

std::vector<BoundSet> propagate_bounds(SequenceKind kind, int bits) {
  const ReferenceValues& ref = reference_values(kind);
  const auto stage_from_r = [&](const BigInt& r, std::string label) {
    BoundSet s;
    s.stage_label = std::move(label);
    s.bits = bits;
    s.r_max = r;
    s.k_max = ceil_of(derive_k_bound(kind, r, bits).hi());
    const ExponentBounds mn = divisibility_bounds(kind, r, bits);
    s.m_max = mn.m_max;
    s.n_max = mn.n_max;
    return s;
  };
  BoundSet independent = stage_from_r(solve_r_bound(kind, bits), "matveev");
  BoundSet replay = stage_from_r(ref.r_bound, "matveev-replay");
  BoundSet carried;
  carried.stage_label = "matveev-carried";
  carried.bits = bits;
  carried.r_max = max_of(independent.r_max, replay.r_max);
  carried.k_max = max_of(max_of(independent.k_max, replay.k_max), ref.k_bound);
  carried.m_max = std::max(independent.m_max, replay.m_max);
  carried.n_max = std::max(independent.n_max, replay.n_max);
  return {std::move(independent), std::move(replay), std::move(carried)};
}

bool legendre_precondition(unsigned n_max, int bits) {
  // 3^9 > (2.005 / log alpha)(n_max + 9); the left side triples per step
  // while the right side grows by less than a factor of two.
  const VerifiedReal rhs = rational(ratio_of(2005, 1000), bits) / log_base(SequenceKind::Lucas, bits) *
                           integer(static_cast<long>(n_max) + 9, bits);
  return certainly_greater(integer(19683, bits), rhs);
}

LegendreReduction legendre_reduce_lucas(unsigned m_max, unsigned n_max, const BigInt& k_max,
                                        const LegendreOptions& options) {
  if (m_max < 2) throw std::invalid_argument("legendre_reduce_lucas: m_max must be >= 2");
  const int start_bits = options.expansion.start_bits;
  if (!legendre_precondition(n_max, start_bits)) {
    throw std::runtime_error("legendre_reduce_lucas: L_m^k > (2.005/log alpha)(n+k) not certified for k >= 9");
  }
  LegendreReduction out;
  out.threshold = n_max + k_max;
  out.linear_offset = options.linear_offset == 0 ? n_max : options.linear_offset;
  out.rows.resize(m_max - 1);

  parallel_for(out.rows.size(), options.threads, [&](std::size_t i) {
    const unsigned m = static_cast<unsigned>(i) + 2;
    const BigInt lm = lucas(m);
    const RealSource gamma = [&lm](int bits) {
      return log_of_integer(lm, bits) / log_base(SequenceKind::Lucas, bits);
    };
    auto [cf, gate] = expand_until(gamma, out.threshold, options.expansion);

    LegendreRow row;
    row.m = m;
    row.index = gate.index;
    row.q = cf.convergents.back().q;
    row.max_quotient = gate.max_quotient;
    row.bits = cf.stable_at_bits;

    int bits = start_bits;
    for (int attempt = 0;; ++attempt, bits *= 2) {
      if (attempt > options.expansion.max_doublings) {
        throw PrecisionExhausted("legendre_reduce_lucas: undecided for m = " + std::to_string(m));
      }
      const VerifiedReal factor = rational(slack_factor(SequenceKind::Lucas), bits) *
                                  VerifiedReal::from_integer(gate.max_quotient + 2, bits) /
                                  log_base(SequenceKind::Lucas, bits);
      bool undecided = false;
      unsigned k = 9;
      for (;; ++k) {
        const VerifiedReal lhs = VerifiedReal::from_integer(power(lm, k), bits);
        const VerifiedReal rhs = factor * integer(static_cast<long>(out.linear_offset + k), bits);
        const Ordering cmp = ver_compare(lhs, rhs);
        if (cmp == Ordering::Greater) break;
        if (cmp == Ordering::Overlapping) {
          undecided = true;
          break;
        }
      }
      if (undecided) continue;
      // L_m^k / (c + k) increases with k, so every larger k is excluded too.
      row.k_bound = k - 1;
      row.bits = std::max(row.bits, bits);
      break;
    }
    out.rows[i] = std::move(row);
  });

  out.k_bound = 8;
  for (const auto& row : out.rows) out.k_bound = std::max(out.k_bound, row.k_bound);
  return out;
}

SlackCheck certify_slack(SequenceKind kind, int bits) {
  SlackCheck out;
  const BigInt w2 = sequence_term(kind, 2);
  const VerifiedReal excess = rational(slack_factor(kind) - 1, bits);
  out.allowance = excess * VerifiedReal::from_integer(w2 * w2, bits);
  if (kind == SequenceKind::Lucas) {
    out.tail = pow(abs(golden_conjugate(bits)), trivial_r_floor(kind));
  } else {
    out.tail = pow(abs(silver_conjugate(bits)), trivial_r_floor(kind)) / ver_sqrt(8, bits);
  }
  out.certified = certainly_less(out.tail, out.allowance);
  return out;
}

namespace {

// a + b sqrt(d), optionally over 2.
struct QuadraticInteger {
  BigInt a;
  BigInt b;
};

QuadraticInteger multiply(const QuadraticInteger& x, const QuadraticInteger& y, long d) {
  return {x.a * y.a + d * x.b * y.b, x.a * y.b + x.b * y.a};
}

// alpha^r = (L_r + F_r sqrt 5) / 2 with F_r != 0, and
// phi^r = phi P_r + P_{r-1} = (P_r + P_{r-1}) + P_r sqrt 2 with P_r != 0.
bool check_power_identity(SequenceKind kind, unsigned max_r) {
  if (kind == SequenceKind::Lucas) {
    // Track 2 alpha^r = a + b sqrt 5 as integers: 2 alpha = 1 + sqrt 5.
    QuadraticInteger twice{2, 0};
    for (unsigned r = 1; r <= max_r; ++r) {
      QuadraticInteger next = multiply(twice, {1, 1}, 5);
      next.a /= 2;
      next.b /= 2;
      twice = next;
      if (twice.a != lucas(r) || twice.b == 0) return false;
    }
    return true;
  }
  QuadraticInteger power{1, 0};
  for (unsigned r = 1; r <= max_r; ++r) {
    power = multiply(power, {1, 1}, 2);
    const BigInt pr = pell(r);
    if (power.a != pr + pell(r - 1) || power.b != pr || pr == 0) return false;
  }
  return true;
}

}  // namespace

GuardRecord nonvanishing_guard(SequenceKind kind, unsigned m_max, unsigned n_max, unsigned k_max) {
  GuardRecord g;
  g.kind = kind;
  if (kind == SequenceKind::Lucas) {
    g.justification =
        "Delta = alpha^r L_m^-(n+k) - 1 = 0 forces alpha^r = L_m^(n+k) rational; "
        "alpha^r = (L_r + F_r sqrt5)/2 with F_r != 0 is irrational for r >= 1";
  } else {
    g.justification =
        "Delta_1 = 0 forces phi^r = 2 sqrt2 P_m^(n+k), so phi^(2r) is rational; "
        "phi^r = phi P_r + P_(r-1) with P_r != 0 shows phi^(2r) is irrational for r >= 1";
  }
  g.identity_checked = check_power_identity(kind, 64);
  const SequenceTable table(kind, 64);
  for (unsigned m = 2; m <= m_max; ++m) {
    const BigInt base = sequence_term(kind, m);
    for (unsigned n = 2; n <= n_max; ++n) {
      for (unsigned k = 1; k <= k_max; ++k) {
        ++g.tuples_checked;
        if (table.index_of(power(base, n + k)).has_value()) ++g.violations;
      }
    }
  }
  return g;
}

}  // namespace dforge
