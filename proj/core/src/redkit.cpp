#include "dforge/redkit.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "dforge/parallel.hpp"

namespace dforge {

namespace {

VerifiedReal integer(long v, int bits) { return VerifiedReal::exact(v, bits); }

VerifiedReal exclusion_of(const VerifiedReal& C, const BigInt& q, const VerifiedReal& eps,
                          const VerifiedReal& F, int bits) {
  const VerifiedReal arg = C * VerifiedReal::from_integer(q, bits) / eps;
  return ver_log(arg, bits) / ver_log(F, bits);
}

unsigned largest_surviving(const VerifiedReal& exclusion) {
  const BigInt limit = ceil_of(exclusion.hi()) - 1;
  return limit < 0 ? 0U : static_cast<unsigned>(limit.get_ui());
}

enum class Scan { Found, NeedPrecision, Exhausted };

}  // namespace

VerifiedReal nearest_integer_distance(const VerifiedReal& x) {
  // The distance is a tent function: zero at integers, 1/2 at half-integers
  // and monotone in between, so its range over [lo, hi] is fixed by the
  // endpoints plus any integer or half-integer inside.
  const int bits = x.bits();
  const mpq_class lo = x.lo_rational();
  const mpq_class hi = x.hi_rational();
  const mpq_class one_half = ratio_of(1, 2);
  const auto floor_q = [](const mpq_class& v) {
    BigInt f;
    mpz_fdiv_q(f.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return f;
  };
  const auto ceil_q = [](const mpq_class& v) {
    BigInt c;
    mpz_cdiv_q(c.get_mpz_t(), v.get_num_mpz_t(), v.get_den_mpz_t());
    return c;
  };
  const auto distance = [&](const mpq_class& t) {
    const mpq_class d = t - mpq_class(floor_q(t + one_half));
    return d < 0 ? mpq_class(-d) : d;
  };
  const mpq_class d_lo = distance(lo);
  const mpq_class d_hi = distance(hi);
  mpq_class lower = d_lo < d_hi ? d_lo : d_hi;
  mpq_class upper = d_lo < d_hi ? d_hi : d_lo;
  if (mpq_class(ceil_q(lo)) <= hi) lower = 0;
  if (mpq_class(ceil_q(lo - one_half)) <= hi - one_half) upper = one_half;
  return hull(VerifiedReal::from_rational(lower, bits), VerifiedReal::from_rational(upper, bits));
}

ReductionInstance pell_reduction_instance(unsigned m, const BigInt& M) {
  ReductionInstance inst;
  inst.m = m;
  inst.M = M;
  const BigInt pm = pell(m);
  const auto log_phi = [](int bits) { return ver_log(silver_ratio(bits), bits); };
  inst.delta = [pm, log_phi](int bits) {
    return ver_log(VerifiedReal::from_integer(pm, bits), bits) / log_phi(bits);
  };
  inst.mu = [log_phi](int bits) { return ver_log(ver_sqrt(8, bits), bits) / log_phi(bits); };
  inst.C = [log_phi](int bits) {
    return VerifiedReal::from_rational(ratio_of(100275, 100000), bits) / log_phi(bits);
  };
  inst.F = [](int bits) { return integer(2, bits); };
  return inst;
}

ReductionResult reduce(const ReductionInstance& inst, const ReductionConfig& config) {
  const int start = config.expansion.start_bits;
  const VerifiedReal zero = integer(0, start);
  if (inst.M < 1) throw std::invalid_argument("reduce: M must be >= 1");
  if (!certainly_greater(inst.C(start), zero)) throw std::invalid_argument("reduce: C > 0 not certified");
  if (!certainly_greater(inst.F(start), integer(1, start))) {
    throw std::invalid_argument("reduce: F > 1 not certified");
  }
  const BigInt six_m = 6 * inst.M;

  int bits = start;
  for (int attempt = 0; attempt <= config.expansion.max_doublings; ++attempt, bits *= 2) {
    const VerifiedReal delta = inst.delta(bits);
    const VerifiedReal mu = inst.mu(bits);
    const VerifiedReal M = VerifiedReal::from_integer(inst.M, bits);
    const std::vector<BigInt> quotients = certified_quotients(delta, config.max_convergents);
    const std::vector<Convergent> convs = convergents_of(quotients);

    Scan state = quotients.size() >= config.max_convergents ? Scan::Exhausted : Scan::NeedPrecision;
    ReductionResult result;
    for (std::size_t t = 0; t < convs.size(); ++t) {
      const BigInt& q = convs[t].q;
      if (q <= six_m) continue;
      const VerifiedReal qv = VerifiedReal::from_integer(q, bits);
      const VerifiedReal eps = nearest_integer_distance(mu * qv) - M * nearest_integer_distance(delta * qv);
      const Ordering sign = ver_compare(eps, zero);
      if (sign == Ordering::Greater) {
        result.m = inst.m;
        result.index = t;
        result.q = q;
        result.epsilon = eps;
        result.bits = bits;
        state = Scan::Found;
        break;
      }
      if (sign == Ordering::Overlapping) {
        state = Scan::NeedPrecision;
        break;
      }
      // eps certainly <= 0: skip to the next convergent.
    }
    if (state == Scan::Found) {
      result.exclusion = exclusion_of(inst.C(bits), result.q, result.epsilon, inst.F(bits), bits);
      result.k_bound = largest_surviving(result.exclusion);
      return result;
    }
    if (state == Scan::Exhausted) break;
  }
  throw std::runtime_error("reduce: no convergent with q > 6M and eps > 0 for m = " + std::to_string(inst.m));
}

ReductionPass pell_reduction_pass(unsigned m_max, const BigInt& M, unsigned threads,
                                  const ReductionConfig& config) {
  if (m_max < 2) throw std::invalid_argument("pell_reduction_pass: m_max must be >= 2");
  ReductionPass pass;
  pass.M = M;
  pass.rows.resize(m_max - 1);
  parallel_for(pass.rows.size(), threads, [&](std::size_t i) {
    pass.rows[i] = reduce(pell_reduction_instance(static_cast<unsigned>(i) + 2, M), config);
  });

  const ReductionResult* widest = &pass.rows.front();
  const ReductionResult* thinnest = &pass.rows.front();
  for (const auto& row : pass.rows) {
    if (row.q > widest->q) widest = &row;
    if (mpfr_less_p(row.epsilon.lo().get(), thinnest->epsilon.lo().get())) thinnest = &row;
  }
  pass.max_q = widest->q;
  pass.max_q_m = widest->m;
  pass.max_q_index = widest->index;
  pass.min_epsilon = thinnest->epsilon;
  pass.min_epsilon_m = thinnest->m;

  int bits = config.expansion.start_bits;
  for (const auto& row : pass.rows) bits = std::max(bits, row.bits);
  const ReductionInstance reference = pell_reduction_instance(2, M);
  // Only the lower end of the smallest epsilon matters for an upper bound.
  const VerifiedReal eps_floor = VerifiedReal::from_bounds(pass.min_epsilon.lo(), pass.min_epsilon.lo(), bits);
  pass.exclusion = exclusion_of(reference.C(bits), pass.max_q, eps_floor, reference.F(bits), bits);
  pass.k_bound = largest_surviving(pass.exclusion);
  for (const auto& row : pass.rows) pass.k_bound = std::max(pass.k_bound, row.k_bound);
  return pass;
}

}  // namespace dforge
