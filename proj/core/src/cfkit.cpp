#include "dforge/cfkit.hpp"

#include <algorithm>
#include <string>

namespace dforge {

namespace {

BigInt floor_div(const BigInt& num, const BigInt& den) {
  BigInt q;
  mpz_fdiv_q(q.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return q;
}

}  // namespace

std::vector<BigInt> certified_quotients(const VerifiedReal& x, std::size_t max_terms) {
  // Both endpoints are run through Euclid side by side as num/den pairs.
  // Between steps the enclosure of the complete quotient is
  // [lo_num/lo_den, hi_num/hi_den]; taking reciprocals swaps the ends.
  mpq_class lo = x.lo_rational();
  mpq_class hi = x.hi_rational();
  BigInt lo_num = lo.get_num();
  BigInt lo_den = lo.get_den();
  BigInt hi_num = hi.get_num();
  BigInt hi_den = hi.get_den();

  std::vector<BigInt> out;
  while (out.size() < max_terms) {
    BigInt a = floor_div(lo_num, lo_den);
    if (a != floor_div(hi_num, hi_den)) break;
    out.push_back(a);
    BigInt lo_rem = lo_num - a * lo_den;
    BigInt hi_rem = hi_num - a * hi_den;
    // A zero remainder at the lower end leaves the next quotient unbounded.
    if (lo_rem == 0 || hi_rem == 0) break;
    // new lo = 1 / (hi - a) = hi_den / hi_rem, new hi = 1 / (lo - a).
    BigInt new_lo_num = hi_den;
    BigInt new_lo_den = hi_rem;
    BigInt new_hi_num = lo_den;
    BigInt new_hi_den = lo_rem;
    lo_num = std::move(new_lo_num);
    lo_den = std::move(new_lo_den);
    hi_num = std::move(new_hi_num);
    hi_den = std::move(new_hi_den);
  }
  return out;
}

std::vector<Convergent> convergents_of(const std::vector<BigInt>& quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  BigInt p_prev = 1, q_prev = 0;  // index -1
  BigInt p_prev2 = 0, q_prev2 = 1;  // index -2
  for (const BigInt& a : quotients) {
    BigInt p = a * p_prev + p_prev2;
    BigInt q = a * q_prev + q_prev2;
    p_prev2 = std::move(p_prev);
    q_prev2 = std::move(q_prev);
    p_prev = p;
    q_prev = q;
    out.push_back({std::move(p), std::move(q)});
  }
  return out;
}

ContinuedFraction expand_while(const RealSource& x,
                               const std::function<bool(const ContinuedFraction&)>& done,
                               const ExpansionConfig& config) {
  int bits = config.start_bits;
  for (int attempt = 0; attempt <= config.max_doublings; ++attempt, bits *= 2) {
    const std::vector<BigInt> all = certified_quotients(x(bits), config.max_terms);
    const std::vector<Convergent> convs = convergents_of(all);
    ContinuedFraction cf;
    cf.stable_at_bits = bits;
    bool found = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      cf.quotients.push_back(all[i]);
      cf.convergents.push_back(convs[i]);
      if (done(cf)) {
        found = true;
        break;
      }
    }
    if (!found) {
      if (all.size() >= config.max_terms) {
        throw PrecisionExhausted("continued fraction: term cap of " +
                                 std::to_string(config.max_terms) + " reached before the stop condition");
      }
      continue;
    }
    const std::vector<BigInt> witness = certified_quotients(x(2 * bits), config.max_terms);
    if (witness.size() < cf.quotients.size() ||
        !std::equal(cf.quotients.begin(), cf.quotients.end(), witness.begin())) {
      throw PrecisionExhausted("continued fraction: quotients changed under precision doubling at " +
                               std::to_string(bits) + " bits");
    }
    return cf;
  }
  throw PrecisionExhausted("continued fraction: expansion did not stabilise within " +
                           std::to_string(config.max_doublings) +
                           " precision doublings (input may be rational)");
}

std::pair<ContinuedFraction, LegendreGate> expand_until(const RealSource& x, const BigInt& threshold,
                                                        const ExpansionConfig& config) {
  if (threshold < 1) throw std::invalid_argument("expand_until: threshold must be >= 1");
  ContinuedFraction cf = expand_while(
      x, [&](const ContinuedFraction& prefix) { return prefix.convergents.back().q > threshold; },
      config);
  LegendreGate gate;
  gate.threshold = threshold;
  gate.index = cf.quotients.size() - 1;
  gate.max_quotient = *std::max_element(cf.quotients.begin(), cf.quotients.end());
  return {std::move(cf), std::move(gate)};
}

bool legendre_is_convergent(const RealSource& x, const BigInt& p, const BigInt& q,
                            const ExpansionConfig& config) {
  if (q < 1) throw std::invalid_argument("legendre_is_convergent: q must be >= 1");
  int bits = config.start_bits;
  for (int attempt = 0; attempt <= config.max_doublings; ++attempt, bits *= 2) {
    const VerifiedReal distance = abs(x(bits) - VerifiedReal::from_rational(ratio_of(p, q), bits));
    const VerifiedReal limit = VerifiedReal::from_rational(ratio_of(1, 2 * q * q), bits);
    switch (ver_compare(distance, limit)) {
      case Ordering::Less:
        return true;
      case Ordering::Greater:
        return false;
      case Ordering::Overlapping:
        break;
    }
  }
  throw PrecisionExhausted("legendre_is_convergent: undecided at the precision cap");
}

VerifiedReal legendre_lower_bound(const LegendreGate& gate, const BigInt& q, int bits) {
  if (q < 1) throw std::invalid_argument("legendre_lower_bound: q must be >= 1");
  if (q > gate.threshold) {
    throw std::invalid_argument("legendre_lower_bound: q exceeds the threshold S");
  }
  const BigInt den = (gate.max_quotient + 2) * q * q;
  return VerifiedReal::from_rational(ratio_of(1, den), bits);
}

}  // namespace dforge
