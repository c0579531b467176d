#include "doctest.h"
#include "dforge/cfkit.hpp"

using namespace dforge;

namespace {

RealSource alpha_source() {
  return [](int bits) { return golden_ratio(bits); };
}
RealSource phi_source() {
  return [](int bits) { return silver_ratio(bits); };
}
RealSource sqrt_source(long n) {
  return [n](int bits) { return ver_sqrt(n, bits); };
}
RealSource log_ratio_source(const BigInt& value, RealSource base) {
  return [value, base](int bits) {
    return ver_log(VerifiedReal::from_integer(value, bits), bits) / ver_log(base(bits), bits);
  };
}

ContinuedFraction expand_terms(const RealSource& x, std::size_t terms) {
  return expand_while(x, [terms](const ContinuedFraction& cf) { return cf.quotients.size() >= terms; });
}

void check_structure(const ContinuedFraction& cf, const RealSource& x) {
  const auto& c = cf.convergents;
  REQUIRE(c.size() == cf.quotients.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    CHECK(gcd(c[i].p, c[i].q) == 1);
    if (i >= 1) {
      CHECK(cf.quotients[i] >= 1);
      CHECK(c[i].q > c[i - 1].q - (i == 1 ? 1 : 0));
      // p_i q_(i-1) - p_(i-1) q_i = (-1)^(i-1)
      const BigInt det = c[i].p * c[i - 1].q - c[i - 1].p * c[i].q;
      CHECK(det == (i % 2 == 1 ? 1 : -1));
    }
  }
  // x lies strictly between consecutive convergents.
  const VerifiedReal value = x(2 * cf.stable_at_bits);
  for (std::size_t i = 0; i + 1 < c.size(); ++i) {
    const VerifiedReal a = VerifiedReal::from_rational(ratio_of(c[i].p, c[i].q), 2 * cf.stable_at_bits);
    const VerifiedReal b = VerifiedReal::from_rational(ratio_of(c[i + 1].p, c[i + 1].q), 2 * cf.stable_at_bits);
    const VerifiedReal lo = i % 2 == 0 ? a : b;
    const VerifiedReal hi = i % 2 == 0 ? b : a;
    CHECK(certainly_less(lo, value));
    CHECK(certainly_less(value, hi));
  }
}

void check_stable(const RealSource& x, const ContinuedFraction& cf) {
  const auto doubled = certified_quotients(x(2 * cf.stable_at_bits), cf.quotients.size());
  REQUIRE(doubled.size() >= cf.quotients.size());
  for (std::size_t i = 0; i < cf.quotients.size(); ++i) CHECK(doubled[i] == cf.quotients[i]);
}

}  // namespace

TEST_SUITE("cfkit") {
TEST_CASE("golden ratio to the first denominator above 100") {
  const auto [cf, gate] = expand_until(alpha_source(), 100);
  for (const auto& a : cf.quotients) CHECK(a == 1);
  CHECK(cf.convergents.back().q == 144);
  CHECK(gate.max_quotient == 1);
  CHECK(cf.convergents[gate.index].q == 144);
  CHECK(cf.convergents[gate.index - 1].q <= 100);
  BigInt f0 = 1, f1 = 1;
  for (const auto& c : cf.convergents) {
    CHECK(c.q == f0);
    const BigInt next = f0 + f1;
    f0 = f1;
    f1 = next;
  }
  check_structure(cf, alpha_source());
}

TEST_CASE("silver ratio to the first denominator above 100") {
  const auto [cf, gate] = expand_until(phi_source(), 100);
  for (const auto& a : cf.quotients) CHECK(a == 2);
  CHECK(cf.convergents.back().q == 169);
  CHECK(gate.max_quotient == 2);
  check_structure(cf, phi_source());
}

TEST_CASE("log P_12 / log phi reaches q_15 = 706130") {
  const RealSource delta = log_ratio_source(pell(12), phi_source());
  const auto [cf, gate] = expand_until(delta, 6 * 121);
  CHECK(cf.convergents.back().q > 6 * 121);
  CHECK(cf.convergents[gate.index - 1].q <= 6 * 121);
  // q_15 lies beyond the first denominator above 6 * 121; read it directly.
  const ContinuedFraction deep = expand_terms(delta, 16);
  CHECK(deep.convergents[15].q == 706130);
  check_structure(deep, delta);
  check_stable(delta, deep);
}

TEST_CASE("legendre_is_convergent examples") {
  // |alpha - 1| = 0.618... > 1/2 and |alpha - 3/2| = 0.118... < 1/8.
  CHECK_FALSE(legendre_is_convergent(alpha_source(), 1, 1));
  CHECK(legendre_is_convergent(alpha_source(), 3, 2));
  CHECK(legendre_is_convergent(alpha_source(), 13, 8));
  const ContinuedFraction cf = expand_terms(alpha_source(), 8);
  bool found = false;
  for (const auto& c : cf.convergents) found = found || (c.p == 13 && c.q == 8);
  CHECK(found);
  CHECK_THROWS_AS(legendre_is_convergent(alpha_source(), 1, 0), std::invalid_argument);
}

TEST_CASE("legendre convergence implies membership among convergents") {
  const RealSource x = sqrt_source(7);
  const ContinuedFraction cf = expand_terms(x, 20);
  for (BigInt q = 1; q <= 300; ++q) {
    for (const BigInt& p : {BigInt(q * 2), BigInt(q * 2 + q / 2), BigInt(q * 3 - 1)}) {
      if (gcd(p, q) != 1 || !legendre_is_convergent(x, p, q)) continue;
      bool found = false;
      for (const auto& c : cf.convergents) found = found || (c.p == p && c.q == q);
      CHECK(found);
    }
  }
  // Of any two consecutive convergents at least one passes the test.
  for (std::size_t i = 0; i + 1 < 12; ++i) {
    CHECK((legendre_is_convergent(x, cf.convergents[i].p, cf.convergents[i].q) ||
           legendre_is_convergent(x, cf.convergents[i + 1].p, cf.convergents[i + 1].q)));
  }
}

TEST_CASE("legendre_lower_bound examples") {
  const auto [alpha_cf, alpha_gate] = expand_until(alpha_source(), 1000);
  CHECK(legendre_lower_bound(alpha_gate, 10).contains(mpq_class(1, 300)));
  const auto [phi_cf, phi_gate] = expand_until(phi_source(), 1000);
  CHECK(legendre_lower_bound(phi_gate, 10).contains(mpq_class(1, 400)));
  CHECK_THROWS_AS(legendre_lower_bound(phi_gate, 1001), std::invalid_argument);

  const BigInt S = BigInt(61) + BigInt("171000000000");
  const RealSource gamma2 = log_ratio_source(lucas(2), alpha_source());
  const auto [cf, gate] = expand_until(gamma2, S);
  CHECK(gate.threshold == S);
  CHECK(cf.convergents[gate.index].q > S);
  CHECK(cf.convergents[gate.index - 1].q <= S);
  BigInt J = 0;
  for (std::size_t i = 0; i <= gate.index; ++i) J = std::max(J, cf.quotients[i]);
  CHECK(gate.max_quotient == J);
  CHECK(J == 49);
  const VerifiedReal bound = legendre_lower_bound(gate, 1000);
  CHECK(bound.contains(ratio_of(1, (J + 2) * 1000000)));
}

TEST_CASE("periodic surds match their closed-form periods for 50 terms") {
  struct Surd {
    RealSource x;
    long a0;
    std::vector<long> period;
  };
  const std::vector<Surd> surds = {
      {alpha_source(), 1, {1}}, {phi_source(), 2, {2}}, {sqrt_source(2), 1, {2}}, {sqrt_source(5), 2, {4}},
      {sqrt_source(7), 2, {1, 1, 1, 4}}};
  for (const auto& s : surds) {
    const ContinuedFraction cf = expand_terms(s.x, 50);
    REQUIRE(cf.quotients.size() == 50);
    CHECK(cf.quotients[0] == s.a0);
    for (std::size_t i = 1; i < 50; ++i) CHECK(cf.quotients[i] == s.period[(i - 1) % s.period.size()]);
    check_stable(s.x, cf);
    check_structure(cf, s.x);
  }
}

TEST_CASE("expansions of every gamma_m used downstream are stable") {
  const BigInt S = BigInt(61) + BigInt("171000000000");
  for (std::uint32_t m = 2; m <= 55; ++m) {
    const RealSource gamma = log_ratio_source(lucas(m), alpha_source());
    const auto [cf, gate] = expand_until(gamma, S);
    check_stable(gamma, cf);
    const auto& c = cf.convergents;
    for (std::size_t i = 1; i < c.size(); ++i) {
      REQUIRE(c[i].p * c[i - 1].q - c[i - 1].p * c[i].q == (i % 2 == 1 ? 1 : -1));
    }
  }
}

TEST_CASE("a rational input is flagged, never silently truncated") {
  const RealSource rational = [](int bits) { return VerifiedReal::from_rational(mpq_class(355, 113), bits); };
  ExpansionConfig config;
  config.max_doublings = 3;
  CHECK_THROWS_AS(expand_until(rational, BigInt("1000000"), config), PrecisionExhausted);
}

TEST_CASE("certified quotients stop where the endpoints disagree") {
  const VerifiedReal wide = hull(VerifiedReal::from_rational(mpq_class(3, 2)), VerifiedReal::from_rational(mpq_class(8, 5)));
  const auto q = certified_quotients(wide, 10);
  REQUIRE(q.size() == 1);
  CHECK(q[0] == 1);
  CHECK_THROWS_AS(expand_until(alpha_source(), 0), std::invalid_argument);
}
}
