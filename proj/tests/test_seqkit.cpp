#include <random>

#include "doctest.h"
#include "dforge/realkit.hpp"
#include "dforge/seqkit.hpp"

using namespace dforge;

TEST_SUITE("seqkit") {
TEST_CASE("lucas and pell initial terms") {
  CHECK(lucas(0) == 2);
  CHECK(lucas(1) == 1);
  CHECK(lucas(2) == 3);
  CHECK(lucas(8) == 47);
  CHECK(pell(0) == 0);
  CHECK(pell(2) == 2);
  CHECK(pell(4) == 12);
  CHECK(pell(12) == 13860);
  CHECK(sequence_term(SequenceKind::Lucas, 12) == 322);
}

TEST_CASE("recurrences hold far out") {
  for (std::uint32_t t = 2; t <= 300; ++t) {
    CHECK(lucas(t) == lucas(t - 1) + lucas(t - 2));
    CHECK(pell(t) == 2 * pell(t - 1) + pell(t - 2));
  }
}

TEST_CASE("kind names") {
  CHECK(parse_sequence_kind("lucas") == SequenceKind::Lucas);
  CHECK(parse_sequence_kind("pell") == SequenceKind::Pell);
  CHECK_FALSE(parse_sequence_kind("fibonacci").has_value());
  CHECK(to_string(SequenceKind::Pell) == "pell");
}

TEST_CASE("exact_valuation") {
  CHECK(exact_valuation(3, 36) == 2);
  CHECK(exact_valuation(2, 12) == 2);
  CHECK(exact_valuation(3, 18) == 2);
  CHECK(exact_valuation(7, 5) == 0);
  CHECK(exact_valuation(6, 36) == 2);
  CHECK_THROWS_AS(exact_valuation(1, 36), std::invalid_argument);
  CHECK_THROWS_AS(exact_valuation(0, 36), std::invalid_argument);
  CHECK_THROWS_AS(exact_valuation(3, 0), std::invalid_argument);
}

TEST_CASE("exact_valuation of b^e c with gcd(b, c) = 1") {
  std::mt19937_64 rng(20240601);
  std::uniform_int_distribution<unsigned long> base(2, 60), cofactor(1, 5000), exponent(0, 40);
  int checked = 0;
  while (checked < 500) {
    const BigInt b = base(rng);
    const BigInt c = cofactor(rng);
    if (gcd(b, c) != 1) continue;
    const unsigned long e = exponent(rng);
    BigInt value;
    mpz_pow_ui(value.get_mpz_t(), b.get_mpz_t(), e);
    value *= c;
    REQUIRE(exact_valuation(b, value) == e);
    ++checked;
  }
}

TEST_CASE("is_member examples") {
  CHECK(is_member(47, SequenceKind::Lucas) == 8u);
  CHECK(is_member(12, SequenceKind::Pell) == 4u);
  CHECK_FALSE(is_member(13, SequenceKind::Lucas).has_value());
  CHECK(is_member(1, SequenceKind::Lucas) == 1u);
  CHECK(is_member(2, SequenceKind::Lucas) == 0u);
  CHECK(is_member(0, SequenceKind::Pell) == 0u);
  CHECK_FALSE(is_member(0, SequenceKind::Lucas).has_value());
  CHECK_FALSE(is_member(3, SequenceKind::Pell).has_value());
}

TEST_CASE("is_member round trip") {
  for (std::uint32_t t = 2; t <= 200; ++t) REQUIRE(is_member(lucas(t), SequenceKind::Lucas) == t);
  for (std::uint32_t t = 0; t <= 200; ++t) REQUIRE(is_member(pell(t), SequenceKind::Pell) == t);
}

TEST_CASE("SequenceTable lookups agree with is_member") {
  for (SequenceKind kind : {SequenceKind::Lucas, SequenceKind::Pell}) {
    const SequenceTable table(kind, 60);
    CHECK(table.max_index() == 60);
    for (std::uint32_t t = 0; t <= 80; ++t) {
      const BigInt v = sequence_term(kind, t);
      CHECK(table.index_of(v) == is_member(v, kind));
      CHECK(table.index_of(v + 1) == is_member(v + 1, kind));
    }
  }
}

TEST_CASE("satisfies_equation") {
  CHECK(satisfies_equation(SequenceKind::Pell, {4, 2, 2, 1}));
  CHECK_FALSE(satisfies_equation(SequenceKind::Pell, {5, 2, 2, 1}));
  CHECK_FALSE(satisfies_equation(SequenceKind::Lucas, {8, 2, 2, 1}));
}

TEST_CASE("Binet bounds for t <= 200") {
  const int bits = 256;
  const VerifiedReal alpha = golden_ratio(bits);
  const VerifiedReal phi = silver_ratio(bits);
  for (std::uint32_t t = 1; t <= 200; ++t) {
    const VerifiedReal L = VerifiedReal::from_integer(lucas(t), bits);
    const VerifiedReal P = VerifiedReal::from_integer(pell(t), bits);
    // alpha^(t-1) <= L_t < alpha^(t+1); equality only at t = 1.
    if (t == 1) {
      CHECK(ver_compare(pow(alpha, 0), L) == Ordering::Overlapping);
    } else {
      CHECK(certainly_less(pow(alpha, t - 1), L));
    }
    CHECK(certainly_less(L, pow(alpha, t + 1)));
    // phi^(t-2) < P_t <= phi^(t-1); equality only at t = 1.
    if (t == 1) {
      CHECK(certainly_less(VerifiedReal::exact(1, bits) / phi, P));
      CHECK(ver_compare(P, pow(phi, 0)) == Ordering::Overlapping);
    } else {
      CHECK(certainly_less(pow(phi, t - 2), P));
      CHECK(certainly_less(P, pow(phi, t - 1)));
    }
  }
}

TEST_CASE("exact divisibility lemma spot check") {
  // If W_m^n exactly divides W_r then W_m^(n-1) exactly divides r / m.
  for (SequenceKind kind : {SequenceKind::Lucas, SequenceKind::Pell}) {
    int hits = 0;
    for (std::uint32_t m = 2; m <= 8; ++m) {
      const BigInt wm = sequence_term(kind, m);
      for (std::uint32_t r = m; r <= 500; r += m) {
        const std::uint32_t n = exact_valuation(wm, sequence_term(kind, r));
        if (n < 2 || n > 3) continue;
        CHECK(exact_valuation(wm, r / m) == n - 1);
        ++hits;
      }
    }
    CHECK(hits > 0);
  }
}
}
