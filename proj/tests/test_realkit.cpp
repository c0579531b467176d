#include <random>

#include "doctest.h"
#include "dforge/realkit.hpp"
#include "oracle/oracle.hpp"

using namespace dforge;

namespace {

// hi - lo <= 2^-bits * max(1, |lo|).
bool meets_width(const VerifiedReal& x, int bits) {
  const mpq_class lo = x.lo_rational();
  const mpq_class scale = std::max(mpq_class(1), mpq_class(abs(lo)));
  mpz_class den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), bits);
  return x.hi_rational() - lo <= scale / mpq_class(den);
}

bool overlaps_oracle(const VerifiedReal& x, const oracle::Enclosure& o) {
  return oracle::overlaps(o, x.lo_rational(), x.hi_rational());
}

mpq_class random_rational(std::mt19937_64& rng, bool positive) {
  std::uniform_int_distribution<long> num(positive ? 1 : -1000000, 1000000);
  std::uniform_int_distribution<long> den(1, 100000);
  mpq_class q(num(rng), den(rng));
  q.canonicalize();
  if (positive && q == 0) q = 1;
  return q;
}

}  // namespace

TEST_SUITE("realkit") {
TEST_CASE("ver_sqrt examples") {
  const VerifiedReal two = ver_sqrt(4, 64);
  CHECK(two.contains(mpq_class(2)));
  const VerifiedReal s5 = ver_sqrt(5, 64);
  CHECK(overlaps_oracle(s5, oracle::sqrt_of(5, 256)));
  CHECK(meets_width(s5, 64));
  const VerifiedReal s2 = ver_sqrt(2, 64);
  CHECK(overlaps_oracle(s2, oracle::sqrt_of(2, 256)));
  CHECK(s2.contains(oracle::canonical(mpq_class(14142135, 10000000))) == false);
  CHECK(meets_width(s2, 64));
}

TEST_CASE("ver_log examples") {
  CHECK(ver_log(VerifiedReal::exact(1, 96), 96).contains(mpq_class(0)));

  const VerifiedReal log_alpha = ver_log(golden_ratio(96), 96);
  CHECK(overlaps_oracle(log_alpha, oracle::log_of(oracle::golden_ratio(400), 400)));
  CHECK(log_alpha.contains(oracle::canonical(mpq_class(4812118250596, 10000000000000))) == false);
  CHECK(certainly_less(VerifiedReal::from_rational(mpq_class(4812118250, 10000000000)), log_alpha));
  CHECK(meets_width(log_alpha, 96));

  const VerifiedReal log_phi = ver_log(silver_ratio(96), 96);
  CHECK(overlaps_oracle(log_phi, oracle::log_of(oracle::silver_ratio(400), 400)));
  CHECK(meets_width(log_phi, 96));

  CHECK_THROWS_AS(ver_log(VerifiedReal::exact(0)), std::domain_error);
  CHECK_THROWS_AS(ver_log(VerifiedReal::exact(-3)), std::domain_error);
  CHECK_THROWS_AS(ver_log(hull(VerifiedReal::exact(-1), VerifiedReal::exact(1))), std::domain_error);
}

TEST_CASE("ver_arith examples") {
  const VerifiedReal three = ver_arith(VerifiedReal::exact(1), VerifiedReal::exact(2), ArithOp::Add);
  CHECK(three.is_point());
  CHECK(three.contains(mpq_class(3)));

  const VerifiedReal x = hull(VerifiedReal::from_rational(mpq_class(2, 5)), VerifiedReal::from_rational(mpq_class(1, 2)));
  const VerifiedReal y = ver_arith(x, VerifiedReal::exact(2), ArithOp::Mul);
  CHECK(y.contains(mpq_class(4, 5)));
  CHECK(y.contains(mpq_class(1)));
  CHECK(y.hi_rational() - y.lo_rational() < mpq_class(21, 100));

  const VerifiedReal ratio = ver_arith(ver_log(golden_ratio(96), 96), ver_log(VerifiedReal::exact(2, 96), 96),
                                       ArithOp::Div);
  const oracle::Enclosure expected =
      oracle::divide(oracle::log_of(oracle::golden_ratio(400), 400), oracle::log_of(mpq_class(2), 400));
  CHECK(overlaps_oracle(ratio, expected));
  CHECK(ratio.approx() == doctest::Approx(0.69424).epsilon(1e-5));

  CHECK_THROWS_AS(ver_arith(VerifiedReal::exact(1), VerifiedReal::exact(0), ArithOp::Div), std::domain_error);
  CHECK_THROWS_AS(ver_arith(VerifiedReal::exact(1), hull(VerifiedReal::exact(-1), VerifiedReal::exact(1)),
                            ArithOp::Div),
                  std::domain_error);
}

TEST_CASE("ver_compare examples") {
  const auto interval = [](long lo, long hi) { return hull(VerifiedReal::exact(lo), VerifiedReal::exact(hi)); };
  CHECK(ver_compare(interval(1, 2), interval(3, 4)) == Ordering::Less);
  CHECK(ver_compare(interval(3, 4), interval(1, 2)) == Ordering::Greater);
  CHECK(ver_compare(interval(1, 3), interval(2, 4)) == Ordering::Overlapping);
  const VerifiedReal log_alpha = ver_log(golden_ratio(96), 96);
  CHECK(ver_compare(log_alpha, VerifiedReal::from_rational(mpq_class(4812118251, 10000000000), 96)) ==
        Ordering::Less);
}

TEST_CASE("from_bounds rejects inverted endpoints") {
  Float lo(64), hi(64);
  mpfr_set_si(lo.get(), 2, MPFR_RNDN);
  mpfr_set_si(hi.get(), 1, MPFR_RNDN);
  CHECK_THROWS_AS(VerifiedReal::from_bounds(lo, hi, 64), std::invalid_argument);
}

TEST_CASE("containment against the slow oracle on 1000 random operations") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> pick(0, 5);
  std::uniform_int_distribution<int> precision(32, 160);
  int checked = 0;
  for (int i = 0; i < 1000; ++i) {
    const int bits = precision(rng);
    const unsigned long oracle_bits = 4 * static_cast<unsigned long>(bits);
    const int op = pick(rng);
    if (op <= 3) {
      const mpq_class a = random_rational(rng, false);
      mpq_class b = random_rational(rng, false);
      if (op == 3 && b == 0) b = 1;
      const VerifiedReal va = VerifiedReal::from_rational(a, bits);
      const VerifiedReal vb = VerifiedReal::from_rational(b, bits);
      const mpq_class exact = op == 0 ? mpq_class(a + b) : op == 1 ? mpq_class(a - b) : op == 2 ? mpq_class(a * b) : mpq_class(a / b);
      const VerifiedReal got = ver_arith(va, vb, static_cast<ArithOp>(op));
      REQUIRE(got.contains(oracle::canonical(exact)));
    } else if (op == 4) {
      const mpq_class a = random_rational(rng, true);
      const VerifiedReal got = ver_log(VerifiedReal::from_rational(a, bits), bits);
      REQUIRE(overlaps_oracle(got, oracle::log_of(a, oracle_bits)));
      REQUIRE(meets_width(got, bits));
    } else {
      const mpz_class n = static_cast<unsigned long>(rng() % 100000000);
      const VerifiedReal got = ver_sqrt(n, bits);
      REQUIRE(overlaps_oracle(got, oracle::sqrt_of(n, oracle_bits)));
      REQUIRE(meets_width(got, bits));
    }
    ++checked;
  }
  CHECK(checked == 1000);
}

TEST_CASE("doubling the precision refines every operation") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const mpq_class a = random_rational(rng, true);
    const mpq_class b = random_rational(rng, true);
    for (int bits : {48, 96, 192}) {
      const VerifiedReal coarse = ver_log(VerifiedReal::from_rational(a, bits), bits) *
                                  VerifiedReal::from_rational(b, bits);
      const VerifiedReal fine = ver_log(VerifiedReal::from_rational(a, 2 * bits), 2 * bits) *
                                VerifiedReal::from_rational(b, 2 * bits);
      REQUIRE(coarse.contains(fine));
      REQUIRE(ver_sqrt(mpz_class(a.get_num()), bits).contains(ver_sqrt(mpz_class(a.get_num()), 2 * bits)));
    }
  }
}

TEST_CASE("log of a product overlaps the sum of logs") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 300; ++i) {
    const VerifiedReal x = VerifiedReal::from_rational(random_rational(rng, true), 128);
    const VerifiedReal y = VerifiedReal::from_rational(random_rational(rng, true), 128);
    const VerifiedReal lhs = ver_log(ver_arith(x, y, ArithOp::Mul), 128);
    const VerifiedReal rhs = ver_arith(ver_log(x, 128), ver_log(y, 128), ArithOp::Add);
    REQUIRE(ver_compare(lhs, rhs) == Ordering::Overlapping);
  }
}

TEST_CASE("constants satisfy their minimal polynomials") {
  const VerifiedReal alpha = golden_ratio(192);
  const VerifiedReal beta = golden_conjugate(192);
  const VerifiedReal phi = silver_ratio(192);
  const VerifiedReal psi = silver_conjugate(192);
  CHECK((alpha * alpha - alpha - VerifiedReal::exact(1)).contains(mpq_class(0)));
  CHECK((alpha + beta).contains(mpq_class(1)));
  CHECK((alpha * beta).contains(mpq_class(-1)));
  CHECK((phi + psi).contains(mpq_class(2)));
  CHECK((phi * psi).contains(mpq_class(-1)));
  CHECK(certainly_less(beta, VerifiedReal::exact(0)));
}

TEST_CASE("decimal rendering") {
  Float x(64);
  mpfr_set_d(x.get(), 0.375, MPFR_RNDN);
  CHECK(exact_decimal(x) == "0.375");
  mpfr_set_si(x.get(), -12, MPFR_RNDN);
  CHECK(exact_decimal(x) == "-12");
  const VerifiedReal third = VerifiedReal::from_rational(mpq_class(1, 3), 64);
  CHECK(rounded_decimal(third.lo(), 5, Rounding::TowardLower) == "3.3333e-1");
  CHECK(rounded_decimal(third.hi(), 5, Rounding::TowardUpper) == "3.3334e-1");
  CHECK(floor_of(third.lo()) == 0);
  CHECK(ceil_of(third.hi()) == 1);
}
}
