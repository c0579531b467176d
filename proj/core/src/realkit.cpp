#include "dforge/realkit.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace dforge {

namespace {

constexpr int kGuardBits = 32;

bool is_zero(const Float& x) { return mpfr_zero_p(x.get()) != 0; }

const Float& min_of(const Float& a, const Float& b) {
  return mpfr_lessequal_p(a.get(), b.get()) ? a : b;
}

const Float& max_of(const Float& a, const Float& b) {
  return mpfr_greaterequal_p(a.get(), b.get()) ? a : b;
}

using BinaryFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);

// Corner evaluation for mul/div: valid when the operation is monotone in each
// argument on the box, which holds for mul always and for div when the
// divisor excludes zero.
VerifiedReal corners(const VerifiedReal& a, const VerifiedReal& b, BinaryFn fn) {
  const int bits = std::max(a.bits(), b.bits());
  const mpfr_prec_t prec = working_precision(bits);
  const Float* xs[2] = {&a.lo(), &a.hi()};
  const Float* ys[2] = {&b.lo(), &b.hi()};
  Float lo(prec);
  Float hi(prec);
  Float down(prec);
  Float up(prec);
  bool first = true;
  for (const Float* x : xs) {
    for (const Float* y : ys) {
      fn(down.get(), x->get(), y->get(), MPFR_RNDD);
      fn(up.get(), x->get(), y->get(), MPFR_RNDU);
      if (first || mpfr_less_p(down.get(), lo.get())) mpfr_set(lo.get(), down.get(), MPFR_RNDD);
      if (first || mpfr_greater_p(up.get(), hi.get())) mpfr_set(hi.get(), up.get(), MPFR_RNDU);
      first = false;
    }
  }
  return VerifiedReal::from_bounds(std::move(lo), std::move(hi), bits);
}

}  // namespace

Float::Float(mpfr_prec_t precision) {
  mpfr_init2(value_, precision);
  mpfr_set_zero(value_, 1);
}

Float::Float(const Float& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

Float::Float(Float&& other) noexcept {
  mpfr_init2(value_, MPFR_PREC_MIN);
  mpfr_swap(value_, other.value_);
}

Float& Float::operator=(const Float& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

Float& Float::operator=(Float&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

Float::~Float() { mpfr_clear(value_); }

mpq_class ratio_of(const BigInt& num, const BigInt& den) {
  if (den == 0) throw std::domain_error("ratio_of: zero denominator");
  mpq_class q(num, den);
  q.canonicalize();
  return q;
}

mpfr_prec_t working_precision(int bits) { return static_cast<mpfr_prec_t>(bits) + kGuardBits; }

VerifiedReal::VerifiedReal() : lo_(MPFR_PREC_MIN), hi_(MPFR_PREC_MIN), bits_(kDefaultPrecisionBits) {}

VerifiedReal::VerifiedReal(Float lo, Float hi, int bits)
    : lo_(std::move(lo)), hi_(std::move(hi)), bits_(bits) {}

VerifiedReal VerifiedReal::exact(long value, int bits) {
  Float lo(working_precision(bits));
  Float hi(working_precision(bits));
  mpfr_set_si(lo.get(), value, MPFR_RNDD);
  mpfr_set_si(hi.get(), value, MPFR_RNDU);
  return VerifiedReal(std::move(lo), std::move(hi), bits);
}

VerifiedReal VerifiedReal::from_integer(const BigInt& value, int bits) {
  Float lo(working_precision(bits));
  Float hi(working_precision(bits));
  mpfr_set_z(lo.get(), value.get_mpz_t(), MPFR_RNDD);
  mpfr_set_z(hi.get(), value.get_mpz_t(), MPFR_RNDU);
  return VerifiedReal(std::move(lo), std::move(hi), bits);
}

VerifiedReal VerifiedReal::from_rational(const mpq_class& value, int bits) {
  Float lo(working_precision(bits));
  Float hi(working_precision(bits));
  mpfr_set_q(lo.get(), value.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(hi.get(), value.get_mpq_t(), MPFR_RNDU);
  return VerifiedReal(std::move(lo), std::move(hi), bits);
}

VerifiedReal VerifiedReal::from_bounds(Float lo, Float hi, int bits) {
  if (mpfr_nan_p(lo.get()) || mpfr_nan_p(hi.get()) || mpfr_greater_p(lo.get(), hi.get())) {
    throw std::invalid_argument("VerifiedReal: invalid bounds");
  }
  return VerifiedReal(std::move(lo), std::move(hi), bits);
}

mpq_class VerifiedReal::lo_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), lo_.get());
  return q;
}

mpq_class VerifiedReal::hi_rational() const {
  mpq_class q;
  mpfr_get_q(q.get_mpq_t(), hi_.get());
  return q;
}

bool VerifiedReal::contains(const mpq_class& value) const {
  return mpfr_cmp_q(lo_.get(), value.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_.get(), value.get_mpq_t()) >= 0;
}

bool VerifiedReal::contains(const VerifiedReal& inner) const {
  return mpfr_lessequal_p(lo_.get(), inner.lo_.get()) &&
         mpfr_greaterequal_p(hi_.get(), inner.hi_.get());
}

bool VerifiedReal::contains_zero() const {
  return mpfr_sgn(lo_.get()) <= 0 && mpfr_sgn(hi_.get()) >= 0;
}

bool VerifiedReal::is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()); }

double VerifiedReal::approx() const {
  Float mid(std::max(lo_.precision(), hi_.precision()) + 1);
  mpfr_add(mid.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mpfr_get_d(mid.get(), MPFR_RNDN);
}

Float VerifiedReal::width() const {
  Float w(working_precision(bits_));
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return w;
}

VerifiedReal ver_sqrt(const BigInt& x, int bits) {
  if (x < 0) throw std::domain_error("ver_sqrt: negative argument");
  const mpfr_prec_t prec = working_precision(bits);
  const auto needed = static_cast<mpfr_prec_t>(mpz_sizeinbase(x.get_mpz_t(), 2));
  Float arg(std::max(prec, needed));
  mpfr_set_z(arg.get(), x.get_mpz_t(), MPFR_RNDN);  // exact at this precision
  Float lo(prec);
  Float hi(prec);
  mpfr_sqrt(lo.get(), arg.get(), MPFR_RNDD);
  mpfr_sqrt(hi.get(), arg.get(), MPFR_RNDU);
  return VerifiedReal::from_bounds(std::move(lo), std::move(hi), bits);
}

VerifiedReal ver_log(const VerifiedReal& x, int bits) {
  if (mpfr_sgn(x.lo().get()) <= 0) {
    throw std::domain_error("ver_log: interval must lie strictly above zero");
  }
  const mpfr_prec_t prec = working_precision(bits);
  Float lo(prec);
  Float hi(prec);
  mpfr_log(lo.get(), x.lo().get(), MPFR_RNDD);
  mpfr_log(hi.get(), x.hi().get(), MPFR_RNDU);
  return VerifiedReal::from_bounds(std::move(lo), std::move(hi), bits);
}

VerifiedReal ver_arith(const VerifiedReal& a, const VerifiedReal& b, ArithOp op) {
  const int bits = std::max(a.bits(), b.bits());
  const mpfr_prec_t prec = working_precision(bits);
  switch (op) {
    case ArithOp::Add: {
      Float lo(prec);
      Float hi(prec);
      mpfr_add(lo.get(), a.lo().get(), b.lo().get(), MPFR_RNDD);
      mpfr_add(hi.get(), a.hi().get(), b.hi().get(), MPFR_RNDU);
      return VerifiedReal::from_bounds(std::move(lo), std::move(hi), bits);
    }
    case ArithOp::Sub: {
      Float lo(prec);
      Float hi(prec);
      mpfr_sub(lo.get(), a.lo().get(), b.hi().get(), MPFR_RNDD);
      mpfr_sub(hi.get(), a.hi().get(), b.lo().get(), MPFR_RNDU);
      return VerifiedReal::from_bounds(std::move(lo), std::move(hi), bits);
    }
    case ArithOp::Mul:
      return corners(a, b, mpfr_mul);
    case ArithOp::Div:
      if (b.contains_zero()) throw std::domain_error("ver_arith: division by an interval containing zero");
      return corners(a, b, mpfr_div);
  }
  throw std::logic_error("ver_arith: unknown operation");
}

Ordering ver_compare(const VerifiedReal& a, const VerifiedReal& b) {
  if (mpfr_less_p(a.hi().get(), b.lo().get())) return Ordering::Less;
  if (mpfr_greater_p(a.lo().get(), b.hi().get())) return Ordering::Greater;
  return Ordering::Overlapping;
}

VerifiedReal operator+(const VerifiedReal& a, const VerifiedReal& b) { return ver_arith(a, b, ArithOp::Add); }
VerifiedReal operator-(const VerifiedReal& a, const VerifiedReal& b) { return ver_arith(a, b, ArithOp::Sub); }
VerifiedReal operator*(const VerifiedReal& a, const VerifiedReal& b) { return ver_arith(a, b, ArithOp::Mul); }
VerifiedReal operator/(const VerifiedReal& a, const VerifiedReal& b) { return ver_arith(a, b, ArithOp::Div); }

VerifiedReal operator-(const VerifiedReal& a) {
  Float lo(a.hi().precision());
  Float hi(a.lo().precision());
  mpfr_neg(lo.get(), a.hi().get(), MPFR_RNDD);
  mpfr_neg(hi.get(), a.lo().get(), MPFR_RNDU);
  return VerifiedReal::from_bounds(std::move(lo), std::move(hi), a.bits());
}

VerifiedReal abs(const VerifiedReal& x) {
  if (mpfr_sgn(x.lo().get()) >= 0) return x;
  if (mpfr_sgn(x.hi().get()) <= 0) return -x;
  Float lo(working_precision(x.bits()));
  Float neg_lo(x.lo().precision());
  mpfr_neg(neg_lo.get(), x.lo().get(), MPFR_RNDU);
  return VerifiedReal::from_bounds(std::move(lo), max_of(neg_lo, x.hi()), x.bits());
}

VerifiedReal max(const VerifiedReal& a, const VerifiedReal& b) {
  return VerifiedReal::from_bounds(max_of(a.lo(), b.lo()), max_of(a.hi(), b.hi()),
                                   std::max(a.bits(), b.bits()));
}

VerifiedReal hull(const VerifiedReal& a, const VerifiedReal& b) {
  return VerifiedReal::from_bounds(min_of(a.lo(), b.lo()), max_of(a.hi(), b.hi()),
                                   std::max(a.bits(), b.bits()));
}

VerifiedReal pow(const VerifiedReal& x, unsigned long exponent) {
  VerifiedReal result = VerifiedReal::exact(1, x.bits());
  VerifiedReal base = x;
  while (exponent != 0) {
    if ((exponent & 1UL) != 0) result = result * base;
    exponent >>= 1;
    if (exponent != 0) base = base * base;
  }
  return result;
}

bool certainly_less(const VerifiedReal& a, const VerifiedReal& b) {
  return ver_compare(a, b) == Ordering::Less;
}

bool certainly_greater(const VerifiedReal& a, const VerifiedReal& b) {
  return ver_compare(a, b) == Ordering::Greater;
}

BigInt floor_of(const Float& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDD);
  return z;
}

BigInt ceil_of(const Float& x) {
  BigInt z;
  mpfr_get_z(z.get_mpz_t(), x.get(), MPFR_RNDU);
  return z;
}

std::string exact_decimal(const Float& x) {
  if (is_zero(x)) return "0";
  BigInt mantissa;
  const mpfr_exp_t e = mpfr_get_z_2exp(mantissa.get_mpz_t(), x.get());
  const bool negative = mantissa < 0;
  mantissa = ::abs(mantissa);
  if (e >= 0) {
    mpz_mul_2exp(mantissa.get_mpz_t(), mantissa.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    return (negative ? "-" : "") + mantissa.get_str();
  }
  // m * 2^-s = m * 5^s / 10^s
  const auto shift = static_cast<unsigned long>(-e);
  BigInt five_pow;
  mpz_ui_pow_ui(five_pow.get_mpz_t(), 5, shift);
  std::string digits = BigInt(mantissa * five_pow).get_str();
  if (digits.size() <= shift) digits.insert(0, shift - digits.size() + 1, '0');
  std::string integer_part = digits.substr(0, digits.size() - shift);
  std::string fraction = digits.substr(digits.size() - shift);
  while (!fraction.empty() && fraction.back() == '0') fraction.pop_back();
  std::string out = negative ? "-" : "";
  out += integer_part;
  if (!fraction.empty()) out += "." + fraction;
  return out;
}

std::string rounded_decimal(const Float& x, int digits, Rounding direction) {
  if (direction == Rounding::Outward) {
    throw std::invalid_argument("rounded_decimal: a single endpoint needs a direction");
  }
  if (is_zero(x)) return "0";
  const mpfr_rnd_t rnd = direction == Rounding::TowardLower ? MPFR_RNDD : MPFR_RNDU;
  mpfr_exp_t exp10 = 0;
  char* raw = mpfr_get_str(nullptr, &exp10, 10, static_cast<std::size_t>(digits), x.get(), rnd);
  std::string mant(raw);
  mpfr_free_str(raw);
  std::string sign;
  if (!mant.empty() && mant.front() == '-') {
    sign = "-";
    mant.erase(0, 1);
  }
  while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
  std::string out = sign + mant.substr(0, 1);
  if (mant.size() > 1) out += "." + mant.substr(1);
  out += "e" + std::to_string(static_cast<long>(exp10) - 1);
  return out;
}

VerifiedReal golden_ratio(int bits) {
  return (VerifiedReal::exact(1, bits) + ver_sqrt(5, bits)) / VerifiedReal::exact(2, bits);
}

VerifiedReal golden_conjugate(int bits) {
  return (VerifiedReal::exact(1, bits) - ver_sqrt(5, bits)) / VerifiedReal::exact(2, bits);
}

VerifiedReal silver_ratio(int bits) { return VerifiedReal::exact(1, bits) + ver_sqrt(2, bits); }

VerifiedReal silver_conjugate(int bits) { return VerifiedReal::exact(1, bits) - ver_sqrt(2, bits); }

}  // namespace dforge
