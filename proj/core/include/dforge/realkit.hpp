#pragma once

// Interval reals with dyadic endpoints and outward rounding.
//
// A VerifiedReal [lo, hi] encloses one exact real. Every operation returns an
// enclosure of the exact result for every point of its inputs, so comparisons
// that come back Less or Greater are proofs. Endpoints are MPFR numbers
// (integer mantissa times a power of two) rounded toward -inf and +inf.

#include <string>

#include <gmpxx.h>
#include <mpfr.h>

#include "dforge/seqkit.hpp"

namespace dforge {

inline constexpr int kDefaultPrecisionBits = 192;

/// Owning wrapper around mpfr_t.
class Float {
 public:
  explicit Float(mpfr_prec_t precision);
  Float(const Float& other);
  Float(Float&& other) noexcept;
  Float& operator=(const Float& other);
  Float& operator=(Float&& other) noexcept;
  ~Float();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

 private:
  mpfr_t value_;
};

enum class Rounding { Outward, TowardLower, TowardUpper };
enum class ArithOp { Add, Sub, Mul, Div };
enum class Ordering { Less, Greater, Overlapping };

class VerifiedReal {
 public:
  /// Exact zero.
  VerifiedReal();

  static VerifiedReal exact(long value, int bits = kDefaultPrecisionBits);
  /// Outward-rounded when value needs more mantissa bits than the working
  /// precision.
  static VerifiedReal from_integer(const BigInt& value, int bits = kDefaultPrecisionBits);
  static VerifiedReal from_rational(const mpq_class& value, int bits = kDefaultPrecisionBits);
  /// Throws std::invalid_argument when lo > hi or either end is NaN.
  static VerifiedReal from_bounds(Float lo, Float hi, int bits);

  const Float& lo() const { return lo_; }
  const Float& hi() const { return hi_; }
  int bits() const { return bits_; }

  mpq_class lo_rational() const;
  mpq_class hi_rational() const;
  bool contains(const mpq_class& value) const;
  bool contains(const VerifiedReal& inner) const;
  bool contains_zero() const;
  bool is_point() const;
  /// Midpoint as a double; display only.
  double approx() const;
  Float width() const;

 private:
  VerifiedReal(Float lo, Float hi, int bits);

  Float lo_;
  Float hi_;
  int bits_;
};

/// Canonicalized num / den.
mpq_class ratio_of(const BigInt& num, const BigInt& den);

/// MPFR working precision used for endpoints at a nominal precision.
mpfr_prec_t working_precision(int bits);

VerifiedReal ver_sqrt(const BigInt& x, int bits = kDefaultPrecisionBits);
/// Throws std::domain_error unless x.lo > 0.
VerifiedReal ver_log(const VerifiedReal& x, int bits = kDefaultPrecisionBits);
/// Throws std::domain_error on division by an interval containing zero.
VerifiedReal ver_arith(const VerifiedReal& a, const VerifiedReal& b, ArithOp op);
Ordering ver_compare(const VerifiedReal& a, const VerifiedReal& b);

VerifiedReal operator+(const VerifiedReal& a, const VerifiedReal& b);
VerifiedReal operator-(const VerifiedReal& a, const VerifiedReal& b);
VerifiedReal operator*(const VerifiedReal& a, const VerifiedReal& b);
VerifiedReal operator/(const VerifiedReal& a, const VerifiedReal& b);
VerifiedReal operator-(const VerifiedReal& a);

VerifiedReal abs(const VerifiedReal& x);
VerifiedReal max(const VerifiedReal& a, const VerifiedReal& b);
/// x^exponent by repeated squaring; exponent 0 gives exact one.
VerifiedReal pow(const VerifiedReal& x, unsigned long exponent);
/// Smallest enclosing interval of both arguments.
VerifiedReal hull(const VerifiedReal& a, const VerifiedReal& b);

/// Certified strict comparisons; false when undecided.
bool certainly_less(const VerifiedReal& a, const VerifiedReal& b);
bool certainly_greater(const VerifiedReal& a, const VerifiedReal& b);

BigInt floor_of(const Float& x);
BigInt ceil_of(const Float& x);

/// Exact decimal expansion of a dyadic endpoint (always finite).
std::string exact_decimal(const Float& x);
/// Decimal rounded to `digits` significant digits in the given direction.
std::string rounded_decimal(const Float& x, int digits, Rounding direction);

// Constants of the two quadratic fields.
VerifiedReal golden_ratio(int bits);          // alpha = (1 + sqrt 5) / 2
VerifiedReal golden_conjugate(int bits);      // beta  = (1 - sqrt 5) / 2
VerifiedReal silver_ratio(int bits);          // phi   = 1 + sqrt 2
VerifiedReal silver_conjugate(int bits);      // psi   = 1 - sqrt 2

}  // namespace dforge
