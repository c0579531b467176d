#pragma once

// Lucas and Pell sequence kernels over arbitrary-precision integers.

#include <compare>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include <gmpxx.h>

namespace dforge {

using BigInt = mpz_class;

enum class SequenceKind { Lucas, Pell };

std::string_view to_string(SequenceKind kind);
std::optional<SequenceKind> parse_sequence_kind(std::string_view name);

/// A tuple (r, m, n, k) with W_m^{n+k} + W_m^n = W_r for W = L or W = P.
struct SolutionTuple {
  std::uint32_t r = 0;
  std::uint32_t m = 0;
  std::uint32_t n = 0;
  std::uint32_t k = 0;

  friend auto operator<=>(const SolutionTuple&, const SolutionTuple&) = default;
};

BigInt lucas(std::uint32_t t);
BigInt pell(std::uint32_t t);
BigInt sequence_term(SequenceKind kind, std::uint32_t t);

/// The exponent e with base^e | value and base^(e+1) not dividing value.
/// Throws std::invalid_argument for base < 2 or value < 1.
std::uint32_t exact_valuation(const BigInt& base, const BigInt& value);

/// Smallest t with W_t == value, found by enumerating the sequence until it
/// exceeds value. Lucas is non-monotone only at L_0 = 2 > L_1 = 1, and no
/// value repeats in either sequence, so the smallest index is the only one.
std::optional<std::uint32_t> is_member(const BigInt& value, SequenceKind kind);

/// Checks W_m^{n+k} + W_m^n == W_r from scratch.
bool satisfies_equation(SequenceKind kind, const SolutionTuple& tuple);

/// Immutable table W_0..W_max_index. Built once, then safe for concurrent
/// reads.
class SequenceTable {
 public:
  SequenceTable(SequenceKind kind, std::uint32_t max_index);

  SequenceKind kind() const { return kind_; }
  std::uint32_t max_index() const {
    return static_cast<std::uint32_t>(terms_.size() - 1);
  }
  const BigInt& operator[](std::uint32_t t) const { return terms_.at(t); }
  const std::vector<BigInt>& terms() const { return terms_; }

  /// Index lookup restricted to the table; falls back to is_member when the
  /// value exceeds the largest cached term.
  std::optional<std::uint32_t> index_of(const BigInt& value) const;

 private:
  SequenceKind kind_;
  std::vector<BigInt> terms_;
  // Terms from index 1 on are strictly increasing for both sequences.
  std::vector<BigInt> sorted_tail_;
};

}  // namespace dforge
