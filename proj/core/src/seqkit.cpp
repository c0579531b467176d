#include "dforge/seqkit.hpp"

#include <algorithm>
#include <stdexcept>

namespace dforge {

namespace {

struct Recurrence {
  long first;
  long second;
  long multiplier;  // W_t = multiplier * W_{t-1} + W_{t-2}
};

constexpr Recurrence recurrence_of(SequenceKind kind) {
  return kind == SequenceKind::Lucas ? Recurrence{2, 1, 1} : Recurrence{0, 1, 2};
}

}  // namespace

std::string_view to_string(SequenceKind kind) {
  return kind == SequenceKind::Lucas ? "lucas" : "pell";
}

std::optional<SequenceKind> parse_sequence_kind(std::string_view name) {
  if (name == "lucas") return SequenceKind::Lucas;
  if (name == "pell") return SequenceKind::Pell;
  return std::nullopt;
}

BigInt sequence_term(SequenceKind kind, std::uint32_t t) {
  const Recurrence rec = recurrence_of(kind);
  BigInt prev = rec.first;
  BigInt cur = rec.second;
  if (t == 0) return prev;
  for (std::uint32_t i = 1; i < t; ++i) {
    BigInt next = rec.multiplier * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

BigInt lucas(std::uint32_t t) { return sequence_term(SequenceKind::Lucas, t); }
BigInt pell(std::uint32_t t) { return sequence_term(SequenceKind::Pell, t); }

std::uint32_t exact_valuation(const BigInt& base, const BigInt& value) {
  if (base < 2) throw std::invalid_argument("exact_valuation: base must be >= 2");
  if (value < 1) throw std::invalid_argument("exact_valuation: value must be >= 1");
  std::uint32_t e = 0;
  BigInt rest = value;
  while (mpz_divisible_p(rest.get_mpz_t(), base.get_mpz_t()) != 0) {
    mpz_divexact(rest.get_mpz_t(), rest.get_mpz_t(), base.get_mpz_t());
    ++e;
  }
  return e;
}

std::optional<std::uint32_t> is_member(const BigInt& value, SequenceKind kind) {
  if (value < 0) return std::nullopt;
  const Recurrence rec = recurrence_of(kind);
  BigInt prev = rec.first;
  BigInt cur = rec.second;
  if (prev == value) return 0;
  for (std::uint32_t t = 1;; ++t) {
    if (cur == value) return t;
    if (cur > value) return std::nullopt;
    BigInt next = rec.multiplier * cur + prev;
    prev = std::move(cur);
    cur = std::move(next);
  }
}

bool satisfies_equation(SequenceKind kind, const SolutionTuple& tuple) {
  const BigInt base = sequence_term(kind, tuple.m);
  BigInt low;
  BigInt high;
  mpz_pow_ui(low.get_mpz_t(), base.get_mpz_t(), tuple.n);
  mpz_pow_ui(high.get_mpz_t(), base.get_mpz_t(), tuple.n + tuple.k);
  return high + low == sequence_term(kind, tuple.r);
}

SequenceTable::SequenceTable(SequenceKind kind, std::uint32_t max_index) : kind_(kind) {
  const Recurrence rec = recurrence_of(kind);
  terms_.reserve(static_cast<std::size_t>(max_index) + 1);
  terms_.emplace_back(rec.first);
  if (max_index >= 1) terms_.emplace_back(rec.second);
  for (std::uint32_t t = 2; t <= max_index; ++t) {
    terms_.emplace_back(rec.multiplier * terms_[t - 1] + terms_[t - 2]);
  }
  sorted_tail_.assign(terms_.begin() + std::min<std::size_t>(1, terms_.size()), terms_.end());
}

std::optional<std::uint32_t> SequenceTable::index_of(const BigInt& value) const {
  if (value == terms_.front()) return 0;
  if (sorted_tail_.empty() || value > sorted_tail_.back()) return is_member(value, kind_);
  const auto it = std::lower_bound(sorted_tail_.begin(), sorted_tail_.end(), value);
  if (it == sorted_tail_.end() || *it != value) return std::nullopt;
  return static_cast<std::uint32_t>(it - sorted_tail_.begin()) + 1;
}

}  // namespace dforge
