#include "dforge/searchkit.hpp"

#include <algorithm>
#include <array>
#include <tuple>
#include <stdexcept>
#include <utility>

#include "dforge/parallel.hpp"

namespace dforge {

namespace {

constexpr std::array<std::uint32_t, 5> kPrefilterModuli = {8, 11, 13, 16, 29};

class ResidueFilter {
 public:
  explicit ResidueFilter(SequenceKind kind) {
    for (std::uint32_t mod : kPrefilterModuli) tables_.emplace_back(mod, residue_set(kind, mod));
  }

  bool admits(const BigInt& value) const {
    for (const auto& [mod, present] : tables_) {
      if (!present[mpz_fdiv_ui(value.get_mpz_t(), mod)]) return false;
    }
    return true;
  }

 private:
  std::vector<std::pair<std::uint32_t, std::vector<bool>>> tables_;
};

}  // namespace

void validate(const SearchBox& box) {
  if (box.m_max < 2 || box.n_max < 2 || box.k_max < 1) {
    throw std::invalid_argument("search: box must contain m >= 2, n >= 2, k >= 1");
  }
}

std::vector<bool> residue_set(SequenceKind kind, std::uint32_t modulus) {
  if (modulus < 2) throw std::invalid_argument("residue_set: modulus must be >= 2");
  const std::uint64_t mult = kind == SequenceKind::Lucas ? 1 : 2;
  const std::uint64_t first = kind == SequenceKind::Lucas ? 2 % modulus : 0;
  const std::uint64_t second = 1 % modulus;
  std::vector<bool> present(modulus, false);
  // The pair (W_t, W_{t+1}) mod modulus is periodic and returns to its start
  // because the recurrence is invertible.
  std::uint64_t a = first;
  std::uint64_t b = second;
  do {
    present[a] = true;
    const std::uint64_t next = (mult * b + a) % modulus;
    a = b;
    b = next;
  } while (a != first || b != second);
  return present;
}

bool residue_prefilter(const BigInt& value, SequenceKind kind, std::uint32_t modulus) {
  return residue_set(kind, modulus)[mpz_fdiv_ui(value.get_mpz_t(), modulus)];
}

std::vector<SolutionTuple> search(const SearchBox& box, const SearchOptions& options) {
  validate(box);
  const SequenceTable table(box.kind, std::max<std::uint32_t>(box.r_cap, 2));
  const ResidueFilter filter(box.kind);

  const std::size_t m_count = box.m_max - 1;
  std::vector<std::vector<SolutionTuple>> per_m(m_count);
  parallel_for(m_count, options.threads, [&](std::size_t i) {
    const std::uint32_t m = static_cast<std::uint32_t>(i) + 2;
    const BigInt base = sequence_term(box.kind, m);
    BigInt low;
    mpz_pow_ui(low.get_mpz_t(), base.get_mpz_t(), 2);
    for (std::uint32_t n = 2; n <= box.n_max; ++n, low *= base) {
      BigInt high = low * base;
      for (std::uint32_t k = 1; k <= box.k_max; ++k, high *= base) {
        const BigInt value = high + low;
        if (options.use_prefilter && !filter.admits(value)) continue;
        if (auto r = table.index_of(value)) per_m[i].push_back({*r, m, n, k});
      }
    }
  });

  std::vector<SolutionTuple> out;
  for (auto& hits : per_m) out.insert(out.end(), hits.begin(), hits.end());
  std::sort(out.begin(), out.end(), [](const SolutionTuple& a, const SolutionTuple& b) {
    return std::tie(a.m, a.n, a.k) < std::tie(b.m, b.n, b.k);
  });
  return out;
}

}  // namespace dforge
