#include <algorithm>

#include "doctest.h"
#include "dforge/searchkit.hpp"
#include "oracle/naive_search.hpp"

using namespace dforge;

namespace {

std::vector<oracle::Hit> as_hits(const std::vector<SolutionTuple>& sols) {
  std::vector<oracle::Hit> out;
  for (const auto& s : sols) out.push_back({s.r, s.m, s.n, s.k});
  return out;
}

std::vector<oracle::Hit> naive(const SearchBox& box) {
  return box.kind == SequenceKind::Lucas ? oracle::naive_search(2, 1, 1, box.m_max, box.n_max, box.k_max)
                                         : oracle::naive_search(0, 1, 2, box.m_max, box.n_max, box.k_max);
}

const SearchBox kLucasBox{SequenceKind::Lucas, 12, 16, 8, 313};
const SearchBox kPellBox{SequenceKind::Pell, 12, 12, 33, 618};

}  // namespace

TEST_SUITE("searchkit") {
TEST_CASE("final boxes") {
  CHECK(search(kLucasBox).empty());
  const auto pell_hits = search(kPellBox);
  REQUIRE(pell_hits.size() == 1);
  CHECK(pell_hits[0] == SolutionTuple{4, 2, 2, 1});
}

TEST_CASE("naive replay agrees on the final boxes") {
  CHECK(as_hits(search(kLucasBox)) == naive(kLucasBox));
  CHECK(as_hits(search(kPellBox)) == naive(kPellBox));
}

TEST_CASE("single point") {
  const auto hits = search({SequenceKind::Pell, 2, 2, 1, 10});
  REQUIRE(hits.size() == 1);
  CHECK(hits[0] == SolutionTuple{4, 2, 2, 1});
  CHECK(search({SequenceKind::Lucas, 2, 2, 1, 10}).empty());
}

TEST_CASE("prefilter examples") {
  const std::vector<bool> pell8 = residue_set(SequenceKind::Pell, 8);
  CHECK(pell8 == std::vector<bool>{true, true, true, false, true, true, true, false});
  CHECK(residue_prefilter(12, SequenceKind::Pell, 8));
  CHECK_FALSE(residue_prefilter(11, SequenceKind::Pell, 8));

  // Lucas numbers are never divisible by 5 and never 0 or 6 mod 8.
  CHECK_FALSE(residue_prefilter(35, SequenceKind::Lucas, 5));
  CHECK_FALSE(residue_prefilter(8, SequenceKind::Lucas, 8));
  CHECK_FALSE(residue_prefilter(14, SequenceKind::Lucas, 8));
  CHECK(residue_prefilter(47, SequenceKind::Lucas, 8));

  // Every residue mod 9 occurs among Lucas numbers.
  const std::vector<bool> lucas9 = residue_set(SequenceKind::Lucas, 9);
  CHECK(std::all_of(lucas9.begin(), lucas9.end(), [](bool b) { return b; }));
}

TEST_CASE("prefilter never rejects a member") {
  for (SequenceKind kind : {SequenceKind::Lucas, SequenceKind::Pell}) {
    for (std::uint32_t modulus = 2; modulus <= 40; ++modulus) {
      for (std::uint32_t t = 0; t <= 150; ++t) REQUIRE(residue_prefilter(sequence_term(kind, t), kind, modulus));
    }
  }
}

TEST_CASE("prefilter and thread count do not change results") {
  for (const SearchBox& box : {kLucasBox, kPellBox, SearchBox{SequenceKind::Pell, 20, 15, 20, 400}}) {
    const auto base = search(box, {1, true});
    CHECK(search(box, {1, false}) == base);
    CHECK(search(box, {3, true}) == base);
    CHECK(search(box, {8, false}) == base);
    CHECK(std::is_sorted(base.begin(), base.end(), [](const SolutionTuple& a, const SolutionTuple& b) {
      return std::tie(a.m, a.n, a.k) < std::tie(b.m, b.n, b.k);
    }));
    for (const auto& s : base) {
      CHECK(satisfies_equation(box.kind, s));
      CHECK(s.n + s.k <= 2 * s.r);
    }
  }
}

TEST_CASE("a wider box finds nothing new") {
  const SearchBox wide{SequenceKind::Lucas, 20, 20, 20, 0};
  CHECK(search(wide).empty());
  CHECK(as_hits(search(wide)) == naive(wide));
}

TEST_CASE("empty boxes are rejected") {
  CHECK_THROWS_AS(validate({SequenceKind::Lucas, 1, 16, 8, 313}), std::invalid_argument);
  CHECK_THROWS_AS(validate({SequenceKind::Lucas, 12, 1, 8, 313}), std::invalid_argument);
  CHECK_THROWS_AS(search({SequenceKind::Pell, 12, 12, 0, 618}), std::invalid_argument);
}
}
