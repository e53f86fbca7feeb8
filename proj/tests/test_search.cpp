#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap3/count.hpp"
#include "ap3/search.hpp"
#include "oracles.hpp"

using namespace ap3;

namespace {

std::set<std::vector<std::int64_t>> encodings(const ExtremalResult& r) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& w : r.witnesses) out.insert(w.encoding);
  return out;
}

std::set<std::vector<std::int64_t>> family_encodings(std::int64_t n) {
  std::set<std::vector<std::int64_t>> out;
  for (const auto& tag : family_tags_of_size(n)) out.insert(canonicalize(generate_family(tag)).encoding);
  return out;
}

}  // namespace

TEST_CASE("integer maximum: small examples") {
  const auto two = max3ap_integers(2, 4);
  CHECK(two.value == 2);
  REQUIRE(two.witnesses.size() == 1);
  CHECK(std::get<IntegerSet>(two.witnesses[0].representative) == IntegerSet({0, 1}));

  const auto five = max3ap_integers(5, 10);
  CHECK(five.value == 13);
  CHECK(encodings(five) == family_encodings(5));
  // E(2,0) and E(0,2) are dilates of each other, so two forms remain.
  CHECK(five.witnesses.size() == 2);

  const auto four = max3ap_integers(4, 8);
  CHECK(four.value == 8);
  CHECK(encodings(four) == family_encodings(4));
}

TEST_CASE("integer maximum agrees with brute force, n <= 8") {
  for (std::int64_t n = 1; n <= 8; ++n) {
    const auto r = max3ap_integers(n, 2 * n);
    CHECK(r.value == oracle::max3ap_int(n, 2 * n));
    std::set<std::vector<std::int64_t>> expect_enc;
    for (const auto& v : oracle::max3ap_int_witnesses(n, 2 * n)) expect_enc.insert(canonicalize(IntegerSet(v)).encoding);
    CHECK(encodings(r) == expect_enc);
  }
}

TEST_CASE("integer maximum is ceil(n^2/2) with only family witnesses, n <= 10") {
  for (std::int64_t n = 1; n <= 10; ++n) {
    const auto r = max3ap_integers(n, default_width_cap(n));
    CHECK(r.value == half_square_ceil(n));
    CHECK(encodings(r) == family_encodings(n));
    for (const auto& w : r.witnesses) {
      const auto& s = std::get<IntegerSet>(w.representative);
      CHECK(t3_integers(s).t3 == r.value);
      CHECK(classify_extremal(s).matched);
    }
    CHECK(r.width_cap == default_width_cap(n));
  }
}

TEST_CASE("integer search is thread independent") {
  SearchOptions four;
  four.threads = 4;
  for (std::int64_t n : {6, 9}) {
    const auto a = max3ap_integers(n, 2 * n);
    const auto b = max3ap_integers(n, 2 * n, four);
    CHECK(a.value == b.value);
    CHECK(encodings(a) == encodings(b));
    CHECK(a.nodes == b.nodes);
    CHECK(a.pruned_count == b.pruned_count);
  }
}

TEST_CASE("integer search budget") {
  SearchOptions tiny;
  tiny.budget_nodes = 100;
  CHECK_THROWS_AS(max3ap_integers(12, 24, tiny), BudgetExceeded);
  CHECK_THROWS_AS(max3ap_integers(0, 4), std::invalid_argument);
  CHECK_THROWS_AS(max3ap_integers(5, 3), std::invalid_argument);
}

TEST_CASE("modular extremes: examples") {
  CHECK(extremal_mod(3, 7, Side::max).value == 5);
  CHECK(extremal_mod(4, 5, Side::max).value == 12);
  CHECK(extremal_mod(7, 7, Side::min).value == 49);
  CHECK(extremal_mod(4, 5, Side::min).value == 12);
  CHECK(extremal_mod_via_complement(4, 5, Side::min).value == 12);
  CHECK(extremal_mod_via_complement(4, 5, Side::max).value == 12);
  CHECK(extremal_mod_via_complement(5, 5, Side::max).value == 25);
  CHECK_THROWS_AS(extremal_mod(3, 9, Side::max), UnsupportedModulus);
  CHECK_THROWS_AS(extremal_mod(8, 7, Side::max), std::invalid_argument);
}

TEST_CASE("modular extremes agree with brute force and the complement route") {
  for (std::int64_t p : {5, 7, 11, 13}) {
    std::uint64_t prev = 0;
    for (std::int64_t n = 1; n <= p; ++n) {
      for (Side side : {Side::max, Side::min}) {
        const auto r = extremal_mod(n, p, side);
        CHECK(r.value == oracle::extremal_mod(n, p, side == Side::max));
        CHECK(r.search_space_size == oracle::binom(static_cast<std::uint64_t>(p), static_cast<std::uint64_t>(n)));
        CHECK(extremal_mod_via_complement(n, p, side).value == r.value);
        for (const auto& w : r.witnesses) CHECK(t3_naive(std::get<ResidueSet>(w.representative)) == r.value);
        if (side == Side::max) {
          CHECK(r.value >= prev);
          prev = r.value;
          if (2 * n <= p + 1) CHECK(r.value >= half_square_ceil(n));
        }
      }
    }
  }
}

TEST_CASE("modular witnesses are every maximizing orbit") {
  const auto r = extremal_mod(5, 11, Side::max);
  std::set<std::vector<std::int64_t>> expect;
  oracle::for_each_subset(5, 11, [&](const oracle::Vec& s) {
    if (oracle::t3(s, 11) == r.value) expect.insert(canonicalize(ResidueSet(11, s)).encoding);
  });
  CHECK(encodings(r) == expect);

  SearchOptions four;
  four.threads = 4;
  const auto p = extremal_mod(5, 11, Side::max, four);
  CHECK(encodings(p) == encodings(r));
}

TEST_CASE("modular budget") {
  CHECK_THROWS_AS(extremal_mod(10, 101, Side::max), BudgetExceeded);
  try {
    SearchOptions small;
    small.budget_nodes = 10;
    extremal_mod(6, 13, Side::max, small);
    FAIL("no budget error");
  } catch (const BudgetExceeded& e) {
    CHECK(e.estimate() > 10);
    CHECK(e.budget() == 10);
  }
}

TEST_CASE("classification") {
  const auto e11 = generate_family({Family::E, 1, 1});
  auto c = classify_extremal(e11);
  CHECK(c.matched);
  CHECK(c.tag == FamilyTag{Family::E, 1, 1});
  CHECK(c.map->apply(e11) == e11);

  const IntegerSet image({1, 5, 7, 9, 13});
  c = classify_extremal(image);
  REQUIRE(c.matched);
  CHECK(c.tag == FamilyTag{Family::E, 1, 1});
  CHECK(c.map->scale() == 2);
  CHECK(c.map->shift() == 7);
  CHECK(c.map->apply(generate_family(*c.tag)) == image);

  c = classify_extremal(IntegerSet({0, 1, 2, 4, 5}));
  CHECK_FALSE(c.matched);
  CHECK(t3_integers(IntegerSet({0, 1, 2, 4, 5})).t3 == oracle::t3_int({0, 1, 2, 4, 5}));
  CHECK(oracle::t3_int({0, 1, 2, 4, 5}) == 9);

  // Two tags share an orbit.
  c = classify_extremal(IntegerSet::interval(0, 5));
  CHECK(c.all_tags.size() == 2);

  const ResidueSet r = AffineMap::modular(5, 3, 23).apply(embed_mod(e11, 23).set);
  c = classify_extremal(r);
  REQUIRE(c.matched);
  CHECK(c.map->apply(embed_mod(generate_family(*c.tag), 23).set) == r);
  CHECK_FALSE(classify_extremal(ResidueSet(23, {0, 1, 2, 4, 5})).matched);
}

TEST_CASE("threshold scan") {
  const auto s5 = threshold_scan(5);
  REQUIRE(s5.rows.size() == 5);
  CHECK(s5.rows[3].m3 == 12);
  CHECK_FALSE(s5.rows[3].half_n2_match);

  const auto s7 = threshold_scan(7);
  CHECK(s7.rows[1].m3 == 2);
  CHECK(s7.rows[1].half_n2_match);
  CHECK(s7.rows[1].all_ef_witnesses);
  for (const auto& row : s7.rows)
    if (2 * row.n <= 8) CHECK(row.m3 >= half_square_ceil(row.n));

  const auto s13 = threshold_scan(13);
  CHECK(s13.threshold_n == 4);
  for (std::int64_t n = 1; n <= s13.threshold_n; ++n) {
    CHECK(s13.rows[static_cast<std::size_t>(n - 1)].half_n2_match);
    CHECK(s13.rows[static_cast<std::size_t>(n - 1)].all_ef_witnesses);
  }
}
