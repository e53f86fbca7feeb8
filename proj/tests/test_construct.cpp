#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap3/construct.hpp"
#include "ap3/count.hpp"
#include "oracles.hpp"

using namespace ap3;

TEST_CASE("family generation") {
  CHECK(generate_family({Family::E, 0, 0}) == IntegerSet({0}));
  CHECK(generate_family({Family::E, 1, 1}) == IntegerSet({-3, -1, 0, 1, 3}));
  CHECK(generate_family({Family::F, 1, 1}) == IntegerSet({-1, 0, 1, 3}));
  CHECK(generate_family({Family::F, 1, 0}) == IntegerSet({0, 1}));
  CHECK(generate_family({Family::F, 0, 1}) == IntegerSet({0, 2}));
  CHECK_THROWS_AS(generate_family({Family::F, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(generate_family({Family::E, -1, 0}), std::invalid_argument);
  for (std::int64_t k = 0; k <= 50; ++k)
    for (std::int64_t m = 0; m <= 50; ++m) {
      CHECK(generate_family({Family::E, k, m}).size() == static_cast<std::size_t>(2 * k + 2 * m + 1));
      if (k + m > 0) CHECK(generate_family({Family::F, k, m}).size() == static_cast<std::size_t>(2 * k + 2 * m));
    }
}

TEST_CASE("family sets attain ceil(n^2/2)") {
  for (std::int64_t k = 0; k <= 20; ++k)
    for (std::int64_t m = 0; m <= 20; ++m) {
      const auto e = generate_family({Family::E, k, m});
      const auto ve = oracle::Vec(e.elements().begin(), e.elements().end());
      CHECK(oracle::t3_int(ve) == half_square_ceil(e.size()));
      if (k + m == 0) continue;
      const auto f = generate_family({Family::F, k, m});
      const auto vf = oracle::Vec(f.elements().begin(), f.elements().end());
      CHECK(oracle::t3_int(vf) == half_square_ceil(f.size()));
    }
}

TEST_CASE("tags of a given size") {
  const auto odd = family_tags_of_size(5);
  REQUIRE(odd.size() == 3);
  CHECK(odd[0] == FamilyTag{Family::E, 0, 2});
  CHECK(odd[2] == FamilyTag{Family::E, 2, 0});
  const auto even = family_tags_of_size(2);
  REQUIRE(even.size() == 2);
  CHECK(even[0] == FamilyTag{Family::F, 0, 1});
  CHECK(family_tags_of_size(1).size() == 1);
  CHECK(family_tags_of_size(0).empty());
}

TEST_CASE("embedding") {
  const auto e = embed_mod(generate_family({Family::E, 1, 1}), 23);
  CHECK_FALSE(e.collision);
  CHECK(e.set == ResidueSet(23, {0, 1, 3, 20, 22}));
  CHECK(t3_naive(e.set) == 13);
  const auto w = embed_mod(IntegerSet({0, 1, 2}), 3);
  CHECK(w.set == ResidueSet::full(3));
  CHECK(t3_naive(w.set) == 9);
  CHECK(embed_mod(IntegerSet({0}), 11).set.size() == 1);
  CHECK(embed_mod(IntegerSet({0, 5}), 5).collision);
  CHECK(embed_mod(IntegerSet({0, 1}), 7, 3).set == ResidueSet(7, {3, 4}));
}

TEST_CASE("wraparound complement") {
  const auto w = wraparound_complement(5, 0, 0);
  CHECK(w.set == ResidueSet(5, {1, 2, 3, 4}));
  CHECK(w.t3 == 12);
  CHECK_THROWS_AS(wraparound_complement(5, 2, 1), std::invalid_argument);
  // No wrap-around: the family set keeps its integer count.
  const auto e = embed_mod(generate_family({Family::E, 3, 2}), 101).set;
  CHECK(t3(e) == half_square_ceil(11));
}

TEST_CASE("optimize_wraparound") {
  for (std::int64_t n = 1; n < 101 / 3; ++n) CHECK(optimize_wraparound(101, n).t3 == half_square_ceil(n));
  CHECK(optimize_wraparound(5, 4).t3 == 12);
  CHECK(oracle::extremal_mod(4, 5, true) == 12);
  const auto full = optimize_wraparound(7, 7);
  CHECK(full.set == ResidueSet::full(7));
  CHECK(full.t3 == 49);
  CHECK(optimize_wraparound(211, 120, 1).tag == optimize_wraparound(211, 120, 3).tag);
  const auto c = optimize_wraparound_complement(101, 50);
  CHECK(c.set.size() == 50);
  CHECK(c.t3 == t3_naive(c.set));
}

TEST_CASE("intersect_search") {
  const ResidueSet a = random_set(30, 101, 5);
  const auto full = intersect_search(a, ResidueSet::full(101), 10, 1);
  REQUIRE(full.best);
  CHECK(*full.best_set == a);
  CHECK(full.trials[*full.best].t3 == t3(a));

  const ResidueSet b = random_set(60, 101, 6);
  const auto one = intersect_search(a, b, 1, 42);
  const auto again = intersect_search(a, b, 1, 42);
  CHECK(one.trials[0].lambda == again.trials[0].lambda);
  CHECK(one.trials[0].mu == again.trials[0].mu);

  IntersectOptions threaded;
  threaded.threads = 4;
  const auto serial = intersect_search(a, b, 200, 9);
  const auto parallel = intersect_search(a, b, 200, 9, threaded);
  REQUIRE(serial.trials.size() == parallel.trials.size());
  for (std::size_t i = 0; i < serial.trials.size(); ++i) {
    CHECK(serial.trials[i].lambda == parallel.trials[i].lambda);
    CHECK(serial.trials[i].t3 == parallel.trials[i].t3);
  }
  CHECK(serial.best == parallel.best);
  for (const auto& t : serial.trials) CHECK(gcd64(t.lambda, 101) == 1);
  CHECK_THROWS_AS(intersect_search(a, ResidueSet(7, {0}), 3, 1), std::invalid_argument);
}

TEST_CASE("behrend sets") {
  CHECK(behrend_set(1, 10, 9) == IntegerSet({3}));
  CHECK(behrend_set(2, 3, 1) == IntegerSet({1, 6}));
  CHECK(behrend_set(2, 2, 0) == IntegerSet({0}));
  CHECK(behrend_set(3, 2, 0).size() == 1);
  CHECK_THROWS_AS(behrend_set(2, 3, 9), std::invalid_argument);
  for (int d = 1; d <= 6; ++d)
    for (std::int64_t q = 2; d * q <= 12; ++q)
      for (std::int64_t r = 0; r <= d * (q - 1) * (q - 1); ++r) {
        const auto s = behrend_set(d, q, r);
        CHECK(t3_integers(s).combinatorial == 0);
      }
  const std::int64_t r = behrend_most_populous_radius(3, 4);
  for (std::int64_t other = 0; other <= 27; ++other) CHECK(behrend_set(3, 4, other).size() <= behrend_set(3, 4, r).size());
}

TEST_CASE("random sets") {
  CHECK(random_set(11, 11, 3) == ResidueSet::full(11));
  CHECK(random_set(0, 11, 3).empty());
  CHECK(random_set(5, 50, 77) == random_set(5, 50, 77));
  CHECK_THROWS_AS(random_set(12, 11, 1), std::invalid_argument);
  // Each residue should turn up about equally often.
  std::vector<int> hits(10, 0);
  for (std::uint64_t seed = 0; seed < 2000; ++seed) {
    const auto s = random_set(3, 10, seed);
    for (std::int64_t x : s.elements()) ++hits[static_cast<std::size_t>(x)];
  }
  for (int h : hits) CHECK((h > 480 && h < 720));
}
