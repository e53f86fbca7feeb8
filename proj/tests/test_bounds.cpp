#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap3/bounds.hpp"
#include "ap3/construct.hpp"
#include "ap3/count.hpp"

using namespace ap3;

namespace {

Rational q(std::int64_t p, std::int64_t d = 1) { return make_rational(p, d); }

BoundRecord rec(Target t, Rational alpha, Rational value, BoundSide side) {
  BoundRecord r;
  r.target = t;
  r.alpha = std::move(alpha);
  r.value = std::move(value);
  r.side = side;
  r.provenance.detail = "test";
  return r;
}

void check_consistent(const Ledger& l) {
  for (const auto& a : l.grid())
    for (Target t : {Target::m3, Target::M3}) {
      const auto up = l.best_upper(t, a);
      const auto lo = l.best_lower(t, a);
      if (up && lo) CHECK(*lo <= *up);
    }
}

}  // namespace

TEST_CASE("rational helpers") {
  CHECK(to_string(q(6, 8)) == "3/4");
  CHECK(to_string(q(-4, 2)) == "-2");
  CHECK(parse_rational("0.25") == q(1, 4));
  CHECK(parse_rational("-7/21") == q(-1, 3));
  CHECK(parse_rational("5") == q(5));
  CHECK_THROWS(parse_rational("1/0"));
  CHECK_THROWS(parse_rational("abc"));
  CHECK(to_decimal(q(1, 3), 5) == "0.33333");
  CHECK(to_decimal(q(-1, 8), 2) == "-0.12");
  CHECK(exact_from_double(0.375) == q(3, 8));
}

TEST_CASE("closed forms") {
  CHECK(curve_m3_upper(q(1, 2)) == q(5, 48));
  CHECK(curve_m3_upper(q(1, 3)) == q(1, 36));
  CHECK(curve_m3_upper(q(2, 3)) == q(5, 18));
  CHECK_THROWS_AS(curve_m3_upper(q(1, 4)), std::domain_error);
  CHECK_THROWS_AS(curve_m3_upper(q(7, 10)), std::domain_error);
  CHECK(single_family_m3_upper(q(1, 3)) == curve_m3_upper(q(1, 3)));
  CHECK_THROWS_AS(single_family_m3_upper(q(1, 2)), std::domain_error);

  const auto s = exact_small_alpha(q(1, 10));
  CHECK(s.M3 == q(1, 200));
  CHECK(to_double(s.M3) == doctest::Approx(0.005));
  CHECK(s.M3 + s.m3_at_one_minus == complement_constant(q(9, 10)));
  CHECK(s.condition.find("alpha < c") != std::string::npos);
  CHECK(exact_small_alpha(q(0)).M3 == 0);
  CHECK(complement_constant(q(1, 2)) == q(1, 4));
}

TEST_CASE("complement transfer") {
  const auto up = rec(Target::m3, q(1, 2), q(5, 48), BoundSide::upper);
  const auto t = complement_transfer(up);
  CHECK(t.target == Target::M3);
  CHECK(t.side == BoundSide::lower);
  CHECK(t.alpha == q(1, 2));
  CHECK(t.value == q(7, 48));
  CHECK(t.provenance.kind == ProvenanceKind::complement);
  CHECK(complement_transfer(t).value == up.value);
  CHECK(complement_transfer(t).target == Target::m3);

  const auto zero = complement_transfer(rec(Target::m3, q(0), q(0), BoundSide::exact));
  CHECK(zero.alpha == 1);
  CHECK(zero.value == 1);
  CHECK(zero.side == BoundSide::exact);

  // Exact small-alpha values move to the exact m3 formula.
  const Rational a = q(1, 10);
  const auto e = complement_transfer(rec(Target::M3, a, exact_small_alpha(a).M3, BoundSide::exact));
  CHECK(e.alpha == q(9, 10));
  CHECK(e.value == exact_small_alpha(a).m3_at_one_minus);

  for (std::int64_t num = 0; num <= 96; ++num)
    for (std::int64_t v = 0; v <= 20; ++v) {
      const auto r = rec(Target::m3, q(num, 96), q(v, 80), BoundSide::upper);
      const auto back = complement_transfer(complement_transfer(r));
      // Clamping can only lose information when the first transfer leaves [0, 1].
      const Rational mid = complement_constant(r.alpha) - r.value;
      if (mid >= 0 && mid <= 1) CHECK(back.value == r.value);
    }
}

TEST_CASE("ledger insertion rules") {
  Ledger l;
  CHECK_THROWS_AS(l.insert(rec(Target::m3, q(3, 2), q(0), BoundSide::upper)), std::invalid_argument);
  CHECK_THROWS_AS(l.insert(rec(Target::m3, q(1, 2), q(-1, 5), BoundSide::upper)), std::invalid_argument);
  CHECK_THROWS_AS(l.insert(rec(Target::m3, q(1, 97), q(0), BoundSide::upper)), std::invalid_argument);

  l.insert(rec(Target::m3, q(1, 2), q(1, 8), BoundSide::upper));
  l.insert(rec(Target::m3, q(1, 2), q(5, 48), BoundSide::upper));
  l.insert(rec(Target::m3, q(1, 2), q(1, 9), BoundSide::upper));
  CHECK(l.best_upper(Target::m3, q(1, 2)) == q(5, 48));
  CHECK_FALSE(l.best_lower(Target::m3, q(1, 2)));
  l.insert(rec(Target::m3, q(1, 2), q(1, 20), BoundSide::lower));
  CHECK_THROWS_AS(l.insert(rec(Target::m3, q(1, 2), q(1, 5), BoundSide::lower)), LedgerInconsistent);
  CHECK(l.best_lower(Target::m3, q(1, 2)) == q(1, 20));
  check_consistent(l);

  const auto w = wraparound_complement(101, 8, 4);
  const auto c = construction_bound(w.set, Target::m3, "wrap");
  CHECK(c.finite_n);
  CHECK(c.modulus == 101);
  CHECK(c.alpha == q(static_cast<std::int64_t>(w.set.size()), 101));
  const std::size_t before = l.records().size();
  l.insert(c);
  CHECK(l.records().size() == before);
  CHECK(l.observations().size() == 1);
}

TEST_CASE("construction records") {
  const auto full = construction_bound(ResidueSet::full(7), Target::M3, "full");
  CHECK(full.alpha == 1);
  CHECK(full.value == 1);
  CHECK(full.side == BoundSide::lower);

  const std::int64_t n = 40, modulus = 401;
  const auto interval = construction_bound(ResidueSet(modulus, [&] {
                                             std::vector<std::int64_t> v;
                                             for (std::int64_t i = 0; i < n; ++i) v.push_back(i);
                                             return v;
                                           }()),
                                           Target::M3, "interval");
  CHECK(interval.value == q(static_cast<std::int64_t>(half_square_ceil(n)), modulus * modulus));

  const auto ex = exhaustive_bound(4, 5, 12, Target::M3);
  CHECK(ex.provenance.kind == ProvenanceKind::exhaustive);
  CHECK(ex.provenance.detail == "4,5");
  CHECK(ex.value == q(12, 25));

  const auto big = optimize_wraparound_complement(1201, 600);
  const auto b = construction_bound(big.set, Target::m3, "wrap");
  CHECK(to_double(b.value) == doctest::Approx(5.0 / 48).epsilon(0.02));
}

TEST_CASE("closure from the seed") {
  Ledger l = seed_ledger();
  CHECK(l.best_upper(Target::m3, q(1, 2)) == q(5, 48));
  CHECK(l.best_lower(Target::M3, q(1)) == 1);

  std::map<std::pair<int, Rational>, Rational> before;
  for (const auto& a : l.grid())
    if (auto u = l.best_upper(Target::m3, a)) before[{0, a}] = *u;

  const auto stats = submultiplicative_closure(l);
  CHECK(stats.added > 0);
  CHECK(l.best_lower(Target::M3, q(1, 2)) >= q(7, 48));
  CHECK(l.best_upper(Target::m3, q(1, 4)) <= q(25, 2304));
  CHECK(l.best_lower(Target::M3, q(1, 4)) >= q(49, 2304));
  for (const auto& [key, v] : before) CHECK(*l.best_upper(Target::m3, key.second) <= v);
  check_consistent(l);

  const auto idx = l.best_upper_index(Target::m3, q(1, 4));
  REQUIRE(idx);
  for (std::size_t p : l.records()[*idx].provenance.parents) CHECK(p < *idx);

  const std::size_t size = l.records().size();
  const auto again = submultiplicative_closure(l);
  CHECK(again.added == 0);
  CHECK(l.records().size() == size);
}

TEST_CASE("depth limits the grid") {
  GridOptions shallow;
  shallow.max_depth = 1;
  Ledger l = seed_ledger({}, shallow);
  submultiplicative_closure(l);
  CHECK(l.best_upper(Target::m3, q(1, 4)));
  CHECK_FALSE(l.best_upper(Target::m3, q(1, 8)));
  CHECK(l.admissible_depth(q(1, 2)) == 0);
  CHECK(l.admissible_depth(q(1, 4)) == 1);
}

TEST_CASE("cutoff certificate") {
  const auto c = ef_sharpness_cutoff();
  CHECK(c.lo <= c.hi);
  CHECK(c.hi - c.lo < q(1, 100000000000000LL));
  CHECK(c.sqrt6_lo * c.sqrt6_lo <= 6);
  CHECK(c.sqrt6_hi * c.sqrt6_hi >= 6);
  CHECK(c.decimal.substr(0, 14) == "0.317306119615");
  CHECK(c.approx == doctest::Approx(0.3173).epsilon(1e-3));
  CHECK(c.matches_reported_value);
  CHECK(c.below.dominates);
  CHECK_FALSE(c.above.dominates);
  CHECK(c.at_031.dominates);
  CHECK_FALSE(c.at_033.dominates);
  CHECK(*c.at_031.best_product < c.at_031.single_family);
  // Closed form: the endpoints bracket 2(7 + 2 sqrt6)/75.
  CHECK(c.lo <= (14 + 4 * c.sqrt6_hi) / 75);
  CHECK(c.hi >= (14 + 4 * c.sqrt6_lo) / 75);
}
