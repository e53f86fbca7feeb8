#include "suites.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <stdexcept>

#include "ap3/analysis.hpp"
#include "ap3/construct.hpp"
#include "ap3/count.hpp"
#include "ap3/rng.hpp"

namespace ap3::cli {

namespace {

std::string str(std::uint64_t x) { return std::to_string(x); }

ResidueSet random_subset(Rng& rng, std::int64_t modulus, std::int64_t min_size = 0) {
  const std::int64_t k = rng.between(min_size, modulus);
  return random_set(k, modulus, rng.next());
}

std::int64_t modulus_or(const SuiteParams& p, std::int64_t fallback) { return p.modulus ? p.modulus : fallback; }

std::vector<SuiteRow> complement_suite(const SuiteParams& p) {
  const std::int64_t n = modulus_or(p, 7);
  if (n < 1 || std::gcd(n, std::int64_t{6}) != 1)
    throw std::invalid_argument("complement suite needs gcd(N, 6) = 1, got " + std::to_string(n));
  std::vector<SuiteRow> rows;
  auto add = [&](const ResidueSet& a, const std::string& id) {
    const auto c = complement_identity_check(a);
    rows.push_back({id, str(c.lhs), str(c.rhs), c.equal});
  };
  if (n <= 16) {
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      std::vector<std::int64_t> v;
      for (std::int64_t i = 0; i < n; ++i)
        if (mask >> i & 1) v.push_back(i);
      add(ResidueSet(n, v), "mask=" + std::to_string(mask));
    }
  } else {
    Rng rng(p.seed);
    for (std::size_t i = 0; i < p.cases; ++i) add(random_subset(rng, n), std::to_string(i));
  }
  return rows;
}

std::vector<SuiteRow> energy_suite(const SuiteParams& p) {
  const std::int64_t top = modulus_or(p, 200);
  if (top < 3) throw std::invalid_argument("energy-lemma suite needs N >= 3");
  Rng rng(p.seed);
  std::vector<SuiteRow> rows;
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::int64_t n = rng.between(3, top);
    const auto a = random_subset(rng, n, 1), b = random_subset(rng, n, 1);
    const auto c = check_energy_lemma(a, b);
    const std::uint64_t sa = a.size(), sb = b.size();
    rows.push_back({std::to_string(i) + ":N=" + std::to_string(n), str(c.energy), str(std::min(sa * sa * sb, sa * sb * sb)),
                    c.holds()});
  }
  return rows;
}

std::vector<SuiteRow> union_suite(const SuiteParams& p) {
  const std::int64_t top = modulus_or(p, 200);
  if (top < 3) throw std::invalid_argument("union-doubling suite needs N >= 3");
  Rng rng(p.seed);
  std::vector<SuiteRow> rows;
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::int64_t n = rng.between(3, top);
    const auto a = random_subset(rng, n, 1), b = random_subset(rng, n, 1);
    const auto c = check_union_doubling(a, b, make_rational(1, 8));
    if (!c.applicable) continue;
    rows.push_back({std::to_string(i) + ":N=" + std::to_string(n), to_string(c.delta_union), to_string(c.bound), c.holds});
  }
  return rows;
}

std::vector<SuiteRow> t3_energy_suite(const SuiteParams& p) {
  const std::int64_t n = modulus_or(p, 101);
  Rng rng(p.seed);
  std::vector<SuiteRow> rows;
  for (std::size_t i = 0; i < p.cases; ++i) {
    const auto a1 = random_subset(rng, n), a2 = random_subset(rng, n), a3 = random_subset(rng, n);
    const auto c = check_t3_energy_inequality(a1, a2, a3);
    rows.push_back({std::to_string(i), c.lhs.str(), c.rhs.str(), c.holds});
  }
  return rows;
}

std::vector<SuiteRow> extremal_int_suite(const SuiteParams& p) {
  if (p.n_max < 1) throw std::invalid_argument("extremal-int suite needs n-max >= 1");
  std::vector<SuiteRow> rows;
  for (std::int64_t n = 1; n <= p.n_max; ++n) {
    const auto r = max3ap_integers(n, default_width_cap(n), p.search);
    std::set<std::vector<std::int64_t>> got, fam;
    for (const auto& w : r.witnesses) got.insert(w.encoding);
    for (const auto& tag : family_tags_of_size(n)) fam.insert(canonicalize(generate_family(tag)).encoding);
    const auto expect = half_square_ceil(static_cast<std::uint64_t>(n));
    rows.push_back({"n=" + std::to_string(n), str(r.value), str(expect), r.value == expect && got == fam});
  }
  return rows;
}

std::vector<SuiteRow> extremal_mod_suite(const SuiteParams& p) {
  const std::int64_t n = modulus_or(p, 7);
  if (n <= 3 || !is_prime(n)) throw std::invalid_argument("extremal-mod suite needs a prime N > 3");
  std::vector<SuiteRow> rows;
  for (std::int64_t k = 1; k <= n; ++k)
    for (Side side : {Side::max, Side::min}) {
      const auto direct = extremal_mod(k, n, side, p.search).value;
      const auto via = extremal_mod_via_complement(k, n, side, p.search).value;
      rows.push_back({std::string(side == Side::max ? "M3" : "m3") + "(" + std::to_string(k) + "," + std::to_string(n) + ")",
                      str(direct), str(via), direct == via});
    }
  return rows;
}

// Even cases: a dilated interval must come back with arc |A| - 1.
// Odd cases: an affine image must keep the arc length.
std::vector<SuiteRow> rectify_suite(const SuiteParams& p) {
  const std::int64_t n = modulus_or(p, 10007);
  if (!is_prime(n) || n < 5) throw std::invalid_argument("rectify suite needs a prime N >= 5");
  Rng rng(p.seed);
  std::vector<SuiteRow> rows;
  for (std::size_t i = 0; i < p.cases; ++i) {
    if (i % 2 == 0) {
      const std::int64_t len = rng.between(1, std::min<std::int64_t>(200, n - 1));
      const std::int64_t d0 = rng.between(1, n - 1);
      std::vector<std::int64_t> v;
      for (std::int64_t j = 0; j < len; ++j) v.push_back(j);
      const auto r = rectify(dilate(ResidueSet(n, v), d0), 1, p.search.threads);
      rows.push_back({std::to_string(i) + ":interval d0=" + std::to_string(d0), std::to_string(r.arc_length),
                      std::to_string(len - 1), r.arc_length == len - 1});
    } else {
      const auto a = random_set(rng.between(2, std::min<std::int64_t>(60, n)), n, rng.next());
      const std::int64_t s = rng.between(1, n - 1), t = rng.between(0, n - 1);
      const auto cov = make_rational(rng.between(1, 4), 4);
      const auto x = rectify(a, cov, p.search.threads).arc_length;
      const auto y = rectify(AffineMap::modular(s, t, n).apply(a), cov, p.search.threads).arc_length;
      rows.push_back({std::to_string(i) + ":affine", std::to_string(x), std::to_string(y), x == y});
    }
  }
  return rows;
}

std::vector<SuiteRow> final_lemma_suite(const SuiteParams& p) {
  const std::int64_t n = modulus_or(p, 1009);
  if (n % 2 == 0 || n < 49) throw std::invalid_argument("final-lemma suite needs an odd N >= 49");
  const std::int64_t half_width = n / 24;
  Rng rng(p.seed);
  std::vector<SuiteRow> rows;
  for (std::size_t i = 0; i < p.cases; ++i) {
    const std::int64_t size = rng.between(1, std::min<std::int64_t>(30, 2 * half_width + 1));
    const auto base = random_set(size, 2 * half_width + 1, rng.next());
    std::vector<std::int64_t> v;
    for (std::int64_t x : base.elements()) v.push_back(floor_mod(x - half_width, n));
    const ResidueSet a(n, v);
    const auto c = check_final_lemma(a);
    rows.push_back({std::to_string(i), str(c.t3), str(c.bound), c.applicable && c.holds});
  }
  return rows;
}

std::vector<SuiteRow> behrend_suite(const SuiteParams&) {
  std::vector<SuiteRow> rows;
  for (int d = 1; d <= 6; ++d)
    for (std::int64_t q = 2; d * q <= 12; ++q)
      for (std::int64_t r = 0; r <= d * (q - 1) * (q - 1); ++r) {
        const auto s = behrend_set(d, q, r);
        const auto c = t3_integers(s).combinatorial;
        rows.push_back({"d=" + std::to_string(d) + ",q=" + std::to_string(q) + ",r=" + std::to_string(r), str(c), "0",
                        c == 0});
      }
  return rows;
}

const std::map<std::string, std::function<std::vector<SuiteRow>(const SuiteParams&)>>& registry() {
  static const std::map<std::string, std::function<std::vector<SuiteRow>(const SuiteParams&)>> r = {
      {"complement", complement_suite},     {"energy-lemma", energy_suite},
      {"union-doubling", union_suite},      {"t3-energy", t3_energy_suite},
      {"extremal-int", extremal_int_suite}, {"extremal-mod", extremal_mod_suite},
      {"rectify", rectify_suite},           {"final-lemma", final_lemma_suite},
      {"behrend", behrend_suite},
  };
  return r;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [k, v] : registry()) out.push_back(k);
    return out;
  }();
  return names;
}

std::vector<SuiteRow> run_suite(const std::string& name, const SuiteParams& params) {
  const auto it = registry().find(name);
  if (it == registry().end()) throw std::invalid_argument("unknown suite '" + name + "'");
  return it->second(params);
}

}  // namespace ap3::cli
