#include "ap3/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "ap3/count.hpp"
#include "ap3/parallel.hpp"
#include "ap3/search.hpp"

namespace ap3 {

namespace {

struct Arc {
  std::int64_t length;
  std::int64_t dilator;
  std::int64_t offset;

  bool operator<(const Arc& o) const {
    return std::tie(length, dilator, offset) < std::tie(o.length, o.dilator, o.offset);
  }
};

// Shortest arc over the sorted positions holding `need` of them.
Arc shortest_arc(const std::vector<std::int64_t>& s, std::size_t need, std::int64_t modulus, std::int64_t d) {
  const std::size_t n = s.size();
  Arc best{modulus, d, 0};
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = i + need - 1;
    const std::int64_t end = j < n ? s[j] : s[j - n] + modulus;
    const std::int64_t len = end - s[i];
    if (len < best.length) best = Arc{len, d, s[i]};
  }
  return best;
}

BigInt big(std::uint64_t x) { return BigInt(x); }

// E <= bound * |A|^{3/2} |B|^{3/2}, exactly, via squares.
bool energy_at_most(std::uint64_t energy, const Rational& bound, std::size_t a, std::size_t b) {
  const Rational lhs = Rational(big(energy) * big(energy));
  const Rational rhs = bound * bound * Rational(big(a) * a * a * b * b * b);
  return lhs <= rhs;
}

bool energy_at_least(std::uint64_t energy, const Rational& bound, std::size_t a, std::size_t b) {
  const Rational lhs = Rational(big(energy) * big(energy));
  const Rational rhs = bound * bound * Rational(big(a) * a * a * b * b * b);
  return lhs >= rhs;
}

std::uint64_t max_dilated_energy(const ResidueSet& x, const ResidueSet& y, std::int64_t L) {
  std::uint64_t best = 0;
  for (std::int64_t l1 = 1; l1 <= L; ++l1) {
    const ResidueSet dx = dilate(x, l1);
    for (std::int64_t l2 = 1; l2 <= L; ++l2) best = std::max(best, additive_energy(dx, dilate(y, l2)));
  }
  return best;
}

}  // namespace

RectificationResult rectify(const ResidueSet& a, const Rational& coverage, unsigned threads) {
  const std::int64_t n = a.modulus();
  if (!is_prime(n)) throw UnsupportedModulus("rectify requires a prime modulus, got " + std::to_string(n));
  if (a.empty()) throw std::invalid_argument("rectify: empty set");
  if (coverage <= 0 || coverage > 1) throw std::invalid_argument("rectify: coverage must lie in (0, 1]");

  const Rational scaled = coverage * static_cast<std::int64_t>(a.size());
  BigInt need_big = numerator(scaled) / denominator(scaled);
  if (need_big * denominator(scaled) != numerator(scaled)) ++need_big;
  const auto need = static_cast<std::size_t>(std::max<BigInt>(need_big, 1));

  const std::int64_t units = n - 1;
  const std::size_t chunks = static_cast<std::size_t>(std::min<std::int64_t>(units, 256));
  std::vector<Arc> best(chunks, Arc{n + 1, 0, 0});
  const bool use_mask = static_cast<std::int64_t>(a.size()) * 8 > n;
  parallel_for(chunks, threads, [&](std::size_t c) {
    const std::int64_t lo = 1 + units * static_cast<std::int64_t>(c) / static_cast<std::int64_t>(chunks);
    const std::int64_t hi = 1 + units * static_cast<std::int64_t>(c + 1) / static_cast<std::int64_t>(chunks);
    std::vector<std::int64_t> pos(a.size());
    std::vector<char> mask;
    if (use_mask) mask.assign(static_cast<std::size_t>(n), 0);
    for (std::int64_t d = lo; d < hi; ++d) {
      if (use_mask) {
        std::fill(mask.begin(), mask.end(), 0);
        for (std::int64_t x : a.elements()) mask[static_cast<std::size_t>(mul_mod(d, x, n))] = 1;
        std::size_t k = 0;
        for (std::int64_t v = 0; v < n; ++v)
          if (mask[static_cast<std::size_t>(v)]) pos[k++] = v;
      } else {
        std::size_t k = 0;
        for (std::int64_t x : a.elements()) pos[k++] = mul_mod(d, x, n);
        std::sort(pos.begin(), pos.end());
      }
      best[c] = std::min(best[c], shortest_arc(pos, need, n, d));
    }
  });
  const Arc winner = *std::min_element(best.begin(), best.end());

  RectificationResult r;
  r.dilator = winner.dilator;
  r.offset = winner.offset;
  r.arc_length = winner.length;
  r.covered = rectified_elements(a, r).size();
  r.covered_fraction = make_rational(static_cast<std::int64_t>(r.covered), static_cast<std::int64_t>(a.size()));
  return r;
}

ResidueSet rectified_elements(const ResidueSet& a, const RectificationResult& r) {
  const std::int64_t n = a.modulus();
  std::vector<std::int64_t> out;
  for (std::int64_t x : a.elements())
    if (floor_mod(mul_mod(r.dilator, x, n) - r.offset, n) <= r.arc_length) out.push_back(x);
  return ResidueSet(n, std::move(out));
}

// ---------------------------------------------------------------------------

ResidueSet Decomposition::whole() const {
  ResidueSet out = noise;
  for (const auto& p : parts) out = set_union(out, p);
  return out;
}

void validate_decomposition(const Decomposition& d, const ResidueSet* original) {
  const Rational half = make_rational(1, 2);
  if (d.eps <= 0 || d.eps >= half) throw std::invalid_argument("decomposition: eps must lie in (0, 1/2)");
  if (d.eps_prime <= 0 || d.eps_prime >= half) throw std::invalid_argument("decomposition: eps' must lie in (0, 1/2)");
  if (d.L < 1) throw std::invalid_argument("decomposition: L must be >= 1");
  const std::int64_t n = d.modulus();
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  auto claim = [&](const ResidueSet& s) {
    if (s.modulus() != n) throw std::invalid_argument("decomposition: parts use different moduli");
    for (std::int64_t x : s.elements()) {
      if (seen[static_cast<std::size_t>(x)]) throw std::invalid_argument("decomposition: parts are not disjoint");
      seen[static_cast<std::size_t>(x)] = 1;
    }
  };
  for (const auto& p : d.parts) {
    if (p.empty()) throw std::invalid_argument("decomposition: empty part");
    claim(p);
  }
  claim(d.noise);
  if (original && !(d.whole() == *original)) throw std::invalid_argument("decomposition: union differs from the set");
}

Decomposition decompose_heuristic(const ResidueSet& a, const Rational& eps, const Rational& eps_prime, std::int64_t L,
                                  const DecomposeOptions& options) {
  Decomposition d;
  d.eps = eps;
  d.eps_prime = eps_prime;
  d.L = L;
  d.noise = ResidueSet::empty(a.modulus());
  validate_decomposition(d);

  const std::size_t n = a.size();
  const Rational cube = Rational(big(n) * n * n);
  const Rational min_size_r = eps * static_cast<std::int64_t>(n);
  const auto min_size =
      std::max(options.min_part, static_cast<std::size_t>(numerator(min_size_r) / denominator(min_size_r)));

  ResidueSet rest = a;
  while (!rest.empty()) {
    if (Rational(big(max_dilated_energy(rest, a, L))) <= eps * cube) break;
    std::optional<ResidueSet> cluster;
    for (const auto& cov : options.coverages) {
      const auto r = rectify(rest, cov, options.threads);
      ResidueSet c = rectified_elements(rest, r);
      if (c.size() >= min_size && doubling_delta(c) <= options.max_doubling) {
        cluster = std::move(c);
        break;
      }
    }
    if (!cluster) break;
    rest = set_difference(rest, *cluster);
    d.parts.push_back(std::move(*cluster));
  }
  d.noise = rest;

  // Agglomerate communicating parts, lowest index pair first.
  for (bool merged = true; merged;) {
    merged = false;
    for (std::size_t i = 0; i < d.parts.size() && !merged; ++i)
      for (std::size_t j = i + 1; j < d.parts.size() && !merged; ++j) {
        const std::uint64_t e = max_dilated_energy(d.parts[i], d.parts[j], L);
        if (!energy_at_least(e, eps_prime, d.parts[i].size(), d.parts[j].size())) continue;
        d.parts[i] = set_union(d.parts[i], d.parts[j]);
        d.parts.erase(d.parts.begin() + static_cast<std::ptrdiff_t>(j));
        merged = true;
      }
  }
  validate_decomposition(d, &a);
  return d;
}

ConditionReport verify_decomposition(const Decomposition& d) {
  validate_decomposition(d);
  const ResidueSet whole = d.whole();
  const std::size_t n = whole.size();
  const std::size_t k = d.parts.size();
  ConditionReport report;
  for (const auto& p : d.parts) {
    report.largeness.push_back(make_rational(static_cast<std::int64_t>(n), static_cast<std::int64_t>(p.size())));
    report.structured.push_back(doubling_delta(p));
  }
  report.cross_energy.assign(k, std::vector<std::uint64_t>(k, 0));
  report.cross_normalized.assign(k, std::vector<double>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      const std::uint64_t e = max_dilated_energy(d.parts[i], d.parts[j], d.L);
      const double norm = static_cast<double>(e) / std::pow(static_cast<double>(d.parts[i].size()) *
                                                                 static_cast<double>(d.parts[j].size()),
                                                             1.5);
      report.cross_energy[i][j] = report.cross_energy[j][i] = e;
      report.cross_normalized[i][j] = report.cross_normalized[j][i] = norm;
      if (i != j && !energy_at_most(e, d.eps_prime, d.parts[i].size(), d.parts[j].size())) report.cross_ok = false;
    }
  if (!d.noise.empty()) {
    report.noise_energy = max_dilated_energy(d.noise, whole, d.L);
    const Rational cube = Rational(big(n) * n * n);
    report.noise_normalized = to_double(Rational(big(report.noise_energy)) / cube);
    report.noise_ok = Rational(big(report.noise_energy)) <= d.eps * cube;
  }
  return report;
}

// ---------------------------------------------------------------------------

T3EnergyCheck check_t3_energy_inequality(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3) {
  const std::int64_t n = a1.modulus();
  if (a2.modulus() != n || a3.modulus() != n) throw std::invalid_argument("check_t3_energy_inequality: modulus mismatch");
  if (n % 2 == 0) throw UnsupportedModulus("check_t3_energy_inequality requires an odd modulus");
  const ResidueSet two_a2 = dilate(a2, 2);
  T3EnergyCheck c;
  c.lhs = pow(big(t3_fast(a1, a2, a3)), 6);
  c.rhs = big(a1.size()) * a2.size() * a3.size() * big(additive_energy(two_a2, a3)) * big(additive_energy(a1, a3)) *
          big(additive_energy(a1, two_a2));
  c.holds = c.lhs <= c.rhs;
  return c;
}

namespace {

template <class Set>
EnergyLemmaCheck energy_lemma(const Set& a, const Set& b) {
  EnergyLemmaCheck c;
  if (a.empty() || b.empty()) return c;
  const std::uint64_t e = additive_energy(a, b);
  c.energy = e;
  const BigInt na = a.size(), nb = b.size(), E = e;
  c.part_i = E <= na * na * nb && E <= na * nb * nb && E * E <= na * na * na * nb * nb * nb;
  c.part_ii = BigInt(max_translate_overlap(a, b)) * na * nb >= E;
  const BigInt sq = na * na * nb * nb;
  c.part_iii = E * BigInt(sumset(a, b).size()) >= sq && E * BigInt(difference_set(a, b).size()) >= sq;
  return c;
}

template <class Set>
UnionDoublingCheck union_doubling(const Set& a, const Set& b, const Rational& eta) {
  if (eta <= 0) throw std::invalid_argument("check_union_doubling: eta must be positive");
  UnionDoublingCheck c;
  if (a.empty() || b.empty()) return c;
  c.energy = additive_energy(a, b);
  const Rational e2 = Rational(big(c.energy) * big(c.energy));
  const BigInt na = a.size(), nb = b.size();
  c.applicable = e2 >= eta * eta * Rational(na * na * na * nb * nb * nb);
  if (!c.applicable) return c;
  c.delta_union = doubling_delta(set_union(a, b));
  c.bound = 4 * doubling_delta(a) * doubling_delta(b) / eta;
  c.holds = c.delta_union <= c.bound;
  return c;
}

}  // namespace

EnergyLemmaCheck check_energy_lemma(const ResidueSet& a, const ResidueSet& b) { return energy_lemma(a, b); }
EnergyLemmaCheck check_energy_lemma(const IntegerSet& a, const IntegerSet& b) { return energy_lemma(a, b); }

UnionDoublingCheck check_union_doubling(const ResidueSet& a, const ResidueSet& b, const Rational& eta) {
  return union_doubling(a, b, eta);
}
UnionDoublingCheck check_union_doubling(const IntegerSet& a, const IntegerSet& b, const Rational& eta) {
  return union_doubling(a, b, eta);
}

FinalLemmaCheck check_final_lemma(const ResidueSet& a) {
  const std::int64_t n = a.modulus();
  if (n % 2 == 0) throw UnsupportedModulus("check_final_lemma requires an odd modulus");
  FinalLemmaCheck c;
  if (a.empty()) return c;
  const std::int64_t h = n / 24;
  for (std::int64_t x : a.elements())
    if (std::min(x, n - x) <= h) ++c.inside;
  c.applicable = 20 * c.inside >= 19 * a.size();
  if (!c.applicable) return c;
  c.t3 = t3(a);
  c.bound = half_square_ceil(a.size());
  c.equality = c.t3 == c.bound;
  c.holds = c.t3 <= c.bound;
  if (c.equality) {
    const auto cls = classify_extremal(a);
    c.tag = cls.tag;
    c.holds = c.holds && cls.matched;
  }
  return c;
}

}  // namespace ap3
