#include "ap3/bounds.hpp"

#include <algorithm>
#include <cmath>

#include "ap3/count.hpp"

namespace ap3 {

namespace {

const Rational kZero = 0;
const Rational kOne = 1;

bool in_unit_interval(const Rational& x) { return x >= kZero && x <= kOne; }

Rational clamp_unit(const Rational& x) { return x < kZero ? kZero : (x > kOne ? kOne : x); }

bool counts_as_upper(BoundSide s) { return s != BoundSide::lower; }
bool counts_as_lower(BoundSide s) { return s != BoundSide::upper; }

}  // namespace

std::string Provenance::to_string() const {
  auto join = [this] {
    std::string out;
    for (std::size_t i = 0; i < parents.size(); ++i) out += (i ? "," : "") + std::to_string(parents[i]);
    return out;
  };
  switch (kind) {
    case ProvenanceKind::closed_form:
      return detail.empty() ? "closed-form" : "closed-form(" + detail + ")";
    case ProvenanceKind::construction:
      return "construction(" + detail + ")";
    case ProvenanceKind::submultiplicative:
      return "submultiplicative(" + join() + ")";
    case ProvenanceKind::complement:
      return "complement(" + join() + ")";
    case ProvenanceKind::exhaustive:
      return "exhaustive(" + detail + ")";
  }
  return "unknown";
}

std::string to_string(Target t) { return t == Target::m3 ? "m3" : "M3"; }

std::string to_string(BoundSide s) {
  switch (s) {
    case BoundSide::upper:
      return "upper";
    case BoundSide::lower:
      return "lower";
    case BoundSide::exact:
      return "exact";
  }
  return "upper";
}

Target parse_target(const std::string& text) {
  if (text == "m3") return Target::m3;
  if (text == "M3") return Target::M3;
  throw std::invalid_argument("unknown target '" + text + "'");
}

BoundSide parse_side(const std::string& text) {
  if (text == "upper") return BoundSide::upper;
  if (text == "lower") return BoundSide::lower;
  if (text == "exact") return BoundSide::exact;
  throw std::invalid_argument("unknown side '" + text + "'");
}

ProvenanceKind parse_provenance_kind(const std::string& text) {
  if (text == "closed-form") return ProvenanceKind::closed_form;
  if (text == "construction") return ProvenanceKind::construction;
  if (text == "submultiplicative") return ProvenanceKind::submultiplicative;
  if (text == "complement") return ProvenanceKind::complement;
  if (text == "exhaustive") return ProvenanceKind::exhaustive;
  throw std::invalid_argument("unknown provenance '" + text + "'");
}

Rational complement_constant(const Rational& alpha) { return 1 - 3 * alpha + 3 * alpha * alpha; }

Rational curve_m3_upper(const Rational& alpha) {
  if (alpha < make_rational(1, 3) || alpha > make_rational(2, 3))
    throw std::domain_error("curve_m3_upper: alpha " + to_string(alpha) + " outside [1/3, 2/3]");
  return (2 - 12 * alpha + 21 * alpha * alpha) / 12;
}

Rational single_family_m3_upper(const Rational& alpha) {
  if (alpha < kZero || alpha > make_rational(1, 3))
    throw std::domain_error("single_family_m3_upper: alpha " + to_string(alpha) + " outside [0, 1/3]");
  return alpha * alpha / 4;
}

SmallAlphaValues exact_small_alpha(const Rational& alpha) {
  SmallAlphaValues v;
  v.M3 = alpha * alpha / 2;
  const Rational beta = 1 - alpha;
  v.m3_at_one_minus = make_rational(1, 2) - 2 * beta + make_rational(5, 2) * beta * beta;
  return v;
}

BoundRecord complement_transfer(const BoundRecord& r) {
  BoundRecord out;
  out.target = r.target == Target::m3 ? Target::M3 : Target::m3;
  out.alpha = 1 - r.alpha;
  out.value = clamp_unit(complement_constant(r.alpha) - r.value);
  out.side = r.side == BoundSide::exact ? BoundSide::exact
                                        : (r.side == BoundSide::upper ? BoundSide::lower : BoundSide::upper);
  out.provenance.kind = ProvenanceKind::complement;
  out.finite_n = r.finite_n;
  out.modulus = r.modulus;
  return out;
}

BoundRecord construction_bound(const ResidueSet& a, Target target, const std::string& id) {
  const std::int64_t n = a.modulus();
  BoundRecord r;
  r.target = target;
  r.alpha = make_rational(static_cast<std::int64_t>(a.size()), n);
  r.value = Rational(BigInt(t3(a)), BigInt(n) * n);
  r.side = target == Target::m3 ? BoundSide::upper : BoundSide::lower;
  r.provenance = {ProvenanceKind::construction, id, {}};
  r.finite_n = true;
  r.modulus = n;
  return r;
}

BoundRecord exhaustive_bound(std::int64_t n, std::int64_t modulus, std::uint64_t value, Target target) {
  BoundRecord r;
  r.target = target;
  r.alpha = make_rational(n, modulus);
  r.value = Rational(BigInt(value), BigInt(modulus) * modulus);
  r.side = target == Target::m3 ? BoundSide::upper : BoundSide::lower;
  r.provenance = {ProvenanceKind::exhaustive, std::to_string(n) + "," + std::to_string(modulus), {}};
  r.finite_n = true;
  r.modulus = modulus;
  return r;
}

// ---------------------------------------------------------------------------

std::optional<int> Ledger::admissible_depth(const Rational& alpha) const {
  auto it = depth_.find(alpha);
  if (it != depth_.end()) return it->second;
  if (denominator(alpha) <= grid_.max_denominator) return 0;
  return std::nullopt;
}

const Ledger::Best* Ledger::find(Target t, const Rational& alpha) const {
  auto it = best_.find({static_cast<int>(t), alpha});
  return it == best_.end() ? nullptr : &it->second;
}

std::optional<std::size_t> Ledger::best_upper_index(Target t, const Rational& alpha) const {
  const Best* b = find(t, alpha);
  return b ? b->upper : std::nullopt;
}

std::optional<std::size_t> Ledger::best_lower_index(Target t, const Rational& alpha) const {
  const Best* b = find(t, alpha);
  return b ? b->lower : std::nullopt;
}

std::optional<Rational> Ledger::best_upper(Target t, const Rational& alpha) const {
  auto i = best_upper_index(t, alpha);
  if (!i) return std::nullopt;
  return records_[*i].value;
}

std::optional<Rational> Ledger::best_lower(Target t, const Rational& alpha) const {
  auto i = best_lower_index(t, alpha);
  if (!i) return std::nullopt;
  return records_[*i].value;
}

std::vector<Rational> Ledger::grid() const {
  std::vector<Rational> out;
  for (const auto& [key, best] : best_) out.push_back(key.second);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::size_t Ledger::insert(BoundRecord record, bool admit_finite) {
  if (!in_unit_interval(record.alpha)) throw std::invalid_argument("bound record alpha outside [0, 1]");
  if (!in_unit_interval(record.value)) throw std::invalid_argument("bound record value outside [0, 1]");
  for (std::size_t p : record.provenance.parents)
    if (p >= records_.size()) throw std::invalid_argument("bound record refers to an unknown parent");

  if (record.finite_n && !admit_finite) {
    observations_.push_back(std::move(record));
    return observations_.size() - 1;
  }

  // Grid membership: base points have small denominators; products and
  // complements of grid points are admitted up to the configured depth.
  int depth = 0;
  const auto& parents = record.provenance.parents;
  if (record.provenance.kind == ProvenanceKind::submultiplicative && parents.size() == 2) {
    const auto d1 = admissible_depth(records_[parents[0]].alpha);
    const auto d2 = admissible_depth(records_[parents[1]].alpha);
    if (!d1 || !d2) throw std::invalid_argument("product parents are off the grid");
    depth = std::max(*d1, *d2) + 1;
  } else if (record.provenance.kind == ProvenanceKind::complement && parents.size() == 1) {
    const auto d = admissible_depth(records_[parents[0]].alpha);
    if (!d) throw std::invalid_argument("complement parent is off the grid");
    depth = *d;
  } else if (!record.finite_n) {
    auto known = admissible_depth(record.alpha);
    if (!known) throw std::invalid_argument("alpha " + to_string(record.alpha) + " is off the grid");
    depth = *known;
  }
  if (depth > grid_.max_depth)
    throw std::invalid_argument("alpha " + to_string(record.alpha) + " exceeds the grid depth");

  const std::pair<int, Rational> key{static_cast<int>(record.target), record.alpha};
  Best next = best_.count(key) ? best_.at(key) : Best{};
  const std::size_t index = records_.size();
  auto upper_of = [&](std::optional<std::size_t> i) -> const Rational& { return records_[*i].value; };
  if (counts_as_upper(record.side) && (!next.upper || record.value < upper_of(next.upper))) next.upper = index;
  if (counts_as_lower(record.side) && (!next.lower || record.value > upper_of(next.lower))) next.lower = index;
  const Rational& hi = next.upper == index ? record.value : (next.upper ? upper_of(next.upper) : kOne);
  const Rational& lo = next.lower == index ? record.value : (next.lower ? upper_of(next.lower) : kZero);
  if (next.upper && next.lower && lo > hi)
    throw LedgerInconsistent(to_string(record.target) + "(" + to_string(record.alpha) + "): lower bound " +
                             to_string(lo) + " exceeds upper bound " + to_string(hi));

  records_.push_back(std::move(record));
  best_[key] = next;
  auto [it, fresh] = depth_.emplace(key.second, depth);
  if (!fresh) it->second = std::min(it->second, depth);
  return index;
}

Ledger seed_ledger(const std::vector<Rational>& curve_alphas, GridOptions grid) {
  Ledger ledger(grid);
  std::vector<Rational> alphas = curve_alphas;
  if (alphas.empty()) alphas = {make_rational(1, 3), make_rational(1, 2), make_rational(2, 3)};
  std::sort(alphas.begin(), alphas.end());
  alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());

  BoundRecord empty_set;
  empty_set.target = Target::m3;
  empty_set.alpha = 0;
  empty_set.value = 0;
  empty_set.side = BoundSide::exact;
  empty_set.provenance = {ProvenanceKind::closed_form, "empty set", {}};
  ledger.insert(empty_set);

  BoundRecord full_group = empty_set;
  full_group.target = Target::M3;
  full_group.alpha = 1;
  full_group.value = 1;
  full_group.provenance.detail = "full group";
  ledger.insert(full_group);

  for (const auto& a : alphas) {
    BoundRecord r;
    r.target = Target::m3;
    r.alpha = a;
    r.value = curve_m3_upper(a);
    r.side = BoundSide::upper;
    r.provenance = {ProvenanceKind::closed_form, "wraparound curve", {}};
    ledger.insert(r);
  }
  return ledger;
}

// ---------------------------------------------------------------------------

namespace {

struct Proposal {
  BoundRecord record;
};

bool improves(const Ledger& ledger, const BoundRecord& r) {
  if (counts_as_upper(r.side)) {
    auto cur = ledger.best_upper(r.target, r.alpha);
    if (!cur || r.value < *cur) return true;
  }
  if (counts_as_lower(r.side)) {
    auto cur = ledger.best_lower(r.target, r.alpha);
    if (!cur || r.value > *cur) return true;
  }
  return false;
}

bool admissible_product(const Ledger& ledger, const Rational& a, const Rational& b) {
  const auto da = ledger.admissible_depth(a);
  const auto db = ledger.admissible_depth(b);
  return da && db && std::max(*da, *db) + 1 <= ledger.grid_options().max_depth;
}

}  // namespace

ClosureStats submultiplicative_closure(Ledger& ledger, std::size_t max_iterations) {
  ClosureStats stats;
  for (; stats.iterations < max_iterations;) {
    ++stats.iterations;
    const std::vector<Rational> grid = ledger.grid();
    // (target, alpha) -> best proposal this pass.
    std::map<std::pair<int, Rational>, BoundRecord> upper, lower;
    auto offer = [&](BoundRecord r) {
      if (!improves(ledger, r)) return;
      const std::pair<int, Rational> key{static_cast<int>(r.target), r.alpha};
      auto& slot = counts_as_upper(r.side) ? upper : lower;
      auto it = slot.find(key);
      if (it == slot.end()) {
        slot.emplace(key, std::move(r));
        return;
      }
      const bool better = counts_as_upper(r.side) ? r.value < it->second.value : r.value > it->second.value;
      if (better) it->second = std::move(r);
    };

    for (Target t : {Target::m3, Target::M3}) {
      // m3 is submultiplicative from above, M3 supermultiplicative from below.
      std::vector<std::size_t> factors;
      for (const auto& a : grid) {
        auto i = t == Target::m3 ? ledger.best_upper_index(t, a) : ledger.best_lower_index(t, a);
        if (i) factors.push_back(*i);
      }
      for (std::size_t x = 0; x < factors.size(); ++x) {
        for (std::size_t y = x; y < factors.size(); ++y) {
          const auto& r1 = ledger.records()[factors[x]];
          const auto& r2 = ledger.records()[factors[y]];
          if (r1.alpha == 0 || r2.alpha == 0 || r1.alpha == 1 || r2.alpha == 1) continue;
          if (!admissible_product(ledger, r1.alpha, r2.alpha)) continue;
          BoundRecord r;
          r.target = t;
          r.alpha = r1.alpha * r2.alpha;
          r.value = r1.value * r2.value;
          r.side = t == Target::m3 ? BoundSide::upper : BoundSide::lower;
          r.provenance = {ProvenanceKind::submultiplicative, "", {factors[x], factors[y]}};
          r.finite_n = r1.finite_n || r2.finite_n;
          offer(std::move(r));
        }
      }
      for (const auto& a : grid) {
        for (auto i : {ledger.best_upper_index(t, a), ledger.best_lower_index(t, a)}) {
          if (!i) continue;
          BoundRecord r = complement_transfer(ledger.records()[*i]);
          r.provenance.parents = {*i};
          if (r.side == BoundSide::exact) {
            if (!improves(ledger, r)) continue;
            upper.emplace(std::pair<int, Rational>{static_cast<int>(r.target), r.alpha}, r);
            continue;
          }
          offer(std::move(r));
        }
      }
    }

    std::size_t added = 0;
    for (auto* slot : {&upper, &lower})
      for (auto& [key, r] : *slot) {
        if (!improves(ledger, r)) continue;
        ledger.insert(r, true);
        ++added;
      }
    stats.added += added;
    if (added == 0) break;
  }
  return stats;
}

// ---------------------------------------------------------------------------

SplitComparison compare_product_to_single(const Rational& alpha, std::int64_t max_denominator) {
  SplitComparison out;
  out.alpha = alpha;
  out.single_family = single_family_m3_upper(alpha);
  const Rational lo = make_rational(1, 3), hi = make_rational(2, 3);
  for (std::int64_t q = 1; q <= max_denominator; ++q) {
    for (std::int64_t p = (q + 2) / 3; 3 * p <= 2 * q; ++p) {
      if (gcd64(p, q) != 1) continue;
      const Rational a = make_rational(p, q);
      const Rational b = alpha / a;
      if (a < lo || b < lo || b > hi) continue;
      const Rational product = curve_m3_upper(a) * curve_m3_upper(b);
      if (!out.best_product || product < *out.best_product) {
        out.best_product = product;
        out.best_split = a;
      }
    }
  }
  out.dominates = out.best_product && *out.best_product < out.single_family;
  return out;
}

EqualSplitProbe probe_equal_split(const Rational& t) {
  EqualSplitProbe p;
  p.t = t;
  p.alpha = t * t;
  const Rational f = curve_m3_upper(t);
  p.product = f * f;
  p.single_family = single_family_m3_upper(p.alpha);
  p.dominates = p.product < p.single_family;
  return p;
}

CutoffCertificate ef_sharpness_cutoff(int digits) {
  CutoffCertificate c;
  Rational lo = 2, hi = 3;
  const Rational width = Rational(BigInt(1), BigInt(10000000) * BigInt(100000000));  // 1e-15
  while (hi - lo >= width) {
    const Rational mid = (lo + hi) / 2;
    if (mid * mid <= 6) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  c.sqrt6_lo = lo;
  c.sqrt6_hi = hi;
  c.lo = 2 * (7 + 2 * lo) / 75;
  c.hi = 2 * (7 + 2 * hi) / 75;

  const std::string a = to_decimal(c.lo, digits), b = to_decimal(c.hi, digits);
  std::size_t common = 0;
  while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
  c.decimal = a.substr(0, common);
  c.approx = to_double((c.lo + c.hi) / 2);

  // t = √α; the cutoff sits at t = (6 + √6)/15 ≈ 0.56330.
  c.below = probe_equal_split(make_rational(5632, 10000));
  c.above = probe_equal_split(make_rational(5634, 10000));
  c.at_031 = compare_product_to_single(make_rational(31, 100));
  c.at_033 = compare_product_to_single(make_rational(33, 100));
  c.matches_reported_value = std::abs(c.approx - 0.3173) < 5e-5;
  return c;
}

}  // namespace ap3
