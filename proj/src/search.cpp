#include "ap3/search.hpp"

#include <algorithm>
#include <atomic>
#include <numeric>

#include "ap3/count.hpp"
#include "ap3/parallel.hpp"

namespace ap3 {

namespace {

// Node accounting shared across branches. Exceeding the budget depends only
// on the total node count, which is schedule-independent.
class NodeBudget {
 public:
  NodeBudget(std::uint64_t budget, std::uint64_t estimate) : budget_(budget), estimate_(estimate) {}

  void charge(std::uint64_t nodes) {
    if (used_.fetch_add(nodes) + nodes > budget_) throw BudgetExceeded(std::max(estimate_, budget_ + 1), budget_);
  }

 private:
  std::uint64_t budget_;
  std::uint64_t estimate_;
  std::atomic<std::uint64_t> used_{0};
};

void sort_unique(std::vector<CanonicalForm>& forms) {
  std::sort(forms.begin(), forms.end());
  forms.erase(std::unique(forms.begin(), forms.end()), forms.end());
}

// ---------------------------------------------------------------------------
// Integer branch and bound.

struct BranchOutcome {
  bool found = false;
  std::uint64_t best = 0;
  std::vector<std::vector<std::int64_t>> witnesses;
  std::uint64_t leaves = 0;
  std::uint64_t pruned = 0;
  std::uint64_t nodes = 0;
};

class IntegerBranchSearch {
 public:
  IntegerBranchSearch(std::int64_t n, std::int64_t width, std::uint64_t floor, NodeBudget& budget)
      : n_(n), width_(width), floor_(floor), budget_(budget), position_(static_cast<std::size_t>(width + 1), -1) {
    elements_.reserve(static_cast<std::size_t>(n));
    midpoint_uses_.assign(static_cast<std::size_t>(n), 0);
  }

  BranchOutcome run(std::int64_t second) {
    push(0);
    if (n_ == 1) {
      leaf();
    } else {
      push(second);
      descend();
      pop();
    }
    pop();
    flush_budget(true);
    return std::move(out_);
  }

 private:
  // Progressions newly closed by z as their largest element.
  void push(std::int64_t z) {
    const std::size_t idx = elements_.size();
    std::vector<std::size_t> touched;
    for (std::size_t i = 0; i + 1 <= idx; ++i) {
      const std::int64_t x = elements_[i];
      if (((x + z) & 1) != 0) continue;
      const std::int64_t mid = (x + z) / 2;
      const std::int64_t p = position_[static_cast<std::size_t>(mid)];
      if (p > static_cast<std::int64_t>(i)) {
        ++midpoint_uses_[static_cast<std::size_t>(p)];
        touched.push_back(static_cast<std::size_t>(p));
      }
    }
    combinatorial_ += touched.size();
    position_[static_cast<std::size_t>(z)] = static_cast<std::int64_t>(idx);
    elements_.push_back(z);
    touched_.push_back(std::move(touched));
  }

  void pop() {
    const std::int64_t z = elements_.back();
    for (std::size_t p : touched_.back()) --midpoint_uses_[p];
    combinatorial_ -= touched_.back().size();
    touched_.pop_back();
    position_[static_cast<std::size_t>(z)] = -1;
    elements_.pop_back();
  }

  // Upper bound on the final progression count given the placed prefix:
  // midpoint index i (1-based) carries at most min(i-1, n-i) increasing
  // progressions, and an unfinished one needs a top element still to come.
  std::uint64_t upper_bound() const {
    const auto n = static_cast<std::uint64_t>(n_);
    const auto j = static_cast<std::uint64_t>(elements_.size());
    std::uint64_t rest = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      const std::uint64_t cap = std::min(i - 1, n - i);
      if (i <= j) {
        const std::uint64_t used = midpoint_uses_[i - 1];
        rest += std::min(cap - used, n - j);
      } else {
        rest += cap;
      }
    }
    return n + 2 * (combinatorial_ + rest);
  }

  void descend() {
    ++out_.nodes;
    if (++pending_ == 4096) flush_budget(false);
    if (static_cast<std::int64_t>(elements_.size()) == n_) {
      leaf();
      return;
    }
    if (upper_bound() < threshold()) {
      ++out_.pruned;
      return;
    }
    const std::int64_t after = n_ - static_cast<std::int64_t>(elements_.size()) - 1;
    for (std::int64_t v = elements_.back() + 1; v + after <= width_; ++v) {
      push(v);
      descend();
      pop();
    }
  }

  std::uint64_t threshold() const { return out_.found ? std::max(out_.best, floor_) : floor_; }

  void leaf() {
    ++out_.leaves;
    std::int64_t g = 0;
    for (std::int64_t x : elements_) g = std::gcd(g, x);
    if (n_ > 1 && g != 1) return;
    const std::int64_t top = elements_.back();
    std::vector<std::int64_t> reflected;
    reflected.reserve(elements_.size());
    for (auto it = elements_.rbegin(); it != elements_.rend(); ++it) reflected.push_back(top - *it);
    if (reflected < elements_) return;
    const std::uint64_t value = static_cast<std::uint64_t>(n_) + 2 * combinatorial_;
    if (value < floor_) return;
    if (!out_.found || value > out_.best) {
      out_.found = true;
      out_.best = value;
      out_.witnesses.clear();
    }
    if (value == out_.best) out_.witnesses.push_back(elements_);
  }

  void flush_budget(bool final) {
    if (pending_ == 0) return;
    const std::uint64_t charge = pending_;
    pending_ = 0;
    budget_.charge(charge);
    (void)final;
  }

  std::int64_t n_;
  std::int64_t width_;
  std::uint64_t floor_;
  NodeBudget& budget_;
  std::vector<std::int64_t> position_;
  std::vector<std::int64_t> elements_;
  std::vector<std::uint64_t> midpoint_uses_;
  std::vector<std::vector<std::size_t>> touched_;
  std::uint64_t combinatorial_ = 0;
  std::uint64_t pending_ = 0;
  BranchOutcome out_;
};

}  // namespace

ExtremalResult max3ap_integers(std::int64_t n, std::int64_t width_cap, const SearchOptions& options) {
  if (n < 1) throw std::invalid_argument("max3ap_integers: n must be >= 1");
  if (width_cap < n - 1) throw std::invalid_argument("max3ap_integers: width cap must be >= n - 1");

  // The interval {0, ..., n-1} lies in the search space, so its count is a
  // valid starting lower bound.
  const std::uint64_t floor = t3_integers(IntegerSet::interval(0, n)).t3;
  const std::uint64_t estimate = binomial(static_cast<std::uint64_t>(width_cap), static_cast<std::uint64_t>(n - 1));
  NodeBudget budget(options.budget_nodes, estimate);

  const std::size_t branches = n == 1 ? 1 : static_cast<std::size_t>(width_cap - n + 2);
  std::vector<BranchOutcome> outcomes(branches);
  parallel_for(branches, options.threads, [&](std::size_t b) {
    IntegerBranchSearch search(n, width_cap, floor, budget);
    outcomes[b] = search.run(static_cast<std::int64_t>(b) + 1);
  });

  ExtremalResult result;
  result.n = n;
  result.side = Side::max;
  result.width_cap = width_cap;
  for (const auto& o : outcomes)
    if (o.found) result.value = std::max(result.value, o.best);
  for (const auto& o : outcomes) {
    result.search_space_size += o.leaves;
    result.pruned_count += o.pruned;
    result.nodes += o.nodes;
    if (!o.found || o.best != result.value) continue;
    for (const auto& w : o.witnesses) result.witnesses.push_back(canonicalize(IntegerSet(w)));
  }
  sort_unique(result.witnesses);
  for (const auto& w : result.witnesses) {
    if (t3_integers(std::get<IntegerSet>(w.representative)).t3 != result.value)
      throw std::logic_error("max3ap_integers: witness recount mismatch");
  }
  return result;
}

// ---------------------------------------------------------------------------

namespace {

void require_search_modulus(std::int64_t n, std::int64_t modulus) {
  if (!is_prime(modulus))
    throw UnsupportedModulus("modular extremal search requires a prime modulus, got " + std::to_string(modulus));
  if (n < 1 || n > modulus) throw std::invalid_argument("modular extremal search needs 1 <= n <= N");
}

Side opposite(Side s) { return s == Side::max ? Side::min : Side::max; }

struct ModBranch {
  bool found = false;
  std::uint64_t best = 0;
  std::vector<ResidueSet> witnesses;
  std::uint64_t covered = 0;
  std::uint64_t representatives = 0;
};

}  // namespace

ExtremalResult extremal_mod(std::int64_t n, std::int64_t modulus, Side side, const SearchOptions& options) {
  require_search_modulus(n, modulus);
  const std::uint64_t candidates = transversal_candidate_count(n, modulus);
  if (candidates > options.budget_nodes) throw BudgetExceeded(candidates, options.budget_nodes);

  const auto branches = static_cast<std::size_t>(transversal_branch_count(n, modulus));
  std::vector<ModBranch> outcomes(branches);
  parallel_for(branches, options.threads, [&](std::size_t b) {
    auto& o = outcomes[b];
    for_each_orbit_representative_in_branch(n, modulus, static_cast<std::int64_t>(b), [&](const OrbitRepresentative& r) {
      ++o.representatives;
      o.covered += r.orbit_size;
      const std::uint64_t value = t3(r.set);
      const bool better = !o.found || (side == Side::max ? value > o.best : value < o.best);
      if (better) {
        o.found = true;
        o.best = value;
        o.witnesses.clear();
      }
      if (value == o.best) o.witnesses.push_back(r.set);
    });
  });

  ExtremalResult result;
  result.n = n;
  result.modulus = modulus;
  result.side = side;
  result.nodes = candidates;
  bool any = false;
  std::uint64_t reps = 0;
  for (const auto& o : outcomes) {
    result.search_space_size += o.covered;
    reps += o.representatives;
    if (!o.found) continue;
    if (!any || (side == Side::max ? o.best > result.value : o.best < result.value)) result.value = o.best;
    any = true;
  }
  for (const auto& o : outcomes) {
    if (!o.found || o.best != result.value) continue;
    for (const auto& w : o.witnesses) result.witnesses.push_back(canonicalize(w));
  }
  result.pruned_count = candidates - reps;
  sort_unique(result.witnesses);

  if (result.search_space_size != binomial(static_cast<std::uint64_t>(modulus), static_cast<std::uint64_t>(n)))
    throw std::logic_error("extremal_mod: orbit sizes do not sum to C(N, n)");
  for (const auto& w : result.witnesses)
    if (t3_naive(std::get<ResidueSet>(w.representative)) != result.value)
      throw std::logic_error("extremal_mod: witness recount mismatch");
  return result;
}

ExtremalResult extremal_mod_via_complement(std::int64_t n, std::int64_t modulus, Side side,
                                           const SearchOptions& options) {
  require_search_modulus(n, modulus);
  if (modulus <= 3) throw UnsupportedModulus("complement route needs a prime modulus > 3");
  const std::uint64_t identity = complement_identity_value(n, modulus);
  if (n == modulus) {
    ExtremalResult result;
    result.n = n;
    result.modulus = modulus;
    result.side = side;
    result.value = identity;  // N^2
    result.search_space_size = 1;
    result.witnesses.push_back(canonicalize(ResidueSet::full(modulus)));
    return result;
  }
  const ExtremalResult other = extremal_mod(modulus - n, modulus, opposite(side), options);
  ExtremalResult result;
  result.n = n;
  result.modulus = modulus;
  result.side = side;
  result.value = identity - other.value;
  result.search_space_size = other.search_space_size;
  result.pruned_count = other.pruned_count;
  result.nodes = other.nodes;
  for (const auto& w : other.witnesses)
    result.witnesses.push_back(canonicalize(std::get<ResidueSet>(w.representative).complement()));
  sort_unique(result.witnesses);
  return result;
}

// ---------------------------------------------------------------------------

ClassificationResult classify_extremal(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("classify_extremal: empty set");
  const CanonicalForm target = canonicalize(a);
  ClassificationResult result;
  for (const auto& tag : family_tags_of_size(static_cast<std::int64_t>(a.size()))) {
    const IntegerSet family = generate_family(tag);
    if (canonicalize(family) != target) continue;
    result.all_tags.push_back(tag);
    if (result.map) continue;
    // Candidate integer maps y -> s*y + t aligning the extremes.
    const std::int64_t span_a = a.max() - a.min();
    const std::int64_t span_e = family.max() - family.min();
    if (span_e == 0) {
      result.tag = tag;
      result.map = AffineMap::integer(1, a.min() - family.min());
      continue;
    }
    if (span_a % span_e != 0) continue;
    const std::int64_t s = span_a / span_e;
    for (const auto& map : {AffineMap::integer(s, a.min() - s * family.min()),
                            AffineMap::integer(-s, a.min() + s * family.max())}) {
      if (map.apply(family) == a) {
        result.tag = tag;
        result.map = map;
        break;
      }
    }
  }
  result.matched = result.map.has_value();
  return result;
}

ClassificationResult classify_extremal(const ResidueSet& a) {
  if (a.empty()) throw std::invalid_argument("classify_extremal: empty set");
  const CanonicalForm target = canonicalize(a);
  ClassificationResult result;
  for (const auto& tag : family_tags_of_size(static_cast<std::int64_t>(a.size()))) {
    const auto embedding = embed_mod(generate_family(tag), a.modulus());
    if (embedding.collision) continue;
    const CanonicalForm form = canonicalize(embedding.set);
    if (form != target) continue;
    result.all_tags.push_back(tag);
    if (result.map) continue;
    AffineMap map = form.from_representative.inverse().then(target.from_representative);
    if (map.apply(embedding.set) != a) throw std::logic_error("classify_extremal: witness map does not reproduce input");
    result.tag = tag;
    result.map = map;
  }
  result.matched = result.map.has_value();
  return result;
}

ThresholdScan threshold_scan(std::int64_t modulus, const SearchOptions& options) {
  ThresholdScan scan;
  scan.modulus = modulus;
  bool running = true;
  for (std::int64_t n = 1; n <= modulus; ++n) {
    const ExtremalResult r = extremal_mod(n, modulus, Side::max, options);
    bool all_ef = true;
    for (const auto& w : r.witnesses)
      all_ef = all_ef && classify_extremal(std::get<ResidueSet>(w.representative)).matched;
    const bool half = r.value == half_square_ceil(static_cast<std::uint64_t>(n));
    scan.rows.push_back({n, r.value, half, all_ef});
    if (running && half && all_ef) {
      scan.threshold_n = n;
    } else {
      running = false;
    }
  }
  scan.threshold_ratio = static_cast<double>(scan.threshold_n) / static_cast<double>(modulus);
  return scan;
}

}  // namespace ap3
