#include <algorithm>
#include <numeric>

#include "ap3/core.hpp"
#include "ap3/parallel.hpp"

namespace ap3 {

namespace {

// Least rotation of a cyclic sequence (Booth's algorithm).
std::size_t least_rotation(const std::vector<std::int64_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::ptrdiff_t> f(2 * n, -1);
  std::size_t k = 0;
  for (std::size_t j = 1; j < 2 * n; ++j) {
    const std::int64_t sj = s[j % n];
    std::ptrdiff_t i = f[j - k - 1];
    while (i != -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j - static_cast<std::size_t>(i) - 1;
      i = f[static_cast<std::size_t>(i)];
    }
    if (i == -1 && sj != s[(k + static_cast<std::size_t>(i) + 1) % n]) {
      if (sj < s[(k + static_cast<std::size_t>(i) + 1) % n]) k = j;
      f[j - k] = -1;
    } else {
      f[j - k] = i + 1;
    }
  }
  return k % n;
}

// Number of rotations equal to the sequence itself (n / smallest period).
std::uint64_t rotation_symmetry(const std::vector<std::int64_t>& s) {
  const std::size_t n = s.size();
  std::vector<std::size_t> pi(n, 0);
  for (std::size_t i = 1; i < n; ++i) {
    std::size_t k = pi[i - 1];
    while (k > 0 && s[i] != s[k]) k = pi[k - 1];
    if (s[i] == s[k]) ++k;
    pi[i] = k;
  }
  const std::size_t period = n - pi[n - 1];
  return n % period == 0 ? n / period : 1;
}

// Three-way compare of rotation `r` of `s` against `t`.
int compare_rotation(const std::vector<std::int64_t>& s, std::size_t r, const std::vector<std::int64_t>& t) {
  const std::size_t n = s.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t x = s[(r + i) % n];
    if (x != t[i]) return x < t[i] ? -1 : 1;
  }
  return 0;
}

// Reusable scratch for dilating a fixed set by every unit.
class DilationScanner {
 public:
  DilationScanner(std::span<const std::int64_t> elements, std::int64_t modulus)
      : elements_(elements), modulus_(modulus), use_mask_(elements.size() * 16 > static_cast<std::size_t>(modulus)) {
    if (use_mask_) mask_.assign(static_cast<std::size_t>(modulus), 0);
    sorted_.reserve(elements.size());
    gaps_.resize(elements.size());
  }

  // Sorted dilate a*A and its cyclic gap sequence.
  void dilate(std::int64_t a) {
    sorted_.clear();
    if (use_mask_) {
      for (std::int64_t x : elements_) mask_[static_cast<std::size_t>(mul_mod(a, x, modulus_))] = 1;
      for (std::int64_t y = 0; y < modulus_; ++y)
        if (mask_[static_cast<std::size_t>(y)]) {
          sorted_.push_back(y);
          mask_[static_cast<std::size_t>(y)] = 0;
        }
    } else {
      for (std::int64_t x : elements_) sorted_.push_back(mul_mod(a, x, modulus_));
      std::sort(sorted_.begin(), sorted_.end());
    }
    const std::size_t n = sorted_.size();
    for (std::size_t i = 0; i + 1 < n; ++i) gaps_[i] = sorted_[i + 1] - sorted_[i];
    gaps_[n - 1] = sorted_[0] + modulus_ - sorted_[n - 1];
  }

  const std::vector<std::int64_t>& sorted() const { return sorted_; }
  const std::vector<std::int64_t>& gaps() const { return gaps_; }

 private:
  std::span<const std::int64_t> elements_;
  std::int64_t modulus_;
  bool use_mask_;
  std::vector<std::uint8_t> mask_;
  std::vector<std::int64_t> sorted_;
  std::vector<std::int64_t> gaps_;
};

std::vector<std::int64_t> own_gaps(std::span<const std::int64_t> sorted, std::int64_t modulus) {
  const std::size_t n = sorted.size();
  std::vector<std::int64_t> g(n);
  for (std::size_t i = 0; i + 1 < n; ++i) g[i] = sorted[i + 1] - sorted[i];
  g[n - 1] = sorted[0] + modulus - sorted[n - 1];
  return g;
}

// True iff `set` (sorted, containing 0) is the canonical representative of
// its orbit; on success `stabilizer` holds the number of affine maps fixing it.
bool is_orbit_minimal(std::span<const std::int64_t> set, std::int64_t modulus, std::uint64_t& stabilizer) {
  const auto target = own_gaps(set, modulus);
  DilationScanner scan(set, modulus);
  stabilizer = 0;
  for (std::int64_t a = 1; a < modulus; ++a) {
    if (gcd64(a, modulus) != 1) continue;
    scan.dilate(a);
    const auto& g = scan.gaps();
    const std::size_t r = least_rotation(g);
    const int c = compare_rotation(g, r, target);
    if (c < 0) return false;
    if (c == 0) stabilizer += rotation_symmetry(g);
  }
  return true;
}

}  // namespace

CanonicalForm canonicalize(const ResidueSet& a) {
  if (a.empty()) throw std::invalid_argument("canonicalize: empty set");
  const std::int64_t n = a.modulus();
  DilationScanner scan(a.elements(), n);
  std::vector<std::int64_t> best;
  std::int64_t best_scale = 1, best_start = 0;
  std::uint64_t stabilizer = 0;
  for (std::int64_t s = 1; s < std::max<std::int64_t>(n, 2); ++s) {
    if (gcd64(s, n) != 1) continue;
    scan.dilate(s);
    const auto& g = scan.gaps();
    const std::size_t r = least_rotation(g);
    const int c = best.empty() ? -1 : compare_rotation(g, r, best);
    if (c < 0) {
      best.resize(g.size());
      for (std::size_t i = 0; i < g.size(); ++i) best[i] = g[(r + i) % g.size()];
      best_scale = s;
      best_start = scan.sorted()[r];
      stabilizer = rotation_symmetry(g);
    } else if (c == 0) {
      stabilizer += rotation_symmetry(g);
    }
  }
  std::vector<std::int64_t> rep(best.size());
  std::int64_t acc = 0;
  for (std::size_t i = 0; i < best.size(); ++i) {
    rep[i] = acc;
    acc += best[i];
  }
  const auto to_rep = AffineMap::modular(best_scale, -best_start, n);
  CanonicalForm form{ResidueSet(n, std::move(rep)), std::move(best), n, to_rep.inverse(), stabilizer};
  return form;
}

CanonicalForm canonicalize(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("canonicalize: empty set");
  const auto e = a.elements();
  if (e.size() == 1) {
    return CanonicalForm{IntegerSet({0}), {0}, std::nullopt, AffineMap::integer(1, e[0]), 2};
  }
  const std::int64_t lo = a.min(), hi = a.max();
  std::int64_t g = 0;
  for (std::int64_t x : e) g = std::gcd(g, x - lo);
  std::vector<std::int64_t> fwd, rev;
  fwd.reserve(e.size());
  rev.reserve(e.size());
  for (std::int64_t x : e) fwd.push_back((x - lo) / g);
  for (auto it = e.rbegin(); it != e.rend(); ++it) rev.push_back((hi - *it) / g);
  const bool reflect = rev < fwd;
  const std::uint64_t stabilizer = rev == fwd ? 2 : 1;
  auto enc = reflect ? rev : fwd;
  auto map = reflect ? AffineMap::integer(-g, hi) : AffineMap::integer(g, lo);
  return CanonicalForm{IntegerSet(enc), enc, std::nullopt, map, stabilizer};
}

// ---------------------------------------------------------------------------
// Transversal. For n >= 2 every orbit contains a set holding {0, 1}
// (the affine group of Z/pZ is 2-transitive), and canonical
// representatives always hold {0, 1}. Candidates are {0, 1} ∪ C with
// C ⊆ {2, ..., N-1}; the branch index is min(C) - 2.

namespace {

void require_prime_modulus(std::int64_t n, std::int64_t modulus) {
  if (!is_prime(modulus))
    throw UnsupportedModulus("orbit enumeration requires a prime modulus, got " + std::to_string(modulus));
  if (n < 1 || n > modulus)
    throw std::invalid_argument("orbit enumeration needs 1 <= n <= N, got n=" + std::to_string(n));
}

std::uint64_t group_order(std::int64_t modulus) {
  return static_cast<std::uint64_t>(modulus) * static_cast<std::uint64_t>(modulus - 1);
}

}  // namespace

std::int64_t transversal_branch_count(std::int64_t n, std::int64_t modulus) {
  if (n <= 2) return 1;
  return modulus - n + 1;
}

std::uint64_t transversal_candidate_count(std::int64_t n, std::int64_t modulus) {
  if (n <= 1) return 1;
  return binomial(static_cast<std::uint64_t>(modulus - 2), static_cast<std::uint64_t>(n - 2));
}

void for_each_orbit_representative_in_branch(std::int64_t n, std::int64_t modulus, std::int64_t branch,
                                             const std::function<void(const OrbitRepresentative&)>& visit) {
  require_prime_modulus(n, modulus);
  if (branch < 0 || branch >= transversal_branch_count(n, modulus))
    throw std::out_of_range("transversal branch index out of range");

  if (n == 1) {
    visit({ResidueSet(modulus, {0}), static_cast<std::uint64_t>(modulus)});
    return;
  }

  std::vector<std::int64_t> current{0, 1};
  auto emit = [&] {
    std::uint64_t stabilizer = 0;
    if (is_orbit_minimal(current, modulus, stabilizer))
      visit({ResidueSet(modulus, current), group_order(modulus) / stabilizer});
  };
  if (n == 2) {
    emit();
    return;
  }

  current.push_back(branch + 2);
  // Depth-first over increasing completions of C.
  std::function<void(std::int64_t)> extend = [&](std::int64_t next) {
    if (static_cast<std::int64_t>(current.size()) == n) {
      emit();
      return;
    }
    const std::int64_t need = n - static_cast<std::int64_t>(current.size());
    for (std::int64_t v = next; v <= modulus - need; ++v) {
      current.push_back(v);
      extend(v + 1);
      current.pop_back();
    }
  };
  extend(branch + 3);
}

std::vector<OrbitRepresentative> affine_orbit_transversal(std::int64_t n, std::int64_t modulus, unsigned threads) {
  require_prime_modulus(n, modulus);
  const auto branches = static_cast<std::size_t>(transversal_branch_count(n, modulus));
  std::vector<std::vector<OrbitRepresentative>> per_branch(branches);
  parallel_for(branches, threads, [&](std::size_t b) {
    for_each_orbit_representative_in_branch(n, modulus, static_cast<std::int64_t>(b),
                                            [&](const OrbitRepresentative& r) { per_branch[b].push_back(r); });
  });
  std::vector<OrbitRepresentative> out;
  for (auto& v : per_branch)
    for (auto& r : v) out.push_back(std::move(r));
  return out;
}

}  // namespace ap3
