#include "ap3/construct.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "ap3/count.hpp"
#include "ap3/parallel.hpp"
#include "ap3/rng.hpp"

namespace ap3 {

std::string FamilyTag::to_string() const {
  return std::string(family == Family::E ? "E" : "F") + "(" + std::to_string(k) + "," + std::to_string(m) + ")";
}

IntegerSet generate_family(const FamilyTag& tag) {
  const std::int64_t k = tag.k, m = tag.m;
  if (k < 0 || m < 0) throw std::invalid_argument("family parameters must be nonnegative: " + tag.to_string());
  if (tag.family == Family::F && k == 0 && m == 0) throw std::invalid_argument("F(0,0) is empty");
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(2 * k + 2 * m + 1));
  for (std::int64_t j = m; j >= 1; --j) out.push_back(-k - 2 * j);
  for (std::int64_t x = -k; x <= k; ++x) out.push_back(x);
  for (std::int64_t j = 1; j <= m; ++j) out.push_back(k + 2 * j);
  if (tag.family == Family::F) out.erase(out.begin());
  return IntegerSet(std::move(out));
}

std::vector<FamilyTag> family_tags_of_size(std::int64_t size) {
  std::vector<FamilyTag> tags;
  if (size <= 0) return tags;
  const Family family = size % 2 == 1 ? Family::E : Family::F;
  const std::int64_t half = size / 2;  // k + m
  for (std::int64_t k = 0; k <= half; ++k) {
    if (family == Family::F && k == 0 && half == 0) continue;
    tags.push_back({family, k, half - k});
  }
  return tags;
}

Embedding embed_mod(const IntegerSet& a, std::int64_t modulus, std::int64_t shift) {
  std::vector<std::int64_t> shifted(a.elements().begin(), a.elements().end());
  for (auto& x : shifted) x += shift;
  ResidueSet set = ResidueSet::reduce(modulus, shifted);
  const bool collision = set.size() != a.size();
  return Embedding{std::move(set), collision};
}

WrapConstruction wraparound_complement(std::int64_t modulus, std::int64_t k, std::int64_t m) {
  const FamilyTag tag{Family::E, k, m};
  if (tag.size() > modulus)
    throw std::invalid_argument(tag.to_string() + " has more elements than Z/" + std::to_string(modulus) + "Z");
  auto embedding = embed_mod(generate_family(tag), modulus);
  if (embedding.collision)
    throw std::invalid_argument(tag.to_string() + " does not embed injectively into Z/" + std::to_string(modulus) + "Z");
  ResidueSet set = embedding.set.complement();
  const std::uint64_t count = t3(set);
  const double density = set.density();
  return WrapConstruction{tag, std::move(set), count, density};
}

namespace {

struct Candidate {
  bool valid = false;
  ResidueSet set = ResidueSet::empty(1);
  std::uint64_t t3 = 0;
};

// Scores every family set of size `size` in Z/NZ; `complement` scores the
// complement instead. Returns the best per `maximize`, ties to smallest k.
WrapConstruction scan_families(std::int64_t modulus, std::int64_t size, bool complement, bool maximize,
                               unsigned threads) {
  const auto tags = family_tags_of_size(size);
  std::vector<Candidate> scored(tags.size());
  parallel_for(tags.size(), threads, [&](std::size_t i) {
    auto embedding = embed_mod(generate_family(tags[i]), modulus);
    if (embedding.collision) return;
    ResidueSet set = complement ? embedding.set.complement() : std::move(embedding.set);
    const std::uint64_t count = t3(set);
    scored[i] = Candidate{true, std::move(set), count};
  });
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (!scored[i].valid) continue;
    if (!best || (maximize ? scored[i].t3 > scored[*best].t3 : scored[i].t3 < scored[*best].t3)) best = i;
  }
  if (!best) throw std::invalid_argument("no family set of size " + std::to_string(size) + " embeds into Z/" +
                                         std::to_string(modulus) + "Z");
  auto& winner = scored[*best];
  const double density = winner.set.density();
  return WrapConstruction{tags[*best], std::move(winner.set), winner.t3, density};
}

}  // namespace

WrapConstruction optimize_wraparound(std::int64_t modulus, std::int64_t n, unsigned threads) {
  if (n < 1 || n > modulus) throw std::invalid_argument("optimize_wraparound needs 1 <= n <= N");
  return scan_families(modulus, n, /*complement=*/false, /*maximize=*/true, threads);
}

WrapConstruction optimize_wraparound_complement(std::int64_t modulus, std::int64_t n, unsigned threads) {
  if (n < 0 || n >= modulus) throw std::invalid_argument("optimize_wraparound_complement needs 0 <= n < N");
  return scan_families(modulus, modulus - n, /*complement=*/true, /*maximize=*/false, threads);
}

IntersectResult intersect_search(const ResidueSet& a, const ResidueSet& b, std::uint64_t trials, std::uint64_t seed,
                                 const IntersectOptions& options) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("intersect_search: modulus mismatch");
  if (trials == 0) throw std::invalid_argument("intersect_search: trials must be >= 1");
  const std::int64_t n = a.modulus();

  // Parameters are drawn serially so the sample is independent of threads.
  Rng rng(seed);
  std::vector<std::pair<std::int64_t, std::int64_t>> params(trials);
  for (auto& [lambda, mu] : params) {
    do {
      lambda = n == 1 ? 0 : 1 + static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n - 1)));
    } while (gcd64(lambda, n) != 1);
    mu = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(n)));
  }

  const double needed = (1.0 - options.tolerance) * static_cast<double>(a.size()) * static_cast<double>(b.size()) /
                        static_cast<double>(n);
  auto intersect = [&](std::int64_t lambda, std::int64_t mu) {
    std::vector<std::int64_t> out;
    for (std::int64_t y : b.elements()) {
      const std::int64_t z = floor_mod(mul_mod(lambda, y, n) + mu, n);
      if (a.contains(z)) out.push_back(z);
    }
    return ResidueSet(n, std::move(out));
  };

  IntersectResult result;
  result.trials.resize(trials);
  parallel_for(trials, options.threads, [&](std::size_t i) {
    const auto [lambda, mu] = params[i];
    const ResidueSet cut = intersect(lambda, mu);
    result.trials[i] = IntersectTrial{lambda, mu, cut.size(), t3(cut), static_cast<double>(cut.size()) >= needed};
  });

  for (std::size_t i = 0; i < trials; ++i) {
    const auto& t = result.trials[i];
    if (!t.eligible) continue;
    if (!result.best) {
      result.best = i;
      continue;
    }
    const auto& cur = result.trials[*result.best];
    if (std::tie(t.t3, t.lambda, t.mu) < std::tie(cur.t3, cur.lambda, cur.mu)) result.best = i;
  }
  if (result.best) {
    const auto& t = result.trials[*result.best];
    result.best_set = intersect(t.lambda, t.mu);
  }
  return result;
}

namespace {

void check_behrend(int dim, std::int64_t base) {
  if (dim < 1) throw std::invalid_argument("behrend_set: dimension must be >= 1");
  if (base < 2) throw std::invalid_argument("behrend_set: base must be >= 2");
  __int128 scale = 1;
  for (int i = 0; i < dim; ++i) {
    scale *= 2 * base;
    if (scale > INT64_MAX) throw std::invalid_argument("behrend_set: (2q)^d exceeds the int64 range");
  }
}

}  // namespace

IntegerSet behrend_set(int dim, std::int64_t base, std::int64_t radius_sq) {
  check_behrend(dim, base);
  if (radius_sq < 0 || radius_sq > dim * (base - 1) * (base - 1))
    throw std::invalid_argument("behrend_set: radius^2 outside [0, d(q-1)^2]");
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> place(static_cast<std::size_t>(dim));
  place[0] = 1;
  for (int i = 1; i < dim; ++i) place[static_cast<std::size_t>(i)] = place[static_cast<std::size_t>(i - 1)] * 2 * base;
  // Depth-first over digit vectors with the remaining squared norm.
  auto walk = [&](auto&& self, int i, std::int64_t left, std::int64_t value) -> void {
    if (i == dim) {
      if (left == 0) out.push_back(value);
      return;
    }
    for (std::int64_t x = 0; x < base && x * x <= left; ++x)
      self(self, i + 1, left - x * x, value + x * place[static_cast<std::size_t>(i)]);
  };
  walk(walk, 0, radius_sq, 0);
  return IntegerSet(std::move(out));
}

std::int64_t behrend_most_populous_radius(int dim, std::int64_t base) {
  check_behrend(dim, base);
  const std::int64_t max_r = dim * (base - 1) * (base - 1);
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_r + 1), 0);
  counts[0] = 1;
  for (int i = 0; i < dim; ++i) {
    std::vector<std::uint64_t> next(counts.size(), 0);
    for (std::int64_t r = 0; r <= max_r; ++r) {
      if (counts[static_cast<std::size_t>(r)] == 0) continue;
      for (std::int64_t x = 0; x < base && r + x * x <= max_r; ++x)
        next[static_cast<std::size_t>(r + x * x)] += counts[static_cast<std::size_t>(r)];
    }
    counts = std::move(next);
  }
  return static_cast<std::int64_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
}

ResidueSet random_set(std::int64_t n, std::int64_t modulus, std::uint64_t seed) {
  if (modulus < 1) throw std::invalid_argument("random_set: modulus must be positive");
  if (n < 0 || n > modulus) throw std::invalid_argument("random_set: need 0 <= n <= N");
  Rng rng(seed);
  std::vector<std::int64_t> pool(static_cast<std::size_t>(modulus));
  std::iota(pool.begin(), pool.end(), 0);
  for (std::int64_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::size_t>(i) + rng.below(static_cast<std::uint64_t>(modulus - i));
    std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
  }
  pool.resize(static_cast<std::size_t>(n));
  return ResidueSet(modulus, std::move(pool));
}

}  // namespace ap3
