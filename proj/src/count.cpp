#include "ap3/count.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <string>

#include "ntt.hpp"

namespace ap3 {

namespace {

void require_same_modulus(std::int64_t a, std::int64_t b) {
  if (a != b) throw std::invalid_argument("modulus mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}

std::vector<std::uint32_t> indicator32(const ResidueSet& a) {
  std::vector<std::uint32_t> v(static_cast<std::size_t>(a.modulus()), 0);
  for (std::int64_t x : a.elements()) v[static_cast<std::size_t>(x)] = 1;
  return v;
}

}  // namespace

WeightVector::WeightVector(std::int64_t modulus_, std::vector<std::int64_t> weights_)
    : modulus(modulus_), weights(std::move(weights_)) {
  if (modulus < 1) throw std::invalid_argument("weight vector modulus must be positive");
  if (static_cast<std::int64_t>(weights.size()) != modulus)
    throw std::invalid_argument("weight vector length " + std::to_string(weights.size()) + " != modulus " +
                                std::to_string(modulus));
}

WeightVector WeightVector::indicator(const ResidueSet& set, std::int64_t scale) {
  std::vector<std::int64_t> w(static_cast<std::size_t>(set.modulus()), 0);
  for (std::int64_t x : set.elements()) w[static_cast<std::size_t>(x)] = scale;
  return WeightVector(set.modulus(), std::move(w));
}

WeightVector WeightVector::constant(std::int64_t modulus, std::int64_t value) {
  return WeightVector(modulus, std::vector<std::int64_t>(static_cast<std::size_t>(std::max<std::int64_t>(modulus, 0)), value));
}

// ---------------------------------------------------------------------------

std::uint64_t t3_naive(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3) {
  require_same_modulus(a1.modulus(), a2.modulus());
  require_same_modulus(a1.modulus(), a3.modulus());
  const std::int64_t n = a1.modulus();
  std::uint64_t count = 0;
  for (std::int64_t x : a1.elements()) {
    std::int64_t y = x, z = x;  // x + d, x + 2d
    for (std::int64_t d = 0; d < n; ++d) {
      if (a2.contains(y) && a3.contains(z)) ++count;
      if (++y == n) y = 0;
      z += 2;
      if (z >= n) z -= n;
      if (z >= n) z -= n;
    }
  }
  return count;
}

std::uint64_t t3_naive(const ResidueSet& a) { return t3_naive(a, a, a); }

std::uint64_t t3_pairs(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3) {
  require_same_modulus(a1.modulus(), a2.modulus());
  require_same_modulus(a1.modulus(), a3.modulus());
  const std::int64_t n = a1.modulus();
  std::uint64_t count = 0;
  for (std::int64_t y : a2.elements()) {
    const std::int64_t twice = (2 * y) % n;
    for (std::int64_t x : a1.elements()) {
      std::int64_t z = twice - x;
      if (z < 0) z += n;
      if (a3.contains(z)) ++count;
    }
  }
  return count;
}

std::uint64_t t3_pairs(const ResidueSet& a) { return t3_pairs(a, a, a); }

std::uint64_t t3_fast(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3) {
  require_same_modulus(a1.modulus(), a2.modulus());
  require_same_modulus(a1.modulus(), a3.modulus());
  const std::int64_t n = a1.modulus();
  if (!detail::cyclic_convolution_supported(static_cast<std::size_t>(n))) return t3_pairs(a1, a2, a3);
  if (a2.empty() || a1.empty() || a3.empty()) return 0;
  const auto f1 = indicator32(a1);
  std::vector<std::uint64_t> r;
  if (a1 == a3) {
    r = detail::cyclic_convolution(f1, f1);
  } else {
    r = detail::cyclic_convolution(f1, indicator32(a3));
  }
  std::uint64_t count = 0;
  for (std::int64_t y : a2.elements()) count += r[static_cast<std::size_t>((2 * y) % n)];
  return count;
}

std::uint64_t t3_fast(const ResidueSet& a) { return t3_fast(a, a, a); }

std::uint64_t t3(const ResidueSet& a) {
  const auto n = static_cast<std::uint64_t>(a.modulus());
  const auto k = static_cast<std::uint64_t>(a.size());
  const std::uint64_t log_n = std::bit_width(n) + 1;
  if (k * k <= 6 * n * log_n) return t3_pairs(a);
  return t3_fast(a);
}

CountReport count_report(const ResidueSet& a) {
  CountReport report;
  report.t3 = t3(a);
  report.trivial = a.size();
  const std::int64_t n = a.modulus();
  if (n % 2 == 0) {
    for (std::int64_t x : a.elements())
      if (a.contains((x + n / 2) % n)) ++report.trivial;
  }
  report.combinatorial = (report.t3 - report.trivial) / 2;
  return report;
}

CountReport t3_integers(const IntegerSet& a) {
  const auto e = a.elements();
  std::uint64_t progressions = 0;
  for (std::size_t i = 0; i < e.size(); ++i)
    for (std::size_t j = i + 1; j < e.size(); ++j) {
      const std::int64_t s = e[i] + e[j];
      if ((s & 1) == 0 && std::binary_search(e.begin() + static_cast<std::ptrdiff_t>(i) + 1,
                                             e.begin() + static_cast<std::ptrdiff_t>(j), s / 2))
        ++progressions;
    }
  return CountReport{e.size() + 2 * progressions, e.size(), progressions};
}

MidpointBound midpoint_upper_bound(std::uint64_t n) {
  std::uint64_t sum = n;
  for (std::uint64_t j = 1; j <= n; ++j) sum += 2 * std::min(j - 1, n - j);
  MidpointBound bound{half_square_ceil(n), sum};
  if (bound.closed_form != bound.summation)
    throw std::logic_error("midpoint bound mismatch at n=" + std::to_string(n));
  return bound;
}

std::int64_t t3_trilinear(const WeightVector& f1, const WeightVector& f2, const WeightVector& f3) {
  require_same_modulus(f1.modulus, f2.modulus);
  require_same_modulus(f1.modulus, f3.modulus);
  const std::int64_t n = f1.modulus;
  __int128 total = 0;
  auto overflow = [] { throw std::overflow_error("t3_trilinear: result exceeds the int64 range"); };
  for (std::int64_t x = 0; x < n; ++x) {
    const __int128 w1 = f1.weights[static_cast<std::size_t>(x)];
    if (w1 == 0) continue;
    for (std::int64_t d = 0; d < n; ++d) {
      const std::int64_t w2 = f2.weights[static_cast<std::size_t>((x + d) % n)];
      const std::int64_t w3 = f3.weights[static_cast<std::size_t>((x + 2 * d) % n)];
      if (w2 == 0 || w3 == 0) continue;
      __int128 term;
      if (__builtin_mul_overflow(w1, static_cast<__int128>(w2), &term)) overflow();
      if (__builtin_mul_overflow(term, static_cast<__int128>(w3), &term)) overflow();
      if (__builtin_add_overflow(total, term, &total)) overflow();
    }
  }
  if (total > INT64_MAX || total < INT64_MIN) overflow();
  return static_cast<std::int64_t>(total);
}

std::uint64_t additive_energy(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a.modulus(), b.modulus());
  const std::int64_t n = a.modulus();
  std::vector<std::uint64_t> r(static_cast<std::size_t>(n), 0);
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) {
      std::int64_t s = x + y;
      ++r[static_cast<std::size_t>(s >= n ? s - n : s)];
    }
  std::uint64_t energy = 0;
  for (std::uint64_t c : r) energy += c * c;
  return energy;
}

std::uint64_t additive_energy(const IntegerSet& a, const IntegerSet& b) {
  if (a.empty() || b.empty()) return 0;
  const std::int64_t lo = a.min() + b.min();
  const std::int64_t span = a.max() + b.max() - lo + 1;
  std::uint64_t energy = 0;
  if (static_cast<std::uint64_t>(span) <= 8 * a.size() * b.size() + 64) {
    std::vector<std::uint64_t> r(static_cast<std::size_t>(span), 0);
    for (std::int64_t x : a.elements())
      for (std::int64_t y : b.elements()) ++r[static_cast<std::size_t>(x + y - lo)];
    for (std::uint64_t c : r) energy += c * c;
    return energy;
  }
  std::vector<std::int64_t> sums;
  sums.reserve(a.size() * b.size());
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) sums.push_back(x + y);
  std::sort(sums.begin(), sums.end());
  for (std::size_t i = 0; i < sums.size();) {
    std::size_t j = i;
    while (j < sums.size() && sums[j] == sums[i]) ++j;
    energy += static_cast<std::uint64_t>((j - i) * (j - i));
    i = j;
  }
  return energy;
}

std::uint64_t complement_identity_value(std::int64_t n, std::int64_t modulus) {
  const auto N = static_cast<std::uint64_t>(modulus);
  const auto k = static_cast<std::uint64_t>(n);
  return N * N - 3 * k * N + 3 * k * k;
}

ComplementCheck complement_identity_check(const ResidueSet& a) {
  ComplementCheck check;
  const std::int64_t n = a.modulus();
  if (n % 2 == 0 || n % 3 == 0) return check;
  check.applicable = true;
  check.lhs = t3(a) + t3(a.complement());
  check.rhs = complement_identity_value(static_cast<std::int64_t>(a.size()), n);
  check.equal = check.lhs == check.rhs;
  return check;
}

Rational doubling_delta(const ResidueSet& a) {
  if (a.empty()) throw std::invalid_argument("doubling_delta: empty set");
  return make_rational(static_cast<std::int64_t>(difference_set(a, a).size()), static_cast<std::int64_t>(a.size()));
}

Rational doubling_delta(const IntegerSet& a) {
  if (a.empty()) throw std::invalid_argument("doubling_delta: empty set");
  return make_rational(static_cast<std::int64_t>(difference_set(a, a).size()), static_cast<std::int64_t>(a.size()));
}

}  // namespace ap3
