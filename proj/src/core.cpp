#include "ap3/core.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace ap3 {

std::int64_t floor_mod(std::int64_t x, std::int64_t n) {
  std::int64_t r = x % n;
  return r < 0 ? r + n : r;
}

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n) {
  auto p = static_cast<__int128>(floor_mod(a, n)) * floor_mod(b, n);
  return static_cast<std::int64_t>(p % n);
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a, b); }

std::int64_t inverse_mod(std::int64_t a, std::int64_t n) {
  if (n == 1) return 0;
  std::int64_t old_r = floor_mod(a, n), r = n;
  std::int64_t old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::invalid_argument("inverse_mod: " + std::to_string(a) + " is not a unit mod " +
                                              std::to_string(n));
  return floor_mod(old_s, n);
}

namespace {

std::uint64_t pow_mod_u(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  unsigned __int128 r = 1, x = b % m;
  while (e) {
    if (e & 1) r = r * x % m;
    x = x * x % m;
    e >>= 1;
  }
  return static_cast<std::uint64_t>(r);
}

}  // namespace

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  auto un = static_cast<std::uint64_t>(n);
  std::uint64_t d = un - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = pow_mod_u(a, d, un);
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = static_cast<std::uint64_t>(static_cast<unsigned __int128>(x) * x % un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

// ---------------------------------------------------------------------------

namespace {

void check_modulus(std::int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive, got " + std::to_string(modulus));
}

std::vector<std::uint64_t> make_bits(std::int64_t modulus) {
  return std::vector<std::uint64_t>(static_cast<std::size_t>((modulus + 63) / 64), 0);
}

void require_same_modulus(const ResidueSet& a, const ResidueSet& b) {
  if (a.modulus() != b.modulus())
    throw std::invalid_argument("modulus mismatch: " + std::to_string(a.modulus()) + " vs " +
                                std::to_string(b.modulus()));
}

// Builds a ResidueSet from a byte mask of length N.
ResidueSet from_mask(std::int64_t modulus, const std::vector<std::uint8_t>& mask) {
  return ResidueSet::from_indicator(modulus, mask);
}

}  // namespace

ResidueSet::ResidueSet(std::int64_t modulus, std::vector<std::int64_t> elements) : modulus_(modulus) {
  check_modulus(modulus);
  bits_ = make_bits(modulus);
  for (std::int64_t x : elements) {
    if (x < 0 || x >= modulus)
      throw std::invalid_argument("residue " + std::to_string(x) + " outside [0, " + std::to_string(modulus - 1) +
                                  "]");
    auto& word = bits_[static_cast<std::size_t>(x) >> 6];
    const std::uint64_t bit = std::uint64_t{1} << (x & 63);
    if (word & bit) throw std::invalid_argument("duplicate residue " + std::to_string(x));
    word |= bit;
  }
  std::sort(elements.begin(), elements.end());
  elements_ = std::move(elements);
}

ResidueSet ResidueSet::empty(std::int64_t modulus) { return ResidueSet(modulus, std::vector<std::int64_t>{}); }

ResidueSet ResidueSet::full(std::int64_t modulus) {
  check_modulus(modulus);
  std::vector<std::int64_t> all(static_cast<std::size_t>(modulus));
  std::iota(all.begin(), all.end(), 0);
  return ResidueSet(modulus, std::move(all));
}

ResidueSet ResidueSet::reduce(std::int64_t modulus, std::span<const std::int64_t> values) {
  check_modulus(modulus);
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(modulus), 0);
  for (std::int64_t v : values) mask[static_cast<std::size_t>(floor_mod(v, modulus))] = 1;
  return from_indicator(modulus, mask);
}

ResidueSet ResidueSet::from_indicator(std::int64_t modulus, std::span<const std::uint8_t> indicator) {
  check_modulus(modulus);
  if (static_cast<std::int64_t>(indicator.size()) != modulus)
    throw std::invalid_argument("indicator length does not match modulus");
  auto bits = make_bits(modulus);
  std::vector<std::int64_t> elements;
  for (std::int64_t x = 0; x < modulus; ++x) {
    if (indicator[static_cast<std::size_t>(x)]) {
      bits[static_cast<std::size_t>(x) >> 6] |= std::uint64_t{1} << (x & 63);
      elements.push_back(x);
    }
  }
  return ResidueSet(modulus, std::move(bits), std::move(elements));
}

std::vector<std::uint8_t> ResidueSet::indicator() const {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(modulus_), 0);
  for (std::int64_t x : elements_) mask[static_cast<std::size_t>(x)] = 1;
  return mask;
}

ResidueSet ResidueSet::complement() const {
  auto mask = indicator();
  for (auto& m : mask) m = !m;
  return from_indicator(modulus_, mask);
}

// ---------------------------------------------------------------------------

IntegerSet::IntegerSet(std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end());
  if (std::adjacent_find(elements.begin(), elements.end()) != elements.end())
    throw std::invalid_argument("duplicate element in integer set");
  elements_ = std::move(elements);
}

IntegerSet IntegerSet::from_unsorted(std::vector<std::int64_t> values) {
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  return IntegerSet(std::move(values));
}

IntegerSet IntegerSet::interval(std::int64_t first, std::int64_t count) {
  std::vector<std::int64_t> v(static_cast<std::size_t>(std::max<std::int64_t>(count, 0)));
  std::iota(v.begin(), v.end(), first);
  return IntegerSet(std::move(v));
}

bool IntegerSet::contains(std::int64_t x) const {
  return std::binary_search(elements_.begin(), elements_.end(), x);
}

// ---------------------------------------------------------------------------

AffineMap AffineMap::integer(std::int64_t scale, std::int64_t shift) {
  if (scale == 0) throw std::invalid_argument("affine map over Z needs a nonzero scale");
  return AffineMap(scale, shift, std::nullopt);
}

AffineMap AffineMap::modular(std::int64_t scale, std::int64_t shift, std::int64_t modulus) {
  check_modulus(modulus);
  scale = floor_mod(scale, modulus);
  if (gcd64(scale, modulus) != 1)
    throw std::invalid_argument("affine map scale " + std::to_string(scale) + " is not a unit mod " +
                                std::to_string(modulus));
  return AffineMap(scale, floor_mod(shift, modulus), modulus);
}

std::int64_t AffineMap::operator()(std::int64_t x) const {
  if (modulus_) return floor_mod(mul_mod(scale_, x, *modulus_) + shift_, *modulus_);
  return scale_ * x + shift_;
}

ResidueSet AffineMap::apply(const ResidueSet& set) const {
  if (!modulus_ || *modulus_ != set.modulus())
    throw std::invalid_argument("affine map context does not match the set's modulus");
  std::vector<std::int64_t> out;
  out.reserve(set.size());
  for (std::int64_t x : set.elements()) out.push_back((*this)(x));
  return ResidueSet(set.modulus(), std::move(out));
}

IntegerSet AffineMap::apply(const IntegerSet& set) const {
  if (modulus_) throw std::invalid_argument("modular affine map applied to an integer set");
  std::vector<std::int64_t> out;
  out.reserve(set.size());
  for (std::int64_t x : set.elements()) out.push_back((*this)(x));
  return IntegerSet(std::move(out));
}

AffineMap AffineMap::inverse() const {
  if (!modulus_) {
    if (scale_ == 1 || scale_ == -1) return integer(scale_, -scale_ * shift_);
    throw std::invalid_argument("integer affine map with |scale| > 1 has no integer inverse");
  }
  const std::int64_t n = *modulus_;
  const std::int64_t inv = inverse_mod(scale_, n);
  return modular(inv, -mul_mod(inv, shift_, n), n);
}

AffineMap AffineMap::then(const AffineMap& outer) const {
  if (modulus_ != outer.modulus_) throw std::invalid_argument("composing affine maps from different contexts");
  if (modulus_) {
    const std::int64_t n = *modulus_;
    return modular(mul_mod(outer.scale_, scale_, n), mul_mod(outer.scale_, shift_, n) + outer.shift_, n);
  }
  return integer(outer.scale_ * scale_, outer.scale_ * shift_ + outer.shift_);
}

// ---------------------------------------------------------------------------

ResidueSet dilate(const ResidueSet& a, std::int64_t lambda) {
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(a.modulus()), 0);
  for (std::int64_t x : a.elements()) mask[static_cast<std::size_t>(mul_mod(lambda, x, a.modulus()))] = 1;
  return from_mask(a.modulus(), mask);
}

IntegerSet dilate(const IntegerSet& a, std::int64_t lambda) {
  if (lambda == 0) throw std::invalid_argument("dilate: lambda must be nonzero over Z");
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (std::int64_t x : a.elements()) out.push_back(lambda * x);
  return IntegerSet(std::move(out));
}

ResidueSet translate(const ResidueSet& a, std::int64_t shift) {
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  for (std::int64_t x : a.elements()) out.push_back(floor_mod(x + shift, a.modulus()));
  return ResidueSet(a.modulus(), std::move(out));
}

IntegerSet translate(const IntegerSet& a, std::int64_t shift) {
  std::vector<std::int64_t> out(a.elements().begin(), a.elements().end());
  for (auto& x : out) x += shift;
  return IntegerSet(std::move(out));
}

ResidueSet difference_set(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::int64_t n = a.modulus();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) mask[static_cast<std::size_t>(floor_mod(x - y, n))] = 1;
  return from_mask(n, mask);
}

ResidueSet sumset(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::int64_t n = a.modulus();
  std::vector<std::uint8_t> mask(static_cast<std::size_t>(n), 0);
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) {
      std::int64_t s = x + y;
      mask[static_cast<std::size_t>(s >= n ? s - n : s)] = 1;
    }
  return from_mask(n, mask);
}

namespace {

template <class Op>
IntegerSet pairwise(const IntegerSet& a, const IntegerSet& b, Op op) {
  std::vector<std::int64_t> out;
  out.reserve(a.size() * b.size());
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) out.push_back(op(x, y));
  return IntegerSet::from_unsorted(std::move(out));
}

}  // namespace

IntegerSet difference_set(const IntegerSet& a, const IntegerSet& b) {
  return pairwise(a, b, [](std::int64_t x, std::int64_t y) { return x - y; });
}

IntegerSet sumset(const IntegerSet& a, const IntegerSet& b) {
  return pairwise(a, b, [](std::int64_t x, std::int64_t y) { return x + y; });
}

ResidueSet iterated_sumset(const ResidueSet& a, std::int64_t lambda) {
  if (lambda < 1) throw std::invalid_argument("iterated_sumset: lambda must be >= 1");
  ResidueSet acc = a;
  for (std::int64_t i = 1; i < lambda; ++i) acc = sumset(acc, a);
  return acc;
}

IntegerSet iterated_sumset(const IntegerSet& a, std::int64_t lambda) {
  if (lambda < 1) throw std::invalid_argument("iterated_sumset: lambda must be >= 1");
  IntegerSet acc = a;
  for (std::int64_t i = 1; i < lambda; ++i) acc = sumset(acc, a);
  return acc;
}

ResidueSet set_union(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  auto mask = a.indicator();
  for (std::int64_t x : b.elements()) mask[static_cast<std::size_t>(x)] = 1;
  return from_mask(a.modulus(), mask);
}

ResidueSet set_intersection(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  std::vector<std::int64_t> out;
  for (std::int64_t x : a.elements())
    if (b.contains(x)) out.push_back(x);
  return ResidueSet(a.modulus(), std::move(out));
}

ResidueSet set_difference(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  std::vector<std::int64_t> out;
  for (std::int64_t x : a.elements())
    if (!b.contains(x)) out.push_back(x);
  return ResidueSet(a.modulus(), std::move(out));
}

IntegerSet set_union(const IntegerSet& a, const IntegerSet& b) {
  std::vector<std::int64_t> out;
  std::set_union(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                 std::back_inserter(out));
  return IntegerSet(std::move(out));
}

std::size_t max_translate_overlap(const ResidueSet& a, const ResidueSet& b) {
  require_same_modulus(a, b);
  const std::int64_t n = a.modulus();
  std::vector<std::size_t> count(static_cast<std::size_t>(n), 0);
  std::size_t best = 0;
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) best = std::max(best, ++count[static_cast<std::size_t>(floor_mod(x - y, n))]);
  return best;
}

std::size_t max_translate_overlap(const IntegerSet& a, const IntegerSet& b) {
  std::unordered_map<std::int64_t, std::size_t> count;
  std::size_t best = 0;
  for (std::int64_t x : a.elements())
    for (std::int64_t y : b.elements()) best = std::max(best, ++count[x - y]);
  return best;
}

}  // namespace ap3
