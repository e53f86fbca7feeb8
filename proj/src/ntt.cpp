#include "ntt.hpp"

#include <stdexcept>

namespace ap3::detail {

namespace {

constexpr std::uint64_t P = kNttPrime;

std::uint64_t pow_mod(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  b %= P;
  while (e) {
    if (e & 1) r = r * b % P;
    b = b * b % P;
    e >>= 1;
  }
  return r;
}

void transform(std::vector<std::uint64_t>& a, bool invert) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    std::uint64_t w = pow_mod(3, (P - 1) / len);
    if (invert) w = pow_mod(w, P - 2);
    std::vector<std::uint64_t> powers(len / 2);
    powers[0] = 1;
    for (std::size_t k = 1; k < len / 2; ++k) powers[k] = powers[k - 1] * w % P;
    for (std::size_t i = 0; i < n; i += len) {
      for (std::size_t k = 0; k < len / 2; ++k) {
        const std::uint64_t u = a[i + k];
        const std::uint64_t v = a[i + k + len / 2] * powers[k] % P;
        a[i + k] = u + v < P ? u + v : u + v - P;
        a[i + k + len / 2] = u >= v ? u - v : u + P - v;
      }
    }
  }
  if (invert) {
    const std::uint64_t inv_n = pow_mod(n, P - 2);
    for (auto& x : a) x = x * inv_n % P;
  }
}

std::size_t padded_length(std::size_t length) {
  std::size_t size = 1;
  while (size < 2 * length - 1) size <<= 1;
  return size;
}

}  // namespace

bool cyclic_convolution_supported(std::size_t length) {
  return length >= 1 && padded_length(length) <= kMaxNttLength;
}

std::vector<std::uint64_t> cyclic_convolution(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("cyclic_convolution: length mismatch");
  if (!cyclic_convolution_supported(n)) throw std::length_error("cyclic_convolution: length too large for NTT");
  const std::size_t size = padded_length(n);
  std::vector<std::uint64_t> fa(size, 0);
  for (std::size_t i = 0; i < n; ++i) fa[i] = a[i];
  transform(fa, false);
  if (&a == &b) {
    for (auto& x : fa) x = x * x % P;
  } else {
    std::vector<std::uint64_t> fb(size, 0);
    for (std::size_t i = 0; i < n; ++i) fb[i] = b[i];
    transform(fb, false);
    for (std::size_t i = 0; i < size; ++i) fa[i] = fa[i] * fb[i] % P;
  }
  transform(fa, true);
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < 2 * n - 1; ++i) {
    std::uint64_t& slot = out[i < n ? i : i - n];
    slot += fa[i];
  }
  return out;
}

}  // namespace ap3::detail
