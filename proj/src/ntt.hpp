#pragma once

#include <cstdint>
#include <vector>

namespace ap3::detail {

/// Prime 119 * 2^23 + 1 with primitive root 3.
inline constexpr std::uint32_t kNttPrime = 998244353;
/// Longest supported transform; cyclic convolutions need 2N - 1 <= this.
inline constexpr std::size_t kMaxNttLength = std::size_t{1} << 23;

/// Cyclic convolution of length `a.size()` (== b.size()), exact as long as
/// every output coefficient is below kNttPrime. Passing the same vector for
/// both operands squares it with one forward transform.
std::vector<std::uint64_t> cyclic_convolution(const std::vector<std::uint32_t>& a,
                                              const std::vector<std::uint32_t>& b);

bool cyclic_convolution_supported(std::size_t length);

}  // namespace ap3::detail
