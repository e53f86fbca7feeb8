#pragma once

// Exact counting of three-term progressions, the trilinear form T3,
// additive energy and the doubling constant.

#include <cstdint>
#include <vector>

#include "ap3/core.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

/// Integer weights on Z/NZ; all in-library uses are nonnegative.
struct WeightVector {
  WeightVector(std::int64_t modulus, std::vector<std::int64_t> weights);
  static WeightVector indicator(const ResidueSet& set, std::int64_t scale = 1);
  static WeightVector constant(std::int64_t modulus, std::int64_t value);

  std::int64_t modulus;
  std::vector<std::int64_t> weights;
};

/// T3 split into pairs with 2d = 0 and the remaining pairs, which come in
/// (x, d) / (x + 2d, -d) couples: t3 = trivial + 2 * combinatorial.
///
/// Over Z and odd moduli "trivial" is exactly the d = 0 count |A|. For even
/// N it also absorbs the degenerate pairs with d = N/2.
struct CountReport {
  std::uint64_t t3 = 0;
  std::uint64_t trivial = 0;
  std::uint64_t combinatorial = 0;

  bool operator==(const CountReport&) const = default;
};

/// #{(x, d) : x ∈ A1, x+d ∈ A2, x+2d ∈ A3}, by scanning every d. O(N |A1|).
std::uint64_t t3_naive(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3);
std::uint64_t t3_naive(const ResidueSet& a);

/// Same value via T3 = Σ_{y ∈ A2} (1_{A1} * 1_{A3})(2y), with the cyclic
/// convolution done by an exact number-theoretic transform.
std::uint64_t t3_fast(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3);
std::uint64_t t3_fast(const ResidueSet& a);

/// Σ_{x ∈ A1, y ∈ A2} 1_{A3}(2y - x). O(|A1| |A2|); best for small sets.
std::uint64_t t3_pairs(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3);
std::uint64_t t3_pairs(const ResidueSet& a);

/// Picks the cheaper of t3_pairs and t3_fast.
std::uint64_t t3(const ResidueSet& a);

CountReport count_report(const ResidueSet& a);

/// Counts over Z by midpoint enumeration.
CountReport t3_integers(const IntegerSet& a);

/// ceil(n^2/2), together with the midpoint-sum form n + 2 Σ_j min(j-1, n-j).
struct MidpointBound {
  std::uint64_t closed_form;
  std::uint64_t summation;
};
/// Throws std::logic_error if the two forms disagree.
MidpointBound midpoint_upper_bound(std::uint64_t n);
inline std::uint64_t half_square_ceil(std::uint64_t n) { return (n * n + 1) / 2; }

/// Σ_{x,d} f1(x) f2(x+d) f3(x+2d). Throws std::overflow_error if the result
/// does not fit in int64.
std::int64_t t3_trilinear(const WeightVector& f1, const WeightVector& f2, const WeightVector& f3);

/// #{(a1, b1, a2, b2) : a1 + b1 = a2 + b2}.
std::uint64_t additive_energy(const ResidueSet& a, const ResidueSet& b);
std::uint64_t additive_energy(const IntegerSet& a, const IntegerSet& b);

/// T3(A) + T3(A^c) against N^2 - 3nN + 3n^2. Only meaningful when
/// gcd(N, 6) = 1; otherwise `applicable` is false and nothing is computed.
struct ComplementCheck {
  bool applicable = false;
  std::uint64_t lhs = 0;
  std::uint64_t rhs = 0;
  bool equal = false;
};
ComplementCheck complement_identity_check(const ResidueSet& a);
/// (1 - 3α + 3α²) N² in integer form, α = n/N.
std::uint64_t complement_identity_value(std::int64_t n, std::int64_t modulus);

/// |A - A| / |A|; throws std::invalid_argument on an empty set.
Rational doubling_delta(const ResidueSet& a);
Rational doubling_delta(const IntegerSet& a);

}  // namespace ap3
