#pragma once

// Set representations over Z and Z/NZ, affine maps, set algebra and
// canonical forms under the affine group.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace ap3 {

// ---------------------------------------------------------------------------
// Modular arithmetic helpers.

std::int64_t floor_mod(std::int64_t x, std::int64_t n);
std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t n);
std::int64_t gcd64(std::int64_t a, std::int64_t b);
/// Inverse of a modulo n; throws std::invalid_argument when gcd(a, n) != 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t n);
bool is_prime(std::int64_t n);
/// Binomial coefficient, saturating at UINT64_MAX.
std::uint64_t binomial(std::uint64_t n, std::uint64_t k);

/// Thrown for moduli an operation does not support (e.g. composite N for
/// orbit enumeration).
class UnsupportedModulus : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------

/// A subset of Z/NZ. Membership is held as a dense bit vector; the sorted
/// element list is kept alongside for iteration.
class ResidueSet {
 public:
  /// Elements must lie in [0, N-1] and be distinct (any order).
  ResidueSet(std::int64_t modulus, std::vector<std::int64_t> elements);

  static ResidueSet empty(std::int64_t modulus);
  static ResidueSet full(std::int64_t modulus);
  /// Reduces arbitrary integers mod N and drops repeats.
  static ResidueSet reduce(std::int64_t modulus, std::span<const std::int64_t> values);
  static ResidueSet from_indicator(std::int64_t modulus, std::span<const std::uint8_t> indicator);

  std::int64_t modulus() const { return modulus_; }
  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::span<const std::int64_t> elements() const { return elements_; }

  /// `residue` must already be reduced.
  bool contains(std::int64_t residue) const {
    return (bits_[static_cast<std::size_t>(residue) >> 6] >> (residue & 63)) & 1u;
  }
  bool contains_mod(std::int64_t x) const { return contains(floor_mod(x, modulus_)); }

  std::vector<std::uint8_t> indicator() const;
  ResidueSet complement() const;
  double density() const { return static_cast<double>(size()) / static_cast<double>(modulus_); }

  bool operator==(const ResidueSet& other) const {
    return modulus_ == other.modulus_ && elements_ == other.elements_;
  }

 private:
  ResidueSet(std::int64_t modulus, std::vector<std::uint64_t> bits, std::vector<std::int64_t> elements)
      : modulus_(modulus), bits_(std::move(bits)), elements_(std::move(elements)) {}

  std::int64_t modulus_;
  std::vector<std::uint64_t> bits_;
  std::vector<std::int64_t> elements_;
};

/// A finite set of integers, stored sorted ascending.
class IntegerSet {
 public:
  IntegerSet() = default;
  /// Sorts; throws std::invalid_argument on duplicates.
  explicit IntegerSet(std::vector<std::int64_t> elements);
  /// Sorts and drops repeats.
  static IntegerSet from_unsorted(std::vector<std::int64_t> values);
  /// {first, first+1, ..., first+count-1}.
  static IntegerSet interval(std::int64_t first, std::int64_t count);

  std::size_t size() const { return elements_.size(); }
  bool empty() const { return elements_.empty(); }
  std::span<const std::int64_t> elements() const { return elements_; }
  bool contains(std::int64_t x) const;
  std::int64_t min() const { return elements_.front(); }
  std::int64_t max() const { return elements_.back(); }

  bool operator==(const IntegerSet&) const = default;

 private:
  std::vector<std::int64_t> elements_;
};

/// x -> scale*x + shift over Z (scale != 0) or over Z/NZ (gcd(scale, N) = 1).
class AffineMap {
 public:
  static AffineMap integer(std::int64_t scale, std::int64_t shift);
  static AffineMap modular(std::int64_t scale, std::int64_t shift, std::int64_t modulus);
  static AffineMap identity() { return integer(1, 0); }

  std::int64_t scale() const { return scale_; }
  std::int64_t shift() const { return shift_; }
  const std::optional<std::int64_t>& modulus() const { return modulus_; }

  std::int64_t operator()(std::int64_t x) const;
  ResidueSet apply(const ResidueSet& set) const;
  IntegerSet apply(const IntegerSet& set) const;

  /// Modular context only.
  AffineMap inverse() const;
  /// The map x -> outer(this(x)).
  AffineMap then(const AffineMap& outer) const;

  bool operator==(const AffineMap&) const = default;

 private:
  AffineMap(std::int64_t scale, std::int64_t shift, std::optional<std::int64_t> modulus)
      : scale_(scale), shift_(shift), modulus_(modulus) {}

  std::int64_t scale_;
  std::int64_t shift_;
  std::optional<std::int64_t> modulus_;
};

using AnySet = std::variant<ResidueSet, IntegerSet>;

// ---------------------------------------------------------------------------
// Set algebra. Modular overloads throw std::invalid_argument on a modulus
// mismatch.

/// {lambda*a mod N}. Any lambda is accepted; cardinality drops when
/// gcd(lambda, N) > 1.
ResidueSet dilate(const ResidueSet& a, std::int64_t lambda);
/// {lambda*a}; lambda must be nonzero.
IntegerSet dilate(const IntegerSet& a, std::int64_t lambda);

ResidueSet translate(const ResidueSet& a, std::int64_t shift);
IntegerSet translate(const IntegerSet& a, std::int64_t shift);

ResidueSet difference_set(const ResidueSet& a, const ResidueSet& b);
IntegerSet difference_set(const IntegerSet& a, const IntegerSet& b);
ResidueSet sumset(const ResidueSet& a, const ResidueSet& b);
IntegerSet sumset(const IntegerSet& a, const IntegerSet& b);

/// lambda-fold sumset a + ... + a; lambda >= 1.
ResidueSet iterated_sumset(const ResidueSet& a, std::int64_t lambda);
IntegerSet iterated_sumset(const IntegerSet& a, std::int64_t lambda);

ResidueSet set_union(const ResidueSet& a, const ResidueSet& b);
ResidueSet set_intersection(const ResidueSet& a, const ResidueSet& b);
ResidueSet set_difference(const ResidueSet& a, const ResidueSet& b);
IntegerSet set_union(const IntegerSet& a, const IntegerSet& b);

/// max over x of |A ∩ (B + x)|.
std::size_t max_translate_overlap(const ResidueSet& a, const ResidueSet& b);
std::size_t max_translate_overlap(const IntegerSet& a, const IntegerSet& b);

// ---------------------------------------------------------------------------
// Canonical forms.

/// Orbit-minimal encoding of a set under the affine group.
///
/// Modular sets: the encoding is the cyclic gap sequence of some a*A + b,
/// minimised lexicographically over all units a and all starting points.
/// The representative is {0, g0, g0+g1, ...}; for n >= 2 it always contains
/// 0 and 1.
///
/// Integer sets: the set is translated to min 0, divided by the gcd of its
/// elements and the lexicographically smaller of itself and its reflection
/// is kept. The encoding is that element list.
struct CanonicalForm {
  AnySet representative;
  std::vector<std::int64_t> encoding;
  std::optional<std::int64_t> modulus;
  /// Affine map sending the representative onto the canonicalised input.
  AffineMap from_representative = AffineMap::identity();
  /// Number of affine maps fixing the set (modular), or of integer
  /// symmetries x -> x, x -> W - x fixing the representative.
  std::uint64_t stabilizer = 1;

  bool operator==(const CanonicalForm& other) const {
    return modulus == other.modulus && encoding == other.encoding;
  }
  auto operator<=>(const CanonicalForm& other) const {
    if (auto c = modulus <=> other.modulus; c != 0) return c;
    return encoding <=> other.encoding;
  }
};

/// Throws std::invalid_argument on an empty set.
CanonicalForm canonicalize(const ResidueSet& a);
CanonicalForm canonicalize(const IntegerSet& a);

struct OrbitRepresentative {
  ResidueSet set;
  std::uint64_t orbit_size;
};

/// Number of independent top-level branches the transversal splits into.
std::int64_t transversal_branch_count(std::int64_t n, std::int64_t modulus);
/// Candidate subsets examined by a full transversal run.
std::uint64_t transversal_candidate_count(std::int64_t n, std::int64_t modulus);

/// Visits one representative per affine orbit of n-subsets of Z/NZ whose
/// branch index is `branch`. N must be prime (UnsupportedModulus otherwise).
/// Visit order is deterministic.
void for_each_orbit_representative_in_branch(std::int64_t n, std::int64_t modulus, std::int64_t branch,
                                             const std::function<void(const OrbitRepresentative&)>& visit);

/// All branches, optionally spread across threads; output is ordered by
/// branch regardless of thread count.
std::vector<OrbitRepresentative> affine_orbit_transversal(std::int64_t n, std::int64_t modulus,
                                                          unsigned threads = 1);

}  // namespace ap3
