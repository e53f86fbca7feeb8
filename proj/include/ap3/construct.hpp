#pragma once

// Generators for the extremal families E(k,m), F(k,m), their modular
// embeddings and complements, intersections of affine copies, Behrend-type
// sphere sets and seeded random sets.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ap3/core.hpp"

namespace ap3 {

enum class Family { E, F };

struct FamilyTag {
  Family family = Family::E;
  std::int64_t k = 0;
  std::int64_t m = 0;

  /// 2k + 2m + 1 for E, 2k + 2m for F.
  std::int64_t size() const { return 2 * k + 2 * m + (family == Family::E ? 1 : 0); }
  std::string to_string() const;
  bool operator==(const FamilyTag&) const = default;
};

/// E(k,m) = {-k-2m, ..., -k-2} ∪ {-k, ..., k} ∪ {k+2, ..., k+2m}, the outer
/// blocks having step 2. F(k,m) is E(k,m) without its leftmost element.
IntegerSet generate_family(const FamilyTag& tag);

/// All tags whose family set has `size` elements, E before F, k ascending.
std::vector<FamilyTag> family_tags_of_size(std::int64_t size);

struct Embedding {
  ResidueSet set;
  /// True when two elements reduced to the same residue.
  bool collision;
};
/// x -> (x + shift) mod N.
Embedding embed_mod(const IntegerSet& a, std::int64_t modulus, std::int64_t shift = 0);

struct WrapConstruction {
  FamilyTag tag;
  ResidueSet set;
  std::uint64_t t3 = 0;
  double density = 0;
};

/// Complement in Z/NZ of E(k,m) embedded with shift 0. Throws
/// std::invalid_argument if E(k,m) does not fit (2k+2m+1 > N) or its
/// embedding collides.
WrapConstruction wraparound_complement(std::int64_t modulus, std::int64_t k, std::int64_t m);

/// Scans every (k, m) with |E(k,m)| = n (F(k,m) when n is even), embeds it
/// into Z/NZ and keeps the one with the most progressions; ties go to the
/// smallest k. The returned set is the embedded family set itself.
WrapConstruction optimize_wraparound(std::int64_t modulus, std::int64_t n, unsigned threads = 1);

/// Complement of the family set chosen by optimize_wraparound(N, N - n):
/// the density-n/N set with the fewest progressions among complements.
WrapConstruction optimize_wraparound_complement(std::int64_t modulus, std::int64_t n, unsigned threads = 1);

struct IntersectOptions {
  /// Trials need |A ∩ (λB + μ)| >= (1 - tolerance) |A||B| / N to compete.
  double tolerance = 0.05;
  unsigned threads = 1;
};

struct IntersectTrial {
  std::int64_t lambda;
  std::int64_t mu;
  std::size_t size;
  std::uint64_t t3;
  bool eligible;
};

struct IntersectResult {
  /// Index into `trials` of the winner; empty when no trial was eligible.
  std::optional<std::size_t> best;
  std::optional<ResidueSet> best_set;
  std::vector<IntersectTrial> trials;
};

/// Samples (λ, μ) with λ a unit and μ arbitrary from a generator seeded with
/// `seed`, and keeps the eligible intersection A ∩ (λB + μ) with the fewest
/// progressions; ties go to the smallest (λ, μ).
IntersectResult intersect_search(const ResidueSet& a, const ResidueSet& b, std::uint64_t trials, std::uint64_t seed,
                                 const IntersectOptions& options = {});

/// Digit vectors x ∈ {0..q-1}^d with Σ x_i^2 = r, mapped to Σ x_i (2q)^i.
IntegerSet behrend_set(int dim, std::int64_t base, std::int64_t radius_sq);
/// The r with the most digit vectors (smallest on ties).
std::int64_t behrend_most_populous_radius(int dim, std::int64_t base);

/// Uniform n-subset of Z/NZ (partial Fisher-Yates).
ResidueSet random_set(std::int64_t n, std::int64_t modulus, std::uint64_t seed);

}  // namespace ap3
