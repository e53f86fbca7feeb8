#pragma once

// Exhaustive extremal searches for T3 over Z and Z/NZ, and classification
// of sets against the affine orbits of E(k,m) and F(k,m).

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/construct.hpp"
#include "ap3/core.hpp"

namespace ap3 {

enum class Side { max, min };

/// The search would exceed its node budget. Nothing partial is reported.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::uint64_t estimate, std::uint64_t budget)
      : std::runtime_error("search budget exceeded: needs about " + std::to_string(estimate) + " nodes, budget " +
                           std::to_string(budget)),
        estimate_(estimate),
        budget_(budget) {}

  std::uint64_t estimate() const { return estimate_; }
  std::uint64_t budget() const { return budget_; }

 private:
  std::uint64_t estimate_;
  std::uint64_t budget_;
};

struct SearchOptions {
  std::uint64_t budget_nodes = 50'000'000;
  /// 0 = hardware concurrency.
  unsigned threads = 1;
};

struct ExtremalResult {
  std::uint64_t value = 0;
  /// Pairwise inequivalent canonical forms, sorted by encoding.
  std::vector<CanonicalForm> witnesses;
  /// Integer search: complete candidate sets evaluated.
  /// Modular search: number of n-subsets covered (Σ orbit sizes = C(N, n)).
  std::uint64_t search_space_size = 0;
  /// Integer search: subtrees cut by the midpoint bound.
  /// Modular search: candidates skipped as non-canonical.
  std::uint64_t pruned_count = 0;
  std::uint64_t nodes = 0;

  std::int64_t n = 0;
  std::optional<std::int64_t> modulus;
  Side side = Side::max;
  /// Integer search only.
  std::optional<std::int64_t> width_cap;
};

/// max T3 over n-subsets of {0, ..., W} that contain 0, have gcd 1 and are
/// no larger than their reflection. Each witness is recounted before return.
ExtremalResult max3ap_integers(std::int64_t n, std::int64_t width_cap, const SearchOptions& options = {});
inline std::int64_t default_width_cap(std::int64_t n) { return 2 * n; }

/// Exact M3(n,N) or m3(n,N) over the affine orbit transversal. N prime.
ExtremalResult extremal_mod(std::int64_t n, std::int64_t modulus, Side side, const SearchOptions& options = {});

/// Same quantity from the opposite extremum at size N - n, through
/// T3(A) + T3(A^c) = N^2 - 3nN + 3n^2. N prime > 3.
ExtremalResult extremal_mod_via_complement(std::int64_t n, std::int64_t modulus, Side side,
                                           const SearchOptions& options = {});

struct ClassificationResult {
  bool matched = false;
  std::optional<FamilyTag> tag;
  /// Sends generate_family(tag) (embedded with shift 0 when modular) onto
  /// the input set.
  std::optional<AffineMap> map;
  /// Every family tag of the right size whose orbit contains the input.
  std::vector<FamilyTag> all_tags;
};

ClassificationResult classify_extremal(const IntegerSet& a);
ClassificationResult classify_extremal(const ResidueSet& a);

struct ThresholdRow {
  std::int64_t n;
  std::uint64_t m3;
  bool half_n2_match;
  bool all_ef_witnesses;
};

struct ThresholdScan {
  std::int64_t modulus = 0;
  std::vector<ThresholdRow> rows;
  /// Largest n such that every row up to n has both flags set.
  std::int64_t threshold_n = 0;
  double threshold_ratio = 0;
};

ThresholdScan threshold_scan(std::int64_t modulus, const SearchOptions& options = {});

}  // namespace ap3
