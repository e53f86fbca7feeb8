#pragma once

// Ledger of upper/lower bounds for the limit functions m3(α) and M3(α),
// with closure under the complement relation and submultiplicativity.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ap3/core.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

enum class Target { m3, M3 };
enum class BoundSide { upper, lower, exact };

enum class ProvenanceKind { closed_form, construction, submultiplicative, complement, exhaustive };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::closed_form;
  /// Free text for closed-form and construction records, "n,N" for exhaustive.
  std::string detail;
  /// Ledger indices of the records this one was derived from.
  std::vector<std::size_t> parents;

  std::string to_string() const;
};

struct BoundRecord {
  Target target = Target::m3;
  Rational alpha;
  Rational value;
  BoundSide side = BoundSide::upper;
  Provenance provenance;
  /// Derived from a single finite modulus; only suggests the limit value.
  bool finite_n = false;
  std::optional<std::int64_t> modulus;
};

std::string to_string(Target t);
std::string to_string(BoundSide s);
Target parse_target(const std::string& text);
BoundSide parse_side(const std::string& text);
ProvenanceKind parse_provenance_kind(const std::string& text);

/// 1 - 3α + 3α², the value of m3(α) + M3(1 - α).
Rational complement_constant(const Rational& alpha);

/// (2 - 12α + 21α²)/12 for 1/3 <= α <= 2/3; std::domain_error outside.
Rational curve_m3_upper(const Rational& alpha);

/// α²/4: the best single wraparound family below density 1/3. It meets the
/// curve above tangentially at α = 1/3. Domain [0, 1/3].
Rational single_family_m3_upper(const Rational& alpha);

/// M3(α) = α²/2 and m3(1 - α) = 1/2 - 2(1-α) + (5/2)(1-α)², both valid only
/// for α below an unknown constant c.
struct SmallAlphaValues {
  Rational M3;
  Rational m3_at_one_minus;
  std::string condition = "conditional on alpha < c (c unknown)";
};
SmallAlphaValues exact_small_alpha(const Rational& alpha);

/// m3(α) <= v  becomes  M3(1-α) >= c(α) - v, and symmetrically. Results
/// outside [0, 1] are clamped, which only weakens them. Parent index is
/// filled in by the ledger.
BoundRecord complement_transfer(const BoundRecord& r);

/// Finite-N record at α = |A|/N with value T3(A)/N².
BoundRecord construction_bound(const ResidueSet& a, Target target, const std::string& id);
/// Record from an exhaustive value T3 = value at size n in Z/NZ.
BoundRecord exhaustive_bound(std::int64_t n, std::int64_t modulus, std::uint64_t value, Target target);

class LedgerInconsistent : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

struct GridOptions {
  /// Base alphas (closed-form and hand-entered records) need a denominator
  /// up to this.
  std::int64_t max_denominator = 96;
  /// Products are admitted up to this many nested multiplications of base
  /// alphas; complements keep the depth of their parent.
  int max_depth = 2;
};

class Ledger {
 public:
  explicit Ledger(GridOptions grid = {}) : grid_(grid) {}

  /// Adds a record, rejecting it (std::invalid_argument) when α or the value
  /// lies outside [0, 1] or α is off the grid, and (LedgerInconsistent) when
  /// it would push best_lower above best_upper. Finite-N records are kept
  /// apart from the closure unless `admit_finite` is set.
  std::size_t insert(BoundRecord record, bool admit_finite = false);

  std::optional<Rational> best_upper(Target t, const Rational& alpha) const;
  std::optional<Rational> best_lower(Target t, const Rational& alpha) const;
  std::optional<std::size_t> best_upper_index(Target t, const Rational& alpha) const;
  std::optional<std::size_t> best_lower_index(Target t, const Rational& alpha) const;

  /// Limit-function records, including admitted finite-N ones.
  const std::vector<BoundRecord>& records() const { return records_; }
  /// Finite-N records that were not admitted.
  const std::vector<BoundRecord>& observations() const { return observations_; }
  /// Sorted alphas carrying at least one record.
  std::vector<Rational> grid() const;
  const GridOptions& grid_options() const { return grid_; }

  /// Nesting depth needed to reach α, if α is admissible.
  std::optional<int> admissible_depth(const Rational& alpha) const;

 private:
  struct Best {
    std::optional<std::size_t> upper;
    std::optional<std::size_t> lower;
  };
  const Best* find(Target t, const Rational& alpha) const;

  GridOptions grid_;
  std::vector<BoundRecord> records_;
  std::vector<BoundRecord> observations_;
  std::map<std::pair<int, Rational>, Best> best_;
  std::map<Rational, int> depth_;
};

/// Closed-form starting records: the curve at each alpha in `curve_alphas`
/// (default 1/3, 1/2, 2/3) plus the endpoint values m3(0) = 0, M3(1) = 1.
Ledger seed_ledger(const std::vector<Rational>& curve_alphas = {}, GridOptions grid = {});

struct ClosureStats {
  std::size_t iterations = 0;
  std::size_t added = 0;
};

/// Applies m3(αβ) <= m3(α)m3(β), M3(αβ) >= M3(α)M3(β) and the complement
/// transfer until nothing improves or `max_iterations` passes have run.
/// Each pass works from a snapshot of the current best bounds, in sorted
/// order, so the result depends only on the records.
ClosureStats submultiplicative_closure(Ledger& ledger, std::size_t max_iterations = 64);

struct SplitComparison {
  Rational alpha;
  Rational single_family;
  /// Smallest f(a) f(α/a) over the scanned splits.
  std::optional<Rational> best_product;
  std::optional<Rational> best_split;
  bool dominates = false;
};

/// Compares α²/4 with f(a) f(α/a), f the curve, for every a = p/q with
/// q <= max_denominator and both factors in [1/3, 2/3].
SplitComparison compare_product_to_single(const Rational& alpha, std::int64_t max_denominator = 96);

struct EqualSplitProbe {
  Rational t;
  Rational alpha;  // t²
  Rational product;
  Rational single_family;
  bool dominates = false;
};
EqualSplitProbe probe_equal_split(const Rational& t);

/// The density below which the squared curve f(√α)² undercuts α²/4:
/// 15t² - 12t + 2 = 0 at t = √α, i.e. α = 2(7 + 2√6)/75.
struct CutoffCertificate {
  /// Rational enclosure lo <= cutoff <= hi, built from a bisection
  /// enclosure of √6.
  Rational lo;
  Rational hi;
  Rational sqrt6_lo;
  Rational sqrt6_hi;
  /// Digits shared by both enclosure ends.
  std::string decimal;
  double approx = 0;
  /// Equal splits just below and just above the cutoff.
  EqualSplitProbe below;
  EqualSplitProbe above;
  /// α = 0.31 and α = 0.33 scanned over rational splits.
  SplitComparison at_031;
  SplitComparison at_033;
  /// |cutoff - 0.3173| < 5e-5.
  bool matches_reported_value = false;
};

CutoffCertificate ef_sharpness_cutoff(int digits = 15);

}  // namespace ap3
