#pragma once

// Rectification by dilation, a heuristic structure decomposition with an
// exact condition verifier, and checkers for the energy inequalities.

#include <cstdint>
#include <optional>
#include <vector>

#include "ap3/construct.hpp"
#include "ap3/core.hpp"
#include "ap3/rational.hpp"

namespace ap3 {

struct RectificationResult {
  std::int64_t dilator = 1;
  std::int64_t offset = 0;
  /// The covered elements of dilator·A lie in {offset, ..., offset + arc_length} mod N.
  std::int64_t arc_length = 0;
  std::size_t covered = 0;
  Rational covered_fraction;
};

/// Shortest cyclic arc holding at least ceil(coverage·|A|) elements of d·A,
/// minimized over every unit d. Ties: smallest d, then smallest offset.
/// N prime, 0 < coverage <= 1.
RectificationResult rectify(const ResidueSet& a, const Rational& coverage, unsigned threads = 1);

/// Elements x of A with d·x in the result's arc.
ResidueSet rectified_elements(const ResidueSet& a, const RectificationResult& r);

struct Decomposition {
  std::vector<ResidueSet> parts;
  ResidueSet noise = ResidueSet::empty(1);
  Rational eps;
  Rational eps_prime;
  std::int64_t L = 2;

  std::int64_t modulus() const { return noise.modulus(); }
  ResidueSet whole() const;
};

/// Throws std::invalid_argument unless the parts are nonempty, pairwise
/// disjoint, disjoint from the noise and share one modulus, with
/// ε, ε' in (0, 1/2) and L >= 1. When `original` is given the union must
/// equal it.
void validate_decomposition(const Decomposition& d, const ResidueSet* original = nullptr);

struct DecomposeOptions {
  /// Candidate clusters must have |A - A| <= max_doubling |A|.
  Rational max_doubling = 3;
  /// Coverage levels tried for each new cluster, in order.
  std::vector<Rational> coverages = {Rational(1), Rational(1, 2), Rational(1, 4)};
  /// Clusters smaller than max(min_part, ε|A|) are not accepted.
  std::size_t min_part = 4;
  unsigned threads = 1;
};

/// Peels rectified clusters off A until the rest has normalized energy
/// against A at most ε for all dilations in {1..L}, then merges any two
/// parts whose cross energy is at least ε' |Ai|^{3/2} |Aj|^{3/2}.
Decomposition decompose_heuristic(const ResidueSet& a, const Rational& eps, const Rational& eps_prime, std::int64_t L,
                                  const DecomposeOptions& options = {});

struct ConditionReport {
  /// |A| / |Ai|: the smallest F1 with |Ai| >= |A| / F1.
  std::vector<Rational> largeness;
  /// δ[Ai] per part.
  std::vector<Rational> structured;
  /// max over λi, λj of E(λi·Ai, λj·Aj) (raw and normalized by
  /// |Ai|^{3/2}|Aj|^{3/2}); symmetric.
  std::vector<std::vector<std::uint64_t>> cross_energy;
  std::vector<std::vector<double>> cross_normalized;
  /// Condition (iii): every off-diagonal entry is at most ε'.
  bool cross_ok = true;
  /// max over λ0, λ of E(λ0·A0, λ·A), and that divided by |A|³.
  std::uint64_t noise_energy = 0;
  double noise_normalized = 0;
  /// Condition (iv): noise_energy <= ε|A|³.
  bool noise_ok = true;
};

ConditionReport verify_decomposition(const Decomposition& d);

// ---------------------------------------------------------------------------

/// T3(A1,A2,A3)^6 <= |A1||A2||A3| E(2·A2, A3) E(A1, A3) E(A1, 2·A2). Odd N.
struct T3EnergyCheck {
  BigInt lhs;
  BigInt rhs;
  bool holds = false;
};
T3EnergyCheck check_t3_energy_inequality(const ResidueSet& a1, const ResidueSet& a2, const ResidueSet& a3);

/// Energy bounds (i)-(iii) for a pair of sets:
///   (i)   E <= min(|A|²|B|, |A||B|², |A|^{3/2}|B|^{3/2})
///   (ii)  max_x |A ∩ (B + x)| >= E / (|A||B|)
///   (iii) E >= |A|²|B|² / |A + B| and E >= |A|²|B|² / |A - B|
struct EnergyLemmaCheck {
  std::uint64_t energy = 0;
  bool part_i = true;
  bool part_ii = true;
  bool part_iii = true;
  bool holds() const { return part_i && part_ii && part_iii; }
};
EnergyLemmaCheck check_energy_lemma(const ResidueSet& a, const ResidueSet& b);
EnergyLemmaCheck check_energy_lemma(const IntegerSet& a, const IntegerSet& b);

/// δ[A ∪ B] <= 4 δ[A] δ[B] / η, applicable when E(A,B) >= η|A|^{3/2}|B|^{3/2}.
struct UnionDoublingCheck {
  bool applicable = false;
  bool holds = true;
  std::uint64_t energy = 0;
  Rational delta_union;
  Rational bound;
};
UnionDoublingCheck check_union_doubling(const ResidueSet& a, const ResidueSet& b, const Rational& eta);
UnionDoublingCheck check_union_doubling(const IntegerSet& a, const IntegerSet& b, const Rational& eta);

/// If at least 95% of A lies in [-N/24, N/24], T3(A) <= ceil(n²/2), and
/// equality forces A into the orbit of E(k,m) or F(k,m).
struct FinalLemmaCheck {
  bool applicable = false;
  bool holds = true;
  std::uint64_t t3 = 0;
  std::uint64_t bound = 0;
  std::size_t inside = 0;
  bool equality = false;
  std::optional<FamilyTag> tag;
};
FinalLemmaCheck check_final_lemma(const ResidueSet& a);

}  // namespace ap3
