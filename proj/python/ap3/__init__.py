"""Exact counts of three-term progressions, extremal searches and constructions.

Sets are plain lists of integers; results that carry several fields come back
as dicts. Rationals are returned as fractions.Fraction.
"""

import json
from fractions import Fraction

from . import _core
from ._core import (
    BudgetExceeded,
    additive_energy,
    behrend_set,
    embed_mod,
    generate_family,
    random_set,
    t3,
    t3_fast,
    t3_naive,
)

__all__ = [
    "BudgetExceeded",
    "additive_energy",
    "best_bound",
    "behrend_set",
    "classify",
    "closed_ledger",
    "complement_identity",
    "count_report",
    "curve_m3_upper",
    "cutoff",
    "embed_mod",
    "extremal_mod",
    "generate_family",
    "intersect_search",
    "max3ap_integers",
    "optimize_wraparound",
    "random_set",
    "rectify",
    "t3",
    "t3_fast",
    "t3_integers",
    "t3_naive",
    "threshold_scan",
    "wraparound_complement",
]


def count_report(modulus, elements):
    return json.loads(_core.count_report(modulus, list(elements)))


def t3_integers(elements):
    return json.loads(_core.t3_integers(list(elements)))


def complement_identity(modulus, elements):
    return json.loads(_core.complement_identity(modulus, list(elements)))


def wraparound_complement(modulus, k, m):
    return json.loads(_core.wraparound_complement(modulus, k, m))


def optimize_wraparound(modulus, n, complement=False, threads=1):
    return json.loads(_core.optimize_wraparound(modulus, n, complement, threads))


def intersect_search(modulus, a, b, trials, seed, tolerance=0.05, threads=1):
    return json.loads(_core.intersect_search(modulus, list(a), list(b), trials, seed, tolerance, threads))


def max3ap_integers(n, width_cap=0, budget_nodes=50_000_000, threads=1):
    return json.loads(_core.max3ap_integers(n, width_cap, budget_nodes, threads))


def extremal_mod(n, modulus, side="max", via_complement=False, budget_nodes=50_000_000, threads=1):
    return json.loads(_core.extremal_mod(n, modulus, side, via_complement, budget_nodes, threads))


def classify(elements, modulus=None):
    if modulus is None:
        return json.loads(_core.classify_integers(list(elements)))
    return json.loads(_core.classify_mod(modulus, list(elements)))


def threshold_scan(modulus, budget_nodes=50_000_000, threads=1):
    """Rows of (n, M3, half_n2_match, all_EF_witnesses)."""
    lines = _core.threshold_csv(modulus, budget_nodes, threads).strip().splitlines()[1:]
    rows = []
    for line in lines:
        n, value, half, ef = line.split(",")
        rows.append((int(n), int(value), half == "true", ef == "true"))
    return rows


def rectify(modulus, elements, coverage="1", threads=1):
    r = json.loads(_core.rectify(modulus, list(elements), str(coverage), threads))
    r["covered_fraction"] = Fraction(r["covered_fraction"])
    return r


def curve_m3_upper(alpha):
    return Fraction(_core.curve_m3_upper(str(alpha)))


def cutoff(digits=15):
    return json.loads(_core.cutoff(digits))


def closed_ledger(max_iterations=64):
    return json.loads(_core.closed_ledger(max_iterations))


def best_bound(ledger, target, alpha, side):
    """Tightest asymptotic bound in `ledger` for target at alpha, or None."""
    alpha = Fraction(alpha)
    values = [
        Fraction(r["value"])
        for r in ledger["records"]
        if r["target"] == target and Fraction(r["alpha"]) == alpha and r["side"] in (side, "exact") and not r["finite_n"]
    ]
    if not values:
        return None
    return min(values) if side == "upper" else max(values)
