"""Large-sieve variance sums for residue counts of integer sequences.

Two quantities are evaluated, never derived: the weighted variance of
residue counts of an arbitrary sample over all moduli r <= X, against
the bound (N + X**2) * Z; and its specialization to primes in (x, 2x]
split along progressions p = -p1 (mod r) for window primes r, against
the bound x**2 / log(x).

The sums are computed with exact rational arithmetic by default (the
mean Z/r is not an integer; after clearing denominators every term is
an integer, see the identity in :func:`residue_count_variance`).  For
large x the progression sum switches to floats with compensated,
fixed-order summation so results stay deterministic.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import fsum, log

import numpy as np

from .errors import CoverageError
from .parents import window_bounds
from .primes import PrimeTable, primes_in_range

EXACT_X_CUTOFF = 1000  # auto mode: exact rationals up to here, floats beyond


@dataclass(frozen=True)
class SequenceSample:
    """Distinct positive integers, each at most ``bound``."""

    values: tuple[int, ...]
    bound: int

    def __post_init__(self):
        if len(set(self.values)) != len(self.values):
            raise ValueError("sample values must be distinct")
        if self.values and (min(self.values) < 1 or max(self.values) > self.bound):
            raise ValueError(f"sample values must lie in [1, {self.bound}]")

    @property
    def size(self) -> int:
        return len(self.values)

    @staticmethod
    def from_values(values, bound: int | None = None) -> "SequenceSample":
        vals = tuple(int(v) for v in values)
        if bound is None:
            bound = max(vals) if vals else 1
        return SequenceSample(values=vals, bound=bound)


@dataclass(frozen=True)
class VarianceReport:
    """A variance sum next to its predicted bound.

    ``scale`` is the modulus cutoff X (residue variance) or the box
    parameter x (progression variance); ``window`` is set only in the
    progression case.
    """

    scale: int
    lhs: Fraction | float
    bound_form: str
    bound_value: float
    window: tuple[int, int] | None = None

    @property
    def ratio(self) -> float:
        return float(self.lhs) / self.bound_value if self.bound_value else 0.0

    def to_json_dict(self) -> dict:
        lhs = str(self.lhs) if isinstance(self.lhs, Fraction) else self.lhs
        out = {
            "x_or_X": self.scale,
            "lhs": lhs,
            "bound": self.bound_value,
            "ratio": self.ratio,
        }
        if self.window is not None:
            out["window"] = list(self.window)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv_row(self) -> tuple:
        lhs = str(self.lhs) if isinstance(self.lhs, Fraction) else self.lhs
        return (self.scale, lhs, self.bound_value, self.ratio)


def residue_counts(sample: SequenceSample, r: int) -> np.ndarray:
    """Count of sample values in each residue class mod r.

    Classes are indexed 0..r-1, with class 0 collecting the multiples
    of r (the class elsewhere written as a = r).
    """
    if r < 1:
        raise ValueError(f"modulus must be >= 1, got {r}")
    vals = np.asarray(sample.values, dtype=np.int64)
    if vals.size == 0:
        return np.zeros(r, dtype=np.int64)
    return np.bincount(vals % r, minlength=r)


def residue_count_variance(sample: SequenceSample, x_bound: int) -> VarianceReport:
    """Weighted residue-count variance over all moduli r <= x_bound.

    lhs = sum over r <= X of r * sum over classes a of
    (Z(N; r, a) - Z/r)**2, computed exactly: for each r the inner sum
    times r equals r * sum(c_a**2) - Z**2, an integer (the cross terms
    collapse because the counts sum to Z).  Bounded by (N + X**2) * Z.
    """
    if x_bound < 2:
        raise ValueError(f"modulus cutoff must be >= 2, got {x_bound}")
    z = sample.size
    total = 0
    for r in range(1, x_bound + 1):
        counts = residue_counts(sample, r)
        total += r * int(np.dot(counts, counts)) - z * z
    bound = float((sample.bound + x_bound * x_bound) * z)
    return VarianceReport(
        scale=x_bound, lhs=Fraction(total), bound_form="(N+X^2)Z", bound_value=bound
    )


def prime_progression_variance(
    table: PrimeTable, x: int, method: str = "auto"
) -> VarianceReport:
    """Variance of prime counts along the progressions p = -p1 (mod r).

    For each prime r in the middle-prime window and each prime p1 in
    (x, 2x], takes the squared deviation of
    #{p in (x, 2x]: p = -p1 (mod r)} from Z/r, where Z is the exact
    number of primes in (x, 2x].  Bounded by x**2 / log(x).

    method: "exact" (rationals), "float" (compensated summation in a
    fixed order), or "auto" (exact up to x = 1000).
    """
    if x < 10:
        raise ValueError(f"x must be >= 10, got {x}")
    if method not in ("auto", "exact", "float"):
        raise ValueError(f"method must be auto, exact or float, got {method!r}")
    if table.limit < 2 * x:
        raise CoverageError(
            f"progression variance at x={x} needs table limit >= {2 * x}",
            required_limit=2 * x,
        )
    exact = method == "exact" or (method == "auto" and x <= EXACT_X_CUTOFF)
    r_lo, r_hi = window_bounds(x)
    rs = primes_in_range(table, r_lo, r_hi).tolist()
    ps = primes_in_range(table, x, 2 * x)
    lhs = _progression_deviation_sum(ps, rs, exact=exact)
    bound = x * x / log(x)
    return VarianceReport(
        scale=x,
        lhs=lhs,
        bound_form="x^2/log x",
        bound_value=bound,
        window=(r_lo, r_hi),
    )


def _progression_deviation_sum(ps: np.ndarray, rs: list[int], exact: bool) -> Fraction | float:
    """Sum over r in rs, p1 in ps of (count in class -p1 mod r - Z/r)**2.

    The p1-sum collapses to residue classes: the number of p1 hitting
    class b is the count of primes in class (-b) mod r.
    """
    z = int(ps.size)
    if exact:
        total = Fraction(0)
    else:
        contribs: list[float] = []
    for r in rs:
        counts = np.bincount(ps % r, minlength=r)
        weights = counts[(r - np.arange(r)) % r]  # weights[b] = count in class -b
        if exact:
            num = 0
            for w, c in zip(weights.tolist(), counts.tolist()):
                if w:
                    d = r * c - z
                    num += w * d * d
            total += Fraction(num, r * r)
        else:
            dev = counts.astype(np.float64) - z / r
            terms = weights.astype(np.float64) * dev * dev
            contribs.append(fsum(terms.tolist()))  # exactly rounded, order-free
    if exact:
        return total
    return fsum(contribs)
