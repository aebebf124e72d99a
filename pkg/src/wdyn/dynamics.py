"""The w function on products of three primes.

For n = p1*p2*p3 with the p_i prime, define

    w(n) = P(p1 + p2) * P(p1 + p3) * P(p2 + p3),

where P is the largest prime factor.  Products of three primes split
into C3 (all distinct), B3 (exactly two equal), and D3 (a prime cube);
w is defined on A3 = C3 | B3 and maps A3 into A3, so it can be
iterated.  Every orbit eventually hits 20 = 2*2*5, which sits on the
4-cycle 20 -> 98 -> 63 -> 75 -> 20; ind(n) is the number of steps to
first reach 20.

w is symmetric in the three primes, so triples are kept in canonical
sorted order and all counting is over unordered triples.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import CapExceededError, CoverageError
from .primes import PrimeTable, build_prime_table, factor_list, largest_prime_factor

DEFAULT_CAP = 10_000


class TripleClass(enum.Enum):
    C3 = "c3"  # three distinct primes
    B3 = "b3"  # exactly two equal
    D3 = "d3"  # prime cube
    NOT_TRIPLE = "not_triple"  # fewer or more than 3 prime factors


@dataclass(frozen=True, order=True)
class Triple:
    """Canonical (sorted) product of three primes."""

    p1: int
    p2: int
    p3: int

    @staticmethod
    def from_primes(a: int, b: int, c: int) -> "Triple":
        p1, p2, p3 = sorted((a, b, c))
        return Triple(p1, p2, p3)

    @property
    def primes(self) -> tuple[int, int, int]:
        return (self.p1, self.p2, self.p3)

    @property
    def n(self) -> int:
        return self.p1 * self.p2 * self.p3

    @property
    def cls(self) -> TripleClass:
        if self.p1 == self.p3:
            return TripleClass.D3
        if self.p1 == self.p2 or self.p2 == self.p3:
            return TripleClass.B3
        return TripleClass.C3

    @property
    def in_a3(self) -> bool:
        return self.cls in (TripleClass.C3, TripleClass.B3)

    def __str__(self) -> str:
        return f"{self.p1}*{self.p2}*{self.p3}={self.n}"


@dataclass(frozen=True)
class ReachedTwenty:
    """Orbit hit 20 at step ``index`` (w^index(n) = 20)."""

    index: int


@dataclass(frozen=True)
class CapExceeded:
    """Orbit did not reach 20 within ``cap`` applications of w."""

    cap: int


@dataclass(frozen=True)
class Trajectory:
    """Orbit n, w(n), w^2(n), ... with terminal status."""

    start: Triple
    steps: tuple[Triple, ...]
    terminal: ReachedTwenty | CapExceeded

    @property
    def reached(self) -> bool:
        return isinstance(self.terminal, ReachedTwenty)

    def to_json_dict(self) -> dict:
        if isinstance(self.terminal, ReachedTwenty):
            terminal = {"reached_twenty": self.terminal.index}
        else:
            terminal = {"cap_exceeded": self.terminal.cap}
        return {
            "start": self.start.n,
            "steps": [t.n for t in self.steps],
            "terminal": terminal,
        }


def classify(table: PrimeTable, n: int) -> Triple | None:
    """Canonical Triple of n when n has exactly three prime factors
    (with multiplicity), else None.

    Accepts any n <= table.limit**2 (trial-division reach).
    """
    if n < 2:
        raise ValueError(f"classification requires n >= 2, got {n}")
    factors = factor_list(table, n)
    if len(factors) != 3:
        return None
    return Triple(factors[0], factors[1], factors[2])


def triple_class(table: PrimeTable, n: int) -> TripleClass:
    """Class tag of n: C3, B3, D3, or NOT_TRIPLE."""
    t = classify(table, n)
    return TripleClass.NOT_TRIPLE if t is None else t.cls


def apply_w(table: PrimeTable, t: Triple) -> Triple:
    """One application of w.  Defined only on A3; D3 input is rejected
    (extending w to prime cubes would silently corrupt census counts).
    """
    if not isinstance(t, Triple) or not t.in_a3:
        raise ValueError(f"w is defined on A3 (C3 or B3) only, got {t!r}")
    q1 = largest_prime_factor(table, t.p1 + t.p2)
    q2 = largest_prime_factor(table, t.p1 + t.p3)
    q3 = largest_prime_factor(table, t.p2 + t.p3)
    return Triple.from_primes(q1, q2, q3)


def trajectory(
    table: PrimeTable,
    n: int,
    cap: int = DEFAULT_CAP,
    auto_extend: bool = True,
) -> Trajectory:
    """Iterate w from n until 20 is reached or ``cap`` steps are taken.

    ``steps[0]`` is n itself (the zeroth iterate).  If a sum along the
    orbit outgrows the table's factorization reach, the working table
    is transparently rebuilt at double the limit (``auto_extend``);
    pass ``auto_extend=False`` to get a CoverageError instead.
    """
    if cap < 1:
        raise ValueError(f"cap must be >= 1, got {cap}")
    work = table

    def grow(required: int) -> None:
        nonlocal work
        work = build_prime_table(max(2 * work.limit, required))

    while True:
        try:
            t = classify(work, n)
            break
        except CoverageError as exc:
            if not auto_extend:
                raise
            grow(exc.required_limit)
    if t is None or not t.in_a3:
        raise ValueError(f"{n} is not in A3 (needs exactly 3 prime factors, not a cube)")

    steps = [t]
    if t.n == 20:
        return Trajectory(start=t, steps=tuple(steps), terminal=ReachedTwenty(0))
    for i in range(1, cap + 1):
        while True:
            try:
                t = apply_w(work, t)
                break
            except CoverageError as exc:
                if not auto_extend:
                    raise
                grow(exc.required_limit)
        steps.append(t)
        if t.n == 20:
            return Trajectory(start=steps[0], steps=tuple(steps), terminal=ReachedTwenty(i))
    return Trajectory(start=steps[0], steps=tuple(steps), terminal=CapExceeded(cap))


def ind(table: PrimeTable, n: int, cap: int = DEFAULT_CAP) -> int:
    """Least i with w^i(n) = 20.  Raises CapExceededError if the orbit
    does not get there within ``cap`` steps (orbits of A3 members always
    terminate, so cap exhaustion signals a bug or a too-small cap).
    """
    traj = trajectory(table, n, cap=cap)
    if isinstance(traj.terminal, CapExceeded):
        raise CapExceededError(f"orbit of {n} did not reach 20 within cap {cap}", cap=cap)
    return traj.terminal.index
