"""Inverse search: enumerate parents (preimages under w) and run
parent censuses over prime boxes.

A parent of a target n is any m in A3 with w(m) = n.  Searches draw
the parent primes from a box (x, 2x] and use the congruence
acceleration: P(s) = r implies r | s, so candidates with P(p + p1) = r
lie on the progression p = -p1 (mod r) and only those few residues are
visited.  When r*r > s the converse also holds (every divisor pattern
r*m with m < r keeps r maximal), which is exactly the regime of the
middle-prime window (sqrt(x)*log(x), 2*sqrt(x)*log(x)]; membership is
nevertheless re-verified by full factorization whenever r*r <= s, so
results are exact at any scale.

Census counting conventions: parents are unordered triples of primes,
each counted once; census keys are the canonical sorted-prime form of
the image; argmax ties break toward the smallest image.  Enumeration
is data-parallel over the first prime with a commutative tally merge,
so reports are identical for any worker count.
"""

from __future__ import annotations

import json
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import log, sqrt

from .dynamics import Triple, TripleClass
from .errors import CoverageError
from .primes import PrimeTable, largest_prime_factor, primes_in_range


def window_bounds(x: int) -> tuple[int, int]:
    """Integer bounds (r_lo, r_hi] of the middle-prime window
    (sqrt(x)*log(x), 2*sqrt(x)*log(x)], natural log.

    For integer r, membership in the real interval is equivalent to
    r_lo < r <= r_hi (the real endpoints are never integers).
    """
    edge = sqrt(x) * log(x)
    return int(edge), int(2 * edge)


def window_primes(table: PrimeTable, x: int) -> list[int]:
    """Primes inside the middle-prime window for this x."""
    r_lo, r_hi = window_bounds(x)
    return primes_in_range(table, r_lo, r_hi).tolist()


def lpf_equals(table: PrimeTable, s: int, r: int) -> bool:
    """True iff P(s) = r, for prime r.

    Fast path: when r*r > s, P(s) = r is equivalent to r | s.  Below
    that threshold the full factorization decides, so the answer is
    exact in both regimes.
    """
    if s < 2:
        raise ValueError(f"P is defined for integers > 1, got {s}")
    if r * r > s:
        return s % r == 0
    return largest_prime_factor(table, s) == r


def _progression(first_after: int, hi: int, residue: int, modulus: int) -> range:
    """Integers v with first_after < v <= hi and v = residue (mod modulus)."""
    start = first_after + 1 + ((residue - (first_after + 1)) % modulus)
    return range(start, hi + 1, modulus)


def _require_coverage(table: PrimeTable, needed: int, what: str) -> None:
    if table.limit < needed:
        raise CoverageError(
            f"{what} needs table limit >= {needed}, have {table.limit}",
            required_limit=needed,
        )


def find_b3_parents(table: PrimeTable, q: int, r: int, x: int) -> list[int]:
    """All primes p in (x, 2x] with p != q and P(p + q) = r.

    Each such p gives the B3 parent p*q**2 of the target q*r**2.
    Walks the progression p = -q (mod r) and filters by primality,
    then verifies P(p + q) = r exactly.
    """
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    _require_coverage(table, 2 * x + q, f"find_b3_parents(q={q}, r={r}, x={x})")
    if r > 2 * x + q:
        return []  # P(p + q) = r needs r <= p + q <= 2x + q
    if not table.is_prime[q] or not table.is_prime[r]:
        raise ValueError(f"q and r must be prime, got q={q}, r={r}")
    isp = table.is_prime.tobytes()
    out = [
        p
        for p in _progression(x, 2 * x, -q % r, r)
        if p != q and isp[p] and lpf_equals(table, p + q, r)
    ]
    return out


def find_c3_parents(table: PrimeTable, target: Triple, x: int) -> list[Triple]:
    """All unordered triples of distinct primes in (x, 2x] whose three
    pairwise P-sums match the target's prime multiset.

    Pair-indexing: for each distinct target prime r, progressions
    produce the pair list {(a, b): P(a + b) = r}; pairs sharing an
    endpoint are then joined into triples.  Output is sorted and
    duplicate-free.
    """
    if target.cls not in (TripleClass.C3, TripleClass.B3):
        raise ValueError(f"target must be in A3, got {target!r}")
    if x < 2:
        raise ValueError(f"x must be >= 2, got {x}")
    if max(target.primes) > 4 * x:
        return []  # pair sums lie in (2x, 4x]; such an image prime is unreachable
    _require_coverage(table, 4 * x, f"find_c3_parents(x={x})")

    ps = primes_in_range(table, x, 2 * x).tolist()
    isp = table.is_prime.tobytes()
    distinct = sorted(set(target.primes))
    edges: dict[int, list[tuple[int, int]]] = {r: [] for r in distinct}
    nbr: dict[int, dict[int, set[int]]] = {r: defaultdict(set) for r in distinct}
    for r in distinct:
        for a in ps:
            for b in _progression(a, 2 * x, -a % r, r):
                if isp[b] and lpf_equals(table, a + b, r):
                    edges[r].append((a, b))
                    nbr[r][a].add(b)
                    nbr[r][b].add(a)

    base = min(distinct, key=lambda r: len(edges[r]))
    rest = sorted(target.primes)
    rest.remove(base)
    m2, m3 = rest
    found: set[tuple[int, int, int]] = set()
    for a, b in edges[base]:
        if m2 == m3:
            cands = nbr[m2][a] & nbr[m2][b]
        else:
            cands = (nbr[m2][a] & nbr[m3][b]) | (nbr[m3][a] & nbr[m2][b])
        for c in cands:
            if c != a and c != b:
                found.add(tuple(sorted((a, b, c))))
    return [Triple(*t) for t in sorted(found)]


@dataclass(frozen=True)
class EmpiricalConstant:
    """Observed census count against the predicted growth shape.

    The implicit constants of the counting bounds are never specified;
    what the experiments expose is the ratio observed/bound, which
    should stay in a fixed band as x grows.
    """

    x: int
    observed: int
    bound_form: str
    bound_value: float

    @property
    def ratio(self) -> float:
        return self.observed / self.bound_value if self.bound_value else 0.0


@dataclass
class ParentCensus:
    """Tally of w-images over parents drawn from the box (x, 2x].

    ``tallies`` maps each image n to the number of unordered parent
    triples found for it; ``target_factors`` holds the canonical prime
    triple of each image.  ``parents`` is populated only when the
    census was run with ``collect_parents=True``.
    """

    x: int
    mode: str  # thm1 | thm2 | thm3
    r_lo: int
    r_hi: int
    parent_class: str  # c3 | b3
    tallies: dict[int, int]
    target_factors: dict[int, tuple[int, int, int]]
    parents: dict[int, list[tuple[int, int, int]]] | None = None

    @property
    def argmax(self) -> tuple[int, int]:
        """(image n, parent count) with the most parents; ties break
        toward the smallest image.  (0, 0) when the census is empty."""
        if not self.tallies:
            return (0, 0)
        n, c = min(self.tallies.items(), key=lambda kv: (-kv[1], kv[0]))
        return (n, c)

    @property
    def total_parents(self) -> int:
        return sum(self.tallies.values())

    def constant(self) -> EmpiricalConstant:
        if self.mode in ("thm1", "thm2"):
            form, value = "x/log^4 x", self.x / log(self.x) ** 4
        else:
            form, value = "sqrt(x)/log^2 x", sqrt(self.x) / log(self.x) ** 2
        return EmpiricalConstant(
            x=self.x, observed=self.argmax[1], bound_form=form, bound_value=value
        )

    def to_json_dict(self) -> dict:
        target, count = self.argmax
        const = self.constant()
        return {
            "x": self.x,
            "mode": self.mode,
            "window": [self.r_lo, self.r_hi],
            "argmax": {
                "target": target,
                "count": count,
                "target_factors": list(self.target_factors.get(target, ())),
            },
            "ratio": {"bound_form": const.bound_form, "value": const.ratio},
            "total_parents": self.total_parents,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True, indent=2) + "\n"

    def to_csv_rows(self) -> list[tuple[int, int]]:
        """(target, count) rows sorted by target, for plotting."""
        return sorted(self.tallies.items())


def _split(items: list, pieces: int) -> list[list]:
    pieces = max(1, min(pieces, len(items)))
    size, extra = divmod(len(items), pieces)
    chunks, pos = [], 0
    for i in range(pieces):
        end = pos + size + (1 if i < extra else 0)
        chunks.append(items[pos:end])
        pos = end
    return chunks


def _map_chunks(fn, args_list: list, workers: int) -> list:
    if workers <= 1 or len(args_list) <= 1:
        return [fn(a) for a in args_list]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, args_list))


def _census_c3_chunk(args) -> tuple[dict, dict, dict | None]:
    table, x, mode, pivots, collect = args
    r_lo, r_hi = window_bounds(x)
    wlist = primes_in_range(table, r_lo, r_hi).tolist()
    wset = set(wlist)
    isp = table.is_prime.tobytes()
    two_x = 2 * x
    tally: dict[int, int] = {}
    factors: dict[int, tuple[int, int, int]] = {}
    parents: dict[int, list] | None = defaultdict(list) if collect else None

    def record(n: int, trip: tuple[int, int, int], facs: tuple[int, int, int]) -> None:
        tally[n] = tally.get(n, 0) + 1
        if n not in factors:
            factors[n] = facs
        if parents is not None:
            parents[n].append(trip)

    for p1 in pivots:
        by_r: dict[int, list[int]] = {}
        for r in wlist:
            lst = [
                p
                for p in _progression(x, two_x, -p1 % r, r)
                if p != p1 and isp[p] and lpf_equals(table, p + p1, r)
            ]
            if lst:
                by_r[r] = lst
        if mode == "thm1":
            rs = list(by_r)
            for i in range(len(rs)):
                r1 = rs[i]
                for j in range(i + 1, len(rs)):
                    r2 = rs[j]
                    for p2 in by_r[r1]:
                        for p3 in by_r[r2]:
                            q = largest_prime_factor(table, p2 + p3)
                            if q == r1 or q == r2:
                                continue  # image leaves C3
                            if q in wset and p1 > min(p2, p3):
                                continue  # all three pivots qualify; count at the smallest
                            record(
                                r1 * r2 * q,
                                tuple(sorted((p1, p2, p3))),
                                tuple(sorted((r1, r2, q))),
                            )
        else:  # thm2: both designated sums share one window prime r
            for r, lst in by_r.items():
                for i in range(len(lst)):
                    for j in range(i + 1, len(lst)):
                        p2, p3 = lst[i], lst[j]
                        q = largest_prime_factor(table, p2 + p3)
                        if q == r:
                            continue  # image would be a prime cube; unreachable from A3
                        # p1 is the only qualifying designated prime (q != r),
                        # so no cross-pivot dedup is needed.
                        record(
                            q * r * r,
                            tuple(sorted((p1, p2, p3))),
                            tuple(sorted((q, r, r))),
                        )
    return tally, factors, parents


def _census_b3_chunk(args) -> tuple[dict, dict | None]:
    table, x, qs, collect = args
    r_lo, r_hi = window_bounds(x)
    wlist = primes_in_range(table, r_lo, r_hi).tolist()
    isp = table.is_prime.tobytes()
    two_x = 2 * x
    tally: dict[tuple[int, int], int] = {}
    parents: dict[tuple[int, int], list] | None = defaultdict(list) if collect else None
    for q in qs:
        for r in wlist:
            found = [
                p
                for p in _progression(x, two_x, -q % r, r)
                if p != q and isp[p] and lpf_equals(table, p + q, r)
            ]
            if found:
                tally[(q, r)] = len(found)
                if parents is not None:
                    parents[(q, r)].extend(found)
    return tally, parents


def census_c3(
    table: PrimeTable,
    x: int,
    mode: str = "thm1",
    workers: int = 1,
    collect_parents: bool = False,
) -> ParentCensus:
    """Census of C3 parents over the box (x, 2x].

    Enumerates unordered triples of distinct primes in (x, 2x] that
    have some designated prime v whose two sums satisfy the window
    condition, then tallies their w-images:

    - mode "thm1": both P(v + other) values lie in the window and the
      image has three distinct primes;
    - mode "thm2": the two P(v + other) values are equal (one window
      prime r), giving images of the form q*r**2.

    Each qualifying triple is counted exactly once regardless of how
    many designated primes qualify and of the worker count.
    """
    if mode not in ("thm1", "thm2"):
        raise ValueError(f"census_c3 mode must be thm1 or thm2, got {mode!r}")
    if x < 10:
        raise ValueError(f"censuses require x >= 10, got {x}")
    _require_coverage(table, 4 * x, f"census_c3(x={x})")
    pivots = primes_in_range(table, x, 2 * x).tolist()
    chunk_args = [(table, x, mode, chunk, collect_parents) for chunk in _split(pivots, workers)]
    results = _map_chunks(_census_c3_chunk, chunk_args, workers)

    tallies: dict[int, int] = {}
    factors: dict[int, tuple[int, int, int]] = {}
    parents: dict[int, list] | None = {} if collect_parents else None
    for tally, facs, pars in results:
        for n, c in tally.items():
            tallies[n] = tallies.get(n, 0) + c
        factors.update(facs)
        if parents is not None and pars:
            for n, trips in pars.items():
                parents.setdefault(n, []).extend(trips)
    if parents is not None:
        parents = {n: sorted(trips) for n, trips in parents.items()}

    r_lo, r_hi = window_bounds(x)
    return ParentCensus(
        x=x,
        mode=mode,
        r_lo=r_lo,
        r_hi=r_hi,
        parent_class="c3",
        tallies=tallies,
        target_factors=factors,
        parents=parents,
    )


def census_b3(
    table: PrimeTable,
    x: int,
    workers: int = 1,
    collect_parents: bool = False,
) -> ParentCensus:
    """Census of B3 parents p*q**2 over the box (x, 2x] (mode "thm3").

    For every pair of primes q, p in (x, 2x] with p != q and
    P(p + q) = r in the window, the parent p*q**2 of the image q*r**2
    is tallied under that image.
    """
    if x < 10:
        raise ValueError(f"censuses require x >= 10, got {x}")
    _require_coverage(table, 4 * x, f"census_b3(x={x})")
    qs = primes_in_range(table, x, 2 * x).tolist()
    chunk_args = [(table, x, chunk, collect_parents) for chunk in _split(qs, workers)]
    results = _map_chunks(_census_b3_chunk, chunk_args, workers)

    tallies: dict[int, int] = {}
    factors: dict[int, tuple[int, int, int]] = {}
    parents: dict[int, list] | None = {} if collect_parents else None
    for tally, pars in results:
        for (q, r), c in tally.items():
            n = q * r * r
            tallies[n] = tallies.get(n, 0) + c
            factors[n] = tuple(sorted((q, r, r)))
            if parents is not None:
                plist = parents.setdefault(n, [])
                plist.extend(tuple(sorted((p, q, q))) for p in pars[(q, r)])
    if parents is not None:
        parents = {n: sorted(trips) for n, trips in parents.items()}

    r_lo, r_hi = window_bounds(x)
    return ParentCensus(
        x=x,
        mode="thm3",
        r_lo=r_lo,
        r_hi=r_hi,
        parent_class="b3",
        tallies=tallies,
        target_factors=factors,
        parents=parents,
    )


@dataclass(frozen=True)
class ParentQuery:
    """A parent-search request: whose parents, from which box, of
    which class."""

    target: Triple
    x: int
    parent_class: str = "any"  # c3 | b3 | any

    def __post_init__(self):
        if self.x < 2:
            raise ValueError(f"x must be >= 2, got {self.x}")
        if self.target.cls not in (TripleClass.C3, TripleClass.B3):
            raise ValueError(f"target must be in A3, got {self.target!r}")
        if self.parent_class not in ("c3", "b3", "any"):
            raise ValueError(f"parent_class must be c3, b3 or any, got {self.parent_class!r}")


def find_parents(table: PrimeTable, query: ParentQuery, use_oracle: bool = False) -> list[Triple]:
    """All parents of the query target with primes drawn from (x, 2x],
    restricted to the requested parent class.

    B3 parents exist only for B3 targets (the image of p*q**2 always
    repeats a prime), so C3 targets yield none.  ``use_oracle`` routes
    through the brute-force reference implementations.
    """
    from . import oracle

    out: list[Triple] = []
    if query.parent_class in ("c3", "any"):
        fn = oracle.find_c3_parents if use_oracle else find_c3_parents
        out.extend(fn(table, query.target, query.x))
    if query.parent_class in ("b3", "any") and query.target.cls == TripleClass.B3:
        a, b, c = query.target.primes
        q, r = (c, a) if a == b else (a, b)  # q appears once, r twice
        fn = oracle.find_b3_parents if use_oracle else find_b3_parents
        out.extend(Triple.from_primes(p, q, q) for p in fn(table, q, r, query.x))
    return sorted(out)
