"""Sieve-backed primality, enumeration, and factorization services.

Everything downstream (orbit iteration, parent searches, variance sums)
queries primes through a :class:`PrimeTable`: a smallest-prime-factor
sieve over ``[2, limit]`` plus the sorted prime list.  The table is
immutable after construction and safe to share across worker processes.

Supported universe: factorization queries work for ``n <= limit`` via
the spf chain, and :func:`largest_prime_factor` additionally handles
``limit < n <= limit**2`` by trial division over the table primes.
"""

from __future__ import annotations

import logging
import struct
from dataclasses import dataclass
from math import isqrt
from pathlib import Path

import numpy as np

from .errors import CacheError, CoverageError

logger = logging.getLogger(__name__)

CACHE_MAGIC = b"WDYNSIEV"
CACHE_VERSION = 1


@dataclass(frozen=True)
class PrimeTable:
    """Primality and smallest-prime-factor oracle for [2, limit].

    Attributes
    ----------
    limit : int
        Inclusive upper bound of sieve coverage.
    is_prime : np.ndarray
        Boolean array of length ``limit + 1``; ``is_prime[n]`` for n in
        [0, limit] (entries 0 and 1 are False).
    spf : np.ndarray
        uint32 array of length ``limit + 1``; ``spf[n]`` is the smallest
        prime factor of n for n in [2, limit], with ``spf[p] == p``
        exactly when p is prime.  Entries 0 and 1 are sentinels.
    primes : np.ndarray
        int64 array of all primes <= limit, strictly increasing.
    """

    limit: int
    is_prime: np.ndarray
    spf: np.ndarray
    primes: np.ndarray

    def __len__(self) -> int:
        return len(self.primes)


@dataclass(frozen=True)
class Factorization:
    """Prime factorization as ordered (prime, exponent) pairs."""

    factors: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        """Reconstructed integer: product of prime**exponent."""
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out

    @property
    def big_omega(self) -> int:
        """Number of prime factors counted with multiplicity."""
        return sum(e for _, e in self.factors)

    def primes_with_multiplicity(self) -> list[int]:
        return [p for p, e in self.factors for _ in range(e)]


def _spf_sieve(limit: int) -> tuple[np.ndarray, np.ndarray]:
    """Smallest-prime-factor array over [0, limit] plus the prime mask."""
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            block = spf[p * p :: p]
            block[block == 0] = p
    unassigned = spf == 0
    unassigned[:2] = False
    spf[unassigned] = np.nonzero(unassigned)[0].astype(np.uint32)
    spf[1] = 1
    return spf, unassigned


def build_prime_table(limit: int, cache_dir: str | Path | None = None) -> PrimeTable:
    """Build (or load from cache) a prime table covering [2, limit].

    Parameters
    ----------
    limit : int
        Inclusive sieve bound, 2 <= limit < 2**32.
    cache_dir : path-like, optional
        Directory for the binary sieve cache.  A valid cached table for
        this exact limit is loaded; otherwise the table is built and
        written back.  Corrupt or stale cache files are rebuilt with a
        warning.
    """
    if limit < 2:
        raise ValueError(f"table limit must be >= 2, got {limit}")
    if limit >= 2**32:
        raise ValueError(f"table limit must be < 2**32 (spf stored as u32), got {limit}")

    path = None
    if cache_dir is not None:
        path = Path(cache_dir) / f"sieve-{limit}.wdynsieve"
        if path.exists():
            try:
                return _load_table(path, limit)
            except CacheError as exc:
                logger.warning("sieve cache %s unusable (%s); rebuilding", path, exc)

    spf, prime_mask = _spf_sieve(limit)
    primes = np.nonzero(prime_mask)[0].astype(np.int64)
    table = PrimeTable(limit=limit, is_prime=prime_mask, spf=spf, primes=primes)

    if path is not None:
        try:
            _save_table(table, path)
        except OSError as exc:
            raise CacheError(f"cannot write sieve cache {path}: {exc}") from exc
    return table


def _save_table(table: PrimeTable, path: Path) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    header = struct.pack("<8sIQ", CACHE_MAGIC, CACHE_VERSION, table.limit)
    bits = np.packbits(table.is_prime.view(np.uint8), bitorder="little")
    tmp = path.with_suffix(path.suffix + ".tmp")
    with open(tmp, "wb") as fh:
        fh.write(header)
        fh.write(bits.tobytes())
        fh.write(table.spf.astype("<u4").tobytes())
    tmp.replace(path)


def _load_table(path: Path, limit: int) -> PrimeTable:
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise CacheError(str(exc)) from exc
    head = struct.calcsize("<8sIQ")
    if len(raw) < head:
        raise CacheError("truncated header")
    magic, version, stored_limit = struct.unpack_from("<8sIQ", raw)
    if magic != CACHE_MAGIC:
        raise CacheError("bad magic")
    if version != CACHE_VERSION:
        raise CacheError(f"format version {version} != {CACHE_VERSION}")
    if stored_limit != limit:
        raise CacheError(f"cached limit {stored_limit} != requested {limit}")
    nbits = (limit + 1 + 7) // 8
    expected = head + nbits + 4 * (limit + 1)
    if len(raw) != expected:
        raise CacheError(f"payload size {len(raw)} != expected {expected}")
    bits = np.frombuffer(raw, dtype=np.uint8, count=nbits, offset=head)
    is_prime = np.unpackbits(bits, count=limit + 1, bitorder="little").astype(bool)
    spf = np.frombuffer(raw, dtype="<u4", offset=head + nbits).astype(np.uint32)
    if is_prime[:2].any() or spf[2] != 2 or (limit >= 3 and spf[3] != 3):
        raise CacheError("payload fails sanity check")
    primes = np.nonzero(is_prime)[0].astype(np.int64)
    return PrimeTable(limit=limit, is_prime=is_prime, spf=spf, primes=primes)


def primes_in_range(table: PrimeTable, lo: int, hi: int) -> np.ndarray:
    """All primes p with lo < p <= hi, ascending.

    The half-open convention (lo, hi] is used everywhere in this
    package (prime boxes (x, 2x], middle-prime windows, ...).
    """
    if hi > table.limit:
        raise CoverageError(
            f"range ({lo}, {hi}] exceeds table limit {table.limit}; "
            f"rebuild with limit >= {hi}",
            required_limit=hi,
        )
    left, right = np.searchsorted(table.primes, [lo, hi], side="right")
    return table.primes[left:right]


def _lpf_in_table(table: PrimeTable, n: int) -> int:
    """Largest prime factor via the spf chain; requires 2 <= n <= limit."""
    spf = table.spf
    p = 0
    while n > 1:
        p = int(spf[n])
        n //= p
    return p


def _trial_primes(table: PrimeTable, n: int) -> tuple[list[int], bool]:
    """Table primes up to sqrt(n), plus whether that range is fully
    covered (when it is, trial division certifies the leftover cofactor
    prime)."""
    root = isqrt(n)
    hi = int(np.searchsorted(table.primes, root, side="right"))
    return table.primes[:hi].tolist(), table.limit >= root


def largest_prime_factor(table: PrimeTable, n: int) -> int:
    """Largest prime factor P(n) of an integer n > 1.

    For ``n <= table.limit`` this walks the spf chain; for larger n it
    trial-divides by the table primes up to sqrt(n), so n up to
    ``table.limit**2`` is supported.
    """
    if n < 2:
        raise ValueError(f"P(n) requires n > 1, got {n}")
    if n <= table.limit:
        return _lpf_in_table(table, n)
    trial, certified = _trial_primes(table, n)
    best = 1
    m = n
    for p in trial:
        if p * p > m:
            certified = True
            break
        if m % p == 0:
            best = p
            while m % p == 0:
                m //= p
            if m <= table.limit:
                return max(best, _lpf_in_table(table, m)) if m > 1 else best
    if m == 1:
        return best
    if certified:
        return m  # remaining cofactor is prime
    raise CoverageError(
        f"P({n}) needs table primes up to sqrt(n); rebuild with limit >= {isqrt(n) + 1}",
        required_limit=isqrt(n) + 1,
    )


def factorize(table: PrimeTable, n: int) -> Factorization:
    """Complete factorization of n via the spf chain; requires n <= limit."""
    if n < 2:
        raise ValueError(f"factorize requires n >= 2, got {n}")
    if n > table.limit:
        raise CoverageError(
            f"factorize({n}) exceeds table limit {table.limit}",
            required_limit=n,
        )
    spf = table.spf
    pairs: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        pairs.append((p, e))
    return Factorization(factors=tuple(pairs))


def factor_list(table: PrimeTable, n: int) -> list[int]:
    """Prime factors of n with multiplicity, ascending.

    Unlike :func:`factorize` this also accepts limit < n <= limit**2
    (trial division by table primes), the same reach as
    :func:`largest_prime_factor`.
    """
    if n < 2:
        raise ValueError(f"factorization requires n >= 2, got {n}")
    if n <= table.limit:
        return factorize(table, n).primes_with_multiplicity()
    trial, certified = _trial_primes(table, n)
    out: list[int] = []
    m = n
    for p in trial:
        if p * p > m:
            certified = True
            break
        while m % p == 0:
            out.append(p)
            m //= p
        if 1 < m <= table.limit:
            out.extend(factorize(table, m).primes_with_multiplicity())
            return out
    if m > 1:
        if not certified:
            raise CoverageError(
                f"factoring {n} needs table primes up to sqrt(n); "
                f"rebuild with limit >= {isqrt(n) + 1}",
                required_limit=isqrt(n) + 1,
            )
        out.append(m)
    return out
