"""Smallest-prime-factor sieve and the omega(n) tables derived from it.

The table covers ``[1, limit]``.  ``spf[n]`` holds the smallest prime factor
of ``n`` for ``n >= 2``; entries 0 and 1 are zero.  One pass over the spf
array in doubling blocks yields omega(n), the squarefree flag and the two
histograms

    omega_hist[k]        = #{2 <= n <= limit : omega(n) = k}
    omega_sqfree_hist[k] = #{2 <= n <= limit : omega(n) = k, n squarefree}

n = 1 is kept out of the histograms (so ``omega_hist.sum() == limit - 1``);
:func:`pi_xk` and :func:`pi_prime_xk` add it back at k = 0.
"""
from __future__ import annotations

import csv
import hashlib
import io
import os
import struct
from dataclasses import dataclass, field
from math import isqrt, prod
from typing import Iterator

import numpy as np

from .errors import InvalidArgument, ResourceError

MAX_LIMIT = 2**32 - 1
DEFAULT_MEMORY_BUDGET = 4 * 2**30
CHUNK = 1 << 22

MAGIC = b"FLSV1"
_HEADER = struct.Struct("<5sQ")

# bytes per n: spf (4) + omega (1) + squarefree flag (1)
_BYTES_PER_N = 6
# per-chunk temporaries (arange, quotient, gathers, masks)
_CHUNK_OVERHEAD = 48 * CHUNK


def _blocks(start: int, stop: int, chunk: int = CHUNK) -> Iterator[tuple[int, int]]:
    """Yield ``[a, b)`` blocks with ``b <= 2a``, so ``n // spf[n]`` is already done."""
    a = start
    while a < stop:
        b = min(stop, 2 * a, a + chunk)
        yield a, b
        a = b


@dataclass(eq=False)
class SieveTable:
    limit: int
    spf: np.ndarray
    omega_hist: np.ndarray
    omega_sqfree_hist: np.ndarray
    omega_values: np.ndarray = field(repr=False)
    squarefree: np.ndarray = field(repr=False)
    _signatures: tuple | None = field(default=None, repr=False)

    @property
    def max_omega(self) -> int:
        return len(self.omega_hist) - 1

    def omega_counts(self, upto: int | None = None, squarefree: bool = False) -> np.ndarray:
        """pi(y, k) for all k at ``y = upto``, with n = 1 counted at k = 0."""
        y = self.limit if upto is None else upto
        _check_range(self, y, low=1)
        if y == self.limit:
            hist = (self.omega_sqfree_hist if squarefree else self.omega_hist).copy()
        else:
            vals = self.omega_values[2 : y + 1]
            if squarefree:
                vals = vals[self.squarefree[2 : y + 1]]
            hist = np.bincount(vals, minlength=1).astype(np.int64)
        hist[0] += 1
        return hist


def _check_range(table: SieveTable, n: int, low: int = 2) -> None:
    if not low <= n <= table.limit:
        raise InvalidArgument(f"n={n} outside [{low}, {table.limit}]")


def estimate_bytes(limit: int) -> int:
    return _BYTES_PER_N * (limit + 1) + _CHUNK_OVERHEAD


def _spf_array(limit: int) -> np.ndarray:
    spf = np.zeros(limit + 1, dtype=np.uint32)
    for p in range(2, isqrt(limit) + 1):
        if spf[p] == 0:
            multiples = spf[p * p :: p]
            multiples[multiples == 0] = p
    primes = np.flatnonzero(spf[2:] == 0) + 2
    spf[primes] = primes
    return spf


def _derive(spf: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    limit = len(spf) - 1
    omega = np.zeros(limit + 1, dtype=np.uint8)
    sqfree = np.zeros(limit + 1, dtype=bool)
    sqfree[1] = True
    for a, b in _blocks(2, limit + 1):
        n = np.arange(a, b, dtype=np.int64)
        p = spf[a:b]
        m = n // p
        repeated = spf[m] == p
        omega[a:b] = omega[m] + ~repeated
        sqfree[a:b] = sqfree[m] & ~repeated
    return omega, sqfree


def _from_spf(limit: int, spf: np.ndarray) -> SieveTable:
    omega, sqfree = _derive(spf)
    hist = np.bincount(omega[2:], minlength=1).astype(np.int64)
    sq_hist = np.bincount(omega[2:][sqfree[2:]], minlength=len(hist)).astype(np.int64)
    return SieveTable(limit, spf, hist, sq_hist, omega, sqfree)


def build_sieve(limit: int, memory_budget: int = DEFAULT_MEMORY_BUDGET) -> SieveTable:
    """Build the full table for ``[1, limit]``.

    ``limit`` may go up to ``2**32 - 1`` (spf entries are 32-bit); in practice
    the memory budget binds first, at roughly 6 bytes per integer.
    """
    limit = int(limit)
    if limit < 2 or limit > MAX_LIMIT:
        raise InvalidArgument(f"limit must lie in [2, {MAX_LIMIT}], got {limit}")
    need = estimate_bytes(limit)
    if need > memory_budget:
        raise ResourceError(
            f"sieve to {limit} needs about {need} bytes; memory budget is {memory_budget} bytes"
        )
    return _from_spf(limit, _spf_array(limit))


def factorize(table: SieveTable, n: int) -> list[tuple[int, int]]:
    """Prime factorization of ``n`` as ``[(p, e), ...]`` with increasing primes."""
    _check_range(table, n)
    spf = table.spf
    out: list[tuple[int, int]] = []
    while n > 1:
        p = int(spf[n])
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        out.append((p, e))
    return out


def omega(table: SieveTable, n: int) -> int:
    _check_range(table, n, low=1)
    return int(table.omega_values[n])


def is_squarefree(table: SieveTable, n: int) -> bool:
    _check_range(table, n, low=1)
    return bool(table.squarefree[n])


def pi_xk(table: SieveTable, k: int) -> int:
    """Number of n <= limit with omega(n) = k; n = 1 counts at k = 0."""
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    if k == 0:
        return 1
    return int(table.omega_hist[k]) if k < len(table.omega_hist) else 0


def pi_prime_xk(table: SieveTable, k: int) -> int:
    """As :func:`pi_xk`, restricted to squarefree n."""
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    if k == 0:
        return 1
    return int(table.omega_sqfree_hist[k]) if k < len(table.omega_sqfree_hist) else 0


def signature(table: SieveTable, n: int) -> tuple[int, ...]:
    """Exponents of ``n`` sorted in descending order; ``()`` for n = 1."""
    _check_range(table, n, low=1)
    if n == 1:
        return ()
    return tuple(sorted((e for _, e in factorize(table, n)), reverse=True))


def signature_representative(sig: tuple[int, ...]) -> int:
    """Smallest integer with the given signature: 2**e1 * 3**e2 * ..."""
    primes: list[int] = []
    c = 2
    while len(primes) < len(sig):
        if all(c % q for q in primes if q * q <= c):
            primes.append(c)
        c += 1
    return prod(p**e for p, e in zip(primes, sig))


def signature_index(table: SieveTable) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """Per-n signature ids over ``[0, limit]`` and the list of signatures.

    ``sigs[ids[n]] == signature(table, n)``; id 0 is the empty signature
    (n = 0 and n = 1).  Built once on demand and cached on the table.
    Ids are assigned in order of first appearance, so the result is
    deterministic.
    """
    if table._signatures is not None:
        return table._signatures
    limit = table.limit
    spf = table.spf
    exp_lead = np.zeros(limit + 1, dtype=np.uint8)
    cofactor = np.ones(limit + 1, dtype=np.uint32)
    ids = np.zeros(limit + 1, dtype=np.int32)
    sigs: list[tuple[int, ...]] = [()]
    interned: dict[tuple[int, ...], int] = {(): 0}
    step: dict[int, int] = {}

    def lookup(key: int) -> int:
        if key not in step:
            rest, e = divmod(key, 64)
            sig = tuple(sorted(sigs[rest] + (e,), reverse=True))
            if sig not in interned:
                interned[sig] = len(sigs)
                sigs.append(sig)
            step[key] = interned[sig]
        return step[key]

    for a, b in _blocks(2, limit + 1):
        n = np.arange(a, b, dtype=np.int64)
        p = spf[a:b]
        m = n // p
        repeated = spf[m] == p
        e = np.where(repeated, exp_lead[m] + 1, 1).astype(np.uint8)
        cof = np.where(repeated, cofactor[m], m).astype(np.uint32)
        exp_lead[a:b] = e
        cofactor[a:b] = cof
        keys = ids[cof].astype(np.int64) * 64 + e
        uniq, inverse = np.unique(keys, return_inverse=True)
        mapped = np.fromiter((lookup(int(k)) for k in uniq), dtype=np.int32, count=len(uniq))
        ids[a:b] = mapped[inverse]
    table._signatures = (ids, sigs)
    return table._signatures


# -- persistence -----------------------------------------------------------

def dump_sieve(table: SieveTable, path: str | os.PathLike) -> None:
    """Write ``FLSV1`` header, limit (u64 LE), spf[2..limit] as u32 LE, sha256 trailer."""
    header = _HEADER.pack(MAGIC, table.limit)
    body = table.spf[2:].astype("<u4", copy=False)
    digest = hashlib.sha256(header)
    digest.update(memoryview(body).cast("B"))
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "wb") as fh:
        fh.write(header)
        body.tofile(fh)
        fh.write(digest.digest())
    os.replace(tmp, path)


def load_sieve(path: str | os.PathLike) -> SieveTable:
    with open(path, "rb") as fh:
        header = fh.read(_HEADER.size)
        if len(header) != _HEADER.size:
            raise InvalidArgument(f"{path}: truncated header")
        magic, limit = _HEADER.unpack(header)
        if magic != MAGIC:
            raise InvalidArgument(f"{path}: bad magic {magic!r}")
        body = np.fromfile(fh, dtype="<u4", count=limit - 1)
        trailer = fh.read()
    if len(body) != limit - 1 or len(trailer) != 32:
        raise InvalidArgument(f"{path}: truncated body")
    digest = hashlib.sha256(header)
    digest.update(memoryview(body).cast("B"))
    if digest.digest() != trailer:
        raise InvalidArgument(f"{path}: checksum mismatch")
    spf = np.zeros(limit + 1, dtype=np.uint32)
    spf[2:] = body
    return _from_spf(limit, spf)


def cached_sieve(limit: int, cache_dir: str | os.PathLike | None = None) -> SieveTable:
    """Load ``sieve-<limit>.flsv`` from ``cache_dir`` if valid, else build and store it."""
    if cache_dir is None:
        return build_sieve(limit)
    path = os.path.join(os.fspath(cache_dir), f"sieve-{limit}.flsv")
    if os.path.exists(path):
        try:
            return load_sieve(path)
        except InvalidArgument:
            pass
    table = build_sieve(limit)
    os.makedirs(os.fspath(cache_dir), exist_ok=True)
    dump_sieve(table, path)
    return table


def pi_table_csv(table: SieveTable) -> str:
    """CSV rows ``k,pi,pi_prime`` for k = 0..max omega (n = 1 counted at k = 0)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["k", "pi", "pi_prime"])
    for k in range(table.max_omega + 1):
        writer.writerow([k, pi_xk(table, k), pi_prime_xk(table, k)])
    return buf.getvalue()
