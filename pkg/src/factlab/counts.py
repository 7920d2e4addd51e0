"""Exact factorization counts f, g, F, G and brute-force oracles for them.

f(n), g(n): unordered / ordered factorizations of n into parts >= 2.
F(n), G(n): the same with pairwise coprime parts.  Every count depends on n
only through its prime signature, and F, G only through omega(n):
F(n) = B_omega(n), G(n) = a_omega(n).  All four equal 1 at n = 1 (the
empty factorization).

f is computed on the divisor lattice of the signature, indexed in mixed
radix so that ``index(u) - index(v) == index(u - v)`` whenever ``v <= u``
componentwise.  g uses its divisor recursion memoized on signatures.
"""
from __future__ import annotations

import math
from collections import Counter
from functools import lru_cache
from itertools import product
from typing import Iterable, Sequence, Union

from .combinatorics import bell, fubini
from .errors import InvalidArgument

ORACLE_LIMIT = 10**6

Signature = tuple[int, ...]
CountInput = Union[int, Sequence[int], Sequence[tuple[int, int]]]


def trial_factorize(n: int) -> list[tuple[int, int]]:
    if n < 1:
        raise InvalidArgument(f"n must be positive, got {n}")
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out.append((p, e))
        p += 1 if p == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def as_signature(x: CountInput) -> Signature:
    """Normalize an integer, a factorization or an exponent list to a signature."""
    if isinstance(x, int):
        pairs = trial_factorize(x)
        exps: Iterable[int] = (e for _, e in pairs)
    else:
        items = list(x)
        if items and isinstance(items[0], tuple):
            exps = (e for _, e in items)
        else:
            exps = items
    sig = tuple(sorted((int(e) for e in exps), reverse=True))
    if any(e < 1 for e in sig):
        raise InvalidArgument(f"exponents must be >= 1, got {sig}")
    return sig


def _strides(sig: Signature) -> list[int]:
    strides, acc = [], 1
    for e in sig:
        strides.append(acc)
        acc *= e + 1
    return strides


def _offsets(bounds: Sequence[int], strides: Sequence[int]) -> list[int]:
    """Sorted lattice indices of every vector w with 0 <= w_i <= bounds[i]."""
    offs = [0]
    for b, s in zip(bounds, strides):
        offs = [o + j * s for o in offs for j in range(b + 1)]
    offs.sort()
    return offs


@lru_cache(maxsize=None)
def _f_sig(sig: Signature) -> int:
    if not sig:
        return 1
    strides = _strides(sig)
    size = math.prod(e + 1 for e in sig)
    ways = [0] * size
    ways[0] = 1
    # unbounded knapsack: admitting part types in a fixed order is the same
    # as capping each new part by the previous one
    for part in _offsets(sig, strides)[1:]:
        digits = [(part // s) % (e + 1) for s, e in zip(strides, sig)]
        room = [e - d for e, d in zip(sig, digits)]
        for w in _offsets(room, strides):
            ways[part + w] += ways[w]
    return ways[-1]


@lru_cache(maxsize=None)
def _g_sig(sig: Signature) -> int:
    # g(n) = sum over divisors d > 1 of g(n / d), keyed by the signature of n / d
    if not sig:
        return 1
    total = 0
    for d in product(*(range(e + 1) for e in sig)):
        if not any(d):
            continue
        rest = tuple(sorted((e - x for e, x in zip(sig, d) if e > x), reverse=True))
        total += _g_sig(rest)
    return total


def f_count(x: CountInput) -> int:
    """Unordered factorizations into parts >= 2 (multiplicative partitions)."""
    return _f_sig(as_signature(x))


def g_count(x: CountInput) -> int:
    """Ordered factorizations into parts >= 2."""
    return _g_sig(as_signature(x))


def F_count(k: int) -> int:
    """Unordered coprime factorizations of any n with omega(n) = k."""
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    return bell(k)


def G_count(k: int) -> int:
    """Ordered coprime factorizations of any n with omega(n) = k."""
    if k < 0:
        raise InvalidArgument(f"k must be nonnegative, got {k}")
    return fubini(k)


def count_by_signature(fn: str, sig: Signature) -> int:
    if fn == "f":
        return _f_sig(sig)
    if fn == "g":
        return _g_sig(sig)
    if fn == "F":
        return bell(len(sig))
    if fn == "G":
        return fubini(len(sig))
    raise InvalidArgument(f"unknown function {fn!r}; expected one of f, g, F, G")


def f_capped(n: int, cap: int | None = None) -> int:
    """Direct recursion f(n, cap) = sum_{d | n, 1 < d <= cap} f(n/d, d) on integers."""
    return _f_capped(n, n if cap is None else cap)


@lru_cache(maxsize=None)
def _f_capped(n: int, cap: int) -> int:
    if n == 1:
        return 1
    return sum(_f_capped(n // d, d) for d in range(2, min(n, cap) + 1) if n % d == 0)


# -- brute-force oracles ---------------------------------------------------------------

def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _oracle_check(n: int) -> None:
    if not 1 <= n <= ORACLE_LIMIT:
        raise InvalidArgument(f"oracle range is 1 <= n <= {ORACLE_LIMIT}, got {n}")


def nonincreasing_factorizations(n: int) -> list[tuple[int, ...]]:
    """Every tuple a_1 >= a_2 >= ... >= 2 with product n (one empty tuple for n = 1)."""
    _oracle_check(n)
    divs = [d for d in _divisors(n) if d > 1]
    out: list[tuple[int, ...]] = []

    def rec(rest: int, cap: int, acc: tuple[int, ...]) -> None:
        if rest == 1:
            out.append(acc)
            return
        for d in divs:
            if d > cap or d > rest:
                break
            if rest % d == 0:
                rec(rest // d, d, acc + (d,))

    rec(n, n, ())
    return out


def _pairwise_coprime(parts: tuple[int, ...]) -> bool:
    return all(math.gcd(a, b) == 1 for i, a in enumerate(parts) for b in parts[i + 1 :])


def oracle_unordered(n: int, coprime: bool = False) -> int:
    tuples = nonincreasing_factorizations(n)
    if coprime:
        tuples = [t for t in tuples if _pairwise_coprime(t)]
    return len(tuples)


def _arrangements(parts: tuple[int, ...]) -> int:
    total = math.factorial(len(parts))
    for mult in Counter(parts).values():
        total //= math.factorial(mult)
    return total


def oracle_ordered(n: int, coprime: bool = False) -> int:
    tuples = nonincreasing_factorizations(n)
    if coprime:
        tuples = [t for t in tuples if _pairwise_coprime(t)]
    return sum(_arrangements(t) for t in tuples)


def counts_rows(start: int, stop: int):
    """Yield ``(n, omega, f, g, F, G)`` for ``start <= n <= stop``."""
    for n in range(start, stop + 1):
        sig = as_signature(n)
        k = len(sig)
        yield n, k, _f_sig(sig), _g_sig(sig), bell(k), fubini(k)
