"""Exact rational arithmetic: p-adic valuations, primality, prime streams.

All quantities are stdlib Fractions or Python ints, so every computation in
the package is exact.  Primality is decided deterministically: trial division
for small inputs, then a Miller-Rabin round over a fixed witness set that is
known to be exact for every integer below 3.3 * 10**24, far beyond anything
this package constructs.
"""

from __future__ import annotations

import threading
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Iterator

from .errors import DomainViolation

Rational = Fraction


def rational(text: str | int | Fraction) -> Fraction:
    """Parse "num/den" or "num" into an exact Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, int):
        return Fraction(text)
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainViolation(f"not a rational: {text!r}") from exc


def rational_str(q: Fraction | int) -> str:
    """Serialize exactly: "num/den" in lowest terms, or "n" for integers."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def _multiplicity(n: int, p: int) -> int:
    # exact exponent of p in n, n != 0
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return k


def vp(q: Fraction | int, p: int) -> int:
    """p-adic valuation of a nonzero rational: vp(a/b) = vp(a) - vp(b)."""
    if not is_prime(p):
        raise DomainViolation(f"vp needs a prime, got {p}")
    q = Fraction(q)
    if q == 0:
        raise DomainViolation("vp(0) is undefined")
    return _multiplicity(q.numerator, p) - _multiplicity(q.denominator, p)


def denominator_set(qs: Iterable[Fraction | int]) -> set[int]:
    """The set of reduced denominators of a finite family of nonzero rationals."""
    out = set()
    for q in qs:
        q = Fraction(q)
        if q == 0:
            raise DomainViolation("denominator_set requires nonzero rationals")
        out.add(q.denominator)
    return out


_SMALL_LIMIT = 1_000_000
# Deterministic Miller-Rabin witness set, exact for all n < 3.317 * 10**24.
_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _miller_rabin(n: int) -> bool:
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _WITNESSES:
        if a % n == 0:
            continue
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def is_prime(n: int) -> bool:
    """Deterministic primality for positive integers."""
    if n < 1:
        raise DomainViolation(f"is_prime needs n >= 1, got {n}")
    if n < 4:
        return n > 1
    if n % 2 == 0 or n % 3 == 0:
        return False
    if n < _SMALL_LIMIT:
        f = 5
        while f * f <= n:
            if n % f == 0 or n % (f + 2) == 0:
                return False
            f += 6
        return True
    return _miller_rabin(n)


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division; inputs here stay desk-sized."""
    if n < 1:
        raise DomainViolation(f"factorize needs n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        if n % p == 0:
            out[p] = _multiplicity(n, p)
            n //= p ** out[p]
    f = 5
    while f * f <= n:
        for p in (f, f + 2):
            if n % p == 0:
                out[p] = _multiplicity(n, p)
                n //= p ** out[p]
        f += 6
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return dict(sorted(out.items()))


def next_prime_avoiding(lower: int, forbidden: Iterable[int]) -> int:
    """Smallest prime p > lower dividing no element of `forbidden`.

    Always terminates: only finitely many primes divide the finite family.
    """
    avoid = [int(f) for f in forbidden if f not in (0,)]
    k = max(int(lower), 1) + 1
    if k % 2 == 0 and k > 2:
        k += 1
    step = 2 if k > 2 else 1
    while True:
        if is_prime(k) and all(f % k != 0 for f in avoid):
            return k
        k += step
        step = 2


class PrimeStream:
    """Ascending stream of pairwise coprime moduli, usually the primes.

    The default stream is the full sequence of primes.  Explicit finite
    streams are allowed when their values are >= 2, strictly ascending and
    pairwise coprime; they may contain composites (e.g. 4, 9, 25).
    Cache growth is guarded by a lock so streams can be shared.
    """

    def __init__(self, values: tuple[int, ...] | None):
        self._explicit = values
        self._cache: list[int] = list(values) if values is not None else [2]
        self._lock = threading.Lock()

    @classmethod
    def primes(cls) -> "PrimeStream":
        return cls(None)

    @classmethod
    def explicit(cls, values: Iterable[int]) -> "PrimeStream":
        vals = tuple(int(v) for v in values)
        if not vals:
            raise DomainViolation("explicit stream must be nonempty")
        for v in vals:
            if v < 2:
                raise DomainViolation(f"stream values must be >= 2, got {v}")
        if any(a >= b for a, b in zip(vals, vals[1:])):
            raise DomainViolation("stream values must be strictly ascending")
        for i, a in enumerate(vals):
            for b in vals[i + 1:]:
                if gcd(a, b) != 1:
                    raise DomainViolation(
                        f"stream values must be pairwise coprime: gcd({a}, {b}) > 1")
        return cls(vals)

    @property
    def is_all_primes(self) -> bool:
        return self._explicit is None

    @property
    def all_prime_values(self) -> bool:
        if self.is_all_primes:
            return True
        return all(is_prime(v) for v in self._explicit)

    def _grow(self, count: int) -> None:
        with self._lock:
            while len(self._cache) < count:
                self._cache.append(next_prime_avoiding(self._cache[-1], ()))

    def first(self, n: int) -> tuple[int, ...]:
        """The first n stream values, ascending."""
        if n < 0:
            raise DomainViolation("first(n) needs n >= 0")
        if self._explicit is not None:
            if n > len(self._explicit):
                raise DomainViolation(
                    f"stream has only {len(self._explicit)} values, asked for {n}")
            return self._explicit[:n]
        self._grow(n)
        return tuple(self._cache[:n])

    def upto(self, bound: int) -> tuple[int, ...]:
        """All stream values <= bound, ascending."""
        if self._explicit is not None:
            return tuple(v for v in self._explicit if v <= bound)
        out = []
        for v in self:
            if v > bound:
                break
            out.append(v)
        return tuple(out)

    def __iter__(self) -> Iterator[int]:
        if self._explicit is not None:
            yield from self._explicit
            return
        i = 0
        while True:
            if i >= len(self._cache):
                self._grow(i + 1)
            yield self._cache[i]
            i += 1

    def __contains__(self, v: int) -> bool:
        if v < 2:
            return False
        if self._explicit is not None:
            return v in self._explicit
        return is_prime(v)

    def label(self) -> str | list[int]:
        """JSON form: "primes" for the full stream, the list otherwise."""
        if self._explicit is None:
            return "primes"
        return list(self._explicit)

    @classmethod
    def from_label(cls, label: str | list[int]) -> "PrimeStream":
        if label == "primes":
            return cls.primes()
        return cls.explicit(label)

    def __repr__(self) -> str:
        if self._explicit is None:
            return "PrimeStream(primes)"
        return f"PrimeStream{self._explicit}"

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PrimeStream):
            return NotImplemented
        return self._explicit == other._explicit

    def __hash__(self) -> int:
        return hash(self._explicit)
