"""Puiseux monoids: additive submonoids of the nonnegative rationals.

Two families are first-class here.  Finitely generated monoids reduce to
numerical monoids by clearing denominators, which gives exact membership,
factorization and length-set queries.  Reciprocal monoids, generated by
{1/p : p in P} for a stream P of pairwise coprime values, get the closed
form: every member decomposes uniquely as an integer part plus bounded
prime-reciprocal coefficients, and its length set is that coefficient sum
shifted by an integer-part-fold sumset of the stream.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable

from . import kernels
from .errors import DomainViolation, NotInMonoid, UnsupportedConfiguration
from .numerical import Factorization, NumericalMonoid, minimalize
from .rationals import PrimeStream, factorize, rational, rational_str


def _to_fraction(q) -> Fraction:
    if isinstance(q, str):
        return rational(q)
    return Fraction(q)


@dataclass(frozen=True)
class FgPuiseux:
    """A finitely generated Puiseux monoid, by ascending minimal atoms."""

    atoms: tuple[Fraction, ...]

    def __post_init__(self):
        atoms = tuple(Fraction(a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if not atoms:
            raise DomainViolation("a Puiseux monoid needs at least one atom")
        if any(a <= 0 for a in atoms):
            raise DomainViolation("atoms must be positive rationals")
        vals, _ = self._scaled()
        if list(vals) != sorted(vals) or minimalize(vals) != tuple(vals):
            raise DomainViolation(
                f"{[str(a) for a in atoms]} is not an ascending minimal "
                "generating set; use fg_minimalize"
            )

    def _scaled(self) -> tuple[tuple[int, ...], Fraction]:
        """Integer images of the atoms under q -> q*scale, gcd-reduced.

        scale maps this monoid isomorphically onto the numerical monoid
        generated by the returned values (gcd 1), preserving atoms,
        factorizations and lengths.
        """
        denom_lcm = lcm(*(a.denominator for a in self.atoms))
        ints = [a.numerator * (denom_lcm // a.denominator) for a in self.atoms]
        g = gcd(*ints)
        return tuple(i // g for i in ints), Fraction(denom_lcm, g)

    def to_numerical(self) -> tuple[NumericalMonoid, Fraction]:
        vals, scale = self._scaled()
        return NumericalMonoid(vals), scale

    def scale(self, r) -> "FgPuiseux":
        r = _to_fraction(r)
        if r <= 0:
            raise DomainViolation("scaling factor must be positive")
        return FgPuiseux(tuple(a * r for a in self.atoms))

    def contains(self, q) -> bool:
        q = _to_fraction(q)
        if q < 0:
            return False
        if q == 0:
            return True
        vals, scale = self._scaled()
        x = q * scale
        if x.denominator != 1:
            return False
        return kernels.exists(self._prune_order(vals), x.numerator)

    __contains__ = contains

    def _prune_order(self, vals) -> list[int]:
        # explore big-denominator atom groups first; the remaining suffix
        # then shares that denominator's cofactor as a gcd, which is the
        # prune that keeps stage verification fast
        order = sorted(
            range(len(vals)),
            key=lambda i: (self.atoms[i].denominator, self.atoms[i]),
            reverse=True,
        )
        return [vals[i] for i in order]

    def factorizations(self, q) -> tuple[Factorization, ...]:
        """All factorizations of q, in descending lexicographic count order."""
        q = _to_fraction(q)
        if q < 0:
            return ()
        vals, scale = self._scaled()
        x = q * scale
        if x.denominator != 1:
            return ()
        x = x.numerator
        order = sorted(
            range(len(vals)),
            key=lambda i: (self.atoms[i].denominator, self.atoms[i]),
            reverse=True,
        )
        rows = kernels.solutions([vals[i] for i in order], x, x // min(vals) if x else 0)
        k = len(vals)
        aligned = []
        for row in rows:
            counts = [0] * k
            for slot, i in enumerate(order):
                counts[i] = row[slot]
            aligned.append(tuple(counts))
        aligned.sort(reverse=True)
        return tuple(Factorization(self.atoms, c) for c in aligned)

    def length_set(self, q) -> frozenset[int]:
        q = _to_fraction(q)
        if q < 0:
            return frozenset()
        vals, scale = self._scaled()
        x = q * scale
        if x.denominator != 1:
            return frozenset()
        x = x.numerator
        return frozenset(kernels.lengths_dfs(self._prune_order(vals), x, x // min(vals) if x else 0))

    def to_json(self) -> dict:
        return {"atoms": [rational_str(a) for a in self.atoms]}

    @classmethod
    def from_json(cls, data: dict) -> "FgPuiseux":
        return cls(tuple(rational(a) for a in data["atoms"]))

    def __str__(self):
        return "<" + ",".join(rational_str(a) for a in self.atoms) + ">"


def fg_minimalize(gens: Iterable) -> FgPuiseux:
    """Minimal generating set of the Puiseux monoid generated by gens.

    Clears denominators, minimalizes the resulting integers as a numerical
    generating set, and rescales back.
    """
    vals = sorted({_to_fraction(g) for g in gens})
    if not vals:
        raise DomainViolation("fg_minimalize needs at least one generator")
    if any(v <= 0 for v in vals):
        raise DomainViolation("generators must be positive rationals")
    denom_lcm = lcm(*(v.denominator for v in vals))
    ints = [v.numerator * (denom_lcm // v.denominator) for v in vals]
    g = gcd(*ints)
    kept = minimalize(i // g for i in ints)
    back = Fraction(g, denom_lcm)
    return FgPuiseux(tuple(v * back for v in kept))


def fg_factorizations(M: FgPuiseux, q) -> tuple[Factorization, ...]:
    return M.factorizations(q)


def fg_length_set(M: FgPuiseux, q) -> frozenset[int]:
    return M.length_set(q)


@dataclass(frozen=True)
class PrimeReciprocal:
    """The Puiseux monoid generated by the reciprocals of a stream."""

    stream: PrimeStream = PrimeStream.primes()

    def atoms_upto(self, bound: int) -> tuple[Fraction, ...]:
        return tuple(Fraction(1, v) for v in self.stream.upto(bound))


@dataclass(frozen=True)
class CanonicalDecomposition:
    """q = integer_part + sum of coeff/p over coeffs, 0 < coeff < p."""

    integer_part: int
    coeffs: tuple[tuple[int, int], ...]  # (p, c_p) ascending in p

    @property
    def coeff_sum(self) -> int:
        return sum(c for _, c in self.coeffs)

    def value(self) -> Fraction:
        return self.integer_part + sum(Fraction(c, p) for p, c in self.coeffs)

    def to_json(self) -> dict:
        return {
            "N": self.integer_part,
            "coeffs": {str(p): c for p, c in self.coeffs},
        }


@dataclass(frozen=True, eq=False)
class NotMember:
    """Evidence that a rational lies outside the reciprocal monoid."""

    q: Fraction
    reason: str
    details: dict

    def to_json(self) -> dict:
        return {"q": rational_str(self.q), "reason": self.reason, "details": self.details}


@dataclass(frozen=True)
class FiniteLengths:
    """An explicitly enumerated finite length set."""

    values: frozenset[int]

    def to_json(self) -> dict:
        return {"kind": "finite", "set": sorted(self.values)}


@dataclass(frozen=True)
class ShiftedLengths:
    """base + (copies-fold sumset of the stream); infinite when copies >= 1."""

    base: int
    copies: int
    stream: PrimeStream

    def to_json(self) -> dict:
        return {
            "kind": "shifted",
            "base": self.base,
            "copies": self.copies,
            "stream": self.stream.label(),
        }


LengthSetSymbolic = FiniteLengths | ShiftedLengths


def symbolic_from_json(data: dict) -> LengthSetSymbolic:
    if data.get("kind") == "finite":
        return FiniteLengths(frozenset(int(v) for v in data["set"]))
    if data.get("kind") == "shifted":
        return ShiftedLengths(
            int(data["base"]), int(data["copies"]), PrimeStream.from_label(data["stream"])
        )
    raise DomainViolation(f"unknown symbolic length set {data!r}")


def _require_prime_stream(Mp: PrimeReciprocal, operation: str):
    if not Mp.stream.all_prime_values:
        raise UnsupportedConfiguration(
            f"{operation} needs a stream of primes; for pairwise coprime "
            "composite streams use truncated_length_set / truncated_contains"
        )


def mp_decompose(Mp: PrimeReciprocal, q) -> CanonicalDecomposition | NotMember:
    """Unique bounded-coefficient decomposition of q over Mp, or NotMember.

    Succeeds exactly when q is a member: every prime in the reduced
    denominator must appear in the stream with valuation -1, and the
    residual integer part must be nonnegative.
    """
    _require_prime_stream(Mp, "mp_decompose")
    q = _to_fraction(q)
    if q < 0:
        raise DomainViolation("mp_decompose needs a nonnegative rational")
    den = q.denominator
    num = q.numerator
    coeffs = []
    for p, mult in sorted(factorize(den).items()):
        if p not in Mp.stream:
            return NotMember(q, "denominator prime outside the stream", {"prime": p})
        if mult > 1:
            # sums of reciprocal atoms never drop below valuation -1
            return NotMember(
                q,
                "p-adic valuation below -1",
                {"prime": p, "valuation": -mult},
            )
        c = num * pow(den // p, -1, p) % p
        coeffs.append((p, c))
    integer_part = q - sum(Fraction(c, p) for p, c in coeffs)
    assert integer_part.denominator == 1
    if integer_part < 0:
        return NotMember(
            q,
            "fractional coefficients already exceed the value",
            {"integer_part": int(integer_part), "coeffs": {str(p): c for p, c in coeffs}},
        )
    return CanonicalDecomposition(int(integer_part), tuple(coeffs))


def mp_contains(Mp: PrimeReciprocal, q) -> bool:
    q = _to_fraction(q)
    if q < 0:
        return False
    return isinstance(mp_decompose(Mp, q), CanonicalDecomposition)


def mp_length_set(Mp: PrimeReciprocal, q) -> LengthSetSymbolic:
    """Length set of a member of Mp, in closed symbolic form."""
    dec = mp_decompose(Mp, q)
    if isinstance(dec, NotMember):
        raise NotInMonoid(
            f"{rational_str(dec.q)} is not in the reciprocal monoid: {dec.reason}",
            evidence=dec.to_json(),
        )
    if dec.integer_part == 0:
        return FiniteLengths(frozenset({dec.coeff_sum}))
    return ShiftedLengths(dec.coeff_sum, dec.integer_part, Mp.stream)


def mp_realize(m: int, n: int, Mp: PrimeReciprocal | None = None) -> Fraction:
    """The canonical member whose length set is n + (m-fold stream sumset).

    Built as m plus the reciprocals of the first n stream values: those n
    distinct reciprocals contribute coefficient sum n, and the integer part
    m supplies the m-fold sumset.
    """
    if Mp is None:
        Mp = PrimeReciprocal()
    if m < 0 or n < 0:
        raise DomainViolation("mp_realize needs nonnegative m and n")
    return m + sum(Fraction(1, p) for p in Mp.stream.first(n))


def symbolic_enumerate(L: LengthSetSymbolic, cap: int) -> tuple[int, ...]:
    """All members of L that are <= cap, ascending."""
    cap = int(cap)
    if cap < 1:
        raise DomainViolation("cap must be a positive integer")
    if isinstance(L, FiniteLengths):
        return tuple(sorted(v for v in L.values if v <= cap))
    room = cap - L.base
    if room < 0:
        return ()
    if L.copies == 0:
        return (L.base,)
    primes = L.stream.upto(room)
    if not primes:
        return ()
    least = primes[0]
    sums = {0}
    for i in range(L.copies):
        tail = (L.copies - 1 - i) * least
        sums = {s + p for s in sums for p in primes if s + p + tail <= room}
        if not sums:
            return ()
    return tuple(sorted(s + L.base for s in sums))


def truncated_length_set(
    Mp: PrimeReciprocal, q, value_bound: int = 13, cap: int = 64
) -> frozenset[int]:
    """Brute-force lengths of q over reciprocal atoms 1/v with v <= value_bound.

    Independent of the decomposition formula; also the only route offered
    for pairwise coprime composite streams.  Only factorizations of total
    length <= cap are seen, so absence here never proves non-membership.
    """
    q = _to_fraction(q)
    if q < 0:
        return frozenset()
    values = Mp.stream.upto(value_bound)
    if not values:
        return frozenset({0}) if q == 0 else frozenset()
    denom_lcm = lcm(*values)
    x = q * denom_lcm
    if x.denominator != 1:
        return frozenset()
    scaled = sorted((denom_lcm // v for v in values), reverse=True)
    return frozenset(kernels.lengths_dfs(scaled, x.numerator, cap))


def truncated_contains(
    Mp: PrimeReciprocal, q, value_bound: int = 13, cap: int = 64
) -> bool | None:
    """True when a bounded factorization exists; None means unknown.

    The truncation can only certify membership, never rule it out.
    """
    q = _to_fraction(q)
    if q < 0:
        return False
    if q == 0:
        return True
    return True if truncated_length_set(Mp, q, value_bound, cap) else None
