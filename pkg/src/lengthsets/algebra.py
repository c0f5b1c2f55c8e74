"""Monoid algebras over the rationals, exponents in a Puiseux monoid.

Elements are finite rational linear combinations of monomials X^e where
the exponent e is a nonnegative rational (exponent monoid: a numerical,
finitely generated Puiseux, or reciprocal monoid) or an element of a
finite coproduct of such monoids.  Multiplication is convolution; the
product of nonzero monomials is again a nonzero monomial because the
exponents live in a torsion-free cancellative monoid and the rationals
have no zero divisors.

The bridge exploited here: a monomial's divisors are monomials, so its
factorizations into atoms of the algebra are exactly the factorizations
of its exponent in the exponent monoid, and length sets transfer without
change.  monomial_length_set delegates to the owning monoid and, on tiny
instances, re-derives the answer by explicit polynomial products and
divisor enumeration as a self-check.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Union

from .errors import DomainViolation, NotInMonoid
from .numerical import NumericalMonoid
from .puiseux import (
    FgPuiseux,
    FiniteLengths,
    LengthSetSymbolic,
    PrimeReciprocal,
    ShiftedLengths,
    _to_fraction,
    mp_contains,
    mp_length_set,
)
from .realize import CoproductElement, coproduct_length_set
from .rationals import rational, rational_str

Exponent = Union[Fraction, CoproductElement]
MonoidHandle = Union[NumericalMonoid, FgPuiseux, PrimeReciprocal, None]


def _exp_key(e: Exponent):
    if isinstance(e, CoproductElement):
        return (1, tuple((label, Fraction(elem)) for label, _, elem in e.parts))
    return (0, Fraction(e))


def _exp_is_zero(e: Exponent) -> bool:
    if isinstance(e, CoproductElement):
        return not e.parts
    return Fraction(e) == 0


def _exp_add(a: Exponent, b: Exponent) -> Exponent:
    if isinstance(a, CoproductElement) != isinstance(b, CoproductElement):
        raise DomainViolation("cannot add a plain exponent to a coproduct exponent")
    if isinstance(a, CoproductElement):
        merged: dict[str, tuple] = {label: (monoid, elem) for label, monoid, elem in a.parts}
        for label, monoid, elem in b.parts:
            if label in merged:
                m0, e0 = merged[label]
                if m0 != monoid:
                    raise DomainViolation(
                        f"coproduct label {label!r} names two different component monoids"
                    )
                merged[label] = (m0, e0 + elem)
            else:
                merged[label] = (monoid, elem)
        return CoproductElement.from_parts(
            (label, m, e) for label, (m, e) in merged.items()
        )
    return Fraction(a) + Fraction(b)


def _exp_str(e: Exponent) -> str:
    if isinstance(e, CoproductElement):
        inner = ",".join(
            f"{label}:{rational_str(Fraction(elem))}" for label, _, elem in e.parts
        )
        return inner if inner else "0"
    return rational_str(Fraction(e))


def _exp_to_json(e: Exponent):
    if isinstance(e, CoproductElement):
        return e.to_json()
    return rational_str(Fraction(e))


def _exp_from_json(data) -> Exponent:
    if isinstance(data, dict):
        return CoproductElement.from_json(data)
    return rational(data)


@dataclass(frozen=True)
class AlgebraElement:
    """A finite sum of monomials c*X^e with distinct exponents.

    terms are kept sorted by exponent with nonzero coefficients, so equal
    elements have equal representations.
    """

    terms: tuple[tuple[Exponent, Fraction], ...]

    @classmethod
    def zero(cls) -> "AlgebraElement":
        return cls(())

    @classmethod
    def monomial(cls, exp: Exponent, coeff=1) -> "AlgebraElement":
        c = Fraction(coeff)
        if c == 0:
            return cls(())
        if not isinstance(exp, CoproductElement):
            exp = _to_fraction(exp)
            if exp < 0:
                raise DomainViolation("exponents must be nonnegative")
        return cls(((exp, c),))

    @classmethod
    def one(cls) -> "AlgebraElement":
        return cls.monomial(Fraction(0))

    @classmethod
    def from_terms(cls, pairs) -> "AlgebraElement":
        acc: dict = {}
        order: dict = {}
        for exp, coeff in pairs:
            if not isinstance(exp, CoproductElement):
                exp = _to_fraction(exp)
                if exp < 0:
                    raise DomainViolation("exponents must be nonnegative")
            key = _exp_key(exp)
            acc[key] = acc.get(key, Fraction(0)) + Fraction(coeff)
            order[key] = exp
        terms = tuple(
            (order[k], acc[k]) for k in sorted(acc) if acc[k] != 0
        )
        return cls(terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        return AlgebraElement.from_terms(list(self.terms) + list(other.terms))

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = []
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                out.append((_exp_add(e1, e2), c1 * c2))
        return AlgebraElement.from_terms(out)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        return " + ".join(
            f"{rational_str(c)}*X^({_exp_str(e)})" for e, c in self.terms
        )

    def to_json(self) -> dict:
        return {
            "terms": [
                {"exp": _exp_to_json(e), "coeff": rational_str(c)} for e, c in self.terms
            ]
        }

    @classmethod
    def from_json(cls, data: dict) -> "AlgebraElement":
        return cls.from_terms(
            (_exp_from_json(t["exp"]), rational(t["coeff"])) for t in data["terms"]
        )


def multiply(f: AlgebraElement, g: AlgebraElement) -> AlgebraElement:
    """Convolution product with exact rational coefficients."""
    return f * g


def try_invert(f: AlgebraElement) -> Optional[AlgebraElement]:
    """The inverse of f if f is a unit, else None.

    Units of the monoid algebra are exactly the nonzero constants: the
    exponent monoid is reduced, so degrees add and nothing else can cancel
    back down to X^0.
    """
    if len(f.terms) != 1:
        return None
    exp, coeff = f.terms[0]
    if not _exp_is_zero(exp):
        return None
    zero = CoproductElement.from_parts(()) if isinstance(exp, CoproductElement) else Fraction(0)
    return AlgebraElement.monomial(zero, Fraction(1) / coeff)


def _member(M, q: Fraction) -> bool:
    if isinstance(M, NumericalMonoid):
        return q.denominator == 1 and M.contains(q.numerator)
    if isinstance(M, FgPuiseux):
        return M.contains(q)
    if isinstance(M, PrimeReciprocal):
        return mp_contains(M, q)
    raise DomainViolation(f"unsupported monoid handle {type(M).__name__}")


def _coproduct_divides(a: CoproductElement, b: CoproductElement) -> bool:
    bmap = {label: (monoid, elem) for label, monoid, elem in b.parts}
    for label, monoid, elem in a.parts:
        if label not in bmap:
            return False
        m2, e2 = bmap[label]
        if m2 != monoid:
            raise DomainViolation(f"coproduct label {label!r} names two different monoids")
    for label, monoid, elem in b.parts:
        amap = {l: e for l, _, e in a.parts}
        diff = Fraction(elem) - Fraction(amap.get(label, 0))
        if isinstance(monoid, NumericalMonoid):
            if diff.denominator != 1 or not monoid.contains(diff.numerator):
                return False
        elif not monoid.contains(diff):
            return False
    return True


def monomial_divides(a_exp: Exponent, b_exp: Exponent, M: MonoidHandle = None) -> bool:
    """Whether X^a divides X^b, i.e. b - a lies in the exponent monoid."""
    if isinstance(a_exp, CoproductElement) or isinstance(b_exp, CoproductElement):
        if not (isinstance(a_exp, CoproductElement) and isinstance(b_exp, CoproductElement)):
            raise DomainViolation("cannot mix plain and coproduct exponents")
        for x in (a_exp, b_exp):
            for label, monoid, elem in x.parts:
                if not _member(monoid, Fraction(elem)):
                    raise DomainViolation(
                        f"exponent part {label!r}={elem} is not in its component monoid"
                    )
        return _coproduct_divides(a_exp, b_exp)
    if M is None:
        raise DomainViolation("plain exponents need an owning monoid handle")
    a, b = _to_fraction(a_exp), _to_fraction(b_exp)
    for q in (a, b):
        if not _member(M, q):
            raise DomainViolation(f"exponent {rational_str(q)} is not in the monoid")
    return _member(M, b - a)


def _divisor_enumeration_lengths(M, exp: Fraction, cap: int) -> frozenset:
    """Lengths of X^exp by peeling atom monomials, one divisor at a time.

    Walks the divisor lattice directly: an atom monomial X^a divides X^r
    iff r - a stays in the monoid.  Used as an in-module cross-check on
    tiny instances only.
    """
    atoms = M.atoms
    out: set[int] = set()

    def rec(rem: Fraction, depth: int, start: int):
        if rem == 0:
            out.add(depth)
            return
        if depth >= cap:
            return
        for i in range(start, len(atoms)):
            a = Fraction(atoms[i])
            if a <= rem and _member(M, rem - a):
                rec(rem - a, depth + 1, i)

    rec(Fraction(exp), 0, 0)
    return frozenset(out)


def _tiny_crosscheck(M, exp: Fraction, claimed: frozenset) -> None:
    # explicit polynomial products: each claimed monoid factorization,
    # multiplied out monomial by monomial, must reproduce X^exp
    if isinstance(M, NumericalMonoid):
        facs = M.factorizations(int(exp))
    else:
        facs = M.factorizations(exp)
    for fac in facs:
        prod = AlgebraElement.one()
        for a, c in zip(fac.atoms, fac.counts):
            for _ in range(c):
                prod = prod * AlgebraElement.monomial(Fraction(a))
        if prod != AlgebraElement.monomial(Fraction(exp)):
            raise DomainViolation(
                f"polynomial product of a factorization of {exp} failed to reproduce the monomial"
            )
    # independent peel: divisor enumeration over monomials finds the same lengths
    cap = max(claimed) if claimed else 0
    peeled = _divisor_enumeration_lengths(M, Fraction(exp), cap)
    if peeled != claimed:
        raise DomainViolation(
            f"divisor enumeration found lengths {sorted(peeled)} but delegation claims {sorted(claimed)}"
        )


def monomial_length_set(
    m_exp: Exponent, M: MonoidHandle = None
) -> Union[frozenset, LengthSetSymbolic]:
    """Length set of the monomial X^{m_exp} in the monoid algebra.

    Divisors of a monomial are monomials, so this is exactly the exponent's
    length set in its monoid; finite answers on tiny instances are
    re-derived inside the algebra before being returned.
    """
    if isinstance(m_exp, CoproductElement):
        return coproduct_length_set(m_exp)
    if M is None:
        raise DomainViolation("plain exponents need an owning monoid handle")
    exp = _to_fraction(m_exp)
    if isinstance(M, PrimeReciprocal):
        return mp_length_set(M, exp)  # NotInMonoid (a domain error) propagates
    if isinstance(M, NumericalMonoid):
        if exp.denominator != 1:
            raise DomainViolation(f"exponent {rational_str(exp)} is not in the monoid")
        got = M.length_set(int(exp))
    elif isinstance(M, FgPuiseux):
        got = M.length_set(exp)
    else:
        raise DomainViolation(f"unsupported monoid handle {type(M).__name__}")
    if not got and exp != 0:
        raise DomainViolation(f"exponent {rational_str(exp)} is not in the monoid")
    if len(M.atoms) <= 3 and got and max(got) <= 6:
        _tiny_crosscheck(M, exp, got)
    return got
