"""Staged realization of length sets inside Puiseux monoids.

The engine turns a target set of factorization lengths into a concrete
monoid in two regimes.  Finite targets go through the numerical-monoid
search and are rescaled so the realized element is 1.  Targets with a
declared ascending tail are built stage by stage: each stage grafts a
two-generator block, scaled by a fresh prime, onto the previous monoid so
that exactly one new length appears and nothing else changes.  Every
stage is verified by exhaustive enumeration before it is accepted, the
full construction is recorded in a ConstructionTrace, and the trace
carries a checkable ACCP certificate.

A second, independent mechanism (shift_realize) realizes a finite target
with minimum at least 3 as the length set of a two-component element in a
coproduct, exploiting additivity of length sets across components.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Union

from .accp import (
    AccpCertificate,
    AscendingUnion,
    FinitelyGenerated,
    PositiveSum,
    PrimeReciprocalAtomic,
    _monoid_from_json,
    _monoid_to_json,
    certificate_from_json,
    certificate_to_json,
)
from .errors import ConstructionFailure, DomainViolation
from .numerical import NumericalMonoid, realize_finite
from .puiseux import FgPuiseux, PrimeReciprocal, fg_minimalize
from .rationals import (
    PrimeStream,
    denominator_set,
    is_prime,
    next_prime_avoiding,
    rational,
    rational_str,
)


def split_target(ell: int) -> tuple[int, int]:
    """Split a stage target into an ascending coprime pair summing to it.

    The case split keeps both parts at least 5, which the stage mechanism
    needs so that the grafted block admits no stray short factorizations.
    """
    ell = int(ell)
    if ell <= 10:
        raise DomainViolation("stage targets start at 11")
    if ell % 2 == 1:
        j = ell // 2
        out = (j, j + 1)
    elif ell % 4 == 0:
        j = ell // 4
        out = (2 * j - 1, 2 * j + 1)
    else:
        j = (ell - 2) // 4
        out = (2 * j - 1, 2 * j + 3)
    s, t = out
    assert s + t == ell and gcd(s, t) == 1 and s >= 5
    return out


def solve_weights(s: int, t: int, p: int) -> tuple[int, int]:
    """The unique-by-normalization weights (b, c) with b*s + c*t = p.

    Returns the solution with the smallest b subject to min{b, c} being
    larger than max{s, t}; under p > 4(s+t)^2 such a solution exists and
    p then has exactly one factorization in the two-generator monoid
    <b, c>, namely s copies of b plus t copies of c.
    """
    s, t, p = int(s), int(t), int(p)
    if s < 1 or t < 1:
        raise DomainViolation("weights need positive pair entries")
    if gcd(s, t) != 1:
        raise DomainViolation(f"pair ({s}, {t}) is not coprime")
    if not is_prime(p):
        raise DomainViolation(f"{p} is not prime")
    if p <= 4 * (s + t) ** 2:
        raise DomainViolation(f"prime {p} is not above 4*({s}+{t})^2")
    m = max(s, t)
    # smallest b > m in the residue class b*s = p (mod t)
    r = p * pow(s, -1, t) % t if t > 1 else 0
    b = r if r > m else r + t * ((m - r) // t + 1)
    c, rem = divmod(p - b * s, t)
    if rem or c <= m or b <= m:
        raise ConstructionFailure(
            f"weight normalization failed for (s={s}, t={t}, p={p}); this regime is provably solvable"
        )
    assert b * s + c * t == p
    return (b, c)


@dataclass(frozen=True)
class StagePlan:
    """One grafting stage: target length, split pair, prime, and weights."""

    index: int
    target: int
    split: tuple[int, int]
    prime: int
    weights: tuple[int, int]

    @property
    def m_max(self) -> int:
        return max(self.split)

    @property
    def monoid(self) -> NumericalMonoid:
        # b < c always holds in the solve_weights regime
        return NumericalMonoid(self.weights)

    @property
    def new_atoms(self) -> tuple[Fraction, Fraction]:
        b, c = self.weights
        return (Fraction(b, self.prime), Fraction(c, self.prime))

    def to_json(self) -> dict:
        return {
            "n": self.index,
            "ell": self.target,
            "s": self.split[0],
            "t": self.split[1],
            "p": self.prime,
            "b": self.weights[0],
            "c": self.weights[1],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StagePlan":
        return cls(
            int(data["n"]),
            int(data["ell"]),
            (int(data["s"]), int(data["t"])),
            int(data["p"]),
            (int(data["b"]), int(data["c"])),
        )


def build_stage(
    prev: FgPuiseux, ell: int, index: int = 1, prev_lengths=None
) -> tuple[FgPuiseux, StagePlan]:
    """Graft one stage onto prev so the length set of 1 gains exactly ell.

    Picks the smallest prime above 4*ell^2 dividing no previous atom
    denominator, splits ell, solves for weights, and adjoins the two new
    scaled atoms.  Both postconditions (atom set grows by exactly the two
    new atoms; the length set of 1 grows by exactly ell) are verified by
    enumeration before the stage is returned.
    """
    ell = int(ell)
    if ell <= 10:
        raise DomainViolation("stage targets start at 11")
    if not isinstance(prev, FgPuiseux):
        raise DomainViolation("build_stage needs a finitely generated Puiseux monoid")
    if Fraction(1) in prev.atoms:
        raise DomainViolation(
            "1 is an atom of the previous monoid, so its length set of 1 is {1}; staging cannot apply"
        )
    if not prev.contains(Fraction(1)):
        raise DomainViolation("1 must lie in the previous stage monoid")
    if prev_lengths is None:
        prev_lengths = prev.length_set(1)
    prev_lengths = frozenset(prev_lengths)
    if ell in prev_lengths:
        raise DomainViolation(f"stage target {ell} is already a realized length")

    p = next_prime_avoiding(4 * ell * ell, denominator_set(prev.atoms))
    s, t = split_target(ell)
    b, c = solve_weights(s, t, p)
    fresh = (Fraction(b, p), Fraction(c, p))
    nxt = fg_minimalize(prev.atoms + fresh)
    expected = tuple(sorted(set(prev.atoms) | set(fresh)))
    if nxt.atoms != expected:
        raise ConstructionFailure(
            f"stage {index} (ell={ell}, p={p}): atom set changed beyond the two grafted atoms"
        )
    got = nxt.length_set(1)
    want = prev_lengths | {ell}
    if got != want:
        raise ConstructionFailure(
            f"stage {index} (ell={ell}, p={p}): length set {sorted(got)} != expected {sorted(want)}"
        )
    return nxt, StagePlan(index, ell, (s, t), p, (b, c))


def staged_numerical_realization(targets: Iterable[int]) -> tuple[NumericalMonoid, int]:
    """Realize a finite set with all elements >= 11 by pure staging.

    The smallest target is realized exactly by a two-generator block with
    a unique factorization of its prime; the rest are grafted one stage
    at a time.  Clearing denominators gives back a numerical monoid and
    the realizing element.
    """
    vals = sorted({int(v) for v in targets})
    if not vals:
        raise DomainViolation("staged realization needs at least one target")
    if vals[0] < 11:
        raise DomainViolation("staged realization needs all targets >= 11")
    ell0 = vals[0]
    s, t = split_target(ell0)
    p0 = next_prime_avoiding(4 * ell0 * ell0, ())
    b, c = solve_weights(s, t, p0)
    base = NumericalMonoid((b, c))
    if base.length_set(p0) != frozenset({ell0}):
        raise ConstructionFailure(
            f"base block <{b},{c}> does not give {p0} the unique length {ell0}"
        )
    M = FgPuiseux((Fraction(b, p0), Fraction(c, p0)))
    cur = frozenset({ell0})
    for i, ell in enumerate(vals[1:], 1):
        M, _plan = build_stage(M, ell, index=i, prev_lengths=cur)
        cur |= {ell}
    D = lcm(*(a.denominator for a in M.atoms))
    scaled = tuple(a.numerator * (D // a.denominator) for a in M.atoms)
    return NumericalMonoid(scaled), D


@dataclass(frozen=True, eq=False)
class ConstructionTrace:
    """Complete record of a staged realization, JSON round-trippable."""

    config: dict
    base_monoid: NumericalMonoid
    base_element: int
    base_lengths: frozenset
    requested: frozenset
    tail: tuple[int, ...]
    stages: tuple[StagePlan, ...]
    atoms_per_stage: tuple[tuple[Fraction, ...], ...]
    final_lengths: frozenset
    extendable: bool
    certificate: AccpCertificate

    def stage_monoid(self, n: int) -> FgPuiseux:
        """The monoid after stage n (n = 0 is the rescaled base)."""
        return FgPuiseux(self.atoms_per_stage[n])

    def final_monoid(self) -> FgPuiseux:
        return FgPuiseux(self.atoms_per_stage[-1])

    def to_json(self) -> dict:
        return {
            "config": dict(self.config),
            "requested": sorted(self.requested),
            "tail": list(self.tail),
            "depth": len(self.tail),
            "base": {
                "atoms": list(self.base_monoid.atoms),
                "element": self.base_element,
                "L0": sorted(self.base_lengths),
            },
            "stages": [s.to_json() for s in self.stages],
            "atoms_per_stage": [
                [rational_str(a) for a in stage] for stage in self.atoms_per_stage
            ],
            "final_lengths": sorted(self.final_lengths),
            "extendable": self.extendable,
            "certificate": certificate_to_json(self.certificate),
        }

    @classmethod
    def from_json(cls, data: dict) -> "ConstructionTrace":
        tail = tuple(int(v) for v in data["tail"])
        if data.get("depth", len(tail)) != len(tail):
            raise DomainViolation("trace depth disagrees with its materialized tail")
        return cls(
            config=dict(data.get("config", {})),
            base_monoid=NumericalMonoid(tuple(int(a) for a in data["base"]["atoms"])),
            base_element=int(data["base"]["element"]),
            base_lengths=frozenset(int(v) for v in data["base"]["L0"]),
            requested=frozenset(int(v) for v in data["requested"]),
            tail=tail,
            stages=tuple(StagePlan.from_json(s) for s in data["stages"]),
            atoms_per_stage=tuple(
                tuple(rational(a) for a in stage) for stage in data["atoms_per_stage"]
            ),
            final_lengths=frozenset(int(v) for v in data["final_lengths"]),
            extendable=bool(data["extendable"]),
            certificate=certificate_from_json(data["certificate"]),
        )


def _validate_finite_target(L) -> frozenset:
    out = set()
    for v in L:
        iv = int(v)
        if iv != v or iv < 2:
            raise DomainViolation("length targets must be integers >= 2")
        out.add(iv)
    if not out:
        raise DomainViolation("the target length set must be nonempty")
    return frozenset(out)


def realize_length_set(
    L, tail=(), depth=None, budget=None, config=None
) -> ConstructionTrace:
    """Realize L (finite, or finite plus an ascending tail) as lengths of 1.

    Without a tail the finite set is delegated to the numerical search and
    rescaled.  With a tail, the part of L up to its smallest element >= 10
    is realized by search and the remaining targets (elements of L above
    that pivot, then `depth` tail values) are grafted as verified stages.
    The trace's certificate is checkable by the certificate auditor.
    """
    Lset = _validate_finite_target(L)
    cfg = dict(config) if config else {}

    if tail is None:
        tail_given = False
    else:
        try:
            tail_given = len(tail) > 0
        except TypeError:
            tail_given = True  # generators count as a declared tail
    if not tail_given:
        N0, m0 = realize_finite(Lset, budget)
        atoms0 = tuple(Fraction(a, m0) for a in N0.atoms)
        M0 = FgPuiseux(atoms0)
        cert: AccpCertificate = FinitelyGenerated(M0)
        return ConstructionTrace(
            config=cfg,
            base_monoid=N0,
            base_element=m0,
            base_lengths=Lset,
            requested=Lset,
            tail=(),
            stages=(),
            atoms_per_stage=(atoms0,),
            final_lengths=Lset,
            extendable=False,
            certificate=cert,
        )

    pivots = [l for l in Lset if l >= 10]
    if not pivots:
        raise DomainViolation(
            "a tail realization needs an element >= 10 in the finite part"
        )
    ell0 = min(pivots)
    L0 = frozenset(l for l in Lset if l <= ell0)
    above = sorted(l for l in Lset if l > ell0)

    if depth is None:
        try:
            depth = len(tail)
        except TypeError:
            raise DomainViolation("depth is required when the tail is a generator") from None
    depth = int(depth)
    if depth < 0:
        raise DomainViolation("depth must be nonnegative")
    materialized = []
    for v in itertools.islice(iter(tail), depth):
        iv = int(v)
        if iv <= 10:
            raise DomainViolation("tail elements must be integers >= 11")
        if iv <= ell0:
            raise DomainViolation("tail elements must exceed the pivot length")
        if iv in Lset:
            raise DomainViolation(f"tail element {iv} already lies in the finite part")
        if materialized and iv <= materialized[-1]:
            raise DomainViolation("the tail must be strictly ascending")
        materialized.append(iv)

    N0, m0 = realize_finite(L0, budget)
    atoms0 = tuple(Fraction(a, m0) for a in N0.atoms)
    M = FgPuiseux(atoms0)
    atoms_per_stage = [atoms0]
    stages: list[StagePlan] = []
    cur = frozenset(L0)
    for i, ell in enumerate(above + materialized, 1):
        M, plan = build_stage(M, ell, index=i, prev_lengths=cur)
        cur |= {ell}
        stages.append(plan)
        atoms_per_stage.append(M.atoms)

    base_cert = PositiveSum(
        PrimeReciprocalAtomic(PrimeReciprocal(PrimeStream.primes())), FgPuiseux(atoms0)
    )
    cert = AscendingUnion(base_cert, tuple(atoms_per_stage))
    return ConstructionTrace(
        config=cfg,
        base_monoid=N0,
        base_element=m0,
        base_lengths=L0,
        requested=Lset,
        tail=tuple(materialized),
        stages=tuple(stages),
        atoms_per_stage=tuple(atoms_per_stage),
        final_lengths=cur,
        extendable=True,
        certificate=cert,
    )


# -- coproduct shift realization ----------------------------------------------

ComponentMonoid = Union[NumericalMonoid, FgPuiseux]


@dataclass(frozen=True)
class CoproductElement:
    """An element of a finite coproduct: labeled, finitely supported parts."""

    parts: tuple[tuple[str, ComponentMonoid, object], ...]

    @classmethod
    def from_parts(cls, items) -> "CoproductElement":
        seen = set()
        kept = []
        for label, monoid, elem in items:
            if label in seen:
                raise DomainViolation(f"duplicate coproduct label {label!r}")
            seen.add(label)
            if elem == 0:
                continue  # zero components carry no support
            kept.append((str(label), monoid, elem))
        kept.sort(key=lambda it: it[0])
        return cls(tuple(kept))

    def labels(self) -> tuple[str, ...]:
        return tuple(label for label, _, _ in self.parts)

    def to_json(self) -> dict:
        out = []
        for label, monoid, elem in self.parts:
            e = elem if isinstance(elem, int) else rational_str(Fraction(elem))
            out.append({"label": label, "monoid": _monoid_to_json(monoid), "element": str(e)})
        return {"parts": out}

    @classmethod
    def from_json(cls, data: dict) -> "CoproductElement":
        items = []
        for part in data["parts"]:
            monoid = _monoid_from_json(part["monoid"])
            raw = part["element"]
            elem = int(raw) if isinstance(monoid, NumericalMonoid) else rational(raw)
            items.append((part["label"], monoid, elem))
        return cls.from_parts(items)


def _component_length_set(monoid: ComponentMonoid, elem) -> frozenset:
    if isinstance(monoid, NumericalMonoid):
        f = Fraction(elem)
        if f.denominator != 1:
            return frozenset()
        return monoid.length_set(f.numerator)
    if isinstance(monoid, FgPuiseux):
        return monoid.length_set(elem)
    raise DomainViolation(f"unsupported component monoid {type(monoid).__name__}")


def coproduct_length_set(x: CoproductElement) -> frozenset:
    """Length set of a coproduct element: the sumset over components.

    Factoring a coproduct element factors each component independently,
    so lengths add across the support.
    """
    total = {0}
    for label, monoid, elem in x.parts:
        ls = _component_length_set(monoid, elem)
        if not ls:
            raise DomainViolation(f"component {label!r}: element is not in its monoid")
        total = {a + b for a in total for b in ls}
    return frozenset(total)


class ComponentStore:
    """Cache of realized components, keyed by the component's length set."""

    def __init__(self):
        self._cache: dict[frozenset, tuple[str, FgPuiseux, Fraction]] = {}

    def component(self, L) -> tuple[str, FgPuiseux, Fraction]:
        key = frozenset(int(v) for v in L)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        label = "L(" + ",".join(str(v) for v in sorted(key)) + ")"
        if key == frozenset({1}):
            # the 1-atom component: its only factorization is the atom itself
            entry = (label, FgPuiseux((Fraction(1),)), Fraction(1))
        else:
            N, m = realize_finite(key)
            monoid = FgPuiseux(tuple(Fraction(a, m) for a in N.atoms))
            entry = (label, monoid, Fraction(1))
        self._cache[key] = entry
        return entry


def shift_realize(L, store: ComponentStore | None = None) -> CoproductElement:
    """Realize L (min >= 3) as the length set of a two-component element.

    One component contributes the fixed length 1 through an atom; the
    other realizes L shifted down by one.  Lengths add across components,
    so the element's length set is exactly L; this is verified before the
    element is returned.
    """
    Lset = _validate_finite_target(L)
    if min(Lset) < 3:
        raise DomainViolation("shift realization needs min(L) >= 3")
    if store is None:
        store = ComponentStore()
    shifted = frozenset(l - 1 for l in Lset)
    atom_part = store.component({1})
    body_part = store.component(shifted)
    x = CoproductElement.from_parts([atom_part, body_part])
    got = coproduct_length_set(x)
    if got != Lset:
        raise ConstructionFailure(
            f"shift realization produced lengths {sorted(got)} instead of {sorted(Lset)}"
        )
    return x
