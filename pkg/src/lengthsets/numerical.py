"""Numerical monoids: co-finite additive submonoids of the nonnegative integers.

Provides minimal generating sets, membership, Frobenius numbers via Apery
sets, exhaustive factorization enumeration, length sets, and a search-based
realization of any finite set of integers >= 2 as a length set.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from . import kernels
from .errors import BudgetExhausted, ConstructionFailure, DomainViolation
from .rationals import rational_str

DEFAULT_SEARCH_BUDGET = 10 ** 6

# Candidate generating sets for the realization search, scanned in order.
# Each pool is (label, low, high, size) -> combinations(range(low, high), size).
# Sets containing the length 2 force x <= 2*max(atom), which keeps the scan
# short; ranges were sized so that every L contained in {2..8} is reachable.
_SEARCH_POOLS = (
    ("pairs", 2, 41, 2),
    ("triples", 2, 41, 3),
    ("quads", 3, 46, 4),
    ("quints", 3, 46, 5),
    ("sextets", 3, 35, 6),
)


@dataclass(frozen=True)
class Factorization:
    """A multiset of atoms, stored as aligned (atoms, counts) tuples.

    atoms are ascending and may be ints (numerical monoids) or Fractions
    (Puiseux monoids); counts are nonnegative with the same arity.
    """

    atoms: tuple
    counts: tuple

    @property
    def length(self) -> int:
        return sum(self.counts)

    def value(self):
        return sum(c * a for a, c in zip(self.atoms, self.counts))

    def as_dict(self) -> dict:
        return {a: c for a, c in zip(self.atoms, self.counts) if c}

    def to_json(self) -> dict:
        out = {}
        for a, c in zip(self.atoms, self.counts):
            if c:
                key = str(a) if isinstance(a, int) else rational_str(Fraction(a))
                out[key] = c
        return out


def minimalize(gens: Iterable[int]) -> tuple[int, ...]:
    """The unique minimal generating set of the monoid generated by gens.

    gens must be nonempty positive integers with overall gcd 1 (otherwise
    the complement in the nonnegative integers is infinite and the input
    does not generate a numerical monoid).
    """
    vals = sorted({int(g) for g in gens})
    if not vals:
        raise DomainViolation("minimalize needs at least one generator")
    if vals[0] <= 0:
        raise DomainViolation("generators must be positive integers")
    if math.gcd(*vals) != 1 if len(vals) > 1 else vals[0] != 1:
        raise DomainViolation(
            f"generators {vals} have gcd != 1; not a numerical monoid "
            "(rescale by the gcd first)"
        )
    kept: list[int] = []
    for g in vals:
        # ascending scan: g is redundant iff the smaller kept generators
        # already reach it (a sum involving anything > g would exceed g)
        if kept and kernels.exists(kept, g):
            continue
        kept.append(g)
    return tuple(kept)


def _check_element(x) -> int:
    if isinstance(x, bool) or not isinstance(x, int):
        raise DomainViolation(f"monoid elements are integers, got {x!r}")
    return x


@dataclass(frozen=True)
class NumericalMonoid:
    """A numerical monoid, stored by its ascending minimal generating set."""

    atoms: tuple[int, ...]

    def __post_init__(self):
        atoms = tuple(int(a) for a in self.atoms)
        object.__setattr__(self, "atoms", atoms)
        if minimalize(atoms) != atoms:
            raise DomainViolation(
                f"{atoms} is not a minimal generating set in ascending order; "
                "use NumericalMonoid.from_generators"
            )

    @classmethod
    def from_generators(cls, gens: Iterable[int]) -> "NumericalMonoid":
        return cls(minimalize(gens))

    @property
    def multiplicity(self) -> int:
        return self.atoms[0]

    def contains(self, x: int) -> bool:
        x = _check_element(x)
        if x < 0:
            return False
        return kernels.exists(self._desc(), x)

    __contains__ = contains

    def _desc(self) -> list[int]:
        return sorted(self.atoms, reverse=True)

    def apery(self, m: int) -> tuple[int, ...]:
        """Least monoid element in each residue class mod m, indexed by residue."""
        m = _check_element(m)
        if m < 1 or not self.contains(m):
            raise DomainViolation(f"apery needs a positive monoid element, got {m}")
        out: list[int | None] = [None] * m
        out[0] = 0
        remaining = m - 1
        bound = 2 * m * self.atoms[-1]
        while remaining:
            table = kernels.member_table(list(self.atoms), bound)
            for x in range(1, bound + 1):
                if table[x] and out[x % m] is None:
                    out[x % m] = x
                    remaining -= 1
                    if not remaining:
                        break
            bound *= 2
        return tuple(out)  # type: ignore[arg-type]

    def frobenius(self) -> int:
        """The largest integer outside the monoid."""
        if self.atoms[0] == 1:
            raise DomainViolation("the monoid is all of N0; it has no gaps")
        ap = self.apery(self.atoms[0])
        return max(ap) - self.atoms[0]

    def factorizations(self, x: int) -> tuple[Factorization, ...]:
        """All factorizations of x, in descending lexicographic count order."""
        x = _check_element(x)
        if x < 0:
            return ()
        desc = self._desc()
        rows = kernels.solutions(desc, x, x // self.atoms[0] if x else 0)
        asc_rows = sorted((tuple(reversed(r)) for r in rows), reverse=True)
        return tuple(Factorization(self.atoms, r) for r in asc_rows)

    def length_set(self, x: int) -> frozenset[int]:
        x = _check_element(x)
        if x < 0:
            return frozenset()
        return frozenset(kernels.lengths_dfs(self._desc(), x, x // self.atoms[0] if x else 0))

    def to_json(self) -> dict:
        return {"atoms": list(self.atoms)}

    @classmethod
    def from_json(cls, data: dict) -> "NumericalMonoid":
        return cls(tuple(int(a) for a in data["atoms"]))

    def __str__(self):
        return "<" + ",".join(str(a) for a in self.atoms) + ">"


def _validate_target_set(L) -> tuple[frozenset[int], list[int]]:
    vals = sorted({int(l) for l in L})
    if not vals:
        raise DomainViolation("the target length set must be nonempty")
    if vals[0] < 2:
        raise DomainViolation(
            f"target lengths must all be >= 2, got {vals[0]} "
            "(0 and 1 occur only as length sets of units and atoms)"
        )
    return frozenset(vals), vals


def _verify_hit(monoid: NumericalMonoid, x: int, want: frozenset[int]) -> None:
    # independent route: explicit factorization enumeration, not the mask DP
    got = frozenset(f.length for f in monoid.factorizations(x))
    if got != want:
        raise ConstructionFailure(
            f"search reported ({monoid}, {x}) but enumeration gives lengths "
            f"{sorted(got)} instead of {sorted(want)}"
        )


def realize_finite(L, budget: int | None = None) -> tuple[NumericalMonoid, int]:
    """Find (N, x) with length_set(N, x) == L, verified by enumeration.

    Scans deterministic pools of candidate generating sets in ascending
    size; every returned answer is re-verified against the factorization
    enumerator before being handed back.  The budget counts nodes, i.e.
    candidate monoids actually scanned (minimal generating sets; tuples
    that merely regenerate an earlier monoid are skipped).  Raises
    BudgetExhausted (carrying the search frontier) when the node budget
    runs out, and falls back to the staged two-generator construction for
    sets whose minimum is >= 11.
    """
    want, vals = _validate_target_set(L)
    if budget is None:
        budget = DEFAULT_SEARCH_BUDGET
    if budget <= 0:
        raise DomainViolation("budget must be positive")
    lo, hi = vals[0], vals[-1]
    nodes = 0

    if hi <= 62:
        target = 0
        for l in vals:
            target |= 1 << l
        for label, rlo, rhi, size in _SEARCH_POOLS:
            for gens in itertools.combinations(range(rlo, rhi), size):
                if math.gcd(*gens) != 1 if size > 1 else gens[0] != 1:
                    continue
                xmax = hi * gens[-1]
                if 2 in want:
                    xmax = min(xmax, 2 * gens[-1])
                x = kernels.probe_candidate(list(gens), lo * gens[0], xmax, target)
                if x == -2:
                    # not a minimal generating set: this monoid was already
                    # scanned under its minimal generators, so it is not a node
                    continue
                nodes += 1
                if x >= 0:
                    monoid = NumericalMonoid(tuple(gens))
                    _verify_hit(monoid, x, want)
                    return monoid, x
                if nodes >= budget:
                    raise BudgetExhausted(
                        "realization search budget exhausted",
                        frontier={"pool": label, "candidate": list(gens), "nodes": nodes},
                    )
    else:
        # lengths beyond 62 cannot use the 64-bit mask table; same pools,
        # exact length sets per element instead
        for label, rlo, rhi, size in _SEARCH_POOLS:
            for gens in itertools.combinations(range(rlo, rhi), size):
                if math.gcd(*gens) != 1 if size > 1 else gens[0] != 1:
                    continue
                if kernels.probe_candidate(list(gens), 0, 0, 1) == -2:
                    continue
                nodes += 1
                if nodes > budget:
                    raise BudgetExhausted(
                        "realization search budget exhausted",
                        frontier={"pool": label, "candidate": list(gens), "nodes": nodes},
                    )
                desc = sorted(gens, reverse=True)
                xmax = min(hi * gens[-1], 2 * gens[-1] if 2 in want else hi * gens[-1])
                for x in range(lo * gens[0], xmax + 1):
                    if kernels.lengths_dfs(desc, x, x // gens[0]) == want:
                        monoid = NumericalMonoid(tuple(gens))
                        _verify_hit(monoid, x, want)
                        return monoid, x

    if vals[0] >= 11:
        from .realize import staged_numerical_realization

        monoid, x = staged_numerical_realization(vals)
        _verify_hit(monoid, x, want)
        return monoid, x

    raise BudgetExhausted(
        "search pools exhausted without a realization",
        frontier={"pool": "exhausted", "nodes": nodes},
    )
