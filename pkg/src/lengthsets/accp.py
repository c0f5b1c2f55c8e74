"""Certificates for the ascending chain condition on principal ideals.

A certificate is a tree whose leaves are monoids with a directly checkable
reason to satisfy ACCP and whose inner nodes are closure rules (adding a
finitely generated positive summand, taking an ascending union inside a
certified ambient monoid, finite coproducts).  The checker validates every
node's side conditions and nothing else: it never attempts to decide ACCP
for an arbitrary monoid, it only audits the construction.

An empirical companion, chain_probe, walks a concrete divisibility chain
and reports where it stabilizes.  The module also packages the standard
counterexample shape (a dense bounded-below monoid plus all prime
reciprocals) whose certificate must be rejected and whose non-atomicity
has a one-line valuation witness.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Union

from .errors import DomainViolation, UnsupportedConfiguration
from .numerical import Factorization, NumericalMonoid
from .puiseux import (
    CanonicalDecomposition,
    FgPuiseux,
    PrimeReciprocal,
    _to_fraction,
    mp_contains,
    mp_decompose,
)
from .rationals import PrimeStream, rational, rational_str


# -- certificate tree ---------------------------------------------------------

@dataclass(frozen=True)
class FinitelyGenerated:
    """Leaf: a reduced finitely generated positive monoid is BF, hence ACCP."""

    monoid: Union[NumericalMonoid, FgPuiseux]


@dataclass(frozen=True)
class PrimeReciprocalAtomic:
    """Leaf: the reciprocal monoid of a pairwise coprime stream."""

    monoid: PrimeReciprocal


@dataclass(frozen=True)
class BoundedBelow:
    """Leaf: {0} plus all rationals >= threshold; lengths are capped by q/threshold."""

    threshold: Fraction


@dataclass(frozen=True)
class PositiveSum:
    """Rule: a certified monoid plus a reduced finitely generated summand."""

    base: "AccpCertificate"
    summand: object  # must be finitely generated for the rule to apply


@dataclass(frozen=True)
class AscendingUnion:
    """Rule: union of an ascending atom chain inside a certified ambient monoid."""

    ambient: "AccpCertificate"
    chain: tuple[tuple[Fraction, ...], ...]


@dataclass(frozen=True)
class Coproduct:
    """Rule: finite coproduct of certified monoids."""

    children: tuple[tuple[str, "AccpCertificate"], ...]


AccpCertificate = Union[
    FinitelyGenerated, PrimeReciprocalAtomic, BoundedBelow, PositiveSum, AscendingUnion, Coproduct
]


@dataclass(frozen=True)
class NodeReport:
    rule: str
    ok: bool
    conditions: tuple[str, ...]


@dataclass(frozen=True)
class Verified:
    report: tuple[NodeReport, ...]

    @property
    def ok(self) -> bool:
        return True


@dataclass(frozen=True)
class Rejected:
    reason: str
    report: tuple[NodeReport, ...]

    @property
    def ok(self) -> bool:
        return False


def _ambient_contains(ambient: AccpCertificate, q: Fraction) -> bool:
    """Structural membership used for chain audits, per ambient shape."""
    if isinstance(ambient, FinitelyGenerated):
        if isinstance(ambient.monoid, NumericalMonoid):
            return q.denominator == 1 and ambient.monoid.contains(q.numerator)
        return ambient.monoid.contains(q)
    if isinstance(ambient, PrimeReciprocalAtomic):
        stream = ambient.monoid.stream
        if stream.all_prime_values:
            return mp_contains(ambient.monoid, q)
        return q == 0 or q.denominator == 1 or q.denominator in stream
    if isinstance(ambient, PositiveSum):
        # q = summand part + reciprocal part; the chains we audit put every
        # new atom wholly in one part, so the disjunction suffices
        summand = ambient.summand
        if isinstance(summand, (NumericalMonoid, FgPuiseux)) and _ambient_contains(
            FinitelyGenerated(summand), q
        ):
            return True
        return _ambient_contains(ambient.base, q)
    return False


def _check_node(cert, reports: list) -> bool:
    if isinstance(cert, FinitelyGenerated):
        if not isinstance(cert.monoid, (NumericalMonoid, FgPuiseux)):
            reports.append(
                NodeReport("finitely-generated", False, ("handle is not a finitely generated monoid",))
            )
            return False
        atoms = cert.monoid.atoms
        conds = (
            f"{len(atoms)} atoms, all positive, minimal by construction",
            "reduced positive monoid, finitely many atoms: lengths of q are capped by q/min(atoms), so the monoid is BF and satisfies ACCP",
        )
        reports.append(NodeReport("finitely-generated", True, conds))
        return True

    if isinstance(cert, PrimeReciprocalAtomic):
        if not isinstance(cert.monoid, PrimeReciprocal):
            reports.append(NodeReport("prime-reciprocal", False, ("handle is not a reciprocal monoid",)))
            return False
        stream = cert.monoid.stream
        if stream.is_all_primes:
            conds = ("stream: all primes (deterministic primality), pairwise coprime",)
        else:
            vals = tuple(stream.label())  # explicit streams label as their value list
            for i, a in enumerate(vals):
                for b in vals[i + 1:]:
                    if gcd(a, b) != 1:
                        reports.append(
                            NodeReport(
                                "prime-reciprocal",
                                False,
                                (f"stream values {a} and {b} share a factor",),
                            )
                        )
                        return False
            conds = (f"stream: explicit {list(vals)}, pairwise coprime checked",)
        reports.append(
            NodeReport(
                "prime-reciprocal",
                True,
                conds + ("reciprocal monoid of a pairwise coprime stream satisfies ACCP",),
            )
        )
        return True

    if isinstance(cert, BoundedBelow):
        t = Fraction(cert.threshold)
        if t <= 0:
            reports.append(NodeReport("bounded-below", False, ("threshold must be positive",)))
            return False
        reports.append(
            NodeReport(
                "bounded-below",
                True,
                (
                    f"nonzero elements all >= {rational_str(t)}",
                    "factorization lengths of q are capped by q/threshold: BF, hence ACCP",
                ),
            )
        )
        return True

    if isinstance(cert, PositiveSum):
        if not isinstance(cert.summand, (NumericalMonoid, FgPuiseux)):
            reports.append(
                NodeReport(
                    "positive-sum",
                    False,
                    ("summand is not finitely generated; the rule needs a finitely generated reduced summand",),
                )
            )
            return False
        alpha = min(cert.summand.atoms)
        if alpha <= 0:
            reports.append(NodeReport("positive-sum", False, ("summand has a nonpositive atom",)))
            return False
        base_ok = _check_node(cert.base, reports)
        reports.append(
            NodeReport(
                "positive-sum",
                base_ok,
                (
                    f"summand reduced and finitely generated with {len(cert.summand.atoms)} atoms",
                    f"minimum summand atom norm alpha = {rational_str(Fraction(alpha))} > 0",
                    "dimension d = 1 (positive rationals with the usual norm and order)",
                ),
            )
        )
        return base_ok

    if isinstance(cert, AscendingUnion):
        ambient_ok = _check_node(cert.ambient, reports)
        if not ambient_ok:
            reports.append(NodeReport("ascending-union", False, ("ambient certificate failed",)))
            return False
        chain = cert.chain
        if not chain:
            reports.append(NodeReport("ascending-union", False, ("empty chain",)))
            return False
        prev: frozenset = frozenset()
        for k, stage_atoms in enumerate(chain):
            cur = frozenset(Fraction(a) for a in stage_atoms)
            if not prev <= cur:
                reports.append(
                    NodeReport(
                        "ascending-union",
                        False,
                        (f"stage {k} atom set does not contain stage {k - 1}",),
                    )
                )
                return False
            for q in sorted(cur - prev):
                if not _ambient_contains(cert.ambient, q):
                    reports.append(
                        NodeReport(
                            "ascending-union",
                            False,
                            (f"chain atom {rational_str(q)} is not visibly in the ambient monoid",),
                        )
                    )
                    return False
            prev = cur
        reports.append(
            NodeReport(
                "ascending-union",
                True,
                (
                    f"chain of {len(chain)} ascending atom sets, all inside the certified ambient monoid",
                    "the union is a submonoid of the ambient monoid and both are reduced, so the ambient chain condition restricts to it",
                ),
            )
        )
        return True

    if isinstance(cert, Coproduct):
        labels = [label for label, _ in cert.children]
        if len(set(labels)) != len(labels):
            reports.append(NodeReport("coproduct", False, ("duplicate component labels",)))
            return False
        ok = True
        for _, child in cert.children:
            ok = _check_node(child, reports) and ok
        reports.append(
            NodeReport(
                "coproduct",
                ok,
                (f"{len(cert.children)} certified components, dimension d = {len(cert.children)}",),
            )
        )
        return ok

    reports.append(NodeReport("unknown", False, (f"unrecognized certificate node {type(cert).__name__}",)))
    return False


def check_certificate(cert: AccpCertificate) -> Verified | Rejected:
    """Validate every node's side conditions; Verified means ACCP holds."""
    reports: list[NodeReport] = []
    ok = _check_node(cert, reports)
    if ok:
        return Verified(tuple(reports))
    reason = next((r.conditions[0] for r in reports if not r.ok), "malformed certificate")
    return Rejected(reason, tuple(reports))


# -- certificate JSON ---------------------------------------------------------

def _monoid_to_json(m) -> dict:
    if isinstance(m, NumericalMonoid):
        return {"type": "numerical", "atoms": list(m.atoms)}
    if isinstance(m, FgPuiseux):
        return {"type": "puiseux", "atoms": [rational_str(a) for a in m.atoms]}
    if isinstance(m, PrimeReciprocal):
        return {"type": "reciprocal", "stream": m.stream.label()}
    raise DomainViolation(f"unsupported monoid handle {type(m).__name__}")


def _monoid_from_json(data: dict):
    kind = data.get("type")
    if kind == "numerical":
        return NumericalMonoid(tuple(int(a) for a in data["atoms"]))
    if kind == "puiseux":
        return FgPuiseux(tuple(rational(a) for a in data["atoms"]))
    if kind == "reciprocal":
        return PrimeReciprocal(PrimeStream.from_label(data["stream"]))
    raise DomainViolation(f"unsupported monoid handle {data!r}")


def certificate_to_json(cert: AccpCertificate) -> dict:
    if isinstance(cert, FinitelyGenerated):
        return {"kind": "finitely-generated", "monoid": _monoid_to_json(cert.monoid)}
    if isinstance(cert, PrimeReciprocalAtomic):
        return {"kind": "prime-reciprocal", "stream": cert.monoid.stream.label()}
    if isinstance(cert, BoundedBelow):
        return {"kind": "bounded-below", "threshold": rational_str(cert.threshold)}
    if isinstance(cert, PositiveSum):
        return {
            "kind": "positive-sum",
            "base": certificate_to_json(cert.base),
            "summand": _monoid_to_json(cert.summand),
        }
    if isinstance(cert, AscendingUnion):
        return {
            "kind": "ascending-union",
            "ambient": certificate_to_json(cert.ambient),
            "chain": [[rational_str(a) for a in stage] for stage in cert.chain],
        }
    if isinstance(cert, Coproduct):
        return {
            "kind": "coproduct",
            "children": [[label, certificate_to_json(c)] for label, c in cert.children],
        }
    raise DomainViolation(f"unsupported certificate node {type(cert).__name__}")


def certificate_from_json(data: dict) -> AccpCertificate:
    kind = data.get("kind")
    if kind == "finitely-generated":
        return FinitelyGenerated(_monoid_from_json(data["monoid"]))
    if kind == "prime-reciprocal":
        return PrimeReciprocalAtomic(PrimeReciprocal(PrimeStream.from_label(data["stream"])))
    if kind == "bounded-below":
        return BoundedBelow(rational(data["threshold"]))
    if kind == "positive-sum":
        return PositiveSum(certificate_from_json(data["base"]), _monoid_from_json(data["summand"]))
    if kind == "ascending-union":
        return AscendingUnion(
            certificate_from_json(data["ambient"]),
            tuple(tuple(rational(a) for a in stage) for stage in data["chain"]),
        )
    if kind == "coproduct":
        return Coproduct(
            tuple((label, certificate_from_json(c)) for label, c in data["children"])
        )
    raise DomainViolation(f"unknown certificate kind {kind!r}")


# -- divisibility chain probe -------------------------------------------------

@dataclass(frozen=True)
class StabilizesAt:
    index: int  # 1-based position from which the chain is constant


@dataclass(frozen=True)
class NotAChain:
    index: int  # 1-based step whose difference leaves the monoid
    difference: Fraction


@dataclass(frozen=True)
class Undecided:
    checked: int


def _membership(M):
    if isinstance(M, FgPuiseux):
        return M.contains
    if isinstance(M, NumericalMonoid):
        return lambda q: Fraction(q).denominator == 1 and M.contains(Fraction(q).numerator)
    if isinstance(M, PrimeReciprocal):
        if not M.stream.all_prime_values:
            raise UnsupportedConfiguration(
                "chain_probe over a composite reciprocal stream has no exact membership"
            )
        return lambda q: mp_contains(M, q)
    raise DomainViolation(f"chain_probe cannot test membership in {type(M).__name__}")


def chain_probe(M, elements, bound: int = 1000) -> StabilizesAt | NotAChain | Undecided:
    """Walk a would-be divisibility chain and report where it settles.

    Consecutive differences must stay in M for the principal ideals to
    ascend; the probe returns the first index from which the sequence is
    constant, the first step that breaks the chain, or Undecided once
    bound steps were examined.
    """
    contains = _membership(M)
    it = iter(elements)
    try:
        prev = _to_fraction(next(it))
    except StopIteration:
        raise DomainViolation("chain_probe needs at least one element") from None
    stable_since = 1
    steps = 0
    for raw in it:
        if steps >= bound:
            return Undecided(steps)
        steps += 1
        cur = _to_fraction(raw)
        diff = prev - cur
        if diff != 0:
            if not contains(diff):
                return NotAChain(steps, diff)
            stable_since = steps + 1
        prev = cur
    return StabilizesAt(stable_since)


# -- the counterexample configuration ----------------------------------------

@dataclass(frozen=True)
class ThresholdReciprocalConfig:
    """The monoid ({0} + all rationals >= threshold) + (all reciprocals 1/p).

    Its atoms are exactly the reciprocals, yet elements like 5/4 lie in the
    monoid without being a sum of atoms, so the monoid is not atomic and in
    particular fails ACCP.  Its natural certificate must therefore be
    rejected by the checker.
    """

    threshold: Fraction = Fraction(1)
    stream: PrimeStream = PrimeStream.primes()

    def contains(self, q) -> bool:
        q = _to_fraction(q)
        if q < 0:
            return False
        return q >= self.threshold or mp_contains(PrimeReciprocal(self.stream), q)

    def certificate(self) -> PositiveSum:
        # honest description of the construction; the summand is not
        # finitely generated, which is exactly why checking must fail
        return PositiveSum(BoundedBelow(self.threshold), PrimeReciprocal(self.stream))


@dataclass(frozen=True)
class Factored:
    factorization: Factorization


@dataclass(frozen=True, eq=False)
class WitnessNotFactorable:
    q: Fraction
    in_monoid: bool
    obstruction: dict


def non_atomic_witness(
    q, cap: int = 64, config: ThresholdReciprocalConfig | None = None
) -> Factored | WitnessNotFactorable:
    """Factor q into reciprocal atoms, or exhibit the obstruction.

    A WitnessNotFactorable with in_monoid=True is a non-atomicity witness
    for the threshold-plus-reciprocals monoid: the element is present but
    no sum of atoms reaches it (e.g. any q with a squared prime in its
    denominator, where the valuation drops below what atom sums allow).
    """
    if config is None:
        config = ThresholdReciprocalConfig()
    q = _to_fraction(q)
    dec = mp_decompose(PrimeReciprocal(config.stream), q)
    if isinstance(dec, CanonicalDecomposition):
        counts: dict[int, int] = {p: c for p, c in dec.coeffs}
        if dec.integer_part:
            p0 = config.stream.first(1)[0]
            counts[p0] = counts.get(p0, 0) + dec.integer_part * p0
        primes = sorted(counts, reverse=True)  # ascending atoms 1/p
        fac = Factorization(
            tuple(Fraction(1, p) for p in primes),
            tuple(counts[p] for p in primes),
        )
        assert fac.value() == q
        if fac.length > cap:
            return WitnessNotFactorable(
                q, config.contains(q), {"reason": "shortest atom factorization exceeds cap", "cap": cap}
            )
        return Factored(fac)
    return WitnessNotFactorable(q, config.contains(q), dec.to_json())
