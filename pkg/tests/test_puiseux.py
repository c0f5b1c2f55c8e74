import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lengthsets.errors import DomainViolation, NotInMonoid, UnsupportedConfiguration
from lengthsets.puiseux import (
    CanonicalDecomposition,
    FgPuiseux,
    FiniteLengths,
    NotMember,
    PrimeReciprocal,
    ShiftedLengths,
    fg_length_set,
    fg_minimalize,
    mp_contains,
    mp_decompose,
    mp_length_set,
    mp_realize,
    symbolic_enumerate,
    symbolic_from_json,
    truncated_contains,
    truncated_length_set,
)
from lengthsets.rationals import PrimeStream
from oracles import naive_puiseux_lengths

fractions = st.fractions(min_value=Fraction(1, 12), max_value=6, max_denominator=12)

ORACLE_PRIMES = (2, 3, 5, 7, 11, 13)


@st.composite
def mp_members(draw, max_integer=3):
    n = draw(st.integers(min_value=0, max_value=max_integer))
    q = Fraction(n)
    for p in ORACLE_PRIMES:
        q += Fraction(draw(st.integers(min_value=0, max_value=p - 1)), p)
    return q


def test_fg_construction_validation():
    M = FgPuiseux((Fraction(1, 3), Fraction(1, 2)))
    assert M.atoms == (Fraction(1, 3), Fraction(1, 2))
    assert str(M) == "<1/3,1/2>"
    with pytest.raises(DomainViolation):
        FgPuiseux((Fraction(1, 2), Fraction(1, 3)))  # not ascending
    with pytest.raises(DomainViolation):
        FgPuiseux((Fraction(1, 3), Fraction(2, 3)))  # 2/3 = 1/3 + 1/3
    with pytest.raises(DomainViolation):
        FgPuiseux(())
    with pytest.raises(DomainViolation):
        FgPuiseux((Fraction(-1, 2),))


def test_fg_minimalize_frozen():
    M = fg_minimalize([Fraction(1, 2), Fraction(1, 3), Fraction(5, 6)])
    assert M.atoms == (Fraction(1, 3), Fraction(1, 2))
    M = fg_minimalize([Fraction(2, 5), Fraction(3, 5), Fraction(4, 5), Fraction(6, 5)])
    assert M.atoms == (Fraction(2, 5), Fraction(3, 5))
    with pytest.raises(DomainViolation):
        fg_minimalize([])
    with pytest.raises(DomainViolation):
        fg_minimalize([Fraction(0)])


@given(st.lists(fractions, min_size=1, max_size=4), st.integers(min_value=0, max_value=25))
@settings(max_examples=100, deadline=None)
def test_fg_lengths_match_naive(gens, k):
    M = fg_minimalize(gens)
    # probe a grid point likely to be a member, plus the atoms themselves
    q = k * M.atoms[0]
    assert set(M.length_set(q)) == naive_puiseux_lengths(M.atoms, q)
    for a in M.atoms:
        assert set(M.length_set(a)) == {1}


@given(st.lists(fractions, min_size=1, max_size=3), fractions)
@settings(max_examples=80, deadline=None)
def test_fg_scaling_invariance(gens, r):
    M = fg_minimalize(gens)
    q = M.atoms[0] + M.atoms[-1]
    S = M.scale(r)
    assert S.length_set(q * r) == M.length_set(q)
    assert S.contains(q * r) == M.contains(q)


def test_fg_membership_and_factorizations():
    M = FgPuiseux((Fraction(1, 3), Fraction(1, 2)))
    assert M.contains(Fraction(5, 6))
    assert Fraction(5, 6) in M
    assert not M.contains(Fraction(1, 6))
    assert not M.contains(Fraction(-1, 2))
    assert M.contains(0)
    facs = M.factorizations(Fraction(5, 6))
    assert [(f.counts, f.length) for f in facs] == [((1, 1), 2)]
    assert facs[0].value() == Fraction(5, 6)
    assert sorted(fg_length_set(M, Fraction(5, 6))) == [2]


def test_fg_worked_example():
    M = FgPuiseux((Fraction(1, 3), Fraction(1, 2)))
    # 1 = 2*(1/2) = 3*(1/3): lengths {2, 3}
    assert sorted(M.length_set(1)) == [2, 3]
    assert {f.counts for f in M.factorizations(1)} == {(0, 2), (3, 0)}
    assert M.length_set(Fraction(1, 7)) == frozenset()
    assert M.factorizations(Fraction(-1)) == ()


def test_to_numerical():
    M = FgPuiseux((Fraction(2, 27), Fraction(1, 3), Fraction(1, 2)))
    N, scale = M.to_numerical()
    assert N.atoms == (4, 18, 27)
    assert scale == 54
    assert set(M.length_set(1)) == set(N.length_set(54))


def test_prime_reciprocal_streams():
    Mp = PrimeReciprocal()
    assert Mp.stream.is_all_primes
    assert Mp.atoms_upto(7) == (
        Fraction(1, 2),
        Fraction(1, 3),
        Fraction(1, 5),
        Fraction(1, 7),
    )
    explicit = PrimeReciprocal(PrimeStream.explicit((2, 3, 5)))
    assert explicit.atoms_upto(10) == (Fraction(1, 2), Fraction(1, 3), Fraction(1, 5))


def test_mp_decompose_frozen():
    Mp = PrimeReciprocal()
    dec = mp_decompose(Mp, Fraction(5, 6))
    assert isinstance(dec, CanonicalDecomposition)
    assert dec.integer_part == 0
    assert dec.coeffs == ((2, 1), (3, 1))
    assert dec.coeff_sum == 2
    assert dec.value() == Fraction(5, 6)
    assert dec.to_json() == {"N": 0, "coeffs": {"2": 1, "3": 1}}

    dec = mp_decompose(Mp, Fraction(7, 6))
    assert (dec.integer_part, dec.coeffs) == (0, ((2, 1), (3, 2)))

    dec = mp_decompose(Mp, 2)
    assert (dec.integer_part, dec.coeffs) == (2, ())


def test_mp_decompose_rejections():
    Mp = PrimeReciprocal()
    nm = mp_decompose(Mp, Fraction(5, 4))
    assert isinstance(nm, NotMember)
    assert nm.reason == "p-adic valuation below -1"
    assert nm.details == {"prime": 2, "valuation": -2}

    nm = mp_decompose(Mp, Fraction(1, 6))
    assert isinstance(nm, NotMember)
    assert nm.reason == "fractional coefficients already exceed the value"

    small = PrimeReciprocal(PrimeStream.explicit((2, 3, 5)))
    nm = mp_decompose(small, Fraction(1, 7))
    assert isinstance(nm, NotMember)
    assert nm.details == {"prime": 7}

    with pytest.raises(DomainViolation):
        mp_decompose(Mp, Fraction(-1, 2))


@given(mp_members())
@settings(max_examples=120, deadline=None)
def test_mp_decompose_round_trip(q):
    Mp = PrimeReciprocal()
    dec = mp_decompose(Mp, q)
    assert isinstance(dec, CanonicalDecomposition)
    assert dec.value() == q
    assert all(0 < c < p for p, c in dec.coeffs)
    assert dec.integer_part >= 0
    assert mp_contains(Mp, q)


@given(mp_members(max_integer=2), mp_members(max_integer=2))
@settings(max_examples=100, deadline=None)
def test_mp_divisor_integer_part_monotone(q, r):
    # q divides q + r in the monoid, and carries only push N upward
    Mp = PrimeReciprocal()
    n_q = mp_decompose(Mp, q).integer_part
    n_sum = mp_decompose(Mp, q + r).integer_part
    assert n_q <= n_sum


def test_mp_length_set_shapes():
    Mp = PrimeReciprocal()
    assert mp_length_set(Mp, Fraction(5, 6)) == FiniteLengths(frozenset({2}))
    assert mp_length_set(Mp, Fraction(7, 6)) == FiniteLengths(frozenset({3}))
    L = mp_length_set(Mp, 1)
    assert isinstance(L, ShiftedLengths)
    assert (L.base, L.copies) == (0, 1)
    L = mp_length_set(Mp, Fraction(5, 2))
    assert (L.base, L.copies) == (1, 2)
    with pytest.raises(NotInMonoid) as info:
        mp_length_set(Mp, Fraction(5, 4))
    assert info.value.evidence["details"] == {"prime": 2, "valuation": -2}


def test_mp_realize():
    Mp = PrimeReciprocal()
    assert mp_realize(0, 2) == Fraction(5, 6)
    assert mp_realize(1, 1) == Fraction(3, 2)
    assert mp_realize(0, 0) == 0
    with pytest.raises(DomainViolation):
        mp_realize(-1, 0)


@given(st.integers(min_value=0, max_value=3), st.integers(min_value=0, max_value=5))
@settings(max_examples=40, deadline=None)
def test_mp_realize_round_trip(m, n):
    Mp = PrimeReciprocal()
    q = mp_realize(m, n, Mp)
    L = mp_length_set(Mp, q)
    if m == 0:
        assert L == FiniteLengths(frozenset({n}))
    else:
        assert (L.base, L.copies) == (n, m)


def test_symbolic_enumerate_frozen():
    stream = PrimeStream.primes()
    assert symbolic_enumerate(ShiftedLengths(0, 1, stream), 10) == (2, 3, 5, 7)
    assert symbolic_enumerate(ShiftedLengths(0, 2, stream), 10) == (4, 5, 6, 7, 8, 9, 10)
    assert symbolic_enumerate(ShiftedLengths(2, 0, stream), 10) == (2,)
    assert symbolic_enumerate(FiniteLengths(frozenset({2, 30})), 10) == (2,)
    assert symbolic_enumerate(ShiftedLengths(11, 1, stream), 10) == ()
    with pytest.raises(DomainViolation):
        symbolic_enumerate(FiniteLengths(frozenset({2})), 0)


@given(mp_members(max_integer=2))
@settings(max_examples=60, deadline=None)
def test_truncated_agrees_with_symbolic(q):
    # two routes: brute-force enumeration over atoms 1/p (p <= 13) versus
    # the closed form from the decomposition, compared below the cap where
    # the truncation is complete (every needed prime is <= 13)
    Mp = PrimeReciprocal()
    cap = 13
    got = {l for l in truncated_length_set(Mp, q, value_bound=13, cap=cap) if l <= cap}
    want = set(symbolic_enumerate(mp_length_set(Mp, q), cap))
    assert got == want


def test_truncated_composite_stream():
    Mp = PrimeReciprocal(PrimeStream.explicit((4, 9)))
    q = Fraction(1, 4) + Fraction(1, 9)
    assert truncated_length_set(Mp, q, value_bound=9, cap=20) == frozenset({2})
    assert truncated_contains(Mp, q, value_bound=9) is True
    assert truncated_contains(Mp, Fraction(1, 5), value_bound=9) is None
    assert truncated_contains(Mp, -1, value_bound=9) is False
    with pytest.raises(UnsupportedConfiguration):
        mp_decompose(Mp, q)
    with pytest.raises(UnsupportedConfiguration):
        mp_length_set(Mp, q)


def test_json_round_trips():
    M = FgPuiseux((Fraction(2, 27), Fraction(1, 3), Fraction(1, 2)))
    assert FgPuiseux.from_json(json.loads(json.dumps(M.to_json()))) == M

    for L in (
        FiniteLengths(frozenset({2, 3, 10})),
        ShiftedLengths(3, 2, PrimeStream.primes()),
        ShiftedLengths(0, 1, PrimeStream.explicit((2, 3, 5))),
    ):
        blob = json.loads(json.dumps(L.to_json()))
        assert symbolic_from_json(blob) == L
    with pytest.raises(DomainViolation):
        symbolic_from_json({"kind": "mystery"})
