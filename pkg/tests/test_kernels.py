import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lengthsets import kernels
from lengthsets import _kernel_py as pure
from lengthsets.errors import DomainViolation
from oracles import naive_factorizations, naive_length_set

compiled = pytest.importorskip("lengthsets._kernel_c") if kernels.compiled_available() else None

gen_sets = st.lists(st.integers(min_value=1, max_value=40), min_size=1, max_size=5).map(
    lambda xs: sorted(set(xs))
)


def test_backend_dispatch():
    assert kernels.compiled_available() in (True, False)
    kernels.set_backend("pure")
    try:
        assert kernels.backend_for([2, 3], 10) is pure
    finally:
        kernels.set_backend("auto")
    with pytest.raises(DomainViolation):
        kernels.set_backend("vectorized")


def test_solutions_matches_naive():
    for gens, x in [([3, 4, 5], 10), ([2, 3], 6), ([9, 89], 703 + 9), ([1], 5), ([6, 10, 15], 31)]:
        rows = kernels.solutions(sorted(gens, reverse=True), x)
        want = set(naive_factorizations(gens, x))
        # kernel rows align to the descending value order handed in
        got = {tuple(reversed(r)) for r in rows}
        assert got == want, (gens, x)


@given(gen_sets, st.integers(min_value=0, max_value=120))
@settings(max_examples=120)
def test_lengths_dfs_matches_naive(gens, x):
    got = kernels.lengths_dfs(sorted(gens, reverse=True), x, x // min(gens))
    assert got == naive_length_set(gens, x)


@given(gen_sets, st.integers(min_value=0, max_value=200))
@settings(max_examples=120)
def test_exists_matches_naive(gens, x):
    assert kernels.exists(gens, x) == bool(naive_length_set(gens, x))


@given(gen_sets, st.integers(min_value=1, max_value=300))
@settings(max_examples=60)
def test_member_table_matches_exists(gens, bound):
    table = kernels.member_table(gens, bound)
    assert len(table) == bound + 1
    for x in range(bound + 1):
        assert bool(table[x]) == kernels.exists(gens, x)


def test_lengths_table64_bits():
    masks = kernels.lengths_table64([2, 3], 12)
    for x in range(13):
        want = 0
        for l in naive_length_set([2, 3], x):
            want |= 1 << l
        assert masks[x] == want, x


def test_lengths_table64_saturates_past_62():
    masks = kernels.lengths_table64([1], 70)
    assert masks[70] & (1 << 63)  # length 70 cannot be stored exactly
    assert masks[40] == 1 << 40


@pytest.mark.skipif(not kernels.compiled_available(), reason="no compiled extension")
@given(gen_sets, st.integers(min_value=0, max_value=150))
@settings(max_examples=150)
def test_compiled_equals_pure(gens, x):
    desc = sorted(gens, reverse=True)
    cap = x // min(gens) if gens else 0
    from lengthsets import _kernel_c as comp

    assert sorted(comp.solutions(desc, x, cap)) == sorted(pure.solutions(desc, x, cap))
    assert comp.lengths_dfs(desc, x, cap) == pure.lengths_dfs(desc, x, cap)
    assert comp.exists(gens, x) == pure.exists(gens, x)
    assert list(comp.member_table(gens, x)) == list(pure.member_table(gens, x))
    assert list(comp.lengths_table64(gens, x)) == list(pure.lengths_table64(gens, x))


@pytest.mark.skipif(not kernels.compiled_available(), reason="no compiled extension")
@given(
    gen_sets,
    st.integers(min_value=0, max_value=60),
    st.integers(min_value=0, max_value=120),
    st.integers(min_value=0, max_value=2**40),
)
@settings(max_examples=150)
def test_probe_candidate_compiled_equals_pure(gens, xmin, xmax, target):
    from lengthsets import _kernel_c as comp

    assert comp.probe_candidate(gens, xmin, xmax, target) == pure.probe_candidate(
        gens, xmin, xmax, target
    )


def test_probe_candidate_semantics():
    # (2,4) regenerates <2>: not minimal
    assert kernels.probe_candidate([2, 4], 0, 20, 0b100) == -2
    # first x whose length set is exactly {2} in <2,3> is 4
    assert kernels.probe_candidate([2, 3], 0, 30, 0b100) == 4
    # lengths {2,3}: first x is 6 (2+2+2 = 3+3)
    mask = (1 << 2) | (1 << 3)
    assert kernels.probe_candidate([2, 3], 0, 30, mask) == 6
    # nothing matches an impossible mask in range
    assert kernels.probe_candidate([2, 3], 0, 30, 1 << 50) == -1
    # xmin skips earlier hits: lengths {3,4} occur at x=8 and x=9
    mask34 = (1 << 3) | (1 << 4)
    assert kernels.probe_candidate([2, 3], 0, 30, mask34) == 8
    assert kernels.probe_candidate([2, 3], 9, 30, mask34) == 9


def test_kernel_guards():
    with pytest.raises(DomainViolation):
        kernels.solutions([0, 3], 5)
    with pytest.raises(DomainViolation):
        kernels.exists([-2], 4)
    with pytest.raises(DomainViolation):
        kernels.member_table([2, 3], 10**9)
    with pytest.raises(DomainViolation):
        kernels.probe_candidate([2, 3], 0, 10**8, 4)
    with pytest.raises(DomainViolation):
        kernels.probe_candidate([2, 3], 0, 10, -1)
