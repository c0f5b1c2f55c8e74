"""First-principles oracles used across the test suite.

Everything here is written directly from definitions (recursive
enumeration, trial division, array scans) and never calls the package's
own computational paths, so tests can compare two independent routes.
"""

from fractions import Fraction
from math import gcd, lcm


def naive_factorizations(gens, x):
    """All count vectors over ascending gens summing to x, by recursion."""
    gens = sorted(int(g) for g in gens)
    out = []

    def rec(i, rem, counts):
        if i == len(gens) - 1:
            g = gens[i]
            if rem % g == 0:
                out.append(tuple(counts + [rem // g]))
            return
        g = gens[i]
        for c in range(rem // g + 1):
            rec(i + 1, rem - c * g, counts + [c])

    if x < 0:
        return []
    if x == 0:
        return [tuple([0] * len(gens))]
    rec(0, x, [])
    return out


def naive_length_set(gens, x):
    return {sum(v) for v in naive_factorizations(gens, x)}


def naive_contains(gens, x):
    return bool(naive_factorizations(gens, x))


def naive_puiseux_lengths(atoms, q):
    """Length set over rational atoms by clearing denominators first."""
    atoms = [Fraction(a) for a in atoms]
    q = Fraction(q)
    D = lcm(q.denominator, *(a.denominator for a in atoms))
    vals = [a.numerator * (D // a.denominator) for a in atoms]
    return naive_length_set(vals, q.numerator * (D // q.denominator))


def naive_is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def frobenius_gap_scan(s: int, t: int) -> int:
    """Largest integer unreachable as xs + yt, by a boolean array scan."""
    assert gcd(s, t) == 1 and s > 1 and t > 1
    bound = s * t + 1
    reach = [False] * (bound + 1)
    reach[0] = True
    for v in (s, t):
        for i in range(v, bound + 1):
            if reach[i - v]:
                reach[i] = True
    return max(i for i in range(bound + 1) if not reach[i])


# reciprocal-atom oracle: multisets of atoms 1/p summing to q.  Only
# primes <= 37 can appear in a factorization of total length <= 40 (a
# prime p contributes multiples of p copies once denominators clear).
ORACLE_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
_D = 1
for _p in ORACLE_PRIMES:
    _D *= _p
_UNIT = {p: _D // p for p in ORACLE_PRIMES}
_INV = {p: pow(_D // p, -1, p) for p in ORACLE_PRIMES}


def reciprocal_lengths(q, cap: int = 40) -> set:
    """Brute-force length set of q over atoms {1/p : p prime}, lengths <= cap.

    Integer DFS over multiplicity vectors: at each prime the multiplicity
    is forced modulo p by the p-adic residue of the remainder, and the
    remaining value must fit inside what the remaining budget can reach.
    """
    if cap > 40:
        raise ValueError("oracle is exact only for caps <= 40")
    q = Fraction(q)
    R = q * _D
    if R.denominator != 1 or R < 0:
        return set()
    R = R.numerator
    ps = ORACLE_PRIMES[::-1]
    suffix_max = [0] * (len(ps) + 1)
    for i in range(len(ps) - 1, -1, -1):
        suffix_max[i] = max(_UNIT[ps[i]], suffix_max[i + 1])
    out: set[int] = set()

    def rec(i, rem, used):
        if i == len(ps):
            if rem == 0:
                out.add(used)
            return
        p = ps[i]
        m = (rem * _INV[p]) % p
        u = _UNIT[p]
        while True:
            nrem = rem - m * u
            nused = used + m
            if nrem < 0 or nused > cap:
                break
            if nrem <= (cap - nused) * suffix_max[i + 1]:
                rec(i + 1, nrem, nused)
            m += p

    rec(0, R, 0)
    return out


def prime_block_lengths(base_atoms, groups, q, cap=200):
    """Exhaustive lengths of q over base atoms plus prime-denominator blocks.

    groups maps a prime p to the numerators n of its atoms n/p.  The group
    denominators must be pairwise coprime and coprime to every base-atom
    denominator; then in any factorization of q each block's contribution
    is forced to be a nonnegative integer (its numerator sum must vanish
    mod p, since no other atom can clear that p).  So: enumerate each
    block's (integer value, length) options directly, then factor the
    rational remainder over the base atoms by plain recursion.
    """
    q = Fraction(q)
    base = [Fraction(a) for a in base_atoms]
    base_den = lcm(*(a.denominator for a in base)) if base else 1
    primes = sorted(groups)
    for i, p in enumerate(primes):
        assert naive_is_prime(p) and gcd(p, base_den) == 1
        for p2 in primes[i + 1:]:
            assert gcd(p, p2) == 1

    def block_options(p, nums):
        opts = set()
        top = int(q * p)

        def rec(i, num_total, length):
            if i == len(nums):
                if num_total % p == 0:
                    opts.add((num_total // p, length))
                return
            n = nums[i]
            c = 0
            while num_total + c * n <= top and length + c <= cap:
                rec(i + 1, num_total + c * n, length + c)
                c += 1

        rec(0, 0, 0)
        return sorted(opts)

    per_block = [block_options(p, groups[p]) for p in primes]
    out = set()

    def combine(i, rem, length):
        if rem < 0 or length > cap:
            return
        if i == len(per_block):
            for l in naive_puiseux_lengths(base, rem):
                if length + l <= cap:
                    out.add(length + l)
            return
        for val, blen in per_block[i]:
            combine(i + 1, rem - val, length + blen)

    combine(0, q, 0)
    return out
