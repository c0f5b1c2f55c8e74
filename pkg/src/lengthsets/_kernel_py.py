"""Pure-Python enumeration kernels, arbitrary precision.

Exact mirror of the compiled kernels in _kernel_c.  The dispatcher in
kernels.py picks the compiled module when it is importable and the instance
fits in 64-bit range, and falls back here otherwise.  All functions assume
strictly positive atom values; the dispatcher validates.

The count-vector DFS walks indices left to right, trying the highest count
first, so rows come out in descending lexicographic order of the vector.
Two prunes keep the tree tight:
  * remainder must be divisible by gcd(values[i:]),
  * the remaining count budget must cover remainder / max(values[i:]).
"""

from __future__ import annotations

from math import gcd


def _suffix_tables(values: list[int]) -> tuple[list[int], list[int]]:
    k = len(values)
    sgcd = [0] * (k + 1)
    smax = [1] * (k + 1)
    for i in range(k - 1, -1, -1):
        sgcd[i] = gcd(sgcd[i + 1], values[i])
        smax[i] = max(smax[i + 1], values[i])
    return sgcd, smax


def solutions(values, target, cap):
    """All count vectors c >= 0 with sum(c[i]*values[i]) = target, sum(c) <= cap."""
    values = list(values)
    k = len(values)
    if target < 0 or cap < 0:
        return []
    if k == 0:
        return [()] if target == 0 else []
    sgcd, smax = _suffix_tables(values)
    out: list[tuple[int, ...]] = []
    counts = [0] * k

    def walk(i: int, r: int, budget: int) -> None:
        if r == 0:
            out.append(tuple(counts[:i]) + (0,) * (k - i))
            return
        if i == k:
            return
        if r % sgcd[i] != 0:
            return
        if (r + smax[i] - 1) // smax[i] > budget:
            return
        v = values[i]
        if i == k - 1:
            if r % v == 0 and r // v <= budget:
                counts[i] = r // v
                out.append(tuple(counts))
            return
        for c in range(min(r // v, budget), -1, -1):
            counts[i] = c
            walk(i + 1, r - c * v, budget - c)
        counts[i] = 0

    walk(0, target, cap)
    return out


def lengths_dfs(values, target, cap):
    """Set of lengths sum(c) over solutions of the same system."""
    values = list(values)
    k = len(values)
    found: set[int] = set()
    if target < 0 or cap < 0:
        return found
    if target == 0:
        found.add(0)
        return found
    if k == 0:
        return found
    sgcd, smax = _suffix_tables(values)

    def walk(i: int, r: int, used: int) -> None:
        if r == 0:
            found.add(used)
            return
        if i == k:
            return
        if r % sgcd[i] != 0:
            return
        budget = cap - used
        if (r + smax[i] - 1) // smax[i] > budget:
            return
        v = values[i]
        if i == k - 1:
            if r % v == 0 and used + r // v <= cap:
                found.add(used + r // v)
            return
        for c in range(min(r // v, budget), -1, -1):
            walk(i + 1, r - c * v, used + c)

    walk(0, target, 0)
    return found


def exists(values, target):
    """Is target representable at all as a nonnegative combination?"""
    values = list(values)
    k = len(values)
    if target < 0:
        return False
    if target == 0:
        return True
    if k == 0:
        return False
    sgcd, smax = _suffix_tables(values)

    def walk(i: int, r: int) -> bool:
        if r == 0:
            return True
        if i == k:
            return False
        if r % sgcd[i] != 0:
            return False
        v = values[i]
        if i == k - 1:
            return r % v == 0
        for c in range(r // v, -1, -1):
            if walk(i + 1, r - c * v):
                return True
        return False

    return walk(0, target)


def member_table(values, bound):
    """bytearray t with t[x] = 1 iff x is a nonnegative combination, 0 <= x <= bound."""
    table = bytearray(bound + 1)
    table[0] = 1
    values = [v for v in values if v <= bound]
    for x in range(1, bound + 1):
        for v in values:
            if v <= x and table[x - v]:
                table[x] = 1
                break
    return table


_BIT63 = 1 << 63
_MASK64 = (1 << 64) - 1


def lengths_table64(values, xmax):
    """Length-set bitmasks for every x in 0..xmax, saturated at bit 63.

    Bit L of row x (L <= 62) is set iff x has a factorization of length L;
    bit 63 means "some factorization of length >= 63 exists".  Rows are
    plain ints so callers can compare against target masks directly.
    """
    table = [0] * (xmax + 1)
    table[0] = 1
    values = [v for v in values if v <= xmax]
    for x in range(1, xmax + 1):
        acc = 0
        for v in values:
            if v <= x:
                s = table[x - v]
                if s:
                    acc |= ((s << 1) | (s & _BIT63)) & _MASK64
        table[x] = acc
    return table


def probe_candidate(values, xmin, xmax, target):
    """Fused realization-search step over one candidate generating set.

    Returns -2 when values is not a minimal generating set, else the first
    x in [xmin, xmax] whose exact length mask equals target, else -1.
    """
    k = len(values)
    if k == 0 or xmax < 0:
        return -1
    if k > 1:
        for i in range(k):
            others = list(values[:i]) + list(values[i + 1:])
            if exists(others, values[i]):
                return -2
    masks = lengths_table64(values, xmax)
    for x in range(max(xmin, 0), xmax + 1):
        if masks[x] == target:
            return x
    return -1
