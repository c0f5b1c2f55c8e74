"""Dispatch between the compiled enumeration kernels and the pure-Python ones.

The compiled module is used when it imported cleanly and every scalar in the
instance fits comfortably below 2**62 (the kernels add values to remainders
but never multiply two large quantities, so that bound is safe).  Larger
instances, or builds without the extension, run the arbitrary-precision
Python kernels with identical semantics.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from . import _kernel_py
from .errors import DomainViolation

try:
    from . import _kernel_c  # type: ignore[attr-defined]
except ImportError:  # extension not built
    _kernel_c = None

_GUARD = 2 ** 62
_MAX_COMPILED_ATOMS = 64
_mode = "auto"  # auto | pure | compiled


def set_backend(mode: str) -> None:
    """Force a backend: "auto" (default), "pure", or "compiled"."""
    global _mode
    if mode not in ("auto", "pure", "compiled"):
        raise DomainViolation(f"unknown backend {mode!r}")
    if mode == "compiled" and _kernel_c is None:
        raise DomainViolation("compiled kernels are not available in this build")
    _mode = mode


def compiled_available() -> bool:
    return _kernel_c is not None


def backend_for(values: Sequence[int], *scalars: int):
    if _mode == "pure":
        return _kernel_py
    if _kernel_c is None:
        return _kernel_py
    if _mode == "compiled":
        return _kernel_c
    if len(values) > _MAX_COMPILED_ATOMS:
        return _kernel_py
    if any(v >= _GUARD for v in values) or any(s >= _GUARD for s in scalars):
        return _kernel_py
    return _kernel_c


def _check_values(values: Iterable[int]) -> list[int]:
    vals = [int(v) for v in values]
    if any(v <= 0 for v in vals):
        raise DomainViolation("kernel values must be positive integers")
    return vals


def solutions(values: Sequence[int], target: int, cap: int | None = None) -> list[tuple[int, ...]]:
    """Count vectors c >= 0 with sum(c[i]*values[i]) == target, sum(c) <= cap.

    Rows come back in descending lexicographic order of the vector, in the
    value order given by the caller.
    """
    vals = _check_values(values)
    target = int(target)
    if cap is None:
        cap = target // min(vals) if vals and target > 0 else max(target, 0)
    return backend_for(vals, target, cap).solutions(vals, target, cap)


def lengths_dfs(values: Sequence[int], target: int, cap: int | None = None) -> set[int]:
    """The set of sum(c) over all solutions; cap bounds the lengths considered."""
    vals = _check_values(values)
    target = int(target)
    if cap is None:
        cap = target // min(vals) if vals and target > 0 else max(target, 0)
    return set(backend_for(vals, target, cap).lengths_dfs(vals, target, cap))


def exists(values: Sequence[int], target: int) -> bool:
    vals = _check_values(values)
    target = int(target)
    return bool(backend_for(vals, target).exists(vals, target))


def member_table(values: Sequence[int], bound: int) -> bytearray:
    vals = _check_values(values)
    bound = int(bound)
    if bound < 0:
        raise DomainViolation("member_table bound must be >= 0")
    if bound > 10 ** 8:
        raise DomainViolation("member_table bound too large; use exists()")
    return bytearray(backend_for(vals, bound).member_table(vals, bound))


def probe_candidate(values: Sequence[int], xmin: int, xmax: int, target: int) -> int:
    """One realization-search step: minimality check plus mask-table scan.

    Returns -2 when values is not minimal, the first x in [xmin, xmax] whose
    length mask equals target, or -1 when no such x exists.  target must
    stay below bit 63 (no saturated masks as search targets).
    """
    vals = _check_values(values)
    xmin, xmax, target = int(xmin), int(xmax), int(target)
    if target < 0 or target >= 1 << 63:
        raise DomainViolation("probe target mask must use bits 0..62")
    if xmax > 10 ** 7:
        raise DomainViolation("probe_candidate xmax too large")
    return backend_for(vals, xmax).probe_candidate(vals, xmin, xmax, target)


def lengths_table64(values: Sequence[int], xmax: int) -> list[int]:
    """Length-set bitmask rows for 0..xmax, saturated at bit 63.

    Only trustworthy for exact comparison against masks below bit 63; rows
    with bit 63 set mean "a length >= 63 exists" and compare unequal to any
    small target mask, which is exactly what the realization search needs.
    """
    vals = _check_values(values)
    xmax = int(xmax)
    if xmax < 0:
        raise DomainViolation("lengths_table64 xmax must be >= 0")
    if xmax > 10 ** 7:
        raise DomainViolation("lengths_table64 xmax too large")
    return list(backend_for(vals, xmax).lengths_table64(vals, xmax))
