"""Bitmask subset helpers.

Subsets of a ground set {0, ..., n-1} are plain ints; bit j set means
element j is in the subset.
"""

from __future__ import annotations

from typing import Iterable, Iterator


def full_mask(n: int) -> int:
    return (1 << n) - 1


def mask_of(elements: Iterable[int]) -> int:
    m = 0
    for e in elements:
        m |= 1 << e
    return m


def elements(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def iter_submasks(mask: int) -> Iterator[int]:
    """All submasks of mask in descending numeric order, including mask and 0."""
    s = mask
    while True:
        yield s
        if s == 0:
            return
        s = (s - 1) & mask


def iter_submasks_ascending(mask: int) -> Iterator[int]:
    """All submasks of mask in ascending numeric order, including 0 and mask."""
    t = 0
    while True:
        yield t
        if t == mask:
            return
        t = (t - mask) & mask


def compress(mask: int, support: int) -> int:
    """Extract the bits of mask at the positions of support into a dense mask.

    Bit j of the result corresponds to the j-th lowest set bit of support.
    mask must be a submask of support.
    """
    out = 0
    j = 0
    while support:
        low = support & -support
        if mask & low:
            out |= 1 << j
        j += 1
        support ^= low
    return out


def expand(dense: int, support: int) -> int:
    """Inverse of compress: place bit j of dense at the j-th set bit of support."""
    out = 0
    while dense:
        low = support & -support
        if dense & 1:
            out |= low
        dense >>= 1
        support ^= low
    return out


def iter_size_k_submasks(mask: int, k: int) -> Iterator[int]:
    """Submasks of mask with exactly k bits, in ascending numeric order."""
    m = mask.bit_count()
    if k < 0 or k > m:
        return
    if k == 0:
        yield 0
        return
    positions = elements(mask)
    # Gosper's hack in the dense space, expanded back to the sparse positions.
    # Expansion is monotone, so numeric order is preserved.
    dense = (1 << k) - 1
    limit = 1 << m
    while dense < limit:
        out = 0
        d = dense
        while d:
            low = d & -d
            out |= 1 << positions[low.bit_length() - 1]
            d ^= low
        yield out
        c = dense & -dense
        r = dense + c
        dense = (((r ^ dense) >> 2) // c) | r


def iter_by_size_then_value(mask: int) -> Iterator[int]:
    """All submasks ordered by (popcount, numeric value) ascending."""
    for k in range(mask.bit_count() + 1):
        yield from iter_size_k_submasks(mask, k)
