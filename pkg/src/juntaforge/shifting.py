"""Compression (shift) operators on sets, families, and juntas.

The (u<-v) shift replaces v by u in a member when u is absent and v
present; on collision (the shifted image already in the family) the
original member is retained, so family size is always preserved.
"""

from __future__ import annotations

from .setcore import KSet, SetFamily


def _check_pair(u: int, v: int, n: int) -> None:
    if not 1 <= u < v <= n:
        raise ValueError(f"need 1 <= u < v <= n, got u={u}, v={v}, n={n}")


def shift_set(A: KSet, u: int, v: int) -> KSet:
    """(A \\ {v}) | {u} when v in A and u not in A, else A unchanged."""
    _check_pair(u, v, A.n)
    um, vm = 1 << (u - 1), 1 << (v - 1)
    if A.mask & vm and not A.mask & um:
        return KSet.from_mask(A.n, (A.mask & ~vm) | um)
    return A


def _shift_masks(masks: frozenset[int] | set[int], u: int, v: int) -> set[int]:
    um, vm = 1 << (u - 1), 1 << (v - 1)
    out = set()
    for m in masks:
        if m & vm and not m & um:
            moved = (m & ~vm) | um
            out.add(m if moved in masks else moved)
        else:
            out.add(m)
    return out


def shift_family(F: SetFamily, u: int, v: int) -> SetFamily:
    """Apply the (u<-v) shift to every member, retaining originals on collision."""
    _check_pair(u, v, F.n)
    return SetFamily.from_masks(F.n, _shift_masks(F.mask_set, u, v), k=F.k)


def make_shifted(F: SetFamily) -> SetFamily:
    """Iterate (u<-v) shifts in lexicographic pair order until a fixed point.

    Restarts from (1,2) after any change.  Terminates because the element
    sum over all members strictly decreases at every effective shift.
    """
    masks = set(F.mask_set)
    n = F.n
    changed = True
    while changed:
        changed = False
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                out = _shift_masks(masks, u, v)
                if out != masks:
                    masks = out
                    changed = True
                    break
            if changed:
                break
    return SetFamily.from_masks(n, masks, k=F.k)


def make_shifted_together(families: list[SetFamily]) -> list[SetFamily]:
    """Shift several families simultaneously (same pair applied to all) to a joint fixed point.

    Applying identical shifts in lockstep preserves cross properties
    (cross-t-intersecting, cross-dependence, cross-union) that a
    per-family compression would not.
    """
    if not families:
        return []
    n = families[0].n
    if any(f.n != n for f in families):
        raise ValueError("families must share a universe")
    mask_sets = [set(f.mask_set) for f in families]
    changed = True
    while changed:
        changed = False
        for u in range(1, n):
            for v in range(u + 1, n + 1):
                outs = [_shift_masks(ms, u, v) for ms in mask_sets]
                if any(o != ms for o, ms in zip(outs, mask_sets)):
                    mask_sets = [set(o) for o in outs]
                    changed = True
                    break
            if changed:
                break
    return [
        SetFamily.from_masks(n, ms, k=f.k) for ms, f in zip(mask_sets, families)
    ]


def is_shifted(F: SetFamily) -> bool:
    """True iff the k-uniform family is a fixed point of every (u<-v) shift.

    Equivalent to closure under coordinatewise domination of sorted
    element lists, at O(n^2 |F|) instead of enumerating dominated sets.
    """
    if F.k is None:
        raise ValueError("shiftedness test is defined for k-uniform families only")
    masks = F.mask_set
    n = F.n
    for m in masks:
        rest = m
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length()
            below = (low - 1) & ~m  # candidate targets u < v not already present
            while below:
                ulow = below & -below
                below ^= ulow
                if ((m & ~low) | ulow) not in masks:
                    return False
    return True


def shift_junta(center: KSet, defining: SetFamily, u: int, v: int) -> tuple[KSet, SetFamily]:
    """Shift a junta: move the center and the defining family by the same pair.

    For a shifted family the residual against the shifted junta never
    exceeds the residual against the original (tested, not assumed).
    """
    if defining.n != center.n:
        raise ValueError("defining family must live on the center's universe")
    for d in defining.masks:
        if d & ~center.mask:
            raise ValueError("defining family not supported on the center")
    new_center = shift_set(center, u, v)
    new_defining = shift_family(defining, u, v)
    for d in new_defining.masks:
        # unreachable by case analysis of the shift; guards the support invariant
        if d & ~new_center.mask:
            raise AssertionError("shift moved a defining set off the center")
    return new_center, new_defining
