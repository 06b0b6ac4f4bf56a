"""Ground representations: sets as bit vectors, families, exact arithmetic, IO.

Elements are 1-based: element ``e`` of the universe ``[n] = {1, ..., n}``
occupies bit ``e - 1`` of a Python int.  Python ints are arbitrary
precision, so one mask covers the whole supported universe range; the
hard cap ``MAX_UNIVERSE`` keeps enumeration and IO at desk scale.

All thresholds and measures are exact (``int`` / ``fractions.Fraction``).
No floating point is used anywhere a comparison is decided.
"""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from typing import Iterable, Iterator

MAX_UNIVERSE = 256


class FamilyFormatError(ValueError):
    """Malformed family input; carries the offending line (text) or index (JSON)."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ResourceLimitError(RuntimeError):
    """A configured cap (universe size, enumeration size, retry budget) was hit."""


def _check_universe(n: int) -> None:
    if n < 1:
        raise ValueError(f"universe size must be >= 1, got {n}")
    if n > MAX_UNIVERSE:
        raise ResourceLimitError(f"universe size {n} exceeds cap {MAX_UNIVERSE}")


class KSet:
    """An immutable subset of [n] stored as a bit vector with cached cardinality."""

    __slots__ = ("n", "mask", "card")

    def __init__(self, n: int, elements: Iterable[int] = ()):
        _check_universe(n)
        mask = 0
        for e in elements:
            if not 1 <= e <= n:
                raise ValueError(f"element {e} out of range 1..{n}")
            mask |= 1 << (e - 1)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "mask", mask)
        object.__setattr__(self, "card", mask.bit_count())

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "KSet":
        _check_universe(n)
        if mask < 0 or mask >> n:
            raise ValueError(f"mask {mask:#x} has bits outside 1..{n}")
        obj = object.__new__(cls)
        object.__setattr__(obj, "n", n)
        object.__setattr__(obj, "mask", mask)
        object.__setattr__(obj, "card", mask.bit_count())
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("KSet is immutable")

    def elements(self) -> tuple[int, ...]:
        m = self.mask
        out = []
        while m:
            low = m & -m
            out.append(low.bit_length())
            m ^= low
        return tuple(out)

    def __len__(self) -> int:
        return self.card

    def __contains__(self, e: int) -> bool:
        return 1 <= e <= self.n and bool(self.mask >> (e - 1) & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements())

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, KSet) and self.n == other.n and self.mask == other.mask
        )

    def __hash__(self) -> int:
        return hash((self.n, self.mask))

    def __lt__(self, other: "KSet") -> bool:
        if self.n != other.n:
            raise ValueError("cannot order sets over different universes")
        return self.mask < other.mask

    def __and__(self, other: "KSet") -> "KSet":
        self._require_same_universe(other)
        return KSet.from_mask(self.n, self.mask & other.mask)

    def __or__(self, other: "KSet") -> "KSet":
        self._require_same_universe(other)
        return KSet.from_mask(self.n, self.mask | other.mask)

    def __sub__(self, other: "KSet") -> "KSet":
        self._require_same_universe(other)
        return KSet.from_mask(self.n, self.mask & ~other.mask)

    def issubset(self, other: "KSet") -> bool:
        self._require_same_universe(other)
        return self.mask & ~other.mask == 0

    def isdisjoint(self, other: "KSet") -> bool:
        self._require_same_universe(other)
        return self.mask & other.mask == 0

    def intersection_size(self, other: "KSet") -> int:
        self._require_same_universe(other)
        return (self.mask & other.mask).bit_count()

    def _require_same_universe(self, other: "KSet") -> None:
        if self.n != other.n:
            raise ValueError(f"universe mismatch: {self.n} vs {other.n}")

    def __repr__(self) -> str:
        return f"KSet({self.n}, {{{', '.join(map(str, self.elements()))}}})"


class SetFamily:
    """A duplicate-free family over [n], canonically ordered by mask value.

    ``k`` declares uniformity: when present, every member must have
    cardinality ``k``; ``None`` means a general (possibly non-uniform)
    family.  Families are immutable after construction; operations
    return new families.
    """

    __slots__ = ("n", "k", "masks", "_mask_set", "_members")

    def __init__(self, n: int, sets: Iterable[KSet | Iterable[int]] = (), k: int | None = None):
        _check_universe(n)
        masks = set()
        for s in sets:
            if isinstance(s, KSet):
                if s.n != n:
                    raise ValueError(f"member universe {s.n} != family universe {n}")
                masks.add(s.mask)
            else:
                masks.add(KSet(n, s).mask)
        self._init(n, masks, k)

    def _init(self, n: int, masks: set[int], k: int | None) -> None:
        if k is not None:
            if k < 0:
                raise ValueError(f"uniformity must be >= 0, got {k}")
            for m in masks:
                if m.bit_count() != k:
                    raise ValueError(
                        f"member of size {m.bit_count()} in {k}-uniform family"
                    )
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "k", k)
        object.__setattr__(self, "masks", tuple(sorted(masks)))
        object.__setattr__(self, "_mask_set", frozenset(masks))
        object.__setattr__(self, "_members", None)

    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], k: int | None = None) -> "SetFamily":
        _check_universe(n)
        obj = object.__new__(cls)
        mask_set = set(masks)
        for m in mask_set:
            if m < 0 or m >> n:
                raise ValueError(f"mask {m:#x} has bits outside 1..{n}")
        obj._init(n, mask_set, k)
        return obj

    def __setattr__(self, name, value):
        raise AttributeError("SetFamily is immutable")

    @property
    def members(self) -> tuple[KSet, ...]:
        got = self._members
        if got is None:
            got = tuple(KSet.from_mask(self.n, m) for m in self.masks)
            object.__setattr__(self, "_members", got)
        return got

    @property
    def mask_set(self) -> frozenset[int]:
        return self._mask_set

    def contains_mask(self, mask: int) -> bool:
        return mask in self._mask_set

    def __len__(self) -> int:
        return len(self.masks)

    def __iter__(self) -> Iterator[KSet]:
        return iter(self.members)

    def __contains__(self, s: KSet) -> bool:
        return isinstance(s, KSet) and s.n == self.n and s.mask in self._mask_set

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SetFamily)
            and self.n == other.n
            and self.k == other.k
            and self._mask_set == other._mask_set
        )

    def __hash__(self) -> int:
        return hash((self.n, self.k, self._mask_set))

    def __repr__(self) -> str:
        return f"SetFamily(n={self.n}, k={self.k}, size={len(self.members)})"


def binom(n: int, k: int) -> int:
    """Exact binomial coefficient; 0 when k < 0 or k > n, error for n < 0."""
    if n < 0:
        raise ValueError(f"binom requires n >= 0, got n={n}")
    if k < 0 or k > n:
        return 0
    import math

    return math.comb(n, k)


def prefix_count(F: KSet, ell: int) -> int:
    """|F intersect [ell]| for 0 <= ell <= n."""
    if not 0 <= ell <= F.n:
        raise ValueError(f"prefix length {ell} out of range 0..{F.n}")
    return (F.mask & ((1 << ell) - 1)).bit_count()


def trace(family: SetFamily, X: KSet, S: KSet) -> SetFamily:
    """Members meeting S exactly in X, with X removed.

    The result lives on the complement of S: members keep their original
    labels (all in [n] minus S) and the universe size stays n.  For a
    k-uniform input the trace is (k - |X|)-uniform.
    """
    if X.n != family.n or S.n != family.n:
        raise ValueError("X and S must live on the family universe")
    if not X.issubset(S):
        raise ValueError("X must be a subset of S")
    xm, sm = X.mask, S.mask
    out = [m & ~xm for m in family.masks if m & sm == xm]
    k = None if family.k is None else family.k - X.card
    return SetFamily.from_masks(family.n, out, k=k)


def biased_measure(family: SetFamily, p: Fraction) -> Fraction:
    """Exact product-measure weight sum_{F} p^|F| (1-p)^(n-|F|)."""
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError(f"bias must lie strictly between 0 and 1, got {p}")
    n = family.n
    counts: dict[int, int] = {}
    for m in family.masks:
        c = m.bit_count()
        counts[c] = counts.get(c, 0) + 1
    q = 1 - p
    return sum((cnt * p**c * q ** (n - c) for c, cnt in counts.items()), Fraction(0))


def iter_k_masks(n: int, k: int) -> Iterator[int]:
    """Masks of all k-subsets of [n] in increasing order, via Gosper's hack."""
    _check_universe(n)
    if not 0 <= k <= n:
        raise ValueError(f"need 0 <= k <= n, got k={k}, n={n}")
    if k == 0:
        yield 0
        return
    v = (1 << k) - 1
    limit = 1 << n
    while v < limit:
        yield v
        u = v & -v
        t = v + u
        v = t | (((v ^ t) // u) >> 2)


def enumerate_k_subsets(n: int, k: int) -> Iterator[KSet]:
    """All k-subsets of [n] in canonical (increasing mask) order."""
    for m in iter_k_masks(n, k):
        yield KSet.from_mask(n, m)


def full_level(n: int, k: int) -> SetFamily:
    """The complete k-uniform family over [n]."""
    return SetFamily.from_masks(n, iter_k_masks(n, k), k=k)


# ---------------------------------------------------------------------------
# File formats
#
# Text format (".fam"):
#   n=<int> k=<int|*>          header; '*' marks a non-uniform family
#   1 2 5                      one set per line, strictly increasing elements
#   -                          a lone '-' denotes the empty set
#   blank lines and '#' comments are ignored
#
# JSON format: {"n": int, "k": int|null, "sets": [[int, ...], ...]}
#
# Both round-trip bit-exactly through parse/serialize.
# ---------------------------------------------------------------------------


def parse_family(text: str) -> SetFamily:
    """Parse the text family format; errors carry 1-based line numbers."""
    n = None
    k: int | None = None
    header_seen = False
    masks: list[int] = []
    seen: set[int] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            parts = line.split()
            if len(parts) != 2 or not parts[0].startswith("n=") or not parts[1].startswith("k="):
                raise FamilyFormatError(f"malformed header {line!r}", lineno)
            try:
                n = int(parts[0][2:])
            except ValueError:
                raise FamilyFormatError(f"malformed universe size {parts[0]!r}", lineno) from None
            ka = parts[1][2:]
            if ka == "*":
                k = None
            else:
                try:
                    k = int(ka)
                except ValueError:
                    raise FamilyFormatError(f"malformed uniformity {parts[1]!r}", lineno) from None
            if n < 1:
                raise FamilyFormatError(f"universe size must be >= 1, got {n}", lineno)
            if n > MAX_UNIVERSE:
                raise FamilyFormatError(f"universe size {n} exceeds cap {MAX_UNIVERSE}", lineno)
            if k is not None and not 0 <= k <= n:
                raise FamilyFormatError(f"uniformity {k} out of range 0..{n}", lineno)
            header_seen = True
            continue
        if line == "-":
            elems = []
        else:
            try:
                elems = [int(tok) for tok in line.split()]
            except ValueError:
                raise FamilyFormatError(f"non-integer element in {line!r}", lineno) from None
        mask = 0
        prev = 0
        for e in elems:
            if not 1 <= e <= n:
                raise FamilyFormatError(f"element {e} out of range 1..{n}", lineno)
            if e <= prev:
                raise FamilyFormatError(f"elements must be strictly increasing, got {e} after {prev}", lineno)
            prev = e
            mask |= 1 << (e - 1)
        if k is not None and len(elems) != k:
            raise FamilyFormatError(f"set of size {len(elems)} in {k}-uniform family", lineno)
        if mask in seen:
            raise FamilyFormatError(f"duplicate set {line!r}", lineno)
        seen.add(mask)
        masks.append(mask)
    if not header_seen:
        raise FamilyFormatError("missing header line 'n=<int> k=<int|*>'")
    return SetFamily.from_masks(n, masks, k=k)


def serialize_family(family: SetFamily) -> str:
    """Canonical text serialization; parse(serialize(F)) == F bit-exactly."""
    ka = "*" if family.k is None else str(family.k)
    lines = [f"n={family.n} k={ka}"]
    for member in family.members:
        lines.append(" ".join(map(str, member.elements())) if member.mask else "-")
    return "\n".join(lines) + "\n"


def family_to_json(family: SetFamily) -> dict:
    return {
        "n": family.n,
        "k": family.k,
        "sets": [list(m.elements()) for m in family.members],
    }


def family_from_json(obj: dict) -> SetFamily:
    try:
        n = obj["n"]
        k = obj.get("k")
        sets = obj["sets"]
    except (KeyError, TypeError, AttributeError):
        raise FamilyFormatError("JSON family must have keys 'n', 'k', 'sets'") from None
    if not isinstance(n, int):
        raise FamilyFormatError(f"universe size must be an integer, got {n!r}")
    if k is not None and not isinstance(k, int):
        raise FamilyFormatError(f"uniformity must be an integer or null, got {k!r}")
    masks = []
    seen = set()
    for idx, elems in enumerate(sets):
        try:
            ks = KSet(n, elems)
        except ValueError as exc:
            raise FamilyFormatError(f"set #{idx}: {exc}") from None
        if k is not None and ks.card != k:
            raise FamilyFormatError(f"set #{idx}: size {ks.card} in {k}-uniform family")
        if ks.mask in seen:
            raise FamilyFormatError(f"set #{idx}: duplicate set {list(elems)!r}")
        seen.add(ks.mask)
        masks.append(ks.mask)
    return SetFamily.from_masks(n, masks, k=k)


def load_family(path: str) -> SetFamily:
    """Read a family file, dispatching on extension (.json vs text)."""
    with open(path, "r", encoding="utf-8") as fh:
        data = fh.read()
    if str(path).endswith(".json"):
        return family_from_json(json.loads(data))
    return parse_family(data)


def save_family(family: SetFamily, path: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        if str(path).endswith(".json"):
            json.dump(family_to_json(family), fh, indent=1)
            fh.write("\n")
        else:
            fh.write(serialize_family(family))


def content_hash(family: SetFamily) -> str:
    """sha256 of the canonical text serialization."""
    return hashlib.sha256(serialize_family(family).encode("utf-8")).hexdigest()
