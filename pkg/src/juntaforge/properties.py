"""Decision procedures for the family properties the toolkit manipulates.

Every checker decides its property exactly (integer/rational arithmetic
only) and, where a property can fail, returns the canonically-first
violating transversal as a witness.  Hypotheses such as "shifted" or
"cross-dependent" are the caller's responsibility: each predicate tests
only its own conclusion, and the verify-theorem drivers compose
hypothesis checks with conclusion checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Sequence

from .setcore import KSet, SetFamily, binom, enumerate_k_subsets, prefix_count


@dataclass(frozen=True)
class CheckResult:
    """Verdict plus the canonically-first witness when the property fails."""

    ok: bool
    witness: tuple[KSet, ...] | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class HittingSystem:
    """Weighted prefix system: weights alpha_i, offset q, level set S.

    A transversal (F_1, ..., F_s) "hits" when some level l in S satisfies
    sum_i alpha_i |F_i intersect [l]| >= l + q.  ``levels=None`` means all
    of [n] at check time.  ``sizes`` carries the uniformities k_i
    (uniform mode); ``biases`` carries p_i (biased mode).
    """

    alphas: tuple[Fraction, ...]
    q: Fraction
    levels: tuple[int, ...] | None = None
    sizes: tuple[int, ...] | None = None
    biases: tuple[Fraction, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(Fraction(a) for a in self.alphas))
        object.__setattr__(self, "q", Fraction(self.q))
        if len(self.alphas) < 2:
            raise ValueError("a hitting system needs s >= 2 weights")
        if any(a <= 0 for a in self.alphas):
            raise ValueError("weights must be positive")
        if self.q < 0:
            raise ValueError("offset q must be non-negative")
        if self.levels is not None:
            lv = tuple(sorted(set(self.levels)))
            if not lv:
                raise ValueError("level set must be nonempty")
            if lv[0] < 1:
                raise ValueError("levels must be positive integers")
            object.__setattr__(self, "levels", lv)
        if self.biases is not None:
            bs = tuple(Fraction(b) for b in self.biases)
            if len(bs) != len(self.alphas):
                raise ValueError("biases must match weight arity")
            if any(not 0 < b < 1 for b in bs):
                raise ValueError("biases must lie strictly between 0 and 1")
            object.__setattr__(self, "biases", bs)
        if self.sizes is not None and len(self.sizes) != len(self.alphas):
            raise ValueError("sizes must match weight arity")

    @property
    def s(self) -> int:
        return len(self.alphas)

    def sigma(self) -> Fraction:
        """sum_i alpha_i k_i (uniform mode) or sum_i alpha_i p_i (biased mode)."""
        if self.sizes is not None:
            return sum((a * k for a, k in zip(self.alphas, self.sizes)), Fraction(0))
        if self.biases is not None:
            return sum((a * p for a, p in zip(self.alphas, self.biases)), Fraction(0))
        raise ValueError("sigma needs per-family sizes or biases")

    def rates(self) -> tuple[Fraction, ...]:
        """The split thresholds k_i (as fractions) or p_i, by mode."""
        if self.sizes is not None:
            return tuple(Fraction(k) for k in self.sizes)
        if self.biases is not None:
            return self.biases
        raise ValueError("rates need per-family sizes or biases")


def _common_universe(families: Sequence[SetFamily]) -> int:
    if not families:
        raise ValueError("need at least one family")
    n = families[0].n
    if any(f.n != n for f in families):
        raise ValueError("families must share a universe")
    return n


def are_cross_t_intersecting(A: SetFamily, B: SetFamily, t: int) -> CheckResult:
    """True iff |a intersect b| >= t for every a in A, b in B."""
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    _common_universe([A, B])
    n = A.n
    b_masks = B.masks
    for am in A.masks:
        for bm in b_masks:
            if (am & bm).bit_count() < t:
                return CheckResult(False, (KSet.from_mask(n, am), KSet.from_mask(n, bm)))
    return CheckResult(True)


def is_cross_dependent(families: Sequence[SetFamily]) -> CheckResult:
    """True iff no pairwise-disjoint transversal (rainbow matching) exists.

    Backtracking over families in index order, candidates in canonical
    order, pruning branches whose running union already meets the next
    candidate; failed (depth, union) states are memoized.
    """
    n = _common_universe(families)
    if len(families) < 2:
        raise ValueError("cross-dependence needs s >= 2 families")
    masks_per = [f.masks for f in families]
    s = len(families)
    dead: set[tuple[int, int]] = set()

    def search(i: int, union: int):
        if i == s:
            return ()
        key = (i, union)
        if key in dead:
            return None
        for m in masks_per[i]:
            if m & union:
                continue
            rest = search(i + 1, union | m)
            if rest is not None:
                return (m,) + rest
        dead.add(key)
        return None

    found = search(0, 0)
    if found is None:
        return CheckResult(True)
    return CheckResult(False, tuple(KSet.from_mask(n, m) for m in found))


def check_cross_union(families: Sequence[SetFamily], q: int) -> CheckResult:
    """True iff every transversal satisfies |F_1 u ... u F_s| <= k_1 + ... + k_s - q."""
    n = _common_universe(families)
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    ks = []
    for f in families:
        if f.k is None:
            raise ValueError("cross-union check needs k-uniform families")
        ks.append(f.k)
    bound = sum(ks) - q
    masks_per = [f.masks for f in families]
    s = len(families)
    future = [sum(ks[i:]) for i in range(s + 1)]
    dead: set[tuple[int, int]] = set()

    def search(i: int, union: int):
        # every completion already obeys the bound: prune
        if union.bit_count() + future[i] <= bound:
            return None
        # the union can only grow, so exceeding the bound is final
        if union.bit_count() > bound:
            return tuple(masks_per[j][0] for j in range(i, s))
        if i == s:
            return None
        key = (i, union)
        if key in dead:
            return None
        for m in masks_per[i]:
            rest = search(i + 1, union | m)
            if rest is not None:
                return (m,) + rest
        dead.add(key)
        return None

    if any(len(f) == 0 for f in families):
        return CheckResult(True)
    found = search(0, 0)
    if found is None:
        return CheckResult(True)
    return CheckResult(False, tuple(KSet.from_mask(n, m) for m in found))


def check_cross_agreeing(families: Sequence[SetFamily], t: int) -> CheckResult:
    """True iff every transversal has |F_1 intersect ... intersect F_s| >= t."""
    n = _common_universe(families)
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    masks_per = [f.masks for f in families]
    s = len(families)
    dead: set[tuple[int, int]] = set()

    def search(i: int, inter: int):
        # the intersection only shrinks, so dropping below t is final
        if inter.bit_count() < t:
            return tuple(masks_per[j][0] for j in range(i, s))
        if i == s:
            return None
        key = (i, inter)
        if key in dead:
            return None
        for m in masks_per[i]:
            rest = search(i + 1, inter & m)
            if rest is not None:
                return (m,) + rest
        dead.add(key)
        return None

    if any(len(f) == 0 for f in families):
        return CheckResult(True)
    found = search(0, (1 << n) - 1)
    if found is None:
        return CheckResult(True)
    return CheckResult(False, tuple(KSet.from_mask(n, m) for m in found))


def check_hitting(system: HittingSystem, families: Sequence[SetFamily]) -> CheckResult:
    """True iff every transversal hits the weighted prefix hyperplane at some level.

    The violation search backtracks over distinct prefix-count profiles
    (vectors of |F intersect [l]| over the level set) rather than raw
    members; a branch is abandoned once even minimal completions hit at
    some level, and when even maximal completions miss every level the
    canonical-first completion is an immediate witness.  Comparisons are
    exact after scaling by the common denominator of the weights.
    """
    n = _common_universe(families)
    if len(families) != system.s:
        raise ValueError(f"system has {system.s} weights but {len(families)} families given")
    if any(len(f) == 0 for f in families):
        return CheckResult(True)
    if system.levels is None:
        levels = tuple(range(1, n + 1))
    else:
        if system.levels[-1] > n:
            raise ValueError(f"level {system.levels[-1]} outside universe [{n}]")
        levels = system.levels
    s = system.s
    denom = lcm(system.q.denominator, *(a.denominator for a in system.alphas))
    weights = [int(a * denom) for a in system.alphas]
    qd = int(system.q * denom)
    targets = [denom * l + qd for l in levels]
    nl = len(levels)
    pmasks = [(1 << l) - 1 for l in levels]

    profiles: list[list[tuple[tuple[int, ...], int]]] = []
    for i, f in enumerate(families):
        seen: dict[tuple[int, ...], int] = {}
        for m in f.masks:
            prof = tuple(weights[i] * (m & pm).bit_count() for pm in pmasks)
            if prof not in seen:
                seen[prof] = m
        profiles.append(list(seen.items()))

    # per-level minimum / maximum weighted prefix contribution of families i..s-1
    min_tail = [[0] * nl for _ in range(s + 1)]
    max_tail = [[0] * nl for _ in range(s + 1)]
    for i in range(s - 1, -1, -1):
        for li in range(nl):
            col = [prof[li] for prof, _ in profiles[i]]
            min_tail[i][li] = min(col) + min_tail[i + 1][li]
            max_tail[i][li] = max(col) + max_tail[i + 1][li]

    first_member = [f.masks[0] for f in families]
    dead: set[tuple[int, tuple[int, ...]]] = set()

    def search(i: int, sums: tuple[int, ...]):
        if any(sums[li] + min_tail[i][li] >= targets[li] for li in range(nl)):
            return None  # some level is hit by every completion
        if i == s:
            return ()
        if all(sums[li] + max_tail[i][li] < targets[li] for li in range(nl)):
            return tuple(first_member[j] for j in range(i, s))
        key = (i, sums)
        if key in dead:
            return None
        for prof, rep in profiles[i]:
            rest = search(i + 1, tuple(sums[li] + prof[li] for li in range(nl)))
            if rest is not None:
                return (rep,) + rest
        dead.add(key)
        return None

    found = search(0, (0,) * nl)
    if found is None:
        return CheckResult(True)
    return CheckResult(False, tuple(KSet.from_mask(n, m) for m in found))


def has_property_t(F: KSet, t_prime: int) -> bool:
    """True iff |F intersect [t'+2i]| >= t'+i for some i >= 0 (walk touches the diagonal)."""
    if t_prime < 1:
        raise ValueError(f"need t' >= 1, got {t_prime}")
    i = 0
    while t_prime + 2 * i <= F.n and t_prime + i <= F.card:
        if prefix_count(F, t_prime + 2 * i) >= t_prime + i:
            return True
        i += 1
    return False


def count_property_t(n: int, k: int, t_prime: int) -> int:
    """Brute-force count of k-subsets of [n] with the diagonal-touching property."""
    if not 1 <= t_prime <= k <= n:
        raise ValueError(f"need 1 <= t' <= k <= n, got t'={t_prime}, k={k}, n={n}")
    return sum(1 for F in enumerate_k_subsets(n, k) if has_property_t(F, t_prime))


def dichotomy_check(A: SetFamily, B: SetFamily, t_prime: int) -> bool:
    """All of A has the t' property, or all of B has the (t'+1) property."""
    if all(has_property_t(a, t_prime) for a in A):
        return True
    return all(has_property_t(b, t_prime + 1) for b in B)


def upper_shadow(G: SetFamily, t: int) -> SetFamily:
    """All t-sets of [n] containing at least one member of the k-uniform G."""
    if G.k is None:
        raise ValueError("upper shadow needs a k-uniform family")
    if not G.k <= t <= G.n:
        raise ValueError(f"need k <= t <= n, got k={G.k}, t={t}, n={G.n}")
    n = G.n
    extra = t - G.k
    out: set[int] = set()
    for m in G.masks:
        complement = [e for e in range(1, n + 1) if not m >> (e - 1) & 1]
        for add in combinations(complement, extra):
            mm = m
            for e in add:
                mm |= 1 << (e - 1)
            out.add(mm)
    return SetFamily.from_masks(n, out, k=t)


def bollobas_thomason_check(G: SetFamily, t: int) -> bool:
    """Exact big-integer form of the shadow-density inequality.

    Compares |shadow|^(n-k) * binom(n,k)^(n-t) >= |G|^(n-t) * binom(n,t)^(n-k),
    i.e. the density of the upper t-shadow raised to (n-k) dominates the
    density of G raised to (n-t).
    """
    n, k = G.n, G.k
    shadow = upper_shadow(G, t)
    lhs = len(shadow) ** (n - k) * binom(n, k) ** (n - t)
    rhs = len(G) ** (n - t) * binom(n, t) ** (n - k)
    return lhs >= rhs


def lemcross_check(A: SetFamily, B: SetFamily, t_prime: int, strengthened: bool = False) -> bool:
    """Size conclusion for cross-t'-intersecting uniform pairs.

    |A| <= binom(n, a-t') or |B| <= binom(n, b-t'); with ``strengthened``
    the second branch drops to binom(n, b-t'-1).
    """
    if A.k is None or B.k is None:
        raise ValueError("size conclusion needs uniform families")
    _common_universe([A, B])
    n = A.n
    drop = t_prime + 1 if strengthened else t_prime
    return len(A) <= binom(n, A.k - t_prime) or len(B) <= binom(n, B.k - drop)


def lemhls_check(families: Sequence[SetFamily], ts: Sequence[int]) -> bool:
    """Some family is small: exists i with |G_i| <= (l-1) * binom(|X|-1, t_i-1)."""
    x = _common_universe(families)
    if len(families) != len(ts):
        raise ValueError("need one uniformity per family")
    for f, t in zip(families, ts):
        if f.k != t:
            raise ValueError(f"family declared {f.k}-uniform but t_i={t}")
    l = len(families)
    return any(len(f) <= (l - 1) * binom(x - 1, t - 1) for f, t in zip(families, ts))
