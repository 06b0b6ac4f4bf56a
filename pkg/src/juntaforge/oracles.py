"""Seeded generators, extremal constructions, and brute-force references.

Every generator verifies its advertised hypothesis before returning
(shiftedness, cross-intersection, cross-dependence, ...) and can record
which checks ran into a transcript list for reports.  Identical configs
produce bit-identical output on every platform: randomness comes from a
fixed splitmix-style 64-bit mixer, never from the host RNG.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Callable, Sequence

from .junta import JuntaSpec, prefix_kset, residual
from .properties import (
    are_cross_t_intersecting,
    check_cross_agreeing,
    check_cross_union,
    is_cross_dependent,
)
from .setcore import (
    KSet,
    ResourceLimitError,
    SetFamily,
    binom,
    content_hash,
    enumerate_k_subsets,
    iter_k_masks,
)
from .shifting import is_shifted, make_shifted, make_shifted_together

_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB
_MASK64 = (1 << 64) - 1


class SplitMix64:
    """splitmix64: state += 0x9E3779B97F4A7C15; output via the standard
    xor-shift-multiply finalizer (0xBF58476D1CE4E5B9, 0x94D049BB133111EB).

    Chosen for bit-exact reproducibility across platforms and languages;
    seed 0 yields 0xE220A8397B1DCDAF, 0x6E789E6AA1B965F4, ...
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GOLDEN) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, bound: int) -> int:
        """Uniform integer in [0, bound), unbiased via rejection."""
        if bound <= 0:
            raise ValueError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            v = self.next_u64()
            if v < limit:
                return v % bound

    def chance(self, p: Fraction) -> bool:
        """True with probability p (exact rational threshold on 64 bits)."""
        return self.next_u64() * p.denominator < p.numerator * (1 << 64)

    def sample_k_set(self, n: int, k: int) -> KSet:
        """Uniform k-subset of [n] by partial Fisher-Yates."""
        pool = list(range(1, n + 1))
        for i in range(k):
            jx = i + self.randrange(n - i)
            pool[i], pool[jx] = pool[jx], pool[i]
        return KSet(n, pool[:k])


@dataclass(frozen=True)
class GeneratorConfig:
    """Everything a generator needs; identical configs give identical output."""

    seed: int
    n: int
    k: int
    s: int = 2
    k2: int | None = None
    samples: int = 3
    density: Fraction = Fraction(1, 2)
    construction: str = ""

    def rng(self) -> SplitMix64:
        return SplitMix64(self.seed)


_MAX_RETRIES = 64


def _note(transcript: list[str] | None, message: str) -> None:
    if transcript is not None:
        transcript.append(message)


def _dominated(g: tuple[int, ...], f: tuple[int, ...]) -> bool:
    return all(y <= x for y, x in zip(g, f))


def gen_random_shifted(config: GeneratorConfig, transcript: list[str] | None = None) -> SetFamily:
    """Shifted k-uniform family: random seed sets, closed downward within the level."""
    rng = config.rng()
    n, k = config.n, config.k
    seeds = [tuple(sorted(rng.sample_k_set(n, k).elements())) for _ in range(config.samples)]
    members = [
        s.mask
        for s in enumerate_k_subsets(n, k)
        if any(_dominated(s.elements(), f) for f in seeds)
    ]
    fam = SetFamily.from_masks(n, members, k=k)
    if not is_shifted(fam):
        raise AssertionError("domination closure failed shiftedness")
    _note(transcript, f"is_shifted: pass ({len(fam)} members)")
    return fam


def _prefix_threshold_masks(n: int, k: int, mlen: int, c: int) -> list[int]:
    """Masks of {F in ([n] choose k) : |F intersect [mlen]| >= c}."""
    out = []
    lo_pool = range(1, mlen + 1)
    hi_pool = range(mlen + 1, n + 1)
    for i in range(max(c, 0), min(k, mlen) + 1):
        if k - i > n - mlen:
            continue
        for low in combinations(lo_pool, i):
            base = 0
            for e in low:
                base |= 1 << (e - 1)
            for high in combinations(hi_pool, k - i):
                m = base
                for e in high:
                    m |= 1 << (e - 1)
                out.append(m)
    return out


def prefix_threshold_family(n: int, k: int, mlen: int, c: int) -> SetFamily:
    """{F in ([n] choose k) : |F intersect [mlen]| >= c}; shifted by construction."""
    if not 0 <= mlen <= n:
        raise ValueError(f"prefix length {mlen} out of range 0..{n}")
    return SetFamily.from_masks(n, _prefix_threshold_masks(n, k, mlen, c), k=k)


def star_family(n: int, k: int, t: int = 1) -> SetFamily:
    """{F in ([n] choose k) : [t] subseteq F}."""
    if not 0 <= t <= k <= n:
        raise ValueError(f"need 0 <= t <= k <= n, got t={t}, k={k}, n={n}")
    base = (1 << t) - 1
    members = [base | s.mask << t for s in enumerate_k_subsets(n - t, k - t)]
    return SetFamily.from_masks(n, members, k=k)


def _subsample(rng: SplitMix64, family: SetFamily, density: Fraction) -> SetFamily:
    kept = [m for m in family.masks if rng.chance(density)]
    return SetFamily.from_masks(family.n, kept, k=family.k)


def gen_cross_t_pair(
    config: GeneratorConfig, t: int, transcript: list[str] | None = None
) -> tuple[SetFamily, SetFamily]:
    """A shifted, cross t-intersecting pair.

    Starts from a prefix-heavy template {F : |F intersect [m]| >= ceil((m+t)/2)}
    (m = t gives the t-star), subsamples both sides, re-closes them by
    simultaneous shifting, and verifies the pair before returning.
    """
    rng = config.rng()
    n, a = config.n, config.k
    b = config.k2 if config.k2 is not None else config.k
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    for _ in range(_MAX_RETRIES):
        feasible_m = [
            m
            for m in range(t, n + 1)
            if (m + t + 1) // 2 <= min(a, b) and m <= n
        ]
        if not feasible_m:
            break
        m = feasible_m[rng.randrange(len(feasible_m))]
        c = (m + t + 1) // 2
        A = _subsample(rng, prefix_threshold_family(n, a, m, c), config.density)
        B = _subsample(rng, prefix_threshold_family(n, b, m, c), config.density)
        if not A.members or not B.members:
            continue
        A, B = make_shifted_together([A, B])
        res = are_cross_t_intersecting(A, B, t)
        if res.ok and is_shifted(A) and is_shifted(B):
            _note(transcript, f"is_shifted: pass, pass; cross-{t}-intersecting: pass (template m={m})")
            return A, B
    raise ResourceLimitError(
        f"could not generate a nonempty shifted cross-{t} pair for n={n}, a={a}, b={b}"
    )


def gen_cross_union_tuple(
    config: GeneratorConfig, q: int = 1, transcript: list[str] | None = None
) -> list[SetFamily]:
    """s shifted k-uniform families with every transversal union <= s*k - q.

    Built from prefix thresholds with s*c >= m + q (so any transversal
    repeats at least q elements inside [m]), subsampled and re-closed by
    simultaneous shifting; the union property and shiftedness are
    verified before returning.  q = 1 gives cross-dependent tuples.
    """
    rng = config.rng()
    n, k, s = config.n, config.k, config.s
    if q < 1:
        raise ValueError(f"need q >= 1, got {q}")
    for _ in range(_MAX_RETRIES):
        feasible = [
            (m, c)
            for m in range(1, n + 1)
            for c in range((m + q + s - 1) // s, min(k, m) + 1)
        ]
        if not feasible:
            break
        m, c = feasible[rng.randrange(len(feasible))]
        template = prefix_threshold_family(n, k, m, c)
        fams = [_subsample(rng, template, config.density) for _ in range(s)]
        if any(not f.members for f in fams):
            continue
        fams = make_shifted_together(fams)
        res = check_cross_union(fams, q)
        if res.ok and all(is_shifted(f) for f in fams):
            _note(transcript, f"is_shifted: pass x{s}; cross-union(q={q}): pass (m={m}, c={c})")
            return fams
    raise ResourceLimitError(f"could not generate a cross-union tuple for n={n}, k={k}, s={s}, q={q}")


def gen_cross_dependent_tuple(
    config: GeneratorConfig, transcript: list[str] | None = None
) -> list[SetFamily]:
    """s shifted families with no rainbow matching (cross-union with q=1)."""
    fams = gen_cross_union_tuple(config, q=1, transcript=transcript)
    res = is_cross_dependent(fams)
    if not res.ok:
        raise AssertionError("cross-union q=1 tuple admitted a rainbow matching")
    _note(transcript, "cross-dependent: pass")
    return fams


def gen_cross_agreeing_tuple(
    config: GeneratorConfig, t: int, transcript: list[str] | None = None
) -> list[SetFamily]:
    """s shifted families with |F_1 ^ ... ^ F_s| >= t on every transversal.

    Prefix thresholds with s*(m - c) <= m - t force t common elements
    inside [m]; subsample, re-close, verify.
    """
    rng = config.rng()
    n, k, s = config.n, config.k, config.s
    if t < 1:
        raise ValueError(f"need t >= 1, got {t}")
    for _ in range(_MAX_RETRIES):
        feasible = [
            (m, c)
            for m in range(t, n + 1)
            for c in range(max(1, m - (m - t) // s), min(k, m) + 1)
            if s * (m - c) <= m - t
        ]
        if not feasible:
            break
        m, c = feasible[rng.randrange(len(feasible))]
        template = prefix_threshold_family(n, k, m, c)
        fams = [_subsample(rng, template, config.density) for _ in range(s)]
        if any(not f.members for f in fams):
            continue
        fams = make_shifted_together(fams)
        res = check_cross_agreeing(fams, t)
        if res.ok and all(is_shifted(f) for f in fams):
            _note(transcript, f"is_shifted: pass x{s}; cross-agreeing(t={t}): pass (m={m}, c={c})")
            return fams
    raise ResourceLimitError(f"could not generate a cross-agreeing tuple for n={n}, k={k}, s={s}, t={t}")


def emc_extremal(n: int, k: int, s: int) -> SetFamily:
    """The conjectured rainbow-matching-free optimum {F : F intersect [s-1] != empty}."""
    if not 0 <= s - 1 <= n or k > n:
        raise ValueError(f"need 0 <= s-1 <= n and k <= n, got n={n}, k={k}, s={s}")
    prefix = (1 << (s - 1)) - 1
    members = [m for m in iter_k_masks(n, k) if m & prefix]
    fam = SetFamily.from_masks(n, members, k=k)
    expected = binom(n, k) - binom(n - s + 1, k)
    if len(fam) != expected:
        raise AssertionError(f"extremal family size {len(fam)} != {expected}")
    return fam


def threshold_family(n: int, k: int, j: int, m: int) -> SetFamily:
    """{F in ([n] choose k) : |F intersect [2j-1]| >= m}; shifted by construction.

    With m*s > 2j-1 no s members can be pairwise disjoint, which is the
    lower-bound family showing prefix juntas cannot be small.
    """
    if j < 1 or 2 * j - 1 > n:
        raise ValueError(f"need 1 <= j with 2j-1 <= n, got j={j}, n={n}")
    if m < 0:
        raise ValueError(f"need m >= 0, got {m}")
    fam = prefix_threshold_family(n, k, 2 * j - 1, m)
    if not is_shifted(fam):
        raise AssertionError("threshold family failed shiftedness")
    return fam


def exhaustive_min_junta(
    F: SetFamily,
    center_size: int,
    predicate: Callable[[SetFamily], bool] | None = None,
) -> tuple[JuntaSpec, int]:
    """Best defining family over center [j] minimizing |F \\ J|, j <= 3.

    Enumerates all 2^(2^j) defining families (optionally filtered by a
    predicate on the defining family); ties broken by the enumeration
    order on trace keys, i.e. the lexicographically first optimum wins.
    """
    if not 0 <= center_size <= 3:
        raise ValueError(f"exhaustive search capped at center size 3, got {center_size}")
    n = F.n
    center = prefix_kset(n, center_size)
    keys = sorted(range(1 << center_size))
    counts = {key: 0 for key in keys}
    for m in F.masks:
        counts[m & center.mask] += 1
    total = len(F)
    best: tuple[int, JuntaSpec] | None = None
    for bits in range(1 << len(keys)):
        chosen = [keys[i] for i in range(len(keys)) if bits >> i & 1]
        defining = SetFamily.from_masks(n, chosen)
        if predicate is not None and not predicate(defining):
            continue
        res_size = total - sum(counts[key] for key in chosen)
        if best is None or res_size < best[0]:
            best = (res_size, JuntaSpec(center, defining, k=F.k))
    if best is None:
        raise ValueError("no defining family satisfies the predicate")
    size, spec = best
    if len(residual(F, spec)) != size:
        raise AssertionError("residual bookkeeping mismatch")
    return spec, size


@dataclass
class CorpusManifest:
    """Provenance of every generated family used in a run: construction, seed, params, hash."""

    entries: list[dict] = field(default_factory=list)

    def record(self, construction: str, seed: int, params: dict, family: SetFamily) -> None:
        self.entries.append(
            {
                "construction": construction,
                "seed": seed,
                "params": dict(params),
                "sha256": content_hash(family),
            }
        )

    def to_json(self) -> list[dict]:
        return list(self.entries)
