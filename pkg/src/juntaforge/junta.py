"""Constructive junta extraction and the center-size parameter calculators.

A junta is a family whose membership depends only on the intersection
with a small center set, via a defining family on the center.  The
extractors here build juntas from families satisfying a cross-
intersection or weighted-prefix ("hitting") hypothesis and assert the
advertised residual bounds post hoc, in exact arithmetic.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .intervals import DEFAULT_PREC, QInterval, ceil_upper, euler_e, ln, log_base
from .properties import HittingSystem, are_cross_t_intersecting, check_hitting
from .setcore import (
    KSet,
    SetFamily,
    binom,
    biased_measure,
    enumerate_k_subsets,
)
from .shifting import is_shifted

E = "e"  # sentinel accepted wherever a log base may be Euler's number


class HypothesisError(ValueError):
    """An extraction hypothesis failed; carries the failing transversal."""

    def __init__(self, message: str, witness: tuple[KSet, ...] | None = None):
        self.witness = witness
        super().__init__(message)


class ExtractionInvariantError(AssertionError):
    """A post-hoc guarantee of an extraction did not hold (implementation bug)."""


@dataclass(frozen=True)
class JuntaSpec:
    """Membership by trace: F belongs iff F intersect center is in the defining family."""

    center: KSet
    defining: SetFamily
    k: int | None = None

    def __post_init__(self):
        if self.defining.n != self.center.n:
            raise ValueError("defining family must live on the center's universe")
        for d in self.defining.masks:
            if d & ~self.center.mask:
                raise ValueError("defining family not supported on the center")

    @property
    def n(self) -> int:
        return self.center.n

    def to_json(self) -> dict:
        return {
            "center": list(self.center.elements()),
            "defining": [list(d.elements()) for d in self.defining.members],
            "n": self.n,
            "k": self.k,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "JuntaSpec":
        n = obj["n"]
        center = KSet(n, obj["center"])
        defining = SetFamily(n, obj["defining"])
        return cls(center, defining, k=obj.get("k"))


def junta_member(J: JuntaSpec, F: KSet) -> bool:
    if F.n != J.n:
        raise ValueError(f"universe mismatch: {F.n} vs {J.n}")
    return J.defining.contains_mask(F.mask & J.center.mask)


def residual(F: SetFamily, J: JuntaSpec) -> SetFamily:
    """Members of F outside the junta."""
    if F.n != J.n:
        raise ValueError(f"universe mismatch: {F.n} vs {J.n}")
    cm = J.center.mask
    out = [m for m in F.masks if not J.defining.contains_mask(m & cm)]
    return SetFamily.from_masks(F.n, out, k=F.k)


def junta_size(J: JuntaSpec) -> int:
    """Number of k-sets (or all sets, for k=None) accepted by the junta."""
    n, j = J.n, J.center.card
    total = 0
    for d in J.defining.masks:
        c = d.bit_count()
        if J.k is None:
            total += 1 << (n - j)
        else:
            total += binom(n - j, J.k - c)
    return total


def junta_family(J: JuntaSpec) -> SetFamily:
    """Materialize the junta as an explicit family (desk scale only)."""
    n = J.n
    cm = J.center.mask
    if J.k is None:
        members = [m for m in range(1 << n) if J.defining.contains_mask(m & cm)]
        return SetFamily.from_masks(n, members)
    members = [
        s.mask for s in enumerate_k_subsets(n, J.k) if J.defining.contains_mask(s.mask & cm)
    ]
    return SetFamily.from_masks(n, members, k=J.k)


def prefix_kset(n: int, j: int) -> KSet:
    return KSet.from_mask(n, (1 << j) - 1)


# ---------------------------------------------------------------------------
# Pair extraction for cross t-intersecting uniform families
# ---------------------------------------------------------------------------


def extract_pair_juntas(
    A: SetFamily,
    B: SetFamily,
    t: int,
    r: int,
    check_hypothesis: bool = True,
) -> tuple[JuntaSpec, JuntaSpec]:
    """Build cross t-intersecting juntas with center [j], j = 2r - t - 1.

    The defining families keep exactly the traces that are strictly larger
    than binom(n-j, a-r) (resp. b-r); strictness is load-bearing.
    Post-hoc asserts: the defining families are cross t-intersecting and
    the residuals satisfy |A \\ J| <= 2^j binom(n-j, a-r) and
    |B \\ I| <= 2^j binom(n-j, b-r).
    """
    if A.k is None or B.k is None:
        raise ValueError("pair extraction needs uniform families")
    a, b = A.k, B.k
    n = A.n
    if B.n != n:
        raise ValueError("families must share a universe")
    if not (a >= b >= r > t > 0):
        raise ValueError(f"need a >= b >= r > t > 0, got a={a}, b={b}, r={r}, t={t}")
    if n < 2 * a:
        raise ValueError(f"need n >= 2a, got n={n}, a={a}")
    if check_hypothesis:
        if not is_shifted(A) or not is_shifted(B):
            raise HypothesisError("input families must be shifted")
        res = are_cross_t_intersecting(A, B, t)
        if not res.ok:
            raise HypothesisError(f"inputs are not cross {t}-intersecting", res.witness)

    j = 2 * r - t - 1
    center = prefix_kset(n, j)

    def defining_for(F: SetFamily, threshold: int) -> SetFamily:
        counts: dict[int, int] = {}
        cm = center.mask
        for m in F.masks:
            key = m & cm
            counts[key] = counts.get(key, 0) + 1
        keep = [key for key, cnt in counts.items() if cnt > threshold]
        return SetFamily.from_masks(n, keep)

    thr_a = binom(n - j, a - r)
    thr_b = binom(n - j, b - r)
    J = JuntaSpec(center, defining_for(A, thr_a), k=a)
    I = JuntaSpec(center, defining_for(B, thr_b), k=b)

    for X in J.defining.masks:
        for Y in I.defining.masks:
            if (X & Y).bit_count() < t:
                raise ExtractionInvariantError(
                    f"defining families not cross {t}-intersecting: {X:#x} vs {Y:#x}"
                )
    if len(residual(A, J)) > (1 << j) * thr_a:
        raise ExtractionInvariantError("first residual exceeds 2^j * binom(n-j, a-r)")
    if len(residual(B, I)) > (1 << j) * thr_b:
        raise ExtractionInvariantError("second residual exceeds 2^j * binom(n-j, b-r)")
    return J, I


# ---------------------------------------------------------------------------
# Prefix-line split and hitting-system extraction
# ---------------------------------------------------------------------------


def split_by_line(
    F: SetFamily, k: int | Fraction, sigma: Fraction, j: int
) -> tuple[SetFamily, SetFamily]:
    """Split F by whether some level l > j has |F intersect [l]| >= l * k / sigma.

    The membership predicate is evaluated at every integer l in (j, n]
    with exact cross-multiplied comparison, so no rounding convention for
    l * k / sigma is ever needed.  Returns (crossers, stayers); the two
    parts partition F.
    """
    rate = Fraction(k)
    sigma = Fraction(sigma)
    if sigma <= 0 or rate <= 0:
        raise ValueError("sigma and k must be positive")
    if sigma < rate:
        raise ValueError(f"need sigma >= k, got sigma={sigma}, k={rate}")
    n = F.n
    j = max(0, min(j, n))
    # |F ^ [l]| * sigma >= l * rate, integerized
    lhs_scale = sigma.numerator * rate.denominator
    rhs_scale = rate.numerator * sigma.denominator
    crossers = []
    stayers = []
    for m in F.masks:
        hit = False
        for l in range(j + 1, n + 1):
            c = (m & ((1 << l) - 1)).bit_count()
            if c * lhs_scale >= l * rhs_scale:
                hit = True
                break
        (crossers if hit else stayers).append(m)
    return (
        SetFamily.from_masks(n, crossers, k=F.k),
        SetFamily.from_masks(n, stayers, k=F.k),
    )


@dataclass(frozen=True)
class RegimeParams:
    """Center size and admissibility for one of the three parameter regimes."""

    regime: str
    r: Fraction
    j: int
    sigma: Fraction
    eps: Fraction | None = None
    big_c: Fraction | str | None = None
    n_bound: QInterval | None = None  # lower bound the universe must meet
    n: int | None = None
    admissible: bool | None = None
    biased: bool = False


def _as_base(big_c, prec: int = DEFAULT_PREC) -> QInterval | Fraction:
    if big_c == E:
        return euler_e(prec)
    c = Fraction(big_c)
    if c < 2:
        raise ValueError(f"need C >= 2, got {c}")
    return c


def compute_regime_j(
    regime: str,
    s: int,
    alphas: Sequence[Fraction],
    rates: Sequence[int | Fraction],
    r: Fraction,
    eps: Fraction | None = None,
    big_c: Fraction | str | None = None,
    n: int | None = None,
    biased: bool = False,
    prec: int = DEFAULT_PREC,
) -> RegimeParams:
    """Evaluate the center-size formula for regime i, ii, or iii.

    Logarithms are evaluated as certified rational enclosures and the
    result is rounded up from the enclosure's upper end, so j is never
    undercounted.  The regime's lower bound on n (or upper bound on the
    biases) is recorded; when ``n`` is supplied the admissibility flag is
    set by comparing against the bound's safe end.
    """
    alphas = tuple(Fraction(a) for a in alphas)
    rates = tuple(Fraction(x) for x in rates)
    r = Fraction(r)
    if len(alphas) != s or len(rates) != s:
        raise ValueError("need one weight and one size/bias per family")
    if s < 2:
        raise ValueError("need s >= 2")
    if any(a <= 0 for a in alphas) or any(x <= 0 for x in rates):
        raise ValueError("weights and sizes/biases must be positive")
    if r <= 0:
        raise ValueError("need r > 0")
    if biased and any(x >= 1 for x in rates):
        raise ValueError("biases must be < 1")
    sigma = sum((a * x for a, x in zip(alphas, rates)), Fraction(0))

    if regime in ("i", "ii"):
        if eps is None or not 0 < Fraction(eps) <= Fraction(1, 3):
            raise ValueError(f"regimes i/ii need eps in (0, 1/3], got {eps}")
        eps = Fraction(eps)
        log_tail = ln(Fraction(8) / eps**2, prec)
        cands: list[QInterval] = []
        if regime == "i":
            if any(sigma < x for x in rates):
                raise ValueError("regime i needs sigma >= k_i (or p_i) for every i")
            for x in rates:
                main = (4 * sigma / (eps**2 * x)) * (
                    r * ln(sigma / ((1 - eps) * x), prec) + log_tail
                )
                cands.append(QInterval.point(sigma * r / (eps * x)).max_with(main))
            bound = QInterval.point(sigma / (1 - eps))
            bound_is_on_n = True
        else:
            for a in alphas:
                main = (4 * a * s / eps**2) * (r * ln(a * s / (1 - eps), prec) + log_tail)
                cands.append(QInterval.point(r * a * s / eps).max_with(main))
            if biased:
                # condition max_i alpha_i s p_i <= 1 - eps, no bound on n
                worst = max(a * p for a, p in zip(alphas, rates))
                bound = QInterval.point(worst * s)
                bound_is_on_n = False
            else:
                bound = QInterval.point(
                    max(a * k for a, k in zip(alphas, rates)) * s / (1 - eps)
                )
                bound_is_on_n = True
    elif regime == "iii":
        base = _as_base(big_c, prec)
        e_enc = euler_e(prec)
        cands = [
            a * s * r * log_base(QInterval.point(a * s) * base * e_enc, base, prec)
            for a in alphas
        ]
        if biased:
            worst = max(a * p for a, p in zip(alphas, rates))
            bound = QInterval.point(worst * s) * base * e_enc
            bound_is_on_n = False
        else:
            worst = max(a * k for a, k in zip(alphas, rates))
            bound = QInterval.point(worst * s) * base * e_enc
            bound_is_on_n = True
    else:
        raise ValueError(f"unknown regime {regime!r}; expected i, ii, or iii")

    formula = cands[0]
    for c in cands[1:]:
        formula = formula.max_with(c)
    j = max(0, ceil_upper(formula))

    admissible: bool | None
    if bound_is_on_n:
        admissible = None if n is None else Fraction(n) >= bound.hi
    else:
        # biased (ii): max alpha_i s p_i <= 1 - eps; biased (iii): C e alpha_i s p_i <= 1
        if regime == "ii":
            admissible = bound.hi <= 1 - eps
        else:
            admissible = bound.hi <= 1
    return RegimeParams(
        regime=regime,
        r=r,
        j=j,
        sigma=sigma,
        eps=eps if regime in ("i", "ii") else None,
        big_c=big_c if regime == "iii" else None,
        n_bound=bound,
        n=n,
        admissible=admissible,
        biased=biased,
    )


def residual_bound_holds(size: int, n: int, k: int, r: Fraction) -> bool:
    """Exact check of size <= (k/n)^r binom(n,k) via integer cross-powering.

    For rational r = p/q this is size^q * n^p <= k^p * binom(n,k)^q.
    """
    r = Fraction(r)
    p, q = r.numerator, r.denominator
    return size**q * n**p <= k**p * binom(n, k) ** q


def measure_bound_holds(measure: Fraction, p_i: Fraction, r: Fraction) -> bool:
    """Exact check of measure <= p_i^r for rational r = a/b: measure^b <= p_i^a."""
    r = Fraction(r)
    a, b = r.numerator, r.denominator
    return measure**b <= p_i**a


@dataclass(frozen=True)
class HittingExtraction:
    """Extraction output: juntas plus per-family split statistics."""

    juntas: tuple[JuntaSpec, ...]
    crossers: tuple[SetFamily, ...]  # the parts escaping above the line
    stayers: tuple[SetFamily, ...]  # the parts defining the juntas
    params: RegimeParams
    bound_checked: bool  # residual bound asserted (admissible params only)


def _extract_by_prefix(
    system: HittingSystem,
    families: Sequence[SetFamily],
    params: RegimeParams,
    biased: bool,
    check_hypothesis: bool,
) -> HittingExtraction:
    n = families[0].n
    if any(f.n != n for f in families):
        raise ValueError("families must share a universe")
    if len(families) != system.s:
        raise ValueError("family count must match system arity")
    if check_hypothesis:
        res = check_hitting(system, families)
        if not res.ok:
            raise HypothesisError("hitting hypothesis fails", res.witness)

    rates = system.rates()
    sigma = system.sigma()
    if params.sigma != sigma:
        raise ValueError("params were computed for a different system (sigma mismatch)")
    if params.j < 1:
        raise ValueError(f"center must be nonempty, got j={params.j}")
    j = min(params.j, n)
    center = prefix_kset(n, j)

    juntas = []
    crossers = []
    stayers = []
    for f, rate in zip(families, rates):
        hi, lo = split_by_line(f, rate, sigma, j)
        defining = SetFamily.from_masks(n, {m & center.mask for m in lo.masks})
        J = JuntaSpec(center, defining, k=f.k)
        # stayers embed in their junta by construction; assert anyway
        for m in lo.masks:
            if not junta_member(J, KSet.from_mask(n, m)):
                raise ExtractionInvariantError("a stayer escaped its junta")
        crossers.append(hi)
        stayers.append(lo)
        juntas.append(J)

    # every defining-family transversal must hit at a level inside the center
    if all(len(st) for st in stayers):
        levels = system.levels or tuple(range(1, n + 1))
        small = tuple(l for l in levels if l <= j)
        if not small:
            raise ExtractionInvariantError("no levels inside the center to hit")
        inner = HittingSystem(system.alphas, system.q, levels=small)
        res = check_hitting(inner, [J.defining for J in juntas])
        if not res.ok:
            raise ExtractionInvariantError(
                f"defining transversal misses every level <= {j}: {res.witness}"
            )

    bound_checked = False
    if params.admissible:
        for f, hi, rate in zip(families, crossers, rates):
            if biased:
                if not measure_bound_holds(biased_measure(hi, rate), rate, params.r):
                    raise ExtractionInvariantError(
                        "escaping measure exceeds p^r on an admissible instance"
                    )
            else:
                if not residual_bound_holds(len(hi), n, f.k, params.r):
                    raise ExtractionInvariantError(
                        "escaping count exceeds (k/n)^r binom(n,k) on an admissible instance"
                    )
        bound_checked = True

    return HittingExtraction(
        juntas=tuple(juntas),
        crossers=tuple(crossers),
        stayers=tuple(stayers),
        params=params,
        bound_checked=bound_checked,
    )


def extract_hitting_juntas(
    system: HittingSystem,
    families: Sequence[SetFamily],
    params: RegimeParams,
    check_hypothesis: bool = True,
) -> HittingExtraction:
    """Junta extraction for uniform families satisfying the hitting hypothesis.

    Each junta has center [j] and defining family {F intersect [j] : F
    stays under the line}.  Post-hoc asserts: stayers embed in their
    juntas; every defining transversal hits at some level <= j; and, on
    admissible parameters, each escaping part obeys the exact bound
    |F'| * n^r <= k^r * binom(n, k) (cross-powered for rational r).
    Inadmissible parameters skip the bound and are flagged.
    """
    if any(f.k is None for f in families):
        raise ValueError("uniform extraction needs k-uniform families")
    if system.sizes is None:
        raise ValueError("system must carry per-family sizes in uniform mode")
    for f, k in zip(families, system.sizes):
        if f.k != k:
            raise ValueError(f"family uniformity {f.k} != declared size {k}")
    return _extract_by_prefix(system, families, params, biased=False, check_hypothesis=check_hypothesis)


def extract_biased_juntas(
    system: HittingSystem,
    families: Sequence[SetFamily],
    params: RegimeParams,
    check_hypothesis: bool = True,
) -> HittingExtraction:
    """Biased-measure variant over general families: residual measure <= p_i^r."""
    if system.biases is None:
        raise ValueError("system must carry per-family biases in biased mode")
    if not params.biased:
        raise ValueError("params were computed for uniform mode")
    return _extract_by_prefix(system, families, params, biased=True, check_hypothesis=check_hypothesis)


# ---------------------------------------------------------------------------
# Corollary-level parameter arithmetic
# ---------------------------------------------------------------------------


def cor_constants(eps: Fraction) -> QInterval:
    """Enclosure of c = 1 + ((2+eps)/(2 eps))^2 ln 4."""
    eps = Fraction(eps)
    if eps <= 0:
        raise ValueError(f"need eps > 0, got {eps}")
    ratio = (2 + eps) / (2 * eps)
    return 1 + QInterval.point(ratio**2) * ln(Fraction(4))


def cor111_params(big_c: Fraction | str, alpha: Fraction, s: int) -> tuple[QInterval, QInterval]:
    """Enclosures of r = (1+alpha)/log_C(Cs) and j = r s log_C(Ces); asserts j < 2(1+alpha)s."""
    alpha = Fraction(alpha)
    if alpha <= 0:
        raise ValueError(f"need alpha > 0, got {alpha}")
    if s < 2:
        raise ValueError(f"need s >= 2, got {s}")
    base = _as_base(big_c)
    r = (1 + alpha) / log_base(QInterval.point(s) * base, base)
    j = r * s * log_base(QInterval.point(s) * base * euler_e(), base)
    limit = 2 * (1 + alpha) * s
    if not j.definitely_lt(limit):
        raise ExtractionInvariantError(f"center-size bound j < {limit} failed: j in {j}")
    return r, j
