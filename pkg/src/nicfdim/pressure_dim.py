"""Partition sums, certified pressure bounds and dimension intervals.

For an alphabet F and t >= 0 the depth-n partition sum is
Z_n(t) = sum over admissible length-n words of (sup |phi_w'|)**t.
Sub/super-multiplicativity of word norms gives, for every n,

    (log Z_n - t log K) / n  <=  P_F(t)  <=  (log Z_n) / n,

with K a distortion constant for F, so sign certificates for the
pressure never need a limit:

    Z_n <= 1      certifies  P_F(t) <= 0,
    Z_n >= K**t   certifies  P_F(t) >= 0.

Dimension intervals come from bisection on t using only such
certificates; no uncertified digit is ever emitted.  Partition sums run
either in the exact rational lane (small word counts, small exponent
denominators) or in the guarded float lane; both are deterministic and
independent of the thread count, since per-letter chunks are combined
in a fixed order.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Mapping, Optional, Sequence, Tuple, Union

from .exactnum import (
    DivergentTailError,
    Interval,
    float_down,
    float_up,
    fpow_bounds,
    interval_pow,
    log_interval,
    next_down,
    next_up,
    pow_enclosure,
    tail_sum_enclosure,
)
from .nicf_system import (
    HALF,
    K_GLOBAL,
    LoopLetter,
    alpha_interval,
    beta4_interval,
    distortion_from_ratio,
)
from .symbolic import AlphabetSelection, GraphSystem, first_return_loops


class _DivergentType:
    """Flag returned where a sum provably diverges (t at or below theta)."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "DIVERGENT"


DIVERGENT = _DivergentType()


def is_divergent(x) -> bool:
    return x is DIVERGENT


# ---------------------------------------------------------------------------
# systems
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DigitIfs:
    """The restricted-digit system Phi_F for F with all |b| >= 3 (full shift)."""

    selection: AlphabetSelection

    def __post_init__(self):
        if self.selection.min_magnitude() < 3:
            raise ValueError(
                "pressure requires an IFS selection: digits |b| >= 3 "
                "(letters +-2 live on different vertex spaces)")

    @property
    def letters(self) -> Tuple[int, ...]:
        return self.selection.letters

    def k_interval(self, bits: int = 96) -> Interval:
        beta = (alpha_interval(bits) if self.selection.min_magnitude() == 3
                else beta4_interval(bits))
        return distortion_from_ratio(beta)


@dataclass(frozen=True)
class LoopIfs:
    """A finite set of vertex loop letters, optionally carrying the tail of
    the full induced alphabet beyond the truncation grid j <= j_max,
    k <= k_max (``letters`` must then be exactly that grid)."""

    letters: Tuple[LoopLetter, ...]
    with_tail: bool = False
    j_max: int = 0
    k_max: int = 0

    def k_interval(self, bits: int = 96) -> Interval:
        return Interval.point(K_GLOBAL)


def vertex_system(j_max: int, k_max: int) -> LoopIfs:
    """The full induced system at v, truncated to runs j <= j_max and
    terminal digits k <= k_max, with a rigorous tail."""
    if j_max < 0 or k_max < 3:
        raise ValueError("need j_max >= 0 and k_max >= 3")
    letters = tuple(
        LoopLetter(sign, j, k)
        for sign in (-1, 1)
        for j in range(0, j_max + 1)
        for k in range(3, k_max + 1)
    )
    return LoopIfs(letters, with_tail=True, j_max=j_max, k_max=k_max)


@dataclass(frozen=True)
class SimilarityIfs:
    """Letters with exact |phi'| = ratio, plus geometric families
    {base * ratio**m : m >= 0}; word norms multiply exactly, so K = 1
    and Z_n = Z_1**n."""

    ratios: Tuple[Fraction, ...] = ()
    families: Tuple[Tuple[Fraction, Fraction], ...] = ()

    def __post_init__(self):
        for r in self.ratios:
            if not 0 < r < 1:
                raise ValueError("not a contraction")
        for base, r in self.families:
            if not (0 < r < 1 and 0 < base < 1):
                raise ValueError("not a contraction")

    def k_interval(self, bits: int = 96) -> Interval:
        return Interval.point(Fraction(1))


System = Union[DigitIfs, LoopIfs, SimilarityIfs]


def as_system(x) -> System:
    if isinstance(x, (DigitIfs, LoopIfs, SimilarityIfs)):
        return x
    if isinstance(x, AlphabetSelection):
        return DigitIfs(x)
    raise TypeError(f"not a pressure system: {type(x).__name__}")


# ---------------------------------------------------------------------------
# power helpers
# ---------------------------------------------------------------------------

def _pow_iv_float(x: Union[Interval, Fraction], t: Fraction) -> Interval:
    """x**t through the padded float lane, for positive x."""
    if not isinstance(x, Interval):
        x = Interval.point(x)
    if x.lo <= 0:
        raise ValueError("needs a positive base")
    lo, hi = fpow_bounds(float_down(x.lo), float_up(x.hi),
                         float_down(t), float_up(t))
    return Interval(max(Fraction(lo), Fraction(0)), Fraction(hi))


def pow_iv(x: Union[Interval, Fraction], t: Fraction, bits: int = 64,
           den_cap: int = 8) -> Interval:
    """x**t: exact lane for exponent denominators up to den_cap (integer
    roots stay cheap there), guarded float lane otherwise."""
    t = Fraction(t)
    if t.denominator <= den_cap:
        return interval_pow(x, t, bits)
    return _pow_iv_float(x, t)


# ---------------------------------------------------------------------------
# partition sums
# ---------------------------------------------------------------------------

_EXACT_WORD_CAP = 20_000
_EXACT_DEN_CAP = 8


def _letter_matrix(digits: Sequence[int]) -> Tuple[int, int, int, int]:
    """Fold [[d,1],[1,0]] over the digits: the continuant transfer matrix.

    Appending the block to a word with state (q_n, q_(n-1)) gives the new
    state (a q + b q', c q + d q')."""
    a, b, c, d = 1, 0, 0, 1
    for dig in digits:
        a, b, c, d = dig * a + c, dig * b + d, a, b
    return a, b, c, d


def _sup_from_state(q: int, qp: int) -> Fraction:
    """sup |phi_w'| = 4 / (2|q_n| - |q_(n-1)|)**2 on the symmetric domain."""
    d = 2 * abs(q) - abs(qp)
    return Fraction(4, d * d)


def _z_exact(mats, n: int, t: Fraction, bits: int, threads: int) -> Interval:
    def sum_from(m0) -> Interval:
        lo = Fraction(0)
        hi = Fraction(0)
        stack = [(1, m0[0], m0[2])]
        while stack:
            depth, q, qp = stack.pop()
            if depth == n:
                term = pow_enclosure(_sup_from_state(q, qp), t, bits)
                lo += term.lo
                hi += term.hi
                continue
            for a, b, c, dd in mats:
                stack.append((depth + 1, a * q + b * qp, c * q + dd * qp))
        return Interval(lo, hi)

    chunks = _map_chunks(sum_from, mats, threads)
    return Interval(sum(c.lo for c in chunks), sum(c.hi for c in chunks))


# Per-term relative slack folded outward around the raw float sum.  It
# covers conversion of the exact integer denominator to float and the
# division (<= 2**-52 each), libm pow error (~1 ulp), and a 4x margin.
# Accumulation error is counted as count * 2**-51 (naive positive
# summation is within (count-1) * 2**-53 relative) and an inexact float
# exponent contributes |t - tf| * |log base| <= t 2**-53 * 2 log(dmax),
# tracked via the largest denominator seen.
_TERM_SLACK = 2.0 ** -44


def _z_float(mats, n: int, t: Fraction, threads: int) -> Interval:
    tf = float(t)
    t_exact = Fraction(tf) == t

    def sum_from(m0) -> Tuple[float, int, int]:
        acc = 0.0
        count = 0
        dmax = 2
        stack = [(1, m0[0], m0[2])]
        while stack:
            depth, q, qp = stack.pop()
            if depth == n:
                d = 2 * abs(q) - abs(qp)
                acc += (4.0 / float(d * d)) ** tf
                count += 1
                if d > dmax:
                    dmax = d
                continue
            for a, b, c, dd in mats:
                stack.append((depth + 1, a * q + b * qp, c * q + dd * qp))
        return acc, count, dmax

    chunks = _map_chunks(sum_from, mats, threads)
    raw = math.fsum(c for c, _, _ in chunks)  # exact rounding of chunk sums
    count = sum(k for _, k, _ in chunks)
    dmax = max(dm for _, _, dm in chunks)
    slack = _TERM_SLACK + count * 2.0 ** -51
    if not t_exact:
        slack += 4.0 * float(t) * math.log(dmax) * 2.0 ** -53
    # absolute allowance for terms in the subnormal range (the relative
    # pow guarantee degrades there; each term is still exact to 2**-1070)
    subnormal = count * 2.0 ** -1070
    lo = next_down(raw - raw * slack - subnormal, 2)
    hi = next_up(raw + raw * slack + subnormal, 2)
    return Interval(max(Fraction(lo), Fraction(0)), Fraction(hi))


def _map_chunks(fn, mats, threads):
    """Apply fn per first letter; combine in fixed letter order."""
    if threads <= 1 or len(mats) <= 1:
        return [fn(m) for m in mats]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, mats))


def _digit_tail_letter_mass(selection: AlphabetSelection, t: Fraction,
                            bits: int) -> Interval:
    """Mass of the cofinite tail letters, both signs:
    2 * sum_{k > trunc} (k - 1/2)**(-2t)."""
    # (k - 1/2) for k >= trunc+1 equals (j + 1/2) for j >= trunc
    return 2 * tail_sum_enclosure(selection.trunc, HALF, t, terms=2, bits=bits)


def vertex_tail_bound(t: Fraction, j_max: int, k_max: int, bits: int = 96):
    """Upper enclosure of the loop-letter mass outside j <= j_max, k <= k_max,

        sum over {j > j_max, k >= 3} + {j <= j_max, k > k_max}
        of (sup |phi'_{2^j k}|)**t,

    both signs, via sup <= (1/4)**j (k - 1/2)**-2.  Divergent for t <= 1/2.
    """
    t = Fraction(t)
    if 2 * t <= 1:
        return DIVERGENT
    s_all = tail_sum_enclosure(2, HALF, t, terms=2, bits=bits)      # k >= 3
    s_tail = tail_sum_enclosure(k_max, HALF, t, terms=1, bits=bits)  # k > k_max
    x = pow_iv(Fraction(1, 4), t, bits)                              # 4**-t < 1
    geo_gt = x ** (j_max + 1) / (1 - x)
    geo_le = Interval.point(0)
    acc = Interval.point(1)
    for _ in range(j_max + 1):
        geo_le = geo_le + acc
        acc = acc * x
    upper = 2 * (geo_gt.hi * s_all.hi + geo_le.hi * s_tail.hi)
    return Interval(Fraction(0), upper)


def partition_sum(system, t: Fraction, n: int, *, bits: int = 64,
                  threads: int = 1):
    """Enclosure of Z_n(t) for the system, or DIVERGENT.

    Cofinite digit systems and the tailed vertex system add their letter
    tails exactly at n = 1; for n >= 2 the lower bound is the truncated
    enumeration and the upper bound adds the letterwise-product
    correction (sigma_T + sigma_L)**n - sigma_T**n, valid because word
    norms are submultiplicative.
    """
    system = as_system(system)
    t = Fraction(t)
    if t < 0:
        raise ValueError("needs t >= 0")
    if n < 1:
        raise ValueError("needs depth n >= 1")

    if isinstance(system, SimilarityIfs):
        return _z_similarity(system, t, n, bits)

    if isinstance(system, DigitIfs):
        letters: Sequence = system.letters
        mats = [_letter_matrix((b,)) for b in letters]
        tail = None
        if system.selection.is_cofinite:
            if 2 * t <= 1:
                return DIVERGENT
            tail = _digit_tail_letter_mass(system.selection, t, bits)
    else:
        letters = system.letters
        mats = [_letter_matrix(l.word_digits) for l in letters]
        tail = None
        if system.with_tail:
            tail = vertex_tail_bound(t, system.j_max, system.k_max, bits)
            if is_divergent(tail):
                return DIVERGENT

    if t == 0:
        if tail is not None:
            return DIVERGENT
        return Interval.point(Fraction(len(letters)) ** n)

    exact = (t.denominator <= _EXACT_DEN_CAP
             and len(letters) ** n <= _EXACT_WORD_CAP)
    core = (_z_exact(mats, n, t, bits, threads) if exact
            else _z_float(mats, n, t, threads))

    if tail is None:
        return core
    if n == 1:
        return Interval(core.lo + tail.lo, core.hi + tail.hi)
    sigma_t = Interval.point(0)
    for m in mats:
        sigma_t = sigma_t + pow_iv(_sup_from_state(m[0], m[2]), t, bits)
    correction = ((sigma_t + tail) ** n).hi - (sigma_t ** n).lo
    return Interval(core.lo, core.hi + max(correction, 0))


def _z_similarity(system: SimilarityIfs, t: Fraction, n: int, bits: int,
                  den_cap: int = 8):
    if t == 0:
        if system.families:
            return DIVERGENT
        return Interval.point(Fraction(len(system.ratios)) ** n)
    z1 = Interval.point(0)
    for r in system.ratios:
        z1 = z1 + pow_iv(r, t, bits, den_cap)
    for base, r in system.families:
        rt = pow_iv(r, t, bits, den_cap)
        if rt.hi >= 1:
            return DIVERGENT
        z1 = z1 + pow_iv(base, t, bits, den_cap) / (1 - rt)
    return z1 ** n


# ---------------------------------------------------------------------------
# pressure bounds and sign certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PressureBounds:
    t: Fraction
    lo: Fraction
    hi: Fraction
    depth: int
    k_used: Fraction

    def interval(self) -> Interval:
        return Interval(self.lo, self.hi)


def pressure_bounds(system, t: Fraction, n: int, *, bits: int = 64,
                    threads: int = 1):
    """Two-sided pressure enclosure at depth n, or DIVERGENT."""
    system = as_system(system)
    t = Fraction(t)
    z = partition_sum(system, t, n, bits=bits, threads=threads)
    if is_divergent(z):
        return DIVERGENT
    if z.lo <= 0:
        raise ValueError("partition sum vanishes at this precision; no finite "
                         "lower pressure bound at this depth/exponent")
    k = system.k_interval(bits)
    log_z = log_interval(z)
    log_k_t = log_interval(k) * t
    return PressureBounds(
        t=t,
        lo=Fraction(log_z.lo - log_k_t.hi, n),
        hi=Fraction(log_z.hi, n),
        depth=n,
        k_used=k.hi,
    )


def _k_pow_hi(system: System, t: Fraction, bits: int) -> Fraction:
    """Upper bound of K**t."""
    k = system.k_interval(bits)
    if k.hi == 1 or t == 0:
        return Fraction(1)
    if t.denominator == 1:
        return k.hi ** t.numerator
    if t.denominator <= _EXACT_DEN_CAP:
        return pow_enclosure(k.hi, t, bits).hi
    return Fraction(next_up(math.pow(float_up(k.hi), float_up(t)), 8))


def _depth_ladder(letter_count: int, max_depth: int, word_budget: int) -> List[int]:
    cap = max_depth
    if letter_count >= 2:
        while cap > 1 and letter_count ** cap > word_budget:
            cap -= 1
    ns = []
    n = 1
    while n < cap:
        ns.append(n)
        n *= 2
    ns.append(cap)
    return ns


def _system_letter_count(system: System) -> int:
    if isinstance(system, SimilarityIfs):
        return max(len(system.ratios) + len(system.families), 1)
    return len(system.letters)


def _ladder(system: System, max_depth: int, word_budget: int) -> List[int]:
    if isinstance(system, SimilarityIfs):
        return [1]  # Z_n = Z_1**n, deeper adds nothing
    return _depth_ladder(_system_letter_count(system), max_depth, word_budget)


def certify_nonpos(system, t: Fraction, max_depth: int, *, bits: int = 64,
                   word_budget: int = 300_000, threads: int = 1) -> bool:
    """True iff some depth n <= max_depth certifies P(t) <= 0 via Z_n <= 1."""
    system = as_system(system)
    t = Fraction(t)
    for n in _ladder(system, max_depth, word_budget):
        z = partition_sum(system, t, n, bits=bits, threads=threads)
        if is_divergent(z):
            return False
        if z.hi <= 1:
            return True
    return False


def certify_nonneg(system, t: Fraction, max_depth: int, *, bits: int = 64,
                   word_budget: int = 300_000, threads: int = 1) -> bool:
    """True iff some depth certifies P(t) >= 0 via Z_n >= K**t; a divergent
    partition sum certifies immediately (the pressure is then infinite)."""
    system = as_system(system)
    t = Fraction(t)
    if t == 0:
        return True  # P(0) = log(letter count) >= 0 for nonempty alphabets
    for n in _ladder(system, max_depth, word_budget):
        z = partition_sum(system, t, n, bits=bits, threads=threads)
        if is_divergent(z):
            return True
        if z.lo >= _k_pow_hi(system, t, bits):
            return True
    return False


# ---------------------------------------------------------------------------
# dimension intervals
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DimensionInterval:
    lo: Fraction
    hi: Fraction
    depth: int
    target_tol: Fraction

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def achieved(self) -> bool:
        return self.width <= self.target_tol

    def contains(self, x) -> bool:
        x = Fraction(x)
        return self.lo <= x <= self.hi


_UPPER_STARTS = (Fraction(1), Fraction(5, 4), Fraction(3, 2), Fraction(2), Fraction(3))


def dim_interval(system, max_depth: int, tol, *, bits: int = 64,
                 word_budget: int = 300_000, threads: int = 1) -> DimensionInterval:
    """Certified enclosure of the Bowen root by bisection on t.

    The left endpoint always carries a P >= 0 certificate (t = 0 needs
    none) and the right endpoint a P <= 0 certificate.  When neither side
    certifies at a midpoint, both flanks are refined independently and
    the straddle widens the result rather than guessing.
    """
    system = as_system(system)
    tol = Fraction(tol)
    kw = dict(bits=bits, word_budget=word_budget, threads=threads)

    a = Fraction(0)
    b = None
    for cand in _UPPER_STARTS:
        if certify_nonpos(system, cand, max_depth, **kw):
            b = cand
            break
    if b is None:
        # no upper certificate at desk depth: report the honest wide interval
        return DimensionInterval(a, _UPPER_STARTS[-1], max_depth, tol)

    iterations = 0
    while b - a > tol and iterations < 80:
        iterations += 1
        m = (a + b) / 2
        if certify_nonneg(system, m, max_depth, **kw):
            a = m
        elif certify_nonpos(system, m, max_depth, **kw):
            b = m
        else:
            a = _refine_flank(system, a, m, max_depth, tol, True, kw)
            b = _refine_flank(system, m, b, max_depth, tol, False, kw)
            break
    return DimensionInterval(a, b, max_depth, tol)


def _refine_flank(system, lo, hi, max_depth, tol, nonneg_side, kw) -> Fraction:
    """Push a certified endpoint toward an indeterminate midpoint."""
    good, bad = (lo, hi) if nonneg_side else (hi, lo)
    steps = 0
    while abs(bad - good) > tol / 2 and steps < 24:
        steps += 1
        m = (good + bad) / 2
        ok = (certify_nonneg(system, m, max_depth, **kw) if nonneg_side
              else certify_nonpos(system, m, max_depth, **kw))
        if ok:
            good = m
        else:
            bad = m
    return good


# ---------------------------------------------------------------------------
# finiteness exponents and regularity
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FinitenessExponent:
    theta: Fraction
    witness: Mapping[str, object]


def _has_letter_tail(system: System) -> bool:
    return ((isinstance(system, DigitIfs) and system.selection.is_cofinite)
            or (isinstance(system, LoopIfs) and system.with_tail))


def finiteness_exponent(system) -> FinitenessExponent:
    """theta = inf{t : Z_1(t) converges}, with certificates around it."""
    system = as_system(system)
    if isinstance(system, SimilarityIfs):
        if system.families:
            w = {"diverges_at": "0 (infinitely many letters)",
                 "converges_for": "every t > 0 (geometric families)"}
            return FinitenessExponent(Fraction(0), w)
        return FinitenessExponent(Fraction(0), {"reason": "finite alphabet"})
    if not _has_letter_tail(system):
        return FinitenessExponent(Fraction(0), {"reason": "finite alphabet"})
    t_conv = Fraction(9, 16)
    z1 = partition_sum(system, t_conv, 1, bits=64)
    w = {
        "diverges_at": "every t <= 1/2: the one-letter sum dominates a tail "
                       "of sum (k - 1/2)**(-2t) with 2t <= 1 (integral test)",
        "converges_at": str(t_conv),
        "z1_upper_at_witness": float_up(z1.hi),
    }
    return FinitenessExponent(Fraction(1, 2), w)


_NATURE_GRID = (Fraction(9, 16), Fraction(5, 8), Fraction(3, 4), Fraction(7, 8),
                Fraction(1, 4), Fraction(1, 2), Fraction(1, 8))


def classify_nature(system, depth: int = 6,
                    t_samples: Optional[Sequence[Fraction]] = None,
                    *, bits: int = 64, word_budget: int = 200_000) -> str:
    """Certified regularity classification; 'indeterminate' when the
    sampled certificates decide nothing."""
    system = as_system(system)
    theta = finiteness_exponent(system).theta
    count = _system_letter_count(system)
    finite_alphabet = not _has_letter_tail(system) and not (
        isinstance(system, SimilarityIfs) and system.families)
    if finite_alphabet:
        if count >= 2:
            return "strongly regular"  # 0 < P(0) = log(count) < inf, exactly
        return "critically regular"    # singleton: P(theta) = P(0) = 0
    samples = list(t_samples) if t_samples is not None else [
        t for t in _NATURE_GRID if t > theta]
    ladder = _ladder(system, depth, word_budget)
    for t in samples:
        for n in ladder:
            pb = pressure_bounds(system, Fraction(t), n, bits=bits)
            if is_divergent(pb):
                break
            if pb.lo > 0:
                return "strongly regular"
    # perhaps P < 0 already just above theta (then P is never zero)
    for delta in (Fraction(1, 64), Fraction(1, 128)):
        for n in ladder:
            pb = pressure_bounds(system, theta + delta, n, bits=bits)
            if not is_divergent(pb) and pb.hi < 0:
                return "irregular"
    return "indeterminate"


# ---------------------------------------------------------------------------
# the worked similarity examples
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LoopFamily:
    """Loops base * cycle**m, m >= 0; lengths base_len + m * cycle_len."""

    base_ratio: Fraction
    cycle_ratio: Fraction
    base_len: int
    cycle_len: int

    def count_up_to(self, max_len: int) -> int:
        if self.base_len > max_len:
            return 0
        return (max_len - self.base_len) // self.cycle_len + 1


@dataclass(frozen=True)
class VertexLoopSpec:
    """First-return alphabet of a vertex: single loops plus geometric
    families, each with exact ratios and word lengths."""

    singles: Tuple[Tuple[Fraction, int], ...] = ()
    families: Tuple[LoopFamily, ...] = ()

    def similarity_ifs(self) -> SimilarityIfs:
        return SimilarityIfs(
            ratios=tuple(r for r, _ in self.singles),
            families=tuple((f.base_ratio, f.cycle_ratio) for f in self.families),
        )

    def count_up_to(self, max_len: int) -> int:
        return (sum(1 for _, ln in self.singles if ln <= max_len)
                + sum(f.count_up_to(max_len) for f in self.families))

    def z1_closed(self, t: Fraction, bits: int = 64, den_cap: int = 64):
        return _z_similarity(self.similarity_ifs(), t, 1, bits, den_cap)

    def z1_tail_beyond(self, max_len: int, t: Fraction, bits: int = 64,
                       den_cap: int = 64) -> Interval:
        """Mass of the loops of length > max_len."""
        acc = Interval.point(0)
        for r, ln in self.singles:
            if ln > max_len:
                acc = acc + pow_iv(r, t, bits, den_cap)
        for f in self.families:
            m0 = f.count_up_to(max_len)  # first omitted member index
            rt = pow_iv(f.cycle_ratio, t, bits, den_cap)
            if rt.hi >= 1:
                raise DivergentTailError("divergent loop tail")
            acc = acc + pow_iv(f.base_ratio, t, bits, den_cap) * rt ** m0 / (1 - rt)
        return acc


@dataclass(frozen=True)
class AppendixSystem:
    name: str
    graph: GraphSystem
    ratios: Mapping[object, Fraction]
    loop_specs: Mapping[str, VertexLoopSpec]

    def vertex_ifs(self, vertex: str) -> SimilarityIfs:
        return self.loop_specs[vertex].similarity_ifs()

    def closed_pressure(self, vertex: str, t: Fraction, bits: int = 96) -> Interval:
        """The exact closed form of P_{E_vertex}(t), as an enclosure."""
        z1 = self.loop_specs[vertex].z1_closed(Fraction(t), bits)
        if is_divergent(z1):
            raise DivergentTailError("closed form diverges at this t")
        return log_interval(z1)

    def full_pressure_closed(self, t: Fraction, bits: int = 64) -> Interval:
        """P(t) of the whole graph system; for the cycle it equals the
        two-loop closed form log(s**t + r**t) at every t >= 0."""
        if self.name == "cycle4":
            return self.closed_pressure("w", t, bits)
        raise NotImplementedError("closed full pressure derived for cycle4 only")

    def enumerated_pressure(self, vertex: str, t: Fraction, max_len: int,
                            bits: int = 64) -> Interval:
        """Pressure from actually enumerated first-return loops up to
        max_len plus the exact geometric tail; contains the closed form."""
        t = Fraction(t)
        spec = self.loop_specs[vertex]
        loops = first_return_loops(self.graph, vertex, max_len)
        z1 = Interval.point(0)
        n_enum = 0
        for words in loops.values():
            for wrd in words:
                ratio = Fraction(1)
                for e in wrd:
                    ratio *= self.ratios[e]
                z1 = z1 + pow_iv(ratio, t, bits, 64)
                n_enum += 1
        if n_enum != spec.count_up_to(max_len):
            raise AssertionError("loop enumeration disagrees with the family spec")
        z1 = z1 + spec.z1_tail_beyond(max_len, t, bits)
        return log_interval(z1)


def appendix_example(name: str, ratios: Mapping[object, Fraction]) -> AppendixSystem:
    """The two worked similarity systems: the 4-edge cycle graph and the
    6-edge triangle.  ``ratios`` maps each edge to its contraction ratio."""
    ratios = {e: Fraction(r) for e, r in ratios.items()}
    for r in ratios.values():
        if not 0 < r < 1:
            raise ValueError("not a contraction")

    if name == "cycle4":
        edges = (1, 2, 3, 4)
        if set(ratios) != set(edges):
            raise ValueError("cycle4 needs ratios for edges 1..4")
        initial = {1: "v", 2: "w", 3: "z", 4: "z"}
        terminal = {1: "w", 2: "z", 3: "v", 4: "w"}
        g = GraphSystem(("v", "w", "z"), edges, initial, terminal)
        s = ratios[1] * ratios[2] * ratios[3]   # loops 123 / 231 / 312
        r = ratios[2] * ratios[4]               # loops 24 / 42
        specs = {
            "v": VertexLoopSpec(families=(LoopFamily(s, r, 3, 2),)),
            "w": VertexLoopSpec(singles=((s, 3), (r, 2))),
            "z": VertexLoopSpec(singles=((s, 3), (r, 2))),
        }
        return AppendixSystem("cycle4", g, ratios, specs)

    if name == "triangle6":
        edges = tuple("abcdef")
        if set(ratios) != set(edges):
            raise ValueError("triangle6 needs ratios for edges a..f")
        initial = {"a": "v", "b": "w", "c": "w", "d": "z", "e": "v", "f": "z"}
        terminal = {"a": "w", "b": "v", "c": "z", "d": "w", "e": "z", "f": "v"}
        g = GraphSystem(("v", "w", "z"), edges, initial, terminal)
        R = ratios

        def fam(base_edges: str, cycle_edges: str) -> LoopFamily:
            base = Fraction(1)
            for e in base_edges:
                base *= R[e]
            cyc = Fraction(1)
            for e in cycle_edges:
                cyc *= R[e]
            return LoopFamily(base, cyc, len(base_edges), len(cycle_edges))

        # first-return loops at v: a(cd)^n b, a(cd)^n cf, e(dc)^n f, e(dc)^n db
        specs = {
            "v": VertexLoopSpec(families=(
                fam("ab", "cd"), fam("acf", "cd"),
                fam("ef", "dc"), fam("edb", "dc"),
            )),
            # by the symmetry of the triangle, the other vertices mirror v
            "w": VertexLoopSpec(families=(
                fam("ba", "ef"), fam("bed", "ef"),
                fam("cd", "fe"), fam("cfa", "fe"),
            )),
            "z": VertexLoopSpec(families=(
                fam("dc", "ba"), fam("dbe", "ba"),
                fam("fe", "ab"), fam("fac", "ab"),
            )),
        }
        return AppendixSystem("triangle6", g, ratios, specs)

    raise ValueError(f"unknown appendix example {name!r} (use cycle4 or triangle6)")
