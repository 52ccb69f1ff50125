"""Letter-addition criteria and greedy digit-set construction.

A letter b may be appended to any digit set built from its predecessors
without overshooting the attainable dimensions as long as
M_b < 2 * sum of m_c over the letters c following b in the ordering,
where m/M are the letter constants making
m_b ||phi'_{w w'}|| <= ||phi'_{w b w'}|| <= M_b ||phi'_{w w'}||.
``mme_check`` certifies exactly that sum inequality with enclosed
margins; the first letters (+-3), where the criterion has no room, are
handled by ``direct_lambda_comparison`` instead.

``construct`` runs the greedy sweep: walk the ordering, tentatively add
each letter, keep it only when the tentative set's pressure at the
target is certified nonpositive (so its dimension is certifiably at
most the target).  A letter whose dimension straddles the target is
rejected; the achieved interval can only approach the target from
below.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .exactnum import Interval, float_down, float_up, surd_enclosure, tail_sum_enclosure
from .nicf_system import (
    HALF,
    K_GLOBAL,
    K_PREC5,
    LoopLetter,
    alpha_interval,
    k_prec4_interval,
    vertex_alphabet,
)
from .pressure_dim import (
    DigitIfs,
    DimensionInterval,
    LoopIfs,
    as_system,
    certify_nonpos,
    dim_interval,
    finiteness_exponent,
    is_divergent,
    partition_sum,
    pressure_bounds,
    _ladder,
)
from .symbolic import AlphabetSelection

DIRECT_COMPARISON = "use direct comparison"


@dataclass(frozen=True)
class MmeVerdict:
    letter: str
    passes: Optional[bool]          # None: not decidable by this criterion
    lhs: Optional[Interval]         # M_b upper family
    rhs: Optional[Interval]         # 2 * successor m-sum
    note: str = ""

    @property
    def margin(self) -> Optional[Interval]:
        if self.lhs is None or self.rhs is None:
            return None
        return self.rhs - self.lhs


def _plain_tail(m: int, terms: int, bits: int) -> Interval:
    """sum_{l >= m} (l + 1/2)**(-2) = tail over j >= m of (j + 1/2)**(-2)."""
    return tail_sum_enclosure(m, HALF, 1, terms=terms, bits=bits)


def _geometric_run_factor(bits: int) -> Interval:
    """g = sum_{r>=1} [(3/2 + sqrt2)(1 + sqrt2)**(r-1)]**-2
         = (1 + sqrt2) / (2 (3/2 + sqrt2)**2)."""
    s2 = surd_enclosure(2, bits)
    return (1 + s2) / (2 * (Fraction(3, 2) + s2) ** 2)


def _decide(lhs: Interval, rhs: Interval) -> Optional[bool]:
    if lhs.hi < rhs.lo:
        return True
    if lhs.lo > rhs.hi:
        return False
    return None


_ESCALATION = ((4, 128), (8, 128), (16, 128), (32, 256), (64, 256), (128, 512))


def mme_check(b: Union[int, LoopLetter], system: str, bits: int = 128) -> MmeVerdict:
    """Certify M_b < 2 sum m_c over the successors of b, per the ordering.

    ``system`` is 'phi_f' (restricted digits, natural order) or 'phi_v'
    (the induced vertex alphabet in block order).  Letters +-3 of either
    system return the direct-comparison signal instead of a verdict.
    """
    if system not in ("phi_f", "phi_v"):
        raise ValueError("system must be phi_f or phi_v")

    if isinstance(b, LoopLetter) and b.j == 0:
        b = b.sign * b.k

    if system == "phi_f":
        if not isinstance(b, int):
            raise ValueError("phi_f letters are plain digits")
        k = abs(b)
        if k < 3:
            raise ValueError("constants defined on F")
        if k == 3:
            return MmeVerdict(str(b), None, None, None, DIRECT_COMPARISON)
        for terms, bb in _ESCALATION:
            a = alpha_interval(bb)
            lhs = Fraction(9, 4) * ((k - a) ** 2).reciprocal()
            rhs = Fraction(8, 9) * tail_sum_enclosure(k + 1, a, 1, terms=terms, bits=bb)
            got = _decide(lhs, rhs)
            if got is not None:
                return MmeVerdict(str(b), got, lhs, rhs)
        return MmeVerdict(str(b), None, lhs, rhs, "undecided at escalation cap")

    # phi_v
    if isinstance(b, int):
        sign, j, k = (1 if b > 0 else -1), 0, abs(b)
    else:
        sign, j, k = b.sign, b.j, b.k
    name = str(b if isinstance(b, LoopLetter) else b)

    if j == 0 and k == 3:
        return MmeVerdict(name, None, None, None, DIRECT_COMPARISON)

    for terms, bb in _ESCALATION:
        if j > k:
            # run letters 2^j k with j > k precede +-l for l >= j+1
            lhs = Interval.point(K_GLOBAL * Fraction(1, 4) ** j / (k - HALF) ** 2)
            rhs = Fraction(18, 25) * _plain_tail(j + 1, terms, bb)
        elif j >= 1:
            # run letters with 1 <= j <= k precede +-l for l >= k+2
            lhs = Interval.point(K_GLOBAL * Fraction(1, 4) ** j / (k - HALF) ** 2)
            rhs = Fraction(18, 25) * _plain_tail(k + 2, terms, bb)
        elif k >= 6:
            # plain letters k >= 6 precede +-l for l >= k+1
            lhs = Interval.point(K_GLOBAL / (k - HALF) ** 2)
            rhs = Fraction(18, 25) * _plain_tail(k + 1, terms, bb)
        elif k == 5:
            # sharper distortion over the preceding letters, and the run
            # letters 2^r l with l >= 6 join the successor sum
            g = _geometric_run_factor(bb)
            lhs = Interval.point(K_PREC5 / (k - HALF) ** 2)
            rhs = Fraction(18, 25) * (1 + g) * _plain_tail(6, terms, bb)
        else:  # k == 4
            g = _geometric_run_factor(bb)
            lhs = k_prec4_interval(bb) * Fraction(4, 49)
            rhs = (2 * _prec_weighted_tail(5, terms, bb)
                   + Fraction(18, 25) * g * _plain_tail(3, terms, bb))
        got = _decide(lhs, rhs)
        if got is not None:
            return MmeVerdict(name, got, lhs, rhs)
    return MmeVerdict(name, None, lhs, rhs, "undecided at escalation cap")


def _prec_weighted_tail(m: int, terms: int, bits: int) -> Interval:
    """sum_{l >= m} ((3l+5)/(5l+7))**2 (l + 1/2)**-2.

    The weight decreases from its value at l = m toward (3/5)**2, so the
    un-enumerated tail is bracketed by the two constant-weight bounds.
    """
    lo = Fraction(0)
    hi = Fraction(0)
    for l in range(m, m + terms):
        w = Fraction(3 * l + 5, 5 * l + 7) ** 2 / (l + HALF) ** 2
        lo += w
        hi += w
    cut = m + terms
    t = _plain_tail(cut, 0, bits)
    w_hi = Fraction(3 * cut + 5, 5 * cut + 7) ** 2
    w_lo = Fraction(9, 25)
    return Interval(lo + w_lo * t.lo, hi + w_hi * t.hi)


# ---------------------------------------------------------------------------
# direct letter comparisons
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ComparisonRow:
    t: Fraction
    verdict: str        # "pass" | "indeterminate"
    method: str         # "divergence" | "z1-chain" | "pressure"
    lhs_hi: Optional[float] = None
    rhs_lo: Optional[float] = None


def direct_lambda_comparison(f_small, f_large, t_grid: Sequence[Fraction], *,
                             depth: int = 8, bits: int = 96,
                             word_budget: int = 200_000) -> List[ComparisonRow]:
    """Certify lambda_{F_small}(t) <= lambda_{F_large}(t) per grid point.

    Auto-pass where the large side diverges (t at or below its finiteness
    exponent).  Against a cofinite digit tail with 1/2 < t <= 1 the chain
    lambda_small <= Z_1(small) and lambda_large >= Z_1(large) / K_large
    decides at depth one; otherwise generic pressure bounds are compared.
    """
    small = as_system(f_small)
    large = as_system(f_large)
    theta_large = finiteness_exponent(large).theta
    rows: List[ComparisonRow] = []
    for t_raw in t_grid:
        t = Fraction(t_raw)
        if t <= theta_large:
            rows.append(ComparisonRow(t, "pass", "divergence"))
            continue
        if small is large or (hasattr(small, "letters") and hasattr(large, "letters")
                              and tuple(small.letters) == tuple(large.letters)):
            rows.append(ComparisonRow(t, "pass", "pressure"))
            continue
        row = None
        if t <= 1:
            z1s = partition_sum(small, t, 1, bits=bits)
            z1l = partition_sum(large, t, 1, bits=bits)
            if not is_divergent(z1s) and not is_divergent(z1l):
                k_large = large.k_interval(bits)
                rhs = z1l / k_large
                if z1s.hi <= rhs.lo:
                    row = ComparisonRow(t, "pass", "z1-chain",
                                        float_up(z1s.hi), float_down(rhs.lo))
        if row is None:
            row = _pressure_comparison(small, large, t, depth, bits, word_budget)
        rows.append(row)
    return rows


def _pressure_comparison(small, large, t, depth, bits, word_budget) -> ComparisonRow:
    best_hi = None
    for n in _ladder(small, depth, word_budget):
        pb = pressure_bounds(small, t, n, bits=bits)
        if is_divergent(pb):
            return ComparisonRow(t, "indeterminate", "pressure")
        best_hi = pb.hi if best_hi is None else min(best_hi, pb.hi)
    best_lo = None
    for n in _ladder(large, depth, word_budget):
        pb = pressure_bounds(large, t, n, bits=bits)
        if is_divergent(pb):
            return ComparisonRow(t, "pass", "divergence")
        best_lo = pb.lo if best_lo is None else max(best_lo, pb.lo)
    if best_hi is not None and best_lo is not None and best_hi <= best_lo:
        return ComparisonRow(t, "pass", "pressure",
                             float_up(best_hi), float_down(best_lo))
    return ComparisonRow(t, "indeterminate", "pressure",
                         None if best_hi is None else float_up(best_hi),
                         None if best_lo is None else float_down(best_lo))


# ---------------------------------------------------------------------------
# greedy construction
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Decision:
    letter: str
    accepted: bool
    dim_lo: Fraction    # certified bounds of the accepted set after the step
    dim_hi: Fraction


@dataclass(frozen=True)
class SpectrumTrace:
    target: Fraction
    system: str
    ordering: Tuple[str, ...]
    decisions: Tuple[Decision, ...]
    final_letters: Tuple[str, ...]
    achieved: DimensionInterval

    def to_json_dict(self) -> dict:
        return {
            "target": float(self.target),
            "system": self.system,
            "ordering": list(self.ordering),
            "decisions": [
                {"letter": d.letter, "accepted": d.accepted,
                 "dim_lo": float_down(d.dim_lo), "dim_hi": float_up(d.dim_hi)}
                for d in self.decisions
            ],
            "final_F": list(self.final_letters),
            "achieved": {
                "lo": float_down(self.achieved.lo),
                "hi": float_up(self.achieved.hi),
                "depth": self.achieved.depth,
            },
        }


def phi_f_ordering(budget: int) -> List[int]:
    out: List[int] = []
    k = 3
    while len(out) < budget:
        out.append(-k)
        if len(out) < budget:
            out.append(k)
        k += 1
    return out


def construct(target, system: str, budget: int, depth: int, *,
              achieved_tol=Fraction(1, 100), bits: int = 64,
              word_budget: int = 150_000, threads: int = 1) -> SpectrumTrace:
    """Greedy sweep over the ordering, keeping a letter only when the
    tentative set's dimension is certified <= target.

    Acceptance is the certificate P(target) <= 0 at some depth within
    budget, which bounds the Bowen root by the target; the per-step
    certified upper bound therefore never exceeds the target.  Budgeted
    truncation means the result is a finite digit set whose dimension
    approaches the target from below; nothing is claimed about the
    (asymptotic) attainment of the target itself.
    """
    target = Fraction(target)
    if not 0 <= target <= 1:
        raise ValueError("target must lie in [0, 1]")
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if system not in ("phi_f", "phi_v"):
        raise ValueError("system must be phi_f or phi_v")

    kw = dict(bits=bits, word_budget=word_budget, threads=threads)
    if system == "phi_f":
        ordering: Sequence = phi_f_ordering(budget)
    else:
        ordering = vertex_alphabet(budget)

    accepted: List = []
    decisions: List[Decision] = []
    for letter in ordering:
        tentative = accepted + [letter]
        if system == "phi_f":
            cand = DigitIfs(AlphabetSelection.explicit(tentative))
        else:
            cand = LoopIfs(tuple(tentative))
        ok = certify_nonpos(cand, target, depth, **kw)
        if ok:
            accepted = tentative
        decisions.append(Decision(str(letter), ok, Fraction(0), target))

    if system == "phi_f":
        final = DigitIfs(AlphabetSelection.explicit(accepted))
    else:
        final = LoopIfs(tuple(accepted))
    achieved = dim_interval(final, depth, achieved_tol, **kw)
    return SpectrumTrace(
        target=target,
        system=system,
        ordering=tuple(str(x) for x in ordering),
        decisions=tuple(decisions),
        final_letters=tuple(str(x) for x in accepted),
        achieved=achieved,
    )
