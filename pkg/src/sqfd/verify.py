"""Exact checks of the identity and inequality families, plus parameter sweeps.

Every check evaluates both sides with exact integers and records a
:class:`CheckResult`. Results from proven statements evaluated with the
corrected cycle formula are *blocking*: a false one is a failure. Results that
only exercise the printed cycle-relative formula are non-blocking; a false one
is a *discrepancy* (an errata finding) and never changes the exit status.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
import time
from collections import Counter
from collections.abc import Iterable
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from . import __version__
from .extbinom import binom, ceil_div, ext_binom, ext_binom_ie
from .hilbert import (
    alpha_from_beta,
    beta_from_alpha,
    beta_incremental,
    beta_transform,
    chu_vandermonde,
    cycle_ideal_lower_bounds,
    phi,
    qdepth,
)
from .ideals import (
    DEFAULT_ORACLE_CAP,
    VARIANTS,
    PathFamily,
    QuotientId,
    RunSequence,
    alpha_cycle_rel,
    alpha_path_quotient,
    alpha_vector,
    enumerate_alpha,
    family_spec,
    in_path_ideal,
    iter_run_sequences,
    monomial_to_seq,
    seq_to_monomial,
)

__all__ = [
    "GROUPS",
    "CheckResult",
    "SweepGrid",
    "SweepReport",
    "check_cor21",
    "check_cor22",
    "check_identities",
    "check_jpei",
    "check_oracle",
    "check_qdepth_bounds",
    "check_t31",
    "check_t33",
    "errata_findings",
    "sweep",
]

RELATIONS = {
    "=": lambda a, b: a == b,
    ">=": lambda a, b: a >= b,
    "<=": lambda a, b: a <= b,
}

BIJECTION_N_MAX = 14


@dataclass(frozen=True)
class CheckResult:
    id: str
    params: dict
    lhs: int
    rhs: int
    relation: str
    holds: bool
    blocking: bool = True

    @classmethod
    def make(cls, id: str, params: dict, lhs: int, rhs: int, relation: str,
             blocking: bool = True) -> CheckResult:
        return cls(id, dict(params), int(lhs), int(rhs), relation,
                   RELATIONS[relation](lhs, rhs), blocking)

    @property
    def failed(self) -> bool:
        return self.blocking and not self.holds

    @property
    def discrepancy(self) -> bool:
        return not self.blocking and not self.holds

    def sort_key(self) -> tuple:
        p = self.params
        return (
            self.id,
            p.get("n", -1),
            p.get("m", -1),
            p.get("k", -1),
            json.dumps(p, sort_keys=True),
        )

    def to_dict(self) -> dict:
        # decimal strings: values outgrow 64-bit readers quickly
        return {
            "id": self.id,
            "params": self.params,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "relation": self.relation,
            "holds": self.holds,
            "blocking": self.blocking,
        }


# ----------------------------------------------------------------------------
# path family
# ----------------------------------------------------------------------------


def _ie_beta(n: int, m: int, d: int, k: int) -> int:
    """Alternating beta sum with each alpha replaced by its inclusion-exclusion expansion."""
    total = 0
    for ell in range(k // m + 1):
        inner = 0
        for j in range(m * ell, k + 1):
            term = binom(d - j, k - j) * binom(n - j + 1, ell) * binom(n - m * ell, j - m * ell)
            inner += -term if (k - j) & 1 else term
        total += -inner if ell & 1 else inner
    return total


def check_t31(n: int, m: int) -> list[CheckResult]:
    """Beta sums of the path quotient at ``d = phi(n, m)`` and ``d + 1``.

    Item 1 is an identity against the inclusion-exclusion expansion, item 2 is
    nonnegativity at ``d``, item 3 the upper bound at ``d + 1``.
    """
    PathFamily(n, m)
    d = phi(n, m)
    alpha = alpha_vector(QuotientId.PATH_QUOTIENT, n, m).values
    at_d = beta_transform(alpha, d)
    at_d1 = beta_transform(alpha, d + 1)
    out = []
    for k in range(d + 1):
        p = {"n": n, "m": m, "k": k, "d": d}
        out.append(CheckResult.make("t31.1", p, at_d[k], _ie_beta(n, m, d, k), "="))
        out.append(CheckResult.make("t31.2", p, at_d[k], 0, ">="))
    for k in range(d + 2):
        p = {"n": n, "m": m, "k": k, "d": d}
        out.append(CheckResult.make("t31.3", p, at_d1[k], binom(n - d + k - 2, k), "<="))
    return out


def check_cor21(n: int) -> list[CheckResult]:
    """The ``m = 2`` specialisation with ``d = ceil(n/3)``.

    Items are numbered 1 (identity), 2 (nonnegativity), 3 (upper bound with
    ``floor(2n/3)``); ``caz2-1.d`` checks that ``ceil(n/3)`` equals ``phi(n, 2)``.
    """
    if n < 2:
        raise ValueError(f"needs n >= 2, got {n}")
    d = ceil_div(n, 3)
    out = [CheckResult.make("caz2-1.d", {"n": n, "m": 2}, d, phi(n, 2), "=")]
    plain = [binom(n - j + 1, j) for j in range(d + 2)]
    ext = [ext_binom(n - j + 1, 2, j) for j in range(d + 1)]
    lhs1 = beta_transform(ext, d)
    lhs2 = beta_transform(plain, d)
    lhs3 = beta_transform(plain, d + 1)
    for k in range(d + 1):
        p = {"n": n, "m": 2, "k": k, "d": d}
        out.append(CheckResult.make("caz2-1.1", p, lhs1[k], _ie_beta(n, 2, d, k), "="))
        out.append(CheckResult.make("caz2-1.2", p, lhs2[k], 0, ">="))
    top = 2 * n // 3
    for k in range(d + 2):
        p = {"n": n, "m": 2, "k": k, "d": d}
        out.append(CheckResult.make("caz2-1.3", p, lhs3[k], binom(top + k - 2, k), "<="))
    return out


# ----------------------------------------------------------------------------
# cycle family
# ----------------------------------------------------------------------------


def check_t33(n: int, m: int, variant: str = "corrected") -> list[CheckResult]:
    """Beta sums of ``S/J``, ``J/I`` and ``J`` at ``d = phi(n-1, m)`` and shifts.

    Item 1: ``S/J`` at ``d``; item 2: ``J/I`` at ``d + m - 1``; item 3: ``S/J``
    at ``d + 1`` against ``binom(n-d+k-2, k)``. Sums run over the literal
    ranges, with alpha taken as zero past degree ``n``.
    """
    blocking = variant == "corrected"
    d = n - n // (m + 1) - ceil_div(n, m + 1)
    out = [CheckResult.make("t33.d", {"n": n, "m": m}, d, phi(n - 1, m), "=")]
    rel = [alpha_cycle_rel(n, m, j, variant) for j in range(n + 1)]
    sj = [alpha_path_quotient(n, m, j) - r for j, r in enumerate(rel)]
    b1 = beta_transform(sj, d)
    b2 = beta_transform(rel, d + m - 1)
    b3 = beta_transform(sj, d + 1)
    base = {"n": n, "m": m, "variant": variant}
    for k in range(d + 1):
        out.append(CheckResult.make("t33.1", {**base, "k": k, "d": d}, b1[k], 0, ">=", blocking))
    for k in range(d + m):
        p = {**base, "k": k, "d": d + m - 1}
        out.append(CheckResult.make("t33.2", p, b2[k], 0, ">=", blocking))
    for k in range(d + 2):
        p = {**base, "k": k, "d": d + 1}
        out.append(CheckResult.make("t33.3", p, b3[k], binom(n - d + k - 2, k), "<=", blocking))
    return out


def _shifted_sum(n: int, d: int, k: int) -> int:
    # sum_{j=2}^k (-1)^(k-j) binom(d-j, k-j) binom(n-j+1, j-2)
    total = 0
    for j in range(2, k + 1):
        term = binom(d - j, k - j) * binom(n - j + 1, j - 2)
        total += -term if (k - j) & 1 else term
    return total


def check_cor22(n: int) -> list[CheckResult]:
    """The ``m = 2`` cycle statements, evaluated exactly as written.

    ``caz2-2.d`` checks that the three constants used (``ceil((n-1)/3)``,
    ``ceil((n+2)/3)``, ``floor((2n+1)/3)``) are ``phi(n-1, 2)``, one more than
    that, and ``n`` minus it.
    """
    if n < 3:
        raise ValueError(f"needs n >= 3, got {n}")
    d1 = ceil_div(n - 1, 3)
    d2 = ceil_div(n + 2, 3)
    top = (2 * n + 1) // 3
    g = phi(n - 1, 2)
    out = [
        CheckResult.make("caz2-2.d", {"n": n, "m": 2, "quantity": "d"}, d1, g, "="),
        CheckResult.make("caz2-2.d", {"n": n, "m": 2, "quantity": "d+1"}, d2, g + 1, "="),
        CheckResult.make("caz2-2.d", {"n": n, "m": 2, "quantity": "n-d"}, top, n - g, "="),
    ]
    plain = [binom(n - j + 1, j) for j in range(d2 + 1)]
    at_d1 = beta_transform(plain, d1)
    at_d2 = beta_transform(plain, d2)
    for k in range(d1 + 1):
        p = {"n": n, "m": 2, "k": k, "d": d1}
        out.append(CheckResult.make("caz2-2.1", p, at_d1[k], _shifted_sum(n, d1, k), ">="))
    for k in range(2, d2 + 1):
        p = {"n": n, "m": 2, "k": k, "d": d2}
        out.append(CheckResult.make("caz2-2.2", p, _shifted_sum(n, d2, k), 0, ">="))
    for k in range(d2 + 1):
        p = {"n": n, "m": 2, "k": k, "d": d2}
        lhs = binom(top + k - 2, k) - at_d2[k]
        out.append(CheckResult.make("caz2-2.3", p, lhs, _shifted_sum(n, d2, k), ">="))
    return out


def check_jpei(n: int, m: int) -> list[CheckResult]:
    """Printed against corrected cycle-relative counts, per degree (non-blocking)."""
    return [
        CheckResult.make(
            "jpei.printed-vs-corrected", {"n": n, "m": m, "k": k},
            alpha_cycle_rel(n, m, k, "printed"), alpha_cycle_rel(n, m, k, "corrected"),
            "=", blocking=False,
        )
        for k in range(n + 1)
    ]


# ----------------------------------------------------------------------------
# identities and the oracle
# ----------------------------------------------------------------------------


def _family_tags(n: int, m: int) -> list[tuple[QuotientId, str]]:
    tags = [(QuotientId.PATH_QUOTIENT, "corrected"), (QuotientId.PATH_IDEAL, "corrected")]
    if n > m >= 2:
        tags += [
            (t, v)
            for t in (QuotientId.CYCLE_QUOTIENT, QuotientId.CYCLE_IDEAL, QuotientId.CYCLE_REL)
            for v in VARIANTS
        ]
    return tags


def _bijection_checks(n: int, m: int) -> list[CheckResult]:
    fam = PathFamily(n, m)
    images: Counter[int] = Counter()
    good_forward: Counter[int] = Counter()
    for k in range(n + 1):
        for a in iter_run_sequences(n, m, k):
            A = seq_to_monomial(a)
            images[k] += 1
            if len(A) == k and not in_path_ideal(A, fam) and monomial_to_seq(A, fam) == a:
                good_forward[k] += 1
    outside: Counter[int] = Counter()
    good_back: Counter[int] = Counter()
    for k in range(n + 1):
        for A in itertools.combinations(range(1, n + 1), k):
            if in_path_ideal(A, fam):
                continue
            outside[k] += 1
            if seq_to_monomial(monomial_to_seq(A, fam)) == frozenset(A):
                good_back[k] += 1
    out = []
    for k in range(n + 1):
        p = {"n": n, "m": m, "k": k}
        out.append(CheckResult.make("bijection.count", p, images[k], alpha_path_quotient(n, m, k), "="))
        out.append(CheckResult.make("bijection.forward", p, good_forward[k], images[k], "="))
        out.append(CheckResult.make("bijection.inverse", p, good_back[k], outside[k], "="))
    return out


def check_identities(n: int, m: int, chuv: bool = True) -> list[CheckResult]:
    """Exact identities at ``(n, m)``.

    ``kruk`` compares the DP and inclusion-exclusion coefficients, ``re4`` the
    one-step recurrence in the exponent, ``chuv`` the full-row beta sum
    (depends on ``n`` only; skip with ``chuv=False`` to avoid duplicates),
    ``roundtrip``/``beta-incremental`` the beta transform for every family
    vector and every ``d`` (value is the number of mismatched entries), and
    ``bijection.*`` the run-sequence correspondence for ``n <= 14``.
    """
    PathFamily(n, m)
    out = []
    for k in range(n + 1):
        N = n - k + 1
        p = {"n": n, "m": m, "k": k, "N": N}
        out.append(CheckResult.make("kruk", p, ext_binom(N, m, k), ext_binom_ie(N, m, k), "="))
        rhs = sum(ext_binom(N - 1, m, k - i) for i in range(m))
        out.append(CheckResult.make("re4", p, ext_binom(N, m, k), rhs, "="))
    if chuv:
        for d in range(n + 1):
            for k in range(d + 1):
                lhs, rhs = chu_vandermonde(n, d, k)
                out.append(CheckResult.make("chuv", {"n": n, "k": k, "d": d}, lhs, rhs, "="))
    for tag, variant in _family_tags(n, m):
        alpha = alpha_vector(tag, n, m, variant)
        for d in range(n + 1):
            p = {"n": n, "m": m, "d": d, "family": tag.value}
            if tag.is_cycle:
                p["variant"] = variant
            beta = beta_from_alpha(alpha, d)
            back = alpha_from_beta(beta)
            bad = sum(x != y for x, y in zip(back, alpha.values[: d + 1]))
            out.append(CheckResult.make("roundtrip", p, bad, 0, "="))
            inc = beta_incremental(alpha, d)
            bad = sum(x != y for x, y in zip(inc.values, beta.values))
            out.append(CheckResult.make("beta-incremental", p, bad, 0, "="))
    if n <= BIJECTION_N_MAX:
        out.extend(_bijection_checks(n, m))
    return out


def check_oracle(n: int, m: int, cap: int = DEFAULT_ORACLE_CAP, jobs: int = 1) -> list[CheckResult]:
    """Closed-form alpha against subset enumeration for every family at ``(n, m)``.

    Printed-variant comparisons are non-blocking.
    """
    out = []
    tags = [QuotientId.PATH_QUOTIENT, QuotientId.PATH_IDEAL]
    if n > m >= 2:
        tags += [QuotientId.CYCLE_QUOTIENT, QuotientId.CYCLE_IDEAL, QuotientId.CYCLE_REL]
    for tag in tags:
        oracle = enumerate_alpha(family_spec(tag, n, m), cap=cap, jobs=jobs, source=tag.value)
        for variant in (VARIANTS if tag.is_cycle else ("corrected",)):
            formula = alpha_vector(tag, n, m, variant)
            for k in range(n + 1):
                p = {"n": n, "m": m, "k": k}
                if tag.is_cycle:
                    p["variant"] = variant
                out.append(CheckResult.make(
                    f"oracle.{tag.value}", p, formula[k], oracle[k], "=",
                    blocking=variant == "corrected",
                ))
    return out


def _qdepth_path(n: int, m: int) -> list[CheckResult]:
    f = phi(n, m)
    p = {"n": n, "m": m}
    return [
        CheckResult.make("qdepth.path-quotient", {**p, "bound": "phi"},
                         qdepth(alpha_vector(QuotientId.PATH_QUOTIENT, n, m)), f, ">="),
        CheckResult.make("qdepth.path-ideal", {**p, "bound": "phi+1"},
                         qdepth(alpha_vector(QuotientId.PATH_IDEAL, n, m)), f + 1, ">="),
    ]


def _qdepth_or_empty(alpha) -> int:
    # the printed J/I vector is identically zero for some small (n, m); report
    # -1 so the (non-blocking) comparison shows up as a discrepancy
    return qdepth(alpha) if any(alpha) else -1


def _qdepth_cycle(n: int, m: int, variant: str) -> list[CheckResult]:
    blocking = variant == "corrected"
    g = phi(n - 1, m)
    base = {"n": n, "m": m, "variant": variant}
    out = [
        CheckResult.make("qdepth.cycle-quotient", {**base, "bound": "depth"},
                         _qdepth_or_empty(alpha_vector(QuotientId.CYCLE_QUOTIENT, n, m, variant)),
                         g, ">=", blocking),
        CheckResult.make("qdepth.cycle-rel", {**base, "bound": "depth"},
                         _qdepth_or_empty(alpha_vector(QuotientId.CYCLE_REL, n, m, variant)),
                         g + m - 1, ">=", blocking),
    ]
    q = _qdepth_or_empty(alpha_vector(QuotientId.CYCLE_IDEAL, n, m, variant))
    for name, bound in cycle_ideal_lower_bounds(n, m).items():
        out.append(CheckResult.make("qdepth.cycle-ideal", {**base, "bound": name},
                                    q, bound, ">=", blocking))
    return out


def check_qdepth_bounds(n: int, m: int, variant: str = "corrected") -> list[CheckResult]:
    """Hilbert depth of each family against its known Stanley-depth lower bounds.

    Stanley depth never exceeds Hilbert depth, so every known sdepth lower
    bound must bound qdepth from below too. Cycle families are included when
    ``n > m >= 2``.
    """
    out = _qdepth_path(n, m)
    if n > m >= 2:
        out += _qdepth_cycle(n, m, variant)
    return out


# ----------------------------------------------------------------------------
# errata
# ----------------------------------------------------------------------------


def _literal_slot_inverse(A: frozenset[int], n: int) -> tuple[int, ...] | None:
    # slot of the j-th maximal run taken as start - j + 1
    k = len(A)
    entries = [0] * (n - k + 1)
    runs: list[list[int]] = []
    for x in sorted(A):
        if runs and runs[-1][0] + runs[-1][1] == x:
            runs[-1][1] += 1
        else:
            runs.append([x, 1])
    for j, (start, length) in enumerate(runs, start=1):
        slot = start - j + 1
        if not 1 <= slot <= len(entries):
            return None
        entries[slot - 1] = length
    return tuple(entries)


def errata_findings() -> list[dict]:
    """Findings about the printed formulas that the checks work around.

    Each entry carries computed evidence; none of them affects the exit code.
    """
    findings = []

    bad_entry = (1, 3, 0, 0)
    support = frozenset({1, 3, 4, 5})
    try:
        RunSequence(bad_entry, 7, 3)
        valid = True
    except ValueError:
        valid = False
    findings.append({
        "id": "example-run-sequence",
        "description": "worked example pairs support {1,3,4,5} with sequence (1,3,0,0) "
                       "for n=7, m=3; the entry 3 exceeds m-1 and the support contains "
                       "the run 3,4,5, so it lies in the path ideal",
        "evidence": {
            "sequence": list(bad_entry),
            "sequence_valid": valid,
            "support": sorted(support),
            "support_in_path_ideal": in_path_ideal(support, PathFamily(7, 3)),
        },
    })

    failures = 0
    first = None
    for n in range(1, 9):
        for m in range(1, n + 1):
            fam = PathFamily(n, m)
            for k in range(n + 1):
                for A in itertools.combinations(range(1, n + 1), k):
                    A = frozenset(A)
                    if in_path_ideal(A, fam):
                        continue
                    lit = _literal_slot_inverse(A, n)
                    if lit is None or lit != monomial_to_seq(A, fam).entries:
                        failures += 1
                        if first is None:
                            first = {"n": n, "m": m, "support": sorted(A), "literal": lit,
                                     "correct": list(monomial_to_seq(A, fam).entries)}
    findings.append({
        "id": "inverse-slot-index",
        "description": "placing the j-th maximal run at slot start-j+1 does not invert the "
                       "forward map once a run of length >= 2 precedes another run; the slot "
                       "must be start minus the total length of earlier runs",
        "evidence": {"n_max": 8, "mismatches": failures, "first": first},
    })

    alpha = alpha_vector(QuotientId.PATH_QUOTIENT, 7, 3).values
    d = 4
    beta = beta_transform(alpha, d)
    literal = [sum(binom(d - j, k - j) * beta[k] for j in range(k + 1)) for k in range(d + 1)]
    findings.append({
        "id": "reconstruction-subscript",
        "description": "inverting the beta transform needs beta_j inside the sum over j; "
                       "using beta_k there does not recover alpha",
        "evidence": {"n": 7, "m": 3, "d": d, "alpha": list(alpha[: d + 1]),
                     "with_beta_j": list(alpha_from_beta(beta, d)), "with_beta_k": literal},
    })

    findings.append({
        "id": "cycle-rel-exponent",
        "description": "printed cycle-relative count uses exponent n-l-k+1 in each term; the "
                       "middle run sequence has length n-k-1, which enumeration confirms; "
                       "the two agree only for m=2",
        "evidence": {"n": 8, "m": 3, "k": 4,
                     "printed": alpha_cycle_rel(8, 3, 4, "printed"),
                     "corrected": alpha_cycle_rel(8, 3, 4, "corrected"),
                     "oracle": enumerate_alpha(family_spec(QuotientId.CYCLE_REL, 8, 3))[4]},
    })

    findings.append({
        "id": "m2-cycle-term",
        "description": "the m=2 cycle statements use binom(n-j+1, j-2) where the cycle-relative "
                       "count is binom(n-j-1, j-2), and the last one flips the sign of that "
                       "sum; the statements are still checked exactly as written",
        "evidence": {"n": 6, "j": 3, "as_written": binom(4, 1),
                     "cycle_rel": alpha_cycle_rel(6, 2, 3)},
    })

    alpha = enumerate_alpha(family_spec(QuotientId.CYCLE_REL, 5, 3))
    findings.append({
        "id": "cycle-rel-depth-bound",
        "description": "the depth lower bound phi(n-1,m)+m-1 for J/I exceeds the Hilbert depth "
                       "of the enumerated poset for most (n, m) with m >= 3; nonnegativity of the "
                       "J/I betas at d+m-1 rests on that bound and fails at the same (n, m)",
        "evidence": {"n": 5, "m": 3, "alpha_oracle": list(alpha.values),
                     "qdepth": qdepth(alpha), "bound": phi(4, 3) + 2,
                     "beta_at_bound": list(beta_transform(alpha.values, phi(4, 3) + 2))},
    })
    return findings


# ----------------------------------------------------------------------------
# sweeps
# ----------------------------------------------------------------------------

GROUPS = ("t31", "cor21", "t33", "cor22", "identities", "oracle", "qdepth", "jpei")


@dataclass(frozen=True)
class SweepGrid:
    """Parameter grid for :func:`sweep`.

    ``m_values=None`` means every valid ``m`` for each ``n``. The ``m = 2``
    corollary groups run once per ``n`` when 2 is allowed.
    """

    n_min: int = 1
    n_max: int = 12
    m_values: tuple[int, ...] | None = None
    checks: tuple[str, ...] = GROUPS
    oracle_n_max: int = 18
    oracle_cap: int = DEFAULT_ORACLE_CAP

    def __post_init__(self) -> None:
        unknown = set(self.checks) - set(GROUPS)
        if unknown:
            raise ValueError(f"unknown check groups: {sorted(unknown)}; choose from {GROUPS}")

    def units(self) -> list[tuple]:
        units: list[tuple] = []
        want = set(self.checks)
        allows = (lambda m: True) if self.m_values is None else set(self.m_values).__contains__
        oracle_top = min(self.oracle_n_max, self.oracle_cap)
        for n in range(max(self.n_min, 1), self.n_max + 1):
            ms = [m for m in range(1, n + 1) if allows(m)]
            if "cor21" in want and n >= 2 and allows(2):
                units.append(("cor21", n, 2, None))
            if "cor22" in want and n >= 3 and allows(2):
                units.append(("cor22", n, 2, None))
            for i, m in enumerate(ms):
                if "t31" in want:
                    units.append(("t31", n, m, None))
                if "identities" in want:
                    units.append(("identities", n, m, i == 0))
                if "oracle" in want and n <= oracle_top:
                    units.append(("oracle", n, m, self.oracle_cap))
                if "qdepth" in want:
                    units.append(("qdepth", n, m, None))
                if n > m >= 2:
                    for v in VARIANTS:
                        if "t33" in want:
                            units.append(("t33", n, m, v))
                        if "qdepth" in want:
                            units.append(("qdepth-cycle", n, m, v))
                    if "jpei" in want:
                        units.append(("jpei", n, m, None))
        return units

    def to_dict(self) -> dict:
        return {
            "n_min": self.n_min,
            "n_max": self.n_max,
            "m_values": None if self.m_values is None else list(self.m_values),
            "checks": list(self.checks),
            "oracle_n_max": min(self.oracle_n_max, self.oracle_cap),
        }


def _run_unit(unit: tuple) -> list[CheckResult]:
    group, n, m, extra = unit
    if group == "t31":
        return check_t31(n, m)
    if group == "cor21":
        return check_cor21(n)
    if group == "cor22":
        return check_cor22(n)
    if group == "t33":
        return check_t33(n, m, extra)
    if group == "identities":
        return check_identities(n, m, chuv=extra)
    if group == "oracle":
        return check_oracle(n, m, cap=extra)
    if group == "qdepth":
        return _qdepth_path(n, m)
    if group == "qdepth-cycle":
        return _qdepth_cycle(n, m, extra)
    if group == "jpei":
        return check_jpei(n, m)
    raise ValueError(f"unknown group {group!r}")


@dataclass
class SweepReport:
    ranges: dict
    results: list[CheckResult]
    errata: list[dict] = field(default_factory=list)
    timing: dict = field(default_factory=dict)

    @property
    def failures(self) -> list[CheckResult]:
        return [r for r in self.results if r.failed]

    @property
    def discrepancies(self) -> list[CheckResult]:
        return [r for r in self.results if r.discrepancy]

    @property
    def ok(self) -> bool:
        return not any(r.failed for r in self.results)

    def totals(self) -> dict[str, dict[str, int]]:
        out: dict[str, dict[str, int]] = {}
        for r in self.results:
            t = out.setdefault(r.id, {"pass": 0, "fail": 0, "disc": 0})
            t["pass" if r.holds else "fail" if r.blocking else "disc"] += 1
        return dict(sorted(out.items()))

    def summary(self) -> dict:
        totals = self.totals()
        return {
            "pass": sum(t["pass"] for t in totals.values()),
            "fail": sum(t["fail"] for t in totals.values()),
            "disc": sum(t["disc"] for t in totals.values()),
            "by_id": totals,
        }

    def to_dict(self) -> dict:
        return {
            "meta": {"tool": "sqfd", "version": __version__, "default_variant": "corrected",
                     "timing": self.timing},
            "ranges": self.ranges,
            "results": [r.to_dict() for r in self.results],
            "failures": [r.to_dict() for r in self.failures],
            "discrepancies": [r.to_dict() for r in self.discrepancies],
            "errata": self.errata,
            "summary": self.summary(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["id", "n", "m", "k", "d", "variant", "params",
                         "lhs", "rhs", "relation", "holds", "blocking"])
        for r in self.results:
            p = r.params
            writer.writerow([
                r.id, p.get("n", ""), p.get("m", ""), p.get("k", ""), p.get("d", ""),
                p.get("variant", ""), json.dumps(p, sort_keys=True),
                str(r.lhs), str(r.rhs), r.relation, r.holds, r.blocking,
            ])
        return buf.getvalue()

    def to_text(self) -> str:
        s = self.summary()
        lines = [f"checks: {s['pass']} pass, {s['fail']} fail, {s['disc']} discrepancies"]
        for check_id, t in s["by_id"].items():
            lines.append(f"  {check_id:28s} pass={t['pass']} fail={t['fail']} disc={t['disc']}")
        for r in self.failures[:50]:
            lines.append(f"FAIL {r.id} {json.dumps(r.params, sort_keys=True)}: "
                         f"{r.lhs} {r.relation} {r.rhs} is false")
        if len(self.failures) > 50:
            lines.append(f"... {len(self.failures) - 50} more failures")
        for e in self.errata:
            lines.append(f"errata {e['id']}: {e['description']}")
        return "\n".join(lines) + "\n"


def sweep(grid: SweepGrid, jobs: int = 1, errata: bool = True) -> SweepReport:
    """Run every requested check group over ``grid``.

    Units are independent; with ``jobs > 1`` they run in worker processes.
    Results are sorted by ``(id, n, m, k, params)``, so the report content is
    identical for any ``jobs``.
    """
    units = grid.units()
    if not units:
        raise ValueError("the sweep grid is empty")
    start = time.perf_counter()
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_run_unit, units, chunksize=max(1, len(units) // (8 * jobs))))
    else:
        chunks = [_run_unit(u) for u in units]
    results = sorted(itertools.chain.from_iterable(chunks), key=CheckResult.sort_key)
    report = SweepReport(
        ranges=grid.to_dict(),
        results=results,
        errata=errata_findings() if errata else [],
    )
    report.timing = {"elapsed_seconds": round(time.perf_counter() - start, 3), "jobs": jobs}
    return report


def summarize(results: Iterable[CheckResult]) -> Counter:
    return Counter("pass" if r.holds else "fail" if r.blocking else "disc" for r in results)
