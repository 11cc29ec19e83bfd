"""Path and cycle ideals, their alpha-vectors, and the enumeration oracle.

Squarefree monomials are identified with their supports: ``frozenset`` of
1-based variable indices. The ``alpha`` vector of a pair ``I ⊆ J`` counts, per
degree ``k``, the supports ``C`` with ``x_C`` in ``J`` but not in ``I``.

Quotients are encoded as generator pairs so one enumeration routine serves
every family:

============== ============== ==============
family         ``gens_I``     ``gens_J``
============== ============== ==============
S/I            gens of I      ``[∅]`` (= S)
I              ``[]`` (= 0)   gens of I
J/I            gens of I      gens of J
============== ============== ==============
"""
from __future__ import annotations

import enum
import json
import os
from collections.abc import Iterable, Iterator, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .extbinom import binom, ext_binom

__all__ = [
    "DEFAULT_ORACLE_CAP",
    "VARIANTS",
    "AlphaVector",
    "CycleFamily",
    "GeneralIdealSpec",
    "OracleCapError",
    "PathFamily",
    "QuotientId",
    "RunSequence",
    "alpha_cycle_ideal",
    "alpha_cycle_quotient",
    "alpha_cycle_rel",
    "alpha_path_ideal",
    "alpha_path_quotient",
    "alpha_vector",
    "enumerate_alpha",
    "family_spec",
    "in_cycle_ideal",
    "in_path_ideal",
    "iter_run_sequences",
    "monomial_to_seq",
    "seq_to_monomial",
]

DEFAULT_ORACLE_CAP = 24
VARIANTS = ("corrected", "printed")

MonomialSet = frozenset


class OracleCapError(ValueError):
    """Raised when brute-force enumeration would exceed the configured cap."""


class QuotientId(str, enum.Enum):
    PATH_QUOTIENT = "path-quotient"
    PATH_IDEAL = "path-ideal"
    CYCLE_QUOTIENT = "cycle-quotient"
    CYCLE_IDEAL = "cycle-ideal"
    CYCLE_REL = "cycle-rel"

    @property
    def is_cycle(self) -> bool:
        return self.value.startswith("cycle")


@dataclass(frozen=True)
class PathFamily:
    """Path ideal generated by the ``n - m + 1`` runs of ``m`` consecutive variables."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not (self.n >= self.m >= 1):
            raise ValueError(f"path family needs n >= m >= 1, got n={self.n}, m={self.m}")

    def generators(self) -> list[frozenset[int]]:
        return [frozenset(range(i, i + self.m)) for i in range(1, self.n - self.m + 2)]


@dataclass(frozen=True)
class CycleFamily:
    """Path ideal of the ``n``-cycle: all ``n`` cyclic windows of length ``m``."""

    n: int
    m: int

    def __post_init__(self) -> None:
        if not (self.n > self.m >= 2):
            raise ValueError(f"cycle family needs n > m >= 2, got n={self.n}, m={self.m}")

    def generators(self) -> list[frozenset[int]]:
        n, m = self.n, self.m
        return [frozenset((i + t - 1) % n + 1 for t in range(m)) for i in range(1, n + 1)]


def _check_support(A: Iterable[int], n: int) -> frozenset[int]:
    A = frozenset(A)
    if any(not 1 <= a <= n for a in A):
        raise ValueError(f"support {sorted(A)} is not a subset of 1..{n}")
    return A


def in_path_ideal(A: Iterable[int], fam: PathFamily) -> bool:
    """True iff ``A`` contains ``m`` consecutive integers inside ``1..n``."""
    A = _check_support(A, fam.n)
    run = 0
    for i in range(1, fam.n + 1):
        run = run + 1 if i in A else 0
        if run >= fam.m:
            return True
    return False


def in_cycle_ideal(A: Iterable[int], fam: CycleFamily) -> bool:
    """True iff ``A`` contains ``m`` cyclically consecutive residues mod ``n``."""
    A = _check_support(A, fam.n)
    if len(A) == fam.n:
        return True
    # unroll the cycle once so every window is a linear run
    run = 0
    for i in range(1, fam.n + fam.m):
        run = run + 1 if ((i - 1) % fam.n + 1) in A else 0
        if run >= fam.m:
            return True
    return False


# ----------------------------------------------------------------------------
# closed forms
# ----------------------------------------------------------------------------


def _check_variant(variant: str) -> None:
    if variant not in VARIANTS:
        raise ValueError(f"variant must be one of {VARIANTS}, got {variant!r}")


def alpha_path_quotient(n: int, m: int, k: int) -> int:
    """Number of squarefree degree-``k`` monomials outside the path ideal."""
    PathFamily(n, m)
    if k < 0 or k > n:
        return 0
    return ext_binom(n - k + 1, m, k)


def alpha_path_ideal(n: int, m: int, k: int) -> int:
    PathFamily(n, m)
    if k < 0 or k > n:
        return 0
    return binom(n, k) - alpha_path_quotient(n, m, k)


def alpha_cycle_rel(n: int, m: int, k: int, variant: str = "corrected") -> int:
    """Number of degree-``k`` supports in the cycle ideal but not the path ideal.

    A support outside the path ideal corresponds to a run sequence
    ``(a_1, ..., a_{n-k+1})``; it lies in the cycle ideal iff the wrap-around
    run ``a_1 + a_{n-k+1} = l`` reaches ``m``. There are ``2m - 1 - l`` ways to
    split ``l``, and the middle ``n - k - 1`` entries sum to ``k - l``.

    ``variant="corrected"`` uses that middle length as the exponent.
    ``variant="printed"`` uses the exponent ``n - l - k + 1`` instead, which
    agrees only when ``l = 2``. It is kept so reports can show both.
    """
    CycleFamily(n, m)
    _check_variant(variant)
    if k < 0 or k > n:
        return 0
    total = 0
    for ell in range(m, 2 * m - 1):
        N = n - ell - k + 1 if variant == "printed" else n - k - 1
        if N < 0:
            continue
        total += (2 * m - 1 - ell) * ext_binom(N, m, k - ell)
    return total


def alpha_cycle_quotient(n: int, m: int, k: int, variant: str = "corrected") -> int:
    CycleFamily(n, m)
    if k < 0 or k > n:
        return 0
    return alpha_path_quotient(n, m, k) - alpha_cycle_rel(n, m, k, variant)


def alpha_cycle_ideal(n: int, m: int, k: int, variant: str = "corrected") -> int:
    CycleFamily(n, m)
    if k < 0 or k > n:
        return 0
    return binom(n, k) - alpha_cycle_quotient(n, m, k, variant)


# ----------------------------------------------------------------------------
# run sequences <-> monomials
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class RunSequence:
    """Entries in ``0..m-1`` of length ``n - k + 1`` summing to ``k``.

    Entry ``i`` (1-based) is the length of the run of variables placed at
    sequence slot ``i``; runs are separated by at least one absent variable.
    """

    entries: tuple[int, ...]
    n: int
    m: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "entries", tuple(int(a) for a in self.entries))
        k = sum(self.entries)
        if any(not 0 <= a <= self.m - 1 for a in self.entries):
            raise ValueError(f"entries {self.entries} must lie in 0..{self.m - 1}")
        if len(self.entries) != self.n - k + 1:
            raise ValueError(
                f"sequence summing to {k} must have length {self.n - k + 1}, "
                f"got {len(self.entries)}"
            )

    @property
    def k(self) -> int:
        return sum(self.entries)


def seq_to_monomial(a: RunSequence) -> frozenset[int]:
    """Support of the monomial encoded by ``a``.

    The run for slot ``i`` starts at variable ``i + a_1 + ... + a_{i-1}``.

    >>> sorted(seq_to_monomial(RunSequence((0, 1, 1, 2), n=7, m=3)))
    [2, 4, 6, 7]
    """
    support = []
    prefix = 0
    for i, a_i in enumerate(a.entries, start=1):
        start = i + prefix
        support.extend(range(start, start + a_i))
        prefix += a_i
    return frozenset(support)


def _maximal_runs(A: frozenset[int]) -> list[tuple[int, int]]:
    runs: list[tuple[int, int]] = []
    for x in sorted(A):
        if runs and runs[-1][0] + runs[-1][1] == x:
            runs[-1] = (runs[-1][0], runs[-1][1] + 1)
        else:
            runs.append((x, 1))
    return runs


def monomial_to_seq(A: Iterable[int], fam: PathFamily) -> RunSequence:
    """Inverse of :func:`seq_to_monomial` on supports outside the path ideal.

    A maximal run of length ``b_j`` starting at ``i_j`` goes to slot
    ``i_j - (b_1 + ... + b_{j-1})``.
    """
    A = _check_support(A, fam.n)
    if in_path_ideal(A, fam):
        raise ValueError(f"{sorted(A)} lies in the path ideal (n={fam.n}, m={fam.m})")
    k = len(A)
    entries = [0] * (fam.n - k + 1)
    placed = 0
    for start, length in _maximal_runs(A):
        entries[start - placed - 1] = length
        placed += length
    return RunSequence(tuple(entries), fam.n, fam.m)


def iter_run_sequences(n: int, m: int, k: int) -> Iterator[RunSequence]:
    """All run sequences for ``(n, m)`` summing to ``k``, in lexicographic order."""
    length = n - k + 1
    if k < 0 or length < 1:
        return
    cap = m - 1

    def rec(prefix: list[int], remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 0:
            if remaining == 0:
                yield tuple(prefix)
            return
        lo = max(0, remaining - cap * (slots - 1))
        for a in range(lo, min(cap, remaining) + 1):
            prefix.append(a)
            yield from rec(prefix, remaining - a, slots - 1)
            prefix.pop()

    for entries in rec([], k, length):
        yield RunSequence(entries, n, m)


# ----------------------------------------------------------------------------
# general pairs and the enumeration oracle
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class GeneralIdealSpec:
    """A pair ``I ⊆ J`` of squarefree monomial ideals given by generator supports.

    Empty ``gens_I`` means ``I = 0``; the single generator ``∅`` in ``gens_J``
    means ``J = S``.
    """

    n: int
    gens_I: tuple[frozenset[int], ...] = ()
    gens_J: tuple[frozenset[int], ...] = field(default=(frozenset(),))

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError("n must be nonnegative")
        gi = tuple(_check_support(g, self.n) for g in self.gens_I)
        gj = tuple(_check_support(g, self.n) for g in self.gens_J)
        object.__setattr__(self, "gens_I", gi)
        object.__setattr__(self, "gens_J", gj)
        for g in gi:
            if not any(h <= g for h in gj):
                raise ValueError(f"generator {sorted(g)} of I is not in J")

    @classmethod
    def from_dict(cls, obj: dict) -> GeneralIdealSpec:
        try:
            return cls(
                n=int(obj["n"]),
                gens_I=tuple(frozenset(map(int, g)) for g in obj.get("gens_I", [])),
                gens_J=tuple(frozenset(map(int, g)) for g in obj["gens_J"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed ideal spec: {exc}") from exc

    @classmethod
    def from_json(cls, path: str | os.PathLike) -> GeneralIdealSpec:
        return cls.from_dict(json.loads(Path(path).read_text()))

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "gens_I": [sorted(g) for g in self.gens_I],
            "gens_J": [sorted(g) for g in self.gens_J],
        }


def family_spec(tag: QuotientId | str, n: int, m: int) -> GeneralIdealSpec:
    """Generator pair for one of the named path/cycle families."""
    tag = QuotientId(tag)
    whole = (frozenset(),)
    if tag.is_cycle:
        cyc = tuple(CycleFamily(n, m).generators())
        path = tuple(PathFamily(n, m).generators())
        pairs = {
            QuotientId.CYCLE_QUOTIENT: (cyc, whole),
            QuotientId.CYCLE_IDEAL: ((), cyc),
            QuotientId.CYCLE_REL: (path, cyc),
        }
    else:
        path = tuple(PathFamily(n, m).generators())
        pairs = {
            QuotientId.PATH_QUOTIENT: (path, whole),
            QuotientId.PATH_IDEAL: ((), path),
        }
    gens_I, gens_J = pairs[tag]
    return GeneralIdealSpec(n, gens_I, gens_J)


_CHUNK = 1 << 20


def _to_mask(g: frozenset[int]) -> int:
    mask = 0
    for v in g:
        mask |= 1 << (v - 1)
    return mask


def _count_range(args: tuple[int, tuple[int, ...], tuple[int, ...], int, int]) -> list[int]:
    n, masks_I, masks_J, lo, hi = args
    subsets = np.arange(lo, hi, dtype=np.int64)
    keep = np.zeros(subsets.shape, dtype=bool)
    for g in masks_J:
        keep |= (subsets & g) == g
    subsets = subsets[keep]
    if masks_I:
        hit = np.zeros(subsets.shape, dtype=bool)
        for g in masks_I:
            hit |= (subsets & g) == g
        subsets = subsets[~hit]
    sizes = np.bitwise_count(subsets)
    return [int(c) for c in np.bincount(sizes, minlength=n + 1)[: n + 1]]


def enumerate_alpha(
    spec: GeneralIdealSpec,
    cap: int | None = None,
    jobs: int = 1,
    source: str = "general",
) -> AlphaVector:
    """Count supports of ``J \\ I`` per degree by scanning all ``2**n`` subsets.

    This is the definition applied directly and shares no code with the closed
    forms. ``jobs > 1`` splits the subset range across worker processes; the
    per-degree counts are summed, so the result does not depend on ``jobs``.
    """
    cap = DEFAULT_ORACLE_CAP if cap is None else cap
    if spec.n > cap:
        raise OracleCapError(f"enumeration needs n <= {cap} (the oracle cap), got n={spec.n}")
    masks_I = tuple(_to_mask(g) for g in spec.gens_I)
    masks_J = tuple(_to_mask(g) for g in spec.gens_J)
    total = 1 << spec.n
    work = [
        (spec.n, masks_I, masks_J, lo, min(lo + _CHUNK, total))
        for lo in range(0, total, _CHUNK)
    ]
    if jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_count_range, work))
    else:
        parts = [_count_range(w) for w in work]
    counts = [sum(col) for col in zip(*parts)]
    return AlphaVector(spec.n, source, tuple(counts))


# ----------------------------------------------------------------------------
# assembled vectors
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class AlphaVector:
    """Per-degree counts ``alpha_0..alpha_n`` of a squarefree quotient."""

    n: int
    source: str
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.n + 1:
            raise ValueError(f"alpha vector for n={self.n} needs {self.n + 1} entries")
        for k, v in enumerate(self.values):
            if not 0 <= v <= binom(self.n, k):
                raise ValueError(f"alpha_{k}={v} outside [0, binom({self.n},{k})]")

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[int]:
        return iter(self.values)


_FORMULAS = {
    QuotientId.PATH_QUOTIENT: alpha_path_quotient,
    QuotientId.PATH_IDEAL: alpha_path_ideal,
    QuotientId.CYCLE_QUOTIENT: alpha_cycle_quotient,
    QuotientId.CYCLE_IDEAL: alpha_cycle_ideal,
    QuotientId.CYCLE_REL: alpha_cycle_rel,
}


def alpha_vector(tag: QuotientId | str, n: int, m: int, variant: str = "corrected") -> AlphaVector:
    """Alpha vector of a named family from the closed forms.

    >>> alpha_vector("path-quotient", 7, 3).values
    (1, 7, 21, 30, 19, 3, 0, 0)
    """
    tag = QuotientId(tag)
    _check_variant(variant)
    formula = _FORMULAS[tag]
    if tag.is_cycle:
        values = [formula(n, m, k, variant) for k in range(n + 1)]
        source = f"{tag.value}[{variant}]"
    else:
        values = [formula(n, m, k) for k in range(n + 1)]
        source = tag.value
    return AlphaVector(n, source, tuple(values))


def as_values(alpha: AlphaVector | Sequence[int]) -> tuple[int, ...]:
    if isinstance(alpha, AlphaVector):
        return alpha.values
    return tuple(int(v) for v in alpha)
