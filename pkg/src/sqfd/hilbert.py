"""Beta transforms, Hilbert depth, and the depth/sdepth bound catalogue."""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from .extbinom import binom, ceil_div
from .ideals import AlphaVector, CycleFamily, PathFamily, QuotientId, alpha_vector, as_values

__all__ = [
    "BetaVector",
    "DepthBounds",
    "alpha_from_beta",
    "cycle_ideal_lower_bounds",
    "beta_from_alpha",
    "beta_incremental",
    "beta_transform",
    "chu_vandermonde",
    "depth_bounds_cycle",
    "depth_bounds_path",
    "phi",
    "qdepth",
]


@dataclass(frozen=True)
class BetaVector:
    d: int
    values: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.d + 1:
            raise ValueError(f"beta vector for d={self.d} needs {self.d + 1} entries")

    def __getitem__(self, k: int) -> int:
        return self.values[k]

    def __len__(self) -> int:
        return len(self.values)

    @property
    def nonnegative(self) -> bool:
        return all(v >= 0 for v in self.values)


def beta_transform(values: Sequence[int], d: int) -> tuple[int, ...]:
    """``beta_k = sum_j (-1)**(k-j) binom(d-j, k-j) values[j]`` for ``0 <= k <= d``.

    No range check on ``d``: entries past the end of ``values`` count as zero,
    which is what the literal sums need when ``d`` exceeds the ambient size.
    """
    alpha = list(values[: d + 1]) + [0] * max(0, d + 1 - len(values))
    out = []
    for k in range(d + 1):
        total = 0
        for j in range(k + 1):
            if alpha[j]:
                term = binom(d - j, k - j) * alpha[j]
                total += -term if (k - j) & 1 else term
        out.append(total)
    return tuple(out)


def _checked_values(alpha: AlphaVector | Sequence[int], d: int) -> tuple[int, ...]:
    values = as_values(alpha)
    n = len(values) - 1
    if not 0 <= d <= n:
        raise ValueError(f"d must lie in 0..{n}, got {d}")
    return values


def beta_from_alpha(alpha: AlphaVector | Sequence[int], d: int) -> BetaVector:
    """Beta vector at candidate depth ``d`` by the alternating sum.

    >>> beta_from_alpha((1, 7, 21, 30, 19, 5, 0, 0), 4).values
    (1, 3, 6, 5, 4)
    """
    return BetaVector(d, beta_transform(_checked_values(alpha, d), d))


def beta_incremental(alpha: AlphaVector | Sequence[int], d: int) -> BetaVector:
    """Beta vector at ``d`` by peeling off lower betas one degree at a time."""
    values = _checked_values(alpha, d)
    betas: list[int] = []
    for k in range(d + 1):
        b = values[k]
        for i, prev in enumerate(betas):
            b -= binom(d - i, k - i) * prev
        betas.append(b)
    return BetaVector(d, tuple(betas))


def alpha_from_beta(beta: BetaVector | Sequence[int], d: int | None = None) -> tuple[int, ...]:
    """Recover ``alpha_0..alpha_d`` via ``alpha_k = sum_j binom(d-j, k-j) beta_j``."""
    if isinstance(beta, BetaVector):
        d = beta.d if d is None else d
        values = beta.values
    else:
        values = tuple(int(v) for v in beta)
        d = len(values) - 1 if d is None else d
    if len(values) != d + 1:
        raise ValueError(f"beta vector for d={d} needs {d + 1} entries")
    return tuple(
        sum(binom(d - j, k - j) * values[j] for j in range(k + 1)) for k in range(d + 1)
    )


def qdepth(alpha: AlphaVector | Sequence[int]) -> int:
    """Largest ``d`` with every ``beta_k^d`` nonnegative.

    Scans ``d = n, n-1, ...`` and stops at the first feasible value, so the
    result is the true maximum even if feasibility is not monotone in ``d``.
    """
    values = as_values(alpha)
    if not any(values):
        raise ValueError("Hilbert depth is undefined for an empty poset (alpha is all zero)")
    for d in range(len(values) - 1, -1, -1):
        if all(b >= 0 for b in beta_transform(values, d)):
            return d
    raise AssertionError("unreachable: beta_0^0 = alpha_0 >= 0")


def phi(n: int, m: int) -> int:
    """``n + 1 - floor((n+1)/(m+1)) - ceil((n+1)/(m+1))``."""
    if n < 0 or m < 1:
        raise ValueError(f"phi needs n >= 0 and m >= 1, got n={n}, m={m}")
    return n + 1 - (n + 1) // (m + 1) - ceil_div(n + 1, m + 1)


def chu_vandermonde(n: int, d: int, k: int) -> tuple[int, int]:
    """Both sides of the alternating-sum identity for the full binomial row.

    ``sum_j (-1)**(k-j) binom(d-j, k-j) binom(n, j)`` and ``binom(n-d+k-1, k)``.
    """
    if not 0 <= k <= d <= n:
        raise ValueError(f"need 0 <= k <= d <= n, got n={n}, d={d}, k={k}")
    lhs = sum((-1) ** (k - j) * binom(d - j, k - j) * binom(n, j) for j in range(k + 1))
    return lhs, binom(n - d + k - 1, k)


@dataclass(frozen=True)
class DepthBounds:
    """Known depth facts for one quotient next to its computed Hilbert depth.

    ``depth`` is an int when the exact value is known, or a ``(low, None)``
    pair when only a lower bound is.
    """

    tag: QuotientId
    phi: int
    depth: int | tuple[int, int | None]
    sdepth_lower: int
    sdepth_upper: int | None
    qdepth: int

    @property
    def consistent(self) -> bool:
        """Whether the known Stanley-depth lower bound stays below qdepth."""
        return self.sdepth_lower <= self.qdepth

    def to_dict(self) -> dict:
        depth = list(self.depth) if isinstance(self.depth, tuple) else self.depth
        return {
            "tag": self.tag.value,
            "phi": self.phi,
            "depth": depth,
            "sdepth_lower": self.sdepth_lower,
            "sdepth_upper": self.sdepth_upper,
            "qdepth": self.qdepth,
            "consistent": self.consistent,
        }


def depth_bounds_path(n: int, m: int) -> dict[QuotientId, DepthBounds]:
    """Bounds for ``S/I`` (sdepth = depth = phi) and ``I`` (sdepth >= depth = phi + 1)."""
    PathFamily(n, m)
    f = phi(n, m)
    return {
        QuotientId.PATH_QUOTIENT: DepthBounds(
            QuotientId.PATH_QUOTIENT, f, f, f, f,
            qdepth(alpha_vector(QuotientId.PATH_QUOTIENT, n, m)),
        ),
        QuotientId.PATH_IDEAL: DepthBounds(
            QuotientId.PATH_IDEAL, f, f + 1, f + 1, None,
            qdepth(alpha_vector(QuotientId.PATH_IDEAL, n, m)),
        ),
    }


def cycle_ideal_lower_bounds(n: int, m: int) -> dict[str, int]:
    """The three known Stanley-depth lower bounds for the cycle ideal itself."""
    bounds = {
        "min": min(phi(n - 1, m) + m - 1, phi(n, m) + 1),
        "depth": phi(n - 1, m) + 1,
    }
    if m >= 3:
        bounds["m>=3"] = phi(n, m) + 1
    return bounds


def depth_bounds_cycle(n: int, m: int, variant: str = "corrected") -> dict[QuotientId, DepthBounds]:
    """Bounds for ``S/J``, ``J/I`` and ``J``, with qdepth from the chosen alpha variant."""
    CycleFamily(n, m)
    f, g = phi(n, m), phi(n - 1, m)
    q = {
        tag: qdepth(alpha_vector(tag, n, m, variant))
        for tag in (QuotientId.CYCLE_QUOTIENT, QuotientId.CYCLE_REL, QuotientId.CYCLE_IDEAL)
    }
    return {
        QuotientId.CYCLE_QUOTIENT: DepthBounds(
            QuotientId.CYCLE_QUOTIENT, f, g, g, f, q[QuotientId.CYCLE_QUOTIENT]
        ),
        QuotientId.CYCLE_REL: DepthBounds(
            QuotientId.CYCLE_REL, f, (g + m - 1, None), g + m - 1, None,
            q[QuotientId.CYCLE_REL],
        ),
        QuotientId.CYCLE_IDEAL: DepthBounds(
            QuotientId.CYCLE_IDEAL, f, g + 1, max(cycle_ideal_lower_bounds(n, m).values()),
            None, q[QuotientId.CYCLE_IDEAL],
        ),
    }
