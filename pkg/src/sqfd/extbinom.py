"""Exact binomial and extended binomial coefficients.

The extended binomial coefficient ``ext_binom(N, m, k)`` is the coefficient
of ``t**k`` in ``(1 + t + ... + t**(m-1))**N``. Equivalently it counts the
sequences of length ``N`` with entries in ``0..m-1`` summing to ``k``.

Two independent routes are provided: a memoized convolution DP
(:func:`ext_binom`) and an inclusion-exclusion closed form
(:func:`ext_binom_ie`).
"""
from __future__ import annotations

import math
import threading
from dataclasses import dataclass

__all__ = [
    "CoeffRow",
    "binom",
    "ceil_div",
    "clear_cache",
    "coeff_row",
    "ext_binom",
    "ext_binom_ie",
]


def ceil_div(a: int, b: int) -> int:
    """Integer ceiling of ``a / b`` for ``b > 0``."""
    return -(-a // b)


def binom(a: int, b: int) -> int:
    """Binomial coefficient with the zero conventions used in alternating sums.

    ``binom(a, b)`` is 0 when ``b < 0`` or ``0 <= a < b``; otherwise it is the
    falling-factorial quotient ``a (a-1) ... (a-b+1) / b!``, which also covers
    negative upper indices.

    >>> binom(5, 2), binom(3, 5), binom(4, -1), binom(-1, 0), binom(-1, 3)
    (10, 0, 0, 1, -1)
    """
    if b < 0:
        return 0
    if a >= 0:
        return math.comb(a, b)
    # upper negation: binom(a, b) = (-1)^b binom(b - a - 1, b)
    value = math.comb(b - a - 1, b)
    return -value if b & 1 else value


class _RowTable:
    """Per-``m`` table of truncated coefficient rows.

    For fixed ``m`` the table holds rows ``N = 0..len-1``, each truncated to
    degrees ``0..width-1``. A truncated row only depends on the truncated row
    before it, so rows can be extended in ``N`` and rebuilt wider on demand.
    """

    def __init__(self, m: int) -> None:
        self.m = m
        self.width = 0
        self.rows: list[list[int]] = []

    def _next(self, prev: list[int]) -> list[int]:
        m = self.m
        out = []
        window = 0
        for k, c in enumerate(prev):
            window += c
            if k >= m:
                window -= prev[k - m]
            out.append(window)
        return out

    def ensure(self, N: int, width: int) -> None:
        if width > self.width:
            self.width = max(width, 2 * self.width, 16)
            keep = len(self.rows)
            self.rows = [[1] + [0] * (self.width - 1)]
            while len(self.rows) < keep:
                self.rows.append(self._next(self.rows[-1]))
        if not self.rows:
            self.rows.append([1] + [0] * (self.width - 1))
        while len(self.rows) <= N:
            self.rows.append(self._next(self.rows[-1]))

    def get(self, N: int, k: int) -> int:
        return self.rows[N][k]


_tables: dict[int, _RowTable] = {}
_lock = threading.Lock()


def clear_cache() -> None:
    """Drop all memoized coefficient rows."""
    with _lock:
        _tables.clear()


def ext_binom(N: int, m: int, k: int) -> int:
    """Coefficient of ``t**k`` in ``(1 + t + ... + t**(m-1))**N``.

    Computed by repeated convolution with a length-``m`` window; rows are
    memoized per ``(N, m)`` and truncated at the largest degree requested so
    far. Palindromic symmetry halves the degrees that ever need storing.

    >>> ext_binom(4, 3, 4)
    19
    """
    if N < 0 or m < 1:
        raise ValueError(f"ext_binom needs N >= 0 and m >= 1, got N={N}, m={m}")
    top = N * (m - 1)
    if k < 0 or k > top:
        return 0
    k = min(k, top - k)
    if m == 1:
        return 1
    with _lock:
        table = _tables.get(m)
        if table is None:
            table = _tables[m] = _RowTable(m)
        table.ensure(N, k + 1)
        return table.get(N, k)


def ext_binom_ie(N: int, m: int, k: int) -> int:
    """Same value as :func:`ext_binom`, via inclusion-exclusion.

    Expands ``(1 - t**m)**N * (1 - t)**(-N)`` and reads off the coefficient:
    ``sum_l (-1)**l * binom(N, l) * binom(N + k - m*l - 1, k - m*l)``.
    """
    if N < 0 or m < 1:
        raise ValueError(f"ext_binom_ie needs N >= 0 and m >= 1, got N={N}, m={m}")
    if k < 0:
        return 0
    total = 0
    for ell in range(k // m + 1):
        term = binom(N, ell) * binom(N + k - m * ell - 1, k - m * ell)
        total += -term if ell & 1 else term
    return total


@dataclass(frozen=True)
class CoeffRow:
    """All coefficients of ``(1 + t + ... + t**(m-1))**N``."""

    N: int
    m: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.N * (self.m - 1) + 1:
            raise ValueError("coefficient row has the wrong length")

    def __getitem__(self, k: int) -> int:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)


def coeff_row(N: int, m: int) -> CoeffRow:
    """Full coefficient row for exponent ``N`` and window length ``m``."""
    top = N * (m - 1)
    return CoeffRow(N, m, tuple(ext_binom(N, m, k) for k in range(top + 1)))
