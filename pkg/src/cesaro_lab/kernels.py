"""Cesàro kernels :math:`k^\\alpha(n)` of arbitrary real order.

The kernel is evaluated with the product recurrence

.. math::

    k^\\alpha(0) = 1, \\qquad k^\\alpha(n+1) = k^\\alpha(n)\\,\\frac{\\alpha + n}{n + 1},

which has no poles, keeps the exact zeros of negative integer orders and is
exact (in double precision) for small integer orders.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def _is_nonpositive_integer(alpha: float) -> bool:
    return alpha <= 0 and float(alpha).is_integer()


_TABLES: dict[float, np.ndarray] = {}
_CACHE_LIMIT = 512


def _compute(alpha: float, n_max: int) -> np.ndarray:
    out = np.empty(n_max + 1)
    value = 1.0
    out[0] = value
    for n in range(n_max):
        # multiply before dividing: keeps integer orders exact
        value = value * (alpha + n) / (n + 1)
        out[n + 1] = value
    out.setflags(write=False)
    return out


def _kernel_values(alpha: float, n_max: int) -> np.ndarray:
    table = _TABLES.get(alpha)
    if table is None or len(table) <= n_max:
        size = max(n_max, 64) if table is None else max(n_max, 2 * (len(table) - 1))
        table = _compute(alpha, size)
        if len(_TABLES) >= _CACHE_LIMIT:
            _TABLES.clear()
        _TABLES[alpha] = table
    return table[: n_max + 1]


def kernel_values(alpha: float, n_max: int) -> np.ndarray:
    """Return the read-only array ``[k^alpha(0), ..., k^alpha(n_max)]``."""
    if n_max < 0:
        raise ValueError(f"n_max must be non-negative, got {n_max}")
    return _kernel_values(float(alpha), int(n_max))


@dataclass(frozen=True)
class CesaroKernelTable:
    """Values ``k^order(0..N)`` of the Cesàro kernel."""

    order: float
    values: np.ndarray

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n):
        return self.values[n]

    @property
    def n_max(self) -> int:
        return len(self.values) - 1


def kernel_value(alpha: float, n: int) -> float:
    """Cesàro kernel :math:`k^\\alpha(n)` for any real ``alpha`` and ``n >= 0``.

    >>> kernel_value(1, 5)
    1.0
    >>> kernel_value(-0.5, 2)
    -0.125
    """
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return float(kernel_values(alpha, n)[n])


def kernel_table(alpha: float, n_max: int) -> CesaroKernelTable:
    return CesaroKernelTable(order=float(alpha), values=kernel_values(alpha, n_max))


def kernel_asymptotic_ratio(alpha: float, n: int) -> float:
    """Return ``k^alpha(n) * Gamma(alpha) * n**(1 - alpha)``.

    Tends to 1 as ``n`` grows.  Orders ``0, -1, -2, ...`` are rejected since
    :math:`\\Gamma` has a pole there.
    """
    if _is_nonpositive_integer(alpha):
        raise ValueError(f"Gamma has a pole at alpha={alpha}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    # math.gamma handles negative non-integers directly
    return kernel_value(alpha, n) * math.gamma(alpha) * float(n) ** (1.0 - alpha)


def kernel_generating_partial(alpha: float, z: complex, n_max: int) -> complex:
    """Partial sum ``sum_{n<=n_max} k^alpha(n) z**n`` of the series of ``(1 - z)**(-alpha)``."""
    z = complex(z)
    if abs(z) >= 1:
        raise ValueError(f"|z| must be < 1 for the generating series, got |z|={abs(z)}")
    k = kernel_values(alpha, n_max)
    powers = z ** np.arange(n_max + 1)
    # smallest terms first
    return complex(np.sum((k * powers)[::-1]))


def kernel_doubling_ratio(alpha: float, n: int) -> float:
    """Return ``k^alpha(2n) / k^alpha(n)``; bounded in ``n`` for ``alpha > 0``."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    k = kernel_values(alpha, 2 * n)
    return float(k[2 * n] / k[n])


def kernel_convolve(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Truncated convolution on ``N_0``: ``c(n) = sum_{j<=n} a(n-j) b(j)``."""
    n = min(len(a), len(b))
    return np.convolve(a[:n], b[:n])[:n]
