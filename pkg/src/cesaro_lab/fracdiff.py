"""Finitely supported sequences on Z and fractional Weyl sums / differences.

One-sided differences :math:`W_\\pm^\\alpha` of a finitely supported sequence
are in general *not* finitely supported for non-integer orders (the kernel
:math:`k^{-\\alpha}` never vanishes), so they are exposed pointwise
(``*_at``) or on an explicit window.  Only the combined operator
:math:`W^\\alpha` (``W_+`` on ``n >= 0``, ``W_-`` on ``n < 0``) maps
:math:`c_{00}(\\mathbb{Z})` into itself and returns a :class:`ZSeq`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .kernels import kernel_values

__all__ = [
    "ZSeq",
    "convolve",
    "split_pos",
    "split_neg",
    "reflect",
    "random_zseq",
    "weyl_sum_plus_at",
    "weyl_sum_minus_at",
    "weyl_diff_plus_at",
    "weyl_diff_minus_at",
    "weyl_diff_plus_via_composition",
    "weyl_diff_minus_via_composition",
    "weyl_plus_window",
    "weyl_minus_window",
    "weyl_combined",
]


@dataclass(frozen=True, eq=False)
class ZSeq:
    """A finitely supported complex sequence ``f: Z -> C``.

    ``values[i]`` holds ``f(lo + i)``.  The window is trimmed on construction so
    that the first and last stored entries are nonzero; the zero sequence has
    an empty window.  Reading any index outside the window gives 0.
    """

    lo: int
    values: np.ndarray

    def __post_init__(self):
        vals = np.atleast_1d(np.asarray(self.values, dtype=complex)).ravel()
        if not np.all(np.isfinite(vals)):
            raise ValueError("ZSeq values must be finite")
        nz = np.flatnonzero(vals)
        if nz.size == 0:
            lo, vals = 0, np.zeros(0, dtype=complex)
        else:
            lo = int(self.lo) + int(nz[0])
            vals = vals[nz[0] : nz[-1] + 1].copy()
        vals.setflags(write=False)
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "values", vals)

    # construction -----------------------------------------------------------

    @classmethod
    def zero(cls) -> ZSeq:
        return cls(0, [])

    @classmethod
    def delta(cls, k: int, scale: complex = 1.0) -> ZSeq:
        """Unit mass ``e_k`` (times ``scale``)."""
        return cls(k, [scale])

    @classmethod
    def from_dict(cls, data: dict) -> ZSeq:
        re = list(data.get("re", []))
        im = list(data.get("im", [0.0] * len(re)))
        if len(re) != len(im):
            raise ValueError("'re' and 'im' must have equal length")
        return cls(int(data["lo"]), np.asarray(re, float) + 1j * np.asarray(im, float))

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "re": [float(v) for v in self.values.real],
            "im": [float(v) for v in self.values.imag],
        }

    # views ------------------------------------------------------------------

    @property
    def hi(self) -> int:
        """Last index of the window (``lo - 1`` for the zero sequence)."""
        return self.lo + len(self.values) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.values) == 0

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> complex:
        i = n - self.lo
        if 0 <= i < len(self.values):
            return complex(self.values[i])
        return 0j

    def window(self, a: int, b: int) -> np.ndarray:
        """Values ``f(a), ..., f(b)`` as a fresh array (zero padded)."""
        out = np.zeros(max(b - a + 1, 0), dtype=complex)
        if self.is_zero or b < a:
            return out
        s, e = max(a, self.lo), min(b, self.hi)
        if s <= e:
            out[s - a : e - a + 1] = self.values[s - self.lo : e - self.lo + 1]
        return out

    def items(self) -> Iterable[tuple[int, complex]]:
        for i, v in enumerate(self.values):
            yield self.lo + i, complex(v)

    def l1(self) -> float:
        return float(np.sum(np.abs(self.values)))

    def allclose(self, other: ZSeq, atol: float = 1e-12) -> bool:
        if self.is_zero and other.is_zero:
            return True
        a = min(self.lo if not self.is_zero else other.lo, other.lo if not other.is_zero else self.lo)
        b = max(self.hi, other.hi)
        return bool(np.allclose(self.window(a, b), other.window(a, b), rtol=0, atol=atol))

    # arithmetic -------------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, ZSeq):
            return NotImplemented
        return self.lo == other.lo and np.array_equal(self.values, other.values)

    def __hash__(self):
        return hash((self.lo, self.values.tobytes()))

    def __add__(self, other: ZSeq) -> ZSeq:
        if self.is_zero:
            return other
        if other.is_zero:
            return self
        a, b = min(self.lo, other.lo), max(self.hi, other.hi)
        return ZSeq(a, self.window(a, b) + other.window(a, b))

    def __neg__(self) -> ZSeq:
        return ZSeq(self.lo, -self.values)

    def __sub__(self, other: ZSeq) -> ZSeq:
        return self + (-other)

    def __mul__(self, scalar: complex) -> ZSeq:
        return ZSeq(self.lo, self.values * scalar)

    __rmul__ = __mul__

    def __repr__(self) -> str:
        return f"ZSeq(lo={self.lo}, values={self.values.tolist()!r})"


def convolve(f: ZSeq, g: ZSeq) -> ZSeq:
    """Convolution ``(f*g)(n) = sum_j f(n-j) g(j)``, computed exactly."""
    if f.is_zero or g.is_zero:
        return ZSeq.zero()
    return ZSeq(f.lo + g.lo, np.convolve(f.values, g.values))


def split_pos(f: ZSeq) -> ZSeq:
    """``f_+``: the restriction of ``f`` to ``n >= 0``."""
    if f.is_zero or f.hi < 0:
        return ZSeq.zero()
    return ZSeq(0, f.window(0, f.hi))


def split_neg(f: ZSeq) -> ZSeq:
    """``f_-``: the restriction of ``f`` to ``n < 0``."""
    if f.is_zero or f.lo >= 0:
        return ZSeq.zero()
    return ZSeq(f.lo, f.window(f.lo, -1))


def reflect(f: ZSeq) -> ZSeq:
    """``f~(n) = f(-n)``."""
    if f.is_zero:
        return f
    return ZSeq(-f.hi, f.values[::-1])


def random_zseq(rng: np.random.Generator, lo: int, hi: int, real: bool = False) -> ZSeq:
    """Random sequence with entries uniform in the unit square on ``[lo, hi]``."""
    size = hi - lo + 1
    vals = rng.uniform(-1, 1, size)
    if not real:
        vals = vals + 1j * rng.uniform(-1, 1, size)
    return ZSeq(lo, vals)


# pointwise one-sided sums ---------------------------------------------------


def _fsum_complex(terms: np.ndarray) -> complex:
    return complex(math.fsum(terms.real), math.fsum(terms.imag))


def _right_at(f: ZSeq, order: float, n: int) -> complex:
    # sum_{j >= n} k^order(j - n) f(j)
    if f.is_zero or n > f.hi:
        return 0j
    vals = f.window(n, f.hi)
    k = kernel_values(order, f.hi - n)
    return _fsum_complex(k * vals)


def _left_at(f: ZSeq, order: float, n: int) -> complex:
    # sum_{j <= n} k^order(n - j) f(j)
    if f.is_zero or n < f.lo:
        return 0j
    vals = f.window(f.lo, n)[::-1]
    k = kernel_values(order, n - f.lo)
    return _fsum_complex(k * vals)


def _check_sum_order(alpha: float) -> None:
    if alpha < 0:
        raise ValueError(f"Weyl sums need alpha >= 0, got {alpha}; use weyl_diff_*")


def weyl_sum_plus_at(f: ZSeq, alpha: float, n: int) -> complex:
    """``W_+^{-alpha} f(n) = sum_{j>=n} k^alpha(j-n) f(j)``."""
    _check_sum_order(alpha)
    return _right_at(f, alpha, n)


def weyl_sum_minus_at(f: ZSeq, alpha: float, n: int) -> complex:
    """``W_-^{-alpha} f(n) = sum_{j<=n} k^alpha(n-j) f(j)``."""
    _check_sum_order(alpha)
    return _left_at(f, alpha, n)


def weyl_diff_plus_at(f: ZSeq, alpha: float, n: int) -> complex:
    """Forward Weyl difference ``W_+^alpha f(n) = sum_{j>=n} k^{-alpha}(j-n) f(j)``.

    Valid for every real ``alpha``: negative orders give Weyl sums and
    ``alpha = 0`` returns ``f(n)``.
    """
    return _right_at(f, -alpha, n)


def weyl_diff_minus_at(f: ZSeq, alpha: float, n: int) -> complex:
    """Backward Weyl difference ``W_-^alpha f(n) = sum_{j<=n} k^{-alpha}(n-j) f(j)``."""
    return _left_at(f, -alpha, n)


def _composition_order(alpha: float) -> int:
    if alpha <= 0 or float(alpha).is_integer():
        raise ValueError(
            f"composition form needs a positive non-integer order, got {alpha}"
        )
    return math.floor(alpha) + 1


def weyl_diff_plus_via_composition(f: ZSeq, alpha: float, n: int) -> complex:
    """``W_+^alpha f(n)`` as ``(-1)^m Delta^m`` of the order ``m - alpha`` Weyl sum.

    Here ``m = floor(alpha) + 1``.  Independent of :func:`weyl_diff_plus_at`,
    which uses the kernel ``k^{-alpha}`` directly.
    """
    m = _composition_order(alpha)
    return sum(
        (-1) ** i * math.comb(m, i) * weyl_sum_plus_at(f, m - alpha, n + i)
        for i in range(m + 1)
    )


def weyl_diff_minus_via_composition(f: ZSeq, alpha: float, n: int) -> complex:
    """``W_-^alpha f(n)`` as ``nabla^m`` of the order ``m - alpha`` Weyl sum."""
    m = _composition_order(alpha)
    return sum(
        (-1) ** i * math.comb(m, i) * weyl_sum_minus_at(f, m - alpha, n - i)
        for i in range(m + 1)
    )


# windowed evaluation --------------------------------------------------------


def weyl_plus_window(f: ZSeq, alpha: float, start: int) -> np.ndarray:
    """``W_+^alpha f(n)`` for ``n = start, ..., f.hi`` (empty if ``start > f.hi``).

    Entries above ``f.hi`` vanish and are not returned.
    """
    if f.is_zero or start > f.hi:
        return np.zeros(0, dtype=complex)
    vals = f.window(start, f.hi)
    size = len(vals)
    k = kernel_values(-alpha, size - 1)
    # correlation of vals with k, done as a direct (non-FFT) convolution
    return np.convolve(vals[::-1], k)[:size][::-1]


def weyl_minus_window(f: ZSeq, alpha: float, stop: int) -> np.ndarray:
    """``W_-^alpha f(n)`` for ``n = f.lo, ..., stop`` (empty if ``stop < f.lo``)."""
    if f.is_zero or stop < f.lo:
        return np.zeros(0, dtype=complex)
    vals = f.window(f.lo, stop)
    size = len(vals)
    k = kernel_values(-alpha, size - 1)
    return np.convolve(vals, k)[:size]


def weyl_combined(f: ZSeq, alpha: float) -> ZSeq:
    """``W^alpha f``: ``W_+^alpha f`` on ``n >= 0`` and ``W_-^alpha f`` on ``n < 0``.

    For ``supp f`` inside ``[a, b]`` the result is supported in
    ``[min(a, 0), max(b, 0)]``, so it is again finitely supported.
    """
    if f.is_zero:
        return f
    a, b = min(f.lo, 0), max(f.hi, 0)
    out = np.zeros(b - a + 1, dtype=complex)
    pos = weyl_plus_window(f, alpha, 0)
    out[-a : -a + len(pos)] = pos
    neg = weyl_minus_window(f, alpha, -1)
    out[: len(neg)] = neg
    return ZSeq(a, out)
