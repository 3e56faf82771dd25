"""Weighted convolution-algebra norms and fractional Wiener algebras.

For ``alpha >= 0`` the norm on finitely supported sequences is

.. math::

    q_\\alpha(f) = \\sum_{n\\in\\mathbb{Z}} k^{\\alpha+1}(|n|)\\,|W^\\alpha f(n)|,

and a periodic function :math:`\\mathfrak{f}(t) = \\sum_n \\hat f(n) e^{int}`
gets the norm of its coefficient sequence.  Everything here is computed on the
coefficient side, where the sums are finite and exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .fracdiff import ZSeq, convolve, random_zseq, weyl_combined, weyl_plus_window
from .kernels import kernel_values

UNIMODULAR_TOL = 1e-8


def _check_order(alpha: float) -> None:
    if alpha < 0:
        raise ValueError(f"alpha must be >= 0, got {alpha}")


def _weighted_parts(f: ZSeq, alpha: float) -> tuple[float, float]:
    w = weyl_combined(f, alpha)
    if w.is_zero:
        return 0.0, 0.0
    idx = np.arange(w.lo, w.hi + 1)
    weights = kernel_values(alpha + 1, int(np.max(np.abs(idx))))[np.abs(idx)]
    terms = weights * np.abs(w.values)
    neg = float(np.sum(terms[idx < 0]))
    pos = float(np.sum(terms[idx >= 0]))
    return neg, pos


def q_norm(f: ZSeq, alpha: float) -> float:
    """The norm ``q_alpha(f)``; equals the l1 norm at ``alpha = 0``."""
    _check_order(alpha)
    neg, pos = _weighted_parts(f, alpha)
    return neg + pos


def q_norm_split(f: ZSeq, alpha: float) -> tuple[float, float]:
    """Contributions ``(q_alpha^-, q_alpha^+)`` of indices ``n < 0`` and ``n >= 0``."""
    _check_order(alpha)
    return _weighted_parts(f, alpha)


def q_norm_plus(f: ZSeq, alpha: float) -> float:
    """Norm of ``tau^alpha(k^{alpha+1})``: ``sum_{n>=0} k^{alpha+1}(n) |W_+^alpha f(n)|``.

    Only defined for sequences supported in ``N_0``, where it agrees with
    :func:`q_norm`.
    """
    _check_order(alpha)
    if not f.is_zero and f.lo < 0:
        raise ValueError("q_norm_plus needs a sequence supported in n >= 0")
    w = weyl_plus_window(f, alpha, 0)
    k = kernel_values(alpha + 1, max(len(w) - 1, 0))[: len(w)]
    return float(np.sum(k * np.abs(w)))


def q_bar_norm(f: ZSeq, alpha: float) -> float:
    """Equivalent norm ``|f(0)| + sum_{n>=1} n^alpha (|W_+^alpha f(n)| + |W_-^alpha f(-n)|)``."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    w = weyl_combined(f, alpha)
    total = abs(f[0])
    for n, v in w.items():
        if n != 0:
            total += abs(n) ** alpha * abs(v)
    return float(total)


def submultiplicativity_ratio(f: ZSeq, g: ZSeq, alpha: float) -> float:
    """``q_alpha(f*g) / (q_alpha(f) q_alpha(g))``; an empirical lower bound for ``C_alpha``."""
    if f.is_zero or g.is_zero:
        raise ValueError("submultiplicativity ratio is undefined for the zero sequence")
    return q_norm(convolve(f, g), alpha) / (q_norm(f, alpha) * q_norm(g, alpha))


@dataclass(frozen=True)
class SweepResult:
    """Summary of an empirical sweep of a ratio over random inputs."""

    alpha: float
    trials: int
    min: float
    max: float
    mean: float


def _random_pair_support(rng: np.random.Generator, max_len: int) -> tuple[int, int]:
    lo = int(rng.integers(-max_len, max_len))
    return lo, lo + int(rng.integers(0, max_len))


def submultiplicativity_sweep(
    alpha: float, trials: int = 1000, seed: int = 0, max_len: int = 8
) -> SweepResult:
    """Evaluate :func:`submultiplicativity_ratio` on ``trials`` random pairs."""
    rng = np.random.default_rng(seed)
    ratios = np.empty(trials)
    for i in range(trials):
        f = random_zseq(rng, *_random_pair_support(rng, max_len))
        g = random_zseq(rng, *_random_pair_support(rng, max_len))
        ratios[i] = submultiplicativity_ratio(f, g, alpha)
    return SweepResult(alpha, trials, float(ratios.min()), float(ratios.max()), float(ratios.mean()))


def norm_equivalence_sweep(
    alpha: float, trials: int = 1000, seed: int = 0, max_len: int = 8
) -> SweepResult:
    """Range of ``q_bar_norm / q_norm`` over random sequences."""
    rng = np.random.default_rng(seed)
    ratios = np.empty(trials)
    for i in range(trials):
        f = random_zseq(rng, *_random_pair_support(rng, max_len))
        ratios[i] = q_bar_norm(f, alpha) / q_norm(f, alpha)
    return SweepResult(alpha, trials, float(ratios.min()), float(ratios.max()), float(ratios.mean()))


@dataclass(frozen=True)
class PeriodicFn:
    """Periodic function ``t -> sum_n coeffs(n) e^{int}`` with finitely many modes."""

    coeffs: ZSeq

    @property
    def analytic(self) -> bool:
        """True when no negative frequencies occur (membership in ``A_+``)."""
        return self.coeffs.is_zero or self.coeffs.lo >= 0

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros(t.shape, dtype=complex)
        for n, c in self.coeffs.items():
            out = out + c * np.exp(1j * n * t)
        return out if out.ndim else complex(out)

    def at_point(self, z: complex) -> complex:
        """Value at the point ``z = e^{it}`` of the unit circle."""
        return complex(sum(c * z**n for n, c in self.coeffs.items()))

    @classmethod
    def from_dict(cls, data: dict) -> PeriodicFn:
        return cls(ZSeq.from_dict(data["coeffs"]))

    def to_dict(self) -> dict:
        return {"coeffs": self.coeffs.to_dict()}


def wiener_norm(fn: PeriodicFn, alpha: float) -> float:
    """Norm in ``A^alpha(T)``: the ``q_alpha`` norm of the Fourier coefficients."""
    return q_norm(fn.coeffs, alpha)


def fourier_coefficients(samples: Sequence[complex], band: int) -> ZSeq:
    """Coefficients ``f^(n)``, ``|n| <= band``, from samples at ``t_k = 2 pi k / M``.

    Uses the DFT (the trapezoid rule on the circle), exact up to roundoff for
    trigonometric polynomials of degree ``<= band``.
    """
    samples = np.asarray(samples, dtype=complex)
    m = len(samples)
    if band < 0:
        raise ValueError(f"band must be non-negative, got {band}")
    if m < 2 * band + 1:
        raise ValueError(
            f"{m} samples cannot resolve band {band} without aliasing; need >= {2 * band + 1}"
        )
    c = np.fft.fft(samples) / m
    idx = np.arange(-band, band + 1)
    return ZSeq(-band, c[idx % m])


def annihilator_polynomial(points: Sequence[complex]) -> PeriodicFn:
    """Coefficients of ``prod_l (e^{it} - l)``, vanishing at each unimodular ``l``."""
    points = [complex(p) for p in points]
    for p in points:
        if abs(abs(p) - 1) > UNIMODULAR_TOL:
            raise ValueError(f"point {p} is not on the unit circle")
    coeffs = np.array([1.0 + 0j])
    for p in points:
        # multiply by (z - p), coefficients in ascending powers
        coeffs = np.concatenate([[0j], coeffs]) - p * np.concatenate([coeffs, [0j]])
    return PeriodicFn(ZSeq(0, coeffs))
