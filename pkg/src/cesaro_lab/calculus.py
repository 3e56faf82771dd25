"""Fractional functional calculus and the decay experiments built on it.

For a sequence ``f`` supported in ``N_0`` the calculus is

.. math::

    \\theta_\\alpha(f) = \\sum_{n\\ge 0} W_+^\\alpha f(n)\\,\\Delta^{-\\alpha}\\mathcal{T}(n),

a finite sum because ``W_+^alpha f`` vanishes above the support of ``f``.
"""

from __future__ import annotations

import csv
import io
import json
import math
import warnings
from dataclasses import dataclass, field

import numpy as np

from .algebras import PeriodicFn
from .fracdiff import ZSeq, weyl_plus_window
from .kernels import kernel_values
from .operators import CesaroTransform, operator_norm, operator_norms, peripheral_spectrum

# upper-window max < DECAY_FACTOR * lower-window max counts as decaying
DECAY_FACTOR = 0.5
ANNIHILATION_TOL = 1e-8


def _check_analytic(f: ZSeq) -> None:
    if not f.is_zero and f.lo < 0:
        raise ValueError("the functional calculus is defined for sequences supported in n >= 0")


def h_sequence(alpha: float, n: int) -> ZSeq:
    """``h_n^alpha(j) = k^alpha(n - j)`` for ``0 <= j <= n``, else 0."""
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return ZSeq(0, kernel_values(alpha, n)[::-1])


def functional_calculus(ct: CesaroTransform, f: ZSeq) -> np.ndarray:
    """``theta_alpha(f)`` at the order of ``ct``."""
    _check_analytic(f)
    if f.is_zero:
        return np.zeros((ct.dim, ct.dim), dtype=complex)
    w = weyl_plus_window(f, ct.alpha, 0)
    return np.tensordot(w, ct.sums(f.hi), axes=1)


def polynomial_calculus(ct: CesaroTransform, f: ZSeq) -> np.ndarray:
    """``sum_j f(j) T^j`` from the cached powers."""
    _check_analytic(f)
    if f.is_zero:
        return np.zeros((ct.dim, ct.dim), dtype=complex)
    return np.tensordot(f.window(0, f.hi), ct.powers(f.hi), axes=1)


def calculus_consistency_residual(ct: CesaroTransform, f: ZSeq) -> float:
    """``|theta_alpha(f) - sum_j f(j) T^j|``; zero up to roundoff."""
    return operator_norm(functional_calculus(ct, f) - polynomial_calculus(ct, f))


# resolvent -------------------------------------------------------------------


def _resolvent_tail_bound(ct: CesaroTransform, lam: complex, n_max: int) -> float:
    """Bound on the omitted terms ``n > n_max`` of the resolvent series.

    Uses ``|Delta^{-alpha} T(n)| <= C k^{alpha+1}(n)`` with ``C`` the largest
    mean norm seen up to ``n_max``, and the fact that ``k^{alpha+1}(n+1)/k^{alpha+1}(n)``
    decreases in ``n``, so the tail is dominated by a geometric series.
    """
    r = 1.0 / abs(lam)
    a = ct.alpha
    c = float(operator_norms(ct.means(n_max)).max())
    ratio = r * (a + 2 + n_max) / (n_max + 2)
    if ratio >= 1:
        return math.inf
    k_next = kernel_values(a + 1, n_max + 1)[n_max + 1]
    prefactor = abs(((lam - 1) / lam) ** a)
    return prefactor * c * k_next * r ** (n_max + 2) / (1 - ratio)


def resolvent_series(
    ct: CesaroTransform, lam: complex, n_max: int | None = None, tol: float = 1e-10
) -> np.ndarray:
    """``(lam - T)^{-1}`` as ``((lam-1)/lam)^alpha sum_n lam^{-n-1} Delta^{-alpha} T(n)``.

    ``n_max=None`` picks the shortest truncation whose tail bound is below
    ``tol``; an explicit ``n_max`` that does not meet ``tol`` raises
    ``ValueError`` naming a sufficient length.  The constant in the tail bound
    is estimated from the computed means, so the bound is only as good as the
    assumption that ``T`` is ``(C, alpha)``-bounded.
    """
    lam = complex(lam)
    if abs(lam) <= 1:
        raise ValueError(f"the series needs |lambda| > 1, got |lambda|={abs(lam)}")
    if n_max is None:
        n_max = 16
        while _resolvent_tail_bound(ct.prepare(n_max), lam, n_max) > tol:
            n_max *= 2
            if n_max > 1 << 22:
                raise ValueError("resolvent series does not reach the tolerance")
    else:
        bound = _resolvent_tail_bound(ct.prepare(n_max), lam, n_max)
        if bound > tol:
            suggested = n_max
            while _resolvent_tail_bound(ct.prepare(suggested), lam, suggested) > tol:
                suggested *= 2
            raise ValueError(
                f"tail bound {bound:.3e} exceeds tol={tol:g} at N={n_max}; try N={suggested}"
            )
    weights = lam ** -(np.arange(n_max + 1) + 1.0)
    total = np.tensordot(weights, ct.sums(n_max), axes=1)
    return ((lam - 1) / lam) ** ct.alpha * total


# experiment curves ------------------------------------------------------------


def dyadic_grid(n_max: int) -> list[int]:
    """``1, 2, 4, ...`` up to ``n_max``."""
    return [1 << k for k in range(n_max.bit_length()) if 1 << k <= n_max]


def linear_grid(n_max: int) -> list[int]:
    return list(range(n_max + 1))


@dataclass
class DecayCurve:
    """Rows ``(n, value)`` of a decay or growth experiment, sorted by ``n``."""

    ns: np.ndarray
    values: np.ndarray
    meta: dict = field(default_factory=dict)

    def __post_init__(self):
        self.ns = np.asarray(self.ns, dtype=int)
        self.values = np.asarray(self.values, dtype=float)
        if self.ns.shape != self.values.shape:
            raise ValueError("ns and values must have the same length")
        if np.any(np.diff(self.ns) <= 0):
            raise ValueError("grid must be strictly increasing")
        if not np.all(np.isfinite(self.values)) or np.any(self.values < 0):
            raise ValueError("curve values must be finite and non-negative")

    @property
    def rows(self) -> list[tuple[int, float]]:
        return [(int(n), float(v)) for n, v in zip(self.ns, self.values)]

    def value_at(self, n: int) -> float:
        (i,) = np.flatnonzero(self.ns == n)
        return float(self.values[i])

    def window_maxima(self) -> tuple[float, float]:
        """Maxima over the lower and upper dyadic windows.

        With ``2^K`` the largest power of two not exceeding the last grid
        point, the upper window is ``n >= 2^(K-1)`` and the lower window is
        ``1 <= n < 2^(K-1)``.
        """
        last = int(self.ns[-1])
        if last < 4:
            raise ValueError("need grid points up to n >= 4 for a trend")
        split = 1 << (last.bit_length() - 2)
        lower = self.values[(self.ns >= 1) & (self.ns < split)]
        upper = self.values[self.ns >= split]
        if not len(lower) or not len(upper):
            raise ValueError("grid does not cover both windows")
        return float(lower.max()), float(upper.max())

    def decays(self, factor: float = DECAY_FACTOR) -> bool:
        lower, upper = self.window_maxima()
        return upper < factor * lower

    def to_csv(self, fh=None) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["n", "value"])
        for n, v in self.rows:
            writer.writerow([n, f"{v:.16e}"])
        text = buf.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    def to_json(self) -> dict:
        return {"meta": self.meta, "rows": [[n, v] for n, v in self.rows]}


def _peripheral_meta(ct: CesaroTransform) -> dict:
    periph = peripheral_spectrum(ct.T)
    return {
        "peripheral_spectrum": [[z.real, z.imag] for z in periph],
        "peripheral_subset_of_one": all(abs(z - 1) <= 1e-6 for z in periph),
    }


def kt_decay_curve(ct: CesaroTransform, f: ZSeq, n_grid) -> DecayCurve:
    """Rows ``(n, |M_T^alpha(n) theta_alpha(f)|)``.

    ``f`` is expected to vanish on the peripheral spectrum when read as
    ``t -> sum_j f(j) e^{ijt}``; if it does not, a warning is issued and the
    fact is recorded in ``meta`` (such runs serve as negative controls).
    """
    _check_analytic(f)
    n_grid = sorted(int(n) for n in n_grid)
    ct.prepare(max(n_grid + [f.hi, 0]))
    theta = functional_calculus(ct, f)
    means = ct.means(n_grid[-1])[n_grid]
    values = operator_norms(means @ theta)
    meta = _peripheral_meta(ct)
    fn = PeriodicFn(f)
    residues = [abs(fn.at_point(complex(*z))) for z in meta["peripheral_spectrum"]]
    meta.update(alpha=ct.alpha, function=f.to_dict(), annihilates=all(r <= ANNIHILATION_TOL for r in residues))
    if not meta["annihilates"]:
        warnings.warn(
            "function does not vanish on the peripheral spectrum; decay is not expected",
            stacklevel=2,
        )
    return DecayCurve(n_grid, values, meta)


def mean_difference_curve(ct: CesaroTransform, n_grid) -> DecayCurve:
    """Rows ``(n, |M_T^alpha(n+1) - M_T^alpha(n)|)``."""
    n_grid = sorted(int(n) for n in n_grid)
    means = ct.means(n_grid[-1] + 1)
    idx = np.asarray(n_grid)
    values = operator_norms(means[idx + 1] - means[idx])
    meta = _peripheral_meta(ct)
    meta.update(alpha=ct.alpha)
    return DecayCurve(n_grid, values, meta)


# identities -------------------------------------------------------------------


def _lower_order(ct: CesaroTransform, n: int) -> tuple[CesaroTransform, CesaroTransform]:
    if ct.alpha < 1:
        raise ValueError(f"the mean identities need alpha >= 1, got {ct.alpha}")
    ct.prepare(n + 1)
    return ct, ct.with_order(ct.alpha - 1)


def mean_step_identity_residual(ct: CesaroTransform, n: int) -> float:
    """Residual of ``(n+a+1)/(n+1) M^a(n+1) - M^a(n) = a/(n+1) M^{a-1}(n+1)``."""
    ct, lower = _lower_order(ct, n)
    a = ct.alpha
    lhs = (n + a + 1) / (n + 1) * ct.mean(n + 1) - ct.mean(n)
    rhs = a / (n + 1) * lower.mean(n + 1)
    return operator_norm(lhs - rhs)


def mean_shift_identity_residual(ct: CesaroTransform, n: int) -> float:
    """Residual of ``M^a(n) (T - I) = a/(n+1) (M^{a-1}(n+1) - I)``."""
    ct, lower = _lower_order(ct, n)
    a = ct.alpha
    eye = np.eye(ct.dim)
    lhs = ct.mean(n) @ (ct.T - eye)
    rhs = a / (n + 1) * (lower.mean(n + 1) - eye)
    return operator_norm(lhs - rhs)


@dataclass
class ErgodicReport:
    """Growth ratios ``|M^{a-1}(n)| / n`` and ``|T^n| / n^a`` for ``n = 1..N``."""

    ns: np.ndarray = field(repr=False)
    mean_ratio: np.ndarray = field(repr=False)
    power_ratio: np.ndarray = field(repr=False)
    meta: dict = field(default_factory=dict)

    def _decreasing(self, values: np.ndarray, factor: float) -> bool:
        return DecayCurve(self.ns, values).decays(factor)

    def mean_ratio_decays(self, factor: float = DECAY_FACTOR) -> bool:
        return self._decreasing(self.mean_ratio, factor)

    def power_ratio_decays(self, factor: float = DECAY_FACTOR) -> bool:
        return self._decreasing(self.power_ratio, factor)

    def to_json(self) -> dict:
        return {
            "meta": self.meta,
            "verdicts": {
                "mean_ratio_decays": self.mean_ratio_decays(),
                "power_ratio_decays": self.power_ratio_decays(),
            },
            "rows": [
                [int(n), float(m), float(p)]
                for n, m, p in zip(self.ns, self.mean_ratio, self.power_ratio)
            ],
        }


def ergodic_growth_report(ct: CesaroTransform, n_max: int) -> ErgodicReport:
    """Sequences whose decay to 0 expresses ``|M^{a-1}(n)| = o(n)`` and ``|T^n| = o(n^a)``."""
    if ct.alpha < 1:
        raise ValueError(f"the growth report needs alpha >= 1, got {ct.alpha}")
    if n_max < 2:
        raise ValueError("n_max must be >= 2")
    lower = ct.prepare(n_max).with_order(ct.alpha - 1)
    ns = np.arange(1, n_max + 1)
    mean_ratio = operator_norms(lower.means(n_max)[1:]) / ns
    power_ratio = operator_norms(ct.powers(n_max)[1:]) / ns.astype(float) ** ct.alpha
    meta = _peripheral_meta(ct)
    meta.update(alpha=ct.alpha)
    return ErgodicReport(ns, mean_ratio, power_ratio, meta)


def dumps_json(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)
