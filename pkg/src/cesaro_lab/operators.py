"""Dense complex matrices standing in for bounded operators.

Matrices are plain ``complex`` numpy arrays of shape ``(d, d)``.  The
:class:`CesaroTransform` caches the powers ``T^j`` and the Cesàro sums

.. math::

    \\Delta^{-\\alpha}\\mathcal{T}(n) = \\sum_{j=0}^{n} k^\\alpha(n-j) T^j,
    \\qquad M_T^\\alpha(n) = \\frac{\\Delta^{-\\alpha}\\mathcal{T}(n)}{k^{\\alpha+1}(n)}.

Operator norms are induced 2-norms.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .kernels import kernel_values

EIG_RESIDUAL_TOL = 1e-8
# upper-window max <= GROWTH_FACTOR * lower-window max counts as non-growing
GROWTH_FACTOR = 1.05


class NumericalError(RuntimeError):
    """A numerical routine failed to meet its accuracy contract."""


def as_cmatrix(T) -> np.ndarray:
    """Validate ``T`` as a finite square matrix and return it as a complex array."""
    T = np.array(T, dtype=complex)
    if T.ndim != 2 or T.shape[0] != T.shape[1] or T.shape[0] == 0:
        raise ValueError(f"expected a non-empty square matrix, got shape {T.shape}")
    if not np.all(np.isfinite(T)):
        raise ValueError("matrix entries must be finite")
    return T


def matrix_from_dict(data: dict) -> np.ndarray:
    re = np.asarray(data["re"], dtype=float)
    im = np.asarray(data.get("im", np.zeros_like(re)), dtype=float)
    T = as_cmatrix(re + 1j * im)
    if "dim" in data and int(data["dim"]) != T.shape[0]:
        raise ValueError(f"dim={data['dim']} does not match entries of size {T.shape[0]}")
    return T


def matrix_to_dict(T: np.ndarray) -> dict:
    T = as_cmatrix(T)
    return {"dim": T.shape[0], "re": T.real.tolist(), "im": T.imag.tolist()}


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_dict(json.load(fh))


def save_matrix(T: np.ndarray, path) -> None:
    Path(path).write_text(json.dumps(matrix_to_dict(T), indent=2) + "\n")


def random_matrix(dim: int, seed: int = 0, radius: float = 1.0) -> np.ndarray:
    """Gaussian complex matrix rescaled to spectral radius ``radius``."""
    rng = np.random.default_rng(seed)
    G = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return G * (radius / spectral_radius(G))


# norms and spectra ----------------------------------------------------------


def matrix_power(T, n: int) -> np.ndarray:
    if n < 0:
        raise ValueError(f"n must be non-negative, got {n}")
    return np.linalg.matrix_power(as_cmatrix(T), n)


def operator_norm(T) -> float:
    """Induced 2-norm (largest singular value)."""
    return float(operator_norms(np.asarray(T)[None])[0])


def operator_norms(stack: np.ndarray) -> np.ndarray:
    """Induced 2-norms of a stack of matrices with shape ``(m, d, d)``."""
    try:
        s = np.linalg.svd(np.asarray(stack, dtype=complex), compute_uv=False)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD did not converge: {exc}") from exc
    return s[..., 0] if s.shape[-1] else np.zeros(s.shape[:-1])


def eigenvalues(T) -> np.ndarray:
    """Eigenvalues of ``T``, each certified by ``|T v - l v| <= 1e-8 |v|``."""
    T = as_cmatrix(T)
    try:
        w, V = np.linalg.eig(T)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver did not converge: {exc}") from exc
    scale = max(1.0, float(np.max(np.abs(T))))
    resid = np.linalg.norm(T @ V - V * w, axis=0) / np.linalg.norm(V, axis=0)
    if np.any(resid > EIG_RESIDUAL_TOL * scale):
        raise NumericalError(f"eigenpair residual {resid.max():.3e} exceeds tolerance")
    return w


def spectral_radius(T) -> float:
    return float(np.max(np.abs(eigenvalues(T))))


def peripheral_spectrum(T, tol: float = 1e-6) -> list[complex]:
    """Eigenvalues with ``||l| - 1| <= tol``, merged when closer than ``tol``."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    out: list[complex] = []
    for lam in eigenvalues(T):
        if abs(abs(lam) - 1) <= tol and all(abs(lam - mu) > tol for mu in out):
            out.append(complex(lam))
    return sorted(out, key=lambda z: (np.angle(z), z.real))


# Cesàro sums and means ------------------------------------------------------


class CesaroTransform:
    """A matrix ``T`` with cached powers and Cesàro sums of order ``alpha``.

    Caches cover ``n = 0..n_max`` and only ever grow; call :meth:`prepare`
    before an experiment loop so the loop itself does not allocate.
    """

    def __init__(self, T, alpha: float, n_max: int = 0, *, _powers: np.ndarray | None = None):
        if alpha < 0:
            raise ValueError(f"alpha must be >= 0, got {alpha}")
        self.T = as_cmatrix(T)
        self.alpha = float(alpha)
        d = self.T.shape[0]
        self._powers = _powers if _powers is not None else np.eye(d, dtype=complex)[None]
        self._sums = np.zeros((0, d, d), dtype=complex)
        self._siblings: dict[float, CesaroTransform] = {}
        self.prepare(n_max)

    @property
    def dim(self) -> int:
        return self.T.shape[0]

    @property
    def n_max(self) -> int:
        return len(self._sums) - 1

    def prepare(self, n_max: int) -> CesaroTransform:
        """Fill the caches up to ``n_max`` (no-op if already covered)."""
        if n_max < 0:
            raise ValueError(f"n_max must be non-negative, got {n_max}")
        if n_max <= self.n_max:
            return self
        self._extend_powers(n_max)
        self._sums = self._compute_sums(n_max)
        return self

    def _extend_powers(self, n_max: int) -> None:
        have = len(self._powers)
        if have > n_max:
            return
        powers = np.empty((n_max + 1, self.dim, self.dim), dtype=complex)
        powers[:have] = self._powers
        for j in range(have, n_max + 1):
            powers[j] = self.T @ powers[j - 1]
        self._powers = powers

    def _compute_sums(self, n_max: int) -> np.ndarray:
        P = self._powers[: n_max + 1]
        if self.alpha == 0:
            return P.copy()
        k = kernel_values(self.alpha, n_max)
        sums = np.empty_like(P)
        for i in range(self.dim):
            for j in range(self.dim):
                sums[:, i, j] = np.convolve(k, P[:, i, j])[: n_max + 1]
        return sums

    def with_order(self, beta: float) -> CesaroTransform:
        """A transform of the same matrix at order ``beta``, sharing the power cache.

        Repeated calls return the same object, grown to this transform's range.
        """
        beta = float(beta)
        if beta == self.alpha:
            return self
        other = self._siblings.get(beta)
        if other is None or other.n_max < self.n_max:
            other = CesaroTransform(self.T, beta, self.n_max, _powers=self._powers)
            self._siblings[beta] = other
        return other

    # accessors

    def power(self, n: int) -> np.ndarray:
        self.prepare(n)
        return self._powers[n]

    def powers(self, n_max: int | None = None) -> np.ndarray:
        n_max = self.n_max if n_max is None else n_max
        self.prepare(n_max)
        return self._powers[: n_max + 1]

    def sum(self, n: int) -> np.ndarray:
        self.prepare(n)
        return self._sums[n]

    def sums(self, n_max: int | None = None) -> np.ndarray:
        n_max = self.n_max if n_max is None else n_max
        self.prepare(n_max)
        return self._sums[: n_max + 1]

    def mean(self, n: int) -> np.ndarray:
        return self.sum(n) / kernel_values(self.alpha + 1, n)[n]

    def means(self, n_max: int | None = None) -> np.ndarray:
        sums = self.sums(n_max)
        k = kernel_values(self.alpha + 1, len(sums) - 1)
        return sums / k[:, None, None]

    def __repr__(self) -> str:
        return f"CesaroTransform(dim={self.dim}, alpha={self.alpha}, n_max={self.n_max})"


def cesaro_sum(ct: CesaroTransform, n: int) -> np.ndarray:
    return ct.sum(n)


def cesaro_mean(ct: CesaroTransform, n: int) -> np.ndarray:
    return ct.mean(n)


@dataclass(frozen=True)
class GrowthProbe:
    """Finite-range surrogate for a supremum, with its lower/upper half maxima.

    ``values[i]`` belongs to ``n = ns[i]``.  The trend is *non-growing* when
    the maximum over the upper half of the range is at most ``1.05`` times the
    maximum over the lower half.
    """

    ns: np.ndarray = field(repr=False)
    values: np.ndarray = field(repr=False)
    sup: float
    lower_max: float
    upper_max: float

    @property
    def non_growing(self) -> bool:
        return self.upper_max <= GROWTH_FACTOR * self.lower_max

    def __float__(self) -> float:
        return self.sup

    @classmethod
    def from_values(cls, ns: np.ndarray, values: np.ndarray) -> GrowthProbe:
        ns, values = np.asarray(ns), np.asarray(values, dtype=float)
        mid = (ns[0] + ns[-1]) / 2
        lower, upper = values[ns <= mid], values[ns >= mid]
        return cls(ns, values, float(values.max()), float(lower.max()), float(upper.max()))


def cesaro_bounded_probe(T, alpha: float, n_max: int) -> GrowthProbe:
    """``max_{n <= n_max} |M_T^alpha(n)|`` with its trend over the two half-ranges."""
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ct = T if isinstance(T, CesaroTransform) else CesaroTransform(T, alpha, n_max)
    norms = operator_norms(ct.means(n_max))
    return GrowthProbe.from_values(np.arange(n_max + 1), norms)


def power_growth_probe(T, alpha: float, n_max: int) -> GrowthProbe:
    """``max_{1 <= n <= n_max} |T^n| / k^{alpha+1}(n)``; bounded for ``(C, alpha)``-bounded ``T``."""
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    ct = T if isinstance(T, CesaroTransform) else CesaroTransform(T, 0.0, n_max)
    norms = operator_norms(ct.powers(n_max)[1:])
    k = kernel_values(alpha + 1, n_max)[1:]
    return GrowthProbe.from_values(np.arange(1, n_max + 1), norms / k)
