"""
Weighted algebra norms
======================

``q_alpha`` weights the Weyl difference of order alpha by ``k^(alpha+1)(|n|)``.
It reduces to the l1 norm at alpha = 0 and grows with alpha.
"""

# %%
import numpy as np

from cesaro_lab import (
    PeriodicFn,
    ZSeq,
    annihilator_polynomial,
    fourier_coefficients,
    q_bar_norm,
    q_norm,
    submultiplicativity_sweep,
    wiener_norm,
)

f = ZSeq(-1, [0.5, 1.0, -0.75, 0.25])
for alpha in (0, 0.01, 0.1, 0.5, 1, 2):
    print(f"q_{alpha:<4}(f) = {q_norm(f, alpha):.6f}")
print("l1 norm      =", f.l1())
print("equivalent norm at alpha = 1:", q_bar_norm(f, 1))

# %%
# Empirical multiplicative constants over random pairs.
for alpha in (0.5, 1, 2):
    res = submultiplicativity_sweep(alpha, trials=300, seed=0)
    print(f"alpha={alpha}: max q(f*g) / (q(f) q(g)) = {res.max:.4f}")

# %%
# Periodic functions are handled through their Fourier coefficients.
fn = annihilator_polynomial([1, -1])  # e^{2it} - 1
samples = fn(2 * np.pi * np.arange(16) / 16)
print("recovered coefficients:", fourier_coefficients(samples, 3).values.real.round(12) + 0.0)
print("norm in the order-1 algebra:", wiener_norm(fn, 1))
print("value at t = pi:", PeriodicFn(fn.coeffs)(np.pi))
