"""
Functional calculus and resolvent
=================================

``theta_alpha(f)`` combines the Weyl difference of ``f`` with the Cesàro sums
of ``T``.  On finitely supported ``f`` it equals the polynomial ``sum f(j) T^j``
for every order.
"""

# %%
import numpy as np

from cesaro_lab import (
    CesaroTransform,
    ZSeq,
    functional_calculus,
    h_sequence,
    load_fixture,
    polynomial_calculus,
    resolvent_series,
)

T = load_fixture("random3")
f = ZSeq(0, [0.5, -1.0, 0.0, 2.0])
for alpha in (0, 0.5, 1, 2.5):
    ct = CesaroTransform(T, alpha, 10)
    gap = np.linalg.norm(functional_calculus(ct, f) - polynomial_calculus(ct, f), 2)
    print(f"alpha={alpha}: |theta(f) - f(T)| = {gap:.2e}")

# %%
# The reversed kernel h_n is sent to the Cesàro sum of index n.
ct = CesaroTransform(T, 1.5, 20)
print("|theta(h_7) - S(7)| =", np.linalg.norm(functional_calculus(ct, h_sequence(1.5, 7)) - ct.sum(7), 2))

# %%
# Outside the unit disc the resolvent is a weighted series of Cesàro sums.
A = load_fixture("assani")
for lam in (1.5, 2.0, 1 + 1j):
    approx = resolvent_series(CesaroTransform(A, 1.0), lam)
    exact = np.linalg.inv(lam * np.eye(2) - A)
    print(f"lambda={lam}: error {np.linalg.norm(approx - exact, 2):.2e}")
