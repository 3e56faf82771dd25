"""
Cesàro kernels
==============

The kernel ``k^alpha(n)`` is the coefficient of ``z^n`` in ``(1 - z)^(-alpha)``.
This script tabulates a few orders and checks the convolution rule
``k^a * k^b = k^(a+b)`` numerically.
"""

# %%
# Small tables. Order 1 is constant, order 0 is a unit mass at n = 0,
# and negative integer orders are signed binomial rows.
import numpy as np

from cesaro_lab import kernel_convolve, kernel_values, kernel_asymptotic_ratio

for alpha in (-2, -0.5, 0, 0.5, 1, 2):
    print(f"k^{alpha:<4}:", np.round(kernel_values(alpha, 6), 4))

# %%
# Convolving orders 0.5 and -1.5 gives order -1, whose table is (1, -1, 0, 0, ...).
n = 10
conv = kernel_convolve(kernel_values(0.5, n), kernel_values(-1.5, n))
print("k^0.5 * k^-1.5 =", np.round(conv, 12))

# %%
# For large n the kernel behaves like n^(alpha-1) / Gamma(alpha).
for n in (10, 100, 1000, 10_000):
    print(f"n={n:>6}  k^0.5(n) Gamma(0.5) / n^-0.5 = {kernel_asymptotic_ratio(0.5, n):.6f}")
