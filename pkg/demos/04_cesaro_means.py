"""
Cesàro bounded but not power bounded
====================================

The 2x2 matrix ``[[-1, 2], [0, -1]]`` has powers whose norm grows like ``2n``.
Its first-order Cesàro means stay bounded anyway.
"""

# %%
from cesaro_lab import (
    CesaroTransform,
    cesaro_bounded_probe,
    load_fixture,
    matrix_power,
    operator_norm,
    spectral_radius,
)

T = load_fixture("assani")
for n in (1, 10, 100, 1000):
    print(f"|T^{n}| = {operator_norm(matrix_power(T, n)):.3f}")

# %%
ct = CesaroTransform(T, 1.0, 10_000)
probe = cesaro_bounded_probe(ct, 1.0, 10_000)
print("max |M^1(n)| over n <= 10^4:", probe.sup)
print("lower/upper half maxima:", probe.lower_max, probe.upper_max, "non-growing:", probe.non_growing)
print("spectral radius:", spectral_radius(T))

# %%
# A Jordan block is not bounded in this sense: its means grow like n/2.
jordan = cesaro_bounded_probe(load_fixture("jordan1"), 1.0, 1000)
print("Jordan block, non-growing:", jordan.non_growing, " value at n=1000:", jordan.values[-1])
