"""
Decay of Cesàro means
=====================

If ``f`` vanishes on the unimodular eigenvalues of a Cesàro bounded ``T``,
then ``M^alpha(n) theta(f)`` tends to zero.  This script runs that experiment
on the 2x2 example along with a negative control, then looks at the
differences of consecutive means.
"""

# %%
import warnings

from cesaro_lab import (
    CesaroTransform,
    ZSeq,
    dyadic_grid,
    ergodic_growth_report,
    kt_decay_curve,
    load_fixture,
    mean_difference_curve,
)

ct = CesaroTransform(load_fixture("assani"), 1.0)
curve = kt_decay_curve(ct, ZSeq(0, [1, 1]), dyadic_grid(4096))  # 1 + e^{it} vanishes at -1
for n, v in curve.rows[::3]:
    print(f"n={n:>5}  |M(n) theta(f)| = {v:.3e}")
print("decays:", curve.decays())

# %%
with warnings.catch_warnings():
    warnings.simplefilter("ignore")
    control = kt_decay_curve(ct, ZSeq.delta(0), dyadic_grid(4096))
print("constant function, decays:", control.decays(), " window maxima:", control.window_maxima())

# %%
# With 1 as the only unimodular eigenvalue, consecutive means approach each other.
for name in ("diag_half", "diag_peripheral"):
    diff = mean_difference_curve(CesaroTransform(load_fixture(name), 2.0), dyadic_grid(1024))
    print(name, "window maxima:", diff.window_maxima(), "decays:", diff.decays())

# %%
report = ergodic_growth_report(CesaroTransform(load_fixture("diag_peripheral"), 1.0), 1024)
print("|M^0(n)|/n decays:", report.mean_ratio_decays(), " |T^n|/n decays:", report.power_ratio_decays())
