"""
Fractional Weyl differences
===========================

Finitely supported sequences on the integers are stored as ``ZSeq`` objects.
The one-sided operators ``W_+`` and ``W_-`` are evaluated pointwise, and the
combined operator ``W^alpha`` returns a finitely supported sequence again.
"""

# %%
import numpy as np

from cesaro_lab import ZSeq, weyl_combined, weyl_diff_plus_at, weyl_diff_plus_via_composition

f = ZSeq(-2, [1.0, 0.5, 2.0, -1.0, 0.25])
print("f on", (f.lo, f.hi), "=", f.values.real)

# %%
# Integer orders are ordinary forward differences taken to the right.
print("W_+^1 f(0) =", weyl_diff_plus_at(f, 1, 0), " f(0) - f(1) =", f[0] - f[1])

# %%
# Fractional orders can be computed two ways: directly from the kernel k^(-alpha),
# or as an integer difference of a fractional sum.  The two agree to roundoff.
for n in range(-2, 3):
    a = weyl_diff_plus_at(f, 0.6, n)
    b = weyl_diff_plus_via_composition(f, 0.6, n)
    print(f"n={n:>2}  direct {a.real:+.12f}  composed {b.real:+.12f}")

# %%
# W^alpha followed by W^(-alpha) recovers a sequence supported in n >= 0.
g = ZSeq(0, [1.0, -2.0, 0.5])
back = weyl_combined(weyl_combined(g, 1.3), -1.3)
print("round trip error:", np.max(np.abs(back.window(0, 2) - g.window(0, 2))))
