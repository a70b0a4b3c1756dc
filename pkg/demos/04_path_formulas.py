"""
Path reparametrizations and the lifting extension
=================================================

The comparison maps between based paths and based loops are plain
reparametrizations.  We check the identities they satisfy on a random
path and look at the explicit homotopy-lifting extension.
"""

from fractions import Fraction

import numpy as np

from basedtc import paths
from basedtc.checks import collar_level, smooth_lifting_data

rng = np.random.default_rng(1)
plane = paths.Euclidean(2)
phi = paths.random_pl_path(rng, plane, paths.BASED)
n = 3

pn = paths.evaluate_fibration(phi, "p", n)
via_loop = paths.evaluate_fibration(paths.loop_fold(phi, n), "q", n)
via_free = paths.evaluate_fibration(paths.shift_embed(phi, n), "P", n)
print("p_n(phi)           ", pn.round(4).tolist())
print("q_n(loop_fold(phi))", np.abs(via_loop - pn).max())
print("P_n(shift(phi))    ", np.abs(via_free - pn).max())

# Lifting: G(y, s) is a family of based paths, h_i moves the i-th waypoint
G, hs, x0 = smooth_lifting_data(rng, n)
H = paths.lift_extend(G, hs, n, x0)
y, t = Fraction(1, 3), Fraction(2, 5)
for i in range(1, n + 1):
    print(f"H(y,t,{i}/{n}) - h_{i}(y,t) =", np.abs(H(y, t, Fraction(i, n)) - hs[i - 1](y, t)).max())

# Grid gaps shrink once the grid resolves the collars of width 2t/(5n)
rep = paths.check_continuity(H, 5, start_level=collar_level(n))
print("max gaps per level:", [round(g, 3) for g in rep.max_gaps], "flagged:", rep.flagged)
