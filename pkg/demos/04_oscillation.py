"""
Local oscillation and the norm-equivalence window
=================================================

osc_eps(f)(x) is the largest change of f within distance eps of x.  Its L2
norm relative to ||f|| (the constant C_U) controls how well sample values
pin down the norm of f.
"""

import numpy as np

from bandsampling import Torus, frame_analysis, generate, quadrature, random_band_function, separation_report
from bandsampling import oscillation as osc
from bandsampling.reconstruct import norm_equivalence_window
from bandsampling.sampling import ball_measure

T = Torus()
rule = quadrature(T, 256)
f = random_band_function(T, 8, np.random.default_rng(0))

prof = osc.osc_profile(T, f, [0.4, 0.2, 0.1, 0.05], rule)
print("eps    ||osc||/||f||   modewise bound")
for e, r, b in zip(prof.epsilons, prof.ratios, prof.bounds):
    print(f"{e:.2f}   {r:.4f}          {b:.4f}")

lhs, rhs = osc.bernstein_check(T, 8, f, 2)
print(f"\nBernstein k=2: ||Delta^2 f|| = {lhs:.1f} <= c^2 ||f|| = {rhs:.1f}")

# %%
# With C_U < 1 the sampled energy sum |f(x_i)|^2 is squeezed between two
# constants.  The two windows below differ in how the Cauchy-Schwarz steps
# are carried out; only the second one contains the measured frame bounds.
omega = 4
for n, strategy in ((64, "equidistant"), (128, "jittered")):
    s = generate(T, strategy, n, seed=1)
    rep = separation_report(s)
    c_u = osc.oscillation_constant(T, omega, s.epsilon, quadrature(T, 512), trials=10)
    fa = frame_analysis(T, omega, s)
    w = norm_equivalence_window(c_u, ball_measure(T, s.epsilon), rep.overlap_N)
    print(f"\nN={n} {strategy}: C_U={c_u:.3f}, overlap={rep.overlap_N}, A={fa.A:.2f}, B={fa.B:.2f}")
    for name, (lo, hi) in w.items():
        inside = lo <= fa.A and fa.B <= hi
        print(f"  {name:8s} window [{lo:10.2f}, {hi:10.2f}]  contains [A, B]: {inside}")
