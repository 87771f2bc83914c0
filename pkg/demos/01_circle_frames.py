"""
Sampling trigonometric polynomials on the circle
================================================

A function with Fourier modes |k| <= Omega lives in a space of dimension
2 Omega + 1.  Its reproducing kernel is the Dirichlet kernel, and point
evaluations are inner products with translates of that kernel.
"""

import numpy as np

from bandsampling import Torus, frame_analysis, generate, neumann_reconstruct, random_band_function, synthesize
from bandsampling.kernels import dirichlet_kernel

T = Torus()
omega = 6

# The kernel peaks at 2 Omega + 1 and oscillates with period about 2 pi / Omega.
t = np.linspace(0, np.pi, 7)
for tt, k in zip(t, dirichlet_kernel(omega, t)):
    print(f"t = {tt:5.3f}   D(t) = {k: .6f}")

# %%
# Equally spaced points: exactly 2 Omega + 1 of them give a tight frame,
# so one relaxed Neumann step already inverts the frame operator.
s = generate(T, "equidistant", 2 * omega + 1)
fa = frame_analysis(T, omega, s)
print(f"\nN = {fa.n_samples}: A = {fa.A:.6f}, B = {fa.B:.6f}")

f = random_band_function(T, omega, np.random.default_rng(0))
rec, report = neumann_reconstruct(fa, synthesize(f, s.points))
print(f"one-step error {np.linalg.norm(rec.coeffs - f.coeffs):.2e} after {report.iterations} iteration")

# One point fewer and the samples no longer determine f.
fa_short = frame_analysis(T, omega, generate(T, "equidistant", 2 * omega))
print(f"N = {fa_short.n_samples}: A = {fa_short.A}")

# %%
# Irregular samples: the frame bounds spread apart and the iteration needs
# more steps, contracting by (B - A)/(A + B) per step.
print("\n  N   A        B        rate    iterations")
for n in (14, 20, 40, 80):
    s = generate(T, "jittered", n, seed=1)
    fa = frame_analysis(T, omega, s)
    rec, report = neumann_reconstruct(fa, synthesize(f, s.points), tol=1e-12)
    print(f"{n:3d}  {fa.A:7.3f}  {fa.B:7.3f}  {fa.rate:.4f}  {report.iterations:4d}")
