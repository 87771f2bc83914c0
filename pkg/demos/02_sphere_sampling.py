"""
Spherical harmonics sampled on a Fibonacci lattice
==================================================

Band Omega on S^2 has dimension (Omega + 1)^2.  We sample a random band
function on Fibonacci points and reconstruct it two ways: through the frame
operator and through the sampling operator built from Voronoi cells.
"""

import numpy as np

from bandsampling import (Sphere, build_partition, frame_analysis, generate, invert_T, neumann_reconstruct,
                          quadrature, random_band_function, separation_report, synthesize)

S2 = Sphere(2)
omega = 4
f = random_band_function(S2, omega, np.random.default_rng(3))
print(f"band dimension {len(f.coeffs)}")

print("\n   N   sep     cover   overlap  A        B        rate")
for n in (25, 50, 100, 200, 400):
    s = generate(S2, "fibonacci", n)
    rep = separation_report(s)
    fa = frame_analysis(S2, omega, s)
    print(f"{n:4d}  {rep.min_separation:.3f}  {rep.covering_radius:.3f}   {rep.overlap_N:3d}    "
          f"{fa.A:7.2f}  {fa.B:7.2f}  {fa.rate:.3f}")

# %%
# Frame route.
s = generate(S2, "fibonacci", 50)
fa = frame_analysis(S2, omega, s)
rec, report = neumann_reconstruct(fa, synthesize(f, s.points))
print(f"\nframe Neumann on 50 points: error {np.linalg.norm(rec.coeffs - f.coeffs):.2e}, "
      f"{report.iterations} iterations, observed rate {report.observed_rate:.3f} vs {fa.rate:.3f}")

# %%
# Sampling-operator route: each sample value is spread over its Voronoi cell,
# projected to the band, and the residual is fed back.
rule = quadrature(S2, 64)
for n in (100, 200):
    s = generate(S2, "fibonacci", n)
    rec, report = invert_T(S2, omega, build_partition(s, rule), rule, s.points, synthesize(f, s.points))
    print(f"invert_T on {n} points: error {np.linalg.norm(rec.coeffs - f.coeffs):.2e}, "
          f"{report.iterations} iterations, ||I - T|| about {report.predicted_rate:.3f}")
