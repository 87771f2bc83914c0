"""
Oversampling: reconstruct in a larger band, then project
========================================================

Inverting the sampling operator for a larger band Omega1 and truncating
gives the same answer, but the samples must then be dense enough for
Omega1, not just for Omega.
"""

import numpy as np

from bandsampling import (ContractionError, Torus, build_partition, generate, invert_T, oversample_reconstruct,
                          quadrature, random_band_function, synthesize)

T = Torus()
omega, omega1 = 4, 8
rule = quadrature(T, 256)
f = random_band_function(T, omega, np.random.default_rng(7))

print(" N   direct (Omega=4)      oversampled (Omega1=8)")
for n in (10, 12, 16, 20, 24, 32):
    s = generate(T, "equidistant", n)
    part = build_partition(s, rule)
    v = synthesize(f, s.points)
    row = [f"{n:2d}"]
    for run in (lambda: invert_T(T, omega, part, rule, s.points, v),
                lambda: oversample_reconstruct(T, omega, omega1, part, rule, s.points, v)):
        try:
            rec, rep = run()
            row.append(f"err {np.linalg.norm(rec.coeffs - f.coeffs):.1e} in {rep.iterations:3d} it")
        except ContractionError:
            row.append("contraction fails     ")
    print("   ".join(row))
