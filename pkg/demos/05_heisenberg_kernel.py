"""
The sinc-type kernel on the Heisenberg group
============================================

For radial functions on H_1 the band is {(m, lam): m <= M, 0 < |lam| <= R}.
The kernel integrates Laguerre-Gaussian spherical functions against the
Plancherel density (2m + n)|lam|^n.
"""

import numpy as np

from bandsampling import HeisenbergBand, HeisenbergRadial, kernel_gram
from bandsampling.kernels import heisenberg_kernel

band = HeisenbergBand(M=2, R=1.5)

print("origin value, M=0: ", heisenberg_kernel(1, HeisenbergBand(0, 1.0), 0.0, 0.0), "(R^2 = 1)")

w = np.array([0.0, 0.5, 1.0, 2.0])
t = np.linspace(0, 6, 7)
print("\n  t  " + "".join(f"   w={x:<5}" for x in w))
K = heisenberg_kernel(1, band, w[None, :], t[:, None])
for tt, row in zip(t, K):
    print(f"{tt:4.1f} " + "".join(f"{v:10.4f}" for v in row))

# %%
# Without the density, and starting at m = 1, the integral is a different
# function; at M = 0 it vanishes identically.
lit = heisenberg_kernel(1, band, w[None, :], t[:, None], paper_literal=True)
print("\nwithout density, m >= 1, at t = 0:", np.round(lit[0], 4))

# Gram matrices of the kernel at random group elements are positive semidefinite.
rng = np.random.default_rng(0)
z = rng.standard_normal((10, 1)) + 1j * rng.standard_normal((10, 1))
G = kernel_gram(HeisenbergRadial(1), band, (z, rng.standard_normal(10)))
print("smallest Gram eigenvalue / trace:", np.linalg.eigvalsh(G).min() / np.trace(G))
