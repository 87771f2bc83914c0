import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bandsampling import spaces as sp
from bandsampling import special_fn as sf

T, S2, G = sp.Torus(), sp.Sphere(2), sp.SU2()


def test_spectrum_enumeration():
    assert [i.value for i in sp.spectrum_enumerate(T, 2)] == [-2, -1, 0, 1, 2]
    assert [i.value for i in sp.spectrum_enumerate(S2, 1)] == [0, 1]


def test_heisenberg_spectrum_integrates_known_function():
    H = sp.HeisenbergRadial(1, lambda_nodes=32)
    idx = sp.spectrum_enumerate(H, sp.HeisenbergBand(1, 1.0))
    assert len(idx) == 2 * 2 * 32
    assert {i.m for i in idx} == {0, 1}
    pos = [i for i in idx if i.m == 0 and i.value > 0]
    # int_0^1 lam^3 = 1/4
    assert sum(i.qweight * i.value**3 for i in pos) == pytest.approx(0.25, abs=1e-14)
    assert all(i.value != 0 for i in idx)


def test_plancherel_weights():
    for n in range(6):
        assert sp.plancherel_weight(S2, sp.SpectralIndex(n)) == 2 * n + 1
        assert sp.plancherel_weight(sp.Sphere(3), sp.SpectralIndex(n)) == (n + 1) ** 2
    assert sp.plancherel_weight(T, sp.SpectralIndex(-3)) == 1


@pytest.mark.parametrize("d", [2, 3, 4, 5])
def test_sphere_dimension_rational_oracle(d):
    for n in range(31):
        exact = Fraction((2 * n + d - 1) * math.factorial(d + n - 2),
                         math.factorial(d - 1) * math.factorial(n))
        assert sp.sphere_dimension(d, n) == exact


def test_laplace_eigenvalues():
    assert sp.laplace_eigenvalue(S2, sp.SpectralIndex(3)) == 12
    assert sp.laplace_eigenvalue(T, sp.SpectralIndex(0)) == 0
    assert sp.laplace_eigenvalue(sp.EuclideanRadial(3), sp.SpectralIndex(2.5)) == 6.25
    assert sp.laplace_eigenvalue(G, sp.SpectralIndex(2)) == 8
    with pytest.raises(sp.UnsupportedSpaceError):
        sp.laplace_eigenvalue(sp.HeisenbergRadial(1), sp.SpectralIndex(1.0, m=0))


def test_spherical_functions_are_one_at_identity():
    for space, idx in [(T, 3), (S2, 4), (sp.Sphere(4), 3), (G, 5), (sp.EuclideanRadial(3), 2.0)]:
        val = sp.spherical_function(space, sp.SpectralIndex(idx), space.identity)
        assert val == pytest.approx(1.0, abs=1e-13)
    H = sp.HeisenbergRadial(2)
    assert sp.spherical_function(H, sp.SpectralIndex(0.7, m=3), (0.0, 0.0)) == pytest.approx(1.0)


def test_torus_characters():
    t = np.linspace(0, 6, 7)
    np.testing.assert_allclose(sp.spherical_function(T, sp.SpectralIndex(3), t), np.exp(3j * t))


def test_heisenberg_m0_spherical_function():
    H = sp.HeisenbergRadial(1)
    w, t, lam = 0.8, 1.1, -1.5
    val = sp.spherical_function(H, sp.SpectralIndex(lam, m=0), (w, t))
    assert val == pytest.approx(np.exp(1j * lam * t) * np.exp(-abs(lam) * w * w / 4), abs=1e-15)


def test_basis_values():
    np.testing.assert_allclose(sp.basis_eval(T, 1, 0.0), [1, 1, 1])
    north = np.array([0.0, 0.0, 1.0])
    b = sp.basis_eval(S2, 1, north)
    labels = sp.basis_labels(S2, 1)
    for (n, m), v in zip(labels, b):
        if m != 0:
            assert v == 0.0
        else:
            assert v != 0.0
    theta = np.linspace(0.1, 3.0, 9)
    b = sp.basis_eval(G, 4, theta)
    for n in range(5):
        expected = (n + 1) * np.sin((n + 1) * theta) / ((n + 1) * np.sin(theta))
        np.testing.assert_allclose(b[:, n], expected, atol=1e-13)


@pytest.mark.parametrize("space", [sp.EuclideanRadial(3), sp.HeisenbergRadial(1), sp.Sphere(3)])
def test_kernel_only_spaces_have_no_basis(space):
    with pytest.raises(sp.UnsupportedSpaceError):
        sp.basis_labels(space, 2)


@pytest.mark.parametrize("space,omega,res", [(T, 16, 16), (S2, 16, 16), (G, 16, 17)])
def test_orthonormality(space, omega, res):
    rule = sp.quadrature(space, res)
    b = sp.basis_eval(space, omega, rule.nodes)
    gram = b.conj().T @ (rule.weights[:, None] * b)
    np.testing.assert_allclose(gram, np.eye(b.shape[1]), atol=1e-10)


@pytest.mark.parametrize("space", [T, S2, G])
def test_quadrature_total_mass(space):
    for res in (1, 4, 9):
        rule = sp.quadrature(space, res)
        assert rule.weights.sum() == pytest.approx(1.0, abs=1e-12)
        assert rule.exactness >= 2 * res - 1


def test_su2_weighted_orthogonality():
    rule = sp.quadrature(G, 12)
    phis = np.array([sp.spherical_function(G, sp.SpectralIndex(n), rule.nodes) for n in range(8)])
    d = np.array([(n + 1) ** 2 for n in range(8)])
    gram = (phis * rule.weights) @ phis.T * d[:, None]
    np.testing.assert_allclose(gram, np.eye(8), atol=1e-10)


def test_pairing():
    e1 = S2.identity
    assert sp.pair(S2, e1, -e1) == -1.0
    assert sp.pair(S2, e1, e1) == 1.0
    assert sp.pair(T, 1.3, 1.3) == 0.0
    assert sp.distance(T, 0.1, 2 * np.pi - 0.1) == pytest.approx(0.2)


_cplx = st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False)
_point = st.tuples(st.lists(_cplx, min_size=2, max_size=2), st.floats(-5, 5))


@settings(max_examples=50, deadline=None)
@given(a=_point, b=_point, c=_point)
def test_heisenberg_associativity(a, b, c):
    a, b, c = ((np.array(z), t) for z, t in (a, b, c))
    left = sp.heisenberg_multiply(sp.heisenberg_multiply(a, b), c)
    right = sp.heisenberg_multiply(a, sp.heisenberg_multiply(b, c))
    np.testing.assert_allclose(left[0], right[0], atol=1e-12)
    assert left[1] == pytest.approx(right[1], abs=1e-10)
    z, t = sp.heisenberg_multiply(a, sp.heisenberg_inverse(a))
    assert np.allclose(z, 0) and abs(t) < 1e-12


def test_heisenberg_pair_is_relative_position():
    H = sp.HeisenbergRadial(1)
    x = (np.array([1.0 + 0.5j]), 0.3)
    y = (np.array([-0.2 + 1.0j]), -1.0)
    w, t = sp.pair(H, x, y)
    assert w == pytest.approx(abs((1.0 + 0.5j) - (-0.2 + 1.0j)))
    # t' = t_x - t_y + Im(conj(-z_y) z_x)/2
    assert t == pytest.approx(0.3 + 1.0 + 0.5 * np.imag(np.conj(0.2 - 1.0j) * (1.0 + 0.5j)))
    assert sp.pair(H, x, x) == pytest.approx((0.0, 0.0))


def _random_unit(rng, n):
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_sphere_functional_equation():
    # averaging phi_n(x k y) over the stabilizer K of e1 gives phi_n(x) phi_n(y).
    # With a = y.e1 and b = x^-1.e1 this is the mean over rotations k about e1
    # of Phi_n(<k a, b>), which must equal Phi_n(a_1) Phi_n(b_1).
    rng = np.random.default_rng(7)
    n_k = 64
    angles = 2 * np.pi * np.arange(n_k) / n_k
    c, s = np.cos(angles), np.sin(angles)
    for a, b in zip(_random_unit(rng, 10), _random_unit(rng, 10)):
        ka = np.stack([np.full(n_k, a[0]), c * a[1] - s * a[2], s * a[1] + c * a[2]], axis=-1)
        for n in range(9):
            idx = sp.SpectralIndex(n)
            avg = np.mean(sf.zonal_polynomial(2, n, ka @ b))
            prod = sp.spherical_function(S2, idx, a) * sp.spherical_function(S2, idx, b)
            assert avg == pytest.approx(prod, abs=1e-8)


def test_torus_eigenfunction_finite_difference():
    k = 5
    errs = []
    for h in (1e-2, 5e-3):
        t = np.linspace(0, 2 * np.pi, 50)
        f = lambda s: sp.spherical_function(T, sp.SpectralIndex(k), s)
        lap = (f(t + h) - 2 * f(t) + f(t - h)) / h**2
        errs.append(np.max(np.abs(lap / f(t) + k * k)))
    assert errs[1] < errs[0] / 3.5


def test_space_roundtrip():
    for s in [T, S2, G, sp.EuclideanRadial(4, 64), sp.HeisenbergRadial(2, 32)]:
        assert sp.space_from_dict(sp.space_to_dict(s)) == s
    with pytest.raises(ValueError):
        sp.space_from_dict({"kind": "klein"})
