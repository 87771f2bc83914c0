import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from bandsampling import kernels as kn
from bandsampling import spaces as sp

T, S2, G = sp.Torus(), sp.Sphere(2), sp.SU2()
RULES = {T: sp.quadrature(T, 40), S2: sp.quadrature(S2, 30), G: sp.quadrature(G, 40)}


def _random_points(space, n, rng):
    if isinstance(space, sp.Torus):
        return rng.uniform(0, 2 * np.pi, n)
    if isinstance(space, sp.SU2):
        return rng.uniform(0, np.pi, n)
    x = rng.standard_normal((n, 3))
    return x / np.linalg.norm(x, axis=1, keepdims=True)


def test_band_dimensions():
    assert kn.band_dimension(T, 5) == 11
    assert kn.band_dimension(S2, 4) == 25
    assert kn.band_dimension(G, 2) == 14
    assert kn.central_dimension(G, 2) == 3
    with pytest.raises(sp.UnsupportedSpaceError):
        kn.band_dimension(sp.EuclideanRadial(3), 1.0)


def test_kernel_on_diagonal():
    assert kn.kernel_eval(T, 6, 1.0, 1.0) == pytest.approx(13.0, abs=1e-12)
    e = S2.identity
    assert kn.kernel_eval(S2, 1, e, e) == pytest.approx(4.0)


def test_dirichlet_near_identity_uses_series():
    t = np.array([0.0, 1e-9, -1e-9, 2 * np.pi])
    np.testing.assert_allclose(kn.dirichlet_kernel(7, t), 15.0, atol=1e-12)


def test_su2_displayed_closed_form_is_character_sum():
    theta = np.linspace(0, np.pi, 301)
    for omega in range(0, 13):
        chars = sp.su2_character(omega, theta).sum(axis=0)
        np.testing.assert_allclose(kn.su2_character_sum_closed_form(omega, theta), chars, atol=1e-10)


def test_su2_weighted_closed_form():
    theta = np.linspace(0, np.pi, 301)
    for omega in range(0, 13):
        n = np.arange(omega + 1)[:, None]
        s = ((n + 1) * sp.su2_character(omega, theta)).sum(axis=0)
        np.testing.assert_allclose(kn.su2_kernel_closed_form(omega, theta), s,
                                   atol=1e-12 * s.max())


def test_su2_central_kernel_is_conjugation_average():
    # K(x, y) = mean over k of phi_Omega(y^-1 k x k^-1).  With x = cos a + sin a (v . i sigma)
    # for v uniform on S^2, the relative class angle has cosine cos a cos b + sin a sin b v_3.
    rule = sp.quadrature(S2, 16)
    omega = 5
    rng = np.random.default_rng(3)
    for a, b in rng.uniform(0, np.pi, (8, 2)):
        c = np.cos(a) * np.cos(b) + np.sin(a) * np.sin(b) * rule.nodes[:, 2]
        angles = np.arccos(np.clip(c, -1, 1))
        avg = rule.integrate(kn.sinc_kernel(G, omega, angles))
        assert avg == pytest.approx(kn.kernel_eval(G, omega, a, b), abs=1e-10)


@pytest.mark.parametrize("space", [T, S2, G])
@pytest.mark.parametrize("omega", [0, 3, 12])
def test_phi_properties(space, omega):
    rule = RULES[space]
    dim = kn.band_dimension(space, omega)
    if isinstance(space, sp.SU2):
        phi = kn.sinc_kernel(space, omega, rule.nodes)
        at_e = kn.sinc_kernel(space, omega, 0.0)
    else:
        phi = kn.kernel_eval(space, omega, rule.nodes, space.identity)
        at_e = kn.kernel_eval(space, omega, space.identity, space.identity)
    assert at_e == pytest.approx(dim, abs=1e-10)
    assert rule.integrate(phi) == pytest.approx(1.0, abs=1e-8)
    assert rule.integrate(np.abs(phi) ** 2) == pytest.approx(dim, abs=1e-8 * dim)


@pytest.mark.parametrize("space", [T, S2, G])
def test_reproducing_property(space):
    rng = np.random.default_rng(11)
    omega = 6
    rule = RULES[space]
    y = _random_points(space, 5, rng)
    kx = np.array([kn.kernel_eval(space, omega, rule.nodes, yy) for yy in y])
    for _ in range(5):
        f = kn.random_band_function(space, omega, rng)
        inner = (kx.conj() * rule.weights) @ kn.synthesize(f, rule.nodes)
        np.testing.assert_allclose(inner, kn.synthesize(f, y), atol=1e-10)


@pytest.mark.parametrize("space", [T, S2, G])
def test_kernel_column_synthesis(space):
    rng = np.random.default_rng(5)
    omega = 5
    x = _random_points(space, 7, rng)
    y = _random_points(space, 1, rng)[0]
    col = kn.BandCoefficients(space, omega, np.conj(sp.basis_eval(space, omega, y)))
    np.testing.assert_allclose(kn.synthesize(col, x), kn.kernel_eval(space, omega, x, y), atol=1e-10)


@pytest.mark.parametrize("space", [T, S2, G])
def test_symmetry_and_positive_definiteness(space):
    rng = np.random.default_rng(2)
    pts = _random_points(space, 30, rng)
    K = kn.kernel_gram(space, 7, pts)
    np.testing.assert_allclose(K, K.conj().T, atol=1e-12)
    assert np.linalg.eigvalsh(K).min() >= -1e-8 * np.trace(K).real


def test_euclidean_kernel_closed_form_d3():
    # c_3 int_0^R sin(l r)/(l r) l^2 dl with c_3 = 1/(2 pi^2)
    R = 2.0
    r = np.linspace(0.1, 6, 25)
    expected = (np.sin(R * r) - R * r * np.cos(R * r)) / (2 * np.pi**2 * r**3)
    np.testing.assert_allclose(kn.euclidean_kernel(3, R, r, 128), expected, atol=1e-12)


def test_euclidean_gram_psd():
    rng = np.random.default_rng(8)
    E = sp.EuclideanRadial(2, 128)
    pts = rng.standard_normal((15, 2))
    K = kn.kernel_gram(E, 3.0, pts)
    assert np.linalg.eigvalsh(K).min() >= -1e-8 * np.trace(K)


class TestHeisenberg:
    band = sp.HeisenbergBand(2, 1.5)

    def test_origin_value_is_r_squared(self):
        for R in (0.5, 1.0, 3.0):
            val = kn.heisenberg_kernel(1, sp.HeisenbergBand(0, R), 0.0, 0.0)
            assert val == pytest.approx(R * R, abs=1e-10)

    def test_even_in_t(self):
        w = np.linspace(0, 3, 7)[:, None]
        t = np.linspace(0.1, 4, 9)[None, :]
        np.testing.assert_allclose(kn.heisenberg_kernel(2, self.band, w, t),
                                   kn.heisenberg_kernel(2, self.band, w, -t), rtol=0, atol=1e-12)

    def test_real_valued(self):
        assert isinstance(kn.heisenberg_kernel(1, self.band, 0.4, 0.2), float)

    @pytest.mark.parametrize("seed", range(3))
    def test_gram_psd(self, seed):
        rng = np.random.default_rng(seed)
        H = sp.HeisenbergRadial(1, 128)
        z = rng.standard_normal((10, 1)) + 1j * rng.standard_normal((10, 1))
        t = rng.standard_normal(10)
        K = kn.kernel_gram(H, self.band, (z, t))
        np.testing.assert_allclose(K, K.T, atol=1e-12)
        assert np.linalg.eigvalsh(K).min() >= -1e-8 * np.trace(K)

    def test_paper_literal_drops_density_and_m0(self):
        lit = kn.heisenberg_kernel(1, sp.HeisenbergBand(0, 1.0), 0.0, 0.0, paper_literal=True)
        assert lit == 0.0
        # m = 1 only, no density: int_0^R 2 dl = 2R at the origin
        lit = kn.heisenberg_kernel(1, sp.HeisenbergBand(1, 1.0), 0.0, 0.0, paper_literal=True)
        assert lit == pytest.approx(2.0)


# ---- projection ---------------------------------------------------------------

def test_project_constant_on_torus():
    rule = RULES[T]
    c = kn.project_band(T, 3, np.ones(len(rule)), rule).coeffs
    expected = np.zeros(7)
    expected[3] = 1
    np.testing.assert_allclose(c, expected, atol=1e-14)


@pytest.mark.parametrize("space", [T, S2, G])
def test_project_basis_function(space):
    rule = RULES[space]
    b = sp.basis_eval(space, 4, rule.nodes)
    for j in range(b.shape[1]):
        c = kn.project_band(space, 4, b[:, j], rule).coeffs
        assert np.max(np.abs(c - np.eye(b.shape[1])[j])) < 1e-10


@pytest.mark.parametrize("space", [T, S2, G])
def test_project_truncates(space):
    rng = np.random.default_rng(4)
    rule = RULES[space]
    f = kn.random_band_function(space, 8, rng)
    p = kn.project_band(space, 4, kn.synthesize(f, rule.nodes), rule)
    np.testing.assert_allclose(p.coeffs, kn.truncate(f, 4).coeffs, atol=1e-12)
    again = kn.project_band(space, 4, kn.synthesize(p, rule.nodes), rule)
    np.testing.assert_allclose(again.coeffs, p.coeffs, atol=1e-10)


def test_project_rejects_mismatches():
    rule = sp.quadrature(T, 3)
    with pytest.raises(ValueError):
        kn.project_band(T, 2, np.ones(len(rule) - 1), rule)
    with pytest.raises(ValueError):
        kn.project_band(T, 5, np.ones(len(rule)), rule)


def test_zero_function():
    f = kn.BandCoefficients(S2, 3, np.zeros(16))
    assert np.all(kn.synthesize(f, sp.quadrature(S2, 4).nodes) == 0)


def test_truncate_roundtrip():
    f = kn.random_band_function(T, 3, np.random.default_rng(0))
    assert np.array_equal(kn.truncate(kn.truncate(f, 6), 3).coeffs, f.coeffs)


def test_projection_error_decreases_with_band():
    # a smooth bump on S^2 centred off the pole
    rule = sp.quadrature(S2, 40)
    c = np.array([0.3, 0.4, np.sqrt(0.75)])
    g = np.exp(4 * (rule.nodes @ c))
    total = rule.integrate(np.abs(g) ** 2)
    errs = []
    for omega in range(1, 13):
        p = kn.project_band(S2, omega, g, rule)
        errs.append(total - p.norm() ** 2)
    assert all(b < a for a, b in zip(errs, errs[1:]))


@settings(max_examples=30, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), omega=st.integers(0, 6))
def test_parseval_norm(seed, omega):
    f = kn.random_band_function(S2, omega, np.random.default_rng(seed))
    rule = sp.quadrature(S2, omega + 1)
    assert rule.integrate(np.abs(kn.synthesize(f, rule.nodes)) ** 2) == pytest.approx(1.0, abs=1e-12)
