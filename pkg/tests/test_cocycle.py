import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from modgeo import cocycle, gns
from modgeo.errors import DimensionMismatch, NotPositiveDefinite, StripViolation
from modgeo.sampling import ginibre, hermitian_basis, random_density, random_positive

seeds = st.integers(0, 2**32 - 1)


@pytest.fixture
def qubit():
    # rho0 = I/2 and P = diag(1, 3); every quantity is a scalar per diagonal entry
    return cocycle.cocycle_from_positive(gns.make_gns(np.eye(2) / 2), np.diag([1.0, 3.0]))


def test_qubit_unitaries(qubit):
    t = 0.9
    expected = np.diag([2.0 ** (-1j * t), 6.0 ** (-1j * t)])
    np.testing.assert_allclose(cocycle.eval_U(qubit, t), expected, atol=1e-14)


def test_qubit_state(qubit):
    rho, zeta = cocycle.state_from_cocycle(qubit)
    np.testing.assert_allclose(rho.entries, np.diag([0.25, 0.75]), atol=1e-15)
    assert zeta == pytest.approx(np.log(4.0), abs=1e-15)


def test_qubit_xi_and_y(qubit):
    np.testing.assert_allclose(cocycle.xi(qubit, 0.5j), np.diag([1.0, np.sqrt(3.0)]), atol=1e-14)
    np.testing.assert_allclose(cocycle.y_op(qubit).right, np.sqrt(2) * np.diag([1.0, np.sqrt(3.0)]),
                               atol=1e-14)


def test_reference_cocycle_is_trivial(rng):
    rho = random_density(rng, 3)
    c = cocycle.cocycle_from_positive(gns.make_gns(rho), rho)
    for t in (-1.0, 0.4, 2.0):
        np.testing.assert_allclose(cocycle.eval_U(c, t), np.eye(3), atol=1e-12)
    assert c.zeta == pytest.approx(0.0, abs=1e-14)


def test_rejects_bad_generator():
    space = gns.make_gns(np.eye(2) / 2)
    with pytest.raises(NotPositiveDefinite):
        cocycle.cocycle_from_positive(space, np.diag([1.0, -1.0]))
    with pytest.raises(DimensionMismatch):
        cocycle.cocycle_from_positive(space, np.eye(3))


def test_strip(qubit):
    with pytest.raises(StripViolation):
        cocycle.xi(qubit, 0.7j)
    with pytest.raises(StripViolation):
        cocycle.xi(qubit, -0.1j)


def test_xi_on_real_line_is_orbit(rng):
    c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, 3)), random_positive(rng, 3))
    for t in (-1.5, 0.0, 0.8):
        np.testing.assert_allclose(cocycle.xi(c, t), cocycle.eval_U(c, t) @ c.space.omega0, atol=1e-12)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 5), st.floats(-3, 3), st.floats(-3, 3))
def test_cocycle_identity_property(seed, n, r, t):
    rng = np.random.default_rng(seed)
    c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, n)), random_positive(rng, n))
    assert cocycle.check_cocycle_identity(c, r, t) <= 1e-10
    U = cocycle.eval_U(c, t)
    assert np.linalg.norm(U.conj().T @ U - np.eye(n)) <= 1e-12


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(2, 5), st.floats(0.01, 100))
def test_scale_covariance(seed, n, scale):
    rng = np.random.default_rng(seed)
    space = gns.make_gns(random_density(rng, n))
    P = random_positive(rng, n)
    c, cs = cocycle.cocycle_from_positive(space, P), cocycle.cocycle_from_positive(space, scale * P)
    assert abs(cs.zeta - c.zeta - np.log(scale)) <= 1e-12
    assert np.linalg.norm(cocycle.state_from_cocycle(cs)[0].entries
                          - cocycle.state_from_cocycle(c)[0].entries) <= 1e-12
    # the unitaries only change by the phase scale**(-it)
    t = 0.7
    assert np.linalg.norm(cocycle.eval_U(cs, t) - scale ** (-1j * t) * cocycle.eval_U(c, t)) <= 1e-11


def test_state_correspondence(rng):
    for n in (2, 3, 5):
        c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, n)), random_positive(rng, n))
        assert cocycle.verify_state_correspondence(c, hermitian_basis(n)).passed


def test_bound_tight_at_ends(rng):
    c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, 3)), random_positive(rng, 3))
    assert np.linalg.norm(cocycle.xi(c, 0.0)) ** 2 == pytest.approx(1.0, abs=1e-13)
    assert np.linalg.norm(cocycle.xi(c, 0.5j)) ** 2 == pytest.approx(np.exp(c.zeta), rel=1e-13)
    assert cocycle.verify_strip_bound(c).passed


def test_operator_suites(rng):
    for n in (2, 4):
        c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, n)), random_positive(rng, n))
        samples = [ginibre(rng, n) for _ in range(3)]
        assert cocycle.verify_half_continuation(c, samples).passed
        assert cocycle.verify_half_operators(c, samples).passed
        for A in samples:
            assert cocycle.verify_three_forms(c, A).passed


def test_omega_u_is_unit(rng):
    c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, 4)), random_positive(rng, 4))
    assert gns.hs_norm(cocycle.omega_U(c)) == pytest.approx(1.0, abs=1e-13)
    Xh = cocycle.x_sqrt(c)
    np.testing.assert_allclose(Xh.then(Xh)(np.eye(4)), cocycle.x_op(c)(np.eye(4)), atol=1e-10)


def test_swapped_chord_fails_off_unit_trace():
    # 2y + (1 - 2y) |T^{1/2} Omega0|^2 is only an upper bound when Tr P = 1
    c = cocycle.cocycle_from_positive(gns.make_gns(np.eye(2) / 2), 4.0 * np.diag([1.0, 3.0]))
    y = 0.4
    lhs = np.linalg.norm(cocycle.xi(c, 1j * y)) ** 2
    top = np.linalg.norm(cocycle.xi(c, 0.5j)) ** 2
    assert lhs > 2 * y + (1 - 2 * y) * top
    assert lhs <= (1 - 2 * y) + 2 * y * top


def test_xi_continuity(rng):
    c = cocycle.cocycle_from_positive(gns.make_gns(random_density(rng, 3)), random_positive(rng, 3))
    for z in (0.3j, 0.5j, 0.0):
        steps = [np.linalg.norm(cocycle.xi(c, z - 1j * d if z.imag > 0 else z + d) - cocycle.xi(c, z))
                 for d in (1e-4, 1e-5)]
        assert steps[0] / steps[1] == pytest.approx(10, rel=0.01)
