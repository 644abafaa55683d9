import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abflux import (
    Coupling,
    OrthogonalPostSelection,
    PathAmplitudes,
    analytic_pL,
    analytic_pR,
    encircle,
    make_cylinder,
    postselect_exact,
    postselect_weak_approx,
    tensor,
    weak_value_P_eta,
)
from abflux.hilbert import eigenstate

import oracles
from conftest import cylinder_states


def evolved(xi, c, theta=math.pi):
    return encircle(tensor(PathAmplitudes.balanced(), xi), c, theta)


def gaussian_pair(sigma, shift, half_width):
    """Pre/post pair whose product c_j conj(d_j) is a Gaussian centred at i*shift.

    All cumulants above the first vanish (up to exp(-2 pi^2 sigma^2) aliasing),
    so the weak value is i*shift and the weak-value phase law holds exactly.
    """
    j = np.arange(-half_width, half_width + 1)
    env = np.exp(-(j**2) / (4 * sigma**2))
    return make_cylinder(-half_width, env), make_cylinder(-half_width, env * np.exp(-1j * shift * j / sigma**2))


def test_projection_onto_own_state():
    xi = make_cylinder(0, [1, 2j, -1])
    ps = postselect_exact(tensor(PathAmplitudes(0.6, 0.8j), xi), xi)
    assert ps.success_prob == pytest.approx(1, abs=1e-14)
    assert abs(ps.a_L - 0.6) < 1e-14 and abs(ps.a_R - 0.8j) < 1e-14
    assert ps.exact


def test_no_coupling_keeps_superposition():
    xi, phi = make_cylinder(0, [1, 1]), make_cylinder(0, [2, 1 + 1j])
    ps = postselect_exact(evolved(xi, Coupling(1, 0)), phi)
    # unchanged up to the global phase of <phi|xi>
    assert abs(ps.a_L - ps.a_R) < 1e-14 and abs(ps.a_L) == pytest.approx(2**-0.5, abs=1e-14)
    ov = np.vdot(phi.amps, xi.amps)
    assert ps.success_prob == pytest.approx(abs(ov) ** 2, abs=1e-14)


def test_worked_example_against_dense_projection(worked_pair):
    xi, phi = worked_pair
    c = Coupling(1, 0.2)
    ps = postselect_exact(evolved(xi, c), phi)
    vec = oracles.evolution_matrix(0, 2, 0.2, math.pi) @ oracles.joint_vector(2**-0.5, 2**-0.5, xi.amps)
    out = oracles.project_cylinder(vec, phi.amps)
    np.testing.assert_allclose([ps.a_L, ps.a_R], out / np.linalg.norm(out), atol=1e-14)
    assert ps.success_prob == pytest.approx(np.linalg.norm(out) ** 2, abs=1e-14)


def test_windows_are_aligned(worked_pair):
    xi, _ = worked_pair
    c = Coupling(1, 0.3)
    wide = make_cylinder(-2, [0, 0, 1, 1j, 0])
    narrow = make_cylinder(0, [1, 1j])
    a = postselect_exact(evolved(xi, c), wide)
    b = postselect_exact(evolved(xi, c), narrow)
    assert abs(a.a_L - b.a_L) < 1e-14 and abs(a.success_prob - b.success_prob) < 1e-14


def test_orthogonal_projection_raises():
    with pytest.raises(OrthogonalPostSelection):
        postselect_exact(evolved(eigenstate(2), Coupling(1, 0.3)), eigenstate(1))


def test_weak_approx_real_weak_value():
    xi = make_cylinder(-1, [1, 2, 1])
    c = Coupling(1, 0.3)
    ps = postselect_weak_approx(xi, xi, c, 2.0)
    assert abs(ps.a_L) == pytest.approx(2**-0.5, abs=1e-15)
    wv = weak_value_P_eta(xi, xi).wv
    assert abs(ps.relative_amplitude - np.exp(1j * c.qK * wv.real * 2.0 / math.pi)) < 1e-14
    assert not ps.exact


def test_weak_approx_zero_angle(worked_pair):
    ps = postselect_weak_approx(*worked_pair, Coupling(1, 0.4), 0.0)
    assert ps.a_L == pytest.approx(2**-0.5) and ps.a_R == pytest.approx(2**-0.5)


def test_weak_approx_worked_example(worked_pair):
    c = Coupling(1, 0.1)
    ps = postselect_weak_approx(*worked_pair, c, math.pi)
    r = ps.relative_amplitude
    assert np.angle(r) == pytest.approx(0.05, abs=1e-14)
    assert abs(r) == pytest.approx(math.exp(0.05), rel=1e-14)
    alpha = weak_value_P_eta(*worked_pair, c).alpha
    assert ps.p_left == pytest.approx(analytic_pL(alpha, math.pi), abs=1e-15)


def test_analytic_probabilities():
    assert analytic_pL(0.0, 2.3) == 0.5
    assert analytic_pL(1.7, 0.0) == 0.5
    # e^pi / (e^pi + e^-pi), evaluated directly
    direct = math.exp(math.pi) / (math.exp(math.pi) + math.exp(-math.pi))
    assert analytic_pL(1.0, math.pi) == pytest.approx(direct, abs=1e-15)
    assert analytic_pL(1.0, math.pi) == pytest.approx(0.998136038, abs=1e-9)


def test_analytic_probabilities_extreme_tilt():
    with np.errstate(all="raise"):
        assert analytic_pL(700 / math.pi, math.pi) == 1.0
        assert analytic_pR(350 / math.pi, math.pi) == pytest.approx(math.exp(-700), rel=1e-12)
        assert analytic_pL(-1e6, math.pi) == 0.0


@given(st.floats(-50, 50), st.floats(0, math.pi))
def test_probabilities_sum_and_symmetry(alpha, theta):
    assert abs(analytic_pL(alpha, theta) + analytic_pR(alpha, theta) - 1) <= 1e-15
    assert analytic_pL(-alpha, theta) == analytic_pR(alpha, theta)


def test_gaussian_pair_realizes_unit_alpha():
    qK = 0.1
    xi, phi = gaussian_pair(sigma=20.0, shift=math.pi / qK, half_width=160)
    c = Coupling(1, qK)
    rep = weak_value_P_eta(xi, phi, c)
    assert rep.alpha == pytest.approx(1.0, abs=1e-9)
    for theta in (0.5, 2.0, math.pi):
        ps = postselect_exact(evolved(xi, c, theta), phi)
        assert ps.p_left == pytest.approx(analytic_pL(1.0, theta), abs=1e-9)


def test_exact_converges_to_analytic_as_coupling_shrinks(worked_pair):
    """max over theta of |pL_exact - pL_analytic| as qK is halved.

    With the symmetric arm phases the even cumulants cancel between the arms,
    so the leading error is cubic in qK.
    """
    xi, phi = worked_pair
    thetas = np.linspace(0, math.pi, 33)
    qks = [0.4, 0.2, 0.1, 0.05, 0.025]
    errs = []
    for qK in qks:
        c = Coupling(1, qK)
        alpha = weak_value_P_eta(xi, phi, c).alpha
        errs.append(max(abs(postselect_exact(evolved(xi, c, t), phi).p_left - analytic_pL(alpha, t)) for t in thetas))
    slope = oracles.log_log_slope(qks, errs)
    assert slope == pytest.approx(3.0, abs=0.3)


@given(cylinder_states(max_size=5), cylinder_states(max_size=5), st.floats(-2, 2), st.floats(0, math.pi))
def test_measurement_order_is_irrelevant(xi, phi, qK, theta):
    """P(arm, phi) from detector-first equals the same from postselect-first."""
    state = evolved(xi, Coupling(1, qK), theta)
    try:
        ps = postselect_exact(state, phi)
    except OrthogonalPostSelection:
        return
    w = state.arm_weights()
    lo = min(state.j_min, phi.j_min)
    hi = max(state.j_min + state.size - 1, phi.j_max)
    for arm, p_arm in enumerate(w):
        cyl = np.zeros(hi - lo + 1, complex)
        cyl[state.j_min - lo : state.j_min - lo + state.size] = state.amps[arm]
        detector_first = abs(np.vdot(phi.padded(lo, hi), cyl)) ** 2
        post_first = ps.success_prob * (ps.p_left if arm == 0 else ps.p_right)
        assert abs(detector_first - post_first) < 1e-12


@pytest.mark.parametrize("seed", [0, 1, 2])
def test_relative_amplitude_error_order(seed):
    """Symmetric arm phases: a_R/a_L = exp(K(ix) - K(-ix)) for the cumulant
    generating function K of c_j conj(d_j), so only odd cumulants survive and
    the error against exp(i qK wv) is cubic.  Putting the whole phase on one
    arm (dense oracle) keeps the second cumulant and the error is quadratic.
    """
    rng = np.random.default_rng(seed)
    xi = make_cylinder(-2, rng.normal(size=5) + 1j * rng.normal(size=5))
    phi = make_cylinder(-2, rng.normal(size=5) + 1j * rng.normal(size=5))
    wv = weak_value_P_eta(xi, phi).wv
    w = xi.amps * phi.amps.conj()
    m = xi.m
    qks = [0.04, 0.02, 0.01, 0.005]
    sym, one_sided = [], []
    for qK in qks:
        ps = postselect_exact(evolved(xi, Coupling(1, qK)), phi)
        sym.append(abs(ps.relative_amplitude - np.exp(1j * qK * wv)))
        ratio = np.sum(w * np.exp(1j * qK * m)) / np.sum(w)
        one_sided.append(abs(ratio - np.exp(1j * qK * wv)))
    assert oracles.log_log_slope(qks, sym) == pytest.approx(3.0, abs=0.3)
    assert oracles.log_log_slope(qks, one_sided) == pytest.approx(2.0, abs=0.3)
