"""Bundle zoo: named charts, global integrals, sections, windings, degrees."""

from math import pi

import numpy as np
import pytest

from csforms.bundles import (
    char_form,
    fiber_integral,
    heterotic_residual,
    obstruction_identity_check,
    phi_p_form,
    potential_curvature_residual,
    tp_form,
)
from csforms.calculus import integrate
from csforms.invariants import make_polynomial
from csforms.liealg import random_group_element
from csforms.zoo import (
    PrecisionError,
    bundle_names,
    flat_bundle,
    get_bundle,
    quaternionic_section_degrees,
    transport_frame_along_ray,
    winding_degree,
)

rng = np.random.default_rng(31)


def test_get_bundle_dispatch():
    for name in ("hopf_u1", "ut_s2", "frame_s4", "frame_s4:b1", "twisted_u2:u1", "flat:so3:2"):
        assert get_bundle(name).chart is not None
    with pytest.raises(ValueError):
        get_bundle("nonexistent")
    assert "hopf_u1" in bundle_names()


@pytest.mark.parametrize("name", ["hopf_u1", "ut_s2", "frame_s4", "twisted_u2:su2", "flat:so4:2"])
def test_every_bundle_passes_curvature_cross_check(name):
    b = get_bundle(name)
    x = rng.uniform(-1.0, 1.0, b.chart.base_dim)
    worst = max(
        potential_curvature_residual(b.chart, x, i, j)
        for i in range(b.chart.base_dim)
        for j in range(i + 1, b.chart.base_dim)
    )
    assert worst < 1e-6


def test_flat_bundle_is_flat_and_closed():
    b = flat_bundle("so4", 3, "so3")
    e2 = make_polynomial("euler", 2, "so4")
    ch = b.chart.at(random_group_element(b.chart.algebra, rng, 0.5))
    pt = ch.point(rng.uniform(-1, 1, 3))
    tg4 = [rng.standard_normal(9) for _ in range(4)]
    assert np.max(np.abs(ch.ctx(pt).curv(tg4[0], tg4[1]))) == 0.0
    from csforms.calculus import exterior_derivative

    assert abs(exterior_derivative(tp_form(ch, e2))(pt, tg4)) < 1e-8
    assert abs(exterior_derivative(phi_p_form(ch, e2))(pt, tg4)) < 1e-8


def test_gauss_bonnet_s2():
    b = get_bundle("ut_s2")
    e1 = make_polynomial("euler", 1, "so2")
    v = integrate(char_form(b.chart, e1), b.chains["full_sphere"].chain, 24)
    assert v == pytest.approx(2.0, abs=1e-8)


def test_chern_anchor():
    b = get_bundle("hopf_u1")
    c1 = make_polynomial("chern_j", 1, "u1")
    v = integrate(char_form(b.chart, c1), b.chains["full_sphere"].chain, 24)
    assert v == pytest.approx(1.0, abs=1e-8)


def test_gauss_bonnet_s4_smoke():
    # low order for speed; the acceptance suite runs the tight version
    b = get_bundle("frame_s4")
    e2 = make_polynomial("euler", 2, "so4")
    v = integrate(char_form(b.chart, e2), b.chains["full_sphere"].chain, 6)
    assert v == pytest.approx(2.0, abs=1e-3)


def test_p1_integral_vanishes_pointwise():
    b = get_bundle("frame_s4")
    p1 = make_polynomial("pontryagin_1", 2, "so4")
    form = char_form(b.chart, p1)
    for _ in range(5):
        pt = b.chart.point(rng.uniform(-2, 2, 4))
        tg = [rng.standard_normal(4) for _ in range(4)]
        assert abs(form(pt, tg)) < 1e-12


def test_heterotic_sweep_small():
    for name in ("hopf_u1", "ut_s2", "frame_s4:b1"):
        b = get_bundle(name)
        P = b.polynomial()
        for _ in range(3):
            ch = b.chart.at(random_group_element(b.chart.algebra, rng, 0.6))
            pt = ch.point(rng.uniform(-1, 1, b.chart.base_dim))
            tg = [rng.standard_normal(ch.dim) for _ in range(2 * P.degree)]
            assert heterotic_residual(ch, P, pt, tg) < 1e-4


def test_fiber_normalizations():
    ut = get_bundle("ut_s2")
    e1 = make_polynomial("euler", 1, "so2")
    v = fiber_integral(ut.chart, lambda ch: phi_p_form(ch, e1), np.zeros(2), ut.fiber, 24)
    assert v == pytest.approx(1.0, abs=1e-8)
    v_alt = fiber_integral(ut.chart, lambda ch: phi_p_form(ch, e1), np.zeros(2), ut.fiber, 48, use_alt_lift=True)
    assert abs(v - v_alt) < 1e-6

    fs = get_bundle("frame_s4")
    e2 = make_polynomial("euler", 2, "so4")
    v = fiber_integral(fs.chart, lambda ch: phi_p_form(ch, e2), np.zeros(4), fs.fiber, 8)
    assert v == pytest.approx(1.0, abs=1e-4)

    p1 = make_polynomial("pontryagin_1", 2, "so4")
    for name in ("frame_s4:b1", "frame_s4:b2"):
        b = get_bundle(name)
        v = fiber_integral(b.chart, lambda ch: phi_p_form(ch, p1), np.zeros(4), b.fiber, 8)
        assert v == pytest.approx(1.0, abs=1e-4)


def test_gs_lift_reference_independence():
    # Gram-Schmidt lifts built against two different reference frames give the
    # same fiber integral (the integrand is basic)
    from csforms.bundles import FiberModel
    from csforms.zoo import _GS_REF_1, _GS_REF_2, _gs_lift

    fs = get_bundle("frame_s4")
    e2 = make_polynomial("euler", 2, "so4")
    vals = []
    for ref in (_GS_REF_1, _GS_REF_2):
        fib = FiberModel("s3_gs", fs.fiber.intervals, _gs_lift(ref), orientation=fs.fiber.orientation)
        vals.append(fiber_integral(fs.chart, lambda ch: phi_p_form(ch, e2), np.zeros(4), fib, 8))
    assert vals[0] == pytest.approx(vals[1], abs=1e-6)
    assert vals[0] == pytest.approx(1.0, abs=1e-4)


def test_fiber_integral_away_from_origin():
    # the fiber integral of a basic form cannot depend on the base point
    ut = get_bundle("ut_s2")
    e1 = make_polynomial("euler", 1, "so2")
    v = fiber_integral(ut.chart, lambda ch: phi_p_form(ch, e1), np.array([0.7, -0.4]), ut.fiber, 24)
    assert v == pytest.approx(1.0, abs=1e-8)


def test_obstruction_identity_caps():
    b = get_bundle("ut_s2")
    e1 = make_polynomial("euler", 1, "so2")
    for chain, expected_lhs in (("cap:pi/6", 1 - np.cos(pi / 6)), ("cap:pi/3", 0.5), ("cap:pi/2", 1.0)):
        for sec in ("height_gradient", "rotational"):
            rep = obstruction_identity_check(b.chart, e1, b.chains[chain], b.sections[sec])
            assert rep.residual < 1e-4
            assert rep.lhs == pytest.approx(expected_lhs, abs=1e-8)
            assert rep.index_sum == 1


def test_obstruction_identity_band_and_full():
    b = get_bundle("ut_s2")
    e1 = make_polynomial("euler", 1, "so2")
    rep = obstruction_identity_check(b.chart, e1, b.chains["band:pi/6:pi/3"], b.sections["height_gradient"])
    assert rep.index_sum == 0 and rep.residual < 1e-4
    rep = obstruction_identity_check(b.chart, e1, b.chains["full_sphere"], b.sections["rotational"])
    assert rep.index_sum == 2 and rep.boundary_term == 0.0 and rep.residual < 1e-4


def test_section_winding_indices():
    b = get_bundle("ut_s2")
    fields_u = {"height_gradient": lambda x: -x, "rotational": lambda x: np.array([-x[1], x[0]])}
    for name, zero_index in (("height_gradient", 1), ("rotational", 1)):
        f_u, f_w = fields_u[name], b.south_fields[name]
        for f in (f_u, f_w):
            def circle(params, f=f):
                t = params[0]
                return f(0.05 * np.array([np.cos(t), np.sin(t)]))
            assert winding_degree(circle, 1) == zero_index


def test_winding_degree_basics():
    ident = lambda p: np.array([np.cos(p[0]), np.sin(p[0])])
    conj = lambda p: np.array([np.cos(p[0]), -np.sin(p[0])])
    assert winding_degree(ident, 1) == 1
    assert winding_degree(conj, 1) == -1

    from csforms.zoo import _s3_angles

    assert winding_degree(lambda p: _s3_angles(p), 3, quad_order=(8, 8, 12)) == 1


def test_winding_degree_reparametrization_invariance():
    f = lambda p: np.array([np.cos(2 * p[0]), np.sin(2 * p[0])])
    g = lambda p: f(np.array([p[0] + 0.3 * np.sin(p[0])]))
    assert winding_degree(f, 1) == winding_degree(g, 1) == 2

    from csforms.zoo import _s3_angles

    def h(p):
        q = np.array([p[0] + 0.1 * np.sin(p[0]) * np.sin(p[0] - pi), p[1], p[2]])
        return _s3_angles(q)

    assert winding_degree(h, 3, quad_order=(8, 8, 12)) == 1


def test_winding_degree_ambiguity_raises():
    # half-winding cannot round cleanly
    f = lambda p: np.array([np.cos(p[0] / 2), np.sin(p[0] / 2)])
    with pytest.raises(PrecisionError):
        winding_degree(f, 1)


def test_quaternionic_section_degrees():
    a1, a2 = quaternionic_section_degrees((10, 10, 14))
    assert {a1, a2} == {2, -2}
    assert a1 + a2 == 0


def test_meridian_transport_is_trivial():
    fs = get_bundle("frame_s4")
    for _ in range(3):
        d = rng.standard_normal(4)
        g = transport_frame_along_ray(fs.chart, d, r_max=6.0, steps=150)
        assert np.max(np.abs(g - np.eye(4))) < 1e-10
    ut = get_bundle("ut_s2")
    g = transport_frame_along_ray(ut.chart, rng.standard_normal(2), r_max=6.0, steps=150)
    assert np.max(np.abs(g - np.eye(2))) < 1e-10


def test_b1_global_index_count():
    """Cross-consistency: the heterotic identity integrated over the base ties
    the Psi-characteristic number to the section index through the unit fiber
    normalization: integral of P1(Omega) - P1(Psi_i) equals a_i."""
    a1, a2 = quaternionic_section_degrees((10, 10, 14))
    p1 = make_polynomial("pontryagin_1", 2, "so4")
    fs = get_bundle("frame_s4")
    for name, a in (("frame_s4:b1", a1), ("frame_s4:b2", a2)):
        b = get_bundle(name)
        v_psi = integrate(char_form(b.chart, p1, "psi"), fs.chains["full_sphere"].chain, 6)
        assert (0.0 - v_psi) == pytest.approx(a, abs=1e-3)


def test_su2_factor_instanton_number():
    # the self-dual curvature factor of the round 4-sphere carries one unit of
    # second-Chern charge in its fundamental representation; with the shipped
    # P1 normalization that shows up as half the 4x4-trace integral
    fs = get_bundle("frame_s4")
    b2 = get_bundle("frame_s4:b2")  # h2 = self-dual ideal
    p1 = make_polynomial("pontryagin_1", 2, "so4")
    v = integrate(char_form(b2.chart, p1, "psi"), fs.chains["full_sphere"].chain, 6)
    assert v / 2 == pytest.approx(1.0, abs=1e-3)


def test_twisted_u2_vanishing():
    for name in ("twisted_u2:su2", "twisted_u2:u1"):
        b = get_bundle(name)
        P = b.polynomial()
        worst_p = 0.0
        nonzero_psi = 0.0
        for _ in range(10):
            ch = b.chart.at(random_group_element(b.chart.algebra, rng, 0.6))
            pt = ch.point(rng.uniform(-1, 1, 2))
            ctx = ch.ctx(pt)
            X, Y = rng.standard_normal(6), rng.standard_normal(6)
            psi_val = ctx.psi_curv(X, Y)
            nonzero_psi = max(nonzero_psi, np.max(np.abs(psi_val)))
            tg = [rng.standard_normal(6) for _ in range(2 * P.degree)]
            worst_p = max(worst_p, abs(char_form(ch, P, "psi")(pt, tg)))
        assert nonzero_psi > 1e-3  # the check is not vacuous
        assert worst_p < 1e-10
