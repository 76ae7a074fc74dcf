"""Exterior calculus property tests: wedge, bracket, d, pullback, integration."""

from math import pi

import numpy as np
import pytest

from csforms.calculus import (
    ChartMap,
    FormField,
    ParametrizedChain,
    bracket_wedge,
    exterior_derivative,
    integrate,
    pullback,
    wedge,
)
from csforms.liealg import random_element, so, u

rng = np.random.default_rng(17)


def const_form(dim, degree, rows):
    rows = np.asarray(rows)

    def ev(pt, tangents):
        return float(np.linalg.det(np.array([[rows[a] @ tangents[b] for b in range(degree)] for a in range(degree)])))

    return FormField(dim, degree, ev)


def coord_form(dim, i):
    return FormField(dim, 1, lambda pt, tg: float(tg[0][i]))


def test_wedge_dx_dy():
    dx, dy = coord_form(2, 0), coord_form(2, 1)
    w = wedge(dx, dy)
    assert w(np.zeros(2), [np.array([1.0, 0.0]), np.array([0.0, 1.0])]) == pytest.approx(1.0)
    assert wedge(dx, dx)(np.zeros(2), [np.array([1.0, 0.0]), np.array([0.0, 1.0])]) == pytest.approx(0.0)


def test_wedge_definition_oracle():
    a, b = coord_form(3, 0), coord_form(3, 2)
    x, y = rng.standard_normal(3), rng.standard_normal(3)
    lhs = wedge(a, b)(np.zeros(3), [x, y])
    assert lhs == pytest.approx(a(np.zeros(3), [x]) * b(np.zeros(3), [y]) - a(np.zeros(3), [y]) * b(np.zeros(3), [x]))


def test_wedge_graded_commutativity():
    a = const_form(4, 1, rng.standard_normal((1, 4)))
    b = const_form(4, 2, rng.standard_normal((2, 4)))
    pt = np.zeros(4)
    tg = [rng.standard_normal(4) for _ in range(3)]
    assert wedge(a, b)(pt, tg) == pytest.approx(wedge(b, a)(pt, tg))  # (-1)^{1*2} = +1


def lie_one_form(alg, mats):
    def ev(pt, tangents):
        v = tangents[0]
        return sum(v[i] * mats[i] for i in range(len(mats)))

    return FormField(len(mats), 1, ev, algebra=alg)


def test_bracket_wedge_oracle_and_symmetry():
    alg = so(4)
    mats = [random_element(alg, rng) for _ in range(4)]
    w = lie_one_form(alg, mats)
    pt = np.zeros(4)
    x, y = rng.standard_normal(4), rng.standard_normal(4)
    ww = bracket_wedge(w, w)
    wx, wy = w(pt, [x]), w(pt, [y])
    assert np.allclose(ww(pt, [x, y]), 2 * (wx @ wy - wy @ wx))
    # graded antisymmetry for p = q = 1
    m2 = [random_element(alg, rng) for _ in range(4)]
    v = lie_one_form(alg, m2)
    assert np.allclose(bracket_wedge(w, v)(pt, [x, y]), bracket_wedge(v, w)(pt, [x, y]))


def test_bracket_wedge_abelian_vanishes():
    alg = u(1)
    mats = [np.array([[0.3j]]), np.array([[-0.8j]])]
    w = lie_one_form(alg, mats)
    v = lie_one_form(alg, [np.array([[1.1j]]), np.array([[0.2j]])])
    pt, tg = np.zeros(2), [rng.standard_normal(2), rng.standard_normal(2)]
    assert np.allclose(bracket_wedge(w, v)(pt, tg), 0.0)


def test_bracket_wedge_even_degree_square_vanishes():
    alg = so(4)
    mats = [random_element(alg, rng) for _ in range(4)]
    a = bracket_wedge(lie_one_form(alg, mats), lie_one_form(alg, [random_element(alg, rng) for _ in range(4)]))
    # [a, a] = 0 for even-degree a
    pt = np.zeros(4)
    tg = [rng.standard_normal(4) for _ in range(4)]
    assert np.max(np.abs(bracket_wedge(a, a)(pt, tg))) < 1e-12


def test_exterior_derivative_exact_case():
    # d(x dy) = dx ^ dy
    f = FormField(2, 1, lambda pt, tg: pt[0] * tg[0][1])
    df = exterior_derivative(f)
    val = df(np.array([0.3, -0.7]), [np.array([1.0, 0.0]), np.array([0.0, 1.0])])
    assert val == pytest.approx(1.0, abs=1e-10)


def test_dd_zero_scalar_function():
    f = FormField(3, 0, lambda pt, tg: np.sin(pt[0]) * pt[1] + pt[2] ** 2)
    ddf = exterior_derivative(exterior_derivative(f))
    val = ddf(rng.uniform(-1, 1, 3), [rng.standard_normal(3), rng.standard_normal(3)])
    assert abs(val) < 1e-6


def test_richardson_improves_trig_derivative():
    f = FormField(1, 0, lambda pt, tg: np.sin(3 * pt[0]))
    d_plain = exterior_derivative(f, 1e-3)
    d_rich = exterior_derivative(f, 1e-3, richardson=True)
    x = np.array([0.4])
    t = [np.array([1.0])]
    exact = 3 * np.cos(1.2)
    assert abs(d_rich(x, t) - exact) < abs(d_plain(x, t) - exact)


def test_pullback_identity_and_constant():
    a = const_form(3, 2, rng.standard_normal((2, 3)))
    ident = ChartMap(3, 3, lambda x: x, jacobian=lambda x: np.eye(3))
    pt, tg = rng.uniform(-1, 1, 3), [rng.standard_normal(3), rng.standard_normal(3)]
    assert pullback(a, ident)(pt, tg) == pytest.approx(a(pt, tg))
    const = ChartMap(3, 3, lambda x: np.ones(3), jacobian=lambda x: np.zeros((3, 3)))
    assert pullback(a, const)(pt, tg) == pytest.approx(0.0)


def test_pullback_commutes_with_d():
    coef = rng.standard_normal((3, 4))

    def ev(pt, tangents):
        c = np.array([np.sin(pt[0]), pt[1] ** 2, np.cos(pt[2]), pt[3]])
        return float((coef @ c) @ tangents[0][:3])

    a = FormField(4, 1, ev)
    f = ChartMap(3, 4, lambda x: np.array([x[0] * x[1], x[2], x[0] + x[2], np.sin(x[1])]))
    pt = rng.uniform(-1, 1, 3)
    tg = [rng.standard_normal(3), rng.standard_normal(3)]
    lhs = pullback(exterior_derivative(a), f)(pt, tg)
    rhs = exterior_derivative(pullback(a, f))(pt, tg)
    assert lhs == pytest.approx(rhs, abs=5e-6)


def unit_square():
    return ParametrizedChain("square", ((0.0, 1.0), (0.0, 1.0)), lambda p: p.copy(), 2)


def test_integrate_dx_dy_over_square():
    dxdy = FormField(2, 2, lambda pt, tg: float(tg[0][0] * tg[1][1] - tg[0][1] * tg[1][0]))
    assert integrate(dxdy, unit_square(), 8) == pytest.approx(1.0)
    assert integrate(dxdy, unit_square().reversed(), 8) == pytest.approx(-1.0)


def test_sphere_area_form():
    # round area of the unit sphere through the stereographic chart
    def lam2(x):
        return (2.0 / (1.0 + x @ x)) ** 2

    area = FormField(2, 2, lambda pt, tg: lam2(pt) * float(tg[0][0] * tg[1][1] - tg[0][1] * tg[1][0]))

    def mp(p):
        th, ph = p
        r = np.tan(th / 2)
        return np.array([r * np.cos(ph), r * np.sin(ph)])

    chain = ParametrizedChain("s2", ((0.0, pi), (0.0, 2 * pi)), mp, 2)
    assert integrate(area, chain, 24) / (4 * pi) == pytest.approx(1.0, abs=1e-8)


def test_stokes_on_square():
    for _ in range(2):
        coefs = rng.standard_normal((2, 6))

        def ev(pt, tangents, c=coefs):
            basis = np.array([1.0, pt[0], pt[1], pt[0] * pt[1], np.sin(pt[0]), np.cos(pt[1])])
            return float((c @ basis) @ tangents[0])

        form = FormField(2, 1, ev)
        area = integrate(exterior_derivative(form), unit_square(), 24)
        edges = [
            (lambda s: np.array([s[0], 0.0]), +1),
            (lambda s: np.array([1.0, s[0]]), +1),
            (lambda s: np.array([s[0], 1.0]), -1),
            (lambda s: np.array([0.0, s[0]]), -1),
        ]
        boundary = sum(
            sign * integrate(form, ParametrizedChain("e", ((0.0, 1.0),), mp, 2), 24) for mp, sign in edges
        )
        assert area == pytest.approx(boundary, abs=1e-6)


def test_dimension_and_degree_errors():
    a = coord_form(2, 0)
    b = coord_form(3, 0)
    with pytest.raises(ValueError):
        wedge(a, b)
    with pytest.raises(ValueError):
        integrate(a, unit_square(), 4)
    with pytest.raises(ValueError):
        a(np.zeros(2), [np.zeros(2), np.zeros(2)])
