"""Invariant polynomial tests, including the perfect-matching Pfaffian oracle."""

from itertools import permutations
from math import pi

import numpy as np
import pytest
from scipy.linalg import expm

from csforms.invariants import (
    eval_on_forms,
    invariance_identity_residual,
    make_polynomial,
    pfaffian,
    polarize_eval,
)
from csforms.liealg import random_element, so, u

rng = np.random.default_rng(5)


def pfaffian_matching_oracle(x: np.ndarray) -> float:
    """Sum over perfect matchings with crossing signs (independent of the
    first-row expansion used by the library)."""
    n = x.shape[0]
    if n % 2:
        return 0.0
    if n == 0:
        return 1.0

    def rec(indices):
        if not indices:
            return 1.0
        first, rest = indices[0], indices[1:]
        total = 0.0
        for pos, j in enumerate(rest):
            remaining = tuple(r for r in rest if r != j)
            total += (-1) ** pos * x[first, j] * rec(remaining)
        return total

    return rec(tuple(range(n)))


def test_pfaffian_2x2():
    a = 1.7
    assert pfaffian(np.array([[0.0, a], [-a, 0.0]])) == pytest.approx(a)


def test_pfaffian_block_diagonal():
    a, b = 2.0, -3.5
    m = np.zeros((4, 4))
    m[0, 1], m[1, 0] = a, -a
    m[2, 3], m[3, 2] = b, -b
    assert pfaffian(m) == pytest.approx(a * b)
    assert pfaffian(np.zeros((4, 4))) == 0.0


@pytest.mark.parametrize("n", [2, 4, 6])
def test_pfaffian_matching_oracle(n):
    for _ in range(10):
        m = rng.integers(-4, 5, size=(n, n)).astype(float)
        m = m - m.T
        assert pfaffian(m) == pytest.approx(pfaffian_matching_oracle(m), abs=1e-9)


def test_pfaffian_squares_to_determinant():
    for n in (2, 4, 6, 8):
        m = rng.standard_normal((n, n))
        m = m - m.T
        assert pfaffian(m) ** 2 == pytest.approx(np.linalg.det(m), rel=1e-8)


def test_pfaffian_rejects_non_skew():
    with pytest.raises(ValueError):
        pfaffian(np.eye(4))


def test_euler_so2_value():
    e = make_polynomial("euler", 1, "so2")
    a = 0.83
    assert e(np.array([[0.0, a], [-a, 0.0]])) == pytest.approx(a / (2 * pi))


def test_chern1_u1_value():
    c1 = make_polynomial("chern_j", 1, "u1")
    theta = 0.37
    assert c1(np.array([[1j * theta]])) == pytest.approx(theta / (2 * pi))


def test_chern_elementary_symmetric():
    thetas = np.array([0.4, -1.1, 0.75])
    x = np.diag(1j * thetas)
    t = thetas / (2 * pi)
    c1 = make_polynomial("chern_j", 1, "u3")
    c2 = make_polynomial("chern_j", 2, "u3")
    c3 = make_polynomial("chern_j", 3, "u3")
    assert c1(x) == pytest.approx(t.sum(), abs=1e-12)
    assert c2(x) == pytest.approx(t[0] * t[1] + t[0] * t[2] + t[1] * t[2], abs=1e-12)
    assert c3(x) == pytest.approx(t[0] * t[1] * t[2], abs=1e-12)


def test_make_polynomial_compatibility_errors():
    with pytest.raises(ValueError):
        make_polynomial("euler", 2, "so3")
    with pytest.raises(ValueError):
        make_polynomial("chern_j", 3, "u2")
    with pytest.raises(ValueError):
        make_polynomial("pontryagin_1", 3, "so4")


def test_polarization_diagonal_and_symmetry():
    P = make_polynomial("euler", 2, "so4")
    x = random_element(so(4), rng)
    y = random_element(so(4), rng)
    assert polarize_eval(P, [x, x]) == pytest.approx(P(x), abs=1e-12)
    assert polarize_eval(P, [x, y]) == pytest.approx(polarize_eval(P, [y, x]), abs=1e-12)
    assert polarize_eval(P, [x, np.zeros((4, 4))]) == pytest.approx(0.0, abs=1e-14)


def test_polarization_permutation_invariance_chern2():
    P = make_polynomial("chern_j", 2, "u2")
    xs = [random_element(u(2), rng) for _ in range(2)]
    vals = {round(polarize_eval(P, [xs[i] for i in p]), 12) for p in permutations(range(2))}
    assert len(vals) == 1


def test_infinitesimal_ad_invariance():
    h = 1e-5
    cases = [
        (make_polynomial("euler", 2, "so4"), so(4)),
        (make_polynomial("pontryagin_1", 2, "so4"), so(4)),
        (make_polynomial("chern_j", 2, "u2"), u(2)),
        (make_polynomial("trace_power_3", 3, "so4"), so(4)),
    ]
    for P, alg in cases:
        for _ in range(5):
            z = random_element(alg, rng)
            x = random_element(alg, rng)
            gp, gm = expm(h * z), expm(-h * z)
            d = (P(np.linalg.inv(gp) @ x @ gp) - P(np.linalg.inv(gm) @ x @ gm)) / (2 * h)
            assert abs(d) < 1e-8


def _const_forms(alg, count, degree_list):
    mats = [random_element(alg, rng) for _ in range(count)]

    def one(m):
        return lambda v: v[0] * m

    def two(m):
        return lambda v, w: (v[0] * w[1] - v[1] * w[0]) * m

    out = []
    i = 0
    for p in degree_list:
        out.append((one(mats[i], ) if p == 1 else two(mats[i]), p))
        i += 1
    return out


def test_eval_on_forms_single_argument():
    P = make_polynomial("chern_j", 1, "u1")
    m = np.array([[1j * 0.6]])
    f = [(lambda v: v[2] * m, 1)]
    tangents = [np.array([0.0, 0.0, 2.0])]
    assert eval_on_forms(P, f, tangents) == pytest.approx(2 * 0.6 / (2 * pi))


def test_eval_on_forms_alternation():
    P = make_polynomial("pontryagin_1", 2, "so4")
    m1, m2 = random_element(so(4), rng), random_element(so(4), rng)
    args = [(lambda v: v[0] * m1, 1), (lambda v, w: (v[1] * w[2] - v[2] * w[1]) * m2, 2)]
    x = rng.standard_normal(4)
    # repeated tangent vector kills the alternating sum
    assert eval_on_forms(P, args, [x, x, rng.standard_normal(4)]) == pytest.approx(0.0, abs=1e-12)


def test_eval_on_forms_abelian_square_vanishes():
    P = make_polynomial("trace_power_2", 2, "u1")
    m = np.array([[0.9j]])
    alpha = (lambda v: v[0] * m, 1)
    tangents = [rng.standard_normal(2) for _ in range(2)]
    assert eval_on_forms(P, [alpha, alpha], tangents) == pytest.approx(0.0, abs=1e-14)


def test_invariance_identity_residual_vanishes():
    for P in (make_polynomial("pontryagin_1", 2, "so4"), make_polynomial("euler", 2, "so4")):
        alg = so(4)
        forms = _const_forms(alg, 2, [1, 2])
        phi_m = random_element(alg, rng)
        phi = lambda v: v[3] * phi_m
        tangents = [rng.standard_normal(4) for _ in range(4)]
        assert abs(invariance_identity_residual(P, forms, phi, tangents)) < 1e-10


def test_invariance_identity_zero_phi():
    P = make_polynomial("pontryagin_1", 2, "so4")
    forms = _const_forms(so(4), 2, [1, 2])
    phi = lambda v: np.zeros((4, 4))
    tangents = [rng.standard_normal(4) for _ in range(4)]
    assert invariance_identity_residual(P, forms, phi, tangents) == 0.0
