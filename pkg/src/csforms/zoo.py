"""Concrete analytic bundle charts, sections, and chains.

All round-sphere charts are stereographic with conformal factor
lam = 2/(1 + |x|^2); the chart origin is the north pole and the south pole is
the excluded point at infinity.  Full-sphere chains are parametrized by polar
angles mapped into the chart, which keeps every pulled-back characteristic
form smooth on the closed parameter box even though the potential itself
blows up toward the excluded pole.

Shipped bundles:

    hopf_u1      degree-one U(1) bundle over S^2 (monopole potential),
                 the c_1 = 1 normalization anchor
    ut_s2        oriented frame/unit-tangent bundle of the round S^2,
                 SO(2) structure group, Gauss-Bonnet and cap obstruction
    frame_s4     oriented frame bundle of the round S^4, SO(4) group, with
                 three associated-bundle variants: the unit sphere bundle
                 (H = SO(3)), and the two RP^3 bundles attached to the su(2)
                 ideals (H = H1, H2)
    flat:<g>:<n> trivial bundle, zero potential
    twisted_u2   generic-curvature U(2) chart over R^2 used for the
                 determinant-bundle and odd-sphere-bundle vanishing checks

Orientation conventions are fixed once here: base chains are oriented so the
Euler integrals are positive, and fiber parametrizations are oriented so the
assembled transgression forms have fiber integral +1.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import cos, pi, sin, tan
from typing import Callable

import numpy as np
from scipy.linalg import expm

from .bundles import BundleChart, ChainSpec, FiberModel, Section, Zero
from .calculus import ParametrizedChain
from .invariants import InvariantPolynomial, make_polynomial
from .liealg import (
    algebra_from_tag,
    left_mult_matrix,
    so,
    so4_ideal_split,
    so4_to_quaternion_pair,
    standard_split,
    u,
)

__all__ = [
    "NamedBundle",
    "PrecisionError",
    "hopf_u1",
    "unit_tangent_s2",
    "frame_bundle_s4",
    "flat_bundle",
    "twisted_u2",
    "get_bundle",
    "bundle_names",
    "winding_degree",
    "quaternionic_section_degrees",
    "transport_frame_along_ray",
    "south_transition_frame",
]


class PrecisionError(Exception):
    """Raised when an integer-valued computation does not round cleanly."""


@dataclass(frozen=True)
class NamedBundle:
    """A chart with its catalog of sections, chains, and expected constants."""

    name: str
    chart: BundleChart
    fiber: FiberModel | None = None
    sections: dict[str, Section] = field(default_factory=dict)
    chains: dict[str, ChainSpec] = field(default_factory=dict)
    expected: dict[str, float] = field(default_factory=dict)
    default_poly: tuple[str, int] | None = None
    south_fields: dict[str, Callable[[np.ndarray], np.ndarray]] = field(default_factory=dict)

    def polynomial(self) -> InvariantPolynomial:
        if self.default_poly is None:
            raise ValueError(f"bundle {self.name} has no default polynomial")
        name, k = self.default_poly
        return make_polynomial(name, k, self.chart.algebra.tag)


# --- S^2 chart helpers --------------------------------------------------------

def _sphere2_map(params: np.ndarray) -> np.ndarray:
    th, ph = params
    r = tan(0.5 * th)
    return np.array([r * cos(ph), r * sin(ph)])

def _sphere2_jac(params: np.ndarray) -> np.ndarray:
    th, ph = params
    r = tan(0.5 * th)
    dr = 0.5 / cos(0.5 * th) ** 2
    return np.array(
        [[dr * cos(ph), -r * sin(ph)], [dr * sin(ph), r * cos(ph)]]
    )


def _circle_chain(theta0: float) -> ParametrizedChain:
    r = tan(0.5 * theta0)

    def mp(params):
        (ph,) = params
        return np.array([r * cos(ph), r * sin(ph)])

    def jac(params):
        (ph,) = params
        return np.array([[-r * sin(ph)], [r * cos(ph)]])

    return ParametrizedChain(
        name=f"circle:{theta0:.6f}",
        intervals=((0.0, 2 * pi),),
        mapping=mp,
        chart_dim=2,
        jacobian=jac,
    )


def _sphere2_chains() -> dict[str, ChainSpec]:
    def box(th_lo, th_hi, name, boundary, zeros):
        return ChainSpec(
            ParametrizedChain(
                name=name,
                intervals=((th_lo, th_hi), (0.0, 2 * pi)),
                mapping=_sphere2_map,
                chart_dim=2,
                jacobian=_sphere2_jac,
                boundary=boundary,
            ),
            zeros_inside=zeros,
        )

    chains: dict[str, ChainSpec] = {}
    chains["full_sphere"] = box(0.0, pi, "full_sphere", (), ("north", "south"))
    for label, th0 in (("cap:pi/6", pi / 6), ("cap:pi/3", pi / 3), ("cap:pi/2", pi / 2)):
        chains[label] = box(0.0, th0, label, ((_circle_chain(th0), +1),), ("north",))
    chains["band:pi/6:pi/3"] = box(
        pi / 6,
        pi / 3,
        "band:pi/6:pi/3",
        ((_circle_chain(pi / 3), +1), (_circle_chain(pi / 6), -1)),
        (),
    )
    return chains


# --- Hopf / monopole bundle ---------------------------------------------------

def hopf_u1() -> NamedBundle:
    """Degree-one U(1) bundle over the round S^2, c_1 anchor."""
    alg = u(1)

    def potential(x):
        d = 1.0 + x @ x
        # A = i (u dv - v du) / (1 + r^2)
        return np.array([[[-1j * x[1] / d]], [[1j * x[0] / d]]])

    def curvature(x):
        d = 1.0 + x @ x
        f = 2j / d**2
        out = np.zeros((2, 2, 1, 1), dtype=complex)
        out[0, 1, 0, 0] = f
        out[1, 0, 0, 0] = -f
        return out

    chart = BundleChart(2, alg, potential, curvature, split=None, name="hopf_u1")
    fiber = FiberModel(
        name="u1_fiber",
        intervals=((0.0, 2 * pi),),
        lift=lambda s: np.array([[np.exp(1j * s[0])]]),
        lift_alt=lambda s: np.array([[np.exp(1j * (s[0] + 0.3 * np.sin(s[0])))]]),
    )
    return NamedBundle(
        name="hopf_u1",
        chart=chart,
        fiber=fiber,
        chains=_sphere2_chains(),
        expected={"c1": 1.0},
        default_poly=("chern_j", 1),
    )


# --- unit tangent bundle of S^2 ----------------------------------------------

_E12 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def _ut_s2_section(field: Callable[[np.ndarray], np.ndarray], zeros: tuple[Zero, ...], name: str) -> Section:
    def value(x):
        v = field(x)
        v = v / np.linalg.norm(v)
        # frame columns (v, Jv) in the conformal orthonormal gauge
        return np.array([[v[0], -v[1]], [v[1], v[0]]])

    return Section(name=name, value=value, zeros=zeros)


def unit_tangent_s2() -> NamedBundle:
    """Oriented orthonormal frame bundle of round S^2 (equals its unit
    tangent bundle), Levi-Civita potential in the conformal gauge."""
    alg = so(2)

    def potential(x):
        d = 1.0 + x @ x
        # spin connection of lam^2 (du^2 + dv^2):  w12 = 2(u dv - v du)/(1+r^2)
        return np.array([-2.0 * x[1] / d * _E12, 2.0 * x[0] / d * _E12])

    def curvature(x):
        lam2 = (2.0 / (1.0 + x @ x)) ** 2
        out = np.zeros((2, 2, 2, 2))
        out[0, 1] = lam2 * _E12
        out[1, 0] = -lam2 * _E12
        return out

    chart = BundleChart(2, alg, potential, curvature, split=None, name="ut_s2")
    fiber = FiberModel(
        name="so2_fiber",
        intervals=((0.0, 2 * pi),),
        lift=lambda s: expm(s[0] * _E12),
        lift_alt=lambda s: expm((s[0] + 0.25 * np.sin(2 * s[0])) * _E12),
    )
    sections = {
        "height_gradient": _ut_s2_section(
            lambda x: -x, (Zero("north", 1), Zero("south", 1)), "height_gradient"
        ),
        "rotational": _ut_s2_section(
            lambda x: np.array([-x[1], x[0]]), (Zero("north", 1), Zero("south", 1)), "rotational"
        ),
    }
    south_fields = {
        "height_gradient": lambda w: w / np.linalg.norm(w),
        "rotational": lambda w: np.array([w[1], -w[0]]) / np.linalg.norm(w),
    }
    return NamedBundle(
        name="ut_s2",
        chart=chart,
        fiber=fiber,
        sections=sections,
        chains=_sphere2_chains(),
        expected={"euler_characteristic": 2.0},
        default_poly=("euler", 1),
        south_fields=south_fields,
    )


# --- frame bundle of S^4 ------------------------------------------------------

_I4 = np.eye(4)
_S4_CURV_SHAPE = np.einsum("ac,bd->abcd", _I4, _I4) - np.einsum("bc,ad->abcd", _I4, _I4)


def _s4_potential(x: np.ndarray) -> np.ndarray:
    # A_a[b,c] = mu (x_c d_ab - x_b d_ac), the conformal-gauge spin connection
    mu = -2.0 / (1.0 + x @ x)
    return mu * (np.einsum("ab,c->abc", _I4, x) - np.einsum("ac,b->abc", _I4, x))


def _s4_curvature(x: np.ndarray) -> np.ndarray:
    # constant-curvature F_ab = lam^2 (E_ab - E_ba)
    lam2 = (2.0 / (1.0 + x @ x)) ** 2
    return lam2 * _S4_CURV_SHAPE


def _s3_angles(psis: np.ndarray) -> np.ndarray:
    p1, p2, p3 = psis
    return np.array(
        [cos(p1), sin(p1) * cos(p2), sin(p1) * sin(p2) * cos(p3), sin(p1) * sin(p2) * sin(p3)]
    )


def _quat_lift(psis: np.ndarray) -> np.ndarray:
    # smooth global lift of the sphere-bundle fiber: left multiplication by v
    return left_mult_matrix(_s3_angles(psis))


def _gs_lift(reference: np.ndarray) -> Callable[[np.ndarray], np.ndarray]:
    """Gram-Schmidt completion of the fiber point against a reference frame.

    Discontinuous on the measure-zero locus where the point hits the span of
    the reference tail; even quadrature orders keep nodes away from it.
    """

    def lift(psis: np.ndarray) -> np.ndarray:
        v = _s3_angles(psis)
        cols = [v]
        for r in reference.T:
            w = r.astype(float).copy()
            for q in cols:
                w = w - (w @ q) * q
            nrm = np.linalg.norm(w)
            if nrm < 1e-12:
                continue
            cols.append(w / nrm)
        g = np.column_stack(cols[:4])
        if np.linalg.det(g) < 0:
            g[:, 3] = -g[:, 3]
        return g

    return lift


_GS_REF_1 = np.eye(4)[:, 1:]  # (e2, e3, e4)
_GS_REF_2 = expm(0.4 * (np.eye(4)[:, [1, 2, 3, 0]] - np.eye(4)[:, [1, 2, 3, 0]].T))[:, 1:]


def _ball_lift(basis: tuple[np.ndarray, ...]) -> Callable[[np.ndarray], np.ndarray]:
    # axis-angle ball chart of an su(2) subgroup modulo +-1, covered once
    def lift(params: np.ndarray) -> np.ndarray:
        rho, al, be = params
        n_hat = np.array([sin(al) * cos(be), sin(al) * sin(be), cos(al)])
        m = rho * (n_hat[0] * basis[0] + n_hat[1] * basis[1] + n_hat[2] * basis[2])
        return expm(m)

    return lift


def _s4_full_chain() -> ChainSpec:
    def mp(params):
        th = params[0]
        return tan(0.5 * th) * _s3_angles(params[1:])

    def jac(params):
        th = params[0]
        p1, p2, p3 = params[1:]
        r = tan(0.5 * th)
        dr = 0.5 / cos(0.5 * th) ** 2
        v = _s3_angles(params[1:])
        dv1 = np.array([-sin(p1), cos(p1) * cos(p2), cos(p1) * sin(p2) * cos(p3), cos(p1) * sin(p2) * sin(p3)])
        dv2 = np.array([0.0, -sin(p1) * sin(p2), sin(p1) * cos(p2) * cos(p3), sin(p1) * cos(p2) * sin(p3)])
        dv3 = np.array([0.0, 0.0, -sin(p1) * sin(p2) * sin(p3), sin(p1) * sin(p2) * cos(p3)])
        return np.column_stack([dr * v, r * dv1, r * dv2, r * dv3])

    chain = ParametrizedChain(
        name="full_sphere",
        intervals=((0.0, pi), (0.0, pi), (0.0, pi), (0.0, 2 * pi)),
        mapping=mp,
        chart_dim=4,
        jacobian=jac,
    )
    return ChainSpec(chain, zeros_inside=("south",))


def frame_bundle_s4(variant: str = "sphere") -> NamedBundle:
    """Oriented frame bundle of the round S^4 with a chosen associated bundle.

    variant: "sphere" (H = SO(3), unit sphere bundle), "b1" or "b2" (the two
    RP^3 bundles of the su(2) ideal decomposition), or "none" (no split).
    """
    alg = so(4)
    split1, split2 = so4_ideal_split()
    if variant == "sphere":
        split = standard_split("so4", "so3")
        fiber = FiberModel(
            name="s3_fiber",
            intervals=((0.0, pi), (0.0, pi), (0.0, 2 * pi)),
            lift=_quat_lift,
            lift_alt=_gs_lift(_GS_REF_1),
            orientation=-1,
        )
        poly = ("euler", 2)
    elif variant == "b1":
        split = split1
        fiber = FiberModel(
            name="rp3_b1_fiber",
            intervals=((0.0, pi), (0.0, pi), (0.0, 2 * pi)),
            lift=_ball_lift(split1.p_basis),
            lift_alt=None,
            orientation=-1,
        )
        poly = ("pontryagin_1", 2)
    elif variant == "b2":
        split = split2
        fiber = FiberModel(
            name="rp3_b2_fiber",
            intervals=((0.0, pi), (0.0, pi), (0.0, 2 * pi)),
            lift=_ball_lift(split2.p_basis),
            lift_alt=None,
            orientation=-1,
        )
        poly = ("pontryagin_1", 2)
    elif variant == "none":
        split, fiber, poly = None, None, ("euler", 2)
    else:
        raise ValueError(f"unknown frame_s4 variant {variant!r}")

    if fiber is not None and fiber.lift_alt is None:
        # alternate lift: right-translate by a parameter-dependent H element
        h_elt = split.h_basis[0]
        base_lift = fiber.lift
        fiber = FiberModel(
            name=fiber.name,
            intervals=fiber.intervals,
            lift=base_lift,
            lift_alt=lambda s: base_lift(s) @ expm(0.7 * np.sin(s[0] + s[2]) * h_elt),
            orientation=fiber.orientation,
        )

    chart = BundleChart(4, alg, _s4_potential, _s4_curvature, split=split, name=f"frame_s4:{variant}")
    # parallel transport along meridians is trivial in the conformal gauge, so
    # the quaternionic sections are the constant identity coset in this chart
    sections = {
        "sigma1": Section("sigma1", lambda x: np.eye(4), ()),
        "sigma2": Section("sigma2", lambda x: np.eye(4), ()),
    }
    return NamedBundle(
        name=f"frame_s4:{variant}" if variant != "sphere" else "frame_s4",
        chart=chart,
        fiber=fiber,
        sections=sections,
        chains={"full_sphere": _s4_full_chain()},
        expected={"euler_characteristic": 2.0, "p1": 0.0},
        default_poly=poly,
    )


# --- flat and generic charts --------------------------------------------------

def flat_bundle(gtag: str, n: int, hsub: str | None = None) -> NamedBundle:
    """Trivial bundle over R^n with zero potential."""
    alg = algebra_from_tag(gtag)
    m = alg.n
    dt = complex if alg.is_complex else float

    def potential(x):
        return np.zeros((n, m, m), dtype=dt)

    def curvature(x):
        return np.zeros((n, n, m, m), dtype=dt)

    split = standard_split(gtag, hsub) if hsub else None
    chart = BundleChart(n, alg, potential, curvature, split=split, name=f"flat:{gtag}:{n}")
    return NamedBundle(name=f"flat:{gtag}:{n}", chart=chart)


_M1 = 0.7 * np.array([[0.9j, 0.4 + 0.3j], [-0.4 + 0.3j, -0.6j]])
_M2 = 0.7 * np.array([[0.5j, -0.2 + 0.6j], [0.2 + 0.6j, 0.8j]])


def twisted_u2(hsub: str = "su2") -> NamedBundle:
    """U(2) bundle chart over R^2 with generic non-abelian curvature.

    A = x M1 dy + y M2 dx for fixed non-commuting skew-hermitian M1, M2, so
    F(dx,dy) = M1 - M2 + xy [M2, M1].  Used for the determinant-bundle
    (hsub="su2") and odd-sphere-bundle (hsub="u1") vanishing checks, where the
    psi-curvature is genuinely nonzero but the relevant polynomial kills it.
    """
    alg = u(2)

    def potential(x):
        return np.array([x[1] * _M2, x[0] * _M1])

    def curvature(x):
        f = _M1 - _M2 + x[0] * x[1] * (_M2 @ _M1 - _M1 @ _M2)
        out = np.zeros((2, 2, 2, 2), dtype=complex)
        out[0, 1] = f
        out[1, 0] = -f
        return out

    split = standard_split("u2", hsub)
    chart = BundleChart(2, alg, potential, curvature, split=split, name=f"twisted_u2:{hsub}")
    return NamedBundle(
        name=f"twisted_u2:{hsub}",
        chart=chart,
        default_poly=("chern_j", 1 if hsub == "su2" else 2),
    )


def bundle_names() -> list[str]:
    return [
        "hopf_u1",
        "ut_s2",
        "frame_s4",
        "frame_s4:b1",
        "frame_s4:b2",
        "twisted_u2:su2",
        "twisted_u2:u1",
        "flat:<g>:<n>",
    ]


def get_bundle(name: str) -> NamedBundle:
    if name == "hopf_u1":
        return hopf_u1()
    if name == "ut_s2":
        return unit_tangent_s2()
    if name in ("frame_s4", "frame_s4:sphere"):
        return frame_bundle_s4("sphere")
    if name == "frame_s4:b1":
        return frame_bundle_s4("b1")
    if name == "frame_s4:b2":
        return frame_bundle_s4("b2")
    if name == "twisted_u2:su2":
        return twisted_u2("su2")
    if name == "twisted_u2:u1":
        return twisted_u2("u1")
    if name.startswith("flat:"):
        parts = name.split(":")
        if len(parts) == 3:
            return flat_bundle(parts[1], int(parts[2]))
        if len(parts) == 4:
            return flat_bundle(parts[1], int(parts[2]), parts[3])
    raise ValueError(f"unknown bundle {name!r}; known: {bundle_names()}")


# --- degrees and transport ----------------------------------------------------

_SPHERE_VOLUMES = {1: 2 * pi, 3: 2 * pi**2}


def winding_degree(
    f: Callable[[np.ndarray], np.ndarray],
    d: int,
    quad_order: int | tuple[int, ...] = 24,
    target_volume: float | None = None,
    fd_step: float = 1e-5,
    align_signs: bool = False,
) -> int:
    """Degree of a map into S^d given on source-sphere angle parameters.

    f maps angle parameters (length d) to a unit vector in R^{d+1}; the degree
    is the integral of the pulled-back normalized volume form.  For maps whose
    values are only defined up to overall sign (projective-space lifts), pass
    align_signs=True: the finite-difference stencil is sign-aligned around
    each node, which the volume pullback does not feel.

    target_volume overrides the normalization (e.g. the volume of RP^3 when f
    lifts a projective-valued map and the covering count is wanted).  Raises
    PrecisionError when the integral is farther than 0.1 from an integer.
    """
    if d not in (1, 3):
        raise ValueError("winding_degree supports d in {1, 3}")
    intervals = ((0.0, 2 * pi),) if d == 1 else ((0.0, pi), (0.0, pi), (0.0, 2 * pi))
    orders = [quad_order] * d if np.isscalar(quad_order) else list(quad_order)
    axes = []
    for o, (lo, hi) in zip(orders, intervals):
        xs, ws = np.polynomial.legendre.leggauss(int(o))
        axes.append((0.5 * (hi + lo) + 0.5 * (hi - lo) * xs, 0.5 * (hi - lo) * ws))
    vol = target_volume if target_volume is not None else _SPHERE_VOLUMES[d]

    def value(params):
        v = np.asarray(f(params), dtype=float)
        return v / np.linalg.norm(v)

    total = 0.0
    for idx in np.ndindex(*[len(a[0]) for a in axes]):
        s = np.array([axes[i][0][j] for i, j in enumerate(idx)])
        weight = float(np.prod([axes[i][1][j] for i, j in enumerate(idx)]))
        center = value(s)
        cols = [center]
        for i in range(d):
            e = np.zeros(d)
            e[i] = 1.0
            vp = value(s + fd_step * e)
            vm = value(s - fd_step * e)
            if align_signs:
                if vp @ center < 0:
                    vp = -vp
                if vm @ center < 0:
                    vm = -vm
            cols.append((vp - vm) / (2 * fd_step))
        total += weight * float(np.linalg.det(np.column_stack(cols)))
    deg = total / vol
    nearest = round(deg)
    if abs(deg - nearest) > 0.1:
        raise PrecisionError(
            f"degree integral {deg:.6f} is not within 0.1 of an integer; raise quad_order"
        )
    return int(nearest)


_CONJ4 = np.diag([1.0, -1.0, -1.0, -1.0])


def south_transition_frame(yhat: np.ndarray) -> np.ndarray:
    """Coset representative of the transported frame in the south chart.

    The north-chart section is the identity frame; re-expressing it in the
    orientation-compatible south stereographic chart multiplies by the frame
    transition (I - 2 yhat yhat^T) composed with quaternion conjugation.
    """
    yhat = np.asarray(yhat, dtype=float)
    return (np.eye(4) - 2.0 * np.outer(yhat, yhat)) @ _CONJ4


def quaternionic_section_degrees(
    quad_order: tuple[int, int, int] = (12, 12, 16)
) -> tuple[int, int]:
    """Indices of the two quaternionic-structure sections at the south pole.

    Each section of B_i is followed around a small sphere about its singular
    point; the map into the RP^3 fiber is lifted to the unit quaternions and
    the covering count of the fiber (normalized by vol(RP^3) = pi^2) is the
    index the obstruction formula counts.  Returns (a1, a2).
    """

    def section_map(which: int):
        def f(params: np.ndarray) -> np.ndarray:
            yhat = _s3_angles(params)
            a, b = so4_to_quaternion_pair(south_transition_frame(yhat))
            return a if which == 1 else b

        return f

    a1 = winding_degree(section_map(1), 3, quad_order, target_volume=pi**2, align_signs=True)
    a2 = winding_degree(section_map(2), 3, quad_order, target_volume=pi**2, align_signs=True)
    return a1, a2


def transport_frame_along_ray(
    chart: BundleChart,
    direction: np.ndarray,
    r_max: float = 8.0,
    steps: int = 400,
) -> np.ndarray:
    """Parallel-transport the identity frame outward along a chart ray.

    Integrates g' = -A(x'(t)) g with fixed-step RK4.  For the round-sphere
    charts shipped here the potential vanishes along rays through the origin,
    so the result should be the identity to integrator accuracy; the general
    integrator is kept for cross-checking that fact numerically.
    """
    direction = np.asarray(direction, dtype=float)
    direction = direction / np.linalg.norm(direction)
    dt_ = r_max / steps
    g = chart.algebra.identity()

    def rhs(r: float, gm: np.ndarray) -> np.ndarray:
        a = np.einsum("a,aij->ij", direction, np.asarray(chart.potential(r * direction)))
        return -a @ gm

    r = 0.0
    for _ in range(steps):
        k1 = rhs(r, g)
        k2 = rhs(r + dt_ / 2, g + dt_ / 2 * k1)
        k3 = rhs(r + dt_ / 2, g + dt_ / 2 * k2)
        k4 = rhs(r + dt_, g + dt_ * k3)
        g = g + dt_ / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
        r += dt_
    return g
