"""Local principal-bundle models and the transgression-form machinery.

A BundleChart is a trivialized patch of a principal G-bundle: a base chart of
dimension n, an analytic g-valued potential A and curvature F on it, and
exponential fiber coordinates around a movable reference element g0.  Chart
points are vectors (x, t) of length n + dim(g) describing the group element
g0 exp(sum_a t_a E_a).  In these coordinates the connection and curvature are

    w(v)      = Ad_{g^-1} A(v_x) + g^-1 dg (v_t)
    Omega(v,w)= Ad_{g^-1} F(v_x, w_x)

with the Maurer-Cartan term evaluated exactly through the block-matrix
Frechet derivative of expm.  Keeping g0 movable lets every caller work at
t = 0, where the fiber coordinates are the algebra coordinates themselves and
no matrix logarithm is ever needed.

When the chart carries a reductive split g = h + p, the connection decomposes
as w = phi + psi with phi = pr_p(w) and psi = pr_h(w) (fixed projections in
g; psi is then the induced connection of the H-bundle over the associated
bundle).  The curvature of psi is computed analytically as

    Psi = pr_h(Omega) - (1/2) pr_h([phi, phi]),

which is forced by projecting Omega = d_H phi + Psi + (1/2)[phi,phi] onto h;
the finite-difference cross-check against d psi + (1/2)[psi, psi] in the test
suite pins the sign.

The two assembled families are

    TP(w)     = sum_i A_i P(w, [w,w]^i, Omega^{k-1-i})            (degree 2k-1)
    PhiP(w)   = sum_ij A_ij P(phi, [phi,phi]^i, Psi^j, Omega^{k-1-i-j})

with exact rational coefficients from csforms.rationals, and the identities
under test are d TP = P(Omega) and d PhiP = P(Omega) - P(Psi).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Callable, Sequence

import numpy as np
from scipy.linalg import expm

from .calculus import FormField, ParametrizedChain, exterior_derivative, integrate
from .invariants import InvariantPolynomial, eval_on_forms_indexed
from .liealg import LieAlgebraElement, MatrixLieAlgebra, ReductiveSplit
from .rationals import cs_coefficient, phi_coefficient

__all__ = [
    "BundleChart",
    "FiberModel",
    "Section",
    "ChainSpec",
    "ObstructionReport",
    "expm_tangent",
    "connection_on_total_space",
    "curvature_on_total_space",
    "decompose",
    "psi_curvature",
    "covariant_derivative_residual",
    "omega_form",
    "curvature_form",
    "phi_form",
    "psi_form",
    "char_form",
    "tp_form",
    "phi_p_form",
    "heterotic_residual",
    "fiber_integral",
    "section_pullback_form",
    "obstruction_identity_check",
    "vertical_tangent",
    "psi_horizontal_part",
    "ad_coords_matrix",
    "connection_curvature_fd_residual",
    "potential_curvature_residual",
]


def expm_tangent(m: np.ndarray, dm: np.ndarray) -> np.ndarray:
    """Directional derivative of expm at m in direction dm (block identity)."""
    n = m.shape[0]
    dtype = complex if (np.iscomplexobj(m) or np.iscomplexobj(dm)) else float
    blk = np.zeros((2 * n, 2 * n), dtype=dtype)
    blk[:n, :n] = m
    blk[n:, n:] = m
    blk[:n, n:] = dm
    return expm(blk)[:n, n:]


def ad_coords_matrix(algebra: MatrixLieAlgebra, h: np.ndarray) -> np.ndarray:
    """Coordinate matrix of X -> h^-1 X h in the stored basis."""
    hinv = h.conj().T
    cols = [algebra.coords(hinv @ b @ h) for b in algebra.basis()]
    return np.array(cols).T


@dataclass(frozen=True)
class BundleChart:
    """Trivialized patch of a principal bundle with analytic potential."""

    base_dim: int
    algebra: MatrixLieAlgebra
    potential: Callable[[np.ndarray], np.ndarray]  # x -> (n, m, m)
    curvature_field: Callable[[np.ndarray], np.ndarray]  # x -> (n, n, m, m)
    split: ReductiveSplit | None = None
    g0: np.ndarray | None = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.base_dim + self.algebra.dim

    def at(self, g0: np.ndarray) -> "BundleChart":
        """Same patch with the fiber chart re-centered at g0."""
        return replace(self, g0=g0)

    def reference(self) -> np.ndarray:
        return self.algebra.identity() if self.g0 is None else self.g0

    def point(self, x: np.ndarray, t: np.ndarray | None = None) -> np.ndarray:
        t = np.zeros(self.algebra.dim) if t is None else np.asarray(t, dtype=float)
        return np.concatenate([np.asarray(x, dtype=float), t])

    def ctx(self, point: np.ndarray) -> "_ChartContext":
        return _ChartContext(self, np.asarray(point, dtype=float))


class _ChartContext:
    """Per-point evaluation cache: group element, potential, curvature."""

    def __init__(self, chart: BundleChart, point: np.ndarray):
        self.chart = chart
        n = chart.base_dim
        self.x = point[:n]
        self.t = point[n:]
        if len(point) == n:
            # basic-form evaluation directly over the base: t = 0 implied
            self.t = np.zeros(chart.algebra.dim)
        elif len(self.t) != chart.algebra.dim:
            raise ValueError("point has wrong total-space dimension")
        self.A = np.asarray(chart.potential(self.x))
        self.F = np.asarray(chart.curvature_field(self.x))
        self.t_is_zero = not np.any(self.t)
        g0 = chart.reference()
        if self.t_is_zero:
            self._m = None
            self._exp_neg = None
            self.g = g0
        else:
            self._m = chart.algebra.from_coords(self.t)
            e = expm(self._m)
            self.g = g0 @ e
            self._exp_neg = e.conj().T
        self.ginv = self.g.conj().T

    def split_base_fiber(self, v: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        n = self.chart.base_dim
        if len(v) == n:
            return v, np.zeros(self.chart.algebra.dim)
        return v[:n], v[n:]

    def maurer_cartan(self, vt: np.ndarray) -> np.ndarray:
        dm = self.chart.algebra.from_coords(vt)
        if self.t_is_zero:
            return dm
        return self._exp_neg @ expm_tangent(self._m, dm)

    def omega(self, v: np.ndarray) -> np.ndarray:
        vx, vt = self.split_base_fiber(v)
        aval = np.einsum("a,aij->ij", vx, self.A)
        return self.ginv @ aval @ self.g + self.maurer_cartan(vt)

    def curv(self, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        vx, _ = self.split_base_fiber(v)
        wx, _ = self.split_base_fiber(w)
        fval = np.einsum("a,b,abij->ij", vx, wx, self.F)
        return self.ginv @ fval @ self.g

    def phi(self, v: np.ndarray) -> np.ndarray:
        w = self.omega(v)
        if self.chart.split is None:
            return w
        return self.chart.split.project_p(w)

    def psi(self, v: np.ndarray) -> np.ndarray:
        w = self.omega(v)
        if self.chart.split is None:
            return np.zeros_like(w)
        return self.chart.split.project_h(w)

    def psi_curv(self, v: np.ndarray, w: np.ndarray) -> np.ndarray:
        if self.chart.split is None:
            m = self.chart.algebra.n
            dt = complex if self.chart.algebra.is_complex else float
            return np.zeros((m, m), dtype=dt)
        pv, pw = self.phi(v), self.phi(w)
        return self.chart.split.project_h(self.curv(v, w) - (pv @ pw - pw @ pv))


# --- pointwise operations -----------------------------------------------------

def connection_on_total_space(chart: BundleChart, point: np.ndarray, tangent: np.ndarray) -> LieAlgebraElement:
    return LieAlgebraElement(chart.algebra, chart.ctx(point).omega(np.asarray(tangent, float)))


def curvature_on_total_space(chart: BundleChart, point: np.ndarray, X: np.ndarray, Y: np.ndarray) -> LieAlgebraElement:
    return LieAlgebraElement(chart.algebra, chart.ctx(point).curv(np.asarray(X, float), np.asarray(Y, float)))


def decompose(chart: BundleChart, point: np.ndarray, tangent: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """(phi value, psi value) at the point; requires a configured split."""
    if chart.split is None:
        raise ValueError("chart has no reductive split configured")
    ctx = chart.ctx(point)
    v = np.asarray(tangent, float)
    return ctx.phi(v), ctx.psi(v)


def psi_curvature(chart: BundleChart, point: np.ndarray, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
    if chart.split is None:
        raise ValueError("chart has no reductive split configured")
    return chart.ctx(point).psi_curv(np.asarray(X, float), np.asarray(Y, float))


def vertical_tangent(chart: BundleChart, point: np.ndarray, value: np.ndarray) -> np.ndarray:
    """Coordinate tangent whose Maurer-Cartan value is the given algebra element."""
    ctx = chart.ctx(point)
    alg = chart.algebra
    target = alg.coords(value)
    if ctx.t_is_zero:
        vt = target
    else:
        cols = []
        for b in alg.basis():
            e = alg.coords(b)
            cols.append(alg.coords(ctx.maurer_cartan(e)))
        vt = np.linalg.solve(np.array(cols).T, target)
    return np.concatenate([np.zeros(chart.base_dim), vt])


def psi_horizontal_part(chart: BundleChart, point: np.ndarray, tangent: np.ndarray) -> np.ndarray:
    """Subtract the vertical part so that psi vanishes on the result."""
    ctx = chart.ctx(point)
    v = np.asarray(tangent, float)
    y = ctx.psi(v)
    return v - vertical_tangent(chart, point, y)


# --- form fields -------------------------------------------------------------

def omega_form(chart: BundleChart) -> FormField:
    return FormField(chart.dim, 1, lambda pt, tg: chart.ctx(pt).omega(tg[0]), algebra=chart.algebra)


def curvature_form(chart: BundleChart) -> FormField:
    return FormField(chart.dim, 2, lambda pt, tg: chart.ctx(pt).curv(tg[0], tg[1]), algebra=chart.algebra)


def phi_form(chart: BundleChart) -> FormField:
    return FormField(chart.dim, 1, lambda pt, tg: chart.ctx(pt).phi(tg[0]), algebra=chart.algebra)


def psi_form(chart: BundleChart) -> FormField:
    return FormField(chart.dim, 1, lambda pt, tg: chart.ctx(pt).psi(tg[0]), algebra=chart.algebra)


def psi_curvature_form(chart: BundleChart) -> FormField:
    return FormField(chart.dim, 2, lambda pt, tg: chart.ctx(pt).psi_curv(tg[0], tg[1]), algebra=chart.algebra)


def char_form(chart: BundleChart, P: InvariantPolynomial, source: str = "omega") -> FormField:
    """The 2k-form P(Omega^k) (source="omega") or P(Psi^k) (source="psi")."""
    k = P.degree

    def ev(pt, tangents):
        ctx = chart.ctx(pt)
        pair = ctx.curv if source == "omega" else ctx.psi_curv

        def f(i, j):
            return pair(tangents[i], tangents[j])

        return eval_on_forms_indexed(P, [(f, 2)] * k, 2 * k)

    return FormField(chart.dim, 2 * k, ev)


def tp_form(chart: BundleChart, P: InvariantPolynomial) -> FormField:
    """Transgression form sum_i A_i P(w, [w,w]^i, Omega^{k-1-i}), degree 2k-1."""
    k = P.degree
    coeff = [float(cs_coefficient(k, i)) for i in range(k)]

    def ev(pt, tangents):
        ctx = chart.ctx(pt)
        wv = [ctx.omega(v) for v in tangents]

        def w1(i):
            return wv[i]

        def ww(i, j):
            return 2 * (wv[i] @ wv[j] - wv[j] @ wv[i])

        def om(i, j):
            return ctx.curv(tangents[i], tangents[j])

        total = 0.0
        for i in range(k):
            args = [(w1, 1)] + [(ww, 2)] * i + [(om, 2)] * (k - 1 - i)
            total += coeff[i] * eval_on_forms_indexed(P, args, 2 * k - 1)
        return total

    return FormField(chart.dim, 2 * k - 1, ev)


def phi_p_form(chart: BundleChart, P: InvariantPolynomial) -> FormField:
    """Extended transgression sum_ij A_ij P(phi, [phi,phi]^i, Psi^j, Omega^...).

    Without a split this coincides with tp_form (phi = w, Psi = 0): the j > 0
    terms drop and A_i0 = A_i.
    """
    k = P.degree
    coeff = {(i, j): float(phi_coefficient(k, i, j)) for i in range(k) for j in range(k - i)}

    def ev(pt, tangents):
        ctx = chart.ctx(pt)
        pv = [ctx.phi(v) for v in tangents]

        def p1(i):
            return pv[i]

        def pp(i, j):
            return 2 * (pv[i] @ pv[j] - pv[j] @ pv[i])

        def ps(i, j):
            return ctx.psi_curv(tangents[i], tangents[j])

        def om(i, j):
            return ctx.curv(tangents[i], tangents[j])

        total = 0.0
        for (i, j), a in coeff.items():
            if chart.split is None and j > 0:
                continue
            args = [(p1, 1)] + [(pp, 2)] * i + [(ps, 2)] * j + [(om, 2)] * (k - 1 - i - j)
            total += a * eval_on_forms_indexed(P, args, 2 * k - 1)
        return total

    return FormField(chart.dim, 2 * k - 1, ev)


def heterotic_residual(
    chart: BundleChart,
    P: InvariantPolynomial,
    point: np.ndarray,
    tangents: Sequence[np.ndarray],
    fd_step: float = 1e-4,
) -> float:
    """|d PhiP - (P(Omega) - P(Psi))| on 2k tangents at one point."""
    k = P.degree
    if len(tangents) != 2 * k:
        raise ValueError(f"need {2 * k} tangents, got {len(tangents)}")
    lhs = exterior_derivative(phi_p_form(chart, P), fd_step)(point, list(tangents))
    rhs = char_form(chart, P, "omega")(point, list(tangents))
    rhs -= char_form(chart, P, "psi")(point, list(tangents))
    return abs(lhs - rhs)


def transgression_residual(
    chart: BundleChart,
    P: InvariantPolynomial,
    point: np.ndarray,
    tangents: Sequence[np.ndarray],
    fd_step: float = 1e-4,
) -> float:
    """|d TP - P(Omega)| on 2k tangents at one point."""
    lhs = exterior_derivative(tp_form(chart, P), fd_step)(point, list(tangents))
    rhs = char_form(chart, P, "omega")(point, list(tangents))
    return abs(lhs - rhs)


def covariant_derivative_residual(
    chart: BundleChart,
    point: np.ndarray,
    tangents: Sequence[np.ndarray],
    fd_step: float = 1e-4,
) -> float:
    """Max-entry residual of d Omega + [psi, Omega] - [Omega, phi] (3 tangents)."""
    if len(tangents) != 3:
        raise ValueError("need 3 tangents")
    om = curvature_form(chart)
    dom = exterior_derivative(om, fd_step)(point, list(tangents))
    ctx = chart.ctx(point)
    X, Y, Z = [np.asarray(v, float) for v in tangents]

    def br_one_two(one_val, pair):
        # [1-form, 2-form] on (X, Y, Z), shuffle convention
        return (
            _comm(one_val(X), pair(Y, Z))
            - _comm(one_val(Y), pair(X, Z))
            + _comm(one_val(Z), pair(X, Y))
        )

    psi_om = br_one_two(ctx.psi, ctx.curv)
    om_phi = -br_one_two(ctx.phi, ctx.curv)  # [Omega, phi] = -[phi, Omega] for p=1, q=2
    resid = dom + psi_om - om_phi
    return float(np.max(np.abs(resid)))


def _comm(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return a @ b - b @ a


def connection_curvature_fd_residual(
    chart: BundleChart,
    point: np.ndarray,
    X: np.ndarray,
    Y: np.ndarray,
    fd_step: float = 1e-4,
) -> float:
    """Cross-check of the analytic Omega against d w + (1/2)[w, w] by FD."""
    w = omega_form(chart)
    dw = exterior_derivative(w, fd_step)(point, [X, Y])
    ctx = chart.ctx(point)
    fd_val = dw + _comm(ctx.omega(np.asarray(X, float)), ctx.omega(np.asarray(Y, float)))
    return float(np.max(np.abs(fd_val - ctx.curv(np.asarray(X, float), np.asarray(Y, float)))))


def potential_curvature_residual(
    chart: BundleChart, x: np.ndarray, ix: int, iy: int, fd_step: float = 1e-4
) -> float:
    """Check F_ab = dA(e_a, e_b) + [A_a, A_b] at a base point by FD."""
    x = np.asarray(x, dtype=float)
    ea = np.zeros(chart.base_dim)
    eb = np.zeros(chart.base_dim)
    ea[ix] = 1.0
    eb[iy] = 1.0

    def acomp(pt, direction):
        return np.einsum("a,aij->ij", direction, np.asarray(chart.potential(pt)))

    da = (acomp(x + fd_step * ea, eb) - acomp(x - fd_step * ea, eb)) / (2 * fd_step)
    da -= (acomp(x + fd_step * eb, ea) - acomp(x - fd_step * eb, ea)) / (2 * fd_step)
    aa = _comm(acomp(x, ea), acomp(x, eb))
    f = np.einsum("a,b,abij->ij", ea, eb, np.asarray(chart.curvature_field(x)))
    return float(np.max(np.abs(da + aa - f)))


# --- fiber integration and sections ------------------------------------------

@dataclass(frozen=True)
class FiberModel:
    """Parametrization of the fiber G/H with a lift into the group.

    ``lift`` maps fiber parameters to a group element whose coset is the fiber
    point; ``lift_alt`` is a second, differently-constructed lift used to test
    that basic forms integrate identically along either.
    """

    name: str
    intervals: tuple[tuple[float, float], ...]
    lift: Callable[[np.ndarray], np.ndarray]
    lift_alt: Callable[[np.ndarray], np.ndarray] | None = None
    orientation: int = 1


def fiber_integral(
    chart: BundleChart,
    form_at: Callable[[BundleChart], FormField],
    base_point: np.ndarray,
    fiber: FiberModel,
    quad_order: int | Sequence[int],
    use_alt_lift: bool = False,
    fd_step: float = 1e-6,
) -> float:
    """Integrate a (dim fiber)-form over the fiber above a base point.

    The form is rebuilt per quadrature node with the chart re-centered at the
    lifted group element, so evaluation always happens at t = 0 where fiber
    coordinates equal algebra coordinates.
    """
    lift = fiber.lift_alt if use_alt_lift else fiber.lift
    if lift is None:
        raise ValueError(f"fiber {fiber.name} has no alternate lift")
    p = len(fiber.intervals)
    base_point = np.asarray(base_point, dtype=float)
    alg = chart.algebra
    orders = [int(quad_order)] * p if np.isscalar(quad_order) else list(quad_order)
    axes = []
    for o, (lo, hi) in zip(orders, fiber.intervals):
        xs, ws = np.polynomial.legendre.leggauss(o)
        axes.append((0.5 * (hi + lo) + 0.5 * (hi - lo) * xs, 0.5 * (hi - lo) * ws))
    total = 0.0
    zero_base = np.zeros(chart.base_dim)
    for idx in np.ndindex(*[len(a[0]) for a in axes]):
        s = np.array([axes[i][0][j] for i, j in enumerate(idx)])
        weight = float(np.prod([axes[i][1][j] for i, j in enumerate(idx)]))
        g = lift(s)
        ch = chart.at(g)
        form = form_at(ch)
        if form.degree != p:
            raise ValueError(f"form degree {form.degree} != fiber dimension {p}")
        pt = ch.point(base_point)
        ginv = g.conj().T
        tangents = []
        for i in range(p):
            e = np.zeros(p)
            e[i] = 1.0
            dl = (lift(s + fd_step * e) - lift(s - fd_step * e)) / (2 * fd_step)
            vt = alg.coords(ginv @ dl)
            tangents.append(np.concatenate([zero_base, vt]))
        total += weight * form(pt, tangents)
    return fiber.orientation * total


@dataclass(frozen=True)
class Zero:
    """Isolated zero/singularity of a section with its integer index."""

    name: str
    index: int


@dataclass(frozen=True)
class Section:
    """Section of the associated bundle in the chart trivialization.

    ``value`` maps a base point to the group element representing the section
    (its H-coset is the actual bundle point).  Zeros record names and indices;
    winding cross-checks live with the bundle catalogs.
    """

    name: str
    value: Callable[[np.ndarray], np.ndarray]
    zeros: tuple[Zero, ...] = ()


def section_pullback_form(
    chart: BundleChart,
    P: InvariantPolynomial,
    section: Section,
    fd_step: float = 1e-6,
) -> FormField:
    """s*(PhiP) as a (2k-1)-form on the base chart."""
    alg = chart.algebra

    def ev(x, tangents):
        g = section.value(x)
        ch = chart.at(g)
        form = phi_p_form(ch, P)
        pt = ch.point(x)
        ginv = g.conj().T
        lifted = []
        for v in tangents:
            dg = (section.value(x + fd_step * v) - section.value(x - fd_step * v)) / (2 * fd_step)
            vt = alg.coords(ginv @ dg)
            lifted.append(np.concatenate([v, vt]))
        return form(pt, lifted)

    return FormField(chart.base_dim, 2 * P.degree - 1, ev)


@dataclass(frozen=True)
class ChainSpec:
    """A chain plus the names of the section zeros its support contains."""

    chain: ParametrizedChain
    zeros_inside: tuple[str, ...] = ()


@dataclass(frozen=True)
class ObstructionReport:
    lhs: float
    index_sum: int
    boundary_term: float
    residual: float
    chain_name: str
    section_name: str


def obstruction_identity_check(
    chart: BundleChart,
    P: InvariantPolynomial,
    chainspec: ChainSpec,
    section: Section,
    quad_order: int | Sequence[int] = 24,
    boundary_quad_order: int = 48,
) -> ObstructionReport:
    """Check integral P(Omega) over the chain = index sum + boundary term.

    Orientations: the chain carries its own parametrization orientation, each
    boundary component the sign induced by it, and indices are plain chart
    windings of the section around its zeros.  With those conventions the
    identity holds with both right-hand terms entering positively.
    """
    zero_names = {z.name for z in section.zeros}
    missing = set(chainspec.zeros_inside) - zero_names
    if missing:
        raise ValueError(f"chain expects zeros {missing} the section does not have")
    lhs = integrate(char_form(chart, P), chainspec.chain, quad_order)
    index_sum = sum(z.index for z in section.zeros if z.name in chainspec.zeros_inside)
    sform = section_pullback_form(chart, P, section)
    boundary_term = 0.0
    for bchain, sign in chainspec.chain.boundary:
        boundary_term += sign * integrate(sform, bchain, boundary_quad_order)
    residual = abs(lhs - index_sum - boundary_term)
    return ObstructionReport(
        lhs=lhs,
        index_sum=index_sum,
        boundary_term=boundary_term,
        residual=residual,
        chain_name=chainspec.chain.name,
        section_name=section.name,
    )
