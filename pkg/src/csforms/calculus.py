"""Point-evaluated differential forms on chart domains.

Forms are evaluation callbacks, not symbolic expressions: a FormField of
degree p on a d-dimensional chart is a function (point, p tangent vectors) ->
value, where the value is a scalar or a Lie-algebra matrix.  The exterior
derivative is taken by central finite differences of coefficient functions
along constant extensions of the given tangents; curvature and the other
ingredients of the bundle identities are supplied analytically elsewhere, so
finite differencing is confined to the verification side of each identity.

Integration is Gauss-Legendre product quadrature over interval-box parameter
domains (spheres are parametrized by angle boxes with measure-zero seams).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from itertools import permutations
from math import factorial
from typing import Callable, Sequence

import numpy as np

from .liealg import MatrixLieAlgebra

__all__ = [
    "FormField",
    "ParametrizedChain",
    "wedge",
    "bracket_wedge",
    "exterior_derivative",
    "pullback",
    "integrate",
    "ChartMap",
]

DEFAULT_FD_STEP = 1e-4


@dataclass(frozen=True)
class FormField:
    """Alternating p-form on a d-dimensional chart, scalar or Lie-valued."""

    dim: int
    degree: int
    evaluator: Callable[[np.ndarray, Sequence[np.ndarray]], object]
    algebra: MatrixLieAlgebra | None = None  # None means scalar-valued

    def __call__(self, point: np.ndarray, tangents: Sequence[np.ndarray]):
        point = np.asarray(point, dtype=float)
        if len(tangents) != self.degree:
            raise ValueError(f"degree-{self.degree} form got {len(tangents)} tangents")
        return self.evaluator(point, [np.asarray(t, dtype=float) for t in tangents])

    @property
    def is_scalar(self) -> bool:
        return self.algebra is None


def _parity(perm: Sequence[int]) -> int:
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv & 1 else 1


def wedge(a: FormField, b: FormField) -> FormField:
    """Exterior product of scalar forms, determinant convention.

    (a ^ b)(X_1..X_{p+q}) = (1/(p! q!)) sum_s sgn(s) a(X_s..) b(X_s..).
    """
    if a.dim != b.dim:
        raise ValueError("wedge needs forms on the same chart dimension")
    if not (a.is_scalar and b.is_scalar):
        raise ValueError("wedge is for scalar forms; use bracket_wedge for Lie-valued ones")
    p, q = a.degree, b.degree
    w = 1.0 / (factorial(p) * factorial(q))

    def ev(pt, tangents):
        total = 0.0
        for perm in permutations(range(p + q)):
            sgn = _parity(perm)
            total += sgn * a(pt, [tangents[i] for i in perm[:p]]) * b(
                pt, [tangents[i] for i in perm[p:]]
            )
        return w * total

    return FormField(a.dim, p + q, ev)


def bracket_wedge(a: FormField, b: FormField) -> FormField:
    """Graded bracket [a, b] of Lie-algebra-valued forms (same convention).

    Satisfies [a, b] = -(-1)^{pq} [b, a]; for 1-forms [w, w](X, Y) =
    2 [w(X), w(Y)].
    """
    if a.dim != b.dim:
        raise ValueError("bracket_wedge needs forms on the same chart dimension")
    if a.is_scalar or b.is_scalar or a.algebra != b.algebra:
        raise ValueError("bracket_wedge needs Lie-valued forms with one algebra tag")
    p, q = a.degree, b.degree
    w = 1.0 / (factorial(p) * factorial(q))

    def ev(pt, tangents):
        total = None
        for perm in permutations(range(p + q)):
            sgn = _parity(perm)
            x = a(pt, [tangents[i] for i in perm[:p]])
            y = b(pt, [tangents[i] for i in perm[p:]])
            term = sgn * (x @ y - y @ x)
            total = term if total is None else total + term
        return w * total

    return FormField(a.dim, p + q, ev, algebra=a.algebra)


def exterior_derivative(
    form: FormField, fd_step: float = DEFAULT_FD_STEP, richardson: bool = False
) -> FormField:
    """d(form) via central differences along constant tangent extensions.

    d a (X_0..X_p) = sum_i (-1)^i D_{X_i} [x -> a_x(X_0..^X_i..X_p)].
    With richardson=True two step sizes (h, h/2) are combined, trading two
    extra evaluations per direction for two more orders of accuracy.
    """
    p = form.degree

    def ev(pt, tangents):
        total = None
        for i, xi in enumerate(tangents):
            rest = tangents[:i] + tangents[i + 1 :]

            def f(s: float, xi=xi, rest=rest):
                return form(pt + s * xi, rest)

            d = _central(f, fd_step, richardson)
            term = (-1) ** i * d
            total = term if total is None else total + term
        return total

    return FormField(form.dim, p + 1, ev, algebra=form.algebra)


def _central(f: Callable[[float], object], h: float, richardson: bool):
    d1 = (f(h) - f(-h)) / (2 * h)
    if not richardson:
        return d1
    d2 = (f(h / 2) - f(-h / 2)) / h
    return (4 * d2 - d1) / 3


@dataclass(frozen=True)
class ChartMap:
    """Smooth map between chart domains with an optional analytic tangent map."""

    source_dim: int
    target_dim: int
    func: Callable[[np.ndarray], np.ndarray]
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None  # (target_dim, source_dim)
    fd_step: float = 1e-6

    def __call__(self, x: np.ndarray) -> np.ndarray:
        return np.asarray(self.func(np.asarray(x, dtype=float)), dtype=float)

    def tangent(self, x: np.ndarray, v: np.ndarray) -> np.ndarray:
        if self.jacobian is not None:
            return np.asarray(self.jacobian(x)) @ v
        h = self.fd_step
        return (self(x + h * v) - self(x - h * v)) / (2 * h)


def pullback(form: FormField, f: ChartMap) -> FormField:
    """(f* a)(x; X..) = a(f(x); df X..)."""
    if f.target_dim != form.dim:
        raise ValueError(
            f"map lands in dimension {f.target_dim}, form lives in {form.dim}"
        )

    def ev(pt, tangents):
        return form(f(pt), [f.tangent(pt, v) for v in tangents])

    return FormField(f.source_dim, form.degree, ev, algebra=form.algebra)


@dataclass(frozen=True)
class ParametrizedChain:
    """Oriented chain given by one smooth parametrization over an interval box."""

    name: str
    intervals: tuple[tuple[float, float], ...]
    mapping: Callable[[np.ndarray], np.ndarray]
    chart_dim: int
    jacobian: Callable[[np.ndarray], np.ndarray] | None = None  # (chart_dim, p)
    orientation: int = 1
    # boundary pieces as (chain, sign) with the sign induced by this chain
    boundary: tuple[tuple["ParametrizedChain", int], ...] = ()

    @property
    def param_dim(self) -> int:
        return len(self.intervals)

    def point(self, params: np.ndarray) -> np.ndarray:
        return np.asarray(self.mapping(np.asarray(params, dtype=float)), dtype=float)

    def tangent_frame(self, params: np.ndarray, fd_step: float = 1e-6) -> list[np.ndarray]:
        if self.jacobian is not None:
            jac = np.asarray(self.jacobian(np.asarray(params, dtype=float)))
            return [jac[:, i] for i in range(self.param_dim)]
        out = []
        for i in range(self.param_dim):
            e = np.zeros(self.param_dim)
            e[i] = 1.0
            out.append((self.point(params + fd_step * e) - self.point(params - fd_step * e)) / (2 * fd_step))
        return out

    def reversed(self) -> "ParametrizedChain":
        return replace(self, orientation=-self.orientation, name=self.name + ":rev")


def _gauss_nodes(order: int, lo: float, hi: float) -> tuple[np.ndarray, np.ndarray]:
    x, w = np.polynomial.legendre.leggauss(order)
    mid, half = 0.5 * (hi + lo), 0.5 * (hi - lo)
    return mid + half * x, half * w


def integrate(form: FormField, chain: ParametrizedChain, quad_order: int | Sequence[int]) -> float:
    """Gauss-Legendre product quadrature of the pulled-back density."""
    if chain.param_dim != form.degree:
        raise ValueError(
            f"chain parameter dimension {chain.param_dim} != form degree {form.degree}"
        )
    orders = (
        [int(quad_order)] * chain.param_dim
        if np.isscalar(quad_order)
        else list(quad_order)
    )
    if len(orders) != chain.param_dim:
        raise ValueError("need one quadrature order per parameter axis")
    axes = [_gauss_nodes(o, lo, hi) for o, (lo, hi) in zip(orders, chain.intervals)]
    total = 0.0
    for idx in np.ndindex(*[len(a[0]) for a in axes]):
        params = np.array([axes[i][0][j] for i, j in enumerate(idx)])
        weight = float(np.prod([axes[i][1][j] for i, j in enumerate(idx)]))
        tangents = chain.tangent_frame(params)
        total += weight * form(chain.point(params), tangents)
    return chain.orientation * total
