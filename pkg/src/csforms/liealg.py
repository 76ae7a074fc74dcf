"""Matrix Lie algebras so(n), u(n), su(n) and reductive splits g = h + p.

Elements are plain square numpy matrices tagged with their algebra.  The
inner product used everywhere is <X, Y> = -Re tr(XY), which is positive
definite on compact-type matrix algebras and makes the shipped splits
orthogonal.  A ReductiveSplit carries projection callables acting on raw
matrices; [h, p] subset p holds for every split built here because p is the
orthogonal complement of a subalgebra under an invariant form.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
import numpy as np
from scipy.linalg import expm

__all__ = [
    "MatrixLieAlgebra",
    "LieAlgebraElement",
    "ReductiveSplit",
    "QuaternionicStructures",
    "so",
    "u",
    "su",
    "algebra_from_tag",
    "bracket",
    "standard_split",
    "so4_ideal_split",
    "quaternionic_frame_structures",
    "inner",
    "random_element",
    "random_group_element",
]

_TOL = 1e-12


def _e(n: int, a: int, b: int, dtype=float) -> np.ndarray:
    m = np.zeros((n, n), dtype=dtype)
    m[a, b] = 1.0
    return m


def skew_pair(n: int, a: int, b: int) -> np.ndarray:
    """E_ab - E_ba, the standard so(n) basis element (0-indexed)."""
    return _e(n, a, b) - _e(n, b, a)


@dataclass(frozen=True)
class MatrixLieAlgebra:
    """Tag plus real basis of a compact matrix Lie algebra."""

    name: str  # "so" | "u" | "su"
    n: int

    @property
    def tag(self) -> str:
        return f"{self.name}({self.n})"

    @property
    def is_complex(self) -> bool:
        return self.name in ("u", "su")

    @property
    def dim(self) -> int:
        return len(self.basis())

    @lru_cache(maxsize=None)
    def basis(self) -> tuple[np.ndarray, ...]:
        n = self.n
        out: list[np.ndarray] = []
        if self.name == "so":
            for a in range(n):
                for b in range(a + 1, n):
                    out.append(skew_pair(n, a, b))
        elif self.name == "u":
            for a in range(n):
                out.append(1j * _e(n, a, a, complex))
            for a in range(n):
                for b in range(a + 1, n):
                    out.append(_e(n, a, b, complex) - _e(n, b, a, complex))
                    out.append(1j * (_e(n, a, b, complex) + _e(n, b, a, complex)))
        elif self.name == "su":
            for a in range(n - 1):
                out.append(1j * (_e(n, a, a, complex) - _e(n, n - 1, n - 1, complex)))
            for a in range(n):
                for b in range(a + 1, n):
                    out.append(_e(n, a, b, complex) - _e(n, b, a, complex))
                    out.append(1j * (_e(n, a, b, complex) + _e(n, b, a, complex)))
        else:
            raise ValueError(f"unknown algebra family {self.name!r}")
        return tuple(out)

    @lru_cache(maxsize=None)
    def _gram_inv(self) -> np.ndarray:
        B = self.basis()
        G = np.array([[inner_raw(x, y) for y in B] for x in B])
        return np.linalg.inv(G)

    def coords(self, m: np.ndarray) -> np.ndarray:
        """Real coefficients of m in the stored basis (least-squares exact
        for members of the algebra)."""
        B = self.basis()
        rhs = np.array([inner_raw(m, b) for b in B])
        return self._gram_inv() @ rhs

    def from_coords(self, c: np.ndarray) -> np.ndarray:
        B = self.basis()
        m = np.zeros_like(B[0])
        for ci, bi in zip(c, B):
            m = m + ci * bi
        return m

    def contains(self, m: np.ndarray, tol: float = 1e-10) -> bool:
        if m.shape != (self.n, self.n):
            return False
        if self.name == "so":
            return bool(np.max(np.abs(m + m.T)) < tol) and not np.iscomplexobj(m)
        herm = np.max(np.abs(m + m.conj().T))
        if self.name == "u":
            return bool(herm < tol)
        return bool(herm < tol and abs(np.trace(m)) < tol)

    def identity(self) -> np.ndarray:
        dt = complex if self.is_complex else float
        return np.eye(self.n, dtype=dt)


def so(n: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra("so", n)


def u(n: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra("u", n)


def su(n: int) -> MatrixLieAlgebra:
    return MatrixLieAlgebra("su", n)


def algebra_from_tag(tag: str) -> MatrixLieAlgebra:
    """Parse tags like "so4", "so(4)", "u2", "su2"."""
    s = tag.lower().replace("(", "").replace(")", "").strip()
    for name in ("so", "su", "u"):
        if s.startswith(name):
            return MatrixLieAlgebra(name, int(s[len(name):]))
    raise ValueError(f"cannot parse algebra tag {tag!r}")


def inner_raw(x: np.ndarray, y: np.ndarray) -> float:
    """<X, Y> = -Re tr(XY)."""
    return float(-np.real(np.trace(x @ y)))


@dataclass(frozen=True)
class LieAlgebraElement:
    algebra: MatrixLieAlgebra
    matrix: np.ndarray

    def __post_init__(self) -> None:
        if not self.algebra.contains(self.matrix):
            raise ValueError(f"matrix is not in {self.algebra.tag} within tolerance")

    def __add__(self, other: "LieAlgebraElement") -> "LieAlgebraElement":
        _same(self, other)
        return LieAlgebraElement(self.algebra, self.matrix + other.matrix)

    def __rmul__(self, c: float) -> "LieAlgebraElement":
        return LieAlgebraElement(self.algebra, c * self.matrix)


def _same(x: LieAlgebraElement, y: LieAlgebraElement) -> None:
    if x.algebra != y.algebra:
        raise ValueError(f"algebra mismatch: {x.algebra.tag} vs {y.algebra.tag}")


def bracket(x: LieAlgebraElement, y: LieAlgebraElement) -> LieAlgebraElement:
    """Matrix commutator XY - YX; stays in the common algebra."""
    _same(x, y)
    return LieAlgebraElement(x.algebra, x.matrix @ y.matrix - y.matrix @ x.matrix)


def inner(x: LieAlgebraElement, y: LieAlgebraElement) -> float:
    _same(x, y)
    return inner_raw(x.matrix, y.matrix)


def _orthonormalize(vecs: list[np.ndarray]) -> list[np.ndarray]:
    out: list[np.ndarray] = []
    for v in vecs:
        w = v.astype(complex if np.iscomplexobj(v) else float).copy()
        for q in out:
            w = w - inner_raw(w, q) * q
        nrm = np.sqrt(inner_raw(w, w))
        if nrm > 1e-12:
            out.append(w / nrm)
    return out


@dataclass(frozen=True)
class ReductiveSplit:
    """Orthogonal decomposition g = h + p with h a subalgebra.

    project_h / project_p act on raw matrices.  Orthogonality under the
    invariant form gives [h, p] subset p automatically; [p, p] subset h only
    in the symmetric cases (e.g. so(n)/so(n-1)).
    """

    algebra: MatrixLieAlgebra
    h_basis: tuple[np.ndarray, ...]
    p_basis: tuple[np.ndarray, ...]
    label: str = ""

    def _proj(self, m: np.ndarray, basis: tuple[np.ndarray, ...]) -> np.ndarray:
        out = np.zeros_like(m, dtype=basis[0].dtype) if basis else np.zeros_like(m)
        for b in basis:
            out = out + inner_raw(m, b) * b
        return out

    def project_h(self, m: np.ndarray) -> np.ndarray:
        if not self.h_basis:
            return np.zeros_like(m)
        return self._proj(m, self.h_basis)

    def project_p(self, m: np.ndarray) -> np.ndarray:
        return self._proj(m, self.p_basis)

    @property
    def dim_h(self) -> int:
        return len(self.h_basis)

    @property
    def dim_p(self) -> int:
        return len(self.p_basis)


def _split_from_h(algebra: MatrixLieAlgebra, h_raw: list[np.ndarray], label: str) -> ReductiveSplit:
    h = _orthonormalize(h_raw)
    p: list[np.ndarray] = []
    for b in algebra.basis():
        w = b.copy()
        for q in h + p:
            w = w - inner_raw(w, q) * q
        if np.sqrt(inner_raw(w, w)) > 1e-9:
            p.append(w / np.sqrt(inner_raw(w, w)))
    return ReductiveSplit(algebra, tuple(h), tuple(p), label)


def standard_split(gtag: str, htag: str) -> ReductiveSplit:
    """Reductive splits for the shipped naturally-associated families.

    Supported pairs (case-insensitive):
      (SO(n), SO(n-1))   stabilizer of e1, sphere-bundle case
      (U(n),  U(n-1))    stabilizer block, odd-sphere-bundle case
      (U(n),  SU(n))     determinant-bundle case, p = the center i*I
      (U(n),  U(j))      Stiefel case, h = 0_{n-j} + u(j) in the lower block
    """
    g = algebra_from_tag(gtag)
    hs = htag.lower().replace("(", "").replace(")", "").strip()
    if g.name == "so":
        if not hs.startswith("so") or int(hs[2:]) != g.n - 1:
            raise ValueError(f"unsupported split ({gtag}, {htag})")
        n = g.n
        h_raw = [skew_pair(n, a, b) for a in range(1, n) for b in range(a + 1, n)]
        return _split_from_h(g, h_raw, f"so({n})/so({n - 1})")
    if g.name == "u":
        n = g.n
        if hs == f"su{n}":
            h_raw = [b for b in su(n).basis()]
            # promote su(n) matrices into the u(n) container (same shape)
            return _split_from_h(g, h_raw, f"u({n})/su({n})")
        if hs.startswith("u"):
            j = int(hs[1:])
            if not 0 <= j <= n:  # j = n is the degenerate h = g case
                raise ValueError(f"unsupported split ({gtag}, {htag})")
            off = n - j
            h_raw = []
            for a in range(off, n):
                h_raw.append(1j * _e(n, a, a, complex))
            for a in range(off, n):
                for b in range(a + 1, n):
                    h_raw.append(_e(n, a, b, complex) - _e(n, b, a, complex))
                    h_raw.append(1j * (_e(n, a, b, complex) + _e(n, b, a, complex)))
            return _split_from_h(g, h_raw, f"u({n})/u({j})")
    raise ValueError(f"unsupported split ({gtag}, {htag})")


# --- the so(4) ideal decomposition -----------------------------------------

def _self_dual_basis() -> list[np.ndarray]:
    # second element negated so the triple is bracket-cyclic with +1 structure
    # constants after orthonormalization, matching the anti-self-dual triple
    return [
        skew_pair(4, 0, 1) + skew_pair(4, 2, 3),
        skew_pair(4, 1, 3) - skew_pair(4, 0, 2),
        skew_pair(4, 0, 3) + skew_pair(4, 1, 2),
    ]


def _anti_self_dual_basis() -> list[np.ndarray]:
    return [
        skew_pair(4, 0, 1) - skew_pair(4, 2, 3),
        skew_pair(4, 0, 2) + skew_pair(4, 1, 3),
        skew_pair(4, 0, 3) - skew_pair(4, 1, 2),
    ]


def so4_ideal_split() -> tuple[ReductiveSplit, ReductiveSplit]:
    """The two su(2) ideals of so(4) as complementary reductive splits.

    Returns (split1, split2) with h1 = p2 = anti-self-dual ideal and
    p1 = h2 = self-dual ideal.  h1 is the Lie algebra of the subgroup fixing
    the left-multiplication complex structure I (see
    quaternionic_frame_structures); the labeling test in the suite verifies
    that identification rather than assuming it.
    """
    g = so(4)
    asd = _orthonormalize(_anti_self_dual_basis())
    sd = _orthonormalize(_self_dual_basis())
    s1 = ReductiveSplit(g, tuple(asd), tuple(sd), "so(4): h1 = anti-self-dual")
    s2 = ReductiveSplit(g, tuple(sd), tuple(asd), "so(4): h2 = self-dual")
    return s1, s2


@dataclass(frozen=True)
class QuaternionicStructures:
    """The orthogonal structure tensors attached to an oriented 4-frame.

    I and K are the skew complex structures defined on the frame (f1..f4) by
    I f1 = f2, I f3 = f4 and K f1 = f3, K f2 = f4; J is the composite K I.
    With these defining tables I and K commute, so J = K I = I K is a
    symmetric involution (J^2 = +1), not a third complex structure; I and K
    generate the two complementary su(2) ideals, which is what the associated
    bundles B1, B2 are built from.
    """

    I: np.ndarray
    K: np.ndarray

    @property
    def J(self) -> np.ndarray:
        return self.K @ self.I


def quaternionic_frame_structures(frame: np.ndarray) -> QuaternionicStructures:
    """Build I, K for an oriented orthonormal frame given as matrix columns."""
    f = np.asarray(frame, dtype=float)
    if f.shape != (4, 4):
        raise ValueError("frame must be 4 columns in R^4")
    if np.max(np.abs(f.T @ f - np.eye(4))) > 1e-10:
        raise ValueError("frame is not orthonormal")
    if np.linalg.det(f) < 0:
        raise ValueError("frame is not positively oriented")
    i0 = np.zeros((4, 4))
    k0 = np.zeros((4, 4))
    # columns are images of the standard basis
    i0[:, 0], i0[:, 1], i0[:, 2], i0[:, 3] = [0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]
    k0[:, 0], k0[:, 1], k0[:, 2], k0[:, 3] = [0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]
    return QuaternionicStructures(I=f @ i0 @ f.T, K=f @ k0 @ f.T)


# --- quaternion helpers (R^4 identified with H via e1..e4 = 1,i,j,k) --------

def quat_mul(p: np.ndarray, q: np.ndarray) -> np.ndarray:
    a1, b1, c1, d1 = p
    a2, b2, c2, d2 = q
    return np.array(
        [
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        ]
    )


def quat_conj(q: np.ndarray) -> np.ndarray:
    return np.array([q[0], -q[1], -q[2], -q[3]])


def left_mult_matrix(q: np.ndarray) -> np.ndarray:
    return np.column_stack([quat_mul(q, e) for e in np.eye(4)])


def rot4(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Matrix of x -> a x conj(b) for unit quaternions a, b (an SO(4) element)."""
    return np.column_stack([quat_mul(quat_mul(a, e), quat_conj(b)) for e in np.eye(4)])


def _quat_from_rot3(R: np.ndarray) -> np.ndarray:
    """Unit quaternion (up to sign) for a 3x3 rotation, Shepperd's method."""
    t = np.trace(R)
    q = np.empty(4)
    if t > 0:
        s = np.sqrt(t + 1.0) * 2
        q[0] = 0.25 * s
        q[1] = (R[2, 1] - R[1, 2]) / s
        q[2] = (R[0, 2] - R[2, 0]) / s
        q[3] = (R[1, 0] - R[0, 1]) / s
    else:
        i = int(np.argmax(np.diag(R)))
        j, k = (i + 1) % 3, (i + 2) % 3
        s = np.sqrt(R[i, i] - R[j, j] - R[k, k] + 1.0) * 2
        q[1 + i] = 0.25 * s
        q[0] = (R[k, j] - R[j, k]) / s
        q[1 + j] = (R[j, i] + R[i, j]) / s
        q[1 + k] = (R[k, i] + R[i, k]) / s
    return q / np.linalg.norm(q)


def so4_to_quaternion_pair(R: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split R in SO(4) as x -> a x conj(b); the pair is defined up to (-a,-b)."""
    q0 = R[:, 0]  # image of 1
    S = left_mult_matrix(quat_conj(q0)) @ R  # fixes 1, rotates span(i,j,k)
    b = _quat_from_rot3(S[1:, 1:])
    a = quat_mul(q0, b)
    if np.max(np.abs(rot4(a, b) - R)) > 1e-8:
        raise ValueError("matrix is not in SO(4) within tolerance")
    return a, b


# --- misc -------------------------------------------------------------------

def random_element(algebra: MatrixLieAlgebra, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    c = rng.standard_normal(algebra.dim) * scale
    return algebra.from_coords(c)


def random_group_element(algebra: MatrixLieAlgebra, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return expm(random_element(algebra, rng, scale))
