"""Finite-dimensional associative *-algebras over C, presented by structure
constants.

Conventions, fixed once for the whole package:

  * mult[i, j, k]   --  e_i e_j = sum_k mult[i,j,k] e_k
  * unit            --  coordinates of the unit element
  * star[i, k]      --  e_i^* = sum_k star[i,k] e_k, extended antilinearly
  * the positivity calculus runs in the trace form <a,b> = Tr L_{a* b},
    whose positive definiteness is this package's working definition of
    "finite-dimensional C*-algebra".
"""

import numpy as np

from . import _linalg as la
from .config import tolerance
from .errors import (
    AssociativityViolation,
    NotCStar,
    NotPositive,
    NotSelfAdjoint,
    ParentMismatch,
    Singular,
    StarViolation,
    UnitViolation,
)

__all__ = [
    "StarAlgebra",
    "Element",
    "Subspace",
    "make_star_algebra",
    "multiply",
    "left_regular_rep",
    "is_positive",
    "sqrt_positive",
    "invert",
    "commutant",
    "center",
    "solve_linear",
]


class StarAlgebra:
    """A *-algebra given by its multiplication tensor, unit vector and
    star table.  Immutable after construction; derived data is cached."""

    def __init__(self, mult, unit, star, labels=None):
        mult = np.asarray(mult, dtype=complex)
        unit = np.asarray(unit, dtype=complex)
        star = np.asarray(star, dtype=complex)
        n = unit.shape[0]
        if mult.shape != (n, n, n) or star.shape != (n, n):
            raise ValueError("inconsistent table dimensions")
        self.dim = n
        self.mult = mult
        self.unit = unit
        self.star = star
        self.labels = list(labels) if labels is not None else [f"e{i}" for i in range(n)]
        if len(self.labels) != n:
            raise ValueError("label count must match dim")
        self._cache = {}

    def __repr__(self):
        return f"StarAlgebra(dim={self.dim})"

    # -- element constructors -------------------------------------------
    def element(self, coords):
        return Element(self, coords)

    def basis_element(self, i):
        c = np.zeros(self.dim, dtype=complex)
        c[i] = 1.0
        return Element(self, c)

    def basis(self):
        return [self.basis_element(i) for i in range(self.dim)]

    @property
    def one(self):
        return Element(self, self.unit.copy())

    def zero(self):
        return Element(self, np.zeros(self.dim, dtype=complex))

    # -- coordinate arithmetic -------------------------------------------
    def product_coords(self, x, y):
        return np.einsum("i,j,ijk->k", x, y, self.mult)

    def star_coords(self, x):
        return self.star.T @ np.conj(x)

    def left_mult_matrix(self, x):
        """L_x with (xy) = L_x @ y."""
        return np.einsum("i,ijk->kj", x, self.mult)

    def right_mult_matrix(self, x):
        """R_x with (yx) = R_x @ y."""
        return np.einsum("j,ijk->ki", x, self.mult)

    def trace_vector(self):
        """Tr(L_{e_k}) for every k."""
        if "trvec" not in self._cache:
            self._cache["trvec"] = np.einsum("kjj->k", self.mult)
        return self._cache["trvec"]

    def trace_gram(self):
        """Gram matrix of <a,b> = Tr L_{a* b} in the given basis."""
        if "gram" not in self._cache:
            tr = self.trace_vector()
            self._cache["gram"] = np.einsum("ip,pjk,k->ij", self.star, self.mult, tr)
        return self._cache["gram"]

    def gram_factor(self):
        """(C, C_inv) with trace_gram = C^* C; orthonormalizes the basis."""
        if "gramfac" not in self._cache:
            self._cache["gramfac"] = la.gram_sqrt(self.trace_gram())
        return self._cache["gramfac"]

    def full_subspace(self, tol=None):
        return Subspace(self, np.eye(self.dim, dtype=complex), tol=tol)

    def center(self, tol=None):
        if "center" not in self._cache:
            self._cache["center"] = commutant(self.full_subspace(tol), self, tol=tol)
        return self._cache["center"]


class Element:
    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        coords = np.asarray(coords, dtype=complex)
        if coords.shape != (parent.dim,):
            raise ValueError(f"coordinate length {coords.shape} != dim {parent.dim}")
        self.parent = parent
        self.coords = coords

    def _check(self, other):
        if other.parent is not self.parent:
            raise ParentMismatch("elements live in different algebras")

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element(self.parent, self.parent.product_coords(self.coords, other.coords))
        return Element(self.parent, self.coords * complex(other))

    def __rmul__(self, scalar):
        return Element(self.parent, complex(scalar) * self.coords)

    def __add__(self, other):
        self._check(other)
        return Element(self.parent, self.coords + other.coords)

    def __sub__(self, other):
        self._check(other)
        return Element(self.parent, self.coords - other.coords)

    def __neg__(self):
        return Element(self.parent, -self.coords)

    def star(self):
        return Element(self.parent, self.parent.star_coords(self.coords))

    def norm(self):
        return float(np.abs(self.coords).max()) if self.dim else 0.0

    @property
    def dim(self):
        return self.parent.dim

    def close_to(self, other, tol=None):
        self._check(other)
        return float(np.abs(self.coords - other.coords).max()) <= tolerance(tol)

    def is_zero(self, tol=None):
        return self.norm() <= tolerance(tol)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coords):
            if abs(c) > 1e-12:
                terms.append(f"({c:.4g})*{self.parent.labels[i]}")
        return " + ".join(terms) if terms else "0"


class Subspace:
    """A subspace of a StarAlgebra's coordinate space, stored as an
    orthonormal column basis, with certification flags."""

    def __init__(self, parent, basis, tol=None, orthonormalize=True):
        basis = np.asarray(basis, dtype=complex)
        if basis.ndim == 1:
            basis = basis.reshape(-1, 1)
        if basis.shape[0] != parent.dim:
            raise ValueError("basis rows must match parent dim")
        self.parent = parent
        self.basis = la.orth(basis, tol=tol) if orthonormalize else basis
        self.flags = {}

    @property
    def dim(self):
        return self.basis.shape[1]

    def contains_coords(self, vecs, tol=None):
        return la.contains(self.basis, vecs, tol=tol)

    def contains_element(self, x, tol=None):
        return self.contains_coords(x.coords.reshape(-1, 1), tol=tol)

    def contains_subspace(self, other, tol=None):
        return self.contains_coords(other.basis, tol=tol)

    def equals(self, other, tol=None):
        return la.span_equal(self.basis, other.basis, tol=tol)

    def intersect(self, other, tol=None):
        return Subspace(self.parent, la.intersect(self.basis, other.basis, tol=tol),
                        orthonormalize=False)

    def add(self, other, tol=None):
        return Subspace(self.parent, la.span_sum(self.basis, other.basis, tol=tol),
                        orthonormalize=False)

    def project_coords(self, vec):
        return la.project_onto(self.basis, vec)

    def elements(self):
        return [Element(self.parent, self.basis[:, j]) for j in range(self.dim)]

    def certify(self, tol=None):
        """Record whether the span is a unital/star-closed subalgebra."""
        A, B = self.parent, self.basis
        prods = [A.product_coords(B[:, i], B[:, j])
                 for i in range(self.dim) for j in range(self.dim)]
        prods = np.array(prods).T if prods else np.zeros((A.dim, 0))
        self.flags["subalgebra"] = self.contains_coords(prods, tol=tol)
        stars = np.array([A.star_coords(B[:, i]) for i in range(self.dim)]).T \
            if self.dim else np.zeros((A.dim, 0))
        self.flags["star_closed"] = self.contains_coords(stars, tol=tol)
        self.flags["unital"] = self.contains_coords(A.unit.reshape(-1, 1), tol=tol)
        return self.flags

    def __repr__(self):
        return f"Subspace(dim={self.dim} of {self.parent.dim})"


# ---------------------------------------------------------------------------
# construction and verification


def make_star_algebra(mult, unit, star, labels=None, tol=None, check_cstar=True):
    """Build a StarAlgebra and verify all its defining invariants.

    Raises AssociativityViolation / UnitViolation / StarViolation / NotCStar
    naming the failing basis triple and the residual norm.  The C*-surrogate
    check (positive definiteness of the trace form) can be deferred with
    check_cstar=False.
    """
    A = StarAlgebra(mult, unit, star, labels=labels)
    tol = tolerance(tol)
    n = A.dim

    lhs = np.einsum("ijp,pkq->ijkq", A.mult, A.mult)
    rhs = np.einsum("jkp,ipq->ijkq", A.mult, A.mult)
    gap = np.abs(lhs - rhs)
    if gap.max() > tol:
        i, j, k, _ = np.unravel_index(int(gap.argmax()), gap.shape)
        raise AssociativityViolation(
            "associativity fails",
            where=(A.labels[i], A.labels[j], A.labels[k]),
            residual=float(gap.max()),
        )

    lu = np.einsum("i,ijk->jk", A.unit, A.mult) - np.eye(n)
    ru = np.einsum("j,ijk->ik", A.unit, A.mult) - np.eye(n)
    gap = max(np.abs(lu).max(), np.abs(ru).max())
    if gap > tol:
        bad = int(np.abs(lu).max(axis=1).argmax() if np.abs(lu).max() >= np.abs(ru).max()
                  else np.abs(ru).max(axis=1).argmax())
        raise UnitViolation("unit law fails", where=A.labels[bad], residual=float(gap))

    # involutive: e_i** = e_i
    inv = np.conj(A.star) @ A.star - np.eye(n)
    if np.abs(inv).max() > tol:
        bad = int(np.abs(inv).max(axis=1).argmax())
        raise StarViolation("star is not involutive", where=A.labels[bad],
                            residual=float(np.abs(inv).max()))
    # antimultiplicative: (e_i e_j)* = e_j* e_i*
    lhs = np.einsum("ijk,kl->ijl", np.conj(A.mult), A.star)
    rhs = np.einsum("jp,iq,pql->ijl", A.star, A.star, A.mult)
    gap = np.abs(lhs - rhs)
    if gap.max() > tol:
        i, j, _ = np.unravel_index(int(gap.argmax()), gap.shape)
        raise StarViolation("star is not antimultiplicative",
                            where=(A.labels[i], A.labels[j]),
                            residual=float(gap.max()))

    if check_cstar:
        g = A.trace_gram()
        herm = np.abs(g - g.conj().T).max()
        if herm > tol:
            raise NotCStar("trace form is not hermitian", residual=float(herm))
        evals = np.linalg.eigvalsh((g + g.conj().T) / 2)
        if evals.min() <= tol:
            raise NotCStar("trace form is not positive definite",
                           residual=float(evals.min()))
    return A


def multiply(a, b):
    return a * b


def left_regular_rep(A):
    """Element -> matrix of left multiplication; L_a L_b = L_{ab}."""
    def rep(x):
        return A.left_mult_matrix(x.coords if isinstance(x, Element) else x)
    return rep


def _hermitian_part(A, x, tol=None):
    """L_x conjugated into the orthonormal basis of the trace form."""
    c, c_inv = A.gram_factor()
    h = c @ A.left_mult_matrix(x) @ c_inv
    return (h + h.conj().T) / 2.0, float(np.abs(h - h.conj().T).max())


def is_positive(a, tol=None):
    """Positivity in the trace-form inner product; requires a = a*."""
    tol = tolerance(tol)
    A = a.parent
    sa = np.abs(a.star().coords - a.coords).max()
    if sa > tol * max(1.0, a.norm()):
        raise NotSelfAdjoint("element is not self-adjoint", residual=float(sa))
    h, skew = _hermitian_part(A, a.coords)
    return bool(np.linalg.eigvalsh(h).min() > -tol * max(1.0, a.norm()))


def sqrt_positive(a, tol=None):
    """Positive square root via spectral calculus in the regular
    representation; eigenvalues in (-tol, 0] are clamped to 0."""
    tol = tolerance(tol)
    if not is_positive(a, tol=tol):
        raise NotPositive("element is not positive")
    A = a.parent
    c, c_inv = A.gram_factor()
    h, _ = _hermitian_part(A, a.coords)
    w, v = np.linalg.eigh(h)
    w = np.where(w < 0.0, 0.0, w)
    op = c_inv @ (v * np.sqrt(w)) @ v.conj().T @ c
    r = Element(A, op @ A.unit)
    resid = (r * r - a).norm()
    if resid > 100 * tol * max(1.0, a.norm()):
        raise NotPositive("square root verification failed", residual=resid)
    return r


def positive_power(a, exponent, tol=None):
    """a^t for positive invertible a and arbitrary complex t (spectral)."""
    tol = tolerance(tol)
    if not is_positive(a, tol=tol):
        raise NotPositive("element is not positive")
    A = a.parent
    c, c_inv = A.gram_factor()
    h, _ = _hermitian_part(A, a.coords)
    w, v = np.linalg.eigh(h)
    if w.min() <= tol:
        raise Singular("element is not invertible, cannot take complex powers")
    pw = np.exp(np.asarray(exponent, dtype=complex) * np.log(w))
    op = c_inv @ (v * pw) @ v.conj().T @ c
    return Element(A, op @ A.unit)


def invert(a, tol=None):
    tol = tolerance(tol)
    A = a.parent
    L = A.left_mult_matrix(a.coords)
    s = np.linalg.svd(L, compute_uv=False)
    if s.size == 0 or s[-1] <= tol * max(1.0, s[0]):
        raise Singular("element is not invertible",
                       residual=float(s[-1] if s.size else 0.0))
    x = Element(A, np.linalg.solve(L, A.unit))
    if (x * a - A.one).norm() > 1e4 * tol:
        raise Singular("inverse verification failed", residual=(x * a - A.one).norm())
    return x


def is_invertible(a, tol=None):
    L = a.parent.left_mult_matrix(a.coords)
    s = np.linalg.svd(L, compute_uv=False)
    return bool(s.size and s[-1] > tolerance(tol) * max(1.0, s[0]))


def commutant(S, A, tol=None):
    """Relative commutant {x in A : xs = sx for all s in span S}.

    S may be a Subspace of A or a raw basis matrix.  The result is certified
    (unital, and star-closed whenever S is star-closed).
    """
    basis = S.basis if isinstance(S, Subspace) else np.asarray(S, dtype=complex)
    if basis.ndim == 1:
        basis = basis.reshape(-1, 1)
    rows = []
    for j in range(basis.shape[1]):
        s = basis[:, j]
        rows.append(A.left_mult_matrix(s) - A.right_mult_matrix(s))
    stacked = np.vstack(rows) if rows else np.zeros((0, A.dim))
    out = Subspace(A, la.null_space(stacked, tol=tol), orthonormalize=False)
    out.certify(tol=tol)
    return out


def center(A, tol=None):
    return A.center(tol=tol)


def solve_linear(constraints, rhs=None, tol=None):
    """Single rank-revealing solver behind integrals, fixed points,
    implementers and quasi-bases.

    constraints: matrix (or list of row blocks) acting on a coordinate
    space.  With rhs=None returns the orthonormal null-space basis;
    otherwise returns (particular solution, null-space basis), raising
    NoSolution when the residual exceeds the tolerance.
    """
    if isinstance(constraints, (list, tuple)):
        constraints = np.vstack([np.atleast_2d(np.asarray(c, dtype=complex))
                                 for c in constraints])
    if rhs is None:
        return la.null_space(constraints, tol=tol)
    if isinstance(rhs, (list, tuple)):
        rhs = np.concatenate([np.atleast_1d(np.asarray(r, dtype=complex)) for r in rhs])
    return la.affine_solutions(constraints, rhs, tol=tol)


def subalgebra_on_basis(A, basis, tol=None, labels=None):
    """Present the span of `basis` (assumed a unital *-subalgebra of A) as a
    StarAlgebra of its own; returns (algebra, inclusion matrix)."""
    B = la.orth(np.asarray(basis, dtype=complex), tol=tol)
    k = B.shape[1]
    pinv = B.conj().T  # orthonormal columns
    mult = np.empty((k, k, k), dtype=complex)
    for i in range(k):
        for j in range(k):
            p = A.product_coords(B[:, i], B[:, j])
            if not la.contains(B, p.reshape(-1, 1), tol=tol):
                raise AssociativityViolation("span is not closed under products",
                                             where=(i, j))
            mult[i, j] = pinv @ p
    unit = pinv @ A.unit
    if not la.contains(B, A.unit.reshape(-1, 1), tol=tol):
        raise UnitViolation("span does not contain the unit")
    star = np.empty((k, k), dtype=complex)
    for i in range(k):
        s = A.star_coords(B[:, i])
        if not la.contains(B, s.reshape(-1, 1), tol=tol):
            raise StarViolation("span is not star-closed", where=i)
        star[i] = pinv @ s
    sub = make_star_algebra(mult, unit, star, labels=labels, tol=tol)
    return sub, B
