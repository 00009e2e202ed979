"""Dense complex linear algebra helpers: rank-revealing null spaces,
orthonormal spans, subspace arithmetic, constrained solves.

Everything funnels through numpy SVD; rank cutoff is tol * largest
singular value, matching the subspace conventions used package-wide.
"""

import numpy as np

from .config import tolerance
from .errors import NoSolution


def _as_matrix(a):
    a = np.asarray(a, dtype=complex)
    if a.ndim == 1:
        a = a.reshape(-1, 1)
    return a


def _cutoff(s, tol):
    # relative to the leading singular value, but with an absolute floor:
    # all tables in this package are O(1), so sub-tolerance spectra are noise
    return tolerance(tol) * max(float(s[0]), 1.0)


def rank(a, tol=None):
    a = _as_matrix(a)
    if a.size == 0:
        return 0
    s = np.linalg.svd(a, compute_uv=False)
    if s.size == 0 or s[0] == 0.0:
        return 0
    return int(np.sum(s > _cutoff(s, tol)))


def null_space(a, tol=None):
    """Orthonormal basis (columns) of {x : a x = 0}."""
    a = _as_matrix(a)
    n = a.shape[1]
    if a.size == 0 or not np.any(a):
        return np.eye(n, dtype=complex)
    # full right singular basis is needed; skip the big U on tall systems
    full = a.shape[0] < n
    u, s, vh = np.linalg.svd(a, full_matrices=full)
    r = int(np.sum(s > _cutoff(s, tol))) if s.size else 0
    return vh[r:].conj().T.copy()


def orth(a, tol=None):
    """Orthonormal basis (columns) of the column space of a."""
    a = _as_matrix(a)
    if a.size == 0 or not np.any(a):
        return np.zeros((a.shape[0], 0), dtype=complex)
    u, s, vh = np.linalg.svd(a, full_matrices=False)
    r = int(np.sum(s > _cutoff(s, tol)))
    return u[:, :r].copy()


def solve(a, b, tol=None):
    """Least-squares solve accepted only when the residual is below tol."""
    a = _as_matrix(a)
    b = np.asarray(b, dtype=complex)
    x, *_ = np.linalg.lstsq(a, b, rcond=None)
    resid = np.abs(a @ x - b).max() if b.size else 0.0
    if resid > tolerance(tol):
        raise NoSolution("linear system has no solution", residual=float(resid))
    return x


def try_solve(a, b, tol=None):
    try:
        return solve(a, b, tol=tol)
    except NoSolution:
        return None


def affine_solutions(a, b, tol=None):
    """Particular solution plus orthonormal null-space basis of a x = b."""
    return solve(a, b, tol=tol), null_space(a, tol=tol)


def contains(basis, vecs, tol=None):
    """Do the columns of vecs lie in the span of the basis columns?"""
    basis = _as_matrix(basis)
    vecs = _as_matrix(vecs)
    if vecs.size == 0:
        return True
    # orthonormalize unless the columns already are (cheap Gram test)
    k = basis.shape[1]
    if k and np.abs(basis.conj().T @ basis - np.eye(k)).max() > 1e-12:
        basis = orth(basis, tol=tol)
    resid = vecs - basis @ (basis.conj().T @ vecs)
    scale = max(1.0, float(np.abs(vecs).max()))
    return float(np.abs(resid).max()) <= tolerance(tol) * scale


def span_equal(b1, b2, tol=None):
    return contains(b1, b2, tol=tol) and contains(b2, b1, tol=tol)


def intersect(b1, b2, tol=None):
    """Orthonormal basis of span(b1) & span(b2)."""
    b1, b2 = _as_matrix(b1), _as_matrix(b2)
    if b1.shape[1] == 0 or b2.shape[1] == 0:
        return np.zeros((b1.shape[0], 0), dtype=complex)
    ns = null_space(np.hstack([b1, -b2]), tol=tol)
    return orth(b1 @ ns[: b1.shape[1]], tol=tol)


def span_sum(b1, b2, tol=None):
    return orth(np.hstack([_as_matrix(b1), _as_matrix(b2)]), tol=tol)


def project_onto(basis, vec):
    basis = _as_matrix(basis)
    return basis @ (basis.conj().T @ np.asarray(vec, dtype=complex))


def gram_sqrt(gram, tol=None):
    """Factor a Hermitian positive-definite Gram matrix as C^* C.

    Returns (C, C_inv).  Uses the eigendecomposition so mildly conditioned
    forms are handled gracefully; raises if the form is not positive.
    """
    gram = np.asarray(gram, dtype=complex)
    herm = np.abs(gram - gram.conj().T).max()
    if herm > tolerance(tol) * max(1.0, np.abs(gram).max()):
        raise NoSolution("form is not hermitian", residual=float(herm))
    w, v = np.linalg.eigh((gram + gram.conj().T) / 2.0)
    if w.min() <= 0:
        raise NoSolution("form is not positive definite", residual=float(w.min()))
    c = np.diag(np.sqrt(w)) @ v.conj().T
    c_inv = v @ np.diag(1.0 / np.sqrt(w))
    return c, c_inv


def span_closure(basis, product, tol=None, max_rounds=None):
    """Close a spanning set under a bilinear product until the rank stops
    growing.  `product` maps (vec, vec) -> vec; rounds are capped by the
    ambient dimension."""
    basis = orth(_as_matrix(basis), tol=tol)
    dim = basis.shape[0]
    rounds = max_rounds if max_rounds is not None else dim + 1
    for _ in range(rounds):
        cols = [basis]
        k = basis.shape[1]
        prods = np.empty((dim, k * k), dtype=complex)
        idx = 0
        for i in range(k):
            for j in range(k):
                prods[:, idx] = product(basis[:, i], basis[:, j])
                idx += 1
        cols.append(prods)
        new = orth(np.hstack(cols), tol=tol)
        if new.shape[1] == basis.shape[1]:
            return new
        basis = new
    return basis
