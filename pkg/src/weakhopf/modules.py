"""Module algebras over a weak Hopf algebra: action verification, fixed
points, conditional expectations from left integrals, Watatani indices via
quasi-bases, implementers/outerness, GNS and modular data, Galois tests.
"""

import numpy as np

from . import _linalg as la
from .algebra import Element, Subspace
from .config import tolerance
from .errors import (
    ActionAxiomViolation,
    NoSolution,
    NotFaithful,
    NotIndexFinite,
    ParentMismatch,
)

__all__ = [
    "ModuleAlgebra",
    "make_module_algebra",
    "to_coaction",
    "fixed_points",
    "fixed_point_condition_spaces",
    "image_data",
    "ConditionalExpectation",
    "cond_expectation",
    "QuasiBasis",
    "quasi_basis",
    "implementer_space",
    "trivial_implementers",
    "is_outer",
    "is_minimal",
    "is_regular",
    "GnsData",
    "invariant_state",
    "modular_check",
    "galois_test",
]


class ModuleAlgebra:
    """A left action of a weak Hopf algebra W on a *-algebra M, stored as
    act[i, p, q]: e_i |> f_p = sum_q act[i,p,q] f_q."""

    def __init__(self, hopf, target, act):
        act = np.asarray(act, dtype=complex)
        if act.shape != (hopf.dim, target.dim, target.dim):
            raise ValueError("action table has wrong shape")
        self.hopf = hopf
        self.target = target
        self.act = act
        self._cache = {}

    def __repr__(self):
        return f"ModuleAlgebra(hopf dim {self.hopf.dim} on dim {self.target.dim})"

    def act_op(self, a):
        """Matrix of m -> a |> m on M coordinates."""
        return np.einsum("i,ipq->qp", np.asarray(a, dtype=complex), self.act)

    def apply_coords(self, a, m):
        return np.einsum("i,ipq,p->q", a, self.act, m)

    def apply(self, a, m):
        if a.parent is not self.hopf.alg or m.parent is not self.target:
            raise ParentMismatch("apply expects (hopf element, target element)")
        return Element(self.target, self.apply_coords(a.coords, m.coords))

    def act_on_unit(self):
        """Rows: e_i |> 1_M."""
        if "act1" not in self._cache:
            self._cache["act1"] = np.einsum("ipq,p->iq", self.act, self.target.unit)
        return self._cache["act1"]

    def coaction(self):
        """rho[p, q, i]: coefficient of f_q (x) f^i in the coaction of f_p."""
        if "rho" not in self._cache:
            self._cache["rho"] = np.ascontiguousarray(
                np.transpose(self.act, (1, 2, 0)))
        return self._cache["rho"]

    def fixed_points(self, tol=None):
        if "fixed" not in self._cache:
            self._cache["fixed"] = fixed_points(self, tol=tol)
        return self._cache["fixed"]

    def image_data(self, tol=None):
        if "image" not in self._cache:
            self._cache["image"] = image_data(self, tol=tol)
        return self._cache["image"]

    def haar_expectation(self, tol=None):
        if "e_haar" not in self._cache:
            h = self.hopf.haar(tol=tol).h
            self._cache["e_haar"] = cond_expectation(self, h, tol=tol)
        return self._cache["e_haar"]


def _mx(t):
    return float(np.abs(t).max()) if t.size else 0.0


def _argmax_idx(gap):
    return tuple(int(x) for x in np.unravel_index(int(gap.argmax()), gap.shape))


def make_module_algebra(W, M, act, tol=None):
    """Verify the module-algebra laws for the table act and wrap it."""
    MA = ModuleAlgebra(W, M, act)
    t = tolerance(tol)
    act = MA.act
    multa, multm = W.alg.mult, M.mult
    cop = W.cop

    lhs = np.einsum("ijr,rpq->ijpq", multa, act, optimize=True)
    rhs = np.einsum("jpr,irq->ijpq", act, act, optimize=True)
    gap = np.abs(lhs - rhs)
    if gap.max() > t:
        raise ActionAxiomViolation("composition law fails",
                                   where=_argmax_idx(gap), residual=gap.max())

    gap = np.abs(np.einsum("i,ipq->pq", W.alg.unit, act) - np.eye(M.dim))
    if gap.max() > t:
        raise ActionAxiomViolation("unit acts nontrivially",
                                   where=_argmax_idx(gap), residual=gap.max())

    lhs = np.einsum("pqr,irk->ipqk", multm, act, optimize=True)
    rhs = np.einsum("iuv,upa,vqb,abk->ipqk", cop, act, act, multm, optimize=True)
    gap = np.abs(lhs - rhs)
    if gap.max() > t:
        raise ActionAxiomViolation("product law fails",
                                   where=_argmax_idx(gap), residual=gap.max())

    lower = W.alg.star.T @ np.conj(W.antipode)  # columns: (e_i)_* = S(e_i)^*
    lhs = np.einsum("ipq,qr->ipr", np.conj(act), M.star)
    rhs = np.einsum("ui,ps,usr->ipr", lower, M.star, act, optimize=True)
    gap = np.abs(lhs - rhs)
    if gap.max() > t:
        raise ActionAxiomViolation("star law fails",
                                   where=_argmax_idx(gap), residual=gap.max())

    act1 = MA.act_on_unit()
    p_ls = W.counital("hL") @ W.counital("R")    # a(1) S(a(2))
    p_rinv = W.counital("hR") @ W.counital("R")  # a(2) S^{-1}(a(1))
    for name, proj in (("unit law", p_ls), ("unit law, inverse form", p_rinv)):
        gap = np.abs(act1.T - act1.T @ proj)
        if gap.max() > t:
            raise ActionAxiomViolation(f"{name} fails",
                                       where=_argmax_idx(gap), residual=gap.max())

    # splitting of products through the coproduct of the unit
    D1 = W.delta_one()
    lhs = np.einsum("uv,upa,vqb,abk->pqk", D1, act, act, multm, optimize=True)
    gap = np.abs(lhs - multm)
    if gap.max() > t:
        raise ActionAxiomViolation("unit-coproduct splitting fails",
                                   where=_argmax_idx(gap), residual=gap.max())
    return MA


def hopf_adjoint_table(W):
    """a |> b = a(1) b S(a(2)) on W itself.  Not a module-algebra action in
    general (the unit and product laws fail when the coproduct of the unit
    is nontrivial); see adjoint_restriction for the part that survives."""
    cop, mult, smat = W.cop, W.alg.mult, W.antipode
    return np.einsum("iuv,upr,qv,rqs->ips", cop, mult, smat, mult,
                     optimize=True)


def adjoint_restriction(W, tol=None):
    """The unit part of the adjoint action is a conditional expectation
    onto the commutant of the right boundary, and the adjoint action
    restricts to a module-algebra action there.  Returns (expectation
    table, restricted ModuleAlgebra)."""
    from .algebra import commutant, subalgebra_on_basis

    t = tolerance(tol)
    A = W.alg
    table = hopf_adjoint_table(W)
    e1 = np.einsum("i,ips->sp", A.unit, table)     # b -> 1 |> b
    target = commutant(W.boundary("R", tol=tol), A, tol=tol)
    if not target.contains_coords(la.orth(e1, tol=tol), tol=tol):
        raise ActionAxiomViolation("adjoint unit map leaves the commutant "
                                   "of the right boundary")
    if _mx(e1 @ e1 - e1) > 1e4 * t:
        raise ActionAxiomViolation("adjoint unit map is not idempotent",
                                   residual=_mx(e1 @ e1 - e1))
    sub, incl = subalgebra_on_basis(A, target.basis, tol=tol)
    pinv = incl.conj().T
    act = np.empty((W.dim, sub.dim, sub.dim), dtype=complex)
    for i in range(W.dim):
        moved = table[i].T @ incl      # columns: e_i |> (subalgebra basis)
        if not target.contains_coords(la.orth(moved, tol=tol), tol=tol):
            raise ActionAxiomViolation("adjoint action does not restrict",
                                       where=i)
        act[i] = (pinv @ moved).T
    return e1, make_module_algebra(W, sub, act, tol=tol)


def to_coaction(MA, tol=None, verify=True):
    """The right coaction of the dual corresponding to the action; checked
    against the comodule-algebra laws."""
    W, M = MA.hopf, MA.target
    rho = MA.coaction()
    if not verify:
        return rho
    t = tolerance(tol)
    Wd = W.dual()
    dm = M.dim
    multh = Wd.alg.mult

    lhs = np.einsum("pqi,qrj->prji", rho, rho, optimize=True)
    rhs = np.einsum("prk,kji->prji", rho, Wd.cop, optimize=True)
    if _mx(lhs - rhs) > t:
        raise ActionAxiomViolation("coaction coassociativity fails",
                                   residual=_mx(lhs - rhs))

    if _mx(np.einsum("pqi,i->pq", rho, Wd.counit) - np.eye(dm)) > t:
        raise ActionAxiomViolation("coaction counit law fails")

    lhs = np.einsum("pqr,rsi->pqsi", M.mult, rho, optimize=True)
    rhs = np.einsum("pai,qbj,abs,ijk->pqsk", rho, rho, M.mult, multh,
                    optimize=True)
    if _mx(lhs - rhs) > t:
        raise ActionAxiomViolation("coaction is not multiplicative",
                                   residual=_mx(lhs - rhs))

    lhs = np.einsum("pr,rsi->psi", M.star, rho)
    rhs = np.einsum("pqi,qs,ij->psj", np.conj(rho), M.star, Wd.alg.star,
                    optimize=True)
    if _mx(lhs - rhs) > t:
        raise ActionAxiomViolation("coaction is not star-preserving",
                                   residual=_mx(lhs - rhs))

    # weak unit laws: both products of rho(1) with the split dual unit
    # reproduce (id (x) Delta^)(rho(1))
    rho1 = np.einsum("p,pqi->qi", M.unit, rho)
    D1h = Wd.delta_one()
    target = np.einsum("qi,ijk->qjk", rho1, Wd.cop, optimize=True)
    lhs1 = np.einsum("ak,qu,auj->qjk", D1h, rho1, multh, optimize=True)
    if _mx(lhs1 - target) > t:
        raise ActionAxiomViolation("coaction weak unit law fails",
                                   residual=_mx(lhs1 - target))
    lhs2 = np.einsum("qu,ak,uaj->qjk", rho1, D1h, multh, optimize=True)
    if _mx(lhs2 - target) > t:
        raise ActionAxiomViolation("coaction weak unit law, flipped, fails",
                                   residual=_mx(lhs2 - target))
    return rho


# ---------------------------------------------------------------------------
# fixed points


def _fixed_rows_ii(MA):
    W = MA.hopf
    proj = W.counital("hL") @ W.counital("R")
    rows = []
    for i in range(W.dim):
        a = np.zeros(W.dim)
        a[i] = 1.0
        rows.append(MA.act_op(a) - MA.act_op(proj[:, i]))
    return rows


def fixed_points(MA, tol=None):
    """Elements on which every a acts like its counital projection; the
    invariant subalgebra of the action."""
    N = Subspace(MA.target, la.null_space(np.vstack(_fixed_rows_ii(MA)), tol=tol),
                 orthonormalize=False)
    N.certify(tol=tol)
    t = tolerance(tol)
    if not (N.flags["subalgebra"] and N.flags["star_closed"] and N.flags["unital"]):
        raise ActionAxiomViolation("fixed points fail to form a unital *-subalgebra")
    # coaction image of the fixed points lives in M (x) (dual left boundary)
    rho = MA.coaction()
    AhatL = MA.hopf.dual().boundary("L", tol=tol)
    for j in range(N.dim):
        img = np.einsum("p,pqi->qi", N.basis[:, j], rho)
        if not AhatL.contains_coords(la.orth(img.T), tol=tol):
            raise ActionAxiomViolation(
                "coaction of a fixed point leaves the dual boundary", where=j)
    return N


def fixed_point_condition_spaces(MA, tol=None):
    """The four equivalent characterizations, computed independently:
    left/right centralizing conditions and both counital-projection forms."""
    W, M = MA.hopf, MA.target
    act, multm = MA.act, M.mult
    dm = M.dim

    rows_ii = _fixed_rows_ii(MA)
    proj_iv = W.counital("hR") @ W.counital("R")
    rows_iv = []
    for i in range(W.dim):
        a = np.zeros(W.dim)
        a[i] = 1.0
        rows_iv.append(MA.act_op(a) - MA.act_op(proj_iv[:, i]))

    # a |> (m n) = (a |> m) n  as linear conditions on n
    t_i = np.einsum("pnr,irq->ipnq", multm, act, optimize=True) \
        - np.einsum("ipr,rnq->ipnq", act, multm, optimize=True)
    rows_i = np.transpose(t_i, (0, 1, 3, 2)).reshape(-1, dm)

    # a |> (n m) = n (a |> m)
    t_iii = np.einsum("npr,irq->ipnq", multm, act, optimize=True) \
        - np.einsum("ipr,nrq->ipnq", act, multm, optimize=True)
    rows_iii = np.transpose(t_iii, (0, 1, 3, 2)).reshape(-1, dm)

    return {
        "i": la.null_space(rows_i, tol=tol),
        "ii": la.null_space(np.vstack(rows_ii), tol=tol),
        "iii": la.null_space(rows_iii, tol=tol),
        "iv": la.null_space(np.vstack(rows_iv), tol=tol),
    }


# ---------------------------------------------------------------------------
# the image of the action and standardness


class ImageData:
    def __init__(self, **kw):
        self.__dict__.update(kw)


def image_data(MA, tol=None):
    """M_R = A |> 1 with the boundary epimorphism, its kernel projection,
    the annihilator ideal, and the standardness flag."""
    t = tolerance(tol)
    W, M = MA.hopf, MA.target
    A = W.alg
    act1 = MA.act_on_unit()          # rows: e_i |> 1
    mu = act1.T                      # coords of a |> 1 from coords of a
    m_r = Subspace(M, mu, tol=tol)
    m_r.certify(tol=tol)
    AL = W.boundary("L", tol=tol)
    AR = W.boundary("R", tol=tol)

    # mu restricted to the left boundary is a *-epimorphism onto M_R
    img = mu @ AL.basis
    if not la.span_equal(la.orth(img, tol=tol), m_r.basis, tol=tol):
        raise ActionAxiomViolation("A_L |> 1 does not span M_R")
    for i in range(AL.dim):
        for j in range(AL.dim):
            x, y = AL.basis[:, i], AL.basis[:, j]
            gap = _mx(mu @ A.product_coords(x, y)
                      - M.product_coords(mu @ x, mu @ y))
            if gap > 100 * t:
                raise ActionAxiomViolation("boundary epimorphism not multiplicative",
                                           where=(i, j), residual=gap)
        gap = _mx(mu @ A.star_coords(AL.basis[:, i])
                  - M.star_coords(mu @ AL.basis[:, i]))
        if gap > 100 * t:
            raise ActionAxiomViolation("boundary epimorphism not star-preserving",
                                       where=i, residual=gap)

    ker_in_al = la.null_space(img, tol=tol)        # coefficients against AL basis
    if ker_in_al.shape[1]:
        kernel = Subspace(A, AL.basis @ ker_in_al, tol=tol)
    else:
        kernel = Subspace(A, np.zeros((A.dim, 0)), orthonormalize=False)
    standard = kernel.dim == 0

    # unit projection of the kernel ideal; central in A
    if kernel.dim:
        rows = []
        rhs = []
        for j in range(kernel.dim):
            k = kernel.basis[:, j]
            rows.append(A.right_mult_matrix(k))
            rhs.append(k)
        z, _ = la.affine_solutions(
            np.vstack(rows) @ kernel.basis,
            np.concatenate(rhs), tol=tol)
        z = kernel.basis @ z
        checks = [
            _mx(A.product_coords(z, z) - z),
            _mx(A.star_coords(z) - z),
        ]
        for j in range(kernel.dim):
            k = kernel.basis[:, j]
            checks.append(_mx(A.product_coords(z, k) - k))
            checks.append(_mx(A.product_coords(k, z) - k))
        ZA = A.center(tol=tol)
        if max(checks) > 1e3 * t or not ZA.contains_coords(z.reshape(-1, 1), tol=tol) \
                or not AL.contains_coords(z.reshape(-1, 1), tol=tol):
            raise ActionAxiomViolation("kernel support projection is not a "
                                       "central projection in the left boundary",
                                       residual=max(checks))
        z_proj = Element(A, z)
        # the kernel is exactly z A_L
        zal = np.array([A.product_coords(z, AL.basis[:, j])
                        for j in range(AL.dim)]).T
        if not la.span_equal(la.orth(zal, tol=tol), kernel.basis, tol=tol):
            raise ActionAxiomViolation("kernel is not generated by its projection")
    else:
        z_proj = Element(A, np.zeros(A.dim))

    # annihilator ideal of the whole action
    ann = la.null_space(np.transpose(MA.act, (1, 2, 0)).reshape(-1, A.dim), tol=tol)
    annihilator = Subspace(A, ann, orthonormalize=False)

    # two-sided ideal generated by the kernel; equals both one-sided spans
    if kernel.dim:
        left = np.hstack([A.left_mult_matrix(np.eye(A.dim)[i]) @ kernel.basis
                          for i in range(A.dim)])
        right = np.hstack([A.right_mult_matrix(np.eye(A.dim)[i]) @ kernel.basis
                           for i in range(A.dim)])
        ideal = Subspace(A, left, tol=tol)
        if not la.span_equal(ideal.basis, la.orth(right, tol=tol), tol=tol):
            raise ActionAxiomViolation("kernel ideal is not two-sided symmetric")
        if not annihilator.contains_subspace(ideal, tol=tol):
            raise ActionAxiomViolation("kernel ideal does not annihilate the module")
        stars = np.array([A.star_coords(ideal.basis[:, j])
                          for j in range(ideal.dim)]).T
        if not ideal.contains_coords(stars, tol=tol):
            raise ActionAxiomViolation("kernel ideal is not star-closed")
    else:
        ideal = Subspace(A, np.zeros((A.dim, 0)), orthonormalize=False)

    # central-boundary images sit in the expected centers
    center_m = M.center(tol=tol)
    albar = AL.intersect(AR, tol=tol)
    if albar.dim and not center_m.contains_coords(la.orth(mu @ albar.basis, tol=tol),
                                                  tol=tol):
        raise ActionAxiomViolation("A_L & A_R does not map into the center of M")
    N = MA.fixed_points(tol=tol)
    if N.dim:
        cn = commutant_within(MA.target, N, N, tol=tol)
        ZA = A.center(tol=tol)
        alz = AL.intersect(ZA, tol=tol)
        if alz.dim:
            img_c = la.orth(mu @ alz.basis, tol=tol)
            if img_c.shape[1] and not cn.contains_coords(img_c, tol=tol):
                raise ActionAxiomViolation(
                    "central boundary part leaves the center of the fixed points")

    # tau: dual right boundary -> M_R through the inverse boundary map
    tau = mu @ W.counital("hL")
    return ImageData(m_r=m_r, mu=mu, tau=tau, z_proj=z_proj, kernel=kernel,
                     annihilator=annihilator, ideal=ideal, standard=standard)


def commutant_within(M, S, T, tol=None):
    """Elements of span T commuting with span S (both Subspaces of M)."""
    rows = []
    for j in range(S.dim):
        s = S.basis[:, j]
        rows.append((M.left_mult_matrix(s) - M.right_mult_matrix(s)) @ T.basis)
    coeff = la.null_space(np.vstack(rows), tol=tol) if rows else np.eye(T.dim)
    return Subspace(M, T.basis @ coeff, tol=tol)


# ---------------------------------------------------------------------------
# conditional expectations and quasi-bases


class ConditionalExpectation:
    """An endomap of a *-algebra with range in a distinguished subalgebra,
    here always of the form E(m) = l |> m for a left integral l."""

    def __init__(self, algebra, table, integral=None, source=None):
        self.algebra = algebra
        self.table = np.asarray(table, dtype=complex)
        self.integral = integral
        self.source = source

    def __call__(self, m):
        if m.parent is not self.algebra:
            raise ParentMismatch("expectation applied to a foreign element")
        return Element(self.algebra, self.table @ m.coords)

    def apply_coords(self, m):
        return self.table @ m

    def range_subspace(self, tol=None):
        return Subspace(self.algebra, la.orth(self.table, tol=tol),
                        orthonormalize=False)

    def is_faithful(self, tol=None):
        """No m with E(m'* m) = 0 for every m'."""
        M = self.algebra
        rows = [self.table @ M.left_mult_matrix(M.star_coords(np.eye(M.dim)[p]))
                for p in range(M.dim)]
        return la.null_space(np.vstack(rows), tol=tol).shape[1] == 0


def cond_expectation(MA, l, tol=None):
    """E_l(m) = l |> m for a left integral l; verified to be an N-N
    bimodule map into the fixed points."""
    from .integrals import LeftIntegral

    t = tolerance(tol)
    li = l if isinstance(l, LeftIntegral) else None
    lw = li.element if li is not None else l
    if lw.parent is not MA.hopf.alg:
        raise ParentMismatch("integral lives in a different algebra")
    table = MA.act_op(lw.coords)
    E = ConditionalExpectation(MA.target, table, integral=lw, source=MA)

    N = MA.fixed_points(tol=tol)
    if not N.contains_coords(la.orth(table, tol=tol), tol=tol):
        raise ActionAxiomViolation("expectation range leaves the fixed points")
    M = MA.target
    for j in range(N.dim):
        n = N.basis[:, j]
        ln, rn = M.left_mult_matrix(n), M.right_mult_matrix(n)
        gap = max(_mx(table @ ln - ln @ table), _mx(table @ rn - rn @ table))
        if gap > 100 * t:
            raise ActionAxiomViolation("expectation is not a bimodule map",
                                       where=j, residual=gap)
    return E


class QuasiBasis:
    def __init__(self, tensor, index, nullity):
        self.tensor = tensor      # T[p, q] against basis (x) basis
        self.index = index        # Element: sum of u_i v_i
        self.nullity = nullity    # solution-space dimension of the system


def _quasi_basis_system(M, table):
    multm = M.mult
    a1 = np.einsum("qmr,tr,pts->mspq", multm, table, multm, optimize=True)
    a2 = np.einsum("mpr,tr,tqs->mspq", multm, table, multm, optimize=True)
    dm = M.dim
    rhs_block = np.eye(dm).reshape(dm * dm)
    sys = np.vstack([a1.reshape(dm * dm, dm * dm), a2.reshape(dm * dm, dm * dm)])
    rhs = np.concatenate([rhs_block, rhs_block])
    return sys, rhs


def quasi_basis(E, tol=None, subspace=None):
    """Solve for a tensor T = sum u_i (x) v_i with
    sum u_i E(v_i m) = m = sum E(m u_i) v_i, and the index sum u_i v_i.

    With `subspace` (a Subspace of the algebra) the tensor is constrained
    to subspace (x) subspace.  Raises NotIndexFinite when no solution fits.
    """
    M = E.algebra
    dm = M.dim
    sys, rhs = _quasi_basis_system(M, E.table)
    if subspace is not None:
        embed = np.einsum("pa,qb->pqab", subspace.basis, subspace.basis) \
            .reshape(dm * dm, -1)
        sys = sys @ embed
    try:
        vec, ns = la.affine_solutions(sys, rhs, tol=tol)
    except NoSolution as exc:
        raise NotIndexFinite("no quasi-basis exists",
                             residual=exc.residual) from exc
    if subspace is not None:
        vec = embed @ vec
        ns = embed @ ns if ns.shape[1] else np.zeros((dm * dm, 0))
    tensor = vec.reshape(dm, dm)
    index = np.einsum("pq,pqs->s", tensor, M.mult)
    # the index is independent of the choice of solution
    if ns.shape[1]:
        alt = (vec + ns[:, 0]).reshape(dm, dm)
        alt_index = np.einsum("pq,pqs->s", alt, M.mult)
        if _mx(alt_index - index) > 1e3 * tolerance(tol):
            raise NotIndexFinite("index depends on the quasi-basis choice",
                                 residual=_mx(alt_index - index))
    if not M.center(tol=tol).contains_coords(index.reshape(-1, 1), tol=tol):
        raise NotIndexFinite("index is not central")
    return QuasiBasis(tensor, Element(M, index), ns.shape[1])


# ---------------------------------------------------------------------------
# implementers and outerness


def implementer_space(MA, ambient=None, inclusion=None, tol=None):
    """Solutions T : A -> ambient of T(a) m = (a(1) |> m) T(a(2)); the
    intertwiners of the coaction inside an extension of M."""
    W, M = MA.hopf, MA.target
    amb = ambient if ambient is not None else M
    incl = np.asarray(inclusion, dtype=complex) if inclusion is not None \
        else np.eye(M.dim, dtype=complex)
    da, dn = W.dim, amb.dim
    cop, act = W.cop, MA.act

    # rows indexed by (i, q, s), unknown blocks by (v, p):
    #   delta_{iv} R_{incl f_q}[s,p] - L_{incl(cop[i,.,v] |> f_q)}[s,p]
    rw = np.einsum("jq,pjs->qsp", incl, amb.mult, optimize=True)
    ct = np.zeros((da, M.dim, dn, da, dn), dtype=complex)
    idx = np.arange(da)
    ct[idx, :, :, idx, :] = rw[np.newaxis, :, :, :]
    x = np.einsum("iuv,uqm,jm->iqvj", cop, act, incl, optimize=True)
    ct -= np.einsum("iqvj,jps->iqsvp", x, amb.mult, optimize=True)
    ns = la.null_space(ct.reshape(da * M.dim * dn, da * dn), tol=tol)
    return ns  # columns: flattened T with T(e_i) in block i, layout (i, entry)


def trivial_implementers(MA, tol=None, ambient=None, inclusion=None):
    """The implementers induced by dual left integrals, multiplied by the
    center of M."""
    from .integrals import left_integral_space

    W, M = MA.hopf, MA.target
    amb = ambient if ambient is not None else M
    incl = np.asarray(inclusion, dtype=complex) if inclusion is not None \
        else np.eye(M.dim, dtype=complex)
    da, dn = W.dim, amb.dim
    lam_space = left_integral_space(W.dual(), tol=tol)
    cols = []
    zc = M.center(tol=tol)
    for j in range(lam_space.dim):
        lam = lam_space.basis[:, j]
        tl = np.zeros((da, dn), dtype=complex)
        for i in range(da):
            arrow = np.einsum("kis,k,s->i", W.cop, np.eye(da)[i], lam)
            tl[i] = incl @ (MA.act_on_unit().T @ arrow)
        for z in range(zc.dim):
            lz = amb.left_mult_matrix(incl @ zc.basis[:, z])
            cols.append((tl @ lz.T).reshape(-1))
    out = np.array(cols).T if cols else np.zeros((da * dn, 0))
    return la.orth(out, tol=tol)


def is_outer(MA, tol=None):
    """Outer = every implementer of the coaction inside M comes from the
    center of M times a dual left integral."""
    full = implementer_space(MA, tol=tol)
    triv = trivial_implementers(MA, tol=tol)
    return la.span_equal(full, triv, tol=tol)


def is_minimal(MA, tol=None):
    """Minimal = the relative commutant of the fixed points is C(M) M_R."""
    M = MA.target
    N = MA.fixed_points(tol=tol)
    from .algebra import commutant
    rel = commutant(N, M, tol=tol)
    zc = M.center(tol=tol)
    mr = MA.image_data(tol=tol).m_r
    prods = [M.product_coords(zc.basis[:, i], mr.basis[:, j])
             for i in range(zc.dim) for j in range(mr.dim)]
    cmr = la.orth(np.array(prods).T, tol=tol)
    return la.span_equal(rel.basis, cmr, tol=tol)


def is_regular(MA, tol=None):
    """Standard + outer + the center of M is exactly (A_L & A_R) |> 1."""
    data = MA.image_data(tol=tol)
    if not data.standard:
        return False
    W, M = MA.hopf, MA.target
    albar = W.boundary("L", tol=tol).intersect(W.boundary("R", tol=tol), tol=tol)
    img = la.orth(data.mu @ albar.basis, tol=tol)
    if not la.span_equal(img, M.center(tol=tol).basis, tol=tol):
        return False
    return is_outer(MA, tol=tol)


# ---------------------------------------------------------------------------
# invariant states, GNS and modular data


class GnsData:
    """GNS data of a faithful invariant state: Gram matrix, modular
    operator and modular conjugation of the Tomita map m -> m*."""

    def __init__(self, MA, omega, tol=None):
        t = tolerance(tol)
        M = MA.target
        self.module = MA
        self.omega = np.asarray(omega, dtype=complex)
        gram = np.einsum("ps,sqt,t->pq", M.star, M.mult, self.omega, optimize=True)
        herm = _mx(gram - gram.conj().T)
        if herm > 1e3 * t:
            raise NotFaithful("state form is not hermitian", residual=herm)
        w = np.linalg.eigvalsh((gram + gram.conj().T) / 2)
        if w.min() <= t:
            raise NotFaithful("state is not faithful", residual=float(w.min()))
        self.gram = gram
        self.c, self.c_inv = la.gram_sqrt(gram, tol=tol)
        k = self.c @ M.star.T @ np.conj(self.c_inv)
        delta_tilde = k.T @ np.conj(k)
        dw, dv = np.linalg.eigh((delta_tilde + delta_tilde.conj().T) / 2)
        if dw.min() <= 0:
            raise NotFaithful("modular operator is not positive")
        self._dw, self._dv = dw, dv
        self.delta = self.c_inv @ delta_tilde @ self.c
        kj = k @ np.conj(dv * (dw ** -0.5) @ dv.conj().T)
        self.jmat = self.c_inv @ kj @ np.conj(self.c)

    def state(self, m):
        return complex(self.omega @ m.coords)

    def inner(self, x, y):
        return complex(np.conj(x) @ self.gram @ y)

    def delta_power(self, z):
        pw = np.exp(np.asarray(z, dtype=complex) * np.log(self._dw))
        return self.c_inv @ (self._dv * pw) @ self._dv.conj().T @ self.c

    def conjugate(self, vec):
        """Antiunitary J applied to a coordinate vector."""
        return self.jmat @ np.conj(vec)

    def conjugation_sandwich(self, op):
        """J op J for a linear operator on the GNS space (J^2 = 1)."""
        return self.jmat @ np.conj(op) @ np.conj(self.jmat)


def invariant_state(MA, omega0, tol=None):
    """Average a state through the Haar expectation and build its GNS and
    modular data; raises NotFaithful when the averaged state is degenerate."""
    t = tolerance(tol)
    E = MA.haar_expectation(tol=tol)
    omega = np.asarray(omega0, dtype=complex) @ E.table
    # invariance identities
    W, M = MA.hopf, MA.target
    act1 = MA.act_on_unit()
    sinv1 = act1.T @ MA.hopf.antipode_inv()   # columns: S^{-1}(e_i) |> 1
    s1 = act1.T @ MA.hopf.antipode
    for i in range(W.dim):
        op = MA.act_op(np.eye(W.dim)[i])
        lhs = omega @ op
        rhs = omega @ M.left_mult_matrix(sinv1[:, i])
        if _mx(lhs - rhs) > 1e3 * t:
            raise NotFaithful("averaged state is not invariant", where=i,
                              residual=_mx(lhs - rhs))
        rhs2 = omega @ M.right_mult_matrix(s1[:, i])
        if _mx(lhs - rhs2) > 1e3 * t:
            raise NotFaithful("averaged state fails the mirrored invariance",
                              where=i, residual=_mx(lhs - rhs2))
    return GnsData(MA, omega, tol=tol)


def modular_check(MA, gns, times=(1.0, 0.5), tol=None):
    """Modular flow and conjugation against the canonical grouplike element:
    the flow conjugates boundary products by powers of g, and J implements
    the bar involution."""
    from .algebra import positive_power
    from .hopf import star_conjugations

    W = MA.hopf
    hd = W.haar(tol=tol)
    lower, bar = star_conjugations(W, tol=tol)
    AL, AR = W.boundary("L", tol=tol), W.boundary("R", tol=tol)
    prods = [W.alg.product_coords(AL.basis[:, i], AR.basis[:, j])
             for i in range(AL.dim) for j in range(AR.dim)]
    basis = la.orth(np.array(prods).T, tol=tol)

    report = {}
    for tval in times:
        worst_flow = 0.0
        dpow = gns.delta_power(1j * tval)
        dpow_inv = gns.delta_power(-1j * tval)
        gpow = positive_power(hd.g, 1j * tval, tol=tol)
        gpow_inv = positive_power(hd.g, -1j * tval, tol=tol)
        for j in range(basis.shape[1]):
            a = basis[:, j]
            lhs = dpow @ MA.act_op(a) @ dpow_inv
            moved = W.alg.product_coords(
                W.alg.product_coords(gpow.coords, a), gpow_inv.coords)
            rhs = MA.act_op(moved)
            worst_flow = max(worst_flow, _mx(lhs - rhs))
        report[f"flow_t={tval}"] = worst_flow
    worst_j = 0.0
    for j in range(basis.shape[1]):
        a = basis[:, j]
        lhs = gns.conjugation_sandwich(MA.act_op(a))
        rhs = MA.act_op(bar(Element(W.alg, a)).coords)
        worst_j = max(worst_j, _mx(lhs - rhs))
    report["conjugation"] = worst_j
    return report


def galois_test(MA, tol=None):
    """Central support of the Haar expectation inside the crossed product,
    and the rank of the two-sided multiplication map around it.  The action
    is Galois when the support is the unit, equivalently when M h M fills
    the crossed product."""
    from .crossed import crossed_product

    t = tolerance(tol)
    X = crossed_product(MA, tol=tol)
    M = MA.target
    h = MA.hopf.haar(tol=tol).h
    E = MA.haar_expectation(tol=tol)
    qb = quasi_basis(E, tol=tol)
    eh = X.embed_a @ h.coords
    XA = X.algebra

    p = np.zeros(XA.dim, dtype=complex)
    for u in range(M.dim):
        ueh = XA.product_coords(X.embed_m[:, u], eh)
        for v in range(M.dim):
            p += qb.tensor[u, v] * XA.product_coords(ueh, X.embed_m[:, v])
    p_el = Element(XA, p)
    checks = {
        "idempotent": _mx(XA.product_coords(p, p) - p),
        "self_adjoint": _mx(XA.star_coords(p) - p),
    }
    if max(checks.values()) > 1e4 * t:
        raise ActionAxiomViolation("Galois support is not a projection",
                                   residual=max(checks.values()))
    if not XA.center(tol=tol).contains_coords(p.reshape(-1, 1), tol=tol):
        raise ActionAxiomViolation("Galois support is not central")

    cols = []
    for u in range(M.dim):
        lu = XA.left_mult_matrix(X.embed_m[:, u])
        base = lu @ eh
        for v in range(M.dim):
            cols.append(XA.right_mult_matrix(X.embed_m[:, v]) @ base)
    gamma = np.array(cols).T
    gamma_rank = la.rank(gamma, tol=tol)
    mhm_dim = la.orth(gamma, tol=tol).shape[1]

    is_gal = _mx(p - XA.unit) <= 1e4 * t
    if is_gal != (gamma_rank == XA.dim) or mhm_dim != gamma_rank:
        raise ActionAxiomViolation("Galois criteria disagree")
    return p_el, is_gal, gamma_rank
