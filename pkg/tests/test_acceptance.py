"""Acceptance suite: one test per criterion, each printing a PASS/FAIL
line.  Tolerances are pinned here and match the contract exactly."""

import numpy as np
import pytest

import weakhopf._linalg as la
from weakhopf import crossed as cr
from weakhopf import examples as ex
from weakhopf import integrals as itg
from weakhopf import modules as mo
from weakhopf import tower as tw
from weakhopf.algebra import Subspace, commutant
from weakhopf.hopf import verify_weak_hopf


def _report(num, desc, ok, detail=""):
    tag = "PASS" if ok else "FAIL"
    print(f"[{tag}] criterion {num}: {desc} {detail}".rstrip())
    assert ok, f"criterion {num}: {desc} {detail}"


@pytest.fixture(scope="module")
def instances(group_instances, pauli):
    base = dict(group_instances)
    base["Pauli"] = pauli[0]
    out = dict(base)
    for name, W in base.items():
        out[name + "^"] = W.dual()
    return out


def test_criterion_1_axiom_suite(instances):
    worst = 0.0
    for name, W in instances.items():
        rep = verify_weak_hopf(W)
        worst = max(worst, rep.max_residual())
        if not rep.passed(tol=1e-9):
            _report(1, f"axiom suite on {name}", False, str(rep.failures()))
    _report(1, "axiom suite on all instances and duals", worst < 1e-9,
            f"(max residual {worst:.2e})")


def test_criterion_2_haar_identities(instances, group_instances):
    worst = 0.0
    for name, W in instances.items():
        hd = W.haar()
        h = hd.h
        worst = max(worst,
                    (h * h - h).norm(),
                    (h.star() - h).norm(),
                    (W.s_apply(h) - h).norm(),
                    float(np.abs((W.counital("hR") @ W.counital("L"))
                                 @ h.coords - W.alg.unit).max()))
    ok1 = worst < 1e-9
    worst_coord = 0.0
    for name, W in group_instances.items():
        hd = W.haar()
        e_haar, _, lam_haar = ex.group_integrals(W)
        worst_coord = max(worst_coord, (hd.h - e_haar).norm())
        worst_coord = max(worst_coord,
                          float(np.abs(W.dual().haar().h.coords
                                       - lam_haar.coords).max()))
    ok2 = worst_coord < 1e-12
    _report(2, "Haar identities and closed formulas", ok1 and ok2,
            f"(identities {worst:.2e}, coordinates {worst_coord:.2e})")


def test_criterion_3_modular_suite(instances, group_instances):
    worst = 0.0
    for name, W in instances.items():
        worst = max(worst, max(W.haar().modular_report().values()))
    ok1 = worst < 1e-9
    worst_g = 0.0
    for name, W in group_instances.items():
        hd = W.haar()
        scale = 1.0 / np.sqrt(W.group_data["G"].order)
        worst_g = max(worst_g,
                      float(np.abs(hd.g_l.coords - scale * W.alg.unit).max()),
                      float(np.abs(hd.g_r.coords - scale * W.alg.unit).max()))
    ok2 = worst_g < 1e-12
    _report(3, "modular identity suite", ok1 and ok2,
            f"(suite {worst:.2e}, group scalars {worst_g:.2e})")


def test_criterion_4_boundary_subalgebras(group_instances):
    from weakhopf.hopf import mu_iso
    ok = True
    detail = []
    for name, W in group_instances.items():
        nH = len(W.group_data["H"])
        dims_ok = (W.boundary("L").dim == nH and W.boundary("R").dim == nH)
        iso_ok = True
        try:
            mu_iso(W, "R", tol=1e-9)
            mu_iso(W, "L", tol=1e-9)
        except Exception as exc:   # noqa: BLE001 - report, criterion fails
            iso_ok = False
            detail.append(f"{name}: {exc}")
        ok = ok and dims_ok and iso_ok
    _report(4, "boundary dimensions |H| and boundary isomorphisms", ok,
            "; ".join(detail))


def test_criterion_5_integral_duality(instances):
    rng = np.random.default_rng(55)
    worst = 0.0
    for name, W in instances.items():
        A = W.alg
        sinv = W.antipode_inv()
        shat_inv = np.linalg.inv(W.dual().antipode)
        for _ in range(20):
            l = itg.random_left_integral(W, rng)
            lam = itg.dual_integral(l)
            _, l_r = itg.fourier_maps(l)
            l_l, _ = itg.fourier_maps(l)
            r_pair = np.abs(l_r @ lam.element.coords - A.unit).max()
            m237 = itg._compose_lamL_sinv(W, lam.element.coords, sinv)
            r237 = np.abs(l_r @ m237 - np.eye(A.dim)).max()
            r238 = np.abs(itg.lam_r_matrix(W, lam.element.coords)
                          @ (l_l @ shat_inv) - np.eye(A.dim)).max()
            worst = max(worst, float(r_pair), float(r237), float(r238))
            itg.classify(l)   # raises if the Gram oracle disagrees
    _report(5, "integral duality and classification oracle on 20 samples "
               "per instance", worst < 1e-8, f"(max residual {worst:.2e})")


def test_criterion_6_p_duality(instances):
    rng = np.random.default_rng(66)
    worst_inv = 0.0
    worst_pair = 0.0
    for name, W in instances.items():
        for _ in range(10):
            l = itg.random_positive_integral(W, rng)
            lam = itg.p_dual(l)
            back = itg.p_dual(lam)
            worst_inv = max(worst_inv, (back.element - l.element).norm())
            e = itg.jones_projection(l)
            _, e_r = itg.fourier_maps(itg.LeftIntegral(W, e, check=False))
            worst_pair = max(worst_pair, float(np.abs(
                e_r @ lam.element.coords - W.alg.unit).max()))
    ok = worst_inv < 1e-8 and worst_pair < 1e-10
    _report(6, "p-duality involution on 10 positive normalized samples "
               "per instance", ok,
            f"(involution {worst_inv:.2e}, pairing {worst_pair:.2e})")


def test_criterion_7_tlj_relations(m2_action, cz2, wz2z2):
    worst = 0.0
    seeds = [m2_action[1], ex.canonical_dual_module(cz2),
             ex.canonical_dual_module(wz2z2)]
    for MA in seeds:
        W = MA.hopf
        X = cr.crossed_product(MA)
        hd = W.haar()
        _, _, rep = cr.tlj_elements(X, itg.LeftIntegral(W, hd.h))
        worst = max(worst, max(rep.values()))
    _report(7, "Temperley-Lieb relations in the double crossed product",
            worst < 1e-8, f"(max residual {worst:.2e})")


def test_criterion_8_crossed_product_structure(m2_action):
    W, MA = m2_action
    M = MA.target
    X = cr.crossed_product(MA)
    XA = X.algebra
    ok_dim = X.dim == 8

    # the identification with the ordinary group crossed product
    G = ex.cyclic_group(2)
    WG = ex.group_weak_hopf(G)
    M2, toc, _ = ex.matrix_algebra(2)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    alpha = ex.adjoint_action_table(M2, toc, {0: np.eye(2, dtype=complex),
                                              1: sz})
    XG = cr.crossed_product(ex.partly_inner_action(WG, M2, alpha,
                                                   [toc(np.eye(2))]))
    ok_dim = ok_dim and XG.dim == 8

    # inclusion residuals
    N = MA.fixed_points()
    worst = 0.0
    for i in range(W.dim):
        a = X.embed_a[:, i]
        for j in range(N.dim):
            n = X.embed_m @ N.basis[:, j]
            worst = max(worst, float(np.abs(
                XA.product_coords(a, n) - XA.product_coords(n, a)).max()))
    AR = W.boundary("R")
    for j in range(AR.dim):
        a = X.embed_a @ AR.basis[:, j]
        for p in range(M.dim):
            m = X.embed_m[:, p]
            worst = max(worst, float(np.abs(
                XA.product_coords(a, m) - XA.product_coords(m, a)).max()))
    za = W.alg.center()
    arz = AR.intersect(za)
    cx = XA.center()
    ok_inc = worst < 1e-9
    ok_inc = ok_inc and cx.contains_coords(X.embed_a @ arz.basis, tol=1e-9)
    hz = W.boundary("L").intersect(arz)
    img = X.embed_a @ hz.basis
    ok_inc = ok_inc and cx.contains_coords(img, tol=1e-9) \
        and la.contains(X.embed_m, img, tol=1e-9)

    reg = cr.regular_homomorphism(X)
    inj = la.rank(reg.images.reshape(X.dim, -1).T) == X.dim
    inter = reg.intertwining_residual()
    ok = ok_dim and ok_inc and inj and inter < 1e-9
    _report(8, "crossed product: dimension 8, inclusions, faithful regular "
               "homomorphism", ok,
            f"(inclusions {worst:.2e}, intertwining {inter:.2e})")


def test_criterion_9_index_oracle(cz2, cz3, cs3):
    worst = 0.0
    ok = True
    for W, order in ((cz2, 2), (cz3, 3), (cs3, 6)):
        hd = W.haar()
        ind = itg.integral_index(itg.LeftIntegral(W, hd.h))
        worst = max(worst, float(np.abs(
            ind.coords - order * W.dual_alg.unit).max()))
        MA = ex.canonical_dual_module(W)
        qb = mo.quasi_basis(MA.haar_expectation())
        worst = max(worst, float(np.abs(qb.index.coords - ind.coords).max()))

    # expectation identities on a crossed product
    W, MA = ex.m2_inner_z2_action()
    X = cr.crossed_product(MA)
    XA = X.algebra
    hd = W.haar()
    lam = itg.dual_integral(itg.LeftIntegral(W, hd.h))
    E = cr.hat_expectation(X, lam)
    l_dual = itg.dual_integral(lam)    # back in A
    r_a = np.abs(E.apply_coords(X.embed_a @ l_dual.element.coords)
                 - XA.unit).max()
    r_b = np.abs(E.index.coords - X.embed_a @ l_dual.n_r.coords).max()
    tau = MA.image_data().tau
    r_d = np.abs(E.apply_coords(XA.unit)
                 - X.embed_m @ (tau @ lam.n_r.coords)).max()
    worst = max(worst, float(r_a), float(r_b), float(r_d))
    _report(9, "Watatani index oracle |G| and expectation identities",
            ok and worst < 1e-9, f"(max residual {worst:.2e})")


def test_criterion_10_jones_galois_suite(m2_action, collapsed_action):
    W, MA = m2_action
    M = MA.target
    p, galois, grank = mo.galois_test(MA)
    X = cr.crossed_product(MA)
    XA = X.algebra

    # Jones relation for the Haar projection
    hd = W.haar()
    e = X.embed_a @ hd.h.coords
    E = MA.haar_expectation()
    worst = 0.0
    for q in range(M.dim):
        x = X.embed_m[:, q]
        exe = XA.product_coords(XA.product_coords(e, x), e)
        ex_ = X.embed_m @ E.table[:, q]
        worst = max(worst, float(np.abs(exe - XA.product_coords(ex_, e)).max()))

    bc = tw.basic_construction_check(MA)
    dims = (commutant(Subspace(M, MA.fixed_points().basis), M).dim,
            cr.commutant_suite(X)["dim_m_commutant"],
            cr.commutant_suite(X)["dim_n_commutant"])
    center_dim = XA.center().dim

    pc, gal_c, rank_c = mo.galois_test(collapsed_action[1])
    bc_c = tw.basic_construction_check(collapsed_action[1])

    ok = (galois and grank == 8 and worst < 1e-9
          and bc["index_gap_norm"] < 1e-9
          and dims == (2, 2, 4) and center_dim == 2
          and not gal_c and (pc - pc.parent.one).norm() > 1e-6
          and bc_c["index_gap_norm"] > 1e-6)
    _report(10, "Jones/Galois suite with commutant dims (2,2,4) and the "
                "collapsed counterexample", ok,
            f"(relation {worst:.2e}, dims {dims}, center {center_dim})")


def test_criterion_11_regularity_propagation(m2_action, pauli):
    ok = True
    detail = []
    for name, (W, MA) in (("M2-Z2", m2_action), ("Pauli", pauli)):
        if not mo.is_regular(MA):
            ok, detail = False, detail + [f"{name}: seed not regular"]
            continue
        X = cr.crossed_product(MA)
        if not mo.is_regular(cr.dual_action(X)):
            ok, detail = False, detail + [f"{name}: dual action not regular"]
        T = tw.build_tower(MA, 1)
        table = tw.commutant_table(T)
        if not all(table["regular_table"].values()):
            ok, detail = False, detail + [f"{name}: center table mismatch"]
    _report(11, "regularity propagates to the dual action with exact "
                "center tables", ok, "; ".join(detail))


def test_criterion_12_modular_conjugation(m2_action):
    _, MA = m2_action
    M = MA.target
    tr = M.trace_vector()
    gns = mo.invariant_state(MA, tr / (tr @ M.unit))
    rep = mo.modular_check(MA, gns, times=(0.5, 1.0))
    worst = max(rep.values())
    _report(12, "modular flow and conjugation at t in {1/2, 1}",
            worst < 1e-7, f"(max residual {worst:.2e})")
