import numpy as np
import pytest

import weakhopf._linalg as la
from weakhopf import examples as ex
from weakhopf import integrals as itg
from weakhopf.algebra import Element, invert, is_positive
from weakhopf.errors import Degenerate, NoHaar, NotPositive


def test_group_algebra_integral_space(cz3):
    L = itg.left_integral_space(cz3)
    assert L.dim == 1
    avg = np.ones(3) / 3
    assert L.contains_coords(avg.reshape(-1, 1))


def test_semidirect_integral_basis(wz2z2):
    W = wz2z2
    L = itg.left_integral_space(W)
    assert L.dim == 2
    _, basis, _ = ex.group_integrals(W)
    for h, el in basis.items():
        assert L.contains_element(el)
        itg.LeftIntegral(W, el)  # condition holds exactly


def test_antipode_swaps_left_and_right(all_instances):
    for name, W in all_instances.items():
        L = itg.left_integral_space(W)
        R = itg.right_integral_space(W)
        image = W.antipode @ L.basis
        assert la.span_equal(image, R.basis), name


def test_right_boundary_acts_by_antipode(wz2z2, wz3s3, rng):
    # a l = S(a) l for left integrals and a in the right boundary
    for W in (wz2z2, wz3s3):
        L = itg.left_integral_space(W)
        AR = W.boundary("R")
        l = Element(W.alg, L.basis @ rng.standard_normal(L.dim))
        for j in range(AR.dim):
            a = Element(W.alg, AR.basis[:, j])
            assert (a * l - W.s_apply(a) * l).norm() < 1e-9


def test_haar_formula_and_uniqueness(group_instances):
    for name, W in group_instances.items():
        hd = itg.haar(W)
        e_haar, _, lam_haar = ex.group_integrals(W)
        assert (hd.h - e_haar).norm() < 1e-12, name
        hhat_ref = Element(W.dual_alg, lam_haar.coords)
        assert (hd.hhat - hhat_ref).norm() < 1e-12, name


def test_haar_invariants(all_instances):
    for name, W in all_instances.items():
        hd = itg.haar(W)
        h = hd.h
        assert (h * h - h).norm() < 1e-9
        assert (h.star() - h).norm() < 1e-9
        assert (W.s_apply(h) - h).norm() < 1e-9
        rep = hd.modular_report()
        assert max(rep.values()) < 1e-9, (name, rep)


def test_group_modular_elements_are_scalar(group_instances):
    for name, W in group_instances.items():
        hd = itg.haar(W)
        scale = 1.0 / np.sqrt(W.group_data["G"].order)
        assert np.abs(hd.g_l.coords - scale * W.alg.unit).max() < 1e-12, name
        assert np.abs(hd.g_r.coords - scale * W.alg.unit).max() < 1e-12, name
        assert (hd.g - W.alg.one).norm() < 1e-12


def test_no_haar_for_broken_structure(cz2):
    from weakhopf.hopf import WeakHopfAlgebra
    bad = WeakHopfAlgebra(cz2.alg, cz2.cop, cz2.counit, -np.eye(2))
    with pytest.raises(NoHaar):
        itg._haar_element(bad)


def test_two_sided_integrals_are_central_multiples(wz2z2, wz3s3):
    # L & R = (A_sigma & C(A)) h
    for W in (wz2z2, wz3s3):
        hd = itg.haar(W)
        T = itg.left_integral_space(W).intersect(itg.right_integral_space(W))
        za = W.alg.center()
        for side in ("L", "R"):
            cz = W.boundary(side).intersect(za)
            span = np.array([W.alg.product_coords(cz.basis[:, j], hd.h.coords)
                             for j in range(cz.dim)]).T
            assert la.span_equal(T.basis, span)


def test_rn_derivatives(wz2z2, rng):
    W = wz2z2
    hd = itg.haar(W)
    h_int = itg.LeftIntegral(W, hd.h)
    for side in ("L", "R"):
        assert (itg.rn_derivative(h_int, side) - W.alg.one).norm() < 1e-9
        assert (itg.normalization(h_int, side) - W.alg.one).norm() < 1e-9
    # d_L(l_h) = (h, 1_G) for the canonical basis of left integrals
    _, basis, _ = ex.group_integrals(W)
    idx = W.group_data["index"]
    for h, el in basis.items():
        li = itg.LeftIntegral(W, el)
        d = itg.rn_derivative(li, "L")
        hpos = {hh: i for i, hh in enumerate(W.group_data["H"])}
        assert np.abs(d.coords - np.eye(4)[idx[(hpos[h], 0)]]).max() < 1e-9
    # rescaling by random central elements
    l = itg.random_left_integral(W, rng)
    za = W.alg.center()
    c = Element(W.alg, za.basis @ rng.standard_normal(za.dim))
    cl = itg.LeftIntegral(W, c * l.element)
    for side in ("L", "R"):
        move = W.counital("h" + side) @ (W.counital("L") @ c.coords)
        mv = Element(W.alg, move)
        assert ((cl.d_l if side == "L" else cl.d_r)
                - mv * (l.d_l if side == "L" else l.d_r)).norm() < 1e-8
        assert ((cl.n_l if side == "L" else cl.n_r)
                - mv * (l.n_l if side == "L" else l.n_r)).norm() < 1e-8


def test_n_l_is_antipode_of_n_r(wz2z2, rng):
    W = wz2z2
    for _ in range(5):
        l = itg.random_left_integral(W, rng)
        assert (l.n_l - W.s_apply(l.n_r)).norm() < 1e-9
        assert (l.n_l - W.s_inv_apply(l.n_r)).norm() < 1e-9


def test_normalizable_integrals(wz2z2, rng):
    # n_L(l)^{-1} l = n_R(l)^{-1} l and the result is normalized
    W = wz2z2
    for _ in range(5):
        l = itg.random_positive_integral(W, rng, normalized=False)
        dotl = invert(l.n_l) * l.element
        dotr = invert(l.n_r) * l.element
        assert (dotl - dotr).norm() < 1e-8
        dot = itg.LeftIntegral(W, dotl)
        assert itg.classify(dot)["normalized"]


def test_classification_examples(wz2z2):
    W = wz2z2
    hd = itg.haar(W)
    flags = itg.classify(itg.LeftIntegral(W, hd.h))
    assert flags == {"nondegenerate": True, "positive": True, "normalized": True}
    zero = itg.LeftIntegral(W, np.zeros(4))
    zflags = itg.classify(zero)
    assert not zflags["nondegenerate"]
    # nondegeneracy of sum c(h) l_h is invertibility of sum c(h)(h,1) in CH
    _, basis, _ = ex.group_integrals(W)
    l_e, l_g = basis[0], basis[1]
    degenerate = itg.LeftIntegral(W, l_e + l_g)
    assert not itg.classify(degenerate)["nondegenerate"]
    good = itg.LeftIntegral(W, 2 * l_e + l_g)
    assert itg.classify(good)["nondegenerate"]


def test_normalized_characterization(wz2z2):
    # normalized iff c(1) = 1 and sum_g c(g h g^{-1}) = 0 for h != 1
    W = wz2z2
    _, basis, _ = ex.group_integrals(W)
    l = itg.LeftIntegral(W, basis[0])
    assert itg.classify(l)["normalized"]
    l2 = itg.LeftIntegral(W, basis[0] + 0.5 * basis[1])
    assert not itg.classify(l2)["normalized"]


def test_gram_oracle_matches_derivative_positivity(all_instances, rng):
    for name, W in all_instances.items():
        for _ in range(6):
            l = itg.random_left_integral(W, rng)
            itg.classify(l)  # raises if the two oracles disagree


def test_dual_integral_group_algebra(cz3):
    W = cz3
    hd = itg.haar(W)
    lam = itg.dual_integral(itg.LeftIntegral(W, hd.h))
    # |G| delta_e as a functional on C[G]
    assert np.abs(lam.element.coords - 3.0 * np.eye(3)[0]).max() < 1e-9


def test_dual_integral_random(wz2z2, wz2_klein, rng):
    for W in (wz2z2, wz2_klein):
        for _ in range(5):
            l = itg.random_left_integral(W, rng)
            lam = itg.dual_integral(l)
            back = W.alg.right_mult_matrix(l.element.coords).T @ lam.element.coords
            assert np.abs(back - W.dual_alg.unit).max() < 1e-8
    with pytest.raises(Degenerate):
        itg.dual_integral(itg.LeftIntegral(wz2z2, np.zeros(4)))


def test_fourier_ranks(wz2z2, rng):
    W = wz2z2
    l = itg.random_left_integral(W, rng)
    l_l, l_r = itg.fourier_maps(l)
    assert np.linalg.matrix_rank(l_l) == 4
    assert np.linalg.matrix_rank(l_r) == 4
    zero = itg.LeftIntegral(W, np.zeros(4))
    zl, zr = itg.fourier_maps(zero)
    assert np.abs(zl).max() == 0 and np.abs(zr).max() == 0


def test_jones_projection(wz2z2, rng):
    W = wz2z2
    hd = itg.haar(W)
    e_h = itg.jones_projection(itg.LeftIntegral(W, hd.h))
    assert (e_h - hd.h).norm() < 1e-9
    samples = []
    for _ in range(4):
        l = itg.random_positive_integral(W, rng)
        e = itg.jones_projection(l)
        assert (e * e - e).norm() < 1e-8      # normalized -> projection
        samples.append((l, e))
    # injectivity of l -> e_l, pairwise
    for i in range(len(samples)):
        for j in range(i + 1, len(samples)):
            li, ei = samples[i]
            lj, ej = samples[j]
            if (li.element - lj.element).norm() > 1e-6:
                assert (ei - ej).norm() > 1e-8
    with pytest.raises(NotPositive):
        _, basis, _ = ex.group_integrals(W)
        bad = itg.LeftIntegral(W, basis[0] - 3 * basis[1])
        itg.jones_projection(bad)


def test_p_dual(wz2z2, pauli, rng):
    for W in (wz2z2, pauli[0]):
        for _ in range(5):
            l = itg.random_positive_integral(W, rng)
            lam = itg.p_dual(l)
            flags = itg.classify(lam)
            assert flags["positive"] and flags["nondegenerate"]
            # pairing with the projection, re-verified after the solve
            e = itg.jones_projection(l)
            _, e_r = itg.fourier_maps(itg.LeftIntegral(W, e, check=False))
            assert np.abs(e_r @ lam.element.coords - W.alg.unit).max() < 1e-10
            back = itg.p_dual(lam)
            assert (back.element - l.element).norm() < 1e-8


def test_p_dual_of_haar(wz2z2):
    # d_R of the p-dual of h inverts eps_R(g_L^2)
    W = wz2z2
    hd = itg.haar(W)
    lam = itg.p_dual(itg.LeftIntegral(W, hd.h))
    target = invert(Element(W.dual_alg,
                            W.counital("R") @ (hd.g_l * hd.g_l).coords))
    assert (lam.d_r - target).norm() < 1e-8


def test_dual_derivative_formula(wz2z2, wz2_klein, rng):
    # d_R(dual integral) = eps_R(g_L d_L(l) g_L)^{-1}
    for W in (wz2z2, wz2_klein):
        hd = itg.haar(W)
        for _ in range(5):
            l = itg.random_left_integral(W, rng)
            lam = itg.dual_integral(l)
            inner = hd.g_l * l.d_l * hd.g_l
            rhs = invert(Element(W.dual_alg, W.counital("R") @ inner.coords))
            assert (lam.d_r - rhs).norm() < 1e-7


def test_positive_transport(wz2z2, rng):
    # b = S(d) g_L is positive exactly when d is
    W = wz2z2
    hd = itg.haar(W)
    AR = W.boundary("R")
    for _ in range(10):
        c = Element(W.alg, AR.basis @ (rng.standard_normal(AR.dim)
                                       + 1j * rng.standard_normal(AR.dim)))
        d = c.star() * c + 0.05 * W.alg.one
        b = W.s_apply(d) * hd.g_l
        assert is_positive(b)
        d_bad = d - 2.5 * W.alg.one
        if not is_positive(d_bad):
            b_bad = W.s_apply(d_bad) * hd.g_l
            assert not is_positive(b_bad)


def test_integral_index_group_algebras():
    for n in (2, 3):
        W = ex.group_weak_hopf(ex.cyclic_group(n))
        hd = itg.haar(W)
        ind = itg.integral_index(itg.LeftIntegral(W, hd.h))
        assert np.abs(ind.coords - n * W.dual_alg.unit).max() < 1e-9


def test_integral_index_of_haar_dual_is_unit(all_instances):
    # Ind of the dual of h is n_R(h) = 1
    for name, W in all_instances.items():
        hd = itg.haar(W)
        h_int = itg.LeftIntegral(W, hd.h)
        assert (h_int.n_r - W.alg.one).norm() < 1e-9, name


def test_index_membership(wz2z2, rng):
    W = wz2z2
    for _ in range(5):
        l = itg.random_positive_integral(W, rng)
        ind = itg.integral_index(l)  # membership checks inside
        Wd = W.dual()
        assert Wd.boundary("R").contains_element(ind)


def test_hypercentral_transfer(wz2z2, rng):
    W = wz2z2
    l = itg.random_positive_integral(W, rng)
    out = itg.index_hypercentral_transfer(l)
    assert out is not None  # dual of this instance is pure, index is scalar
