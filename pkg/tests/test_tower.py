import numpy as np
import pytest

import weakhopf._linalg as la
from weakhopf import crossed as cr
from weakhopf import examples as ex
from weakhopf import modules as mo
from weakhopf import tower as tw
from weakhopf.errors import DimensionBudgetExceeded


def test_canonical_seed_dims(cz2):
    T = tw.build_tower(ex.canonical_dual_module(cz2), 3)
    assert T.dims() == [1, 2, 4, 8, 16]
    assert tw.depth2_check(T)


def test_m2_seed_dims(m2_action):
    T = tw.build_tower(m2_action[1], 2)
    assert T.dims() == [2, 4, 8, 16]
    assert tw.depth2_check(T)


def test_depth_zero(m2_action):
    T = tw.build_tower(m2_action[1], 0)
    assert T.dims() == [2, 4]


def test_budget(m2_action):
    with pytest.raises(DimensionBudgetExceeded):
        tw.build_tower(m2_action[1], 3, budget=30)


def test_commutant_table_regular(m2_action):
    T = tw.build_tower(m2_action[1], 2)
    rep = tw.commutant_table(T)
    assert rep["regular"]
    assert rep["n_commutant_dims"] == [2, 4, 8]
    assert rep["center_dims"] == [1, 2, 1]
    assert all(rep["regular_table"].values())
    assert len(set(rep["joint_center_dims"])) == 1


def test_commutant_table_pauli(pauli):
    T = tw.build_tower(pauli[1], 1)
    rep = tw.commutant_table(T)
    assert rep["regular"]
    assert rep["n_commutant_dims"] == [4, 16]
    # factor at every level: pure algebra acting outerly on a factor
    assert rep["center_dims"] == [1, 1]


def test_basic_construction_m2(m2_action):
    rep = tw.basic_construction_check(m2_action[1])
    assert rep["galois"]
    assert rep["generated_dim"] == rep["crossed_dim"] == 8
    assert rep["index_gap_norm"] < 1e-9
    assert (rep["index"] - 2 * m2_action[1].target.one).norm() < 1e-9


def test_basic_construction_collapsed_strict_inequality(collapsed_action):
    rep = tw.basic_construction_check(collapsed_action[1])
    assert not rep["galois"]
    assert rep["generated_dim"] == rep["image_dim"] < rep["crossed_dim"]
    assert rep["index_gap_norm"] > 1e-6
    from weakhopf.algebra import is_positive
    gap = rep["index_bound"] - rep["index"]
    assert is_positive(gap + 1e-12 * rep["index"].parent.one)


def test_trivial_acting_algebra_collapses():
    W = ex.trivial_weak_hopf()
    M, _, _ = ex.matrix_algebra(2)
    act = np.eye(M.dim, dtype=complex)[np.newaxis, :, :]
    MA = mo.make_module_algebra(W, M, act)
    rep = tw.basic_construction_check(MA)
    assert rep["crossed_dim"] == M.dim
    assert rep["galois"]
    hd = W.haar()
    assert (hd.h - W.alg.one).norm() < 1e-12     # e = 1, the triple collapses


def test_regularity_propagates(m2_action, pauli):
    # the dual action on M x A is regular for every regular seed
    for _, MA in (m2_action, pauli):
        assert mo.is_regular(MA)
        X = cr.crossed_product(MA)
        dual_mod = cr.dual_action(X)
        assert mo.is_regular(dual_mod)


def test_outer_factor_tower(pauli):
    # pure algebra, outer on a factor: the crossed product is a factor,
    # the dual is pure, and the dual action is outer
    W, MA = pauli
    from weakhopf.hopf import is_pure
    assert is_pure(W)
    assert MA.target.center().dim == 1
    assert mo.is_outer(MA)
    X = cr.crossed_product(MA)
    assert X.algebra.center().dim == 1
    assert is_pure(W.dual())
    assert mo.is_outer(X.as_module)


def test_jones_relation_for_random_integrals(m2_action, rng):
    # e_l x e_l = E_l(x) e_l inside M x A for positive normalized
    # nondegenerate integrals
    from weakhopf import integrals as itg
    W, MA = m2_action
    M = MA.target
    X = cr.crossed_product(MA)
    XA = X.algebra
    for _ in range(3):
        l = itg.random_positive_integral(W, rng)
        e = X.embed_a @ itg.jones_projection(l).coords
        E = mo.cond_expectation(MA, l)
        for p in range(M.dim):
            x = X.embed_m[:, p]
            lhs = XA.product_coords(XA.product_coords(e, x), e)
            ex_ = X.embed_m @ E.table[:, p]
            assert np.abs(lhs - XA.product_coords(ex_, e)).max() < 1e-8
            assert np.abs(lhs - XA.product_coords(e, ex_)).max() < 1e-8


def test_derived_tower_matches_alternating_pattern(m2_action):
    # N' & M_i dims follow |A_L|, |A|, |A|^2/|A_L|
    T = tw.build_tower(m2_action[1], 2)
    rep = tw.commutant_table(T)
    assert rep["derived_dims_expected"] == [2, 4, 8]


def test_tower_level_basic_construction(m2_action):
    T = tw.build_tower(m2_action[1], 2)
    rep0 = T.basic_construction(0)
    assert rep0["galois"] and rep0["crossed_dim"] == 8
    rep1 = T.basic_construction(1)
    assert rep1["galois"] and rep1["crossed_dim"] == 16


def test_jones_relation_at_higher_level(m2_action, rng):
    # the Jones relation with a random positive normalized integral of the
    # dual, one level up the tower
    from weakhopf import integrals as itg
    T = tw.build_tower(m2_action[1], 2)
    MA1 = T.levels[2].module            # dual algebra acting on M x A
    X2 = T.levels[3].crossed
    XA2 = X2.algebra
    W1 = MA1.hopf
    l = itg.random_positive_integral(W1, rng)
    e = X2.embed_a @ itg.jones_projection(l).coords
    E = mo.cond_expectation(MA1, l)
    for p in range(MA1.target.dim):
        x = X2.embed_m[:, p]
        lhs = XA2.product_coords(XA2.product_coords(e, x), e)
        ex_ = X2.embed_m @ E.table[:, p]
        assert np.abs(lhs - XA2.product_coords(ex_, e)).max() < 1e-9
