import pytest

from chartower.catalog import build_entry, cyclic, direct
from chartower.chartable import character_table, trivial_character
from chartower.charops import restrict, stabilizer_of_character
from chartower.group import (centralizer, intersection, normalizer, pi_part,
                             subgroup_closure, sylow_subgroup)
from chartower.hallsys import (chain_replace, fixedpoint_linear, hall_system,
                               phat, qhat, replace_character, shift)
from chartower.towers import (NormalSeries, derived_cell, enumerate_towers,
                              star_data, triangular_of_tower)


def f21_series(f21):
    C7 = sylow_subgroup(f21.whole, 7)
    triv = f21.subgroup([f21.identity])
    return NormalSeries(f21.whole, [triv, C7, f21.whole], frozenset({3}))


def test_hall_system_f21(f21):
    ser = f21_series(f21)
    for t in enumerate_towers(ser):
        hs = hall_system(t)
        assert hs.A.order == 3 and hs.B.order == 7
        assert intersection(hs.A, hs.B).order == 1
        # reduction into every stabilizer level
        stab = ser.ambient
        for h, chi in enumerate(t.chars[1:], start=1):
            stab = stabilizer_of_character(stab, chi)
            a = hs.stab_chain(h, "A")
            b = hs.stab_chain(h, "B")
            assert a.order * b.order == stab.order
        # the deepest reduction is pinned at (P*, Q*)
        sd = hs.stars
        assert intersection(hs.stab_chain(ser.m, "A"), ser.terms[-1]) == \
            sd.p_star[2 * hs.tri.k]
        assert intersection(hs.stab_chain(ser.m, "B"), ser.terms[-1]) == \
            sd.q_star[2 * hs.tri.l - 1]


def test_hall_system_abelian(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    triv = c21.subgroup([c21.identity])
    ser = NormalSeries(G, [triv, C7, G], frozenset({3}))
    t = enumerate_towers(ser)[0]
    hs = hall_system(t)
    assert hs.A == sylow_subgroup(G, 3)
    assert hs.B == C7


def test_qhat_anchor_equation(f21):
    ser = f21_series(f21)
    for t in enumerate_towers(ser)[:4]:
        hs = hall_system(t)
        hd = qhat(hs)
        sd = hs.stars
        anchor = normalizer(hs.stab_chain(2, "B"), sd.p_star[2])
        assert hd.anchored == anchor
        assert all(hd.clauses.values())


def test_qhat_even_top_is_cell(f21):
    """m = 2k = n: Q-hat(beta_{2k-1,2k}) = Q_{2k-1,2k}."""
    ser = f21_series(f21)
    for t in enumerate_towers(ser)[:4]:
        hs = hall_system(t)
        hd = qhat(hs)
        cell_grp, _ = derived_cell(hs.tri, "q", hs.tri.k, hs.tri.k)
        assert hd.anchored == cell_grp


def test_phat_anchor(f21):
    ser = f21_series(f21)
    for t in enumerate_towers(ser)[:4]:
        hs = hall_system(t)
        pd = phat(hs)
        sd = hs.stars
        anchor = normalizer(hs.stab_chain(2 * hs.tri.l - 1, "A"),
                            sd.q_star[2 * hs.tri.l - 1])
        assert pd.anchored == anchor


def test_qhat_pi_split():
    g = build_entry("3^(1+2)xC5")
    G = g.whole
    C5 = sylow_subgroup(G, 5)
    triv = g.subgroup([g.identity])
    ser = NormalSeries(G, [triv, C5, G], frozenset({3}))
    t = enumerate_towers(ser)[0]
    hs = hall_system(t)
    hd = qhat(hs)
    assert hd.hat.order == 5
    assert all(hd.clauses.values())


def test_shift_c7c9(c7xc9):
    g = c7xc9
    iy = next(m for m in range(g.order) if g.element_orders[m] == 9)
    x = next(m for m in range(g.order) if g.element_orders[m] == 7)
    C3 = subgroup_closure(g, [g.power(iy, 3)])
    C21 = subgroup_closure(g, [x, g.power(iy, 3)])
    triv = g.subgroup([g.identity])
    ser = NormalSeries(g.whole, [triv, C3, C21, g.whole], frozenset({7}))
    towers = enumerate_towers(ser)
    t = towers[-1]
    tri = triangular_of_tower(t)
    sh = shift(t, tri)
    assert sh.series.terms[1].order == 1
    assert sh.series.terms[2] == tri.P[2]
    assert sh.tower.chars[2] == tri.alpha[2]
    # star data unchanged where it should be
    sd_old = star_data(tri, t)
    sd_new = star_data(sh.tri, sh.tower)
    assert sd_new.p_star[2] == sd_old.p_star[2]
    assert sd_new.alpha_star[2] == sd_old.alpha_star[2]
    # Q*^s drops the old Q_1: here Q_1 <= Q_3 so products agree
    assert sd_new.q_star[3] <= sd_old.q_star[3]


def test_shift_requires_split(f21):
    ser = f21_series(f21)
    t = enumerate_towers(ser)[0]   # chi_1 = 1: invariant, but G_2 = F21
    with pytest.raises(ValueError):
        shift(t)


def test_shift_requires_invariance(f21):
    ser = f21_series(f21)
    t = next(t for t in enumerate_towers(ser)
             if t.chars[1].values != trivial_character(ser.terms[1]).values)
    with pytest.raises(ValueError):
        shift(t)


# ---------------------------------------------------------------------------
# replacements
# ---------------------------------------------------------------------------

def test_fixedpoint_linear_degenerate():
    g = cyclic(3)
    triv = g.subgroup([g.identity])
    lam = fixedpoint_linear(g.whole, triv, triv, g.whole)
    assert lam.degree_int() == 1


def test_fixedpoint_linear_f21(f21, f21_c7):
    P = sylow_subgroup(f21.whole, 3)
    triv = f21.subgroup([f21.identity])
    lam = fixedpoint_linear(triv, P, f21_c7, f21.whole)
    assert lam.values != trivial_character(f21_c7).values
    assert centralizer(f21_c7, P).order == 1


def test_fixedpoint_linear_with_central_q():
    from chartower.catalog import matrix_semidirect
    import numpy as np
    core = matrix_semidirect(7, 2, [np.array([[2, 0], [0, 4]])], cyclic(3))
    g = direct(core, cyclic(7))
    G = g.whole
    P = sylow_subgroup(G, 3)
    S7 = sylow_subgroup(G, 7)
    # Q1 = the acted C7 x C7, Q = the central C7 direct factor
    Q1 = next(N for N in
              __import__("chartower.group", fromlist=["normal_subgroups_in"])
              .normal_subgroups_in(G, S7)
              if N.order == 49 and centralizer(P, N).order == 1)
    Q = next(N for N in
             __import__("chartower.group", fromlist=["normal_subgroups_in"])
             .normal_subgroups_in(G, S7)
             if N.order == 7 and centralizer(G, N) == G)
    lam = fixedpoint_linear(Q, P, Q1, G)
    QP = subgroup_closure(g, list(Q.members) + list(P.members))
    assert stabilizer_of_character(QP, lam) == Q


def test_replace_character_centralizing(f21, f21_c7):
    """P centralizes Q1 (take P = 1): beta itself is admissible."""
    triv = f21.subgroup([f21.identity])
    beta = character_table(f21_c7)[2]
    res = replace_character(f21_c7, f21_c7, triv, beta)
    res.verify(triv, f21_c7)


def test_replace_character_fpf(f21, f21_c7):
    P = sylow_subgroup(f21.whole, 3)
    beta = character_table(f21_c7)[1]
    res = replace_character(f21_c7, f21_c7, P, beta)
    res.verify(P, f21_c7)
    assert stabilizer_of_character(P, res.replaced) == \
        stabilizer_of_character(P, beta)


def test_replace_character_trivial_q1(f21):
    triv = f21.subgroup([f21.identity])
    P = sylow_subgroup(f21.whole, 3)
    res = replace_character(triv, triv, P, trivial_character(triv))
    assert res.replaced.degree_int() == 1


def test_replace_character_q_chain(c7xc9):
    g = c7xc9
    iy = next(m for m in range(g.order) if g.element_orders[m] == 9)
    Q1 = subgroup_closure(g, [g.power(iy, 3)])
    Q2 = sylow_subgroup(g.whole, 3)
    P = sylow_subgroup(g.whole, 7)
    beta = character_table(Q1)[1]
    res = replace_character(Q1, Q2, P, beta)
    res.verify(P, Q2)


def test_chain_replace_n1_matches_direct_search(f21, f21_c7):
    P = sylow_subgroup(f21.whole, 3)
    out = chain_replace([f21_c7, f21_c7], [P])
    b1, b2 = out
    assert restrict(b2, f21_c7) == b1
    K = centralizer(P, f21_c7)
    QP = subgroup_closure(f21, list(f21_c7.members) + list(P.members))
    target = subgroup_closure(f21, list(f21_c7.members) + list(K.members))
    assert stabilizer_of_character(QP, b1) == target
    # direct lemma-C-style search agrees on the candidate set
    direct_hits = [lam for lam in character_table(f21_c7).linears()
                   if stabilizer_of_character(QP, lam) == target]
    assert b1 in direct_hits


def test_chain_replace_centralizing(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    C3 = sylow_subgroup(G, 3)
    out = chain_replace([C7, C7], [C3])
    assert all(c.degree_int() == 1 for c in out)


def test_chain_replace_two_steps(c7xc9):
    g = c7xc9
    iy = next(m for m in range(g.order) if g.element_orders[m] == 9)
    Q1 = subgroup_closure(g, [g.power(iy, 3)])
    Q2 = sylow_subgroup(g.whole, 3)
    P1 = sylow_subgroup(g.whole, 7)
    P2 = g.subgroup([g.identity])
    out = chain_replace([Q1, Q2, Q2], [P1, P2])
    assert restrict(out[2], Q1) == out[0]
