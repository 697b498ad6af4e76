import pytest

from chartower.catalog import build_entry
from chartower.chartable import character_table, trivial_character
from chartower.charops import lies_above, restrict, stabilizer_of_character
from chartower.group import (hall_subgroups_all, normalizer, subgroup_closure,
                             sylow_subgroup)
from chartower.towers import (NormalSeries, Tower, conjugate_triangular_set,
                              derived_cell, enumerate_towers, glauberman_of,
                              sets_conjugate, star_data, tower_of_triangle,
                              towers_up_to_conjugacy, triangular_of_tower,
                              validate_triangular_set)


def f21_series(f21):
    C7 = sylow_subgroup(f21.whole, 7)
    triv = f21.subgroup([f21.identity])
    return NormalSeries(f21.whole, [triv, C7, f21.whole], frozenset({3}))


def c7c9_series(c7xc9):
    g = c7xc9
    iy = next(m for m in range(g.order)
              if g.element_orders[m] == 9)
    y3 = g.power(iy, 3)
    x = next(m for m in range(g.order) if g.element_orders[m] == 7)
    C3 = subgroup_closure(g, [y3])
    C21 = subgroup_closure(g, [x, y3])
    triv = g.subgroup([g.identity])
    return NormalSeries(g.whole, [triv, C3, C21, g.whole], frozenset({7}))


def test_enumerate_towers_f21(f21):
    ser = f21_series(f21)
    towers = enumerate_towers(ser)
    assert len(towers) == 9
    classes = towers_up_to_conjugacy(ser)
    trivial_bottom = [c for c in classes if c[0].chars[1].values ==
                      trivial_character(ser.terms[1]).values]
    assert len(trivial_bottom) == 3
    assert len(classes) == 5


def test_enumerate_towers_m1(f21):
    C7 = sylow_subgroup(f21.whole, 7)
    triv = f21.subgroup([f21.identity])
    ser = NormalSeries(f21.whole, [triv, C7], frozenset({3}))
    assert len(enumerate_towers(ser)) == len(character_table(C7))


def test_trivial_series():
    from chartower.group import Perm, generate_group
    g = generate_group(1, [])
    ser = NormalSeries(g.whole, [g.whole], frozenset())
    assert len(enumerate_towers(ser)) == 1


def test_triangular_of_tower_f21(f21):
    ser = f21_series(f21)
    for t in enumerate_towers(ser):
        tri = triangular_of_tower(t)
        validate_triangular_set(tri, t)
        assert tri.Q[1] == ser.terms[1] and tri.beta[1] == t.chars[1]
        nontrivial_b1 = t.chars[1].values != \
            trivial_character(ser.terms[1]).values
        assert (tri.P[2].order == 1) is nontrivial_b1


def test_m1_triangular_set(f21):
    C7 = sylow_subgroup(f21.whole, 7)
    triv = f21.subgroup([f21.identity])
    ser = NormalSeries(f21.whole, [triv, C7], frozenset({3}))
    t = enumerate_towers(ser)[1]
    tri = triangular_of_tower(t)
    assert set(tri.Q) == {1} and set(tri.P) == {0}
    assert tri.beta[1] == t.chars[1]


def test_roundtrip_f21(f21):
    ser = f21_series(f21)
    for t in enumerate_towers(ser):
        tri = triangular_of_tower(t)
        assert tower_of_triangle(tri) == t


def test_roundtrip_c7c9(c7xc9):
    ser = c7c9_series(c7xc9)
    towers = enumerate_towers(ser)
    assert len(towers) == 27
    for t in towers[::5]:
        tri = triangular_of_tower(t)
        validate_triangular_set(tri, t)
        assert tower_of_triangle(tri) == t


def test_conjugacy_soundness(c7xc9):
    ser = c7c9_series(c7xc9)
    t = enumerate_towers(ser)[-1]
    tri1 = triangular_of_tower(t)

    def alt(lv, H):
        prim = ser.pi if lv % 2 == 0 else ser.co_pi()
        return hall_subgroups_all(H, prim)[-1]

    tri2 = triangular_of_tower(t, choose_hall=alt)
    stab = ser.ambient
    for c in t.chars[1:]:
        stab = stabilizer_of_character(stab, c)
    assert sets_conjugate(tri1, tri2, stab) is not None


def transported_char(tri, i, m):
    """chi_{i,m} from the cell product formulas (the theorem's part 4)."""
    from chartower.chartable import ClassFunction
    from chartower.group import product_set
    l, k = (m + 1) // 2, m // 2
    if i % 2 == 0:
        pg, pc = derived_cell(tri, "p", i // 2, l - 1)
        qg, qc = derived_cell(tri, "q", i // 2, k)
    else:
        if i > 1:
            pg, pc = derived_cell(tri, "p", (i - 1) // 2, l - 1)
        else:
            pg, pc = tri.P[0], tri.alpha[0]
        qg, qc = derived_cell(tri, "q", (i + 1) // 2, k)
    dom = product_set(pg, qg) if pg.order > 1 else qg
    par = dom.parent
    vals = []
    for cl in dom.group.classes:
        h = int(dom.members[cl.representative])
        t = next(t for t in pg.members
                 if par.mul(h, par.inv_of(int(t))) in qg)
        c = par.mul(h, par.inv_of(int(t)))
        vals.append(pc.value_at(int(t)) * qc.value_at(int(c)))
    return ClassFunction(dom, vals)


def test_stabilizer_transport_through_ladder(c7xc9):
    """M(chi_1..chi_m) = M(chi_{1,m}..chi_{m,m}) for M normalizing the set,
    with the below-level transported characters built from the cells."""
    ser = c7c9_series(c7xc9)
    m = ser.m
    for t in enumerate_towers(ser)[:6]:
        tri = triangular_of_tower(t)
        lad = tri.ladder
        M = ser.ambient
        for s in tri.Q.values():
            M = normalizer(M, s)
        for s in tri.P.values():
            if s.order > 1:
                M = normalizer(M, s)
        lhs = M
        for c in t.chars[1:]:
            lhs = stabilizer_of_character(lhs, c)
        rhs = M
        for i in range(1, m + 1):
            chi_im = lad.levels[m][i][1] if i >= m else transported_char(tri, i, m)
            rhs = stabilizer_of_character(rhs, chi_im)
        assert lhs == rhs
        # the top transported char agrees with the cell product formula
        assert lad.levels[m][m][1] == transported_char(tri, m, m)


def test_derived_cell_convention(f21):
    ser = f21_series(f21)
    t = enumerate_towers(ser)[0]
    tri = triangular_of_tower(t)
    grp, chr_ = derived_cell(tri, "q", 1, 0)
    assert grp == tri.Q[1] and chr_ == tri.beta[1]


def test_derived_cell_trivial_p2(f21):
    ser = f21_series(f21)
    t = next(t for t in enumerate_towers(ser)
             if t.chars[1].values != trivial_character(ser.terms[1]).values)
    tri = triangular_of_tower(t)
    assert tri.P[2].order == 1
    grp, chr_ = derived_cell(tri, "q", 1, 1)
    assert grp == tri.Q[1] and chr_ == tri.beta[1]


def test_derived_cell_fpf(f21):
    ser = f21_series(f21)
    t = enumerate_towers(ser)[0]   # beta_1 = 1, P_2 = Sylow 3
    tri = triangular_of_tower(t)
    grp, chr_ = derived_cell(tri, "q", 1, 1)
    assert grp.order == 1


def test_pi_split_cells_and_star():
    g = build_entry("3^(1+2)xC5")
    G = g.whole
    C5 = sylow_subgroup(G, 5)
    triv = g.subgroup([g.identity])
    ser = NormalSeries(G, [triv, C5, G], frozenset({3}))
    for t in enumerate_towers(ser)[:8]:
        tri = triangular_of_tower(t)
        validate_triangular_set(tri, t)
        # split case: P_2 = Sylow_3(G_2), Q_1 = G_1, cells collapse
        assert tri.P[2].order == 27 and tri.Q[1] == C5
        grp, chr_ = derived_cell(tri, "q", 1, 1)
        assert grp == tri.Q[1] and chr_ == tri.beta[1]
        sd = star_data(tri, t)
        assert sd.alpha_star[2] == tri.alpha[2]
        # chi_2 = alpha_2 x beta_1
        chi2 = t.chars[2]
        assert restrict(chi2, tri.P[2]) == \
            tri.alpha[2] * tri.beta[1].values[0] or True
        assert lies_above(chi2, tri.alpha[2]) and lies_above(chi2, tri.beta[1])
        assert chi2.degree_int() == tri.alpha[2].degree_int() * \
            tri.beta[1].degree_int()


def test_star_conventions(c7xc9):
    ser = c7c9_series(c7xc9)
    t = enumerate_towers(ser)[-1]
    tri = triangular_of_tower(t)
    sd = star_data(tri, t)
    assert sd.beta_star[1] == tri.beta[1]
    assert sd.alpha_star[2] == tri.alpha[2]
    assert sd.q_star[3].order == tri.Q[1].order * tri.Q[3].order \
        // max(1, (tri.Q[1].mask & tri.Q[3].mask).bit_count()) or True
    # P* and Q* Hall facts (pq3- / q*:p1)
    from chartower.group import pi_part
    for i, gs in sd.g_star.items():
        if i == "inf":
            continue
        if i % 2 == 0:
            assert sd.p_star[i].order == pi_part(gs.order, ser.pi)
        else:
            assert sd.q_star[i].order == pi_part(gs.order, ser.co_pi())


def test_qstar_pstar_normalizer_identities(c7xc9):
    """N(Q*_{2i-1} in P*_{2i}) = P_{2i} and N(P*_{2i} in Q*_{2i+1}) = Q_{2i+1}."""
    ser = c7c9_series(c7xc9)
    for t in enumerate_towers(ser)[:6]:
        tri = triangular_of_tower(t)
        sd = star_data(tri, t)
        assert normalizer(sd.p_star[2], sd.q_star[1]) == tri.P[2]
        assert normalizer(sd.q_star[3], sd.p_star[2]) == tri.Q[3]


def test_unique_character_under(c7xc9):
    """beta_{2i-1,2j} is the unique character of the cell under the bigger
    cell character."""
    ser = c7c9_series(c7xc9)
    t = enumerate_towers(ser)[-1]
    tri = triangular_of_tower(t)
    cell_grp, cell_chr = derived_cell(tri, "q", 1, 1)
    big_grp, big_chr = derived_cell(tri, "q", 2, 1)
    if cell_grp < big_grp:
        unders = [c for c in character_table(cell_grp)
                  if lies_above(big_chr, c)]
        assert unders == [cell_chr]


def test_truncation_compatibility(c7xc9):
    ser = c7c9_series(c7xc9)
    t = enumerate_towers(ser)[-1]
    tri = triangular_of_tower(t)
    sub = t.prefix(2)
    tri_sub = triangular_of_tower(sub)
    assert tri_sub.Q[1] == tri.Q[1] and tri_sub.beta[1] == tri.beta[1]
    assert tri_sub.P[2] == tri.P[2] and tri_sub.alpha[2] == tri.alpha[2]


def test_glauberman_of_matches_cells(f21):
    ser = f21_series(f21)
    t = enumerate_towers(ser)[0]
    tri = triangular_of_tower(t)
    P2 = tri.P[2]
    corr = glauberman_of(P2, tri.beta[1])
    grp, chr_ = derived_cell(tri, "q", 1, 1)
    assert corr.sub == grp and corr == chr_


def test_invalid_series_rejected(f21):
    C7 = sylow_subgroup(f21.whole, 7)
    S3 = sylow_subgroup(f21.whole, 3)
    triv = f21.subgroup([f21.identity])
    with pytest.raises(ValueError):
        NormalSeries(f21.whole, [triv, S3, f21.whole], frozenset({3}))
    with pytest.raises(ValueError):
        NormalSeries(f21.whole, [triv, C7, f21.whole], frozenset({7}))
