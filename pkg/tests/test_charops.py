from math import gcd

import pytest

from chartower.catalog import build_entry
from chartower.chartable import character_table, inner_product, \
    trivial_character
from chartower.charops import (canonical_extension, clifford,
                               clifford_correspondent, conjugate_character,
                               det_character, det_order, extensions_of,
                               gallagher, induce, inflate, irr_above,
                               kernel_of, lies_above, quotient_cached,
                               restrict, stabilizer_of_character)
from chartower.cyclotomic import ONE, ZERO
from chartower.group import (center, is_normal, product_set,
                             subgroup_closure, sylow_subgroup)


def test_induce_from_whole(f21):
    chi = character_table(f21.whole)[3]
    assert induce(f21.whole, f21.whole, chi) == chi


def test_induce_nontrivial_linear(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    ind = induce(f21.whole, f21_c7, lam)
    assert ind.degree_int() == 3 and ind.is_irreducible()


def test_induce_abelian_splits(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    lam = character_table(C7)[1]
    ind = induce(G, C7, lam)
    from chartower.chartable import decompose
    m = decompose(ind, character_table(G))
    assert sum(m) == 3 and set(m) <= {0, 1}


def test_restrict_trivial(f21, f21_c7):
    t = trivial_character(f21.whole)
    assert restrict(t, f21_c7) == trivial_character(f21_c7)


def test_restrict_whole_is_identity(f21):
    chi = character_table(f21.whole)[3]
    assert restrict(chi, f21.whole) == chi


def test_restrict_clifford_orbit(f21, f21_c7):
    chi = [c for c in character_table(f21.whole) if c.degree_int() == 3][0]
    r = restrict(chi, f21_c7)
    tab7 = character_table(f21_c7)
    mults = [inner_product(r, lam) for lam in tab7]
    assert sorted(m.as_int() for m in mults) == [0, 0, 0, 0, 1, 1, 1]


def test_frobenius_reciprocity_sampled(f21, f21_c7):
    for chi in character_table(f21.whole):
        for theta in character_table(f21_c7):
            lhs = inner_product(restrict(chi, f21_c7), theta)
            rhs = inner_product(chi, induce(f21.whole, f21_c7, theta))
            assert lhs == rhs


def test_kernel_trivial_char(f21):
    assert kernel_of(trivial_character(f21.whole)).order == 21


def test_kernel_faithful_linear(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    assert kernel_of(lam).order == 1


def test_det_order_trivial(f21):
    assert det_order(trivial_character(f21.whole)) == 1


def test_det_order_linear_is_value_order():
    g = build_entry("F21")
    C3 = sylow_subgroup(g.whole, 3)
    lam = character_table(C3)[1]
    assert det_order(lam) == 3
    assert det_character(lam) == lam


def test_det_of_degree3(f21):
    chi = [c for c in character_table(f21.whole) if c.degree_int() == 3][0]
    det = det_character(chi)
    assert det.degree_int() == 1
    # det is a genuine linear character: multiplicative on the table
    assert det_order(chi) in (1, 3)


def test_canonical_extension_direct_product(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    chi = character_table(C7)[1]
    ce = canonical_extension(G, C7, chi)
    assert restrict(ce.extension, C7) == chi
    assert gcd(ce.det_order_ext, 3) == 1
    assert ce.det_order_ext == det_order(chi)
    # uniqueness by enumeration: exactly one of the three extensions
    exts = extensions_of(G, C7, chi)
    assert len(exts) == 3
    good = [e for e in exts if gcd(det_order(e), 3) == 1]
    assert good == [ce.extension]


def test_canonical_extension_trivial_base(f21, f21_c7):
    ce = canonical_extension(f21.whole, f21_c7, trivial_character(f21_c7))
    assert ce.extension == trivial_character(f21.whole)


def test_canonical_extension_needs_invariance(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    with pytest.raises(ValueError):
        canonical_extension(f21.whole, f21_c7, lam)


def test_canonical_extension_degree3():
    g = build_entry("3^(1+2)xC5")
    G = g.whole
    E = sylow_subgroup(G, 3)
    chi = [c for c in character_table(E) if c.degree_int() == 3][0]
    ce = canonical_extension(G, E, chi)
    assert restrict(ce.extension, E) == chi
    assert gcd(ce.det_order_ext, 5) == 1


def test_gallagher_whole(f21):
    chi = character_table(f21.whole)[3]
    out = gallagher(f21.whole, f21.whole, chi)
    assert len(out) == 1


def test_gallagher_c21(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    chi = character_table(C7)[1]
    psi = canonical_extension(G, C7, chi).extension
    out = gallagher(G, C7, psi)
    assert len(out) == 3
    assert all(v.degree_int() == 1 for v in out.values())


def test_gallagher_deg3():
    g = build_entry("3^(1+2)xC5")
    G = g.whole
    E = sylow_subgroup(G, 3)
    chi = [c for c in character_table(E) if c.degree_int() == 3][0]
    psi = canonical_extension(G, E, chi).extension
    out = gallagher(G, E, psi)
    assert len(out) == 5
    assert all(v.is_irreducible() for v in out.values())


def test_gallagher_cardinality_is_quotient_irr_count(f21, f21_c7):
    # |Irr(G|chi)| = |Irr(G/N)| whenever chi extends
    G = f21.whole
    chi = trivial_character(f21_c7)
    psi = trivial_character(G)
    out = gallagher(G, f21_c7, psi)
    quot, _ = quotient_cached(G, f21_c7)
    assert len(out) == len(character_table(quot))
    assert len(irr_above(G, f21_c7, chi)) == len(out)


def test_clifford_invariant_theta(f21, f21_c7):
    data = clifford(f21.whole, f21_c7, trivial_character(f21_c7))
    assert data.stabilizer == f21.whole


def test_clifford_f21(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    data = clifford(f21.whole, f21_c7, lam)
    assert data.stabilizer == f21_c7
    ind = induce(f21.whole, f21_c7, lam)
    assert clifford_correspondent(f21.whole, f21_c7, lam, ind) == lam


def test_clifford_multiplicity_structure(f21, f21_c7):
    # chi|_N = e * sum over orbit, |orbit| * e * theta(1) = chi(1)
    lam = character_table(f21_c7)[1]
    chi = induce(f21.whole, f21_c7, lam)
    r = restrict(chi, f21_c7)
    mults = [inner_product(r, t).as_int() for t in character_table(f21_c7)]
    nonzero = [m for m in mults if m]
    assert len(set(nonzero)) == 1
    e = nonzero[0]
    assert len(nonzero) * e * lam.degree_int() == chi.degree_int()


def test_clifford_abelian_stabilizer(c21):
    G = c21.whole
    C7 = sylow_subgroup(G, 7)
    lam = character_table(C7)[1]
    data = clifford(G, C7, lam)
    assert data.stabilizer == G


def test_irr_above_examples(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    assert [c.degree_int() for c in irr_above(f21.whole, f21_c7, lam)] == [3]
    triv = trivial_character(f21_c7)
    assert [c.degree_int() for c in irr_above(f21.whole, f21_c7, triv)] == [1, 1, 1]
    chi = character_table(f21.whole)[3]
    assert irr_above(f21.whole, f21.whole, chi) == [chi]


def test_stabilizer_and_conjugate(f21, f21_c7):
    lam = character_table(f21_c7)[1]
    stab = stabilizer_of_character(f21.whole, lam)
    assert stab == f21_c7
    g = next(m for m in f21.whole.members if m not in f21_c7)
    conj = conjugate_character(lam, g)
    assert conj != lam and conj.sub == f21_c7


# ---------------------------------------------------------------------------
# the composite product identities
# ---------------------------------------------------------------------------

def test_prop_induced_canonical_extensions_agree():
    """For G = N*K with H = N intersect K, theta K-invariant inducing a
    G-invariant irreducible theta^N: (theta^e)^G = (theta^N)^e."""
    from chartower.group import intersection, normal_subgroups_in
    g = build_entry("3^(1+2)xC5")
    G = g.whole
    N = sylow_subgroup(G, 3)          # normal, |G/N| = 5 coprime
    S = next(M for M in normal_subgroups_in(G, N) if M.order == 9)
    K = subgroup_closure(g, list(S.members) +
                         list(sylow_subgroup(G, 5).members))
    H = intersection(N, K)
    assert H == S and product_set(N, K).order == G.order
    checked = 0
    for theta in character_table(H):
        if stabilizer_of_character(K, theta).order != K.order:
            continue
        indN = induce(N, H, theta)
        if not indN.is_irreducible():
            continue
        if stabilizer_of_character(G, indN).order != G.order:
            continue
        lhs = induce(G, K, canonical_extension(K, H, theta).extension)
        rhs = canonical_extension(G, N, indN).extension
        assert lhs == rhs
        checked += 1
    assert checked >= 1


def test_product_induction_identity(f21, f21_c7):
    """(theta|_H . Psi)^G = theta . Psi^G for characters theta of G, Psi of H."""
    G = f21.whole
    H = f21_c7
    for theta in character_table(G):
        for Psi in character_table(H)[:3]:
            lhs = induce(G, H, restrict(theta, H) * Psi)
            rhs = theta * induce(G, H, Psi)
            assert lhs == rhs


def test_factorization_over_coprime_stabilizer():
    """H(theta) = N*A coprime: every member of Irr(H(theta)|theta) is
    gamma . theta^e."""
    g = build_entry("F21")
    G = g.whole
    N = sylow_subgroup(G, 7)
    theta = trivial_character(N)
    # H = G: H(theta) = G = N*A with A a Sylow 3
    from chartower.towers import _outer_product_char
    A = sylow_subgroup(G, 3)
    te = canonical_extension(G, N, theta).extension
    above = irr_above(G, N, theta)
    prods = []
    for gamma in character_table(A):
        prods.append(_outer_product_char(G, N, A, gamma, te))
    assert {p.values for p in prods} == {c.values for c in above}
