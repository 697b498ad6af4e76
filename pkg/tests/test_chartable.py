import pytest

from chartower.chartable import (character_table, decompose, inner_product,
                                 regular_character, trivial_character)
from chartower.cyclotomic import ONE, ZERO, root_of_unity
from chartower.group import Perm, generate_group, sylow_subgroup


def test_c3_table():
    g = generate_group(3, [Perm([1, 2, 0])])
    table = character_table(g.whole)
    assert table.degrees == [1, 1, 1]
    values = {v for chi in table for v in chi.values}
    z = root_of_unity(3)
    assert values <= {ONE, z, z * z, -ONE - z}  # zeta3^2 = -1-zeta3


def test_f21_degrees(f21):
    table = character_table(f21.whole)
    assert table.degrees == [1, 1, 1, 3, 3]
    table.verify()


def test_ext27_degrees(ext27):
    table = character_table(ext27.whole)
    assert table.degrees == [1] * 9 + [3, 3]
    table.verify()


def test_abelian_c21_table(c21):
    table = character_table(c21.whole)
    assert table.degrees == [1] * 21
    table.verify()


def test_first_row_trivial(f21):
    table = character_table(f21.whole)
    assert table[0] == trivial_character(f21.whole)


def test_identity_values_are_integers(f21, ext27):
    for g in (f21, ext27):
        for chi in character_table(g.whole):
            assert chi.values[0].is_integer()


def test_values_in_exponent_field(f21):
    e = f21.exponent
    for chi in character_table(f21.whole):
        for v in chi.values:
            assert e % v.n == 0


def test_inner_product_orthonormal(f21):
    table = character_table(f21.whole)
    for i, a in enumerate(table):
        for j, b in enumerate(table):
            assert inner_product(a, b) == (ONE if i == j else ZERO)


def test_inner_product_trivial(f21):
    t = trivial_character(f21.whole)
    assert inner_product(t, t) == ONE


def test_regular_character_decomposition(f21):
    table = character_table(f21.whole)
    reg = regular_character(f21.whole)
    assert decompose(reg, table) == table.degrees
    for chi in table:
        assert inner_product(reg, chi) == chi.values[0]


def test_decompose_trivial(f21):
    table = character_table(f21.whole)
    assert decompose(table[0], table) == [1, 0, 0, 0, 0]


def test_decompose_induced_from_c7(f21):
    from chartower.charops import induce
    C7 = sylow_subgroup(f21.whole, 7)
    lam = character_table(C7)[1]
    ind = induce(f21.whole, C7, lam)
    m = decompose(ind, character_table(f21.whole))
    assert sum(m) == 1
    idx = m.index(1)
    assert character_table(f21.whole).degrees[idx] == 3


def test_decompose_rejects_nonchar(f21):
    table = character_table(f21.whole)
    bad = table[3] - table[0]  # virtual, not a character: <.,triv> = -1
    with pytest.raises(ValueError):
        decompose(bad, table)


def test_even_order_rejected():
    g = generate_group(2, [Perm([1, 0])])
    with pytest.raises(ValueError):
        character_table(g.whole)


def test_number_of_irreducibles_is_class_count(f21, ext27, c21):
    for g in (f21, ext27, c21):
        table = character_table(g.whole)
        assert len(table) == len(g.whole.group.classes)


def test_degrees_divide_order(f21, ext27):
    for g in (f21, ext27):
        for d in character_table(g.whole).degrees:
            assert g.order % d == 0
