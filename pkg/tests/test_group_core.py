import numpy as np
import pytest

from chartower.group import (Perm, centralizer, conjugacy_classes,
                             derived_subgroup, format_group_file,
                             generate_group, hall_subgroup,
                             hall_subgroups_all, intersection, is_nilpotent,
                             is_normal, lower_central_nilpotent,
                             normal_subgroups, normalizer, parse_group_file,
                             pi_part, quotient, subgroup_classes,
                             subgroup_closure, sylow_product_check,
                             sylow_subgroup)


def brute_closure(degree, gens):
    """Independent multiply-and-close oracle over image tuples."""
    seen = {tuple(range(degree))}
    frontier = list(seen)
    gens = [g.images for g in gens]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = tuple(g[i] for i in x)
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def test_generate_cyclic():
    g = generate_group(3, [Perm([1, 2, 0])])
    assert g.order == 3


def test_generate_f21_against_oracle(f21):
    gens = [f21.element(i) for i in f21.gen_idx]
    assert f21.order == len(brute_closure(7, gens)) == 21


def test_generate_trivial():
    g = generate_group(1, [])
    assert g.order == 1 and g.degree == 1


def test_generate_rejects_nonbijection():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


def test_order_cap():
    with pytest.raises(ValueError):
        generate_group(7, [Perm([1, 2, 3, 4, 5, 6, 0])], order_cap=5)


def test_classes_abelian_singletons():
    g = generate_group(3, [Perm([1, 2, 0])])
    assert [c.size for c in conjugacy_classes(g.whole)] == [1, 1, 1]


def test_classes_f21_sizes(f21):
    sizes = sorted(c.size for c in conjugacy_classes(f21.whole))
    assert sizes == [1, 3, 3, 7, 7]


def test_classes_ext27(ext27):
    cls = conjugacy_classes(ext27.whole)
    assert len(cls) == 11
    assert sorted(c.size for c in cls) == [1, 1, 1] + [3] * 8


def test_class_sizes_divide_and_sum(f21, ext27):
    for g in (f21, ext27):
        cls = conjugacy_classes(g.whole)
        assert sum(c.size for c in cls) == g.order
        assert all(g.order % c.size == 0 for c in cls)


def test_centralizer_of_sylow7(f21):
    s7 = sylow_subgroup(f21.whole, 7)
    assert centralizer(f21.whole, s7) == s7


def test_normalizer_of_whole(f21):
    assert normalizer(f21.whole, f21.whole) == f21.whole


def test_centralizer_in_abelian(c21):
    G = c21.whole
    s = sylow_subgroup(G, 3)
    assert centralizer(G, s) == G


def test_quotient_f21_by_c7(f21):
    s7 = sylow_subgroup(f21.whole, 7)
    q, qm = quotient(f21.whole, s7)
    assert q.order == 3
    # homomorphism check on all pairs
    for a in list(f21.whole.members)[:10]:
        for b in list(f21.whole.members)[:10]:
            lhs = qm.assignment[f21.mul(a, b)]
            rhs = qm.target.mul(qm.assignment[a], qm.assignment[b])
            assert lhs == rhs


def test_quotient_by_trivial(f21):
    triv = f21.subgroup([f21.identity])
    q, qm = quotient(f21.whole, triv)
    assert q.order == 21
    assert len(set(qm.assignment.values())) == 21


def test_quotient_ext27_by_center(ext27):
    from chartower.group import center
    z = center(ext27.whole)
    assert z.order == 3
    q, _ = quotient(ext27.whole, z)
    assert q.order == 9 and q.group.is_abelian()


def test_quotient_requires_normal(f21):
    s3 = sylow_subgroup(f21.whole, 3)
    with pytest.raises(ValueError):
        quotient(f21.whole, s3)


def test_hall_normal_sylow(f21):
    h = hall_subgroup(f21.whole, [7])
    assert h.order == 7 and is_normal(h, f21.whole)


def test_hall_sylow3_conjugates(f21):
    h = hall_subgroup(f21.whole, [3])
    assert h.order == 3
    assert len(hall_subgroups_all(f21.whole, [3])) == 7


def test_hall_full_set(f21):
    assert hall_subgroup(f21.whole, [3, 7]) == f21.whole


def test_hall_complement_product_count(f21):
    par = f21
    a = hall_subgroup(f21.whole, [3])
    b = hall_subgroup(f21.whole, [7])
    assert intersection(a, b).order == 1
    prods = {par.mul(x, y) for x in a.members for y in b.members}
    assert len(prods) == f21.order


def test_normal_subgroups_f21(f21):
    assert [n.order for n in normal_subgroups(f21.whole)] == [1, 7, 21]


def test_normal_subgroup_lattice_correspondence(c7xc9):
    G = c7xc9.whole
    ns = normal_subgroups(G)
    N = next(n for n in ns if n.order == 7)
    q, qm = quotient(G, N)
    above = {n.mask for n in ns if N <= n}
    pulled = {qm.preimage_subgroup(m).mask for m in normal_subgroups(q)}
    assert pulled == above


def test_nilpotency_three_ways(f21, c21, ext27):
    for g, expect in ((f21, False), (c21, True), (ext27, True)):
        G = g.whole
        assert is_nilpotent(G) is expect
        assert sylow_product_check(G) is expect
        assert lower_central_nilpotent(G) is expect


def test_subgroup_classes_f21(f21):
    orders = [s.order for s in subgroup_classes(f21.whole)]
    assert orders == [1, 3, 7, 21]


def test_subgroup_classes_ext27(ext27):
    reps = subgroup_classes(ext27.whole)
    # 1, center, 4 noncentral C3 classes, 4 C3xC3 (all normal), whole
    assert [s.order for s in reps] == [1, 3, 3, 3, 3, 3, 9, 9, 9, 9, 27]


def test_group_file_roundtrip(f21):
    text = format_group_file(f21)
    g2 = parse_group_file(text)
    assert g2.order == 21 and g2.degree == 7


def test_group_file_rejects_garbage():
    with pytest.raises(ValueError):
        parse_group_file("degree x\n")
    with pytest.raises(ValueError):
        parse_group_file("degree 3\ngen 1 2\n")


def test_derived_subgroup_f21(f21):
    d = derived_subgroup(f21.whole)
    assert d.order == 7


def test_pi_part():
    assert pi_part(375, frozenset({5})) == 125
    assert pi_part(375, frozenset({3})) == 3
    assert pi_part(375, frozenset()) == 1
