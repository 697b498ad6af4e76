"""Exact irreducible character tables of odd-order groups.

Abelian groups get the dual-group construction from a cyclic-factor basis;
everything else goes through Dixon-Schneider: split the class-sum matrices
simultaneously over F_p for the least prime p = 1 (mod exponent) with
p > 2*sqrt(|G|), then lift eigenvalue multiplicities to Z[zeta].
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt
from typing import Sequence

import numpy as np

from chartower import modlin
from chartower.cyclotomic import Cyc, ONE, ZERO, root_of_unity, cyc_sum
from chartower.group import Group, Subgroup, quotient

__all__ = ["ClassFunction", "CharTable", "character_table", "inner_product",
           "decompose", "trivial_character", "regular_character"]


class ClassFunction:
    """Exact class function on a Subgroup, values indexed by its classes."""

    __slots__ = ("sub", "values", "_hash", "_labels")

    def __init__(self, sub: Subgroup, values: Sequence[Cyc]):
        if len(values) != len(sub.group.classes):
            raise ValueError("value count != class count")
        self.sub = sub
        self.values = tuple(values)
        self._hash = None
        self._labels = None

    @property
    def degree(self) -> Cyc:
        return self.values[0]

    def degree_int(self) -> int:
        return self.values[0].as_int()

    def value_at(self, parent_idx: int) -> Cyc:
        g = self.sub.group
        i = self.sub.to_sub[parent_idx]
        if i < 0:
            raise KeyError(f"element {parent_idx} outside the domain subgroup")
        return self.values[g.class_of[i]]

    def __eq__(self, other):
        return (isinstance(other, ClassFunction) and self.sub == other.sub
                and self.values == other.values)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.sub.mask, self.values))
        return self._hash

    def __add__(self, other):
        self._check(other)
        return ClassFunction(self.sub, [a + b for a, b in zip(self.values, other.values)])

    def __sub__(self, other):
        self._check(other)
        return ClassFunction(self.sub, [a - b for a, b in zip(self.values, other.values)])

    def __mul__(self, other):
        if isinstance(other, ClassFunction):
            self._check(other)
            return ClassFunction(self.sub, [a * b for a, b in zip(self.values, other.values)])
        return ClassFunction(self.sub, [v * other for v in self.values])

    __rmul__ = __mul__

    def conjugate(self):
        return ClassFunction(self.sub, [v.conjugate() for v in self.values])

    def _check(self, other):
        if self.sub != other.sub:
            raise ValueError("class functions on different groups")

    def is_irreducible(self) -> bool:
        return inner_product(self, self) == ONE

    def labels_by_parent(self) -> np.ndarray:
        """Integer labels per parent element (equal label iff equal value),
        -1 outside the domain subgroup. Used for fast stabilizer scans."""
        if self._labels is None:
            sub = self.sub
            g = sub.group
            lab_of_value: dict = {}
            class_label = np.empty(len(g.classes), dtype=np.int32)
            for c, v in enumerate(self.values):
                class_label[c] = lab_of_value.setdefault(v, len(lab_of_value))
            out = np.full(sub.parent.order, -1, dtype=np.int32)
            out[sub.members_arr] = class_label[g.class_of]
            self._labels = out
        return self._labels

    def serialize(self) -> str:
        return "\n".join(v.serialize() for v in self.values)

    def __repr__(self):
        deg = self.values[0]
        return f"ClassFunction(|G|={self.sub.order}, deg={deg.serialize()})"


def trivial_character(sub: Subgroup) -> ClassFunction:
    return ClassFunction(sub, [ONE] * len(sub.group.classes))


def regular_character(sub: Subgroup) -> ClassFunction:
    vals = [ZERO] * len(sub.group.classes)
    vals[0] = Cyc.from_rational(sub.order)
    return ClassFunction(sub, vals)


def inner_product(f: ClassFunction, g: ClassFunction) -> Cyc:
    """[f, g] = (1/|G|) sum_x f(x) g(x^-1), exactly.

    When every coefficient is an integer (characters), the sum is built as
    one exponent tally and normalized once."""
    from fractions import Fraction
    from math import gcd as _gcd
    if f.sub != g.sub:
        raise ValueError("inner product across different groups")
    grp = f.sub.group
    invc = grp.inverse_class
    L = 1
    fast = True
    for v in f.values:
        L = L * v.n // _gcd(L, v.n)
    for v in g.values:
        L = L * v.n // _gcd(L, v.n)
    for v in f.values:
        for _, c in v.coeffs:
            if isinstance(c, Fraction):
                fast = False
                break
        if not fast:
            break
    if fast:
        for v in g.values:
            for _, c in v.coeffs:
                if isinstance(c, Fraction):
                    fast = False
                    break
            if not fast:
                break
    if fast:
        tally: dict = {}
        for c, cl in enumerate(grp.classes):
            a = f.values[c]
            b = g.values[int(invc[c])]
            if not a.coeffs or not b.coeffs:
                continue
            fa, fb = L // a.n, L // b.n
            size = cl.size
            for k1, c1 in a.coeffs:
                ka = k1 * fa
                for k2, c2 in b.coeffs:
                    kk = (ka + k2 * fb) % L
                    prev = tally.get(kk)
                    add = c1 * c2 * size
                    tally[kk] = add if prev is None else prev + add
        return Cyc(L, tally) / f.sub.order
    terms = []
    for c, cl in enumerate(grp.classes):
        term = f.values[c] * g.values[int(invc[c])]
        if not term.is_zero():
            terms.append(term * cl.size)
    return cyc_sum(terms) / f.sub.order


class CharTable:
    """All irreducible characters; row 0 is the trivial character."""

    def __init__(self, sub: Subgroup, irreducibles: list[ClassFunction]):
        self.sub = sub
        self.irreducibles = irreducibles
        self.degrees = [chi.degree_int() for chi in irreducibles]
        self._index = {chi.values: i for i, chi in enumerate(irreducibles)}

    def __len__(self):
        return len(self.irreducibles)

    def __iter__(self):
        return iter(self.irreducibles)

    def __getitem__(self, i):
        return self.irreducibles[i]

    def index(self, chi: ClassFunction) -> int:
        i = self._index.get(chi.values)
        if i is None:
            raise KeyError("not an irreducible of this table")
        return i

    def linears(self) -> list[ClassFunction]:
        return [chi for chi in self.irreducibles if chi.degree_int() == 1]

    def verify_light(self) -> None:
        """Row count, norms, distinctness and the degree sum; distinct
        irreducible rows are automatically orthogonal."""
        n = self.sub.order
        if len(self.irreducibles) != len(self.sub.group.classes):
            raise AssertionError("row count != class count")
        if sum(d * d for d in self.degrees) != n:
            raise AssertionError("sum of squared degrees != |G|")
        if len({chi.values for chi in self.irreducibles}) != len(self.irreducibles):
            raise AssertionError("duplicate table rows")
        for chi in self.irreducibles:
            if inner_product(chi, chi) != ONE:
                raise AssertionError("row is not irreducible")

    def verify(self) -> None:
        """Exact orthogonality relations + degree sum; raises on failure."""
        n = self.sub.order
        if sum(d * d for d in self.degrees) != n:
            raise AssertionError("sum of squared degrees != |G|")
        got = self.sub.group._cache.get("abelian_exponents")
        if got is not None:
            self.verify_light()
            _verify_abelian_orthogonality(self, got[0], got[1])
            return
        _verify_generic_dense(self)


def _verify_generic_dense(table: "CharTable") -> None:
    """Exact orthogonality for a general table: every distinct value pair is
    multiplied once (exact Cyc arithmetic), embedded as an integer tally at
    the group exponent, reduced mod Phi_L with a bounded-integer float
    matmul, and the r^3 sums become numpy gathers."""
    from fractions import Fraction
    from chartower.cyclotomic import _reduction_rows, _totient
    grp = table.sub.group
    n = table.sub.order
    r = len(grp.classes)
    L = grp.exponent
    vals: list[Cyc] = []
    vid: dict = {}
    VA = np.empty((r, r), dtype=np.int64)
    for i, chi in enumerate(table.irreducibles):
        for c, v in enumerate(chi.values):
            k = vid.get((v.n, v.coeffs))
            if k is None:
                k = len(vals)
                vid[(v.n, v.coeffs)] = k
                vals.append(v)
            VA[i, c] = k
    nv = len(vals)
    inv_first = np.array([int(grp.class_of[grp.inv[c.representative]])
                          for c in grp.classes], dtype=np.int64)
    Vstar = VA[:, inv_first]
    phi = _totient(L)
    R = np.array(_reduction_rows(L), dtype=np.float64) if L > 1 else \
        np.ones((1, 1))
    # table entries are algebraic integers: each value is an integer
    # exponent tally at conductor L, and value products are convolutions
    denom = 1
    supports = []
    for v in vals:
        f = L // v.n
        ks, cs = [], []
        for k, cc in v.coeffs:
            if isinstance(cc, Fraction):
                raise AssertionError("non-integral character table entry")
            ks.append(k * f)
            cs.append(cc)
        supports.append((ks, cs))
    T = np.zeros((nv * nv, max(L, 1)), dtype=np.float64)
    for ia, (ka, ca) in enumerate(supports):
        base = ia * nv
        for ib, (kb, cb) in enumerate(supports):
            row = T[base + ib]
            for k1, c1 in zip(ka, ca):
                for k2, c2 in zip(kb, cb):
                    row[(k1 + k2) % L] += c1 * c2
    TR = T @ R      # (nv^2, phi)
    bound = np.abs(TR).max() * r * max(cl.size for cl in grp.classes)
    if bound >= 2 ** 52:
        raise AssertionError("tally bound exceeded; cannot verify exactly")
    sizes = np.array([cl.size for cl in grp.classes], dtype=np.float64)
    for i in range(r):
        idx = VA[i][None, :] * nv + Vstar          # (j, c)
        res = (TR[idx] * sizes[None, :, None]).sum(axis=1)
        want = np.zeros((r, phi if L > 1 else 1))
        want[i, 0] = n * denom
        if not np.array_equal(res, want):
            raise AssertionError("row orthogonality fails")
    for c in range(r):
        idx = VA[:, c][:, None] * nv + Vstar       # (i, d)
        res = TR[idx].sum(axis=0)                  # (d, phi)
        want = np.zeros((r, phi if L > 1 else 1))
        want[c, 0] = (n // int(sizes[c])) * denom
        if not np.array_equal(res, want):
            raise AssertionError("column orthogonality fails")


def _verify_abelian_orthogonality(table: "CharTable", L: int,
                                  exps_by_row: dict) -> None:
    """Both orthogonality relations for a table of roots of unity zeta_L^k:
    exact integer exponent tallies reduced mod Phi_L. All integers stay far
    below 2^53, so the float matmuls are exact."""
    from chartower.cyclotomic import _reduction_rows, _totient
    grp = table.sub.group
    n = table.sub.order
    r = len(grp.classes)
    if L == 1:
        if n != 1:
            raise AssertionError("nontrivial abelian table with conductor 1")
        return
    E = np.array([exps_by_row[chi.values] for chi in table.irreducibles],
                 dtype=np.int64)
    inv_first = np.array([int(grp.class_of[grp.inv[c.representative]])
                          for c in grp.classes], dtype=np.int64)
    phi = _totient(L)
    R = np.array(_reduction_rows(L), dtype=np.float64)
    if np.abs(R).max() * n >= 2 ** 50:
        raise AssertionError("tally bound exceeded; cannot verify exactly")
    Estar = E[:, inv_first]
    rowidx = np.repeat(np.arange(r)[:, None], r, axis=1)
    for i in range(r):
        diffs = (E[i][None, :] + Estar) % L        # (char j) x (class c)
        tal = np.zeros((r, L))
        np.add.at(tal, (rowidx, diffs), 1.0)
        resid = tal @ R
        want = np.zeros((r, phi))
        want[i, 0] = n
        if not np.array_equal(resid, want):
            raise AssertionError("row orthogonality fails (abelian table)")
    colidx = np.tile(np.arange(r), (r, 1))
    for c in range(r):
        diffs = (E[:, c][:, None] + Estar) % L     # (char i) x (class d)
        tal = np.zeros((r, L))
        np.add.at(tal, (colidx, diffs), 1.0)
        resid = tal @ R
        want = np.zeros((r, phi))
        want[c, 0] = n
        if not np.array_equal(resid, want):
            raise AssertionError("column orthogonality fails (abelian table)")


def character_table(G: Subgroup, check: bool = True) -> CharTable:
    grp = G.group
    key = "chartable"
    if key in grp._cache:
        cached = grp._cache[key]
        if cached.sub is not G and cached.sub != G:
            pass
        return grp._cache[key]
    if G.order % 2 == 0:
        raise ValueError("character tables are computed for odd-order groups only")
    if grp.is_abelian():
        rows = _abelian_rows(G)
    else:
        rows = _dixon_rows(G)
    rows = _sorted_rows(G, rows)
    table = CharTable(G, rows)
    if check:
        table.verify_light()
    grp._cache[key] = table
    return table


def _sorted_rows(G: Subgroup, rows: list[list[Cyc]]) -> list[ClassFunction]:
    chis = [ClassFunction(G, r) for r in rows]
    keyed = []
    for chi in chis:
        if all(v == ONE for v in chi.values):
            keyed.append((0, "", chi))
        else:
            keyed.append((chi.degree_int(), chi.serialize(), chi))
    keyed.sort(key=lambda t: (t[0], t[1]))
    return [t[2] for t in keyed]


# ---------------------------------------------------------------------------
# abelian groups: cyclic-factor basis and the dual group
# ---------------------------------------------------------------------------

def _abelian_rows(G: Subgroup) -> list[list[Cyc]]:
    basis = _abelian_basis(G)
    par = G.parent
    orders = [int(par.element_orders[b]) for b in basis]
    # coordinates of every member
    coords = {par.identity: (0,) * len(basis)}
    frontier = [par.identity]
    for i, b in enumerate(basis):
        new = {}
        for x, co in coords.items():
            y = x
            for a in range(1, orders[i]):
                y = par.mul(y, b)
                nco = list(co)
                nco[i] = a
                new[y] = tuple(nco)
        coords.update(new)
    if len(coords) != G.order:
        raise AssertionError("abelian basis does not span the group")
    grp = G.group
    # class c <-> single element
    elem_of_class = [int(G.members[c.members[0]]) for c in grp.classes]
    from math import lcm
    L = 1
    for d in orders:
        L = lcm(L, d)
    rows = []
    exp_rows = []
    from itertools import product as iproduct
    for exps in iproduct(*[range(d) for d in orders]):
        row = []
        ks = []
        for e in elem_of_class:
            co = coords[e]
            k = sum(exps[i] * co[i] * (L // orders[i]) for i in range(len(basis))) % L
            ks.append(k)
            row.append(root_of_unity(L, k) if L > 1 else ONE)
        rows.append(row)
        exp_rows.append(ks)
    grp._cache["abelian_exponents"] = (
        L, {tuple(row): ks for row, ks in zip(rows, exp_rows)})
    return rows


def _abelian_basis(G: Subgroup) -> list[int]:
    """Cyclic-factor generators (parent indices) of an abelian G."""
    par = G.parent
    basis: list[int] = []
    orders = par.element_orders
    primes = sorted({p for m in G.members for p in _prime_factors(int(orders[m]))})
    for p in primes:
        part = [m for m in G.members
                if _is_p_power(int(orders[m]), p)]
        basis.extend(_abelian_p_basis(par.subgroup(part), p))
    return basis


def _prime_factors(n: int):
    out = set()
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def _is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def _abelian_p_basis(S: Subgroup, p: int) -> list[int]:
    par = S.parent
    if S.order == 1:
        return []
    orders = par.element_orders
    dmax = max(int(orders[m]) for m in S.members)
    g1 = min(m for m in S.members if int(orders[m]) == dmax)
    cyc = [par.identity]
    x = g1
    while x != par.identity:
        cyc.append(int(x))
        x = par.mul(x, g1)
    C = par.subgroup(cyc)
    if C.order == S.order:
        return [int(g1)]
    Q, qm = quotient(S, C)
    qbasis = _abelian_p_basis_in_quotient(Q, qm, p)
    out = [int(g1)]
    for qb in qbasis:
        x = qm.section(qb)
        e = int(Q.parent.element_orders[qb])
        xe = par.power(x, e)
        # xe = g1^t
        t = 0
        y = par.identity
        while y != xe:
            y = par.mul(y, g1)
            t += 1
        if t % e != 0:
            raise AssertionError("lifting lemma violated in abelian basis")
        s = (-(t // e)) % dmax
        lifted = par.mul(x, par.power(g1, s))
        if int(orders[lifted]) != e:
            raise AssertionError("lifted basis element has wrong order")
        out.append(int(lifted))
    return out


def _abelian_p_basis_in_quotient(Q: Subgroup, qm, p: int) -> list[int]:
    return _abelian_p_basis(Q, p)


# ---------------------------------------------------------------------------
# Dixon-Schneider
# ---------------------------------------------------------------------------

def _is_prime_int(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _dixon_prime(n: int, e: int) -> int:
    """Least prime p = 1 (mod e) with p > 2*sqrt(n)."""
    bound = 2 * isqrt(n) + 1
    p = e + 1
    while True:
        if p > bound and _is_prime_int(p):
            return p
        p += e


def _primitive_root_of_unity(p: int, e: int) -> int:
    """Element of exact multiplicative order e in F_p (requires e | p-1)."""
    for g in range(2, p):
        z = pow(g, (p - 1) // e, p)
        ok = True
        for q in _prime_factors(e):
            if pow(z, e // q, p) == 1:
                ok = False
                break
        if ok and pow(z, e, p) == 1:
            return z
    raise ArithmeticError("no primitive root found")


def _dixon_rows(G: Subgroup) -> list[list[Cyc]]:
    grp = G.group
    n = G.order
    classes = grp.classes
    r = len(classes)
    e = grp.exponent
    p = _dixon_prime(n, e)
    z = _primitive_root_of_unity(p, e)
    reps = np.array([c.representative for c in classes], dtype=np.int64)
    class_of = grp.class_of
    table = grp.table
    inv = grp.inv
    sizes = np.array([c.size for c in classes], dtype=np.int64)

    def class_matrix(i: int) -> np.ndarray:
        """M[j, k] = a_{ijk}: #factorizations rep_k = x*y, x in C_i, y in C_j."""
        M = np.zeros((r, r), dtype=np.int64)
        xs = classes[i].members
        y = table[np.ix_(inv[xs], reps)]  # y[x, k] = x^-1 * rep_k
        jc = class_of[y]
        for k in range(r):
            M[:, k] = np.bincount(jc[:, k], minlength=r)
        return M

    spaces = [np.eye(r, dtype=np.int64)]
    for i in range(1, r):
        if all(b.shape[0] == 1 for b in spaces):
            break
        Mi = class_matrix(i)
        new_spaces = []
        for B in spaces:
            if B.shape[0] == 1:
                new_spaces.append(B)
                continue
            BM = (B @ Mi.T) % p
            # A with A @ B = BM (the action expressed in the row basis B)
            A = modlin.solve_right(B.T % p, BM.T % p, p).T % p
            cp = modlin.charpoly(A, p)
            roots = modlin.poly_roots(cp, p)
            for tau in roots:
                d = A.shape[0]
                ker = modlin.nullspace(((A - tau * np.eye(d, dtype=np.int64)) % p).T, p)
                if ker.shape[0] == 0:
                    continue
                new_spaces.append((ker @ B) % p)
        if sum(b.shape[0] for b in new_spaces) != r:
            raise ArithmeticError("Dixon splitting lost dimensions")
        spaces = new_spaces
    if any(b.shape[0] != 1 for b in spaces):
        raise ArithmeticError("class matrices failed to split the space")

    inv_sizes = np.array([pow(int(s), p - 2, p) for s in sizes], dtype=np.int64)
    invc = grp.inverse_class
    # power-class arrays and inverse-DFT matrices per element order
    power_classes = {}
    dft = {}
    for c in range(1, r):
        dg = classes[c].order
        if dg not in dft:
            zc = pow(z, e // dg, p)
            zpow = [pow(zc, t, p) for t in range(dg)]
            W = np.array([[zpow[(-t * m) % dg] for t in range(dg)]
                          for m in range(dg)], dtype=np.int64)
            dft[dg] = (W, pow(dg, p - 2, p))
        power_classes[c] = np.array([grp.power_class(c, t)
                                     for t in range(classes[c].order)],
                                    dtype=np.int64)
    rows = []
    for B in spaces:
        v = B[0] % p
        if v[0] == 0:
            raise ArithmeticError("eigenvector vanishes at the identity class")
        omega = (v * pow(int(v[0]), p - 2, p)) % p
        s = int(np.sum(omega * omega[invc] % p * inv_sizes % p) % p)
        d2 = (n * pow(s, p - 2, p)) % p
        deg = next((d for d in range(1, isqrt(n) + 1) if (d * d) % p == d2), None)
        if deg is None:
            raise ArithmeticError("no valid degree lift (report: Dixon failure)")
        chi_bar = (deg * omega % p) * inv_sizes % p
        row = [Cyc.from_rational(deg)]
        for c in range(1, r):
            dg = classes[c].order
            W, dinv = dft[dg]
            cb = chi_bar[power_classes[c]]
            nm = (W @ cb % p) * dinv % p
            if (nm > deg).any():
                raise ArithmeticError("eigenvalue multiplicity exceeds degree")
            val = Cyc(dg, {m: int(x) for m, x in enumerate(nm) if x})
            row.append(val)
        rows.append(row)
    return rows


def decompose(f: ClassFunction, table: CharTable,
              assert_character: bool = True) -> list[int]:
    """Multiplicities m_i with f = sum m_i chi_i."""
    out = []
    for chi in table.irreducibles:
        m = inner_product(f, chi)
        if assert_character:
            if not m.is_integer() or m.as_int() < 0:
                raise ValueError(f"not a character: multiplicity {m.serialize()}")
            out.append(m.as_int())
        else:
            out.append(m)
    return out
