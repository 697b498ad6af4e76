"""Explicit finite permutation groups with full element lists.

Elements are permutations stored as image tuples (0-based in memory; the
group file format is 1-based). A Group owns the canonically sorted element
list and the multiplication table; Subgroup handles are index subsets of a
parent Group and carry all derived data (classes, character tables, lattice
scans) through per-parent caches, so equal member sets share everything.

Deliberately exhaustive arithmetic: no stabilizer chains. Order cap 5000.
"""

from __future__ import annotations

from functools import reduce
from math import gcd
from typing import Iterable, Optional, Sequence

import numpy as np

from chartower import kernel

ORDER_CAP = 5000


def _factorize(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


class Perm:
    """Permutation on {1..degree}, stored 0-based."""

    __slots__ = ("images",)

    def __init__(self, images: Sequence[int]):
        images = tuple(int(x) for x in images)
        if sorted(images) != list(range(len(images))):
            raise ValueError(f"not a bijection on 0..{len(images)-1}: {images}")
        self.images = images

    @classmethod
    def from_one_based(cls, images: Sequence[int]) -> "Perm":
        return cls([x - 1 for x in images])

    def one_based(self) -> tuple[int, ...]:
        return tuple(x + 1 for x in self.images)

    def __repr__(self):
        return f"Perm{self.one_based()}"

    def __eq__(self, other):
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self):
        return hash(self.images)


class ConjClass:
    """One conjugacy class: canonical representative plus the member set."""

    __slots__ = ("representative", "members", "size", "order")

    def __init__(self, representative: int, members: np.ndarray, order: int):
        self.representative = representative
        self.members = members
        self.size = len(members)
        self.order = order  # element order of the class

    def __repr__(self):
        return f"ConjClass(rep={self.representative}, size={self.size}, order={self.order})"


class Group:
    """Closed set of permutations with canonical (lexicographic) element order."""

    def __init__(self, degree: int, perms: np.ndarray, gen_rows: Sequence[int]):
        self.degree = degree
        self.perms = perms
        self.order = perms.shape[0]
        self.gen_idx = tuple(gen_rows)
        self._elem_index = {perms[i].tobytes(): i for i in range(self.order)}
        self.table = kernel.mult_table(perms)
        ident = np.arange(degree, dtype=perms.dtype).tobytes()
        self.identity = self._elem_index[ident]
        self.inv = kernel.inverse_table(self.table, self.identity)
        self._cache: dict = {}
        self._subgroups: dict[tuple, "Subgroup"] = {}

    # -- element arithmetic ------------------------------------------------
    def mul(self, i: int, j: int) -> int:
        return int(self.table[i, j])

    def inv_of(self, i: int) -> int:
        return int(self.inv[i])

    def conj(self, i: int, g: int) -> int:
        """g^-1 * i * g."""
        return int(self.table[self.table[self.inv[g], i], g])

    def element(self, i: int) -> Perm:
        return Perm(self.perms[i])

    def index_of(self, p: Perm) -> int:
        key = np.asarray(p.images, dtype=self.perms.dtype).tobytes()
        idx = self._elem_index.get(key)
        if idx is None:
            raise KeyError(f"{p} not in group")
        return idx

    @property
    def element_orders(self) -> np.ndarray:
        if "orders" not in self._cache:
            self._cache["orders"] = kernel.element_orders(self.table, self.identity)
        return self._cache["orders"]

    @property
    def exponent(self) -> int:
        if "exponent" not in self._cache:
            self._cache["exponent"] = int(reduce(_lcm, map(int, self.element_orders), 1))
        return self._cache["exponent"]

    def power(self, i: int, k: int) -> int:
        k %= int(self.element_orders[i])
        x = self.identity
        for _ in range(k):
            x = int(self.table[x, i])
        return x

    # -- classes -----------------------------------------------------------
    @property
    def class_of(self) -> np.ndarray:
        if "class_of" not in self._cache:
            raw = kernel.conjugacy_classes(self.table, self.inv)
            self._cache["class_of_raw"] = raw
            self._cache["class_of"], self._cache["classes"] = self._sort_classes(raw)
        return self._cache["class_of"]

    @property
    def classes(self) -> list[ConjClass]:
        self.class_of
        return self._cache["classes"]

    def _sort_classes(self, raw: np.ndarray):
        orders = self.element_orders
        cls_ids = np.unique(raw)
        infos = []
        for c in cls_ids:
            members = np.flatnonzero(raw == c).astype(np.int32)
            rep = int(members[0])
            infos.append((int(orders[rep]), len(members), rep, members))
        infos.sort(key=lambda t: (t[0], t[1], t[2]))
        class_of = np.empty(self.order, dtype=np.int32)
        classes = []
        for new_id, (order, _size, rep, members) in enumerate(infos):
            class_of[members] = new_id
            classes.append(ConjClass(rep, members, order))
        return class_of, classes

    @property
    def inverse_class(self) -> np.ndarray:
        """inverse_class[c] = class index of inverses of class c."""
        if "inverse_class" not in self._cache:
            co = self.class_of
            out = np.empty(len(self.classes), dtype=np.int32)
            for c, cl in enumerate(self.classes):
                out[c] = co[self.inv[cl.representative]]
            self._cache["inverse_class"] = out
        return self._cache["inverse_class"]

    def power_class(self, c: int, t: int) -> int:
        """Class of rep(c)^t."""
        return int(self.class_of[self.power(self.classes[c].representative, t)])

    # -- subgroup handles ----------------------------------------------------
    def subgroup(self, members: Iterable[int]) -> "Subgroup":
        key = tuple(sorted(int(x) for x in set(members)))
        sub = self._subgroups.get(key)
        if sub is None:
            sub = Subgroup(self, key)
            self._subgroups[key] = sub
        return sub

    @property
    def whole(self) -> "Subgroup":
        return self.subgroup(range(self.order))

    def is_abelian(self) -> bool:
        if "abelian" not in self._cache:
            self._cache["abelian"] = bool(np.array_equal(self.table, self.table.T))
        return self._cache["abelian"]

    def __repr__(self):
        return f"Group(order={self.order}, degree={self.degree})"


class Subgroup:
    """Index subset of a parent Group, closed under the parent product."""

    def __init__(self, parent: Group, members: tuple[int, ...]):
        self.parent = parent
        self.members = members
        self.order = len(members)
        self.mask = 0
        for m in members:
            self.mask |= 1 << m
        self._cache: dict = {}

    def __contains__(self, idx: int) -> bool:
        return bool((self.mask >> int(idx)) & 1)

    def __le__(self, other: "Subgroup") -> bool:
        return (self.mask | other.mask) == other.mask

    def __lt__(self, other: "Subgroup") -> bool:
        return self.mask != other.mask and self <= other

    def __eq__(self, other):
        return isinstance(other, Subgroup) and self.parent is other.parent \
            and self.mask == other.mask

    def __hash__(self):
        return hash((id(self.parent), self.mask))

    def __repr__(self):
        return f"Subgroup(order={self.order} of {self.parent!r})"

    @property
    def members_arr(self) -> np.ndarray:
        if "arr" not in self._cache:
            self._cache["arr"] = np.array(self.members, dtype=np.int32)
        return self._cache["arr"]

    @property
    def group(self) -> Group:
        """Standalone Group on the same permutation degree."""
        if "group" not in self._cache:
            g = Group.__new__(Group)
            par = self.parent
            arr = self.members_arr
            g.degree = par.degree
            g.perms = par.perms[arr]
            g.order = self.order
            pos = {int(m): i for i, m in enumerate(self.members)}
            g.gen_idx = tuple()
            g._elem_index = {g.perms[i].tobytes(): i for i in range(g.order)}
            sub_tab = par.table[np.ix_(arr, arr)]
            lookup = np.full(par.order, -1, dtype=np.int32)
            lookup[arr] = np.arange(g.order, dtype=np.int32)
            g.table = lookup[sub_tab].astype(np.int32)
            if (g.table < 0).any():
                raise ValueError("member set is not closed under the product")
            g.identity = pos[par.identity]
            g.inv = kernel.inverse_table(g.table, g.identity)
            g._cache = {}
            g._subgroups = {}
            self._cache["group"] = g
            self._cache["to_sub"] = lookup
        return self._cache["group"]

    @property
    def to_sub(self) -> np.ndarray:
        """Parent index -> own index (-1 outside)."""
        self.group
        return self._cache["to_sub"]

    # convenience views -----------------------------------------------------
    @property
    def classes(self) -> list[ConjClass]:
        return self.group.classes

    def class_reps_parent(self) -> list[int]:
        return [int(self.members[c.representative]) for c in self.group.classes]

    def class_of_parent(self, parent_idx: int) -> int:
        return int(self.group.class_of[self.to_sub[parent_idx]])

    def is_abelian(self) -> bool:
        return self.group.is_abelian()

    def gens(self) -> list[int]:
        """A small generating set (parent indices), deterministic."""
        if "gens" not in self._cache:
            par = self.parent
            gens: list[int] = []
            have = par.subgroup([par.identity])
            while have.order < self.order:
                for m in self.members:
                    if m not in have:
                        gens.append(int(m))
                        break
                have = subgroup_closure(par, gens)
            self._cache["gens"] = gens
        return self._cache["gens"]


# ---------------------------------------------------------------------------
# constructors and basic operations
# ---------------------------------------------------------------------------

def generate_group(degree: int, gens: Sequence[Perm], order_cap: int = ORDER_CAP) -> Group:
    """Closure of the generators, canonically sorted."""
    for g in gens:
        if len(g.images) != degree:
            raise ValueError(f"generator degree {len(g.images)} != {degree}")
    dtype = np.int16 if degree < 2 ** 15 else np.int32
    ident = tuple(range(degree))
    seen = {ident}
    work = [ident]
    gen_tuples = [g.images for g in gens]
    head = 0
    while head < len(work):
        x = work[head]
        head += 1
        for g in gen_tuples:
            y = tuple(g[i] for i in x)  # x then g
            if y not in seen:
                seen.add(y)
                work.append(y)
                if len(seen) > order_cap:
                    raise ValueError(f"closure exceeds order cap {order_cap}")
    elements = sorted(seen)
    perms = np.array(elements, dtype=dtype)
    gen_rows = [elements.index(g) for g in gen_tuples]
    grp = Group(degree, perms, gen_rows)
    return grp


def subgroup_closure(parent: Group, gens: Iterable[int]) -> Subgroup:
    idx = kernel.closure(parent.table, list(gens))
    return parent.subgroup(idx)


def conjugate_subgroup(sub: Subgroup, g: int) -> Subgroup:
    par = sub.parent
    return par.subgroup(kernel.conjugate_set(par.table, par.inv, sub.members_arr, int(g)))


def conjugacy_classes(G: Subgroup) -> list[ConjClass]:
    return G.group.classes


def centralizer(G: Subgroup, X) -> Subgroup:
    """C(X in G); X a Subgroup or a parent element index."""
    par = G.parent
    if isinstance(X, Subgroup):
        targets = X.members_arr
    else:
        targets = np.array([int(X)], dtype=np.int32)
    keep = []
    for g in G.members:
        if np.array_equal(par.table[g, targets], par.table[targets, g]):
            keep.append(g)
    return par.subgroup(keep)


def normalizer(G: Subgroup, X: Subgroup) -> Subgroup:
    par = G.parent
    keep = []
    for g in G.members:
        if conjugate_subgroup(X, g).mask == X.mask:
            keep.append(g)
    return par.subgroup(keep)


def is_normal(N: Subgroup, G: Subgroup) -> bool:
    if not N <= G:
        return False
    par = G.parent
    for g in G.gens():
        if conjugate_subgroup(N, g).mask != N.mask:
            return False
    return True


def product_set(A: Subgroup, B: Subgroup) -> Subgroup:
    """Subgroup A*B; raises if the product set is not a group."""
    par = A.parent
    prods = np.unique(par.table[np.ix_(A.members_arr, B.members_arr)])
    closed = subgroup_closure(par, prods)
    if closed.order != len(prods):
        raise ValueError("product set A*B is not a subgroup")
    return closed


def intersection(A: Subgroup, B: Subgroup) -> Subgroup:
    par = A.parent
    mask = A.mask & B.mask
    members = [m for m in A.members if (mask >> m) & 1]
    return par.subgroup(members)


class QuotientMap:
    """Epimorphism G -> G/N via the (faithful) action on cosets of N."""

    def __init__(self, source: Subgroup, kernel_sub: Subgroup):
        if not is_normal(kernel_sub, source):
            raise ValueError("kernel is not normal in the source group")
        par = source.parent
        self.source = source
        self.kernel = kernel_sub
        n_arr = kernel_sub.members_arr
        coset_of: dict[int, int] = {}
        coset_reps: list[int] = []
        for m in source.members:  # ascending: canonical least reps
            if m not in coset_of:
                cid = len(coset_reps)
                coset_reps.append(int(m))
                for x in par.table[n_arr, m]:  # N*m
                    coset_of[int(x)] = cid
        k = len(coset_reps)
        # right-multiplication action on cosets: (N*r) * g = N*(r*g)
        perm_rows = []
        assign_perm = {}
        for g in source.members:
            images = tuple(coset_of[int(par.table[r, g])] for r in coset_reps)
            perm_rows.append(images)
            assign_perm[int(g)] = images
        uniq = sorted(set(perm_rows))
        dtype = np.int16 if k < 2 ** 15 else np.int32
        target = Group(k, np.array(uniq, dtype=dtype), [])
        self.target = target
        self.coset_of = coset_of
        index = {u: i for i, u in enumerate(uniq)}
        self.assignment = {g: index[assign_perm[g]] for g in map(int, source.members)}
        if target.order * kernel_sub.order != source.order:
            raise ValueError("coset action is not faithful modulo the kernel")

    def image(self, g: int) -> int:
        return self.assignment[int(g)]

    def image_subgroup(self, sub: Subgroup) -> Subgroup:
        return self.target.subgroup({self.assignment[int(m)] for m in sub.members
                                     if m in self.source})

    def preimage_subgroup(self, sub: Subgroup) -> Subgroup:
        want = set(int(m) for m in sub.members)
        return self.source.parent.subgroup(
            [g for g in self.source.members if self.assignment[int(g)] in want])

    def section(self, t: int) -> int:
        """Canonically least preimage of target element t."""
        if "sections" not in self.__dict__:
            secs: dict[int, int] = {}
            for g in self.source.members:
                im = self.assignment[int(g)]
                if im not in secs:
                    secs[im] = int(g)
            self.sections = secs
        return self.sections[int(t)]


def quotient(G: Subgroup, N: Subgroup) -> tuple[Subgroup, QuotientMap]:
    qm = QuotientMap(G, N)
    return qm.target.whole, qm


# ---------------------------------------------------------------------------
# structural operations
# ---------------------------------------------------------------------------

def derived_subgroup(G: Subgroup) -> Subgroup:
    par = G.parent
    gens = set()
    arr = G.members_arr
    for a in G.members:
        ainv = par.inv[a]
        # [a, b] = a^-1 b^-1 a b for all b
        t = par.table[par.table[par.table[ainv, par.inv[arr]], a], arr]
        gens.update(map(int, t))
    return subgroup_closure(par, gens)


def derived_series(G: Subgroup) -> list[Subgroup]:
    series = [G]
    while series[-1].order > 1:
        nxt = derived_subgroup(series[-1])
        if nxt.order == series[-1].order:
            raise ValueError("group is not solvable")
        series.append(nxt)
    return series


def center(G: Subgroup) -> Subgroup:
    return centralizer(G, G)


def pi_part(n: int, primes: frozenset[int]) -> int:
    out = 1
    for p, e in _factorize(n).items():
        if p in primes:
            out *= p ** e
    return out


def minimal_normal_subgroup(G: Subgroup) -> Subgroup:
    """A canonical minimal normal subgroup of solvable G > 1."""
    if G.order == 1:
        raise ValueError("trivial group has no minimal normal subgroup")
    par = G.parent
    L = derived_series(G)[-2]  # last nontrivial term: abelian, normal in G
    p = min(_factorize(L.order))
    omega = par.subgroup([m for m in L.members
                          if par.power(m, p) == par.identity])
    best: Optional[Subgroup] = None
    for v in omega.members:
        if v == par.identity:
            continue
        orbit = {par.conj(v, g) for g in G.members}
        cand = subgroup_closure(par, orbit)
        if best is None or cand.order < best.order:
            best = cand
            if best.order == p:
                break
    assert best is not None
    return best


def _complement_abelian(H: Subgroup, M: Subgroup) -> Subgroup:
    """Complement of abelian normal M in H when gcd(|M|, |H:M|) = 1."""
    par = H.parent
    quot, qm = quotient(H, M)
    n = quot.order
    e = 1
    for m in M.members:
        e = _lcm(e, int(par.element_orders[m]))
    k = (-pow(n, -1, e)) % e if e > 1 else 0
    q_elems = list(quot.members)
    r = {x: qm.section(x) for x in q_elems}  # transversal, r(1) = identity
    tq = quot.parent.table

    def f(x, z):  # r(x) r(z) r(xz)^-1 in M
        return par.table[par.table[r[x], r[z]], par.inv[r[int(tq[x, z])]]]

    comp = []
    for x in q_elems:
        tau = par.identity
        for z in q_elems:
            tau = par.table[tau, f(x, z)]
        s = par.table[par.power(int(tau), k), r[x]]
        comp.append(int(s))
    K = par.subgroup(comp)
    if K.order != n:
        K = subgroup_closure(par, comp)
    if K.order != n or intersection(K, M).order != 1:
        raise ValueError("complement construction failed")
    return K


def hall_subgroup(G: Subgroup, primes: Iterable[int]) -> Subgroup:
    """A Hall pi-subgroup of solvable G (exists; canonical by construction)."""
    primes = frozenset(int(p) for p in primes)
    par = G.parent
    target = pi_part(G.order, primes)
    if target == G.order:
        return G
    if target == 1:
        return par.subgroup([par.identity])
    M = minimal_normal_subgroup(G)
    p = min(_factorize(M.order))
    quot, qm = quotient(G, M)
    hbar = hall_subgroup(quot, primes)
    H = qm.preimage_subgroup(hbar)
    if p in primes:
        return H
    return _complement_abelian(H, M)


def hall_subgroups_all(G: Subgroup, primes: Iterable[int]) -> list[Subgroup]:
    """All Hall pi-subgroups (the conjugates of one, G solvable)."""
    primes = frozenset(int(p) for p in primes)
    H = hall_subgroup(G, primes)
    seen = {H.mask: H}
    for g in G.members:
        c = conjugate_subgroup(H, g)
        seen.setdefault(c.mask, c)
    return sorted(seen.values(), key=lambda s: s.members)


def sylow_subgroup(G: Subgroup, p: int) -> Subgroup:
    return hall_subgroup(G, [p])


def normal_subgroups(G: Subgroup) -> list[Subgroup]:
    """Every normal subgroup of G, sorted by (order, members)."""
    key = "normal_subgroups"
    if key in G._cache:
        return G._cache[key]
    par = G.parent
    classes = G.group.classes
    class_sets = [tuple(int(G.members[m]) for m in c.members) for c in classes]
    triv = par.subgroup([par.identity])
    found = {triv.mask: triv}
    frontier = [triv]
    while frontier:
        new_frontier = []
        for N in frontier:
            for cs in class_sets:
                if all((N.mask >> x) & 1 for x in cs):
                    continue
                cand = subgroup_closure(par, N.members + cs)
                if cand.mask not in found:
                    found[cand.mask] = cand
                    new_frontier.append(cand)
        frontier = new_frontier
    out = sorted(found.values(), key=lambda s: (s.order, s.members))
    G._cache[key] = out
    return out


def normal_subgroups_in(G: Subgroup, bound: Subgroup) -> list[Subgroup]:
    """Subgroups of `bound` that are normal in G (bound itself normal in G),
    sorted by (order, members). Joins of G-class closures inside bound."""
    key = ("normal_subgroups_in", bound.mask)
    if key in G._cache:
        return G._cache[key]
    par = G.parent
    classes = G.group.classes
    class_sets = []
    for c in classes:
        cs = tuple(int(G.members[m]) for m in c.members)
        if all(x in bound for x in cs):
            class_sets.append(cs)
    triv = par.subgroup([par.identity])
    found = {triv.mask: triv}
    frontier = [triv]
    while frontier:
        new_frontier = []
        for N in frontier:
            for cs in class_sets:
                if all((N.mask >> x) & 1 for x in cs):
                    continue
                cand = subgroup_closure(par, N.members + cs)
                if not cand <= bound:
                    continue
                if cand.mask not in found:
                    found[cand.mask] = cand
                    new_frontier.append(cand)
        frontier = new_frontier
    out = sorted(found.values(), key=lambda s: (s.order, s.members))
    G._cache[key] = out
    return out


def is_nilpotent(G: Subgroup) -> bool:
    """True iff G is the direct product of its Sylow subgroups."""
    n = G.order
    if n == 1:
        return True
    for p in _factorize(n):
        syl = sylow_subgroup(G, p)
        if not is_normal(syl, G):
            return False
    return True


def sylow_product_check(G: Subgroup) -> bool:
    """Independent nilpotency probe: G is the internal direct product of its
    Sylows (pairwise element-wise commuting, product covering G)."""
    par = G.parent
    sylows = [sylow_subgroup(G, p) for p in sorted(_factorize(G.order))]
    for i, s in enumerate(sylows):
        for t in sylows[i + 1:]:
            for a in s.members:
                if not np.array_equal(par.table[a, t.members_arr],
                                      par.table[t.members_arr, a]):
                    return False
    prod = par.subgroup([par.identity])
    for s in sylows:
        members = np.unique(par.table[np.ix_(prod.members_arr, s.members_arr)])
        prod = par.subgroup(members)
    return prod.order == G.order


def lower_central_nilpotent(G: Subgroup) -> bool:
    """Third nilpotency probe: the lower central series reaches 1."""
    par = G.parent
    cur = G
    while cur.order > 1:
        gens = set()
        for a in G.members:
            ainv = par.inv[a]
            arr = cur.members_arr
            t = par.table[par.table[par.table[ainv, par.inv[arr]], a], arr]
            gens.update(map(int, t))
        nxt = subgroup_closure(par, gens)
        if nxt.order == cur.order:
            return False
        cur = nxt
    return True


# ---------------------------------------------------------------------------
# subgroup lattice (cyclic extension), up to conjugacy
# ---------------------------------------------------------------------------

def subgroup_classes(G: Subgroup, order_cap: Optional[int] = None,
                     count_cap: int = 200000) -> list[Subgroup]:
    """Representatives of the conjugacy classes of subgroups of G.

    Cyclic-extension search; every subgroup of an odd-order (solvable) G has
    a normal subgroup of prime index, so layering by order is exhaustive.
    """
    key = ("subgroup_classes", order_cap)
    if key in G._cache:
        return G._cache[key]
    par = G.parent
    triv = par.subgroup([par.identity])
    seen = {triv.mask}
    reps = [triv]
    layer = [triv]
    total = 1
    while layer:
        nxt = []
        for H in layer:
            N = normalizer(G, H)
            cands = {}
            for x in N.members:
                if x in H:
                    continue
                # want prime order of x modulo H
                o = 2
                y = par.table[x, x]
                while y not in H:
                    y = par.table[y, x]
                    o += 1
                if not _is_prime(o):
                    continue
                K = subgroup_closure(par, H.members + (int(x),))
                if order_cap is not None and K.order > order_cap:
                    continue
                cands[K.mask] = K
            for K in cands.values():
                if K.mask in seen:
                    continue
                reps.append(K)
                nxt.append(K)
                for g in G.members:
                    c = conjugate_subgroup(K, g)
                    seen.add(c.mask)
                    total += 1
                    if total > count_cap:
                        raise ValueError(f"subgroup count cap {count_cap} exceeded")
        layer = nxt
    reps.sort(key=lambda s: (s.order, s.members))
    G._cache[key] = reps
    return reps


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# ---------------------------------------------------------------------------
# group file format
# ---------------------------------------------------------------------------

def parse_group_file(text: str, order_cap: int = ORDER_CAP) -> Group:
    """`degree <n>` then `gen <i1> ... <in>` lines, 1-based images."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("degree "):
        raise ValueError("group file must start with 'degree <n>'")
    try:
        degree = int(lines[0].split()[1])
    except (IndexError, ValueError) as exc:
        raise ValueError("malformed degree line") from exc
    gens = []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] != "gen" or len(parts) != degree + 1:
            raise ValueError(f"malformed generator line: {ln!r}")
        gens.append(Perm.from_one_based([int(x) for x in parts[1:]]))
    return generate_group(degree, gens, order_cap=order_cap)


def format_group_file(G: Group) -> str:
    out = [f"degree {G.degree}"]
    for i in G.gen_idx or range(G.order):
        images = " ".join(str(x + 1) for x in G.perms[i])
        out.append(f"gen {images}")
    return "\n".join(out) + "\n"
