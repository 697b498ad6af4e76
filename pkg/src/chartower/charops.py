"""Induction, restriction, kernels, canonical extensions, Gallagher and
Clifford machinery over exact character tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

import numpy as np

from chartower.chartable import (CharTable, ClassFunction, character_table,
                                 decompose, inner_product, trivial_character)
from chartower.cyclotomic import Cyc, ONE, ZERO, cyc_sum
from chartower.group import Subgroup, is_normal, quotient

__all__ = [
    "induce", "restrict", "kernel_of", "det_character", "det_order",
    "canonical_extension", "CanonicalExtension", "gallagher", "clifford",
    "CliffordData", "clifford_correspondent", "irr_above",
    "conjugate_character", "stabilizer_of_character", "lies_above",
    "quotient_cached", "inflate", "deflate",
]


# ---------------------------------------------------------------------------
# conjugation and stabilizers
# ---------------------------------------------------------------------------

def conjugate_character(chi: ClassFunction, g: int) -> ClassFunction:
    """chi^g on N^g: chi^g(y) = chi(g y g^-1). When g normalizes the domain
    this is the usual conjugate on the same group."""
    from chartower.group import conjugate_subgroup
    N = chi.sub
    par = N.parent
    ginv = par.inv_of(g)
    Ng = conjugate_subgroup(N, g)
    vals = []
    for c in Ng.group.classes:
        rep = int(Ng.members[c.representative])
        y = par.mul(par.mul(g, rep), ginv)
        vals.append(chi.values[N.class_of_parent(y)])
    return ClassFunction(Ng, vals)


def stabilizer_of_character(H: Subgroup, chi: ClassFunction) -> Subgroup:
    """{h in H : chi^h = chi}; h must normalize the domain to stabilize.

    Elements of C_H(N) always stabilize, so only one representative per
    centralizer coset is scanned."""
    N = chi.sub
    par = N.parent
    cache = N._cache.setdefault("char_stab", {})
    key = (H.mask, chi.values)
    got = cache.get(key)
    if got is not None:
        return got
    from chartower.group import centralizer
    C = centralizer(H, N)
    if C.order == H.order:
        cache[key] = H
        return H
    labels = chi.labels_by_parent()
    members = N.members_arr
    base = labels[members]
    keep = []
    seen_cosets = set()
    c_arr = C.members_arr
    for h in H.members:
        if h in seen_cosets:
            continue
        coset = par.table[c_arr, h]
        seen_cosets.update(map(int, coset))
        z = par.table[par.table[h, members], par.inv[h]]
        lz = labels[z]
        if (lz >= 0).all() and np.array_equal(lz, base):
            keep.extend(map(int, coset))
    out = par.subgroup(keep)
    cache[key] = out
    return out


def orbit_of_character(H: Subgroup, chi: ClassFunction) -> list[ClassFunction]:
    """The H-orbit of chi (H acting by conjugation, normalizing the domain).
    Only one representative per C_H(dom)-coset can act differently."""
    from chartower.group import centralizer
    par = chi.sub.parent
    C = centralizer(H, chi.sub)
    seen = {chi.values: chi}
    done = set()
    c_arr = C.members_arr
    for h in H.members:
        if h in done:
            continue
        done.update(map(int, par.table[c_arr, h]))
        c = conjugate_character(chi, int(h))
        seen.setdefault(c.values, c)
    return sorted(seen.values(), key=lambda f: f.serialize())


# ---------------------------------------------------------------------------
# induction and restriction
# ---------------------------------------------------------------------------

def _induction_counts(G: Subgroup, H: Subgroup) -> np.ndarray:
    """counts[cG, cH] = |class cG of G  intersect  class cH of H|."""
    cache = G._cache.setdefault("ind_counts", {})
    got = cache.get(H.mask)
    if got is not None:
        return got
    rG = len(G.group.classes)
    rH = len(H.group.classes)
    counts = np.zeros((rG, rH), dtype=np.int64)
    for m in H.members:
        counts[G.class_of_parent(m), H.class_of_parent(m)] += 1
    cache[H.mask] = counts
    return counts


def induce(G: Subgroup, H: Subgroup, theta: ClassFunction) -> ClassFunction:
    """Frobenius induction theta^G, exact."""
    if theta.sub != H:
        raise ValueError("character does not live on H")
    if not H <= G:
        raise ValueError("H is not a subgroup of G")
    counts = _induction_counts(G, H)
    n, h = G.order, H.order
    vals = []
    for cG, cl in enumerate(G.group.classes):
        row = counts[cG]
        acc = ZERO
        for cH in np.nonzero(row)[0]:
            acc = acc + theta.values[int(cH)] * int(row[cH])
        vals.append(acc * Fraction(n, cl.size * h))
    return ClassFunction(G, vals)


def restrict(chi: ClassFunction, H: Subgroup) -> ClassFunction:
    if not H <= chi.sub:
        raise ValueError("H is not a subgroup of the domain")
    return ClassFunction(H, [chi.value_at(int(H.members[c.representative]))
                             for c in H.group.classes])


def lies_above(chi: ClassFunction, theta: ClassFunction) -> bool:
    """[chi|_N, theta] != 0 for theta on N <= dom(chi)."""
    r = restrict(chi, theta.sub)
    return not inner_product(r, theta).is_zero()


def irr_above(G: Subgroup, N: Subgroup, theta: ClassFunction) -> list[ClassFunction]:
    """Irreducible constituents of theta^G (= Irr(G | theta))."""
    return [chi for chi in character_table(G) if lies_above(chi, theta)]


# ---------------------------------------------------------------------------
# kernels and determinantal order
# ---------------------------------------------------------------------------

def kernel_of(chi: ClassFunction) -> Subgroup:
    N = chi.sub
    deg = chi.values[0]
    members = [int(N.members[i]) for i in range(N.order)
               if chi.values[N.group.class_of[i]] == deg]
    K = N.parent.subgroup(members)
    if not is_normal(K, N):
        raise AssertionError("character kernel is not normal")
    return K


def det_character(chi: ClassFunction) -> ClassFunction:
    """det(chi) via Newton's identities on the power-sum values."""
    N = chi.sub
    grp = N.group
    d = chi.degree_int()
    vals = []
    for c in range(len(grp.classes)):
        ps = [chi.values[grp.power_class(c, t)] for t in range(d + 1)]
        e = [ONE] + [ZERO] * d
        for k in range(1, d + 1):
            acc = ZERO
            sign = 1
            for i in range(1, k + 1):
                term = e[k - i] * ps[i]
                acc = acc + (term if sign > 0 else -term)
                sign = -sign
            e[k] = acc / k
        vals.append(e[d])
    det = ClassFunction(N, vals)
    return det


def det_order(chi: ClassFunction) -> int:
    """Order of det(chi) in Lin(G).

    Values of a linear character of an odd-order group are roots of unity
    of odd order, whose multiplicative order equals their conductor; the
    character's order is the lcm (sanity-checked per distinct value)."""
    from math import gcd as _gcd
    cache = chi.sub._cache.setdefault("det_order", {})
    got = cache.get(chi.values)
    if got is not None:
        return got
    det = det_character(chi)
    out = 1
    for v in set(det.values):
        if (v ** v.n) != ONE:
            raise AssertionError("determinant value is not a root of unity")
        out = out * v.n // _gcd(out, v.n)
    cache[chi.values] = out
    return out


def _divisors(n: int) -> list[int]:
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# canonical extension / Gallagher / Clifford
# ---------------------------------------------------------------------------

@dataclass
class CanonicalExtension:
    base: ClassFunction
    extension: ClassFunction
    det_order_ext: int
    index: int


def extensions_of(G: Subgroup, N: Subgroup, chi: ClassFunction) -> list[ClassFunction]:
    """All irreducible extensions of chi in Irr(G) (by restriction equality)."""
    out = []
    for cand in character_table(G):
        if cand.degree_int() != chi.degree_int():
            continue
        if restrict(cand, N) == chi:
            out.append(cand)
    return out


def canonical_extension(G: Subgroup, N: Subgroup, chi: ClassFunction) -> CanonicalExtension:
    """The unique extension of G-invariant chi with determinantal order
    coprime to |G:N| (requires gcd(|N|, |G:N|) = 1)."""
    if not is_normal(N, G):
        raise ValueError("N is not normal in G")
    index = G.order // N.order
    if gcd(N.order, index) != 1:
        raise ValueError("orders are not coprime")
    if stabilizer_of_character(G, chi).order != G.order:
        raise ValueError("character is not G-invariant")
    found = []
    for ext in extensions_of(G, N, chi):
        o = det_order(ext)
        if gcd(o, index) == 1:
            found.append((ext, o))
    if len(found) != 1:
        raise AssertionError(
            f"canonical extension not unique: {len(found)} candidates")
    ext, o = found[0]
    if o != det_order(chi):
        raise AssertionError("canonical extension changed the determinantal order")
    return CanonicalExtension(chi, ext, o, index)


def quotient_cached(G: Subgroup, N: Subgroup):
    cache = G._cache.setdefault("quotients", {})
    got = cache.get(N.mask)
    if got is None:
        got = quotient(G, N)
        cache[N.mask] = got
    return got


def inflate(lam: ClassFunction, qm, G: Subgroup) -> ClassFunction:
    """Pull a character of G/N back to G along the quotient map."""
    vals = []
    for c in G.group.classes:
        rep = int(G.members[c.representative])
        t = qm.assignment[rep]
        vals.append(lam.value_at(t))
    return ClassFunction(G, vals)


def deflate(chi: ClassFunction, qm) -> ClassFunction:
    """Push chi (trivial on ker qm) down to the quotient."""
    target = qm.target.whole
    K = qm.kernel
    deg = chi.values[0]
    for m in K.members:
        if chi.value_at(int(m)) != deg:
            raise ValueError("character is not trivial on the kernel")
    vals = []
    for c in target.group.classes:
        t = int(target.members[c.representative])
        vals.append(chi.value_at(qm.section(t)))
    return ClassFunction(target, vals)


def gallagher(G: Subgroup, N: Subgroup, psi: ClassFunction) -> dict:
    """Bijection Irr(G/N) -> Irr(G | psi|_N), lam -> lam*psi."""
    chi = restrict(psi, N)
    if not chi.is_irreducible():
        raise ValueError("psi does not restrict irreducibly (not an extension)")
    quot, qm = quotient_cached(G, N)
    out = {}
    above = {c.values for c in irr_above(G, N, chi)}
    for lam in character_table(quot):
        prod = inflate(lam, qm, G) * psi
        if not prod.is_irreducible():
            raise AssertionError("Gallagher product is not irreducible")
        out[lam] = prod
    prods = {p.values for p in out.values()}
    if len(prods) != len(out) or prods != above:
        raise AssertionError("Gallagher map is not a bijection onto Irr(G|chi)")
    return out


@dataclass
class CliffordData:
    ambient: Subgroup
    normal: Subgroup
    theta: ClassFunction
    stabilizer: Subgroup
    to_ambient: dict      # Irr(T | theta) values -> Irr(G | theta)
    from_ambient: dict    # Irr(G | theta) values -> Irr(T | theta)


def clifford(G: Subgroup, N: Subgroup, theta: ClassFunction) -> CliffordData:
    if not is_normal(N, G):
        raise ValueError("N is not normal in G")
    T = stabilizer_of_character(G, theta)
    to_amb = {}
    from_amb = {}
    for eta in irr_above(T, N, theta):
        ind = induce(G, T, eta)
        if not ind.is_irreducible():
            raise AssertionError("Clifford induction is not irreducible")
        to_amb[eta.values] = (eta, ind)
        from_amb[ind.values] = eta
    above_G = irr_above(G, N, theta)
    if {chi.values for chi in above_G} != set(from_amb):
        raise AssertionError("Clifford correspondence is not onto Irr(G|theta)")
    return CliffordData(G, N, theta, T, to_amb, from_amb)


def clifford_correspondent(G: Subgroup, N: Subgroup, theta: ClassFunction,
                           chi: ClassFunction) -> ClassFunction:
    """The unique chi_theta in Irr(G(theta)|theta) with chi_theta^G = chi."""
    if not lies_above(chi, theta):
        raise ValueError("chi does not lie above theta")
    T = stabilizer_of_character(G, theta)
    if T.order == G.order:
        return chi
    cands = []
    for eta in irr_above(T, N, theta):
        if induce(G, T, eta) == chi:
            cands.append(eta)
    if len(cands) != 1:
        raise AssertionError(f"Clifford correspondent not unique: {len(cands)}")
    return cands[0]
