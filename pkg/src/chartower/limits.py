"""Linear quintuples (G, A, phi, N, psi), reductions, linear limits,
faithful limits, limits of characters, and monomiality testing.

A reduction extends the G-invariant linear phi to a linear phi' on a bigger
normal A' under psi and passes to stabilizers with the Clifford
correspondent of psi; a limit admits no proper reduction; the faithful
limit quotients everything by Ker(phi). Histories record each step so
characters can be carried down (and induced back up for verification).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from chartower.chartable import (ClassFunction, character_table, inner_product,
                                 trivial_character)
from chartower.charops import (clifford_correspondent, induce, inflate,
                               kernel_of, lies_above, quotient_cached, restrict,
                               stabilizer_of_character)
from chartower.correspond import invariant_irreducibles
from chartower.group import (QuotientMap, Subgroup, derived_subgroup,
                             intersection, is_normal, normal_subgroups,
                             normal_subgroups_in, quotient, subgroup_classes,
                             subgroup_closure)

__all__ = ["LinearQuintuple", "ReductionStep", "FaithfulLimit", "reduce_quintuple",
           "proper_reductions", "invariant_choice", "linear_limit", "faithful",
           "limit_of_char", "induce_back", "is_monomial", "monomial_witnesses",
           "linear_characters"]


def linear_characters(H: Subgroup) -> list[ClassFunction]:
    """Lin(H), via the abelianization when H is not abelian."""
    key = "linear_chars"
    if key in H._cache:
        return H._cache[key]
    if H.group.is_abelian():
        out = list(character_table(H))
    else:
        D = derived_subgroup(H)
        quot, qm = quotient_cached(H, D)
        out = [inflate(lam, qm, H) for lam in character_table(quot)]
    out = sorted(out, key=lambda f: f.serialize())
    H._cache[key] = out
    return out


class LinearQuintuple:
    """(G, A, phi, N, psi): A, N normal in G, A <= N, phi in Lin(A)
    G-invariant, psi in Irr(N | phi)."""

    def __init__(self, G: Subgroup, A: Subgroup, phi: ClassFunction,
                 N: Subgroup, psi: ClassFunction, history: tuple = (),
                 check: bool = True):
        self.G, self.A, self.phi, self.N, self.psi = G, A, phi, N, psi
        self.history = history
        if check:
            self.validate()

    def validate(self) -> None:
        G, A, phi, N, psi = self.G, self.A, self.phi, self.N, self.psi
        if not (A <= N and N <= G):
            raise ValueError("need A <= N <= G")
        if not is_normal(A, G) or not is_normal(N, G):
            raise ValueError("A and N must be normal in G")
        if phi.sub != A or phi.degree_int() != 1:
            raise ValueError("phi must be a linear character of A")
        if stabilizer_of_character(G, phi).order != G.order:
            raise ValueError("phi is not G-invariant")
        if psi.sub != N or not psi.is_irreducible():
            raise ValueError("psi must be irreducible on N")
        if not lies_above(psi, phi):
            raise ValueError("psi does not lie above phi")

    def key(self):
        return (self.G.mask, self.A.mask, self.phi.values, self.N.mask,
                self.psi.values)

    def __repr__(self):
        return (f"LinearQuintuple(|G|={self.G.order}, |A|={self.A.order}, "
                f"|N|={self.N.order}, psi(1)={self.psi.degree_int()})")


@dataclass
class ReductionStep:
    Aprime: Subgroup
    phiprime: ClassFunction

    def sort_key(self):
        return (-self.Aprime.order, self.phiprime.serialize())


def proper_reductions(q: LinearQuintuple) -> list[ReductionStep]:
    """All (A', phi') with A < A' <= N normal in G, phi' linear extending phi
    under psi; empty iff q is a linear limit."""
    out = []
    linear_psi = q.psi.degree_int() == 1
    for Ap in normal_subgroups_in(q.G, q.N):
        if not q.A < Ap:
            continue
        res = restrict(q.psi, Ap)
        if linear_psi:
            if restrict(res, q.A) == q.phi:
                out.append(ReductionStep(Ap, res))
            continue
        for lam in linear_characters(Ap):
            if restrict(lam, q.A) != q.phi:
                continue
            if inner_product(res, lam).is_zero():
                continue
            out.append(ReductionStep(Ap, lam))
    out.sort(key=ReductionStep.sort_key)
    return out


def reduce_quintuple(q: LinearQuintuple, Ap: Subgroup,
                     lam: ClassFunction) -> LinearQuintuple:
    """The reduction (G(phi'), A', phi', N(phi'), psi_{phi'})."""
    if not is_normal(Ap, q.G) or not (q.A <= Ap and Ap <= q.N):
        raise ValueError("invalid reduction subgroup")
    if lam.degree_int() != 1 or restrict(lam, q.A) != q.phi:
        raise ValueError("phi' must be a linear extension of phi")
    if not lies_above(q.psi, lam):
        raise ValueError("phi' does not lie under psi")
    Gp = stabilizer_of_character(q.G, lam)
    Np = stabilizer_of_character(q.N, lam)
    psip = clifford_correspondent(q.N, Ap, lam, q.psi)
    if psip.sub != Np:
        raise AssertionError("Clifford correspondent has the wrong domain")
    hist = q.history + (("reduce", Ap, lam),)
    return LinearQuintuple(Gp, Ap, lam, Np, psip, history=hist)


def invariant_choice(q: LinearQuintuple, Ap: Subgroup, X: Subgroup,
                     under: Optional[ClassFunction] = None) -> Optional[ClassFunction]:
    """Canonically least X-invariant linear extension phi' of phi on A'
    lying under psi (and under `under` if given). X must normalize A' and
    fix psi's data; coprimality makes the orbit average work."""
    cands = []
    target = under if under is not None else q.psi
    res = restrict(target, Ap)
    for lam in linear_characters(Ap):
        if restrict(lam, q.A) != q.phi:
            continue
        if inner_product(res, lam).is_zero():
            continue
        if stabilizer_of_character(X, lam).order != X.order:
            continue
        cands.append(lam)
    if not cands:
        return None
    return min(cands, key=lambda f: f.serialize())


def linear_limit(q: LinearQuintuple,
                 chooser: Optional[Callable] = None) -> LinearQuintuple:
    """Iterate reductions to a limit. The canonical strategy takes the first
    candidate in (|A'| descending, serialized phi') order; a chooser,
    given (q, steps), may pick differently or return None to stop."""
    while True:
        steps = proper_reductions(q)
        if not steps:
            return q
        pick = steps[0] if chooser is None else chooser(q, steps)
        if pick is None:
            return q
        q = reduce_quintuple(q, pick.Aprime, pick.phiprime)


@dataclass
class FaithfulLimit:
    limit: LinearQuintuple          # the limit quintuple upstairs
    kernel: Subgroup                # Ker(limit phi)
    qmap: QuotientMap
    quintuple: LinearQuintuple      # the quotient quintuple (fl(...))

    @property
    def G(self):
        return self.quintuple.G

    @property
    def A(self):
        return self.quintuple.A

    @property
    def phi(self):
        return self.quintuple.phi

    @property
    def N(self):
        return self.quintuple.N

    @property
    def psi(self):
        return self.quintuple.psi


def push_character(chi: ClassFunction, qm: QuotientMap) -> ClassFunction:
    """Image of chi (trivial on ker qm) on the image subgroup."""
    sub = chi.sub
    image = qm.image_subgroup(sub)
    # preimage lookup restricted to the domain
    back: dict[int, int] = {}
    for m in sub.members:
        im = qm.assignment[int(m)]
        if im not in back:
            back[im] = int(m)
    vals = []
    for c in image.group.classes:
        t = int(image.members[c.representative])
        vals.append(chi.value_at(back[t]))
    return ClassFunction(image, vals)


def faithful(q: LinearQuintuple, check_structure: bool = True) -> FaithfulLimit:
    """Quotient a limit quintuple by Ker(phi)."""
    if proper_reductions(q):
        raise ValueError("quintuple is not a linear limit")
    K = kernel_of(q.phi)
    quot, qm = quotient(q.G, K)
    Gq = quot
    Aq = qm.image_subgroup(q.A)
    Nq = qm.image_subgroup(q.N)
    phiq = push_character(q.phi, qm)
    psiq = push_character(q.psi, qm)
    flq = LinearQuintuple(Gq, Aq, phiq, Nq, psiq,
                          history=q.history + (("quotient", qm),))
    out = FaithfulLimit(q, K, qm, flq)
    if check_structure:
        verify_faithful_structure(out)
    return out


def verify_faithful_structure(fl: FaithfulLimit) -> None:
    """fl(A) = Z(fl(N)) cyclic central, maximal abelian fl(G)-invariant in
    fl(N); when N is a p-group, fl(N) is cyclic or extraspecial-by-center
    with psi vanishing off fl(A)."""
    from chartower.group import center, centralizer
    q = fl.quintuple
    G, A, N = q.G, q.A, q.N
    if kernel_of(q.phi).order != 1:
        raise AssertionError("faithful limit phi is not faithful")
    if center(N).mask != A.mask:
        raise AssertionError("fl(A) != Z(fl(N))")
    if not A <= center(G):
        raise AssertionError("fl(A) is not central in fl(G)")
    par = G.parent
    cyc = subgroup_closure(par, [min(A.members, key=lambda m: -par.element_orders[m])])
    if cyc.order != A.order:
        raise AssertionError("fl(A) is not cyclic")
    for M in normal_subgroups_in(G, N):
        if A < M and M.group.is_abelian():
            raise AssertionError("fl(A) is not maximal abelian invariant in fl(N)")
    primes = {p for p in _prime_factors(N.order)}
    if len(primes) == 1 and N.order > 1:
        p = primes.pop()
        if N.order > A.order:
            D = derived_subgroup(N)
            if not (D <= A and D.order in (1, p)):
                raise AssertionError("fl(N)' is not of order p inside fl(A)")
            for c, cl in enumerate(N.group.classes):
                rep = int(N.members[cl.representative])
                inA = rep in A
                v = q.psi.values[c]
                if not inA and not v.is_zero():
                    raise AssertionError("psi does not vanish off fl(A)")


def _prime_factors(n: int) -> set:
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


# ---------------------------------------------------------------------------
# limits of characters along a recorded history
# ---------------------------------------------------------------------------

def limit_of_char(history: tuple, H: Subgroup, chi: ClassFunction):
    """Carry chi in Irr(H) down a reduction/quotient history.

    Returns (domain, character); raises if chi fails to lie over some phi'.
    """
    cur_H, cur = H, chi
    for kind, *data in history:
        if kind == "reduce":
            Ap, lam = data
            cur = clifford_correspondent(cur_H, Ap, lam, cur)
            cur_H = cur.sub
        elif kind == "quotient":
            (qm,) = data
            cur = push_character(cur, qm)
            cur_H = cur.sub
        else:
            raise ValueError(f"unknown history record {kind}")
    return cur_H, cur


def induce_back(history: tuple, H: Subgroup, chi: ClassFunction) -> None:
    """Verify the round trip: replay chi down the history, then climb back,
    checking at every reduction that induction recovers the upper character
    and at every quotient that inflation does. Raises on any mismatch."""
    stack = []
    cur_H, cur = H, chi
    for kind, *data in history:
        stack.append((kind, data, cur_H, cur))
        if kind == "reduce":
            Ap, lam = data
            cur = clifford_correspondent(cur_H, Ap, lam, cur)
            cur_H = cur.sub
        else:
            (qm,) = data
            cur = push_character(cur, qm)
            cur_H = cur.sub
    for kind, data, up_H, up_chi in reversed(stack):
        if kind == "reduce":
            lifted = induce(up_H, cur.sub, cur)
        else:
            (qm,) = data
            vals = [cur.value_at(qm.assignment[int(up_H.members[c.representative])])
                    for c in up_H.group.classes]
            lifted = ClassFunction(up_H, vals)
        if lifted != up_chi:
            raise AssertionError("limit character does not induce back correctly")
        cur_H, cur = up_H, up_chi


# ---------------------------------------------------------------------------
# monomiality
# ---------------------------------------------------------------------------

def monomial_witnesses(G: Subgroup) -> dict:
    """chi.values -> (H, lambda) with lambda^G = chi, for every monomial chi."""
    key = "monomial_witnesses"
    if key in G._cache:
        return G._cache[key]
    table = character_table(G)
    need_by_index: dict[int, set] = {}
    for chi in table:
        need_by_index.setdefault(chi.degree_int(), set()).add(chi.values)
    witness: dict = {}
    for chi in table.linears():
        witness[chi.values] = (G, chi)
    need_by_index.pop(1, None)
    if need_by_index:
        for H in sorted(subgroup_classes(G), key=lambda s: -s.order):
            idx = G.order // H.order
            if idx not in need_by_index or not need_by_index[idx]:
                continue
            for lam in linear_characters(H):
                ind = induce(G, H, lam)
                if ind.values in need_by_index[idx] and ind.values not in witness:
                    witness[ind.values] = (H, lam)
                    need_by_index[idx].discard(ind.values)
            if all(not v for v in need_by_index.values()):
                break
    G._cache[key] = witness
    return witness


def is_monomial(G: Subgroup, chi: ClassFunction):
    """(True, (H, lambda)) with lambda^G = chi, or (False, None)."""
    w = monomial_witnesses(G).get(chi.values)
    return (True, w) if w is not None else (False, None)
