"""Hall systems adapted to a character tower, the hat-group selections,
series shifting, and the replacement theorems for q-group characters."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from chartower.chartable import ClassFunction, character_table, trivial_character
from chartower.charops import (extensions_of, restrict,
                               stabilizer_of_character)
from chartower.group import (Subgroup, centralizer, hall_subgroups_all,
                             intersection, is_normal, normalizer, pi_part,
                             product_set, subgroup_closure)
from chartower.towers import (NormalSeries, Tower, TriangularSet, derived_cell,
                              star_data, triangular_of_tower, StarData)

__all__ = ["HallSystem", "hall_system", "HatData", "qhat", "phat",
           "ShiftedSystem", "shift", "fixedpoint_linear", "ReplacementResult",
           "replace_character", "chain_replace"]


@dataclass
class HallSystem:
    A: Subgroup
    B: Subgroup
    tower: Tower
    tri: TriangularSet
    stars: StarData

    def stab_chain(self, h: int, side: str) -> Subgroup:
        """A(chi_1..chi_h) resp. B(chi_1..chi_h)."""
        cur = self.A if side == "A" else self.B
        for chi in self.tower.chars[1:h + 1]:
            cur = stabilizer_of_character(cur, chi)
        return cur


def _stabilizer_chain(G: Subgroup, chars) -> Subgroup:
    cur = G
    for chi in chars:
        cur = stabilizer_of_character(cur, chi)
    return cur


def hall_system(tower: Tower, tri: Optional[TriangularSet] = None) -> HallSystem:
    """A Hall pi,pi'-system {A, B} of the ambient group reducing into every
    tower stabilizer, with the deepest reduction pinned at (P*, Q*)."""
    series = tower.series
    G = series.ambient
    pi, copi = series.pi, series.co_pi()
    if tri is None:
        tri = triangular_of_tower(tower, allow_deep=True)
    stars = star_data(tri, tower)
    m = series.m
    p_star = stars.p_star[2 * tri.k] if tri.k >= 1 else stars.p_star[0]
    q_star = stars.q_star[2 * tri.l - 1] if tri.l >= 1 else G.parent.subgroup(
        [G.parent.identity])
    stabs = [G]
    for chi in tower.chars[1:]:
        stabs.append(stabilizer_of_character(stabs[-1], chi))

    topped = series.terms[-1] == G

    def good(H: Subgroup, star: Subgroup, primes) -> bool:
        if not star <= H:
            return False
        cur = H
        for h in range(1, m + 1):
            cur = stabilizer_of_character(cur, tower.chars[h])
            if cur.order != pi_part(stabs[h].order, primes):
                return False
        if intersection(cur, series.terms[m]).order != star.order:
            return False
        if topped and cur.order != star.order:
            return False
        return True

    A = next((H for H in hall_subgroups_all(G, pi) if good(H, p_star, pi)), None)
    B = next((H for H in hall_subgroups_all(G, copi) if good(H, q_star, copi)),
             None)
    if A is None or B is None:
        raise AssertionError("no adapted Hall system found (internal inconsistency)")
    return HallSystem(A, B, tower, tri, stars)


# ---------------------------------------------------------------------------
# the hat groups
# ---------------------------------------------------------------------------

@dataclass
class HatData:
    side: str                     # "Q" or "P"
    hat: Subgroup                 # Q-hat resp. P-hat
    anchored: Subgroup            # Q-hat(beta_{2k-1,2k}) resp. P-hat(alpha_..)
    script: Subgroup              # anchored * Q*_{2l-1} resp. anchored * P*_{2k}
    tried: int = 0
    clauses: dict = field(default_factory=dict)


def qhat(system: HallSystem, m: Optional[int] = None) -> HatData:
    """Q-hat inside G(alpha*_{2k}) per the anchor equation
    N(P*_{2k} in B(chi_1..chi_{2k})) = Q-hat(beta_{2k-1,2k})."""
    tower, tri, stars = system.tower, system.tri, system.stars
    series = tower.series
    if m is None:
        m = series.m
    k, l = m // 2, (m + 1) // 2
    pi, copi = series.pi, series.co_pi()
    G = series.ambient
    if k == 0:
        raise ValueError("qhat needs at least one even level (m >= 2)")
    astar = stars.alpha_star[2 * k]
    Gp = stabilizer_of_character(G, astar)
    cell_grp, cell_chr = derived_cell(tri, "q", k, k)
    anchor = normalizer(system.stab_chain(2 * k, "B"), stars.p_star[2 * k])
    cand_list = hall_subgroups_all(Gp, copi)
    tried = 0
    for Qh in cand_list:
        tried += 1
        if not anchor <= Qh:
            continue
        if stabilizer_of_character(Qh, cell_chr).mask != anchor.mask:
            continue
        data = HatData("Q", Qh, anchor, _script_q(tri, stars, anchor, l))
        data.tried = tried
        _verify_qhat(data, system, m)
        return data
    raise AssertionError("no Q-hat satisfies the anchor equation "
                         f"({tried} Hall subgroups tried)")


def _script_q(tri, stars, anchored, l):
    qs = stars.q_star[2 * l - 1]
    return product_set_or_closure(anchored, qs)


def product_set_or_closure(A: Subgroup, B: Subgroup) -> Subgroup:
    try:
        return product_set(A, B)
    except ValueError:
        raise AssertionError("hat product is not a subgroup")


def _verify_qhat(data: HatData, system: HallSystem, m: int) -> None:
    tower, tri, stars = system.tower, system.tri, system.stars
    series = tower.series
    k, l = m // 2, (m + 1) // 2
    copi = series.co_pi()
    G = series.ambient
    Gp = stabilizer_of_character(G, stars.alpha_star[2 * k])
    Qh = data.hat
    checks = {}
    checks["hall_in_G'"] = Qh.order == pi_part(Gp.order, copi)
    for i in range(1, k + 1):
        cell_grp, cell_chr = derived_cell(tri, "q", i, k)
        anch_i = stabilizer_of_character(Qh, cell_chr)
        s_odd = _stabilizer_chain(Qh, tower.chars[1:2 * i])
        s_even = _stabilizer_chain(Qh, tower.chars[1:2 * i + 1])
        s_beta = _stabilizer_chain(Qh, [tri.beta[t] for t in range(1, 2 * i, 2)])
        checks[f"pq31a[{i}]"] = (anch_i.mask == s_odd.mask == s_even.mask
                                 == s_beta.mask)
        g_cell = stabilizer_of_character(Gp, cell_chr)
        g_odd = _stabilizer_chain(Gp, tower.chars[1:2 * i])
        g_even = _stabilizer_chain(Gp, tower.chars[1:2 * i + 1])
        g_beta = _stabilizer_chain(Gp, [tri.beta[t] for t in range(1, 2 * i, 2)])
        checks[f"pq30b[{i}]"] = all(
            anch_i.order == pi_part(X.order, copi)
            for X in (g_cell, g_odd, g_even, g_beta))
        alpha_stab = _stabilizer_chain(Qh, [tri.alpha[t] for t in range(2, 2 * i + 1, 2)])
        checks[f"hat:p1e[{i}]"] = s_odd <= alpha_stab
    for i in range(1, l):
        cell_grp, cell_chr = derived_cell(tri, "q", i, k)
        anch_i = stabilizer_of_character(Qh, cell_chr)
        checks[f"pq31b[{i}]"] = normalizer(anch_i, tri.Q[2 * i + 1]).order == anch_i.order
    data.clauses = checks
    bad = [k2 for k2, v in checks.items() if not v]
    if bad:
        raise AssertionError(f"Q-hat clause failures: {bad}")


def phat(system: HallSystem, m: Optional[int] = None) -> HatData:
    """P-hat inside G(beta*_{2l-1}), symmetric to qhat."""
    tower, tri, stars = system.tower, system.tri, system.stars
    series = tower.series
    if m is None:
        m = series.m
    k, l = m // 2, (m + 1) // 2
    pi = series.pi
    G = series.ambient
    bstar = stars.beta_star[2 * l - 1]
    Gp = stabilizer_of_character(G, bstar)
    cell_grp, cell_chr = derived_cell(tri, "p", l - 1, l - 1) if l >= 2 else \
        (tri.P[0], tri.alpha[0])
    anchor = normalizer(system.stab_chain(2 * l - 1, "A"),
                        stars.q_star[2 * l - 1])
    tried = 0
    for Ph in hall_subgroups_all(Gp, pi):
        tried += 1
        if not anchor <= Ph:
            continue
        if stabilizer_of_character(Ph, cell_chr).mask != anchor.mask:
            continue
        data = HatData("P", Ph, anchor,
                       product_set_or_closure(anchor, system.stars.p_star[2 * k]))
        data.tried = tried
        return data
    raise AssertionError(f"no P-hat satisfies the anchor equation ({tried} tried)")


# ---------------------------------------------------------------------------
# shifting
# ---------------------------------------------------------------------------

@dataclass
class ShiftedSystem:
    series: NormalSeries
    tower: Tower
    tri: TriangularSet


def shift(tower: Tower, tri: Optional[TriangularSet] = None) -> ShiftedSystem:
    """Replace G_1 = Q_1 by the trivial group (legal when G_2 splits as
    pi x pi' and chi_1 is invariant in the ambient group)."""
    series = tower.series
    G = series.ambient
    par = G.parent
    if series.m < 2:
        raise ValueError("shifting needs m >= 2")
    if tri is None:
        tri = triangular_of_tower(tower, allow_deep=True)
    chi1 = tower.chars[1]
    if stabilizer_of_character(G, chi1).order != G.order:
        raise ValueError("chi_1 is not invariant in the ambient group")
    G2 = series.terms[2]
    P2, Q1 = tri.P[2], tri.Q[1]
    if P2.order * Q1.order != G2.order or intersection(P2, Q1).order != 1:
        raise ValueError("G_2 does not split as P_2 x Q_1")
    for a in P2.members:
        row = par.table[a, Q1.members_arr]
        col = par.table[Q1.members_arr, a]
        if not (row == col).all():
            raise ValueError("G_2 is not the direct product P_2 x Q_1")
    triv = par.subgroup([par.identity])
    new_terms = [triv, triv, P2] + series.terms[3:]
    new_series = NormalSeries(G, new_terms, series.pi)
    new_chars = ([trivial_character(triv), trivial_character(triv), tri.alpha[2]]
                 + tower.chars[3:])
    new_tower = Tower(new_series, new_chars)
    q = dict(tri.Q)
    qb = dict(tri.beta)
    q[1] = triv
    qb[1] = trivial_character(triv)
    new_tri = TriangularSet(new_series, q, qb, dict(tri.P), dict(tri.alpha))
    return ShiftedSystem(new_series, new_tower, new_tri)


# ---------------------------------------------------------------------------
# replacement results (petite and multiple changes)
# ---------------------------------------------------------------------------

def fixedpoint_linear(Q: Subgroup, P: Subgroup, Q1: Subgroup,
                      ambient: Subgroup) -> ClassFunction:
    """A linear lambda of Q1 with C(P in Q1) <= Ker(lambda) and
    (QP)(lambda) = Q; canonically least such."""
    par = ambient.parent
    if normalizer(Q, P).order != Q.order:
        raise ValueError("Q does not normalize P")
    QP = subgroup_closure(par, list(Q.members) + list(P.members))
    if normalizer(QP, Q1).order != QP.order:
        raise ValueError("Q x| P does not act on Q1")
    ker_action = [p for p in P.members
                  if all(par.conj(x, p) == x for x in Q1.members)]
    if len(ker_action) != 1:
        raise ValueError("P does not act faithfully on Q1")
    CP = centralizer(Q1, P)
    cands = []
    for lam in character_table(Q1).linears():
        if any(lam.value_at(int(c)) != lam.values[0] for c in CP.members):
            continue
        if stabilizer_of_character(QP, lam).mask == Q.mask:
            cands.append(lam)
    if not cands:
        raise AssertionError("no fixed-point linear character exists "
                             "(contradicts the stabilizer proposition)")
    return min(cands, key=lambda f: f.serialize())


@dataclass
class ReplacementResult:
    original: ClassFunction
    replaced: ClassFunction
    extension: ClassFunction
    stabilizer: Subgroup     # Q2(beta^nu_1)

    def verify(self, P: Subgroup, Q2: Subgroup) -> None:
        b, bn = self.original, self.replaced
        if stabilizer_of_character(P, b).mask != stabilizer_of_character(P, bn).mask:
            raise AssertionError("P-stabilizers differ after replacement")
        if not stabilizer_of_character(Q2, b) <= self.stabilizer:
            raise AssertionError("Q2-stabilizer did not grow")
        if restrict(self.extension, bn.sub) != bn:
            raise AssertionError("claimed extension does not restrict correctly")


def _check_cc_hyp(Q1: Subgroup, Q2: Subgroup, P: Subgroup) -> None:
    par = Q1.parent
    q_primes = {p for p in _prime_factors(Q1.order * Q2.order)}
    p_primes = _prime_factors(P.order)
    if len(q_primes) > 1 or len(p_primes) > 1 or (q_primes and q_primes == p_primes):
        raise ValueError("need a q-chain and a p-group for distinct odd primes")
    if not is_normal(Q1, Q2):
        raise ValueError("Q1 is not normal in Q2")
    if normalizer(P, Q1).order != P.order:
        raise ValueError("P does not normalize Q1")
    PQ1 = subgroup_closure(par, list(P.members) + list(Q1.members))
    if normalizer(Q2, PQ1).order != Q2.order:
        raise ValueError("Q2 does not normalize P*Q1")


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


def replace_character(Q1: Subgroup, Q2: Subgroup, P: Subgroup,
                      beta1: ClassFunction) -> ReplacementResult:
    """beta^nu_1 with P(beta_1) = P(beta^nu_1), Q2(beta_1) <= Q2(beta^nu_1),
    and an extension of beta^nu_1 to Q2(beta^nu_1); canonically least valid."""
    _check_cc_hyp(Q1, Q2, P)
    Pb = stabilizer_of_character(P, beta1)
    Qb = stabilizer_of_character(Q2, beta1)
    for cand in sorted(character_table(Q1), key=lambda f: f.serialize()):
        if stabilizer_of_character(P, cand).mask != Pb.mask:
            continue
        S = stabilizer_of_character(Q2, cand)
        if not Qb <= S:
            continue
        exts = extensions_of(S, Q1, cand)
        if not exts:
            continue
        ext = min(exts, key=lambda f: f.serialize())
        res = ReplacementResult(beta1, cand, ext, S)
        res.verify(P, Q2)
        return res
    raise AssertionError("no replacement character found (contradicts the "
                         "replacement theorem)")


def chain_replace(Qs: list[Subgroup], Ps: list[Subgroup]) -> list[ClassFunction]:
    """Linear beta_i on the chain Q_1 <| ... <| Q_{n+1} with compatible
    restrictions and (Q P_i)(beta_i) = Q K_i, K_i = C(Q_i in P_i)."""
    n = len(Ps)
    if len(Qs) != n + 1:
        raise ValueError("need one more Q than P")
    Q = Qs[-1]
    par = Q.parent
    for i in range(n):
        for j in range(i, n):
            if normalizer(Ps[j], Ps[i]).order != Ps[j].order \
                    or normalizer(Ps[j], Qs[i]).order != Ps[j].order:
                raise ValueError("P-normalization hypothesis fails")
    for i in range(1, n + 2):
        for j in range(min(i, n + 1) - 1):
            PQ = subgroup_closure(par, list(Ps[j].members) + list(Qs[j].members))
            if normalizer(Qs[i - 1], PQ).order != Qs[i - 1].order:
                raise ValueError("Q-normalization hypothesis fails")
    Ks = [centralizer(Ps[i], Qs[i]) for i in range(n)]
    for beta in sorted(character_table(Q).linears(), key=lambda f: f.serialize()):
        ok = True
        for i in range(n):
            bi = restrict(beta, Qs[i])
            QPi = subgroup_closure(par, list(Q.members) + list(Ps[i].members))
            target = subgroup_closure(par, list(Q.members) + list(Ks[i].members))
            if stabilizer_of_character(QPi, bi).mask != target.mask:
                ok = False
                break
        if ok:
            return [restrict(beta, Qs[i]) for i in range(n)] + [beta]
    raise AssertionError("no chain replacement found (contradicts the "
                         "multiple-change theorem)")
