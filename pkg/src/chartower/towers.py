"""Character towers of alternating normal series and their triangular sets.

Climbing a tower level by level: at level s the bottom stabilizer group
G_{s,s-1} splits as Hall complement X_s acting on the previous bottom, the
transported character chi_{s,s-1} factors as gamma_s * theta^e, and the
upper tower moves by a Clifford correspondence into the stabilizer of
chi_{s,s-1} followed by an A-correspondence (A = X_s) into N(X_s in -).
Every level keeps enough data to invert the construction exactly, which is
what tower_of_triangle does.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from chartower.chartable import ClassFunction, character_table, trivial_character
from chartower.charops import (canonical_extension, clifford_correspondent,
                               conjugate_character, induce, irr_above,
                               lies_above, stabilizer_of_character)
from chartower.correspond import (a_correspondence, inverse_a_correspondence,
                                  make_action)
from chartower.group import (Subgroup, conjugate_subgroup, hall_subgroup,
                             is_normal, normalizer, pi_part, product_set,
                             subgroup_closure)

__all__ = ["NormalSeries", "Tower", "TriangularSet", "StarData",
           "enumerate_towers", "towers_up_to_conjugacy", "triangular_of_tower",
           "tower_of_triangle", "derived_cell", "star_data", "conjugate_tower",
           "conjugate_triangular_set", "sets_conjugate",
           "validate_triangular_set", "glauberman_of"]

MAX_DEPTH_DEFAULT = 4


class NormalSeries:
    """1 = G_0 <| G_1 <| ... <| G_m <| G, alternating pi'/pi factors
    (pi' at odd steps), every term normal in the odd-order ambient G."""

    def __init__(self, ambient: Subgroup, terms: list[Subgroup], pi: frozenset):
        self.ambient = ambient
        self.terms = list(terms)
        self.pi = frozenset(pi)
        self.m = len(terms) - 1
        if ambient.order % 2 == 0:
            raise ValueError("ambient group must have odd order")
        if terms[0].order != 1:
            raise ValueError("series must start at the trivial subgroup")
        prev = terms[0]
        for i, t in enumerate(terms):
            if not is_normal(t, ambient):
                raise ValueError(f"term {i} is not normal in the ambient group")
            if i == 0:
                continue
            if not prev <= t:
                raise ValueError("series is not ascending")
            ratio = t.order // prev.order
            part = pi_part(ratio, self.pi)
            if i % 2 == 1 and part != 1:
                raise ValueError(f"factor {i} is not a pi'-group")
            if i % 2 == 0 and part != ratio:
                raise ValueError(f"factor {i} is not a pi-group")
            prev = t

    def prefix(self, s: int) -> "NormalSeries":
        return NormalSeries(self.ambient, self.terms[:s + 1], self.pi)

    def co_pi(self) -> frozenset:
        out = set()
        n = self.ambient.order
        d = 2
        while d * d <= n:
            if n % d == 0:
                if d not in self.pi:
                    out.add(d)
                while n % d == 0:
                    n //= d
            d += 1
        if n > 1 and n not in self.pi:
            out.add(n)
        return frozenset(out)

    def __repr__(self):
        return ("NormalSeries(" + " <| ".join(str(t.order) for t in self.terms)
                + f" inside {self.ambient.order})")


class Tower:
    """chars[i] in Irr(terms[i]), each lying over its predecessor."""

    def __init__(self, series: NormalSeries, chars: list[ClassFunction]):
        if len(chars) != series.m + 1:
            raise ValueError("tower length mismatch")
        for i, chi in enumerate(chars):
            if chi.sub != series.terms[i]:
                raise ValueError(f"character {i} lives on the wrong group")
            if i > 0 and not lies_above(chi, chars[i - 1]):
                raise ValueError(f"character {i} does not lie over its predecessor")
        self.series = series
        self.chars = chars
        self.m = series.m

    def key(self):
        return tuple(c.values for c in self.chars)

    def prefix(self, s: int) -> "Tower":
        return Tower(self.series.prefix(s), self.chars[:s + 1])

    def __eq__(self, other):
        return (isinstance(other, Tower) and self.series.terms == other.series.terms
                and self.key() == other.key())

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        return f"Tower(degrees={[c.degree_int() for c in self.chars]})"


def enumerate_towers(series: NormalSeries) -> list[Tower]:
    towers: list[Tower] = []

    def extend(chars, i):
        if i > series.m:
            towers.append(Tower(series, list(chars)))
            return
        for chi in irr_above(series.terms[i], series.terms[i - 1], chars[-1]):
            chars.append(chi)
            extend(chars, i + 1)
            chars.pop()

    extend([trivial_character(series.terms[0])], 1)
    return towers


def conjugate_tower(tower: Tower, g: int) -> Tower:
    return Tower(tower.series, [conjugate_character(c, int(g))
                                for c in tower.chars])


def towers_up_to_conjugacy(series: NormalSeries) -> list[list[Tower]]:
    """Partition of all towers into ambient-conjugacy classes."""
    seen: set = set()
    classes = []
    for t in enumerate_towers(series):
        if t.key() in seen:
            continue
        orbit = {}
        for g in series.ambient.members:
            tg = conjugate_tower(t, g)
            orbit[tg.key()] = tg
        seen |= set(orbit)
        classes.append(sorted(orbit.values(), key=lambda x: str(x.key())))
    return classes


# ---------------------------------------------------------------------------
# the ladder (tower -> triangular set, with full inversion records)
# ---------------------------------------------------------------------------

@dataclass
class Ladder:
    tower: Tower
    levels: dict = field(default_factory=dict)   # s -> {i: (G_{i,s}, chi_{i,s})}
    halls: dict = field(default_factory=dict)    # s -> X_s (Q_1, P_2, Q_3, ...)
    factors: dict = field(default_factory=dict)  # s -> beta_s / alpha_s

    def bottom_char(self, t: int) -> ClassFunction:
        """chi_{t,t-1}: the character factored at level t."""
        if t == 1:
            return self.tower.chars[1]
        return self.levels[t - 1][t][1]


def _outer_product_char(H: Subgroup, B: Subgroup, X: Subgroup,
                        gamma: ClassFunction, theta_ext: ClassFunction) -> ClassFunction:
    """(gamma . theta^e)(b*t) = gamma(t) * theta^e(b*t) on H = B x| X."""
    par = H.parent
    vals = []
    for c in H.group.classes:
        h = int(H.members[c.representative])
        t = next(t for t in X.members if par.mul(h, par.inv_of(int(t))) in B)
        vals.append(gamma.value_at(int(t)) * theta_ext.value_at(h))
    return ClassFunction(H, vals)


def _split_product(H: Subgroup, B: Subgroup, X: Subgroup, chi: ClassFunction,
                   theta_ext: ClassFunction) -> ClassFunction:
    """The unique gamma in Irr(X) with chi = gamma . theta_ext."""
    matches = [gamma for gamma in character_table(X)
               if _outer_product_char(H, B, X, gamma, theta_ext) == chi]
    if len(matches) != 1:
        raise AssertionError(f"product factorization not unique: {len(matches)} found")
    return matches[0]


def build_ladder(tower: Tower, choose_hall: Optional[Callable] = None,
                 max_depth: int = MAX_DEPTH_DEFAULT,
                 allow_deep: bool = False) -> Ladder:
    series = tower.series
    m = series.m
    if m > max_depth and not allow_deep:
        import warnings
        warnings.warn(f"series depth {m} exceeds the default cap {max_depth}")
    amb = series.ambient
    lad = Ladder(tower)
    if m == 0:
        return lad
    # level 1: Q_1 = G_1, Clifford correspondents over beta_1 = chi_1
    chi1 = tower.chars[1]
    Q1 = series.terms[1]
    lad.halls[1] = Q1
    lad.factors[1] = chi1
    lvl = {}
    for i in list(range(1, m + 1)) + ["inf"]:
        Gi = amb if i == "inf" else series.terms[i]
        stab = stabilizer_of_character(Gi, chi1)
        eta = None if i == "inf" else clifford_correspondent(
            Gi, Q1, chi1, tower.chars[i])
        lvl[i] = (stab, eta)
    lad.levels[1] = lvl
    for s in range(2, m + 1):
        prev = lad.levels[s - 1]
        H, chi_ss1 = prev[s]
        even = (s % 2 == 0)
        B = lad.halls[s - 1]
        theta = lad.factors[s - 1]
        primes = series.pi if even else series.co_pi()
        X = choose_hall(s, H) if choose_hall is not None else hall_subgroup(H, primes)
        if not (X <= H) or X.order != pi_part(H.order, primes):
            raise ValueError(f"level-{s} group is not a Hall subgroup of the bottom stabilizer")
        theta_ext = canonical_extension(H, B, theta).extension
        gamma = _split_product(H, B, X, chi_ss1, theta_ext)
        lad.halls[s] = X
        lad.factors[s] = gamma
        lvl = {}
        for i in list(range(s, m + 1)) + ["inf"]:
            Gi_prev, chi_prev = prev[i]
            stab = stabilizer_of_character(Gi_prev, chi_ss1)
            if i == "inf":
                lvl[i] = (normalizer(stab, X), None)
                continue
            eta = chi_ss1 if i == s else clifford_correspondent(
                Gi_prev, H, chi_ss1, chi_prev)
            action = make_action(stab, X, B, stab)
            out = a_correspondence(action, eta)
            lvl[i] = (out.sub, out)
        lad.levels[s] = lvl
    return lad


# ---------------------------------------------------------------------------
# triangular sets
# ---------------------------------------------------------------------------

class TriangularSet:
    """{P_2r, Q_2i-1 | alpha_2r, beta_2i-1} attached to an alternating series."""

    def __init__(self, series: NormalSeries, q_groups: dict, q_chars: dict,
                 p_groups: dict, p_chars: dict, ladder: Optional[Ladder] = None):
        self.series = series
        self.Q = dict(q_groups)
        self.beta = dict(q_chars)
        self.P = dict(p_groups)
        self.alpha = dict(p_chars)
        self.ladder = ladder
        self._cells: dict = {}
        m = series.m
        self.l = (m + 1) // 2
        self.k = m // 2

    def group(self, idx: int) -> Subgroup:
        return self.Q[idx] if idx % 2 == 1 else self.P[idx]

    def char(self, idx: int) -> ClassFunction:
        return self.beta[idx] if idx % 2 == 1 else self.alpha[idx]

    def key(self):
        qs = tuple((i, self.Q[i].mask, self.beta[i].values) for i in sorted(self.Q))
        ps = tuple((r, self.P[r].mask, self.alpha[r].values) for r in sorted(self.P))
        return (qs, ps)

    def __eq__(self, other):
        return isinstance(other, TriangularSet) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        qs = {i: g.order for i, g in self.Q.items()}
        ps = {r: g.order for r, g in self.P.items()}
        return f"TriangularSet(Q={qs}, P={ps})"


def triangular_of_tower(tower: Tower, choose_hall: Optional[Callable] = None,
                        max_depth: int = MAX_DEPTH_DEFAULT,
                        allow_deep: bool = False) -> TriangularSet:
    """A representative of the G_m(chi_1..chi_m)-class of sets for the tower."""
    lad = build_ladder(tower, choose_hall=choose_hall, max_depth=max_depth,
                       allow_deep=allow_deep)
    series = tower.series
    par = series.ambient.parent
    triv = par.subgroup([par.identity])
    q_groups, q_chars = {}, {}
    p_groups, p_chars = {0: triv}, {0: trivial_character(triv)}
    for s in range(1, series.m + 1):
        if s % 2 == 1:
            q_groups[s], q_chars[s] = lad.halls[s], lad.factors[s]
        else:
            p_groups[s], p_chars[s] = lad.halls[s], lad.factors[s]
    return TriangularSet(series, q_groups, q_chars, p_groups, p_chars, ladder=lad)


def _index_chain(lad: Ladder, Gs: Subgroup, s: int):
    """Rebuild G_{s,t} for t = 0..s-1 for a fresh index s, with the
    intermediate stabilizers; returns (chain, stabs) where
    chain[t] = G_{s,t} and stabs[t-1] = G_{s,t-1}(chi_{t,t-1})."""
    chain = [Gs]
    stabs = []
    cur = Gs
    for t in range(1, s):
        chi_t = lad.bottom_char(t)
        stab = stabilizer_of_character(cur, chi_t)
        stabs.append(stab)
        cur = stab if t == 1 else normalizer(stab, lad.halls[t])
        chain.append(cur)
    return chain, stabs


def tower_of_triangle(tri: TriangularSet, max_depth: int = MAX_DEPTH_DEFAULT,
                      allow_deep: bool = False) -> Tower:
    """The tower whose triangular-set class contains tri (exact inverse)."""
    series = tri.series
    m = series.m
    chars: list[ClassFunction] = [trivial_character(series.terms[0])]
    if m >= 1:
        chars.append(tri.beta[1])
    for s in range(2, m + 1):
        sub_tower = Tower(series.prefix(s - 1), chars[:s])
        lad = build_ladder(sub_tower, choose_hall=lambda lv, H: tri.group(lv),
                           max_depth=max_depth, allow_deep=True)
        even = (s % 2 == 0)
        B, theta = (tri.Q[s - 1], tri.beta[s - 1]) if even else \
                   (tri.P[s - 1], tri.alpha[s - 1])
        X, gamma = (tri.P[s], tri.alpha[s]) if even else (tri.Q[s], tri.beta[s])
        Gs = series.terms[s]
        chain, stabs = _index_chain(lad, Gs, s)
        Hs = chain[s - 1]
        theta_ext = canonical_extension(Hs, B, theta).extension
        cur = _outer_product_char(Hs, B, X, gamma, theta_ext)
        for t in range(s - 1, 1, -1):
            action = make_action(stabs[t - 1], lad.halls[t], lad.halls[t - 1],
                                 stabs[t - 1])
            cur = inverse_a_correspondence(action, cur)
            cur = induce(chain[t - 1], stabs[t - 1], cur)
        cur = induce(Gs, stabs[0], cur)
        if not cur.is_irreducible():
            raise AssertionError("reconstructed tower character is reducible")
        chars.append(cur)
    return Tower(series, chars)


def conjugate_triangular_set(tri: TriangularSet, g: int) -> TriangularSet:
    q = {i: conjugate_subgroup(s, g) for i, s in tri.Q.items()}
    p = {r: conjugate_subgroup(s, g) for r, s in tri.P.items()}
    qb = {i: conjugate_character(c, g) for i, c in tri.beta.items()}
    pa = {r: conjugate_character(c, g) for r, c in tri.alpha.items()}
    return TriangularSet(tri.series, q, qb, p, pa)


def sets_conjugate(t1: TriangularSet, t2: TriangularSet,
                   under: Subgroup) -> Optional[int]:
    """An element of `under` conjugating t1 to t2, or None."""
    k1, k2 = t1.key(), t2.key()
    if k1 == k2:
        return int(under.parent.identity)
    for g in under.members:
        if conjugate_triangular_set(t1, int(g)).key() == k2:
            return int(g)
    return None


# ---------------------------------------------------------------------------
# Glauberman helpers, derived cells, star data
# ---------------------------------------------------------------------------

def glauberman_of(actor: Subgroup, chi: ClassFunction) -> ClassFunction:
    """Glauberman correspondent of chi under the coprime actor group,
    with ambient the closure of actor and domain."""
    B = chi.sub
    par = B.parent
    amb = subgroup_closure(par, list(actor.members) + list(B.members))
    from chartower.correspond import glauberman
    act = make_action(amb, actor, B, B)
    return glauberman(act, chi)


def derived_cell(tri: TriangularSet, side: str, i: int, j: int):
    """Q_{2i-1,2j} with beta_{2i-1,2j} (side 'q'), or P_{2r,2s+1} with
    alpha_{2r,2s+1} (side 'p'). Indices are the paper-free natural ones:
    q-side (i, j) means (Q_{2i-1}, centralized by P_{2i}...P_{2j});
    j = i-1 returns the plain (Q_{2i-1}, beta_{2i-1})."""
    key = (side, i, j)
    if key in tri._cells:
        return tri._cells[key]
    par = tri.series.ambient.parent
    if side == "q":
        if not (1 <= i <= tri.l and i - 1 <= j <= tri.k):
            raise IndexError(f"q-cell index out of range: {(i, j)}")
        base, chi = tri.Q[2 * i - 1], tri.beta[2 * i - 1]
        idxs = range(2 * i, 2 * j + 1, 2)
        groups = [tri.P[t] for t in idxs]
    elif side == "p":
        if not (1 <= i <= tri.k and i - 1 <= j <= tri.l - 1):
            raise IndexError(f"p-cell index out of range: {(i, j)}")
        base, chi = tri.P[2 * i], tri.alpha[2 * i]
        idxs = range(2 * i + 1, 2 * j + 2, 2)
        groups = [tri.Q[t] for t in idxs]
    else:
        raise ValueError("side must be 'q' or 'p'")
    if not groups:
        out = (base, chi)
    else:
        gens: list[int] = []
        for gsub in groups:
            gens.extend(gsub.members)
        actor = subgroup_closure(par, gens)
        corr = glauberman_of(actor, chi)
        out = (corr.sub, corr)
    tri._cells[key] = out
    return out


@dataclass
class StarData:
    tri: TriangularSet
    p_star: dict        # 2r -> P*_2r = P_2...P_2r
    q_star: dict        # 2i-1 -> Q*_2i-1 = Q_1...Q_2i-1
    alpha_star: dict    # 2r -> composite correspondent of alpha_2r
    beta_star: dict     # 2i-1 -> composite correspondent of beta_2i-1
    g_star: dict        # i -> G*_i = G_i(chi_1..chi_{i-1}) plus "inf"


def star_data(tri: TriangularSet, tower: Optional[Tower] = None) -> StarData:
    """Products P*, Q* with the chained-correspondence characters."""
    series = tri.series
    par = series.ambient.parent
    triv = par.subgroup([par.identity])
    p_star = {0: triv}
    q_star = {}
    alpha_star = {0: trivial_character(triv)}
    beta_star = {}
    for r in sorted(tri.P):
        if r == 0:
            continue
        gens = []
        for t in range(2, r + 1, 2):
            gens.extend(tri.P[t].members)
        p_star[r] = subgroup_closure(par, gens)
    for i in sorted(tri.Q):
        gens = []
        for t in range(1, i + 1, 2):
            gens.extend(tri.Q[t].members)
        q_star[i] = subgroup_closure(par, gens)
    # alpha*_{2r}: successively un-correspond through Q_{2j+1}, j = r-1..1
    for r in sorted(tri.P):
        if r == 0:
            continue
        cur = tri.alpha[r]
        for j in range(r - 2, 0, -2):
            # attach P_j: carrier P_j ... P_r, actor Q_{j+1}
            gens = []
            for t in range(j, r + 1, 2):
                gens.extend(tri.P[t].members)
            carrier = subgroup_closure(par, gens)
            actor = tri.Q[j + 1]
            amb = subgroup_closure(par, list(carrier.members) + list(actor.members))
            action = make_action(amb, actor, tri.P[j], carrier)
            cur = inverse_a_correspondence(action, cur)
        alpha_star[r] = cur
    # beta*_{2i-1}: successively attach Q_{j} through actor P_{j+1}
    for i in sorted(tri.Q):
        cur = tri.beta[i]
        for j in range(i - 2, 0, -2):
            gens = []
            for t in range(j, i + 1, 2):
                gens.extend(tri.Q[t].members)
            carrier = subgroup_closure(par, gens)
            actor = tri.P[j + 1]
            amb = subgroup_closure(par, list(carrier.members) + list(actor.members))
            action = make_action(amb, actor, tri.Q[j], carrier)
            cur = inverse_a_correspondence(action, cur)
        beta_star[i] = cur
    g_star = {}
    if tower is not None:
        for i in range(1, series.m + 1):
            S = series.terms[i]
            for chi in tower.chars[1:i]:
                S = stabilizer_of_character(S, chi)
            g_star[i] = S
        S = series.ambient
        for chi in tower.chars[1:]:
            S = stabilizer_of_character(S, chi)
        g_star["inf"] = S
    return StarData(tri, p_star, q_star, alpha_star, beta_star, g_star)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

def validate_triangular_set(tri: TriangularSet, tower: Optional[Tower] = None) -> None:
    """Check the defining conditions; raises AssertionError on failure."""
    series = tri.series
    pi = series.pi
    copi = series.co_pi()
    if tri.P[0].order != 1:
        raise AssertionError("P_0 must be trivial")
    if 1 in tri.Q:
        if tri.Q[1] != series.terms[1]:
            raise AssertionError("Q_1 != G_1")
        if tower is not None and tri.beta[1] != tower.chars[1]:
            raise AssertionError("beta_1 != chi_1")
    for s in range(2, series.m + 1):
        even = (s % 2 == 0)
        X = tri.group(s)
        stab = series.terms[s]
        upper = s - 2 if even else s - 1
        for t in range(2, upper + 1, 2):
            stab = stabilizer_of_character(stab, tri.alpha[t])
        for t in range(1, (s if even else s - 1), 2):
            stab = stabilizer_of_character(stab, tri.beta[t])
        if not X <= stab:
            raise AssertionError(f"level-{s} group is not inside its stabilizer")
        want = pi_part(stab.order, pi if even else copi)
        if X.order != want:
            raise AssertionError(f"level-{s} group is not Hall ({X.order} vs {want})")
        if s - 2 >= 1:
            prev_char = tri.char(s - 2)
            if prev_char.sub.order > 1:
                corr = glauberman_of(tri.group(s - 1), prev_char)
                if not lies_above(tri.char(s), corr):
                    raise AssertionError(
                        f"level-{s} character misses its Glauberman floor")
