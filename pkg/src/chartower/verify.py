"""Main-theorem verification harness.

For a monomial odd p^a q^b group G, every normal N and every psi in Irr(N)
(up to G-conjugacy of psi), run the alternating-invariant reduction
schedule on the quintuple (G, 1, 1, N, psi): stage by stage, take an
invariant linear limit at the bottom series term, pass to the faithful
quotient, check the next term up is nilpotent, and shift the bottom away.
The verdicts: the final faithful limit has nilpotent domain, psi is
monomial with an explicit witness, and for N = G the final limit character
is linear.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Optional

from chartower.chartable import ClassFunction, character_table, inner_product, \
    trivial_character
from chartower.charops import (clifford_correspondent, irr_above,
                               orbit_of_character, restrict,
                               stabilizer_of_character)
from chartower.group import (Subgroup, hall_subgroup, intersection, is_nilpotent,
                             is_normal, normal_subgroups, normal_subgroups_in,
                             pi_part, product_set, subgroup_closure)
from chartower.limits import (LinearQuintuple, faithful, is_monomial,
                              linear_characters, linear_limit,
                              proper_reductions, push_character,
                              reduce_quintuple)

__all__ = ["PairRecord", "VerificationReport", "verify_main",
           "alternating_series_through", "scheduled_faithful_limit"]


# ---------------------------------------------------------------------------
# series construction
# ---------------------------------------------------------------------------

def _chief_refinement(G: Subgroup, low: Subgroup, high: Subgroup) -> list[Subgroup]:
    """Normal-in-G series low = T_0 < ... < T_r = high with chief factors."""
    terms = [low]
    normals = normal_subgroups(G)
    while terms[-1].order < high.order:
        cur = terms[-1]
        best = None
        for M in normals:
            if cur < M and M <= high:
                if best is None or M.order < best.order:
                    best = M
        if best is None:
            raise AssertionError("no normal refinement step found")
        terms.append(best)
    return terms


def _factor_prime(a: Subgroup, b: Subgroup) -> int:
    ratio = b.order // a.order
    d = 2
    while d * d <= ratio:
        if ratio % d == 0:
            return d
        d += 1
    return ratio


def alternating_series_through(G: Subgroup, N: Subgroup):
    """(terms, pi): a normal series 1 = T_0 <| ... <| T_top = N with
    prime-power factors alternating pi' (odd positions) / pi (even),
    padding with repeated terms where the parity demands it."""
    par = G.parent
    triv = par.subgroup([par.identity])
    chief = _chief_refinement(G, triv, N)
    if len(chief) == 1:
        return [triv], frozenset()
    q = _factor_prime(chief[0], chief[1])
    primes = {p for p in _all_primes(G.order)}
    pi = frozenset(primes - {q})
    terms = [triv]
    pos = 1
    for i in range(1, len(chief)):
        fp = _factor_prime(chief[i - 1], chief[i])
        want_pi = (pos % 2 == 0)
        is_pi = fp in pi
        if is_pi != want_pi:
            terms.append(terms[-1])   # trivial factor flips the parity
            pos += 1
        terms.append(chief[i])
        pos += 1
    return terms, pi


def _all_primes(n: int) -> set:
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


def _canonical_tower_chars(terms: list[Subgroup], psi: ClassFunction):
    """Descend from psi: each char the canonically least constituent below
    (the restriction itself when the character is linear)."""
    chars = [psi]
    for i in range(len(terms) - 2, -1, -1):
        below = terms[i]
        res = restrict(chars[0], below)
        if chars[0].degree_int() == 1:
            chars.insert(0, res)
            continue
        cands = [c for c in character_table(below)
                 if not inner_product(res, c).is_zero()]
        chars.insert(0, min(cands, key=lambda f: f.serialize()))
    return chars


# ---------------------------------------------------------------------------
# the scheduled limit
# ---------------------------------------------------------------------------

@dataclass
class ScheduleState:
    G: Subgroup
    terms: list[Subgroup]
    chars: list[ClassFunction]
    pi: frozenset
    A: Subgroup
    phi: ClassFunction
    log: list = field(default_factory=list)

    @property
    def N(self) -> Subgroup:
        return self.terms[-1]

    @property
    def psi(self) -> ClassFunction:
        return self.chars[-1]


def _stage_primes(state: ScheduleState, idx: int) -> frozenset:
    # odd positions carry pi'-groups; the invariance side is the opposite one
    if idx % 2 == 1:
        return state.pi
    return frozenset(_all_primes(state.G.order) - state.pi)


def _micro_reduce(state: ScheduleState, bottom_idx: int, X: Subgroup) -> bool:
    """One invariant linear reduction at the bottom term; False if minimal."""
    par = state.G.parent
    bottom = state.terms[bottom_idx]
    theta = state.chars[bottom_idx]
    stage_A = intersection(state.A, bottom)
    phi_part = restrict(state.phi, stage_A)
    cands = [E for E in normal_subgroups_in(state.G, bottom)
             if stage_A < E]
    cands.sort(key=lambda E: (-E.order, E.members))
    for E in cands:
        res = restrict(theta, E)
        if theta.degree_int() == 1:
            lams = [res] if restrict(res, stage_A) == phi_part else []
        else:
            lams = []
            for lam in linear_characters(E):
                if restrict(lam, stage_A) != phi_part:
                    continue
                if inner_product(res, lam).is_zero():
                    continue
                lams.append(lam)
        if not lams:
            continue
        inv = [lam for lam in lams
               if stabilizer_of_character(X, lam).order == X.order]
        if not inv:
            raise AssertionError(
                "no invariant extension in a nonempty candidate orbit "
                "(violates the coprime counting lemma)")
        lam = min(inv, key=lambda f: f.serialize())
        _apply_reduction(state, E, lam)
        return True
    return False


def _combine_central(state: ScheduleState, E: Subgroup,
                     lam: ClassFunction) -> tuple[Subgroup, ClassFunction]:
    """A' = A * E with the product character phi x lambda."""
    par = state.G.parent
    A, phi = state.A, state.phi
    Ap = product_set(A, E) if A.order > 1 else E
    if A.order == 1:
        return E, lam
    vals = []
    for c in Ap.group.classes:
        h = int(Ap.members[c.representative])
        e = next(e for e in E.members if par.mul(h, par.inv_of(int(e))) in A)
        a = par.mul(h, par.inv_of(int(e)))
        vals.append(phi.value_at(int(a)) * lam.value_at(int(e)))
    return Ap, ClassFunction(Ap, vals)


def _apply_reduction(state: ScheduleState, E: Subgroup, lam: ClassFunction):
    """Reduce the whole transported system at (A*E, phi x lambda)."""
    Ap, phip = _combine_central(state, E, lam)
    from chartower.charops import lies_above
    if not lies_above(state.psi, phip):
        raise AssertionError("combined linear character fails to lie under psi")
    Gp = stabilizer_of_character(state.G, lam)
    new_terms = []
    new_chars = []
    for T, chi in zip(state.terms, state.chars):
        Tp = stabilizer_of_character(T, lam)
        if chi.degree_int() == 1 and T.order == 1:
            new_terms.append(Tp)
            new_chars.append(trivial_character(Tp))
            continue
        if not E <= T:
            raise AssertionError("reduction subgroup escapes a series term")
        new_terms.append(Tp)
        new_chars.append(clifford_correspondent(T, E, lam, chi))
    state.log.append(("reduce", E.order, lam.serialize().replace("\n", ";")))
    state.G = Gp
    state.terms = new_terms
    state.chars = new_chars
    state.A = Ap
    state.phi = phip


def _apply_quotient(state: ScheduleState):
    """Faithful step: quotient everything by Ker(phi)."""
    from chartower.charops import kernel_of
    from chartower.group import quotient
    K = kernel_of(state.phi)
    if K.order == 1:
        return
    quot, qm = quotient(state.G, K)
    state.log.append(("quotient", K.order))
    state.G = quot
    state.terms = [qm.image_subgroup(T) for T in state.terms]
    state.chars = [push_character(c, qm) for c in state.chars]
    state.A = qm.image_subgroup(state.A)
    state.phi = push_character(state.phi, qm)


def scheduled_faithful_limit(G: Subgroup, N: Subgroup, psi: ClassFunction,
                             log: Optional[list] = None) -> ScheduleState:
    """Run the alternating-invariant schedule on (G, 1, 1, N, psi)."""
    par = G.parent
    triv = par.subgroup([par.identity])
    terms, pi = alternating_series_through(G, N)
    chars = _canonical_tower_chars(terms, psi)
    state = ScheduleState(G, terms, chars, pi, triv, trivial_character(triv))
    if log is not None:
        state.log = log
    while True:
        bottom_idx = next((i for i, T in enumerate(state.terms)
                           if T.order > 1), None)
        if bottom_idx is None or bottom_idx == len(state.terms) - 1:
            break
        theta = state.chars[bottom_idx]
        inv_primes = _stage_primes(state, bottom_idx)
        X = hall_subgroup(stabilizer_of_character(state.G, theta), inv_primes)
        while _micro_reduce(state, bottom_idx, X):
            X = intersection(X, state.G)  # X fixed lambda, so it survives
        _apply_quotient(state)
        # nilpotency of the next term up (the stage theorem), then shift
        nxt = state.terms[bottom_idx + 1]
        if not is_nilpotent(nxt):
            state.log.append(("stage-nilpotency-failed", bottom_idx))
            return state
        if bottom_idx + 1 == len(state.terms) - 1:
            break  # the term above is the target domain: no further shift
        _shift_bottom(state, bottom_idx)
    # final stage: unrestricted canonical limit inside N
    q = LinearQuintuple(state.G, state.A, state.phi, state.N, state.psi)
    lim = linear_limit(q)
    fl = faithful(lim)
    state.log.append(("final", lim.G.order, fl.quintuple.N.order))
    flq = fl.quintuple
    trivq = flq.G.parent.subgroup([flq.G.parent.identity])
    state.G = flq.G
    state.terms = [trivq] * (len(state.terms) - 1) + [flq.N]
    state.chars = [trivial_character(trivq)] * (len(state.chars) - 1) + [flq.psi]
    state.A = flq.A
    state.phi = flq.phi
    return state


def _shift_bottom(state: ScheduleState, bottom_idx: int):
    """Drop the (now nilpotent-split) bottom term: replace the next term by
    its Hall complement and trivialize the bottom."""
    par = state.G.parent
    bottom = state.terms[bottom_idx]
    theta = state.chars[bottom_idx]
    if stabilizer_of_character(state.G, theta).order != state.G.order:
        raise AssertionError("bottom character is not invariant at the shift")
    nxt = state.terms[bottom_idx + 1]
    primes_bottom = _all_primes(bottom.order)
    comp_primes = _all_primes(nxt.order) - primes_bottom
    X = hall_subgroup(nxt, comp_primes)
    if X.order * bottom.order != nxt.order:
        raise AssertionError("next term does not split over the bottom")
    if not is_normal(X, state.G):
        raise AssertionError("Hall complement of the shifted term is not normal")
    chi_next = state.chars[bottom_idx + 1]
    alpha = None
    res = restrict(chi_next, X)
    for cand in character_table(X):
        m = inner_product(res, cand)
        if not m.is_zero():
            alpha = cand
            break
    if alpha is None:
        raise AssertionError("no factor character found at the shift")
    triv = par.subgroup([par.identity])
    state.terms[bottom_idx] = triv
    state.chars[bottom_idx] = trivial_character(triv)
    state.terms[bottom_idx + 1] = X
    state.chars[bottom_idx + 1] = alpha
    state.log.append(("shift", bottom_idx, X.order))


# ---------------------------------------------------------------------------
# reports
# ---------------------------------------------------------------------------

@dataclass
class PairRecord:
    n_order: int
    psi_degree: int
    orbit_size: int
    schedule: list
    limit_group: int
    limit_domain: int
    nilpotent: bool
    psi_monomial: bool
    witness_index: Optional[int]
    final_linear: Optional[bool]
    ok: bool
    alt_paths: list = field(default_factory=list)

    def as_dict(self):
        return {
            "N": self.n_order, "psi_degree": self.psi_degree,
            "orbit": self.orbit_size, "limit_group": self.limit_group,
            "limit_domain": self.limit_domain, "nilpotent": self.nilpotent,
            "psi_monomial": self.psi_monomial,
            "witness_index": self.witness_index,
            "final_linear": self.final_linear, "ok": self.ok,
            "alt_paths": self.alt_paths,
            "schedule": [list(map(str, s)) for s in self.schedule],
        }


@dataclass
class VerificationReport:
    name: str
    order: int
    monomial_group: bool
    records: list[PairRecord]
    passed: bool
    seconds: float
    note: str = ""

    def as_dict(self):
        return {"group": self.name, "order": self.order,
                "monomial": self.monomial_group, "pass": self.passed,
                "seconds": round(self.seconds, 3), "note": self.note,
                "records": [r.as_dict() for r in self.records]}

    def summary_lines(self):
        note = f" [{self.note}]" if self.note else ""
        yield (f"{self.name}: order {self.order} monomial={self.monomial_group} "
               f"pairs={len(self.records)} pass={self.passed}"
               f"{note} ({self.seconds:.1f}s)")
        for r in self.records:
            if not r.ok:
                yield (f"  FAIL N={r.n_order} psi(1)={r.psi_degree} "
                       f"nilpotent={r.nilpotent} monomial={r.psi_monomial}")


def verify_main(G: Subgroup, name: str = "G", alt_paths: int = 0,
                progress: bool = False) -> VerificationReport:
    t0 = time.time()
    primes = _all_primes(G.order)
    if G.order % 2 == 0 or len(primes) > 2:
        raise ValueError("the harness needs an odd p^a q^b group")
    table = character_table(G)
    from chartower.limits import monomial_witnesses
    wit = monomial_witnesses(G)
    mono = len(wit) == len(table)
    if not mono:
        # the Main Theorem presumes a monomial group: vacuous pass
        return VerificationReport(name, G.order, False, [], True,
                                  time.time() - t0,
                                  note="hypothesis fails: G is not monomial "
                                       "(vacuous)")
    records = []
    ok_all = True
    for N in normal_subgroups(G):
        tabN = character_table(N)
        seen = set()
        for psi in tabN:
            if psi.values in seen:
                continue
            orbit = orbit_of_character(G, psi)
            seen |= {c.values for c in orbit}
            rec = _verify_pair(G, N, psi, len(orbit), alt_paths)
            records.append(rec)
            ok_all = ok_all and rec.ok
            if progress:
                print(f"  N={N.order} psi(1)={psi.degree_int()} ok={rec.ok}")
    return VerificationReport(name, G.order, True, records, ok_all,
                              time.time() - t0)


def _verify_pair(G: Subgroup, N: Subgroup, psi: ClassFunction,
                 orbit_size: int, alt_paths: int) -> PairRecord:
    state = scheduled_faithful_limit(G, N, psi)
    failed_stage = any(s[0] == "stage-nilpotency-failed" for s in state.log)
    nil = (not failed_stage) and is_nilpotent(state.N)
    mono, wit = is_monomial(N, psi)
    widx = None
    if wit is not None:
        widx = N.order // wit[0].order
    final_linear = None
    if N == G:
        final_linear = (not failed_stage) and state.psi.degree_int() == 1
    ok = nil and mono and (final_linear is not False)
    alts = []
    for k in range(alt_paths):
        par = G.parent
        triv = par.subgroup([par.identity])
        q = LinearQuintuple(G, triv, trivial_character(triv), N, psi)
        chooser = _alt_chooser(k)
        lim = linear_limit(q, chooser=chooser)
        fl = faithful(lim)
        alts.append({"path": k, "domain": fl.quintuple.N.order,
                     "nilpotent": is_nilpotent(fl.quintuple.N)})
    return PairRecord(N.order, psi.degree_int(), orbit_size, list(state.log),
                      state.G.order, state.N.order, nil, mono, widx,
                      final_linear, ok, alts)


def _alt_chooser(k: int):
    def choose(q, steps):
        return steps[min(k, len(steps) - 1)]
    return choose
