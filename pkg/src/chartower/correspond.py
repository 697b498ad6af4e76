"""The Glauberman correspondence and its extension to overgroups of the
acted group, computed by the odd-multiplicity chain algorithm.

Setup: odd groups A, B of coprime order inside a common ambient group,
B normal in the ambient, A*B a (semidirect) subgroup; a carrier H with
B <= H. Descending through an A-invariant chain B = M_0 >= ... >= M_n = 1
with abelian steps (the derived series of B by default), each stage picks
the unique constituent of odd multiplicity over the normalizer of A*M_i
in H; the end character lives on N(A in H) and is independent of the chain.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from chartower.chartable import ClassFunction, character_table, inner_product
from chartower.charops import (lies_above, restrict, stabilizer_of_character)
from chartower.group import (Subgroup, centralizer, derived_series, intersection,
                             is_normal, normal_subgroups, normalizer,
                             product_set, subgroup_closure)

__all__ = ["CoprimeAction", "glauberman", "a_correspondence",
           "a_correspondence_map", "inverse_a_correspondence",
           "correspondence_stabilizer_check", "invariant_irreducibles",
           "make_action", "admissible_chains"]


@dataclass(frozen=True)
class CoprimeAction:
    ambient: Subgroup
    actor: Subgroup      # A
    acted: Subgroup      # B
    carrier: Subgroup    # H, with B <= H

    def validate(self) -> None:
        A, B, H, G = self.actor, self.acted, self.carrier, self.ambient
        if gcd(A.order, B.order) != 1:
            raise ValueError("actor and acted orders are not coprime")
        if A.order % 2 == 0 or B.order % 2 == 0 or G.order % 2 == 0:
            raise ValueError("all groups must have odd order")
        if not (B <= H and H <= G and A <= G):
            raise ValueError("containments fail: need B <= H <= ambient, A <= ambient")
        if not is_normal(B, H):
            raise ValueError("acted group is not normal in the carrier")
        AB = product_set(A, B)
        if H != B and not is_normal(AB, G):
            raise ValueError("A*B must be normal in the ambient when H > B")
        if not is_normal(B, subgroup_closure(G.parent, list(A.members) + list(B.members))):
            raise ValueError("acted group is not normalized by the actor")


def make_action(ambient: Subgroup, A: Subgroup, B: Subgroup,
                H: Subgroup | None = None) -> CoprimeAction:
    act = CoprimeAction(ambient, A, B, H if H is not None else B)
    act.validate()
    return act


def invariant_irreducibles(A: Subgroup, B: Subgroup) -> list[ClassFunction]:
    """Irr^A(B): the A-invariant irreducible characters of B."""
    return [phi for phi in character_table(B)
            if stabilizer_of_character(A, phi).order == A.order]


def _default_chain(action: CoprimeAction) -> list[Subgroup]:
    """Derived series of B: normal in H, A-invariant, abelian steps."""
    return derived_series(action.acted)


def admissible_chains(action: CoprimeAction, limit: int = 3) -> list[list[Subgroup]]:
    """The derived-series chain plus refinements through intermediate
    A-invariant H-normal subgroups with abelian top quotient."""
    base = _default_chain(action)
    chains = [base]
    if len(base) < 2:
        return chains
    A, B = action.actor, action.acted
    Bp = base[1]
    for M in normal_subgroups(action.carrier):
        if len(chains) >= limit:
            break
        if not (Bp < M and M < B):
            continue
        if not _is_invariant(A, M):
            continue
        chains.append([B, M] + base[1:])
    return chains


def _is_invariant(A: Subgroup, M: Subgroup) -> bool:
    par = A.parent
    from chartower.group import conjugate_subgroup
    return all(conjugate_subgroup(M, a).mask == M.mask for a in A.gens())


def _chain_step_groups(action: CoprimeAction, chain: list[Subgroup]) -> list[Subgroup]:
    """N_i = N(A*M_i in H) for each chain term (N_0 = H since A*B <| ambient)."""
    A, H = action.actor, action.carrier
    par = H.parent
    out = []
    for M in chain:
        AM = subgroup_closure(par, list(A.members) + list(M.members))
        if AM.order != A.order * M.order:
            raise AssertionError("A*M is not a semidirect product")
        out.append(normalizer(H, AM))
    return out


def a_correspondence(action: CoprimeAction, psi: ClassFunction,
                     chain: list[Subgroup] | None = None,
                     record: list | None = None) -> ClassFunction:
    """The A-correspondent psi_(A) in Irr(N(A in H)) of psi in Irr^A_B(H)."""
    A, B, H = action.actor, action.acted, action.carrier
    if psi.sub != H:
        raise ValueError("psi must be a character of the carrier")
    inv_B = invariant_irreducibles(A, B)
    if not any(lies_above(psi, phi) for phi in inv_B):
        raise ValueError("psi lies above no A-invariant character of the acted group")
    if chain is None:
        chain = _default_chain(action)
    steps = _chain_step_groups(action, chain)
    theta = psi
    for i in range(1, len(chain)):
        Ni = steps[i]
        Mi = chain[i]
        res = restrict(theta, Ni)
        inv_Mi = None
        cands = []
        for eta in character_table(Ni):
            m = inner_product(res, eta)
            if m.is_zero():
                continue
            if not m.is_integer():
                raise AssertionError("non-integral restriction multiplicity")
            if m.as_int() % 2 == 1:
                if inv_Mi is None:
                    inv_Mi = invariant_irreducibles(A, Mi)
                if any(lies_above(eta, phi) for phi in inv_Mi):
                    cands.append(eta)
        if len(cands) != 1:
            raise AssertionError(
                f"odd-multiplicity constituent not unique at chain step {i}: "
                f"{len(cands)} candidates")
        theta = cands[0]
        if record is not None:
            record.append((Mi, Ni, theta))
    return theta


def glauberman(action: CoprimeAction, psi: ClassFunction,
               chain: list[Subgroup] | None = None) -> ClassFunction:
    """Glauberman correspondent of A-invariant psi in Irr(C_B(A)); the
    carrier is the acted group itself."""
    A, B = action.actor, action.acted
    if action.carrier != B:
        raise ValueError("glauberman requires carrier == acted group")
    if stabilizer_of_character(A, psi).order != A.order:
        raise ValueError("psi is not A-invariant")
    out = a_correspondence(action, psi, chain=chain)
    C = centralizer(B, A)
    if out.sub != C:
        raise AssertionError("correspondent does not live on C_B(A)")
    return out


def a_correspondence_map(action: CoprimeAction) -> dict:
    """Full bijection as a pair of dicts keyed by character values."""
    key = ("acorr_map", action.actor.mask, action.acted.mask, action.carrier.mask)
    cache = action.carrier._cache
    got = cache.get(key)
    if got is not None:
        return got
    A, B, H = action.actor, action.acted, action.carrier
    inv_B = invariant_irreducibles(A, B)
    fwd, bwd = {}, {}
    for psi in character_table(H):
        if not any(lies_above(psi, phi) for phi in inv_B):
            continue
        out = a_correspondence(action, psi)
        fwd[psi.values] = (psi, out)
        if out.values in bwd:
            raise AssertionError("A-correspondence is not injective")
        bwd[out.values] = psi
    NA = normalizer(H, A)
    if len(bwd) != len(character_table(NA)):
        raise AssertionError("A-correspondence is not onto Irr(N(A in H))")
    got = {"fwd": fwd, "bwd": bwd}
    cache[key] = got
    return got


def inverse_a_correspondence(action: CoprimeAction, target: ClassFunction) -> ClassFunction:
    """The psi in Irr^A_B(H) whose A-correspondent is `target`."""
    m = a_correspondence_map(action)
    psi = m["bwd"].get(target.values)
    if psi is None:
        raise KeyError("character is not in the image of the A-correspondence")
    return psi


def correspondence_stabilizer_check(action: CoprimeAction, K: Subgroup,
                                    psi: ClassFunction) -> bool:
    """K(psi) == K(psi_(A)) for K normalizing both A and H."""
    A, H = action.actor, action.carrier
    if normalizer(K, A).order != K.order or normalizer(K, H).order != K.order:
        raise ValueError("K does not normalize both the actor and the carrier")
    out = a_correspondence(action, psi)
    return stabilizer_of_character(K, psi).mask == stabilizer_of_character(K, out).mask
