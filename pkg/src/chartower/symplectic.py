"""Symplectic F_p-modules from nearly-extraspecial sections: classification
(anisotropic / hyperbolic), equivariant isometry, W-perp/W, and the
hyperbolic-restriction filter for p-power-index subgroups."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as iproduct
from typing import Optional

import numpy as np

from chartower.cyclotomic import ONE, root_of_unity
from chartower.group import Subgroup, subgroup_closure
from chartower.limits import FaithfulLimit
from chartower import modlin

__all__ = ["SympModule", "SubmoduleCert", "module_of_quintuple", "classify",
           "isometric", "wperp_mod_w", "dade_filter_check",
           "invariant_subspaces"]

DIM_CAP = 8
PRIME_CAP = 7


@dataclass
class SympModule:
    p: int
    dim: int
    form: np.ndarray          # dim x dim alternating over F_p
    actors: list[np.ndarray]  # generating symplectic matrices (odd group)
    labels: Optional[list] = None

    def validate(self) -> None:
        p, d, J = self.p, self.dim, self.form
        if J.shape != (d, d):
            raise ValueError("form shape mismatch")
        if (np.diagonal(J) % p).any() or ((J + J.T) % p).any():
            raise ValueError("form is not alternating")
        for M in self.actors:
            if ((M.T @ J @ M - J) % p).any():
                raise ValueError("actor does not preserve the form")
        if self.actor_order() % 2 == 0:
            raise ValueError("actor group has even order")

    def actor_order(self) -> int:
        return len(self._actor_group())

    def _actor_group(self):
        if getattr(self, "_agrp", None) is None:
            p, d = self.p, self.dim
            ident = np.eye(d, dtype=np.int64)
            seen = {ident.tobytes(): ident}
            work = [ident]
            while work:
                M = work.pop()
                for g in self.actors:
                    Np = (M @ g) % p
                    key = Np.tobytes()
                    if key not in seen:
                        seen[key] = Np
                        work.append(Np)
            self._agrp = list(seen.values())
        return self._agrp

    def pairing(self, u: np.ndarray, v: np.ndarray) -> int:
        return int(u @ self.form @ v % self.p)

    def dump(self) -> str:
        lines = [f"{self.p} {self.dim}"]
        for row in self.form:
            lines.append(" ".join(str(int(x)) for x in row))
        for M in self.actors:
            lines.append(" ".join(str(int(x)) for x in M.ravel()))
        return "\n".join(lines) + "\n"

    @classmethod
    def parse(cls, text: str) -> "SympModule":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        p, d = map(int, lines[0].split())
        form = np.array([[int(x) for x in lines[1 + i].split()]
                         for i in range(d)], dtype=np.int64)
        actors = []
        for ln in lines[1 + d:]:
            vals = [int(x) for x in ln.split()]
            actors.append(np.array(vals, dtype=np.int64).reshape(d, d))
        mod = cls(p, d, form, actors)
        mod.validate()
        return mod


@dataclass
class SubmoduleCert:
    basis: np.ndarray  # rows span the subspace (rref)
    invariant: bool
    isotropic: bool
    self_perpendicular: bool


def module_of_quintuple(fl, acting: Optional[list] = None) -> SympModule:
    """V = N/A with the commutator form through phi and the conjugation
    action of G, for a faithful limit (or any quintuple with N a p-group,
    A = Z(N) and phi faithful). `acting` optionally lists parent element
    indices of G to use as the actor generators, for identifications
    across different limits."""
    q = fl.quintuple if isinstance(fl, FaithfulLimit) else fl
    G, A, N, phi = q.G, q.A, q.N, q.phi
    from chartower.charops import kernel_of
    if kernel_of(phi).order != 1:
        raise ValueError("phi is not faithful")
    par = G.parent
    primes = {int(x) for x in _prime_factors(N.order)}
    if len(primes) > 1:
        raise ValueError("fl(N) is not a p-group")
    p = primes.pop() if primes else 3
    if N.order == A.order:
        return SympModule(p, 0, np.zeros((0, 0), dtype=np.int64), [])
    from chartower.group import quotient
    quot, qm = quotient(N, A)
    if any(int(quot.parent.element_orders[m]) not in (1, p) for m in quot.members):
        raise ValueError("fl(N)/fl(A) is not elementary abelian")
    # basis of the quotient as an F_p vector space (greedy independent picks)
    basis_q: list[int] = []
    span = quot.parent.subgroup([quot.parent.identity])
    for m in quot.members:
        if m in span:
            continue
        basis_q.append(int(m))
        span = subgroup_closure(quot.parent, basis_q)
    d = len(basis_q)
    # coordinates of every quotient element
    coords = {quot.parent.identity: tuple([0] * d)}
    for exps in iproduct(*[range(p)] * d):
        x = quot.parent.identity
        for b, e in zip(basis_q, exps):
            for _ in range(e):
                x = quot.parent.mul(x, b)
        coords.setdefault(int(x), tuple(exps))
    # section: quotient basis -> N representatives
    reps = [qm.section(b) for b in basis_q]
    zeta = root_of_unity(p)
    zlog = {zeta ** t: t for t in range(p)}
    J = np.zeros((d, d), dtype=np.int64)
    for i in range(d):
        for j in range(d):
            x, y = reps[i], reps[j]
            comm = par.mul(par.mul(par.inv_of(x), par.inv_of(y)), par.mul(x, y))
            val = phi.value_at(comm)
            t = zlog.get(val)
            if t is None:
                raise ValueError("commutator value is not a p-th root of unity")
            J[i, j] = t
    actor_sources = list(acting) if acting is not None else (G.gens() or [])
    actors = []
    seen = set()
    for ggen in actor_sources:
        M = np.zeros((d, d), dtype=np.int64)
        for i in range(d):
            c = par.conj(reps[i], int(ggen))
            if c not in N:
                raise AssertionError("conjugation left fl(N)")
            M[:, i] = coords[int(qm.assignment[c])]
        key = (M % p).tobytes()
        if acting is not None:
            actors.append(M % p)     # keep pairing with the given list
        elif key not in seen and not np.array_equal(M % p,
                                                    np.eye(d, dtype=np.int64)):
            seen.add(key)
            actors.append(M % p)
    mod = SympModule(p, d, J % p, actors)
    mod.validate()
    return mod


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


# ---------------------------------------------------------------------------
# subspace enumeration and classification
# ---------------------------------------------------------------------------

def _rref_key(basis: np.ndarray, p: int) -> bytes:
    R, piv, rank = modlin.rref(basis, p)
    return R[:rank].tobytes() + bytes([rank])


def invariant_subspaces(mod: SympModule, max_dim: Optional[int] = None):
    """All actor-invariant subspaces (as rref bases), grouped by dimension.

    Exhaustive over F_p-subspaces via closure of cyclic spans: every
    invariant subspace is a sum of invariant closures of single vectors,
    so we BFS joins of the vector closures (orbit pruning)."""
    p, d = mod.p, mod.dim
    if d > (max_dim if max_dim is not None else DIM_CAP):
        raise ValueError(f"dimension {d} exceeds the enumeration cap")
    if p > PRIME_CAP:
        raise ValueError(f"prime {p} exceeds the enumeration cap")
    mats = mod._actor_group()
    # invariant closure of each vector
    closures = {}
    for vec in iproduct(*[range(p)] * d):
        if not any(vec):
            continue
        v = np.array(vec, dtype=np.int64)
        orbit = np.array([(M @ v) % p for M in mats], dtype=np.int64)
        R, piv, rank = modlin.rref(orbit, p)
        key = R[:rank].tobytes() + bytes([rank])
        closures.setdefault(key, R[:rank])
    zero = np.zeros((0, d), dtype=np.int64)
    found = {_rref_key(zero, p): zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for B in frontier:
            for C in closures.values():
                join = np.vstack([B, C])
                R, piv, rank = modlin.rref(join, p)
                Rb = R[:rank]
                key = Rb.tobytes() + bytes([rank])
                if key not in found:
                    found[key] = Rb
                    nxt.append(Rb)
        frontier = nxt
    return sorted(found.values(), key=lambda B: (B.shape[0], B.tobytes()))


def certify(mod: SympModule, basis: np.ndarray) -> SubmoduleCert:
    p = mod.p
    R, piv, rank = modlin.rref(basis, p)
    B = R[:rank]
    inv = True
    for M in mod.actors:
        for row in B:
            img = (M @ row) % p
            aug = np.vstack([B, img])
            _, _, r2 = modlin.rref(aug, p)
            if r2 != rank:
                inv = False
                break
        if not inv:
            break
    gram = (B @ mod.form @ B.T) % p
    iso = not gram.any()
    perp = perp_space(mod, B)
    selfp = iso and perp.shape[0] == rank and _same_space(B, perp, p)
    return SubmoduleCert(B, inv, iso, selfp)


def perp_space(mod: SympModule, B: np.ndarray) -> np.ndarray:
    """Basis of B^perp = {v : form(b, v) = 0 for all b in B}."""
    if B.shape[0] == 0:
        return np.eye(mod.dim, dtype=np.int64)
    mat = (B @ mod.form) % mod.p
    return modlin.nullspace(mat, mod.p)


def _same_space(B1: np.ndarray, B2: np.ndarray, p: int) -> bool:
    return _rref_key(B1, p) == _rref_key(B2, p)


def classify(mod: SympModule) -> dict:
    """{'kind': 'zero'|'anisotropic'|'hyperbolic'|'neither', 'witness': ...}

    anisotropic: no nonzero invariant isotropic subspace;
    hyperbolic: some invariant self-perpendicular subspace."""
    if mod.dim == 0:
        return {"kind": "zero", "witness": None,
                "anisotropic": True, "hyperbolic": True}
    hyper_wit = None
    aniso = True
    aniso_breaker = None
    for B in invariant_subspaces(mod):
        if B.shape[0] == 0:
            continue
        cert = certify(mod, B)
        if cert.isotropic and aniso:
            aniso = False
            aniso_breaker = B
        if cert.self_perpendicular and hyper_wit is None:
            hyper_wit = B
    if hyper_wit is not None:
        return {"kind": "hyperbolic", "witness": hyper_wit,
                "anisotropic": aniso, "hyperbolic": True}
    if aniso:
        return {"kind": "anisotropic", "witness": None,
                "anisotropic": True, "hyperbolic": False}
    return {"kind": "neither", "witness": aniso_breaker,
            "anisotropic": False, "hyperbolic": False}


# ---------------------------------------------------------------------------
# isometry and quotients
# ---------------------------------------------------------------------------

def isometric(v1: SympModule, v2: SympModule, identification=None,
              search_cap: int = 200000) -> bool:
    """Equivariant form-preserving bijection search. `identification`
    optionally maps actor matrices of v1 to those of v2 pairwise (lists of
    equal length, matching generators)."""
    if v1.p != v2.p or v1.dim != v2.dim:
        return False
    p, d = v1.p, v1.dim
    if d == 0:
        return True
    pairs = identification
    if pairs is None:
        if len(v1.actors) != len(v2.actors):
            raise ValueError("generator lists differ; pass an identification")
        pairs = list(zip(v1.actors, v2.actors))
    # solve the intertwiner space: M with  rho2(g) M = M rho1(g)
    rows = []
    for g1, g2 in pairs:
        # (g2 x I - I x g1^T) vec(M) = 0 with vec row-major
        block = np.kron(g2, np.eye(d, dtype=np.int64)) - \
            np.kron(np.eye(d, dtype=np.int64), g1.T)
        rows.append(block % p)
    if rows:
        big = np.vstack(rows)
        basis = modlin.nullspace(big, p)
    else:
        basis = np.eye(d * d, dtype=np.int64)
    k = basis.shape[0]
    if p ** k > search_cap:
        raise ValueError(f"intertwiner space too large to scan (p^{k})")
    for coeffs in iproduct(*[range(p)] * k):
        if not any(coeffs):
            continue
        vec = np.zeros(d * d, dtype=np.int64)
        for c, b in zip(coeffs, basis):
            vec = (vec + c * b) % p
        M = vec.reshape(d, d)
        _, _, rank = modlin.rref(M, p)
        if rank != d:
            continue
        if not ((M.T @ v2.form @ M - v1.form) % p).any():
            return True
    return False


def wperp_mod_w(mod: SympModule, W: np.ndarray) -> SympModule:
    """The induced module on W-perp / W for a maximal invariant totally
    isotropic W (certified)."""
    p = mod.p
    cert = certify(mod, W)
    if not (cert.invariant and cert.isotropic):
        raise ValueError("W must be invariant and totally isotropic")
    for B in invariant_subspaces(mod):
        if B.shape[0] > cert.basis.shape[0]:
            c2 = certify(mod, B)
            if c2.isotropic and _contains(B, cert.basis, p):
                raise ValueError("W is not maximal among invariant isotropics")
    Wb = cert.basis
    P = perp_space(mod, Wb)
    # coordinates on W^perp / W: extend W to a basis of W^perp
    ext = list(Wb)
    for row in P:
        aug = np.vstack(ext + [row]) if ext else row[None]
        _, _, r = modlin.rref(aug, p)
        if r == len(ext) + 1:
            ext.append(row)
    full = np.array(ext, dtype=np.int64)
    k = Wb.shape[0]
    quo = full[k:]
    dq = quo.shape[0]
    J = (quo @ mod.form @ quo.T) % p
    actors = []
    for M in mod.actors:
        img = (quo @ M.T) % p   # row j = image of the j-th quotient basis vector
        sol = modlin.solve_right(full.T % p, img.T % p, p)  # full^T X = img^T
        actors.append(sol[k:, :] % p)  # column j = quotient coords of image j
    out = SympModule(p, dq, J, [a % p for a in actors])
    out.validate()
    return out


def _contains(big: np.ndarray, small: np.ndarray, p: int) -> bool:
    if small.shape[0] == 0:
        return True
    aug = np.vstack([big, small])
    _, _, r = modlin.rref(aug, p)
    _, _, rb = modlin.rref(big, p)
    return r == rb


def dade_filter_check(mod: SympModule, actor_subset: list[np.ndarray]) -> bool:
    """For anisotropic mod and H = closure of the subset with p-power index
    in the actor group: (mod|_H hyperbolic => mod = 0). Returns whether the
    implication held."""
    sub = SympModule(mod.p, mod.dim, mod.form, actor_subset)
    sub.validate()
    full_order = mod.actor_order()
    sub_order = sub.actor_order()
    idx = full_order // sub_order
    t = idx
    while t % mod.p == 0:
        t //= mod.p
    if t != 1:
        raise ValueError("actor subset does not have p-power index")
    full_cls = classify(mod)
    if not full_cls["anisotropic"]:
        raise ValueError("module is not anisotropic for the full actor group")
    sub_cls = classify(sub)
    if sub_cls["hyperbolic"]:
        return mod.dim == 0
    return True
