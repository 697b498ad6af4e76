"""Pure-Python/numpy kernel for the hot group-arithmetic loops.

The compiled twin (_kernel_c, built from _kernel_c.pyx) exports the same
functions with the same contracts; chartower.kernel picks one at import.
Everything here works on a multiplication table `table` (int32, n x n,
table[i, j] = index of element i * element j) and an inverse table `inv`.
"""

from __future__ import annotations

import numpy as np

KERNEL_NAME = "python"


def mult_table(perms: np.ndarray) -> np.ndarray:
    """Multiplication table of a closed set of permutations.

    perms: (n, degree) int array, rows sorted lexicographically.
    Product convention: (p*q)(x) = q(p(x)), i.e. apply p first.
    """
    n = perms.shape[0]
    index = {row.tobytes(): i for i, row in enumerate(perms)}
    table = np.empty((n, n), dtype=np.int32)
    for i in range(n):
        composed = perms[:, perms[i]]  # composed[j, x] = perms[j][perms[i][x]]
        row = table[i]
        for j in range(n):
            row[j] = index[composed[j].tobytes()]
    return table


def inverse_table(table: np.ndarray, identity: int) -> np.ndarray:
    n = table.shape[0]
    inv = np.empty(n, dtype=np.int32)
    src, dst = np.nonzero(table == identity)
    inv[src] = dst
    return inv


def closure(table: np.ndarray, gens) -> np.ndarray:
    """Sorted indices of the subgroup generated by `gens` (indices)."""
    n = table.shape[0]
    seen = np.zeros(n, dtype=bool)
    # identity = the unique e with e*e = e among generators' powers; cheaper:
    # grow from the generator set by left-multiplication until stable.
    work = list(dict.fromkeys(int(g) for g in gens))
    if not work:
        # locate the identity: table[i, i] == i
        for i in range(n):
            if table[i, i] == i:
                return np.array([i], dtype=np.int32)
        raise ValueError("multiplication table has no identity")
    for g in work:
        seen[g] = True
    head = 0
    members = list(work)
    gen_list = list(work)
    while head < len(members):
        x = members[head]
        head += 1
        row = table[x]
        for g in gen_list:
            y = int(row[g])
            if not seen[y]:
                seen[y] = True
                members.append(y)
    out = np.flatnonzero(seen).astype(np.int32)
    # ensure closure includes identity/inverses (finite => automatic)
    return out


def conjugacy_classes(table: np.ndarray, inv: np.ndarray) -> np.ndarray:
    """class_of[i] = index of the conjugacy class of element i.

    Classes are numbered by first (smallest) member encountered in index
    order, so numbering is canonical for a canonically sorted group.
    """
    n = table.shape[0]
    class_of = np.full(n, -1, dtype=np.int32)
    cls = 0
    all_idx = np.arange(n)
    for i in range(n):
        if class_of[i] >= 0:
            continue
        conj = table[table[inv, i], all_idx]  # g^-1 * i * g for every g
        members = np.unique(conj)
        class_of[members] = cls
        cls += 1
    return class_of


def conjugate_set(table: np.ndarray, inv: np.ndarray, members: np.ndarray,
                  g: int) -> np.ndarray:
    """Indices of g^-1 * members * g, unsorted."""
    return table[table[inv[g], members], g]


def element_orders(table: np.ndarray, identity: int) -> np.ndarray:
    n = table.shape[0]
    orders = np.empty(n, dtype=np.int32)
    for i in range(n):
        k = 1
        x = i
        while x != identity:
            x = int(table[x, i])
            k += 1
        orders[i] = k
    return orders
