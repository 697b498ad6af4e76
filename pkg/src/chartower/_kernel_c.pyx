# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernel for the hot group-arithmetic loops.

Same contracts as chartower._kernel_py; chartower.kernel picks this module
when the extension has been built (see setup.py: build_ext --inplace).
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

KERNEL_NAME = "cython"


def mult_table(perms):
    """Multiplication table of a closed, lexicographically sorted perm set."""
    cdef cnp.ndarray arr = np.ascontiguousarray(perms)
    cdef Py_ssize_t n = arr.shape[0]
    index = {arr[i].tobytes(): i for i in range(n)}
    cdef cnp.ndarray[cnp.int32_t, ndim=2] table = np.empty((n, n), dtype=np.int32)
    cdef Py_ssize_t i, j
    for i in range(n):
        composed = arr[:, arr[i]]
        rows = np.ascontiguousarray(composed)
        for j in range(n):
            table[i, j] = index[rows[j].tobytes()]
    return table


def inverse_table(table, identity):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = tab.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] inv = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t i, j
    cdef int ident = identity
    for i in range(n):
        for j in range(n):
            if tab[i, j] == ident:
                inv[i] = <cnp.int32_t> j
                break
    return inv


def closure(table, gens):
    """Sorted indices of the subgroup generated by `gens`."""
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = tab.shape[0]
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] work = np.empty(n, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] gen_arr
    cdef Py_ssize_t head = 0, tail = 0, k, x, y
    cdef Py_ssize_t ngens
    gen_list = list(dict.fromkeys(int(g) for g in gens))
    if not gen_list:
        for x in range(n):
            if tab[x, x] == x:
                return np.array([x], dtype=np.int32)
        raise ValueError("multiplication table has no identity")
    gen_arr = np.array(gen_list, dtype=np.int32)
    ngens = gen_arr.shape[0]
    for k in range(ngens):
        x = gen_arr[k]
        if not seen[x]:
            seen[x] = 1
            work[tail] = <cnp.int32_t> x
            tail += 1
    while head < tail:
        x = work[head]
        head += 1
        for k in range(ngens):
            y = tab[x, gen_arr[k]]
            if not seen[y]:
                seen[y] = 1
                work[tail] = <cnp.int32_t> y
                tail += 1
    return np.flatnonzero(seen).astype(np.int32)


def conjugacy_classes(table, inv):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] invt = np.ascontiguousarray(inv, dtype=np.int32)
    cdef Py_ssize_t n = tab.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] class_of = np.full(n, -1, dtype=np.int32)
    cdef Py_ssize_t i, g, y
    cdef int cls = 0
    for i in range(n):
        if class_of[i] >= 0:
            continue
        for g in range(n):
            y = tab[tab[invt[g], i], g]
            class_of[y] = cls
        cls += 1
    return class_of


def conjugate_set(table, inv, members, g):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] invt = np.ascontiguousarray(inv, dtype=np.int32)
    cdef cnp.ndarray[cnp.int32_t, ndim=1] mem = np.ascontiguousarray(members, dtype=np.int32)
    cdef Py_ssize_t m = mem.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(m, dtype=np.int32)
    cdef Py_ssize_t i
    cdef int gi = g, ig
    ig = invt[gi]
    for i in range(m):
        out[i] = tab[tab[ig, mem[i]], gi]
    return out


def element_orders(table, identity):
    cdef cnp.ndarray[cnp.int32_t, ndim=2] tab = np.ascontiguousarray(table, dtype=np.int32)
    cdef Py_ssize_t n = tab.shape[0]
    cdef cnp.ndarray[cnp.int32_t, ndim=1] orders = np.empty(n, dtype=np.int32)
    cdef Py_ssize_t i, x
    cdef int k, ident = identity
    for i in range(n):
        k = 1
        x = i
        while x != ident:
            x = tab[x, i]
            k += 1
        orders[i] = k
    return orders
