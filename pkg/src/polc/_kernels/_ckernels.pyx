# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``; same signatures, same results."""

import numpy as np
cimport numpy as cnp

cnp.import_array()


def enumerate_transformations(gens, int n_points, int cap):
    cdef int k = len(gens)
    cdef cnp.int32_t[:, ::1] g = np.ascontiguousarray(np.asarray(gens, dtype=np.int32).reshape(k, n_points))
    cdef int cap_rows = 64
    buf = np.empty((cap_rows, n_points), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] elems = buf
    cdef cnp.int32_t[::1] tmp = np.empty(n_points, dtype=np.int32)
    cdef int count = 1
    cdef int i = 0, a, q, j
    parent = [-1]
    via = [-1]
    right = []
    for q in range(n_points):
        elems[0, q] = q
    ids = {bytes(np.asarray(elems[0])): 0}
    while i < count:
        row = []
        for a in range(k):
            for q in range(n_points):
                tmp[q] = g[a, elems[i, q]]
            key = bytes(np.asarray(tmp))
            found = ids.get(key)
            if found is None:
                if count >= cap:
                    return None
                if count == cap_rows:
                    cap_rows *= 2
                    grown = np.empty((cap_rows, n_points), dtype=np.int32)
                    grown[:count] = buf[:count]
                    buf = grown
                    elems = buf
                for q in range(n_points):
                    elems[count, q] = tmp[q]
                ids[key] = count
                parent.append(i)
                via.append(a)
                j = count
                count += 1
            else:
                j = found
            row.append(j)
        right.append(row)
        i += 1
    return (
        np.array(buf[:count], dtype=np.int32),
        np.array(parent, dtype=np.int32),
        np.array(via, dtype=np.int32),
        np.array(right, dtype=np.int32).reshape(count, k),
    )


def fill_table(right, parent, via):
    cdef cnp.int32_t[:, ::1] r = np.ascontiguousarray(right, dtype=np.int32)
    cdef cnp.int32_t[::1] par = np.ascontiguousarray(parent, dtype=np.int32)
    cdef cnp.int32_t[::1] vi = np.ascontiguousarray(via, dtype=np.int32)
    cdef Py_ssize_t m = r.shape[0]
    out = np.empty((m, m), dtype=np.int32)
    cdef cnp.int32_t[:, ::1] t = out
    cdef Py_ssize_t i, j
    for i in range(m):
        t[i, 0] = <cnp.int32_t>i
    for i in range(m):
        for j in range(1, m):
            t[i, j] = r[t[i, par[j]], vi[j]]
    return out


def order_from_transforms(transforms, inclusion):
    cdef cnp.int32_t[:, ::1] tr = np.ascontiguousarray(transforms, dtype=np.int32)
    cdef cnp.uint8_t[:, ::1] inc = np.ascontiguousarray(inclusion, dtype=np.uint8)
    cdef Py_ssize_t m = tr.shape[0], n = tr.shape[1]
    out = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] leq = out
    cdef Py_ssize_t s, t, q
    cdef bint ok
    for s in range(m):
        for t in range(m):
            ok = True
            for q in range(n):
                if not inc[tr[s, q], tr[t, q]]:
                    ok = False
                    break
            leq[s, t] = ok
    return out.astype(bool)


def order_by_definition(table, accepting):
    cdef cnp.int32_t[:, ::1] tb = np.ascontiguousarray(table, dtype=np.int32)
    cdef cnp.uint8_t[::1] acc = np.ascontiguousarray(accepting, dtype=np.uint8)
    cdef Py_ssize_t m = tb.shape[0]
    sub_arr = np.ones((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] sub = sub_arr
    out = np.zeros((m, m), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] leq = out
    cdef Py_ssize_t u, v, y, s, t, x
    cdef bint ok
    for u in range(m):
        for v in range(m):
            for y in range(m):
                if acc[tb[u, y]] and not acc[tb[v, y]]:
                    sub[u, v] = 0
                    break
    for s in range(m):
        for t in range(m):
            ok = True
            for x in range(m):
                if not sub[tb[x, s], tb[x, t]]:
                    ok = False
                    break
            leq[s, t] = ok
    return out.astype(bool)


def transitive_closure(rel):
    out = np.array(rel, dtype=np.uint8, copy=True)
    cdef cnp.uint8_t[:, ::1] r = out
    cdef Py_ssize_t m = r.shape[0], i, j, k
    for i in range(m):
        r[i, i] = 1
    for k in range(m):
        for i in range(m):
            if r[i, k]:
                for j in range(m):
                    if r[k, j]:
                        r[i, j] = 1
    return out.astype(bool)


def forest_levels(images, table, idempotent, int max_level):
    cdef cnp.int32_t[::1] img = np.ascontiguousarray(images, dtype=np.int32)
    cdef cnp.int32_t[:, ::1] tb = np.ascontiguousarray(table, dtype=np.int32)
    cdef cnp.uint8_t[::1] idem = np.ascontiguousarray(idempotent, dtype=np.uint8)
    cdef Py_ssize_t n = img.shape[0]
    val_arr = np.full((n + 1, n + 1), -1, dtype=np.int32)
    lvl_arr = np.full((n + 1, n + 1), -1, dtype=np.int16)
    plus_arr = np.zeros((n + 1, n + 1), dtype=np.uint8)
    two_arr = np.zeros((n + 1, n + 1), dtype=np.uint8)
    cdef cnp.int32_t[:, ::1] val = val_arr
    cdef cnp.int16_t[:, ::1] level = lvl_arr
    cdef cnp.uint8_t[:, ::1] plus = plus_arr
    cdef cnp.uint8_t[:, ::1] two = two_arr
    cdef Py_ssize_t a, b, k
    cdef int h, e, v
    cdef bint found
    for a in range(n):
        v = img[a]
        val[a, a + 1] = v
        level[a, a + 1] = 0
        for b in range(a + 2, n + 1):
            v = tb[v, img[b - 1]]
            val[a, b] = v
    if n < 2:
        return lvl_arr, val_arr
    for h in range(1, max_level + 1):
        if level[0, n] >= 0:
            break
        for a in range(n, -1, -1):
            for b in range(a + 1, n + 1):
                e = val[a, b]
                found = False
                if idem[e]:
                    for k in range(a + 1, b):
                        if level[a, k] >= 0 and val[a, k] == e and plus[k, b] and val[k, b] == e:
                            found = True
                            break
                two[a, b] = found
                plus[a, b] = found or (level[a, b] >= 0 and idem[e])
        for a in range(n - 1):
            for b in range(a + 2, n + 1):
                if level[a, b] >= 0:
                    continue
                found = two[a, b]
                if not found:
                    for k in range(a + 1, b):
                        if level[a, k] >= 0 and level[k, b] >= 0:
                            found = True
                            break
                if found:
                    level[a, b] = -2  # assigned this round
        for a in range(n - 1):
            for b in range(a + 2, n + 1):
                if level[a, b] == -2:
                    level[a, b] = h
    return lvl_arr, val_arr
