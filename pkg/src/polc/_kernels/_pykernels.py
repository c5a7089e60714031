"""Pure-Python/numpy implementations of the hot kernels.

Signatures and results are identical to the compiled ``_ckernels`` module.
"""

from __future__ import annotations

import numpy as np


def enumerate_transformations(gens, n_points, cap):
    """Breadth-first closure of the transformations generated by ``gens``.

    ``gens[a]`` maps point ``q`` to ``gens[a][q]``.  Elements act on the right:
    the product ``f . g`` sends ``q`` to ``g[f[q]]``.  Element 0 is the
    identity and discovery order is shortlex in the generator index, so
    ``parent``/``via`` spell shortlex-least representatives.

    Returns ``(elements, parent, via, right)`` or ``None`` if more than
    ``cap`` elements exist.
    """
    gens = [tuple(int(x) for x in g) for g in gens]
    k = len(gens)
    ident = tuple(range(n_points))
    elements = [ident]
    ids = {ident: 0}
    parent = [-1]
    via = [-1]
    right = []
    i = 0
    while i < len(elements):
        f = elements[i]
        row = []
        for a in range(k):
            g = gens[a]
            h = tuple([g[x] for x in f])
            j = ids.get(h)
            if j is None:
                if len(elements) >= cap:
                    return None
                j = len(elements)
                ids[h] = j
                elements.append(h)
                parent.append(i)
                via.append(a)
            row.append(j)
        right.append(row)
        i += 1
    return (
        np.array(elements, dtype=np.int32).reshape(len(elements), n_points),
        np.array(parent, dtype=np.int32),
        np.array(via, dtype=np.int32),
        np.array(right, dtype=np.int32).reshape(len(elements), k),
    )


def fill_table(right, parent, via):
    """Multiplication table from the right action of the generators.

    ``table[i, j] = right[table[i, parent[j]], via[j]]`` with column 0 the identity.
    """
    right = np.asarray(right, dtype=np.int32)
    m = right.shape[0]
    table = np.empty((m, m), dtype=np.int32)
    table[:, 0] = np.arange(m, dtype=np.int32)
    for j in range(1, m):
        table[:, j] = right[table[:, parent[j]], via[j]]
    return table


def order_from_transforms(transforms, inclusion):
    """``leq[s, t]`` iff ``inclusion[s(q), t(q)]`` for every point ``q``."""
    transforms = np.asarray(transforms, dtype=np.int32)
    inclusion = np.asarray(inclusion, dtype=bool)
    m = transforms.shape[0]
    leq = np.empty((m, m), dtype=bool)
    for s in range(m):
        leq[s] = inclusion[transforms[s][None, :], transforms].all(axis=1)
    return leq


def order_by_definition(table, accepting):
    """``leq[s, t]`` iff ``x s y in F`` implies ``x t y in F`` for all elements ``x, y``."""
    table = np.asarray(table, dtype=np.int32)
    acc = np.asarray(accepting, dtype=bool)
    m = table.shape[0]
    ctx = acc[table]  # ctx[u, y] = u.y in F
    sub = np.empty((m, m), dtype=bool)  # sub[u, v]: contexts of u included in those of v
    for u in range(m):
        sub[u] = ~(ctx[u][None, :] & ~ctx).any(axis=1)
    leq = np.empty((m, m), dtype=bool)
    for s in range(m):
        leq[s] = sub[table[:, s][:, None], table].all(axis=0)
    return leq


def transitive_closure(rel):
    """Reflexive-transitive closure (Warshall)."""
    out = np.array(rel, dtype=bool, copy=True)
    m = out.shape[0]
    out[np.arange(m), np.arange(m)] = True
    for k in range(m):
        out |= out[:, k : k + 1] & out[k : k + 1, :]
    return out


def forest_levels(images, table, idempotent, max_level):
    """Minimal factorization-forest height of every infix of a word.

    ``images[i]`` is the monoid image of letter ``i``.  Returns ``(level,
    val)``: ``val[i, j]`` is the image of the infix ``[i, j)`` and
    ``level[i, j]`` its minimal forest height, or -1 where it was not
    needed (computation stops once the whole word is assigned) or exceeds
    ``max_level``.
    """
    images = [int(x) for x in images]
    rows = np.asarray(table).tolist()
    idem = [bool(x) for x in idempotent]
    n = len(images)
    val = [[-1] * (n + 1) for _ in range(n + 1)]
    level = [[-1] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        v = images[i]
        val[i][i + 1] = v
        level[i][i + 1] = 0
        for j in range(i + 2, n + 1):
            v = rows[v][images[j - 1]]
            val[i][j] = v
    if n >= 2:
        # lab[k][e]: bitset of b > k with val[k][b] == e
        lab = []
        for k in range(n + 1):
            d: dict[int, int] = {}
            for b in range(k + 1, n + 1):
                e = val[k][b]
                d[e] = d.get(e, 0) | (1 << b)
            lab.append(d)
        starts = [0] * (n + 1)  # bitset of k with level[a][k] assigned
        ends = [0] * (n + 1)  # bitset of k with level[k][b] assigned
        for i in range(n):
            starts[i] |= 1 << (i + 1)
            ends[i + 1] |= 1 << i
        for h in range(1, max_level + 1):
            if level[0][n] >= 0:
                break
            edges = [0] * (n + 1)
            for a in range(n + 1):
                bits = starts[a]
                while bits:
                    low = bits & -bits
                    b = low.bit_length() - 1
                    bits ^= low
                    if idem[val[a][b]]:
                        edges[a] |= low
            plus = [0] * (n + 1)
            two = [0] * (n + 1)
            for a in range(n, -1, -1):
                acc = 0
                bits = edges[a]
                while bits:
                    low = bits & -bits
                    k = low.bit_length() - 1
                    bits ^= low
                    acc |= plus[k] & lab[k].get(val[a][k], 0)
                two[a] = acc
                plus[a] = edges[a] | acc
            new = []
            for a in range(n - 1):
                for b in range(a + 2, n + 1):
                    if level[a][b] < 0 and ((two[a] >> b) & 1 or starts[a] & ends[b]):
                        new.append((a, b))
            for a, b in new:
                level[a][b] = h
                starts[a] |= 1 << b
                ends[b] |= 1 << a
    return np.array(level, dtype=np.int16), np.array(val, dtype=np.int32)
