"""Pure-Python search kernels.

Contract shared with the compiled twin in ``_fast.pyx``: same inputs, same
outputs, same node counts.  Any change here must be mirrored there.

Graphs arrive as a flattened vertex-by-vertex matrix ``colours`` of length
n*n where entry ``u*n + v`` is the colour id of edge {u, v} (>= 0) or -1 for
a non-edge.  The matrix is symmetric with -1 on the diagonal.
"""

from __future__ import annotations


def _bfs_order(n: int, colours) -> tuple[list[int], list[int]]:
    """Breadth-first vertex order from vertex 0, neighbours ascending."""
    order = [0]
    parent = [-1] * n
    seen = [False] * n
    seen[0] = True
    qi = 0
    while qi < len(order):
        u = order[qi]
        qi += 1
        ub = u * n
        for v in range(n):
            if colours[ub + v] >= 0 and not seen[v]:
                seen[v] = True
                parent[v] = u
                order.append(v)
    if len(order) != n:
        raise ValueError("graph is not connected")
    return order, parent


def search(n: int, colours) -> tuple[list[tuple[int, ...]], int]:
    """All colour-preserving vertex bijections of a connected coloured graph.

    Backtracking over a breadth-first spanning tree rooted at vertex 0: the
    root image is tried in ascending order, every later vertex only over the
    like-coloured neighbours of its parent's image, and each placement is
    checked against all previously placed vertices.  A complete assignment is
    verified over every vertex pair before being accepted.

    Returns the lexicographically sorted list of image tuples plus the number
    of committed placements (the search tree size).
    """
    if n <= 0:
        raise ValueError("graph must have at least one vertex")
    order, parent = _bfs_order(n, colours)
    img = [-1] * n
    used = [False] * n
    found: list[tuple[int, ...]] = []
    nodes = 0

    def extend(k: int) -> None:
        nonlocal nodes
        if k == n:
            for u in range(n):
                ub = u * n
                iub = img[u] * n
                for v in range(n):
                    if colours[ub + v] != colours[iub + img[v]]:
                        return
            found.append(tuple(img))
            return
        v = order[k]
        vb = v * n
        if k == 0:
            candidates = range(n)
        else:
            u = parent[v]
            col = colours[u * n + v]
            iub = img[u] * n
            candidates = [w for w in range(n) if colours[iub + w] == col]
        for w in candidates:
            if used[w]:
                continue
            wb = w * n
            ok = True
            for j in range(k):
                x = order[j]
                if colours[vb + x] != colours[wb + img[x]]:
                    ok = False
                    break
            if not ok:
                continue
            img[v] = w
            used[w] = True
            nodes += 1
            extend(k + 1)
            used[w] = False
            img[v] = -1

    extend(0)
    found.sort()
    return found, nodes


def check_assoc(n: int, table) -> int:
    """First triple violating (i*j)*k == i*(j*k), encoded (i*n + j)*n + k.

    Returns -1 when the flattened n*n multiplication table is associative.
    """
    for i in range(n):
        ib = i * n
        for j in range(n):
            ijb = table[ib + j] * n
            jb = j * n
            for k in range(n):
                if table[ijb + k] != table[ib + table[jb + k]]:
                    return (i * n + j) * n + k
    return -1
