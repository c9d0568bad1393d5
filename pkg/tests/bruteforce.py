"""Independent oracles the test suite trusts over the package under test.

Everything here is deliberately naive: filter all n! vertex permutations,
multiply tables entry by entry.  Usable up to 8 vertices or so.
"""

from itertools import permutations


def brute_colour_automorphisms(n: int, edge_colour: dict) -> set:
    """Image tuples of every colour-preserving vertex bijection.

    ``edge_colour`` maps unordered vertex pairs (given in either order) to
    colour ids; absent pairs are non-edges.
    """
    norm = {}
    for (u, v), c in edge_colour.items():
        norm[(u, v) if u < v else (v, u)] = c
    out = set()
    for img in permutations(range(n)):
        ok = True
        for u in range(n):
            for v in range(u + 1, n):
                x, y = img[u], img[v]
                if norm.get((u, v)) != norm.get((x, y) if x < y else (y, x)):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.add(img)
    return out


def brute_automorphisms(table) -> set:
    """Image tuples of every multiplication-preserving bijection of a table."""
    n = len(table)
    out = set()
    for img in permutations(range(n)):
        if all(img[table[i][j]] == table[img[i]][img[j]]
               for i in range(n) for j in range(n)):
            out.add(img)
    return out


def brute_affine_maps(table) -> set:
    """Image tuples of every left translation composed with an automorphism."""
    n = len(table)
    out = set()
    for alpha in brute_automorphisms(table):
        for a in range(n):
            out.add(tuple(table[a][alpha[i]] for i in range(n)))
    return out


def edge_dict(graph) -> dict:
    """Adapter: a ColouredGraph's edges as the dict the oracles expect."""
    return {(u, v): graph.edge_colour(u, v) for (u, v) in graph.edges()}
