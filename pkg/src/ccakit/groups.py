"""Table-backed finite groups: constructions, closure, and recognition."""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product as iproduct

from . import kernels
from .errors import CapExceededError
from .perm import Permutation

_DEFAULT_CAP = 512


def default_cap() -> int:
    """Order cap for table-backed groups; CCA_MAX_ORDER overrides it."""
    raw = os.environ.get("CCA_MAX_ORDER")
    if raw is None:
        return _DEFAULT_CAP
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"CCA_MAX_ORDER must be an integer, got {raw!r}") from exc
    if cap < 1:
        raise ValueError("CCA_MAX_ORDER must be positive")
    return cap


class FiniteGroup:
    """A finite group given by an element list and a multiplication table.

    ``elements[i]`` is a display name, ``table[i][j]`` the index of the
    product (element i times element j, i acting on the left).  ``generators``
    maps generator names to indices.  ``realization``, when present, assigns
    each index a Permutation and is a faithful homomorphism for the
    left-action composition convention.
    """

    __slots__ = ("elements", "table", "identity", "inverse", "generators",
                 "realization", "name")

    def __init__(self, elements, table, generators=None, realization=None,
                 name=None):
        self.elements = list(elements)
        n = len(self.elements)
        if n == 0:
            raise ValueError("a group needs at least the identity")
        self.table = [list(row) for row in table]
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise ValueError("table shape does not match the element count")
        for row in self.table:
            if sorted(row) != list(range(n)):
                raise ValueError("table row is not a permutation of indices")
        for j in range(n):
            col = sorted(self.table[i][j] for i in range(n))
            if col != list(range(n)):
                raise ValueError("table column is not a permutation of indices")
        ident = None
        for e in range(n):
            if all(self.table[e][j] == j for j in range(n)) and \
                    all(self.table[i][e] == i for i in range(n)):
                ident = e
                break
        if ident is None:
            raise ValueError("table has no two-sided identity")
        self.identity = ident
        inv = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == ident and self.table[j][i] == ident:
                    inv[i] = j
                    break
            if inv[i] is None:
                raise ValueError(f"element {i} has no two-sided inverse")
        self.inverse = inv
        self.generators = dict(generators or {})
        for gname, idx in self.generators.items():
            if not 0 <= idx < n:
                raise ValueError(f"generator {gname!r} index out of range")
        if realization is not None:
            realization = list(realization)
            if len(realization) != n:
                raise ValueError("realization length does not match order")
        self.realization = realization
        self.name = name

    @property
    def order(self) -> int:
        return len(self.elements)

    def mult(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def power(self, i: int, k: int) -> int:
        if k < 0:
            return self.power(self.inverse[i], -k)
        acc = self.identity
        base = i
        while k:
            if k & 1:
                acc = self.table[acc][base]
            base = self.table[base][base]
            k >>= 1
        return acc

    def element_order(self, i: int) -> int:
        k = 1
        acc = i
        while acc != self.identity:
            acc = self.table[acc][i]
            k += 1
        return k

    def order_profile(self) -> dict[int, int]:
        profile: dict[int, int] = {}
        for i in range(self.order):
            o = self.element_order(i)
            profile[o] = profile.get(o, 0) + 1
        return profile

    def involutions(self) -> list[int]:
        return [i for i in range(self.order)
                if i != self.identity and self.table[i][i] == self.identity]

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[i][j] == t[j][i]
                   for i in range(self.order) for j in range(i + 1, self.order))

    def is_elementary_abelian_2(self) -> bool:
        return self.is_abelian() and all(
            self.table[i][i] == self.identity for i in range(self.order))

    def subgroup_closure(self, gens) -> frozenset[int]:
        """Indices of the subgroup generated by ``gens`` (right-mult BFS)."""
        known = {self.identity}
        frontier = [self.identity]
        gens = list(gens)
        while frontier:
            nxt = []
            for x in frontier:
                for s in gens:
                    y = self.table[x][s]
                    if y not in known:
                        known.add(y)
                        nxt.append(y)
            frontier = nxt
        return frozenset(known)

    def generates(self, indices) -> bool:
        return len(self.subgroup_closure(indices)) == self.order

    def subgroup(self, indices) -> "FiniteGroup":
        """The subgroup on the given closed index set, reindexed ascending."""
        idx = sorted(set(indices))
        pos = {g: k for k, g in enumerate(idx)}
        table = []
        for g in idx:
            row = []
            for h in idx:
                gh = self.table[g][h]
                if gh not in pos:
                    raise ValueError("index set is not closed under products")
                row.append(pos[gh])
            table.append(row)
        realization = None
        if self.realization is not None:
            realization = [self.realization[g] for g in idx]
        return FiniteGroup([self.elements[g] for g in idx], table,
                           realization=realization)

    def element(self, i: int) -> "GroupElement":
        return GroupElement(self, i)

    def element_name(self, i: int) -> str:
        return self.elements[i]

    def validate(self, check_associativity: bool = True) -> None:
        """Exhaustive axiom check; associativity costs order-cubed."""
        if check_associativity:
            flat = [x for row in self.table for x in row]
            bad = kernels.check_assoc(self.order, flat)
            if bad != -1:
                k = bad % self.order
                ij = bad // self.order
                raise ValueError(
                    f"associativity fails at ({ij // self.order}, "
                    f"{ij % self.order}, {k})")
        if self.realization is not None:
            seen = set()
            for p in self.realization:
                if not isinstance(p, Permutation):
                    raise ValueError("realization must hold Permutations")
                seen.add(p.images)
            if len(seen) != self.order:
                raise ValueError("realization is not faithful")
            for i in range(self.order):
                for j in range(self.order):
                    lhs = self.realization[self.table[i][j]]
                    rhs = self.realization[i] * self.realization[j]
                    if lhs != rhs:
                        raise ValueError(
                            f"realization is not a homomorphism at ({i},{j})")

    def __repr__(self) -> str:
        label = self.name or "FiniteGroup"
        return f"<{label} of order {self.order}>"


@dataclass(frozen=True)
class GroupElement:
    """A single element, carried with its group for ergonomic call sites."""

    group: FiniteGroup
    index: int

    def __post_init__(self):
        if not 0 <= self.index < self.group.order:
            raise ValueError(f"index {self.index} outside the group")

    @property
    def name(self) -> str:
        return self.group.elements[self.index]

    @property
    def order(self) -> int:
        return self.group.element_order(self.index)

    def inverse(self) -> "GroupElement":
        return GroupElement(self.group, self.group.inverse[self.index])

    def __mul__(self, other: "GroupElement") -> "GroupElement":
        if other.group is not self.group:
            raise ValueError("elements of different groups")
        return GroupElement(self.group, self.group.table[self.index][other.index])


def element_order(g: FiniteGroup, i: int) -> int:
    return g.element_order(i)


def involutions(g: FiniteGroup) -> list[int]:
    return g.involutions()


def is_abelian(g: FiniteGroup) -> bool:
    return g.is_abelian()


def is_elementary_abelian_2(g: FiniteGroup) -> bool:
    return g.is_elementary_abelian_2()


def inverse_classes(g: FiniteGroup) -> list[tuple[int, ...]]:
    """The {c, c^-1} pairs over non-identity elements, canonically ordered."""
    seen = set()
    out = []
    for i in range(g.order):
        if i == g.identity or i in seen:
            continue
        j = g.inverse[i]
        cls = (i,) if i == j else (i, j)
        seen.update(cls)
        out.append(cls)
    return out


def _format_word(tokens: list[str]) -> str:
    """Collapse runs of one generator into powers: rho2 rho2 -> rho2^2."""
    if not tokens:
        return "e"
    parts = []
    i = 0
    while i < len(tokens):
        j = i
        while j < len(tokens) and tokens[j] == tokens[i]:
            j += 1
        run = j - i
        parts.append(tokens[i] if run == 1 else f"{tokens[i]}^{run}")
        i = j
    return "*".join(parts)


def closure(gens: list[Permutation], cap: int | None = None,
            names: list[str] | None = None, name: str | None = None
            ) -> FiniteGroup:
    """Permutation group generated by ``gens``, if its order fits the cap.

    Elements are discovered breadth-first from the identity, multiplying on
    the right by the generators in the given order, so element 0 is the
    identity and element names are first-seen words in the generators.
    """
    if not gens:
        raise ValueError("closure needs at least one generator")
    cap = default_cap() if cap is None else cap
    if cap < 1:
        raise ValueError("cap must be positive")
    degree = gens[0].degree
    if any(p.degree != degree for p in gens):
        raise ValueError("generators must share a degree")
    if names is None:
        names = [f"g{i}" for i in range(len(gens))]
    if len(names) != len(gens):
        raise ValueError("one name per generator, please")

    ident = Permutation.identity(degree)
    elems: list[Permutation] = [ident]
    index: dict[Permutation, int] = {ident: 0}
    words: list[list[str]] = [[]]
    qi = 0
    while qi < len(elems):
        base = elems[qi]
        for gname, gp in zip(names, gens):
            q = base * gp
            if q not in index:
                if len(elems) >= cap:
                    raise CapExceededError(
                        f"order exceeds cap {cap} while closing "
                        f"{len(gens)} generators")
                index[q] = len(elems)
                elems.append(q)
                words.append(words[qi] + [gname])
        qi += 1

    n = len(elems)
    table = [[index[elems[i] * elems[j]] for j in range(n)] for i in range(n)]
    return FiniteGroup(
        [_format_word(w) for w in words], table,
        generators={nm: index[gp] for nm, gp in zip(names, gens)},
        realization=elems, name=name)


def cyclic(n: int) -> FiniteGroup:
    """Cyclic group of order n; generator named r."""
    if n < 1:
        raise ValueError("order must be at least 1")
    names = ["e"] + ["r" if k == 1 else f"r^{k}" for k in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(names, table, generators={"r": 1 % n},
                       name=f"C{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order 2n, n >= 3; generators r (rotation), s (flip).

    Element (a, b) = r^a s^b sits at index a + n*b; s r s = r^-1.
    """
    if n < 3:
        raise ValueError("dihedral needs n >= 3")
    size = 2 * n

    def idx(a, b):
        return a + n * b

    table = [[0] * size for _ in range(size)]
    for a1, b1, a2, b2 in iproduct(range(n), range(2), range(n), range(2)):
        a = (a1 + a2) % n if b1 == 0 else (a1 - a2) % n
        table[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2)
    names = [None] * size
    for b in range(2):
        for a in range(n):
            rot = "e" if a == 0 else ("r" if a == 1 else f"r^{a}")
            if b == 0:
                names[idx(a, b)] = rot
            else:
                names[idx(a, b)] = "s" if a == 0 else f"{rot}*s"
    return FiniteGroup(names, table,
                       generators={"r": idx(1, 0), "s": idx(0, 1)},
                       name=f"D{2 * n}")


def generalized_dihedral(a: FiniteGroup) -> FiniteGroup:
    """Dih(A) = A extended by an involution s inverting it; A must be abelian.

    Element (x, b) = x*s^b at index x + |A|*b.
    """
    if not a.is_abelian():
        raise ValueError("generalized dihedral needs an abelian group")
    n = a.order
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for x, b, y, d in iproduct(range(n), range(2), range(n), range(2)):
        yy = y if b == 0 else a.inverse[y]
        table[x + n * b][y + n * d] = a.table[x][yy] + n * ((b + d) % 2)
    names = [None] * size
    for b in range(2):
        for x in range(n):
            base = a.elements[x]
            if b == 0:
                names[x + n * b] = base
            else:
                names[x + n * b] = "s" if x == a.identity else f"{base}*s"
    gens = dict(a.generators)
    gens["s"] = a.identity + n
    return FiniteGroup(names, table, generators=gens,
                       name=f"Dih({a.name or '?'})")


def generalized_dicyclic(a: FiniteGroup, y) -> FiniteGroup:
    """Dic(A, y) = A plus x with x^2 = y and x^-1 a x = a^-1.

    A must be abelian of even order and y an involution of A.  Element
    (z, b) = z*x^b sits at index z + |A|*b.
    """
    if isinstance(y, GroupElement):
        if y.group is not a:
            raise ValueError("y must live in the base group")
        y = y.index
    if not a.is_abelian():
        raise ValueError("generalized dicyclic needs an abelian base")
    if a.order % 2 != 0:
        raise ValueError("base group must have even order")
    if y == a.identity or a.table[y][y] != a.identity:
        raise ValueError("y must be an involution of the base group")
    n = a.order
    size = 2 * n
    table = [[0] * size for _ in range(size)]
    for z, b, w, d in iproduct(range(n), range(2), range(n), range(2)):
        ww = w if b == 0 else a.inverse[w]
        prod = a.table[z][ww]
        if b == 1 and d == 1:
            prod = a.table[prod][y]
        table[z + n * b][w + n * d] = prod + n * ((b + d) % 2)
    names = [None] * size
    for b in range(2):
        for z in range(n):
            base = a.elements[z]
            if b == 0:
                names[z + n * b] = base
            else:
                names[z + n * b] = "x" if z == a.identity else f"{base}*x"
    gens = dict(a.generators)
    gens["x"] = a.identity + n
    return FiniteGroup(names, table, generators=gens,
                       name=f"Dic({a.name or '?'})")


def quaternion() -> FiniteGroup:
    """The quaternion group on 1, -1, i, -i, j, -j, k, -k; generators i, j."""
    units = ["1", "i", "j", "k"]

    def unit_mult(u, v):
        # returns (sign, unit index)
        if u == 0:
            return 1, v
        if v == 0:
            return 1, u
        if u == v:
            return -1, 0
        # i*j=k, j*k=i, k*i=j and the reversals flip sign
        forward = {(1, 2): 3, (2, 3): 1, (3, 1): 2}
        if (u, v) in forward:
            return 1, forward[(u, v)]
        return -1, forward[(v, u)]

    def idx(sign, u):
        return 2 * u + (0 if sign == 1 else 1)

    size = 8
    table = [[0] * size for _ in range(size)]
    for s1, u1, s2, u2 in iproduct((1, -1), range(4), (1, -1), range(4)):
        s, u = unit_mult(u1, u2)
        table[idx(s1, u1)][idx(s2, u2)] = idx(s1 * s2 * s, u)
    names = []
    for u in range(4):
        names.append(units[u])
        names.append(f"-{units[u]}")
    return FiniteGroup(names, table, generators={"i": 2, "j": 4}, name="Q8")


def direct_product(g: FiniteGroup, h: FiniteGroup,
                   cap: int | None = None) -> FiniteGroup:
    """G x H; pair (i, j) at index i*|H| + j, generator names suffixed 1/2."""
    cap = default_cap() if cap is None else cap
    size = g.order * h.order
    if size > cap:
        raise CapExceededError(f"order {size} exceeds cap {cap}")
    m = h.order
    table = [[0] * size for _ in range(size)]
    for i1 in range(g.order):
        gt = g.table[i1]
        for j1 in range(m):
            ht = h.table[j1]
            row = table[i1 * m + j1]
            for i2 in range(g.order):
                base = gt[i2] * m
                for j2 in range(m):
                    row[i2 * m + j2] = base + ht[j2]
    names = [f"({gn},{hn})" for gn in g.elements for hn in h.elements]
    gens = {}
    for nm, i in g.generators.items():
        gens[f"{nm}1"] = i * m + h.identity
    for nm, j in h.generators.items():
        gens[f"{nm}2"] = g.identity * m + j
    return FiniteGroup(names, table, generators=gens,
                       name=f"{g.name or '?'}x{h.name or '?'}")


def wreath_c2(g: FiniteGroup, cap: int | None = None) -> FiniteGroup:
    """(G x G) extended by the coordinate swap t; order 2|G|^2.

    Element ((a, b), s) at index (a*|G| + b)*2 + s; t (a, b) t = (b, a).
    """
    cap = default_cap() if cap is None else cap
    n = g.order
    size = 2 * n * n
    if size > cap:
        raise CapExceededError(f"order {size} exceeds cap {cap}")

    def idx(a, b, s):
        return (a * n + b) * 2 + s

    table = [[0] * size for _ in range(size)]
    for a1, b1, s1 in iproduct(range(n), range(n), range(2)):
        row = table[idx(a1, b1, s1)]
        for a2, b2, s2 in iproduct(range(n), range(n), range(2)):
            c, d = (a2, b2) if s1 == 0 else (b2, a2)
            row[idx(a2, b2, s2)] = idx(g.table[a1][c], g.table[b1][d],
                                       (s1 + s2) % 2)
    names = [None] * size
    for a, b, s in iproduct(range(n), range(n), range(2)):
        core = f"({g.elements[a]},{g.elements[b]})"
        names[idx(a, b, s)] = core if s == 0 else f"{core}*t"
    gens = {}
    for nm, i in g.generators.items():
        gens[f"{nm}1"] = idx(i, g.identity, 0)
        gens[f"{nm}2"] = idx(g.identity, i, 0)
    gens["t"] = idx(g.identity, g.identity, 1)
    return FiniteGroup(names, table, generators=gens,
                       name=f"Wr2({g.name or '?'})")


def left_regular(g: FiniteGroup) -> FiniteGroup:
    """The same group realized by left translations on its own indices."""
    realization = [Permutation(row) for row in g.table]
    return FiniteGroup(g.elements, g.table, generators=g.generators,
                       realization=realization,
                       name=f"L({g.name or '?'})")


@dataclass(frozen=True)
class Isomorphism:
    """A verified isomorphism source -> target as a full index map."""

    source: FiniteGroup
    target: FiniteGroup
    images: tuple[int, ...]

    def apply(self, i: int) -> int:
        return self.images[i]

    def inverted(self) -> "Isomorphism":
        inv = [0] * len(self.images)
        for i, x in enumerate(self.images):
            inv[x] = i
        return Isomorphism(self.target, self.source, tuple(inv))

    @property
    def gen_images(self) -> dict[str, int]:
        return {nm: self.images[i] for nm, i in self.source.generators.items()}


def minimal_generating_sequence(g: FiniteGroup) -> list[int]:
    """Greedy generating sequence: scan indices, keep what grows the closure."""
    gens: list[int] = []
    known = frozenset({g.identity})
    for i in range(g.order):
        if i not in known:
            gens.append(i)
            known = g.subgroup_closure(gens)
            if len(known) == g.order:
                break
    return gens


def extend_homomorphism(g: FiniteGroup, gens: list[int], images: list[int],
                        h: FiniteGroup) -> list[int] | None:
    """Extend gens -> images to a homomorphism G -> H, or None.

    Fills values breadth-first from the identity and checks f(x*s) =
    f(x)*f(s) for every element x and generator s, which pins down a
    homomorphism whenever gens generate G.  Returns the full image list.
    """
    f: list[int | None] = [None] * g.order
    f[g.identity] = h.identity
    queue = [g.identity]
    qi = 0
    while qi < len(queue):
        x = queue[qi]
        qi += 1
        fx = f[x]
        for s, fs in zip(gens, images):
            y = g.table[x][s]
            fy = h.table[fx][fs]
            if f[y] is None:
                f[y] = fy
                queue.append(y)
            elif f[y] != fy:
                return None
    if len(queue) != g.order:
        return None  # gens do not generate
    return f  # type: ignore[return-value]


def _iso_candidates(g, h, gens):
    """Backtracking generator-image search; yields full image maps."""
    g_orders = [g.element_order(i) for i in range(g.order)]
    h_orders = [h.element_order(i) for i in range(h.order)]
    h_by_order: dict[int, list[int]] = {}
    for i, o in enumerate(h_orders):
        h_by_order.setdefault(o, []).append(i)
    sub_sizes = []
    for k in range(len(gens)):
        sub_sizes.append(len(g.subgroup_closure(gens[:k + 1])))

    chosen: list[int] = []

    def backtrack(k: int):
        if k == len(gens):
            f = extend_homomorphism(g, gens, chosen, h)
            if f is not None and len(set(f)) == g.order:
                yield tuple(f)
            return
        for cand in h_by_order.get(g_orders[gens[k]], []):
            chosen.append(cand)
            if len(h.subgroup_closure(chosen)) == sub_sizes[k]:
                yield from backtrack(k + 1)
            chosen.pop()

    yield from backtrack(0)


def are_isomorphic(g: FiniteGroup, h: FiniteGroup) -> Isomorphism | None:
    """First isomorphism found in canonical search order, or None.

    Prunes on the element-order profile up front and on partial subgroup
    sizes during the generator-image backtracking.
    """
    if g.order != h.order:
        return None
    if sorted(g.order_profile().items()) != sorted(h.order_profile().items()):
        return None
    gens = minimal_generating_sequence(g)
    if not gens:  # trivial group
        return Isomorphism(g, h, (h.identity,))
    for f in _iso_candidates(g, h, gens):
        return Isomorphism(g, h, f)
    return None


def automorphisms(g: FiniteGroup, limit: int | None = None
                  ) -> list[Isomorphism] | None:
    """All automorphisms of g; None when more than ``limit`` exist."""
    gens = minimal_generating_sequence(g)
    if not gens:
        return [Isomorphism(g, g, (g.identity,))]
    out = []
    for f in _iso_candidates(g, g, gens):
        out.append(Isomorphism(g, g, f))
        if limit is not None and len(out) > limit:
            return None
    return out


@dataclass(frozen=True)
class DicyclicWitness:
    """An abelian index-2 subgroup A plus x with x^2 = y inverting A."""

    subgroup: tuple[int, ...]
    y: int
    x: int


def _index2_subgroups(g: FiniteGroup) -> list[tuple[int, ...]]:
    """All index-2 subgroups, via the sign homomorphisms onto C2."""
    gens = minimal_generating_sequence(g)
    if not gens:
        return []
    c2 = cyclic(2)
    out = []
    for signs in iproduct(range(2), repeat=len(gens)):
        if not any(signs):
            continue
        f = extend_homomorphism(g, gens, list(signs), c2)
        if f is not None and any(f):
            out.append(tuple(i for i in range(g.order) if f[i] == 0))
    return out


def recognize_dicyclic(g: FiniteGroup) -> list[DicyclicWitness]:
    """Every (A, y, x) realizing g as a generalized dicyclic group.

    Exhausts the index-2 subgroups; for each abelian one, x ranges over the
    other coset and must satisfy x^2 = y an involution and x^-1 a x = a^-1.
    """
    out = []
    for sub in _index2_subgroups(g):
        inside = set(sub)
        abelian = all(g.table[a][b] == g.table[b][a]
                      for a in sub for b in sub if a < b)
        if not abelian:
            continue
        for x in range(g.order):
            if x in inside:
                continue
            y = g.table[x][x]
            if y == g.identity or g.table[y][y] != g.identity:
                continue
            xin = g.inverse[x]
            if all(g.table[g.table[xin][a]][x] == g.inverse[a] for a in sub):
                out.append(DicyclicWitness(sub, y, x))
    return out


def q8_c2n_isomorphism(g: FiniteGroup) -> Isomorphism | None:
    """Isomorphism g -> Q8 x C2^n (canonical build), or None."""
    m = g.order
    if m < 8 or m % 8 != 0:
        return None
    k = m // 8
    if k & (k - 1):
        return None  # not a power of two
    target = quaternion()
    while target.order < m:
        target = direct_product(target, cyclic(2), cap=m)
    return are_isomorphic(g, target)


def is_q8_times_c2n(g: FiniteGroup) -> bool:
    return q8_c2n_isomorphism(g) is not None
