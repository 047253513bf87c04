"""Pants graphs, admissible colorings, and Lagrangian/Maslov bookkeeping.

A graph is stored through its half-edges. Each vertex is an ordered triple of
half-edges (counterclockwise, which fixes the planar flip convention), and an
involution pairs half-edges into edges; its fixed points are the legs.
Components without vertices (closed circles, two-legged arcs, one-legged
discs) appear after capping and are kept as separate counters.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .fusion import admissible, check_color, colors


@dataclass(frozen=True)
class TrivalentGraph:
    level: int
    vertices: tuple[tuple[int, int, int], ...]
    iota: tuple[int, ...]
    leg_colors: tuple[tuple[int, int], ...] = ()
    circles: int = 0
    arcs: tuple[tuple[int, int], ...] = ()
    discs: tuple[int, ...] = ()
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        nh = len(self.iota)
        seen = sorted(h for v in self.vertices for h in v)
        if seen != list(range(nh)):
            raise ValueError("every half-edge must sit at exactly one vertex")
        for h, k in enumerate(self.iota):
            if not 0 <= k < nh or self.iota[k] != h:
                raise ValueError("iota is not an involution")
        legs = {h for h in range(nh) if self.iota[h] == h}
        given = dict(self.leg_colors)
        if set(given) != legs:
            raise ValueError(f"leg colors must be given exactly for legs {sorted(legs)}")
        for c in list(given.values()) + [c for a in self.arcs for c in a] + list(self.discs):
            check_color(c, self.level)

    # -- derived structure ---------------------------------------------------
    @property
    def attach(self) -> tuple[int, ...]:
        if "attach" not in self._cache:
            att = [0] * len(self.iota)
            for v, hs in enumerate(self.vertices):
                for h in hs:
                    att[h] = v
            self._cache["attach"] = tuple(att)
        return self._cache["attach"]

    @property
    def edges(self) -> tuple[tuple[int, int], ...]:
        """Internal edges as half-edge pairs (h, iota h) with h < iota h, sorted."""
        return tuple((h, k) for h, k in enumerate(self.iota) if h < k)

    @property
    def edge_names(self) -> tuple[str, ...]:
        return tuple(f"e{h}" for h, _ in self.edges) + tuple(f"o{i}" for i in range(self.circles))

    @property
    def legs(self) -> tuple[int, ...]:
        return tuple(h for h, k in enumerate(self.iota) if h == k)

    def leg_color(self, h: int) -> int:
        return dict(self.leg_colors)[h]

    def edge_of(self, name: str) -> tuple[int, int]:
        if not name.startswith("e"):
            raise KeyError(f"unknown edge {name!r}")
        h = int(name[1:])
        if h >= len(self.iota) or self.iota[h] <= h:
            raise KeyError(f"unknown edge {name!r}")
        return h, self.iota[h]

    def name_of(self, h: int) -> str:
        """Edge name of a non-leg half-edge."""
        return f"e{min(h, self.iota[h])}"

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    def to_json(self) -> dict:
        return {
            "vertices": len(self.vertices),
            "rotation": [list(v) for v in self.vertices],
            "half_edges": list(self.attach),
            "iota": list(self.iota),
            "legs": {str(h): c for h, c in self.leg_colors},
            "circles": self.circles,
            "arcs": [list(a) for a in self.arcs],
            "discs": list(self.discs),
            "level": self.level,
        }

    @classmethod
    def from_json(cls, data: dict) -> "TrivalentGraph":
        if "rotation" in data:
            verts = tuple(tuple(v) for v in data["rotation"])
        else:
            # rotation defaults to increasing half-edge order at each vertex
            groups: dict[int, list[int]] = {}
            for h, v in enumerate(data["half_edges"]):
                groups.setdefault(v, []).append(h)
            verts = tuple(tuple(groups[v]) for v in range(data["vertices"]))
        for v in verts:
            if len(v) != 3:
                raise ValueError(f"vertex {v} is not trivalent")
        return cls(
            level=data["level"],
            vertices=verts,
            iota=tuple(data["iota"]),
            leg_colors=tuple(sorted((int(h), c) for h, c in data["legs"].items())),
            circles=data.get("circles", 0),
            arcs=tuple(tuple(a) for a in data.get("arcs", [])),
            discs=tuple(data.get("discs", [])),
        )


def _build(level, vertices, pairs, leg_colors, circles=0, arcs=(), discs=()) -> TrivalentGraph:
    nh = sum(len(v) for v in vertices)
    iota = list(range(nh))
    for a, b in pairs:
        iota[a], iota[b] = b, a
    return TrivalentGraph(level, tuple(tuple(v) for v in vertices), tuple(iota),
                          tuple(sorted(leg_colors.items())), circles, tuple(arcs), tuple(discs))


def standard_graph(g: int, n: int, boundary: Sequence[int] = (), level: int = 5) -> TrivalentGraph:
    """Linear chain of pants for the surface of genus g with n boundary legs.

    Legs come first along the chain, in counterclockwise order, followed by g
    one-vertex loops. Legs are numbered by their position in `boundary`.
    """
    if g < 0 or n < 0:
        raise ValueError("genus and number of legs must be non-negative")
    boundary = list(boundary)
    if len(boundary) != n:
        raise ValueError(f"expected {n} boundary colors, got {len(boundary)}")
    for c in boundary:
        check_color(c, level)
    k = g + n
    if k == 0:
        return _build(level, [], [], {})
    if k == 1:
        if g == 1:
            return _build(level, [], [], {}, circles=1)
        return _build(level, [], [], {}, discs=[boundary[0]])
    if (g, n) == (0, 2):
        return _build(level, [], [], {}, arcs=[(boundary[0], boundary[1])])

    vertices: list[list[int]] = []
    pairs: list[tuple[int, int]] = []
    legs: dict[int, int] = {}
    counter = iter(range(10 ** 9))

    def new_loop() -> int:
        # one vertex carrying a loop edge; returns its free half-edge
        p, l1, l2 = next(counter), next(counter), next(counter)
        vertices.append([p, l1, l2])
        pairs.append((l1, l2))
        return p

    if k == 2:
        if g == 1:  # one-holed torus: the loop vertex's free half-edge is the leg
            p = new_loop()
            legs[p] = boundary[0]
        else:  # closed genus two: two loops joined by an edge
            p1, p2 = new_loop(), new_loop()
            pairs.append((p1, p2))
        return _build(level, vertices, pairs, legs)

    m = k - 2
    chain = [[next(counter), next(counter), next(counter)] for _ in range(m)]
    slots: list[int] = []
    # slot half-edges in counterclockwise leg order
    if m == 1:
        slots = chain[0][:]
    else:
        slots = [chain[0][1], chain[0][2]]
        for v in chain[1:-1]:
            slots.append(v[1])
        slots += [chain[-1][1], chain[-1][2]]
        for v, w in zip(chain, chain[1:]):
            right = v[0] if v is chain[0] else v[2]
            pairs.append((right, w[0]))
    vertices.extend(chain)
    for i, s in enumerate(slots):
        if i < n:
            legs[s] = boundary[i]
        else:
            pairs.append((s, new_loop()))
    return _build(level, vertices, pairs, legs)


# -- colorings ------------------------------------------------------------------

def _vertex_plan(G: TrivalentGraph):
    """Per edge position, the vertices that become fully colored at that step."""
    edge_index = {}
    for i, (h, k) in enumerate(G.edges):
        edge_index[h] = edge_index[k] = i
    due: dict[int, list[int]] = {}
    fixed_only = []
    for v, hs in enumerate(G.vertices):
        idx = [edge_index[h] for h in hs if h in edge_index]
        if idx:
            due.setdefault(max(idx), []).append(v)
        else:
            fixed_only.append(v)
    return edge_index, due, fixed_only


def enumerate_colorings(G: TrivalentGraph) -> list[dict[str, int]]:
    """Admissible colorings in lexicographic order of the edge-color tuple."""
    return [dict(zip(G.edge_names, t)) for t in coloring_tuples(G)]


def coloring_tuples(G: TrivalentGraph) -> list[tuple[int, ...]]:
    if "colorings" in G._cache:
        return G._cache["colorings"]
    level = G.level
    cols = colors(level)
    legc = dict(G.leg_colors)
    result: list[tuple[int, ...]] = []
    ok = all(a == b for a, b in G.arcs) and all(c == 0 for c in G.discs)
    edge_index, due, fixed_only = _vertex_plan(G)

    def color_of(h, assign):
        return legc[h] if h in legc else assign[edge_index[h]]

    if ok:
        for v in fixed_only:
            if not admissible(*(legc[h] for h in G.vertices[v]), level):
                ok = False
    if ok:
        ne = len(G.edges)
        assign = [0] * ne

        def rec(i):
            if i == ne:
                result.append(tuple(assign))
                return
            for c in cols:
                assign[i] = c
                if all(admissible(*(color_of(h, assign) for h in G.vertices[v]), level) for v in due.get(i, ())):
                    rec(i + 1)

        rec(0)
        if G.circles:
            extended = []
            for t in result:
                stack = [t]
                for _ in range(G.circles):
                    stack = [s + (c,) for s in stack for c in cols]
                extended.extend(stack)
            result = extended
    G._cache["colorings"] = result
    return result


def dim_block(g: int, n: int, boundary: Sequence[int], level: int) -> int:
    return len(coloring_tuples(standard_graph(g, n, boundary, level)))


def vertex_colors(G: TrivalentGraph, coloring: tuple[int, ...]) -> list[tuple[int, int, int]]:
    """Color triples at each vertex (in rotation order) for a coloring tuple."""
    legc = dict(G.leg_colors)
    idx = {}
    for i, (h, k) in enumerate(G.edges):
        idx[h] = idx[k] = i
    return [tuple(legc[h] if h in legc else coloring[idx[h]] for h in v) for v in G.vertices]


def _renumber(level, vertices, iota_map, legc, circles, arcs, discs) -> TrivalentGraph:
    old = sorted(h for v in vertices for h in v)
    new = {h: i for i, h in enumerate(old)}
    verts = [tuple(new[h] for h in v) for v in vertices]
    iota = [0] * len(old)
    for h in old:
        iota[new[h]] = new[iota_map[h]]
    legs = {new[h]: c for h, c in legc.items()}
    return TrivalentGraph(level, tuple(verts), tuple(iota), tuple(sorted(legs.items())),
                          circles, tuple(arcs), tuple(discs))


def cap_zero(G: TrivalentGraph, leg) -> TrivalentGraph:
    """Glue a disc onto a 0-colored leg.

    `leg` is a leg half-edge, or ("disc", i) for a one-legged component, or
    ("arc", i, side) for a two-legged component.
    """
    legc = dict(G.leg_colors)
    arcs, discs = list(G.arcs), list(G.discs)
    if isinstance(leg, tuple):
        kind = leg[0]
        if kind == "disc":
            if discs[leg[1]] != 0:
                raise ValueError("can only cap a leg colored 0")
            del discs[leg[1]]
            return TrivalentGraph(G.level, G.vertices, G.iota, G.leg_colors, G.circles, tuple(arcs), tuple(discs))
        if kind == "arc":
            a = arcs[leg[1]]
            if a[leg[2]] != 0:
                raise ValueError("can only cap a leg colored 0")
            del arcs[leg[1]]
            discs.append(a[1 - leg[2]])
            return TrivalentGraph(G.level, G.vertices, G.iota, G.leg_colors, G.circles, tuple(arcs), tuple(discs))
        raise ValueError(f"unknown leg reference {leg!r}")
    if legc.get(leg) is None:
        raise ValueError(f"{leg!r} is not a leg")
    if legc[leg] != 0:
        raise ValueError("can only cap a leg colored 0")
    v = G.attach[leg]
    hs = G.vertices[v]
    r = hs.index(leg)
    x, y = hs[(r + 1) % 3], hs[(r + 2) % 3]
    iota = dict(enumerate(G.iota))
    circles = G.circles
    del legc[leg]
    if iota[x] == y:
        circles += 1
        legc.pop(x, None)
    elif iota[x] == x and iota[y] == y:
        arcs.append((legc.pop(x), legc.pop(y)))
    elif iota[x] == x:
        legc[iota[y]] = legc.pop(x)
        iota[iota[y]] = iota[y]
    elif iota[y] == y:
        legc[iota[x]] = legc.pop(y)
        iota[iota[x]] = iota[x]
    else:
        xp, yp = iota[x], iota[y]
        iota[xp], iota[yp] = yp, xp
    verts = [w for i, w in enumerate(G.vertices) if i != v]
    return _renumber(G.level, verts, iota, legc, circles, arcs, discs)


def flip(G: TrivalentGraph, edge: str) -> TrivalentGraph:
    """Whitehead move on an internal edge, keeping the planar leg order.

    With the edge endpoints rotated to (h, a, b) and (k, c, d), the new
    vertices are (h, b, c) and (k, d, a).
    """
    h, k = G.edge_of(edge)
    u, v = G.attach[h], G.attach[k]
    if u == v:
        raise ValueError(f"edge {edge} is a loop and cannot be flipped")
    U, V = G.vertices[u], G.vertices[v]
    ru, rv = U.index(h), V.index(k)
    a, b = U[(ru + 1) % 3], U[(ru + 2) % 3]
    c, d = V[(rv + 1) % 3], V[(rv + 2) % 3]
    verts = list(G.vertices)
    verts[u] = (h, b, c)
    verts[v] = (k, d, a)
    return TrivalentGraph(G.level, tuple(verts), G.iota, G.leg_colors, G.circles, G.arcs, G.discs)


def flip_legs(G: TrivalentGraph, edge: str) -> tuple[int, int, int, int, int, int]:
    """(h, k, a, b, c, d): the rotated half-edges around an internal edge."""
    h, k = G.edge_of(edge)
    U, V = G.vertices[G.attach[h]], G.vertices[G.attach[k]]
    ru, rv = U.index(h), V.index(k)
    return h, k, U[(ru + 1) % 3], U[(ru + 2) % 3], V[(rv + 1) % 3], V[(rv + 2) % 3]


def half_twist(G: TrivalentGraph, x: int, y: int) -> TrivalentGraph:
    """Exchange two half-edges sharing a vertex (reverses its rotation)."""
    v = G.attach[x]
    if G.attach[y] != v or x == y:
        raise ValueError("half-twist needs two distinct half-edges at one vertex")
    verts = list(G.vertices)
    verts[v] = tuple(y if h == x else x if h == y else h for h in verts[v])
    return TrivalentGraph(G.level, tuple(verts), G.iota, G.leg_colors, G.circles, G.arcs, G.discs)


def edge_splits(G: TrivalentGraph) -> dict[str, frozenset[int]]:
    """For a tree, the legs cut off by each edge (the side avoiding the smallest leg)."""
    if G.circles or G.arcs or G.discs:
        raise ValueError("splits are defined for connected trees only")
    if len(G.edges) != len(G.vertices) - 1:
        raise ValueError("splits are defined for trees only")
    legs = set(G.legs)
    root = min(legs)
    out = {}
    for h, k in G.edges:
        # collect legs reachable from k without crossing the edge
        seen_v = {G.attach[h]}
        stack = [G.attach[k]]
        found = set()
        while stack:
            w = stack.pop()
            if w in seen_v:
                continue
            seen_v.add(w)
            for x in G.vertices[w]:
                if G.iota[x] == x:
                    found.add(x)
                else:
                    stack.append(G.attach[G.iota[x]])
        side = frozenset(found)
        if root in side:
            side = frozenset(legs - side)
        out[f"e{h}"] = side
    return out


def random_graph(rng: random.Random, level: int, max_vertices: int = 5) -> TrivalentGraph:
    """A random trivalent graph with at least one 0-colored leg.

    Colors are drawn so that at least one admissible coloring is likely; the
    graph may be disconnected.
    """
    nv = rng.randint(1, max_vertices)
    nh = 3 * nv
    hs = list(range(nh))
    rng.shuffle(hs)
    npairs = rng.randint(0, (nh - 1) // 2)
    pairs = [(hs[2 * i], hs[2 * i + 1]) for i in range(npairs)]
    free = hs[2 * npairs:]
    cols = colors(level)
    legs = {h: rng.choice(cols) for h in free}
    legs[free[0]] = 0
    vertices = [tuple(range(3 * v, 3 * v + 3)) for v in range(nv)]
    return _build(level, vertices, pairs, legs)


# -- Lagrangians and the Maslov index --------------------------------------------

Matrix = list[list[Fraction]]


def _mat(rows) -> Matrix:
    return [[Fraction(x) for x in r] for r in rows]


def _matmul(A: Matrix, B: Matrix) -> Matrix:
    return [[sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in zip(*B)] for row in A]


def symplectic_form(g: int) -> Matrix:
    """Standard intersection form on H1 with basis a_1..a_g, b_1..b_g and a_i . b_i = 1."""
    J = [[Fraction(0)] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        J[i][g + i] = Fraction(1)
        J[g + i][i] = Fraction(-1)
    return J


def _rank_q(rows: Matrix, ncols: int) -> int:
    from .cyclo import matrix_rank
    return matrix_rank(rows, ncols)


class Lagrangian:
    """Column span of a 2g x g rational matrix, isotropic for the standard form."""

    __slots__ = ("genus", "matrix")

    def __init__(self, matrix: Sequence[Sequence]):
        M = _mat(matrix)
        if not M or len(M) % 2:
            raise ValueError("a Lagrangian matrix needs an even, positive number of rows")
        g = len(M) // 2
        if any(len(r) != g for r in M):
            raise ValueError(f"a genus-{g} Lagrangian needs {g} columns")
        cols = [list(c) for c in zip(*M)]
        J = symplectic_form(g)
        for u in cols:
            Ju = [sum((J[i][j] * u[j] for j in range(2 * g)), Fraction(0)) for i in range(2 * g)]
            for w in cols:
                if sum((x * y for x, y in zip(w, Ju)), Fraction(0)):
                    raise ValueError("columns are not isotropic")
        if _rank_q(cols, 2 * g) != g:
            raise ValueError("columns are not independent")
        self.genus = g
        self.matrix = tuple(tuple(r) for r in M)

    def columns(self) -> list[list[Fraction]]:
        return [list(c) for c in zip(*self.matrix)]

    def transform(self, f: Sequence[Sequence]) -> "Lagrangian":
        return Lagrangian(_matmul(_mat(f), [list(r) for r in self.matrix]))

    def __repr__(self):
        return f"Lagrangian(genus={self.genus}, {[list(map(str, r)) for r in self.matrix]})"


def symmetric_signature(B: Matrix) -> int:
    """Signature of a rational symmetric matrix by symmetric Gaussian reduction."""
    A = [list(r) for r in B]
    n = len(A)
    sig = 0
    active = list(range(n))
    while active:
        piv = next((i for i in active if A[i][i]), None)
        if piv is None:
            pair = next(((i, j) for i in active for j in active if i != j and A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # replace x_i by x_i + x_j to create a nonzero diagonal entry
            for k in range(n):
                A[i][k] += A[j][k]
            for k in range(n):
                A[k][i] += A[k][j]
            piv = i
        d = A[piv][piv]
        sig += 1 if d > 0 else -1
        active.remove(piv)
        for i in active:
            f = A[i][piv] / d
            if f:
                for k in active:
                    A[i][k] -= f * A[piv][k]
        for i in active:
            A[i][piv] = A[piv][i] = Fraction(0)
    return sig


def maslov(L0: Lagrangian, L1: Lagrangian, L2: Lagrangian) -> int:
    """Signature of (u0, u1, u2) -> u0 . u1 on the kernel of L0 + L1 + L2 -> H1."""
    g = L0.genus
    if L1.genus != g or L2.genus != g:
        raise ValueError("Lagrangians live in different symplectic spaces")
    cols = L0.columns() + L1.columns() + L2.columns()
    rows = [[c[i] for c in cols] for i in range(2 * g)]
    from .cyclo import nullspace
    K = nullspace(rows, 3 * g, Fraction(0), Fraction(1))
    if not K:
        return 0
    J = symplectic_form(g)

    def image(v, part):
        cs = cols[part * g:(part + 1) * g]
        return [sum((v[part * g + t] * cs[t][i] for t in range(g)), Fraction(0)) for i in range(2 * g)]

    def omega(x, y):
        return sum((x[i] * J[i][j] * y[j] for i in range(2 * g) for j in range(2 * g) if J[i][j]), Fraction(0))

    x0 = [image(v, 0) for v in K]
    x1 = [image(v, 1) for v in K]
    B = [[(omega(x0[i], x1[j]) + omega(x0[j], x1[i])) / 2 for j in range(len(K))] for i in range(len(K))]
    return symmetric_signature(B)


@dataclass(frozen=True)
class FramedMapping:
    """A mapping class, recorded by its symplectic action on H1, with a framing integer."""

    matrix: tuple[tuple[Fraction, ...], ...]
    n: int = 0
    label: str = ""

    @classmethod
    def make(cls, matrix: Sequence[Sequence], n: int = 0, label: str = "") -> "FramedMapping":
        return cls(tuple(tuple(Fraction(x) for x in r) for r in matrix), n, label)

    @classmethod
    def identity(cls, g: int, n: int = 0) -> "FramedMapping":
        return cls.make([[int(i == j) for j in range(2 * g)] for i in range(2 * g)], n, "id")

    def inverse_matrix(self) -> Matrix:
        # symplectic inverse: J^-1 f^T J
        g = len(self.matrix) // 2
        J = symplectic_form(g)
        Jinv = [[-x for x in r] for r in J]
        fT = [list(c) for c in zip(*self.matrix)]
        return _matmul(_matmul(Jinv, fT), J)


def compose_framed(m1: FramedMapping, m2: FramedMapping,
                   L0: Lagrangian, L1: Lagrangian, L2: Lagrangian) -> FramedMapping:
    """(f1, n1) from (S0, L0) to (S1, L1), then (f2, n2) to (S2, L2)."""
    if len(m1.matrix) != 2 * L0.genus or len(m2.matrix) != 2 * L2.genus or L1.genus != L0.genus:
        raise ValueError("dimension mismatch between mappings and Lagrangians")
    mu = maslov(L0.transform(m1.matrix), L1, L2.transform(m2.inverse_matrix()))
    f = _matmul([list(r) for r in m2.matrix], [list(r) for r in m1.matrix])
    label = f"{m2.label}*{m1.label}" if (m1.label or m2.label) else ""
    return FramedMapping.make(f, m1.n + m2.n - mu, label)


def random_symplectic(rng: random.Random, g: int, steps: int = 4) -> Matrix:
    """A product of random integral transvections x -> x + c (v . x) v."""
    J = symplectic_form(g)
    M = [[Fraction(int(i == j)) for j in range(2 * g)] for i in range(2 * g)]
    for _ in range(steps):
        v = [Fraction(rng.randint(-2, 2)) for _ in range(2 * g)]
        c = rng.choice([-1, 1])
        vJ = [sum((v[i] * J[i][j] for i in range(2 * g)), Fraction(0)) for j in range(2 * g)]
        T = [[Fraction(int(i == j)) + c * v[i] * vJ[j] for j in range(2 * g)] for i in range(2 * g)]
        M = _matmul(T, M)
    return M


def standard_lagrangian(g: int) -> Lagrangian:
    return Lagrangian([[int(i == j) for j in range(g)] for i in range(g)] + [[0] * g for _ in range(g)])


def random_lagrangian(rng: random.Random, g: int) -> Lagrangian:
    return standard_lagrangian(g).transform(random_symplectic(rng, g))
