"""Mapping-class-group representations on conformal blocks.

Matrices act on coordinate vectors in the coloring basis of a pants graph
(lexicographic order). A change of pants graph with matrix P sends old
coordinates x to new coordinates P x, so a Dehn twist that is diagonal (D) in
the new graph acts by P^-1 D P in the old one. All group identities are
projective: checks look for "scalar times identity".
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Sequence, Union

import numpy as np

from . import fusion
from .cyclo import CMatrix, Cyclotomic, Embedding, check_level, conjugate, matrix_rank, nullspace
from .pants import (TrivalentGraph, coloring_tuples, edge_splits, flip, flip_legs, half_twist,
                    standard_graph, vertex_colors)

Move = Union[str, tuple]  # an edge name to flip, or ("twist", x, y)


@dataclass(frozen=True)
class CurveSpec:
    """A curve given by a path of graph moves followed by an edge of the resulting graph."""

    path: tuple[Move, ...] = ()
    edge: str = ""


@dataclass
class Rep:
    level: int
    generators: dict[str, CMatrix]
    graph: TrivalentGraph | None = None
    basis: list[tuple[int, ...]] = field(default_factory=list)
    projective: bool = True
    name: str = ""

    @property
    def dim(self) -> int:
        return next(iter(self.generators.values())).rows

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "level": self.level,
            "projective": self.projective,
            "basis": [list(b) for b in self.basis],
            "graph": self.graph.to_json() if self.graph is not None else None,
            "generators": {k: m.to_json() for k, m in self.generators.items()},
        }

    @classmethod
    def from_json(cls, data: dict) -> "Rep":
        gens = {}
        for k, m in data["generators"].items():
            try:
                gens[k] = CMatrix.from_json(m)
            except ValueError as exc:
                raise ValueError(f"generator {k}: {exc}") from exc
        level = data["level"]
        check_level(level)
        dims = {m.rows for m in gens.values()} | {m.cols for m in gens.values()}
        if len(dims) != 1:
            raise ValueError("generator matrices must be square and of equal size")
        if any(m.level != level for m in gens.values()):
            raise ValueError("generator level differs from the representation level")
        graph = TrivalentGraph.from_json(data["graph"]) if data.get("graph") else None
        return cls(level, gens, graph, [tuple(b) for b in data.get("basis", [])],
                   data.get("projective", True), data.get("name", ""))


class IndeterminateSignature(ValueError):
    """An embedded eigenvalue is too close to zero to assign it a sign."""


# -- elementary matrices ----------------------------------------------------------

def _basis_index(G: TrivalentGraph) -> dict[tuple[int, ...], int]:
    return {c: i for i, c in enumerate(coloring_tuples(G))}


def twist_matrix(G: TrivalentGraph, edge: str) -> CMatrix:
    """Dehn twist about the curve dual to an internal edge: diagonal in the coloring basis."""
    names = G.edge_names
    if edge not in names:
        raise KeyError(f"unknown edge {edge!r}")
    pos = names.index(edge)
    return CMatrix.diag([fusion.twist(c[pos], G.level) for c in coloring_tuples(G)], G.level)


def f_move_matrix(G: TrivalentGraph, edge: str) -> CMatrix:
    """Change of basis from G to flip(G, edge)."""
    level = G.level
    h, k, a, b, c, d = flip_legs(G, edge)
    if G.attach[h] == G.attach[k]:
        raise ValueError(f"edge {edge} is a loop and cannot be flipped")
    H = flip(G, edge)
    src, dst = coloring_tuples(G), coloring_tuples(H)
    pos = G.edge_names.index(edge)
    legc = dict(G.leg_colors)
    eidx = {}
    for i, (x, y) in enumerate(G.edges):
        eidx[x] = eidx[y] = i

    def col(hh, t):
        return legc[hh] if hh in legc else t[eidx[hh]]

    zero = Cyclotomic.zero(level)
    rows = []
    for new in dst:
        row = []
        for old in src:
            same = all(x == y for p, (x, y) in enumerate(zip(old, new)) if p != pos)
            if not same:
                row.append(zero)
                continue
            row.append(fusion.sixj(col(a, old), col(b, old), col(c, old), col(d, old), new[pos], old[pos], level))
        rows.append(row)
    return CMatrix(len(dst), len(src), [x for r in rows for x in r], level)


def half_twist_matrix(G: TrivalentGraph, x: int, y: int) -> CMatrix:
    """Exchange of the half-edges x, y at their common vertex (diagonal braiding eigenvalues)."""
    v = G.attach[x]
    hs = G.vertices[v]
    z = next(h for h in hs if h not in (x, y))
    out = []
    for t in coloring_tuples(G):
        tri = dict(zip(hs, vertex_colors(G, t)[v]))
        out.append(fusion.braid_eigenvalue(tri[x], tri[y], tri[z], G.level))
    return CMatrix.diag(out, G.level)


def apply_path(G: TrivalentGraph, path: Sequence[Move]) -> tuple[CMatrix, TrivalentGraph]:
    """Total change of basis along a path of moves, and the final graph."""
    P = CMatrix.identity(len(coloring_tuples(G)), G.level)
    cur = G
    for mv in path:
        if isinstance(mv, str):
            P = f_move_matrix(cur, mv) @ P
            cur = flip(cur, mv)
        elif isinstance(mv, tuple) and mv and mv[0] == "twist":
            _, x, y = mv
            P = half_twist_matrix(cur, x, y) @ P
            cur = half_twist(cur, x, y)
        else:
            raise ValueError(f"invalid move {mv!r}")
    return P, cur


def twist_along(G: TrivalentGraph, curve: CurveSpec) -> CMatrix:
    P, H = apply_path(G, curve.path)
    D = twist_matrix(H, curve.edge)
    if not curve.path:
        return D
    return P.inverse() @ D @ P


def find_curve(G: TrivalentGraph, legs: frozenset[int], max_moves: int = 2) -> CurveSpec:
    """Shortest flip path to a graph with an edge cutting off exactly `legs`."""
    all_legs = frozenset(G.legs)
    targets = {frozenset(legs), all_legs - frozenset(legs)}
    queue = deque([(G, ())])
    while queue:
        H, path = queue.popleft()
        for name, side in edge_splits(H).items():
            if side in targets:
                return CurveSpec(path, name)
        if len(path) < max_moves:
            for name in edge_splits(H):
                queue.append((flip(H, name), path + (name,)))
    raise ValueError(f"no curve around legs {sorted(legs)} within {max_moves} flips")


# -- registered cases --------------------------------------------------------------

def torus_rep(level: int, boundary: int = 0) -> Rep:
    if boundary not in (0, 2):
        raise ValueError("torus_rep supports boundary colors 0 and 2 only")
    G = standard_graph(1, 1, [boundary], level)
    loop = G.edge_names[0]
    T = twist_matrix(G, loop)
    S = fusion.s_matrix(level, boundary)
    return Rep(level, {"S": S, "T": T}, G, list(coloring_tuples(G)), True,
               "S1" if boundary == 0 else "S11")


def s04_curves(level: int) -> tuple[TrivalentGraph, dict[str, CurveSpec]]:
    """The four-holed sphere with all legs 2 and its three curves a, b, c.

    a cuts off legs (1,2), b cuts off (2,3), and c cuts off (1,3); c is reached
    by flipping to b, exchanging legs 2 and 3 there, and flipping again.
    """
    G = standard_graph(0, 4, [2, 2, 2, 2], level)
    e = G.edge_names[0]
    _, _, l2, l3, _, _ = flip_legs(flip(G, e), e)
    return G, {
        "a": CurveSpec((), e),
        "b": CurveSpec((e,), e),
        "c": CurveSpec((e, ("twist", l2, l3), e), e),
    }


def build_case(case: str, level: int) -> Rep:
    check_level(level)
    if case == "S04":
        G, curves = s04_curves(level)
        gens = {"Ta": twist_along(G, curves["a"]), "Tb": twist_along(G, curves["b"])}
        return Rep(level, gens, G, list(coloring_tuples(G)), True, case)
    if case == "S05":
        G = standard_graph(0, 5, [2] * 5, level)
        legs = list(G.legs)  # counterclockwise order
        gens = {}
        for i in range(5):
            pair = frozenset({legs[i], legs[(i + 1) % 5]})
            gens[f"T{i + 1}"] = twist_along(G, find_curve(G, pair))
        return Rep(level, gens, G, list(coloring_tuples(G)), True, case)
    if case == "S1":
        return torus_rep(level, 0)
    if case == "S11":
        return torus_rep(level, 2)
    raise ValueError(f"unsupported case {case!r}; expected S04, S05, S1 or S11")


# -- structure checks ---------------------------------------------------------------

def commutant_dim(rep: Rep) -> int:
    """Dimension of the space of matrices commuting with every generator."""
    d = rep.dim
    zero = Cyclotomic.zero(rep.level)
    rows = []
    for G in rep.generators.values():
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for k in range(d):
                    # (X G)_ij picks X_ik G_kj, (G X)_ij picks G_ik X_kj
                    g = G[k, j]
                    if g:
                        row[i * d + k] = row[i * d + k] + g
                    g = G[i, k]
                    if g:
                        row[k * d + j] = row[k * d + j] - g
                rows.append(row)
    return d * d - matrix_rank(rows, d * d)


@dataclass(frozen=True)
class HermForm:
    matrix: CMatrix

    def __post_init__(self):
        if self.matrix.conj_transpose() != self.matrix:
            raise ValueError("form is not hermitian")


def invariant_form(rep: Rep) -> HermForm:
    """The invariant hermitian form G* H G = c H, scaled so its first nonzero diagonal entry is 1.

    c = 1 for twists; projectively normalized generators may give another c.
    """
    d = rep.dim
    level = rep.level
    zero, one = Cyclotomic.zero(level), Cyclotomic.one(level)
    rows = []
    for G in _scalar_free(rep):
        Gs = G.conj_transpose()
        for i in range(d):
            for j in range(d):
                row = [zero] * (d * d)
                for p in range(d):
                    gp = Gs[i, p]
                    if not gp:
                        continue
                    for q in range(d):
                        gq = G[q, j]
                        if gq:
                            row[p * d + q] = row[p * d + q] + gp * gq
                row[i * d + j] = row[i * d + j] - one
                rows.append(row)
    sols = nullspace(rows, d * d, zero, one)
    if not sols:
        raise ValueError("no invariant sesquilinear form: the representation is not unitarizable")
    if len(sols) > 1:
        raise ValueError(f"invariant forms span {len(sols)} dimensions; expected an irreducible representation")
    H = CMatrix(d, d, sols[0], level)
    Hs = H.conj_transpose()
    lam = next(Hs.entries[t] / H.entries[t] for t in range(d * d) if H.entries[t])
    # H* = lam H; rescale by c with conj(c) lam = c
    if lam != -1:
        H = H.scale(lam + 1)
    else:
        H = H.scale(Cyclotomic.zeta(level) - Cyclotomic.zeta(level, -1))
    diag = next((H[i, i] for i in range(d) if H[i, i]), None)
    if diag is not None:
        H = H.scale(1 / diag)
    for name, G in rep.generators.items():
        if (G.conj_transpose() @ H @ G @ H.inverse()).scalar_value() is None:
            raise ValueError(f"generator {name} does not preserve the form up to a scalar")
    return HermForm(H)


def _det(M: CMatrix) -> Cyclotomic:
    rows = [list(r) for r in M.to_rows()]
    n = len(rows)
    det = Cyclotomic.one(M.level)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c]), None)
        if piv is None:
            return Cyclotomic.zero(M.level)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det = det * rows[c][c]
        for i in range(c + 1, n):
            f = rows[i][c] / rows[c][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    return det


def _scalar_free(rep: Rep) -> list[CMatrix]:
    """Generators whose determinant has norm 1, plus their conjugates by the others.

    A projectively normalized generator G (such as S) only preserves the form up
    to a positive scalar, which makes G* H G = H unsolvable; conjugates
    G U G^-1 of norm-one elements carry no such scalar.
    """
    unit, other = [], []
    for G in rep.generators.values():
        dt = _det(G)
        (unit if dt * conjugate(dt) == 1 else other).append(G)
    if other and not unit:
        raise ValueError("no generator of unit determinant norm to fix the projective scale")
    out = list(unit)
    for G in other:
        Gi = G.inverse()
        out += [G @ U @ Gi for U in unit]
    return out


def signature(H: HermForm | CMatrix, e: Embedding, rel_tol: float = 1e-6) -> tuple[int, int]:
    """(positive, negative) eigenvalue counts of the embedded form."""
    M = H.matrix if isinstance(H, HermForm) else H
    A = M.embed(e)
    A = (A + A.conj().T) / 2
    ev = np.linalg.eigvalsh(A)
    scale = max(float(np.max(np.abs(ev))), 1e-300)
    if np.any(np.abs(ev) <= rel_tol * scale):
        raise IndeterminateSignature(f"eigenvalue within {rel_tol} x norm of zero at {e}")
    return int(np.sum(ev > 0)), int(np.sum(ev < 0))


def relator_scalar(M: CMatrix) -> Cyclotomic | None:
    return M.scalar_value()


def generator_orders(rep: Rep) -> dict[str, Cyclotomic | None]:
    """Scalar s with G^l = s * id for each generator (None if not scalar)."""
    return {k: (G ** rep.level).scalar_value() for k, G in rep.generators.items()}


def coloring_norms(G: TrivalentGraph) -> list[Cyclotomic]:
    """Squared lengths of the network basis vectors of G."""
    names = G.edge_names
    out = []
    for t in coloring_tuples(G):
        tri = vertex_colors(G, t)
        internal = [t[i] for i, n in enumerate(names) if n.startswith("e")]
        out.append(fusion.basis_norm(tri, internal, G.level))
    return out


def unitarized(M: CMatrix, src_norms: Sequence[Cyclotomic], dst_norms: Sequence[Cyclotomic],
               e: Embedding) -> np.ndarray:
    """Embedded matrix in orthonormalized bases: diag(sqrt dst) M diag(1/sqrt src).

    Meaningful where the norms embed to positive reals (the unitary embedding).
    """
    A = M.embed(e)
    s = np.array([np.sqrt(complex(_emb(x, e))) for x in src_norms])
    t = np.array([np.sqrt(complex(_emb(x, e))) for x in dst_norms])
    return (t[:, None] * A) / s[None, :]


def _emb(x: Cyclotomic, e: Embedding) -> complex:
    from .cyclo import embed
    return embed(x, e)


def unitary_embeddings(level: int) -> list[Embedding]:
    """Embeddings at which every loop value is positive, so network bases can be orthonormalized."""
    out = []
    for k in range(1, level):
        e = Embedding(level, k)
        if all(_emb(fusion.loop_value(c, level), e).real > 0 for c in fusion.colors(level)):
            out.append(e)
    return out
