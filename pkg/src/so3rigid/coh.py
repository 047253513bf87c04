"""Twisted first cohomology of finitely presented groups.

Modules are given by explicit action matrices over an exact field (cyclotomic
numbers, Fractions, or integers mod p); vectors are column coordinate lists
and a group word acts by the product of its letters' matrices, left to right.
A cocycle obeys phi(uv) = phi(u) + u.phi(v), so phi on a relator is linear
in the generator values through the Fox derivatives of the relator.
"""
from __future__ import annotations

import hashlib
import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from . import fusion
from .cyclo import CMatrix, Cyclotomic, ModP, matrix_rank, nullspace, row_reduce, solve_system
from .pants import coloring_tuples, flip
from .rep import Rep, build_case, s04_curves

Letter = tuple[str, int]  # (generator, +1 or -1)
Mat = tuple[tuple, ...]


# -- small generic matrix helpers ---------------------------------------------------

def _identity(n: int, zero, one) -> Mat:
    return tuple(tuple(one if i == j else zero for j in range(n)) for i in range(n))


def _mm(A: Mat, B: Mat, zero) -> Mat:
    cols = list(zip(*B)) if B else []
    out = []
    for row in A:
        nz = [(k, x) for k, x in enumerate(row) if x]
        out.append(tuple(sum((x * col[k] for k, x in nz), zero) for col in cols))
    return tuple(out)


def _mv(A: Mat, v: Sequence, zero) -> list:
    return [sum((x * y for x, y in zip(row, v) if x and y), zero) for row in A]


def _inverse(A: Mat, zero, one) -> Mat:
    n = len(A)
    aug = [list(r) + list(e) for r, e in zip(A, _identity(n, zero, one))]
    red, piv = row_reduce(aug, 2 * n)
    if piv[:n] != list(range(n)) or len(red) < n:
        raise ValueError("action matrix is not invertible")
    return tuple(tuple(r[n:]) for r in red)


def _is_identity(A: Mat, one) -> bool:
    return all((x == one) if i == j else not x for i, r in enumerate(A) for j, x in enumerate(r))


def _scalar_of(A: Mat):
    s = A[0][0]
    if all((x == s) if i == j else not x for i, r in enumerate(A) for j, x in enumerate(r)):
        return s
    return None


# -- words ----------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\()|(\))(?:\^(-?\d+))?|([A-Za-z_]\w*)(?:\^(-?\d+))?)")


def parse_word(text: str) -> list[Letter]:
    """Parse 'a b^-1 (a b)^5' into letters; the empty string is the identity."""
    pos = 0
    stack: list[list[Letter]] = [[]]
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ValueError(f"cannot parse word {text!r} at position {pos}")
        pos = m.end()
        if m.group(1):
            stack.append([])
        elif m.group(2):
            if len(stack) == 1:
                raise ValueError(f"unbalanced ')' in {text!r}")
            inner = stack.pop()
            stack[-1].extend(_power(inner, int(m.group(3) or 1)))
        else:
            stack[-1].extend(_power([(m.group(4), 1)], int(m.group(5) or 1)))
    if len(stack) != 1:
        raise ValueError(f"unbalanced '(' in {text!r}")
    return stack[0]


def _power(word: list[Letter], n: int) -> list[Letter]:
    if n < 0:
        word = [(g, -e) for g, e in reversed(word)]
        n = -n
    return word * n


def invert_word(word: Sequence[Letter]) -> list[Letter]:
    return [(g, -e) for g, e in reversed(word)]


@dataclass(frozen=True)
class Presentation:
    generators: tuple[str, ...]
    relators: tuple[str, ...]
    provenance: str = ""
    complete: bool = False  # True if the relators present the group exactly

    def __post_init__(self):
        if len(set(self.generators)) != len(self.generators):
            raise ValueError("duplicate generator names")
        known = set(self.generators)
        for r in self.relators:
            for g, _ in parse_word(r):
                if g not in known:
                    raise ValueError(f"relator {r!r} uses undeclared generator {g!r}")

    def words(self) -> list[list[Letter]]:
        return [parse_word(r) for r in self.relators]

    def with_relator(self, r: str) -> "Presentation":
        return Presentation(self.generators, self.relators + (r,), self.provenance, False)

    def to_json(self) -> dict:
        return {"generators": list(self.generators), "relators": list(self.relators),
                "provenance": self.provenance, "complete": self.complete}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        try:
            return cls(tuple(data["generators"]), tuple(data["relators"]),
                       data.get("provenance", ""), bool(data.get("complete", False)))
        except KeyError as exc:
            raise ValueError(f"presentation is missing field {exc}") from exc

    def digest(self) -> str:
        blob = json.dumps(self.to_json(), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()


def triangle_presentation(p: int, q: int, r: int, names=("a", "b"), provenance="", complete=False) -> Presentation:
    x, y = names
    return Presentation((x, y), (f"{x}^{p}", f"{y}^{q}", f"({x} {y})^{r}"), provenance, complete)


# -- modules --------------------------------------------------------------------------

@dataclass
class Module:
    """A finite-dimensional module: one invertible action matrix per generator."""

    dim: int
    actions: dict[str, Mat]
    zero: object
    one: object
    name: str = ""
    trace_split: bool = False  # module is gl_d, so the trace part splits off
    _inv: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for g, A in self.actions.items():
            if len(A) != self.dim or any(len(r) != self.dim for r in A):
                raise ValueError(f"action of {g} is not {self.dim}x{self.dim}")

    def action(self, g: str, e: int = 1) -> Mat:
        if g not in self.actions:
            raise KeyError(f"unknown generator {g!r}")
        if e == 1:
            return self.actions[g]
        if g not in self._inv:
            self._inv[g] = _inverse(self.actions[g], self.zero, self.one)
        return self._inv[g]

    def word_action(self, word: Sequence[Letter]) -> Mat:
        out = _identity(self.dim, self.zero, self.one)
        for g, e in word:
            out = _mm(out, self.action(g, e), self.zero)
        return out


def _cmat(A: CMatrix) -> Mat:
    return tuple(tuple(r) for r in A.to_rows())


def rep_word(rep: Rep, word: Sequence[Letter]) -> CMatrix:
    """Matrix of a word in the representation's generators."""
    out = CMatrix.identity(rep.dim, rep.level)
    for g, e in word:
        if g not in rep.generators:
            raise KeyError(f"unknown generator {g!r}")
        M = rep.generators[g]
        out = out @ (M if e == 1 else M.inverse())
    return out


def hom_module(src: Mapping[str, CMatrix], dst: Mapping[str, CMatrix], level: int, name: str = "") -> Module:
    """Hom(V, W) with g acting by X -> dst(g) X src(g)^-1, on row-major vec(X)."""
    if set(src) != set(dst):
        raise ValueError("source and target must share their generators")
    actions = {}
    for g in src:
        A, B = dst[g], src[g].inverse()
        m, n = A.rows, B.rows
        # vec(A X B)[(i, j)] = sum_{k,l} A[i,k] X[k,l] B[l,j]
        actions[g] = tuple(tuple(A[i, k] * B[l, j] for k in range(m) for l in range(n))
                           for i in range(m) for j in range(n))
    zero, one = Cyclotomic.zero(level), Cyclotomic.one(level)
    return Module(len(next(iter(actions.values()))) if actions else 0, actions, zero, one, name)


def ad_module(rep: Rep, assign: Mapping[str, str] | None = None) -> Module:
    """The adjoint module gl(V) of a representation.

    `assign` maps module generator names to words in the representation's
    generators (default: the representation's own generators). Projective
    scalars cancel under conjugation, so the action is well defined.
    """
    if assign is None:
        gens = dict(rep.generators)
    else:
        gens = {k: rep_word(rep, parse_word(w)) for k, w in assign.items()}
    mod = hom_module(gens, gens, rep.level, f"ad {rep.name}".strip())
    mod.trace_split = True
    return mod


def invariants_dim(mod: Module, gens: Sequence[str] | None = None) -> int:
    gens = list(mod.actions) if gens is None else list(gens)
    rows = _stack_minus_identity(mod, gens)
    return len(nullspace(rows, mod.dim, mod.zero, mod.one)) if rows else mod.dim


def _stack_minus_identity(mod: Module, gens: Sequence[str]) -> list[list]:
    rows = []
    for g in gens:
        A = mod.action(g)
        for i, r in enumerate(A):
            rows.append([x - mod.one if i == j else x for j, x in enumerate(r)])
    return rows


# -- Fox calculus ---------------------------------------------------------------------

def fox_blocks(mod: Module, word: Sequence[Letter]) -> dict[str, Mat]:
    """Matrices D_g with phi(word) = sum_g D_g phi(g) for every cocycle phi."""
    zero = mod.zero
    d = mod.dim
    blocks: dict[str, list[list]] = {g: [[zero] * d for _ in range(d)] for g in mod.actions}
    prefix = _identity(d, zero, mod.one)
    for g, e in word:
        # phi(x) contributes prefix.phi(x); phi(x^-1) = -x^-1.phi(x)
        term = prefix if e == 1 else tuple(tuple(-x for x in r) for r in _mm(prefix, mod.action(g, -1), zero))
        acc = blocks[g]
        for i in range(d):
            row, t = acc[i], term[i]
            for j in range(d):
                if t[j]:
                    row[j] = row[j] + t[j]
        prefix = _mm(prefix, mod.action(g, e), zero)
    return {g: tuple(tuple(r) for r in b) for g, b in blocks.items()}


def cocycle_eval(phi: Mapping[str, Sequence], word: Sequence[Letter] | str, mod: Module) -> list:
    """Value on a word of the cocycle extending the generator values phi."""
    if isinstance(word, str):
        word = parse_word(word)
    for g, _ in word:
        if g not in phi:
            raise KeyError(f"unknown generator {g!r}")
    out = [mod.zero] * mod.dim
    for g, D in fox_blocks(mod, word).items():
        if g in phi:
            out = [x + y for x, y in zip(out, _mv(D, phi[g], mod.zero))]
    return out


def coboundary(mod: Module, m: Sequence) -> dict[str, list]:
    """The cocycle g -> g.m - m."""
    return {g: [x - y for x, y in zip(_mv(A, m, mod.zero), m)] for g, A in mod.actions.items()}


def check_relators(p: Presentation, mod: Module) -> None:
    for g in p.generators:
        if g not in mod.actions:
            raise ValueError(f"generator {g!r} has no action on the module")
    for r, w in zip(p.relators, p.words()):
        if not _is_identity(mod.word_action(w), mod.one):
            raise ValueError(f"relator {r!r} does not act as the identity on the module")


@dataclass(frozen=True)
class H1Report:
    module_dim: int
    invariants: int
    z1: int
    b1: int
    b1_from_invariants: int
    h1: int
    h1_trivial: int | None  # H^1 with trivial coefficients (abelianization rank)
    h1_sl: int | None
    presentation_hash: str
    complete: bool
    provenance: str
    relator_rank: int = 0

    @property
    def certified_zero(self) -> bool:
        return self.h1 == 0

    @property
    def note(self) -> str:
        if self.h1 == 0:
            return "H1 = 0 for every group this presentation surjects onto (certified)"
        if self.complete:
            return "presentation is complete: H1 is exact for the presented group"
        return "presentation may be incomplete: H1 is only an upper bound"

    def to_json(self) -> dict:
        return {
            "module_dim": self.module_dim,
            "invariants": self.invariants,
            "z1": self.z1,
            "b1": self.b1,
            "h1": self.h1,
            "h1_trivial": self.h1_trivial,
            "h1_sl": self.h1_sl,
            "certificate": {
                "presentation_hash": self.presentation_hash,
                "relator_rank": self.relator_rank,
                "b1_rank": self.b1,
                "b1_from_invariants": self.b1_from_invariants,
            },
            "complete": self.complete,
            "provenance": self.provenance,
            "note": self.note,
        }


def abelian_rank(p: Presentation) -> int:
    """Rank of the abelianization, i.e. dim H^1 with trivial rational coefficients."""
    idx = {g: i for i, g in enumerate(p.generators)}
    rows = []
    for w in p.words():
        row = [Fraction(0)] * len(idx)
        for g, e in w:
            row[idx[g]] += e
        rows.append(row)
    return len(idx) - matrix_rank(rows, len(idx))


def cocycle_system(p: Presentation, mod: Module) -> list[list]:
    """Rows of the linear map (phi(g))_g -> (phi(r))_r."""
    d = mod.dim
    rows = []
    for w in p.words():
        blocks = fox_blocks(mod, w)
        for i in range(d):
            row = []
            for g in p.generators:
                row.extend(blocks[g][i])
            rows.append(row)
    return rows


def h1_presented(p: Presentation, mod: Module) -> H1Report:
    check_relators(p, mod)
    d, n = mod.dim, len(p.generators)
    rows = cocycle_system(p, mod)
    rk = matrix_rank(rows, n * d) if rows else 0
    z1 = n * d - rk
    b1 = matrix_rank(_stack_minus_identity(mod, p.generators), d) if n else 0
    inv = invariants_dim(mod, p.generators)
    if b1 != d - inv:
        raise AssertionError(f"coboundary rank {b1} disagrees with dim - invariants = {d - inv}")
    h1 = z1 - b1
    triv = sl = None
    if mod.trace_split:
        triv = abelian_rank(p)
        sl = h1 - triv
    return H1Report(d, inv, z1, b1, d - inv, h1, triv, sl, p.digest(), p.complete, p.provenance, rk)


# -- registry -------------------------------------------------------------------------

def registered_presentation(case: str, level: int) -> tuple[Presentation, dict[str, str]]:
    """Shipped presentation for a case and the assignment of its generators."""
    if case == "S04":
        p = triangle_presentation(level, level, level, ("a", "b"),
                                  f"triangle group D({level},{level},{level}); surjects onto the image of "
                                  "the four-holed sphere twists Ta, Tb in PGL (lantern relation)")
        return p, {"a": "Ta", "b": "Tb"}
    if case in ("S1", "S11"):
        p = triangle_presentation(2, 3, level, ("x", "y"),
                                  f"triangle group D(2,3,{level}); surjects onto the projective image of "
                                  "the one-holed torus S, T")
        return p, {"x": "S", "y": "S^-1 T"}
    raise ValueError(f"no registered presentation for {case!r}; supply one from a file")


# -- Mayer-Vietoris ledger -------------------------------------------------------------

@dataclass(frozen=True)
class LedgerInput:
    mG: int
    m1: int
    m2: int
    m12: int
    factors_acyclic: bool = True  # caller asserts H^1 of both factor groups vanishes

    def __post_init__(self):
        if min(self.mG, self.m1, self.m2, self.m12) < 0:
            raise ValueError("invariant dimensions must be non-negative")
        if self.mG > min(self.m1, self.m2):
            raise ValueError("mG cannot exceed m1 or m2")
        if max(self.m1, self.m2) > self.m12:
            raise ValueError("m1 and m2 cannot exceed m12")

    def to_json(self) -> dict:
        return {"mG": self.mG, "m1": self.m1, "m2": self.m2, "m12": self.m12,
                "factors_acyclic": self.factors_acyclic}


def mv_ledger(li: LedgerInput) -> int:
    """dim H^1 of an amalgam whose factors have vanishing H^1."""
    if not li.factors_acyclic:
        raise ValueError("the ledger needs H^1 of both factor groups to vanish")
    out = li.m12 - li.m1 - li.m2 + li.mG
    if out < 0:
        raise ValueError(f"inconsistent ledger dimensions {li.to_json()} give {out}")
    return out


def ledger_dims_from_blocks(cut1: Mapping[int, int], cut2: Mapping[int, int],
                            double: Mapping[tuple[int, int], int]) -> LedgerInput:
    """Invariant counts from block dimensions.

    On an irreducible block decomposition the invariants of a cut stabilizer
    are one scalar per nonzero block, and those of the joint stabilizer are
    all endomorphisms of each doubly-cut block.
    """
    if sum(cut1.values()) == 0 or sum(cut2.values()) == 0:
        raise ValueError("zero total dimension")
    m1 = sum(1 for v in cut1.values() if v > 0)
    m2 = sum(1 for v in cut2.values() if v > 0)
    m12 = sum(v * v for v in double.values())
    return LedgerInput(1, m1, m2, m12)


def _count_by(tuples, key) -> dict:
    out: dict = {}
    for t in tuples:
        k = key(t)
        out[k] = out.get(k, 0) + 1
    return out


def case_blocks(case: str, level: int) -> tuple[dict, dict, dict]:
    """(cut1, cut2, double) block dimensions for the ledger cases.

    S04: curves a and b of the four-holed sphere. They intersect, so their joint
    stabilizer is finite; a pair (mu, nu) contributes a line when the a-basis
    vector mu and the b-basis vector nu overlap (nonzero recoupling entry).
    S12: the separating curve around both legs of the two-holed torus and the
    non-separating curve of its handle; these are disjoint, so the doubly-cut
    blocks are the colorings with both colors fixed.
    """
    from .rep import f_move_matrix
    if case == "S04":
        G, _ = s04_curves(level)
        e = G.edge_names[0]
        src, dst = coloring_tuples(G), coloring_tuples(flip(G, e))
        F = f_move_matrix(G, e)
        cut1 = _count_by(src, lambda t: t[0])
        cut2 = _count_by(dst, lambda t: t[0])
        double = {(s[0], t[0]): 1 for j, s in enumerate(src) for i, t in enumerate(dst) if F[i, j]}
        return cut1, cut2, double
    if case == "S12":
        from .pants import standard_graph
        G = standard_graph(1, 2, [2, 2], level)
        sep, loop = G.edge_names  # edge to the handle, then the handle's loop
        tuples = coloring_tuples(G)
        cut1 = _count_by(tuples, lambda t: t[0])
        cut2 = _count_by(tuples, lambda t: t[1])
        double = _count_by(tuples, lambda t: (t[0], t[1]))
        return cut1, cut2, double
    raise ValueError(f"no block data for case {case!r}; expected S04 or S12")


# -- auxiliary criteria ---------------------------------------------------------------

def _has_finite_order(s) -> bool:
    if isinstance(s, Cyclotomic):
        return s ** (2 * s.level) == 1
    if isinstance(s, ModP):
        return True
    return s in (1, -1)


def center_kills(mod: Module, z: Sequence[Letter] | str) -> bool:
    """True if z acts by a nontrivial scalar of finite order, which forces H^1 = 0."""
    if isinstance(z, str):
        z = parse_word(z)
    s = _scalar_of(mod.word_action(z))
    if s is None:
        raise ValueError("the element does not act by a scalar")
    return s != mod.one and _has_finite_order(s)


def split_scalars(support: Sequence[tuple[int, int]], c: Mapping[tuple[int, int], object],
                  zero=Fraction(0), one=Fraction(1)):
    """Find a, b with c[m1, m2] = a[m1] + b[m2] on the support, or None.

    a is pinned to 0 at the least first index; other undetermined values are 0.
    """
    support = sorted(set(support))
    if not support:
        return {}, {}
    firsts = sorted({m for m, _ in support})
    seconds = sorted({n for _, n in support})
    ia = {m: i for i, m in enumerate(firsts)}
    ib = {n: len(firsts) + i for i, n in enumerate(seconds)}
    ncols = len(firsts) + len(seconds)
    rows, rhs = [], []
    pin = [zero] * ncols
    pin[0] = one
    rows.append(pin)
    rhs.append(zero)
    for m, n in support:
        row = [zero] * ncols
        row[ia[m]] = one
        row[ib[n]] = one
        rows.append(row)
        rhs.append(c[(m, n)])
    x = solve_system(rows, rhs, ncols, zero)
    if x is None:
        return None
    return {m: x[ia[m]] for m in firsts}, {n: x[ib[n]] for n in seconds}


Block = tuple[int, int, int]  # (mu1, mu2, block dimension), in basis order


def block_scalar_matrix(blocks: Sequence[Block], c: Mapping[tuple[int, int], Cyclotomic], level: int) -> CMatrix:
    vals = []
    for m, n, size in blocks:
        vals += [c[(m, n)]] * size
    return CMatrix.diag(vals, level)


def block_scalars(u: CMatrix, blocks: Sequence[Block]) -> dict[tuple[int, int], Cyclotomic]:
    """The scalar of u on each block; error unless u is block-scalar."""
    if u.rows != u.cols or u.rows != sum(b[2] for b in blocks):
        raise ValueError("block sizes do not match the matrix")
    out = {}
    pos = 0
    owner = []
    for m, n, size in blocks:
        owner += [(m, n)] * size
    for i in range(u.rows):
        for j in range(u.cols):
            if i != j and u[i, j]:
                raise ValueError("matrix is not block-scalar")
    for m, n, size in blocks:
        vals = {u[pos + t, pos + t] for t in range(size)}
        if len(vals) != 1:
            raise ValueError(f"block {(m, n)} is not scalar")
        out[(m, n)] = vals.pop()
        pos += size
    return out


def commutator_criterion(u: CMatrix, blocks: Sequence[Block]) -> bool:
    """Rectangle identity c[n1,n2] - c[l1,n2] - c[n1,l2] + c[l1,l2] = 0 wherever all four blocks exist."""
    c = block_scalars(u, blocks)
    keys = list(c)
    for n1, n2 in keys:
        for l1, l2 in keys:
            corners = [(l1, n2), (n1, l2)]
            if all(k in c for k in corners):
                if c[(n1, n2)] - c[(l1, n2)] - c[(n1, l2)] + c[(l1, l2)]:
                    return False
    return True


def s04_witness(level: int = 5) -> tuple[list, list]:
    """A vector m and the nonzero value on (ab)^l of the cocycle a -> Ta.m - m, b -> 0.

    That cocycle vanishes on a^l and b^l, so it lives on the free product of two
    cyclic groups; its value on (ab)^l is what the last relator must kill.
    """
    rep = build_case("S04", level)
    mod = ad_module(rep, {"a": "Ta", "b": "Tb"})
    word = parse_word(f"(a b)^{level}")
    for k in range(mod.dim):
        m = [mod.one if i == k else mod.zero for i in range(mod.dim)]
        phi = {"a": coboundary(mod, m)["a"], "b": [mod.zero] * mod.dim}
        val = cocycle_eval(phi, word, mod)
        if any(val):
            return m, val
    raise ValueError("no basis vector gives a nonzero value")


def twist_character_module(lam: int, mu: int, level: int) -> Module:
    """Hom(C_lam, C_mu) for the boundary twist acting on the lam and mu blocks by their twists."""
    src = {"z": CMatrix.diag([fusion.twist(lam, level)], level)}
    dst = {"z": CMatrix.diag([fusion.twist(mu, level)], level)}
    return hom_module(src, dst, level, f"Hom({lam},{mu})")


def rep_module(rep: Rep, extra: Mapping[str, CMatrix] | None = None) -> Module:
    """The representation itself as a module (projective scalars do not cancel here)."""
    gens = dict(rep.generators)
    gens.update(extra or {})
    actions = {g: _cmat(M) for g, M in gens.items()}
    return Module(rep.dim, actions, Cyclotomic.zero(rep.level), Cyclotomic.one(rep.level), rep.name)
