"""Fusion data of the SO(3) theory at odd level l.

Recoupling follows Temperley-Lieb conventions with the skein variable A = zeta,
so every symbol lives in Q(zeta_l) (in fact in its real subfield, apart from
braiding eigenvalues and twists). Basis vectors of a block are the
Kauffman-Lins trivalent networks, which are orthogonal but not normalized;
`basis_norm` gives their squared lengths.
"""
from __future__ import annotations

import math
from functools import lru_cache

from .cyclo import CMatrix, Cyclotomic, check_level, galois


def is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, math.isqrt(n) + 1))


def colors(level: int) -> list[int]:
    check_level(level)
    return list(range(0, level - 2, 2))


def admissible(a: int, b: int, c: int, level: int) -> bool:
    return abs(a - b) <= c <= a + b and a + b + c < 2 * level - 2 and (a + b + c) % 2 == 0


def check_color(c: int, level: int) -> None:
    if c not in colors(level):
        raise ValueError(f"{c} is not a color at level {level}")


def twist(lam: int, level: int) -> Cyclotomic:
    """Dehn-twist eigenvalue zeta^(lam(lam+2))."""
    check_color(lam, level)
    return Cyclotomic.zeta(level, lam * (lam + 2))


def twist_exponent(lam: int, level: int) -> int:
    return (lam * (lam + 2)) % level


def check_properties(level: int) -> dict:
    cols = colors(level)
    witnesses = {}
    for lam in cols:
        mu = next((m for m in cols if admissible(lam, m, m, level)), None)
        witnesses[lam] = mu
    prop_i = all(m is not None for m in witnesses.values())
    # blocks of the three-holed sphere are spanned by a single vertex
    prop_ii = True
    exps = [twist_exponent(lam, level) for lam in cols]
    prop_iii = len(set(exps)) == len(exps)
    return {
        "level": level,
        "prime": is_prime(level),
        "colors": cols,
        "I": prop_i,
        "I_witnesses": {str(k): v for k, v in witnesses.items()},
        "II": prop_ii,
        "III": prop_iii,
        "twist_exponents": {str(lam): e for lam, e in zip(cols, exps)},
    }


@lru_cache(maxsize=None)
def quantum_int(n: int, level: int) -> Cyclotomic:
    """[n] = (zeta^n - zeta^-n) / (zeta - zeta^-1).

    [l - n] = -[n] in this normalization, and [l] = 0.
    """
    z = Cyclotomic.zeta
    return (z(level, n) - z(level, -n)) / (z(level, 1) - z(level, -1))


@lru_cache(maxsize=None)
def _qint(n: int, level: int) -> Cyclotomic:
    # quantum integer in the recoupling variable q = A^2 = zeta^2
    return galois(quantum_int(n, level), 2)


@lru_cache(maxsize=None)
def _qfact(n: int, level: int) -> Cyclotomic:
    out = Cyclotomic.one(level)
    for k in range(2, n + 1):
        out = out * _qint(k, level)
    return out


@lru_cache(maxsize=None)
def loop_value(n: int, level: int) -> Cyclotomic:
    """Evaluation of the unknot colored n (the unnormalized quantum dimension)."""
    return _qint(n + 1, level) * (-1) ** n


@lru_cache(maxsize=None)
def theta(a: int, b: int, c: int, level: int) -> Cyclotomic:
    if not admissible(a, b, c, level):
        return Cyclotomic.zero(level)
    m, n, p = (a + b - c) // 2, (b + c - a) // 2, (a + c - b) // 2
    f = lambda k: _qfact(k, level)  # noqa: E731
    num = f(m + n + p + 1) * f(m) * f(n) * f(p)
    den = f(m + n) * f(n + p) * f(m + p)
    return num / den * (-1) ** (m + n + p)


@lru_cache(maxsize=None)
def tet(a: int, b: int, e: int, c: int, d: int, f: int, level: int) -> Cyclotomic:
    """Tetrahedral network with vertex triples (a,d,e), (b,c,e), (a,b,f), (c,d,f)."""
    triples = [(a, d, e), (b, c, e), (a, b, f), (c, d, f)]
    if not all(admissible(*t, level) for t in triples):
        return Cyclotomic.zero(level)
    fa = lambda k: _qfact(k, level)  # noqa: E731
    lows = [sum(t) // 2 for t in triples]
    highs = [(b + d + e + f) // 2, (a + c + e + f) // 2, (a + b + c + d) // 2]
    inner = Cyclotomic.one(level)
    for hi in highs:
        for lo in lows:
            inner = inner * fa(hi - lo)
    ext = fa(a) * fa(b) * fa(c) * fa(d) * fa(e) * fa(f)
    total = Cyclotomic.zero(level)
    for s in range(max(lows), min(highs) + 1):
        num = fa(s + 1) * (-1) ** s
        den = Cyclotomic.one(level)
        for lo in lows:
            den = den * fa(s - lo)
        for hi in highs:
            den = den * fa(hi - s)
        total = total + num / den
    return total * inner / ext


@lru_cache(maxsize=None)
def sixj(a: int, b: int, c: int, d: int, i: int, j: int, level: int) -> Cyclotomic:
    """Recoupling coefficient for four legs a, b, c, d.

    Rewrites the network whose internal edge j meets (a, b) and (c, d) as a sum
    over networks whose internal edge i meets (b, c) and (d, a); this is the
    coefficient of the i-term. Inadmissible labels give exact zero.
    """
    if not (admissible(a, b, j, level) and admissible(c, d, j, level)
            and admissible(a, d, i, level) and admissible(b, c, i, level)):
        return Cyclotomic.zero(level)
    return tet(a, b, i, c, d, j, level) * loop_value(i, level) / (theta(a, d, i, level) * theta(b, c, i, level))


def braid_eigenvalue(a: int, b: int, c: int, level: int) -> Cyclotomic:
    """Half-twist of legs a, b at a vertex whose third edge is c."""
    if not admissible(a, b, c, level):
        return Cyclotomic.zero(level)
    expo = (c * (c + 2) - a * (a + 2) - b * (b + 2)) // 2
    return Cyclotomic.zeta(level, expo) * (-1) ** ((a + b - c) // 2)


def basis_norm(triples: list[tuple[int, int, int]], edge_colors: list[int], level: int) -> Cyclotomic:
    """Squared length of a network basis vector: product of thetas over vertices
    divided by loop values over internal edges."""
    out = Cyclotomic.one(level)
    for t in triples:
        out = out * theta(*t, level)
    for c in edge_colors:
        out = out / loop_value(c, level)
    return out


def torus_colors(level: int, boundary: int) -> list[int]:
    return [mu for mu in colors(level) if admissible(mu, mu, boundary, level)]


def s_matrix(level: int, boundary: int = 0) -> CMatrix:
    """Modular S-matrix of the one-holed torus with the given boundary color.

    Rows and columns are indexed by loop colors mu with (mu, mu, boundary)
    admissible. Entry (mu, nu) is the evaluation of the two linked loops mu, nu
    joined by a boundary-colored chord, weighted by the inverse squared length
    of the nu basis vector. The scale is projective: S squared is a scalar
    matrix. For boundary 0 the weights are 1 and S is symmetric.
    """
    if boundary not in (0, 2):
        raise ValueError("s_matrix supports boundary colors 0 and 2 only")
    check_color(boundary, level)
    basis = torus_colors(level, boundary)
    rows = []
    for mu in basis:
        row = []
        for nu in basis:
            h = Cyclotomic.zero(level)
            for k in colors(level):
                if admissible(mu, nu, k, level):
                    r = braid_eigenvalue(mu, nu, k, level)
                    h = h + loop_value(k, level) / theta(mu, nu, k, level) * r * r * tet(mu, nu, boundary, nu, mu, k, level)
            row.append(h * loop_value(nu, level) / theta(nu, nu, boundary, level))
        rows.append(row)
    return CMatrix.from_rows(rows, level)
