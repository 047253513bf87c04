"""Exact arithmetic in the cyclotomic field Q(zeta_l) and matrices over it.

Elements are stored as rational coefficient vectors in the power basis
zeta^0, ..., zeta^(phi(l)-1), reduced modulo the l-th cyclotomic polynomial,
so two elements are equal exactly when their coefficient tuples are equal.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np


def _poly_divexact(num: list[int], den: list[int]) -> list[int]:
    # exact division of integer polynomials (low degree first), den monic
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        q = num[i + len(den) - 1]
        out[i] = q
        if q:
            for j, d in enumerate(den):
                num[i + j] -= q * d
    assert not any(num), "inexact polynomial division"
    return out


@lru_cache(maxsize=None)
def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of the n-th cyclotomic polynomial, low degree first."""
    poly = [-1] + [0] * (n - 1) + [1]
    for d in range(1, n):
        if n % d == 0:
            poly = _poly_divexact(poly, list(cyclotomic_polynomial(d)))
    return tuple(poly)


def totient(n: int) -> int:
    return sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


@lru_cache(maxsize=None)
def _power_table(level: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Sparse reduced coordinates of zeta^k for 0 <= k < level."""
    phi = cyclotomic_polynomial(level)
    deg = len(phi) - 1
    rows = []
    vec = [1] + [0] * (deg - 1)
    for _ in range(level):
        rows.append(tuple((i, c) for i, c in enumerate(vec) if c))
        # multiply by zeta: shift, then fold the top coefficient back
        top = vec[-1]
        vec = [0] + vec[:-1]
        if top:
            for i in range(deg):
                vec[i] -= top * phi[i]
    return tuple(rows)


def check_level(level: int) -> None:
    if not isinstance(level, int) or level < 5 or level % 2 == 0:
        raise ValueError(f"level must be an odd integer >= 5, got {level!r}")


def _as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot use {type(x).__name__} as a rational coefficient")


class Cyclotomic:
    """An element of Q(zeta_l)."""

    __slots__ = ("level", "coeffs", "_hash")

    def __init__(self, level: int, coeffs: Iterable = ()):
        check_level(level)
        deg = _degree(level)
        cs = [_as_fraction(c) for c in coeffs]
        if len(cs) > deg:
            raise ValueError(f"expected at most {deg} coefficients at level {level}, got {len(cs)}")
        cs += [Fraction(0)] * (deg - len(cs))
        self.level = level
        self.coeffs = tuple(cs)
        self._hash = None

    @classmethod
    def _raw(cls, level: int, coeffs: tuple[Fraction, ...]) -> "Cyclotomic":
        obj = object.__new__(cls)
        obj.level = level
        obj.coeffs = coeffs
        obj._hash = None
        return obj

    @classmethod
    def zero(cls, level: int) -> "Cyclotomic":
        return cls(level)

    @classmethod
    def one(cls, level: int) -> "Cyclotomic":
        return cls(level, [1])

    @classmethod
    def rational(cls, level: int, value) -> "Cyclotomic":
        return cls(level, [_as_fraction(value)])

    @classmethod
    def zeta(cls, level: int, k: int = 1) -> "Cyclotomic":
        """zeta^k, any integer k."""
        check_level(level)
        deg = _degree(level)
        cs = [Fraction(0)] * deg
        for i, c in _power_table(level)[k % level]:
            cs[i] = Fraction(c)
        return cls._raw(level, tuple(cs))

    # -- coercion helpers --------------------------------------------------
    def _coerce(self, other) -> "Cyclotomic":
        if isinstance(other, Cyclotomic):
            if other.level != self.level:
                raise ValueError(f"level mismatch: {self.level} vs {other.level}")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.rational(self.level, other)
        return NotImplemented

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    # -- ring operations ---------------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.level, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic._raw(self.level, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Cyclotomic._raw(self.level, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Cyclotomic._raw(self.level, tuple(a * other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        level = self.level
        deg = len(self.coeffs)
        table = _power_table(level)
        acc = [Fraction(0)] * deg
        prod: dict[int, Fraction] = {}
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j, b in enumerate(other.coeffs):
                if b:
                    k = i + j
                    prod[k] = prod.get(k, 0) + a * b
        for k, c in prod.items():
            if not c:
                continue
            if k < deg:
                acc[k] += c
            else:
                for i, t in table[k % level]:
                    acc[i] += c * t
        return Cyclotomic._raw(level, tuple(acc))

    __rmul__ = __mul__

    def inverse(self) -> "Cyclotomic":
        return cyc_inv(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic by zero")
            return Cyclotomic._raw(self.level, tuple(a / other for a in self.coeffs))
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self * cyc_inv(other)

    def __rtruediv__(self, other):
        return cyc_inv(self) * other

    def __pow__(self, n: int):
        if n < 0:
            return cyc_inv(self) ** (-n)
        result = Cyclotomic.one(self.level)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- comparisons -------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.coeffs[0] == other and not any(self.coeffs[1:])
        if isinstance(other, Cyclotomic):
            return self.level == other.level and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.level, self.coeffs))
        return self._hash

    def __bool__(self):
        return any(self.coeffs)

    def __repr__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if not c:
                continue
            mono = "" if i == 0 else ("z" if i == 1 else f"z^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        body = " + ".join(terms).replace("+ -", "- ") if terms else "0"
        return f"Cyclotomic[{self.level}]({body})"

    # -- serialization -----------------------------------------------------
    def to_json(self) -> dict:
        return {"level": self.level, "coeffs": [_frac_str(c) for c in self.coeffs]}

    @classmethod
    def from_json(cls, data: dict) -> "Cyclotomic":
        level = data["level"]
        coeffs = data["coeffs"]
        check_level(level)
        if len(coeffs) != _degree(level):
            raise ValueError(f"expected {_degree(level)} coefficients at level {level}, got {len(coeffs)}")
        return cls(level, [Fraction(c) for c in coeffs])


_DEGREE: dict[int, int] = {}


def _degree(level: int) -> int:
    if level not in _DEGREE:
        _DEGREE[level] = len(cyclotomic_polynomial(level)) - 1
    return _DEGREE[level]


def _frac_str(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def cyc_add(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a + b


def cyc_mul(a: Cyclotomic, b: Cyclotomic) -> Cyclotomic:
    return a * b


def galois(a: Cyclotomic, k: int) -> Cyclotomic:
    """Apply the automorphism zeta -> zeta^k."""
    level = a.level
    if math.gcd(k, level) != 1:
        raise ValueError(f"galois exponent {k} is not coprime to level {level}")
    table = _power_table(level)
    acc = [Fraction(0)] * len(a.coeffs)
    for i, c in enumerate(a.coeffs):
        if c:
            for j, t in table[(i * k) % level]:
                acc[j] += c * t
    return Cyclotomic._raw(level, tuple(acc))


def conjugate(a: Cyclotomic) -> Cyclotomic:
    return galois(a, a.level - 1)


def cyc_inv(a: Cyclotomic) -> Cyclotomic:
    if not a:
        raise ZeroDivisionError("inverse of zero in the cyclotomic field")
    level = a.level
    if a.is_rational():
        return Cyclotomic._raw(level, (1 / a.coeffs[0],) + a.coeffs[1:])
    # the product of all nontrivial conjugates, divided by the (rational) norm
    others = Cyclotomic.one(level)
    for k in range(2, level):
        if math.gcd(k, level) == 1:
            others = others * galois(a, k)
    norm = a * others
    assert norm.is_rational()
    return others / norm.coeffs[0]


# -- embeddings ---------------------------------------------------------------

class Embedding:
    """The complex embedding zeta -> exp(2 pi i k / level)."""

    __slots__ = ("level", "k")

    def __init__(self, level: int, k: int):
        check_level(level)
        if not 1 <= k <= level - 1 or math.gcd(k, level) != 1:
            raise ValueError(f"embedding exponent {k} invalid at level {level}")
        self.level = level
        self.k = k

    def __repr__(self):
        return f"Embedding(level={self.level}, k={self.k})"

    def __eq__(self, other):
        return isinstance(other, Embedding) and (self.level, self.k) == (other.level, other.k)

    def __hash__(self):
        return hash((self.level, self.k))

    @property
    def root(self) -> complex:
        return cmath.exp(2j * math.pi * self.k / self.level)


def distinguished_embeddings(level: int) -> tuple[Embedding, Embedding]:
    """Exponents k with exp(2 pi i k / l) = exp(+-i pi (l-1)/l)."""
    check_level(level)
    return Embedding(level, (level - 1) // 2), Embedding(level, (level + 1) // 2)


def embed(a: Cyclotomic, e: Embedding) -> complex:
    if a.level != e.level:
        raise ValueError(f"level mismatch: {a.level} vs {e.level}")
    z = e.root
    total = 0j
    power = 1 + 0j
    for c in a.coeffs:
        if c:
            total += float(c) * power
        power *= z
    return total


# -- generic exact linear algebra -------------------------------------------
#
# These work on lists of rows whose entries support + - * / and truthiness
# (Fraction, Cyclotomic, or any small field class with the same protocol).

def row_reduce(rows: Sequence[Sequence], ncols: int) -> tuple[list[list], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    mat = [list(r) for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(mat)
    for c in range(ncols):
        piv = next((i for i in range(r, nrows) if mat[i][c]), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = 1 / mat[r][c]
        prow = [x * inv if x else x for x in mat[r]]
        mat[r] = prow
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f:
                    row = mat[i]
                    mat[i] = [x - f * y if y else x for x, y in zip(row, prow)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return mat[:r], pivots


def matrix_rank(rows: Sequence[Sequence], ncols: int) -> int:
    """Exact rank, eliminating one row at a time against an echelon basis."""
    basis: dict[int, list] = {}  # pivot column -> row with leading 1
    for row in rows:
        v = list(row)
        for c in sorted(basis):
            f = v[c]
            if f:
                b = basis[c]
                v = [x - f * y if y else x for x, y in zip(v, b)]
        lead = next((c for c in range(ncols) if v[c]), None)
        if lead is None:
            continue
        inv = 1 / v[lead]
        v = [x * inv if x else x for x in v]
        for c, b in basis.items():
            f = b[lead]
            if f:
                basis[c] = [x - f * y if y else x for x, y in zip(b, v)]
        basis[lead] = v
    return len(basis)


def nullspace(rows: Sequence[Sequence], ncols: int, zero, one) -> list[list]:
    """A basis of {x : rows . x = 0}, one vector per free column."""
    red, pivots = row_reduce(rows, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [zero] * ncols
        v[f] = one
        for r, p in zip(red, pivots):
            if r[f]:
                v[p] = -r[f]
        basis.append(v)
    return basis


def solve_system(rows: Sequence[Sequence], rhs: Sequence, ncols: int, zero):
    """One solution of rows . x = rhs (free variables set to zero), or None."""
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = row_reduce(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [zero] * ncols
    for r, p in zip(red, pivots):
        x[p] = r[ncols]
    return x


# -- matrices -----------------------------------------------------------------

class CMatrix:
    """Dense immutable matrix over Q(zeta_l), row-major."""

    __slots__ = ("rows", "cols", "entries", "level")

    def __init__(self, rows: int, cols: int, entries: Iterable[Cyclotomic], level: int | None = None):
        ents = tuple(entries)
        if rows < 0 or cols < 0 or len(ents) != rows * cols:
            raise ValueError(f"expected {rows}x{cols} entries, got {len(ents)}")
        if level is None:
            if not ents:
                raise ValueError("level is required for an empty matrix")
            level = ents[0].level
        for idx, e in enumerate(ents):
            if not isinstance(e, Cyclotomic) or e.level != level:
                raise ValueError(f"entry {idx} is not a level-{level} cyclotomic")
        self.rows = rows
        self.cols = cols
        self.entries = ents
        self.level = level

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], level: int) -> "CMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        ents = []
        for r in rows:
            if len(r) != nc:
                raise ValueError("ragged rows")
            for x in r:
                ents.append(x if isinstance(x, Cyclotomic) else Cyclotomic.rational(level, x))
        return cls(nr, nc, ents, level)

    @classmethod
    def identity(cls, n: int, level: int) -> "CMatrix":
        one, zero = Cyclotomic.one(level), Cyclotomic.zero(level)
        return cls(n, n, [one if i == j else zero for i in range(n) for j in range(n)], level)

    @classmethod
    def zeros(cls, rows: int, cols: int, level: int) -> "CMatrix":
        return cls(rows, cols, [Cyclotomic.zero(level)] * (rows * cols), level)

    @classmethod
    def diag(cls, values: Sequence[Cyclotomic], level: int) -> "CMatrix":
        n = len(values)
        zero = Cyclotomic.zero(level)
        return cls(n, n, [values[i] if i == j else zero for i in range(n) for j in range(n)], level)

    def __getitem__(self, ij: tuple[int, int]) -> Cyclotomic:
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[Cyclotomic]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other):
        if not isinstance(other, CMatrix):
            return NotImplemented
        return self.shape == other.shape and self.level == other.level and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def __repr__(self):
        return f"CMatrix({self.rows}x{self.cols}, level={self.level})"

    def _check_same(self, other: "CMatrix"):
        if self.level != other.level:
            raise ValueError(f"level mismatch: {self.level} vs {other.level}")

    def __add__(self, other: "CMatrix") -> "CMatrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return CMatrix(self.rows, self.cols, [a + b for a, b in zip(self.entries, other.entries)], self.level)

    def __sub__(self, other: "CMatrix") -> "CMatrix":
        self._check_same(other)
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch: {self.shape} vs {other.shape}")
        return CMatrix(self.rows, self.cols, [a - b for a, b in zip(self.entries, other.entries)], self.level)

    def __neg__(self):
        return CMatrix(self.rows, self.cols, [-a for a in self.entries], self.level)

    def scale(self, s) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [a * s for a in self.entries], self.level)

    def __matmul__(self, other: "CMatrix") -> "CMatrix":
        self._check_same(other)
        if self.cols != other.rows:
            raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
        a = self.to_rows()
        bcols = list(zip(*other.to_rows())) if other.rows else [()] * other.cols
        zero = Cyclotomic.zero(self.level)
        out = []
        for row in a:
            nz = [(k, x) for k, x in enumerate(row) if x]
            for col in bcols:
                acc = zero
                for k, x in nz:
                    y = col[k]
                    if y:
                        acc = acc + x * y
                out.append(acc)
        return CMatrix(self.rows, other.cols, out, self.level)

    def transpose(self) -> "CMatrix":
        return CMatrix(self.cols, self.rows, [self[i, j] for j in range(self.cols) for i in range(self.rows)], self.level)

    def galois(self, k: int) -> "CMatrix":
        return CMatrix(self.rows, self.cols, [galois(a, k) for a in self.entries], self.level)

    def conj_transpose(self) -> "CMatrix":
        """Transpose composed with zeta -> zeta^(l-1)."""
        return self.galois(self.level - 1).transpose()

    def inverse(self) -> "CMatrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        one, zero = Cyclotomic.one(self.level), Cyclotomic.zero(self.level)
        aug = [row + [one if i == j else zero for j in range(n)] for i, row in enumerate(self.to_rows())]
        red, pivots = row_reduce(aug, 2 * n)
        if pivots[:n] != list(range(n)) or len(red) < n:
            raise ZeroDivisionError("matrix is singular")
        return CMatrix(n, n, [x for r in red for x in r[n:]], self.level)

    def __pow__(self, n: int) -> "CMatrix":
        if self.rows != self.cols:
            raise ValueError("power of a non-square matrix")
        if n < 0:
            return self.inverse() ** (-n)
        result = CMatrix.identity(self.rows, self.level)
        base = self
        while n:
            if n & 1:
                result = result @ base
            base = base @ base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return not any(self.entries)

    def scalar_value(self) -> Cyclotomic | None:
        """The scalar s if self == s * identity, else None."""
        if self.rows != self.cols or self.rows == 0:
            return None
        s = self[0, 0]
        for i in range(self.rows):
            for j in range(self.cols):
                x = self[i, j]
                if (i == j and x != s) or (i != j and x):
                    return None
        return s

    def embed(self, e: Embedding) -> np.ndarray:
        out = np.empty((self.rows, self.cols), dtype=complex)
        for i in range(self.rows):
            for j in range(self.cols):
                out[i, j] = embed(self[i, j], e)
        return out

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "level": self.level,
                "entries": [e.to_json() for e in self.entries]}

    @classmethod
    def from_json(cls, data: dict) -> "CMatrix":
        rows, cols = data["rows"], data["cols"]
        raw = data["entries"]
        if len(raw) != rows * cols:
            raise ValueError(f"expected {rows * cols} entries, got {len(raw)}")
        ents = []
        for idx, e in enumerate(raw):
            try:
                ents.append(Cyclotomic.from_json(e))
            except (ValueError, KeyError, TypeError) as exc:
                raise ValueError(f"entry {idx} (row {idx // max(cols, 1)}, col {idx % max(cols, 1)}): {exc}") from exc
        level = data.get("level", ents[0].level if ents else None)
        if level is None:
            raise ValueError("empty matrix without a level")
        return cls(rows, cols, ents, level)


def rank(M: CMatrix) -> int:
    return matrix_rank(M.to_rows(), M.cols)


def kernel_basis(M: CMatrix) -> list[tuple[Cyclotomic, ...]]:
    zero, one = Cyclotomic.zero(M.level), Cyclotomic.one(M.level)
    return [tuple(v) for v in nullspace(M.to_rows(), M.cols, zero, one)]


def solve(M: CMatrix, b: Sequence[Cyclotomic]) -> tuple[Cyclotomic, ...] | None:
    if len(b) != M.rows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {M.rows}")
    x = solve_system(M.to_rows(), list(b), M.cols, Cyclotomic.zero(M.level))
    return None if x is None else tuple(x)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, math.isqrt(n) + 1))


def root_of_unity_mod_p(level: int, p: int) -> int:
    """Smallest element of multiplicative order exactly `level` modulo p."""
    if not _is_prime(p) or (p - 1) % level:
        raise ValueError(f"need a prime p = 1 mod {level}, got {p}")
    for x in range(2, p):
        w = pow(x, (p - 1) // level, p)
        if all(pow(w, level // q, p) != 1 for q in range(2, level + 1) if level % q == 0 and _is_prime(q)):
            return w
    raise ValueError(f"no element of order {level} mod {p}")


def rank_mod_p(M: CMatrix, p: int) -> int:
    """Rank after reducing modulo a prime p = 1 (mod l); never exceeds the exact rank."""
    w = root_of_unity_mod_p(M.level, p)
    powers = [pow(w, i, p) for i in range(_degree(M.level))]

    def red(a: Cyclotomic) -> int:
        total = 0
        for c, wp in zip(a.coeffs, powers):
            if c:
                if c.denominator % p == 0:
                    raise ValueError(f"denominator of {c} is divisible by {p}")
                total += c.numerator * pow(c.denominator, -1, p) * wp
        return total % p

    rows = [[red(a) for a in r] for r in M.to_rows()]
    rk = 0
    ncols = M.cols
    for c in range(ncols):
        piv = next((i for i in range(rk, len(rows)) if rows[i][c]), None)
        if piv is None:
            continue
        rows[rk], rows[piv] = rows[piv], rows[rk]
        inv = pow(rows[rk][c], -1, p)
        prow = [(x * inv) % p for x in rows[rk]]
        rows[rk] = prow
        for i in range(rk + 1, len(rows)):
            f = rows[i][c]
            if f:
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        rk += 1
    return rk


class ModP:
    """Element of the prime field GF(p); mixes with Python ints."""

    __slots__ = ("p", "v")

    def __init__(self, v: int, p: int):
        self.p = p
        self.v = v % p

    def _c(self, other) -> int:
        if isinstance(other, ModP):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __truediv__(self, other):
        o = self._c(other)
        if o is NotImplemented:
            return NotImplemented
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero mod p")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else ModP(o, self.p) / self

    def __pow__(self, n: int):
        if n < 0:
            return ModP(pow(self.v, -1, self.p), self.p) ** -n
        return ModP(pow(self.v, n, self.p), self.p)

    def __eq__(self, other):
        o = self._c(other)
        return NotImplemented if o is NotImplemented else (self.v - o) % self.p == 0

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"{self.v} mod {self.p}"
