"""Bivariate polynomials over GF(2^m), weighted term orders, Hasse derivatives.

A BiPoly is a rectangular coefficient array c[j, i] = coefficient of x^i y^j,
trimmed so the last row and last column each contain a nonzero entry.  Row j
is the UniPoly coefficient of y^j, which is the natural shape for the module
algorithms: they reduce whole rows at a time.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .field import COEFF_DTYPE, GF2m
from .unipoly import UniPoly, _trim


class ZeroPolynomial(ValueError):
    """Leading term of the zero polynomial requested."""


class Monomial(NamedTuple):
    coeff: int
    i: int  # x-degree
    j: int  # y-degree


@dataclass(frozen=True)
class TermOrder:
    """(wx, wy)-weighted degree lexicographic order.

    Monomials are compared first by wx*i + wy*j; ties go to the higher
    y-degree, then the higher x-degree.  wy may be negative.
    """

    wx: int
    wy: int

    def key(self, i: int, j: int) -> tuple[int, int, int]:
        return (self.wx * i + self.wy * j, j, i)

    def monomial_key(self, mon: Monomial) -> tuple[int, int, int]:
        return self.key(mon.i, mon.j)

    def less(self, a: Monomial, b: Monomial) -> bool:
        return self.monomial_key(a) < self.monomial_key(b)

    def __str__(self) -> str:
        return f"{self.wx},{self.wy}"


def _trim2d(c: np.ndarray) -> np.ndarray:
    if c.size == 0:
        return c.reshape(0, 0)
    nzrows = np.nonzero(c.any(axis=1))[0]
    if len(nzrows) == 0:
        return c[:0, :0]
    nzcols = np.nonzero(c.any(axis=0))[0]
    return c[: nzrows[-1] + 1, : nzcols[-1] + 1]


def _row_degrees(c: np.ndarray) -> np.ndarray:
    """Per-row x-degree; -1 for all-zero rows."""
    if c.size == 0:
        return np.zeros(c.shape[0], dtype=np.int64)
    nz = c != 0
    return np.where(nz.any(axis=1), c.shape[1] - 1 - np.argmax(nz[:, ::-1], axis=1), -1)


def _leading_term_raw(c: np.ndarray, order: TermOrder) -> Monomial | None:
    """Leading term of a raw (trimmed or untrimmed) coefficient array."""
    degs = _row_degrees(c)
    best = None
    best_key = None
    for j, d in enumerate(degs.tolist()):
        if d < 0:
            continue
        key = order.key(d, j)
        if best_key is None or key > best_key:
            best_key = key
            best = (j, d)
    if best is None:
        return None
    j, d = best
    return Monomial(int(c[j, d]), d, j)


class BiPoly:
    """Polynomial in x and y over a GF2m field."""

    __slots__ = ("field", "c")

    def __init__(self, field: GF2m, coeffs):
        c = np.array(coeffs, dtype=COEFF_DTYPE)
        if c.ndim != 2:
            raise ValueError("coefficients must be a 2-d array (rows indexed by y-degree)")
        if c.size and (c.min() < 0 or c.max() >= field.q):
            raise ValueError("coefficient out of field range")
        self.field = field
        self.c = _trim2d(c)

    @classmethod
    def _raw(cls, field: GF2m, c: np.ndarray) -> "BiPoly":
        p = object.__new__(cls)
        p.field = field
        p.c = c
        return p

    @classmethod
    def zero(cls, field: GF2m) -> "BiPoly":
        return cls._raw(field, np.zeros((0, 0), dtype=COEFF_DTYPE))

    @classmethod
    def from_uni(cls, u: UniPoly, yshift: int = 0) -> "BiPoly":
        """u(x) * y^yshift."""
        if u.is_zero():
            return cls.zero(u.field)
        c = np.zeros((yshift + 1, len(u.c)), dtype=COEFF_DTYPE)
        c[yshift] = u.c
        return cls._raw(u.field, c)

    @classmethod
    def from_rows(cls, field: GF2m, rows) -> "BiPoly":
        """Rows are UniPoly or coefficient sequences, index = y-degree."""
        arrays = []
        for row in rows:
            arrays.append(row.c if isinstance(row, UniPoly) else np.asarray(row, dtype=COEFF_DTYPE))
        width = max((len(a) for a in arrays), default=0)
        c = np.zeros((len(arrays), width), dtype=COEFF_DTYPE)
        for j, a in enumerate(arrays):
            c[j, : len(a)] = a
        return cls(field, c)

    @classmethod
    def monomial(cls, field: GF2m, coeff: int, i: int, j: int) -> "BiPoly":
        if coeff == 0:
            return cls.zero(field)
        c = np.zeros((j + 1, i + 1), dtype=COEFF_DTYPE)
        c[j, i] = coeff
        return cls._raw(field, c)

    # -- queries ------------------------------------------------------------

    @property
    def ydeg(self) -> int:
        return self.c.shape[0] - 1

    @property
    def xdeg(self) -> int:
        """Largest x-degree over all rows; -1 for zero."""
        return self.c.shape[1] - 1

    def is_zero(self) -> bool:
        return self.c.size == 0

    def __bool__(self) -> bool:
        return self.c.size > 0

    def row(self, j: int) -> UniPoly:
        if j < 0 or j > self.ydeg:
            return UniPoly.zero(self.field)
        return UniPoly._raw(self.field, _trim(self.c[j].copy()))

    def rows(self) -> list[UniPoly]:
        return [self.row(j) for j in range(self.ydeg + 1)]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BiPoly)
            and self.field == other.field
            and self.c.shape == other.c.shape
            and np.array_equal(self.c, other.c)
        )

    def __hash__(self):
        return hash((self.field, self.c.shape, self.c.tobytes()))

    def __repr__(self) -> str:
        return f"BiPoly(ydeg={self.ydeg}, xdeg={self.xdeg})"

    def leading_term(self, order: TermOrder) -> Monomial:
        mon = _leading_term_raw(self.c, order)
        if mon is None:
            raise ZeroPolynomial("zero polynomial has no leading term")
        return mon

    def wdeg(self, a: int, b: int) -> int:
        """(a, b)-weighted degree, a >= 0; raises on the zero polynomial."""
        if self.is_zero():
            raise ZeroPolynomial("zero polynomial has no weighted degree")
        degs = _row_degrees(self.c)
        best = None
        for j, d in enumerate(degs.tolist()):
            if d < 0:
                continue
            if a >= 0:
                i = d
            else:
                i = int(np.argmax(self.c[j] != 0))
            w = a * i + b * j
            if best is None or w > best:
                best = w
        return best

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "BiPoly") -> "BiPoly":
        return bi_add_scaled(self, 1, 0, 0, other)

    __sub__ = __add__  # characteristic 2

    def scale(self, value: int) -> "BiPoly":
        if value == 0 or self.is_zero():
            return BiPoly.zero(self.field)
        return BiPoly._raw(self.field, self.field.vscale(self.c, value))

    def __mul__(self, other: "BiPoly") -> "BiPoly":
        return bi_mul(self, other)

    def mul_uni(self, u: UniPoly) -> "BiPoly":
        return bi_mul_uni(self, u)

    def shift_y(self, e: int) -> "BiPoly":
        """Multiply by y^e."""
        if self.is_zero() or e == 0:
            return self
        c = np.zeros((self.c.shape[0] + e, self.c.shape[1]), dtype=COEFF_DTYPE)
        c[e:] = self.c
        return BiPoly._raw(self.field, c)

    # -- evaluation and Hasse derivatives ------------------------------------

    def eval(self, x0: int, y0: int) -> int:
        return self.hasse(0, 0, x0, y0)

    def hasse(self, j1: int, j2: int, x0: int, y0: int) -> int:
        """Hasse derivative of order (j1 in x, j2 in y) evaluated at (x0, y0).

        Sum over monomials q x^a y^b with a >= j1, b >= j2 of
        C(a, j1) C(b, j2) q x0^(a-j1) y0^(b-j2); binomials are taken mod 2,
        so a monomial contributes iff j1's bits are a subset of a's and j2's
        bits a subset of b's.
        """
        if j1 < 0 or j2 < 0:
            raise ValueError("derivative orders must be nonnegative")
        f = self.field
        nrows, width = self.c.shape
        rows = [j for j in range(j2, nrows) if (j & j2) == j2]
        if not rows or width <= j1:
            return 0
        cols = np.arange(j1, width)
        cols = cols[(cols & j1) == j1]
        sub = self.c[np.ix_(rows, cols)]
        xp = f.powers(x0, width - j1)[cols - j1]
        rowvals = np.bitwise_xor.reduce(f.exp[f.log[sub] + f.log[xp][None, :]], axis=1)
        yp = f.powers(y0, nrows - j2)[np.asarray(rows) - j2]
        return int(np.bitwise_xor.reduce(f.exp[f.log[rowvals] + f.log[yp]]))

    def has_root_mult(self, x0: int, y0: int, r: int) -> bool:
        """True iff all Hasse derivatives of total order < r vanish at (x0, y0)."""
        if r < 1:
            raise ValueError("multiplicity must be >= 1")
        if self.is_zero():
            return True
        for j1 in range(r):
            for j2 in range(r - j1):
                if self.hasse(j1, j2, x0, y0) != 0:
                    return False
        return True

    # -- serialization ----------------------------------------------------------

    def to_text(self) -> str:
        """One line per y-degree: 'j: <hex,hex,...>'; '' for the zero polynomial."""
        return "\n".join(f"{j}: {self.row(j).to_text()}" for j in range(self.ydeg + 1))

    @classmethod
    def from_text(cls, field: GF2m, text: str) -> "BiPoly":
        rows: dict[int, UniPoly] = {}
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            j_text, _, coeff_text = line.partition(":")
            rows[int(j_text)] = UniPoly.from_text(field, coeff_text)
        if not rows:
            return cls.zero(field)
        top = max(rows)
        return cls.from_rows(field, [rows.get(j, UniPoly.zero(field)) for j in range(top + 1)])


# -- free functions --------------------------------------------------------------


def bi_add_scaled(p: BiPoly, coeff: int, xshift: int, yshift: int, s: BiPoly) -> BiPoly:
    """p + coeff * x^xshift * y^yshift * s."""
    f = p.field
    if coeff == 0 or s.is_zero():
        return p
    rows = max(p.c.shape[0], s.c.shape[0] + yshift)
    cols = max(p.c.shape[1], s.c.shape[1] + xshift)
    out = np.zeros((rows, cols), dtype=COEFF_DTYPE)
    out[: p.c.shape[0], : p.c.shape[1]] = p.c
    block = s.c if coeff == 1 else f.vscale(s.c, coeff)
    out[yshift : yshift + s.c.shape[0], xshift : xshift + s.c.shape[1]] ^= block
    return BiPoly._raw(f, _trim2d(out))


def bi_mul(p: BiPoly, s: BiPoly) -> BiPoly:
    """Exact product: rows of the result are the y-convolution of row products."""
    if p.is_zero() or s.is_zero():
        return BiPoly.zero(p.field)
    f = p.field
    # iterate the operand whose nonzero support costs less against the
    # other's bounding box
    nnz_p = int(np.count_nonzero(p.c))
    nnz_s = int(np.count_nonzero(s.c))
    if nnz_p * s.c.size > nnz_s * p.c.size:
        p, s = s, p
    out = np.zeros((p.c.shape[0] + s.c.shape[0] - 1, p.c.shape[1] + s.c.shape[1] - 1),
                   dtype=COEFF_DTYPE)
    log_s = f.log[s.c]
    exp, log = f.exp, f.log
    srows, scols = s.c.shape
    js, iis = np.nonzero(p.c)
    logs = log[p.c[js, iis]]
    for j, i, lc in zip(js.tolist(), iis.tolist(), logs.tolist()):
        out[j : j + srows, i : i + scols] ^= exp[log_s + lc]
    return BiPoly._raw(f, _trim2d(out))


def bi_mul_uni(p: BiPoly, u: UniPoly) -> BiPoly:
    """p(x, y) * u(x)."""
    if u.is_zero() or p.is_zero():
        return BiPoly.zero(p.field)
    return bi_mul(p, BiPoly.from_uni(u))
