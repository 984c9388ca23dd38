"""Dense univariate polynomials over GF(2^m).

Coefficients are stored low-degree-first in a trimmed numpy array; the zero
polynomial is the empty array.  Multiplication uses Karatsuba above a
configurable cutoff and a vectorized schoolbook kernel below it.
"""

from __future__ import annotations

import numpy as np

from .field import COEFF_DTYPE, GF2m

#: Degree (coefficient-count) threshold below which schoolbook multiplication
#: is used.  The schoolbook kernel is itself vectorized, which pushes the
#: crossover far above the classical scalar value; see README for the
#: measurement.  Override per call via uni_mul(..., cutoff=...).
KARATSUBA_CUTOFF = 384


class DuplicateAbscissa(ValueError):
    """Interpolation abscissas must be pairwise distinct."""


def _trim(c: np.ndarray) -> np.ndarray:
    nz = np.nonzero(c)[0]
    if len(nz) == 0:
        return c[:0]
    return c[: nz[-1] + 1]


class UniPoly:
    """Polynomial in x over a GF2m field."""

    __slots__ = ("field", "c")

    def __init__(self, field: GF2m, coeffs):
        c = np.array(coeffs, dtype=COEFF_DTYPE)
        if c.ndim != 1:
            raise ValueError("coefficients must be one-dimensional")
        if c.size and (c.min() < 0 or c.max() >= field.q):
            raise ValueError("coefficient out of field range")
        self.field = field
        self.c = _trim(c)

    @classmethod
    def _raw(cls, field: GF2m, c: np.ndarray) -> "UniPoly":
        """Trusted constructor: c already trimmed, in-range, COEFF_DTYPE."""
        p = object.__new__(cls)
        p.field = field
        p.c = c
        return p

    @classmethod
    def zero(cls, field: GF2m) -> "UniPoly":
        return cls._raw(field, np.zeros(0, dtype=COEFF_DTYPE))

    @classmethod
    def constant(cls, field: GF2m, value: int) -> "UniPoly":
        if value == 0:
            return cls.zero(field)
        return cls._raw(field, np.array([value], dtype=COEFF_DTYPE))

    @classmethod
    def one(cls, field: GF2m) -> "UniPoly":
        return cls.constant(field, 1)

    @classmethod
    def x(cls, field: GF2m) -> "UniPoly":
        return cls._raw(field, np.array([0, 1], dtype=COEFF_DTYPE))

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.c) - 1

    def is_zero(self) -> bool:
        return len(self.c) == 0

    def __bool__(self) -> bool:
        return len(self.c) > 0

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, UniPoly)
            and self.field == other.field
            and np.array_equal(self.c, other.c)
        )

    def __hash__(self):
        return hash((self.field, self.c.tobytes()))

    def __repr__(self) -> str:
        return f"UniPoly({self.to_text()!r})"

    def leading_coeff(self) -> int:
        if self.is_zero():
            raise ValueError("zero polynomial has no leading coefficient")
        return int(self.c[-1])

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = a.copy()
        out[: len(b)] ^= b
        return UniPoly._raw(self.field, _trim(out))

    __sub__ = __add__  # characteristic 2

    def scale(self, value: int) -> "UniPoly":
        if value == 0 or self.is_zero():
            return UniPoly.zero(self.field)
        return UniPoly._raw(self.field, self.field.vscale(self.c, value))

    def shift(self, e: int) -> "UniPoly":
        """Multiply by x^e."""
        if self.is_zero() or e == 0:
            return self
        out = np.zeros(len(self.c) + e, dtype=COEFF_DTYPE)
        out[e:] = self.c
        return UniPoly._raw(self.field, out)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        return uni_mul(self, other)

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(self.field.inv(self.leading_coeff()))

    def __pow__(self, e: int) -> "UniPoly":
        if e < 0:
            raise ValueError("negative exponent")
        result = UniPoly.one(self.field)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def __divmod__(self, other: "UniPoly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        f = self.field
        if self.degree < other.degree:
            return UniPoly.zero(f), self
        db = other.degree
        if db == 0:
            return self.scale(f.inv(int(other.c[0]))), UniPoly.zero(f)
        r = self.c.copy()
        q = np.zeros(len(r) - db, dtype=COEFF_DTYPE)
        inv_lead = f.inv(other.leading_coeff())
        log_b = f.log[other.c[:-1]]
        for i in range(len(r) - 1, db - 1, -1):
            coef = f.mul(int(r[i]), inv_lead)
            if coef:
                q[i - db] = coef
                r[i - db : i] ^= f.exp[log_b + int(f.log[coef])]
                r[i] = 0
        return UniPoly._raw(f, _trim(q)), UniPoly._raw(f, _trim(r))

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return divmod(self, other)[1]

    # -- evaluation ----------------------------------------------------------

    def eval(self, x: int) -> int:
        if self.is_zero():
            return 0
        f = self.field
        xp = f.powers(x, len(self.c))
        return int(np.bitwise_xor.reduce(f.exp[f.log[self.c] + f.log[xp]]))

    __call__ = eval

    def eval_many(self, xs: np.ndarray) -> np.ndarray:
        """Evaluate at every point of xs (Horner, vectorized over points)."""
        f = self.field
        xs = np.asarray(xs, dtype=COEFF_DTYPE)
        out = np.zeros_like(xs)
        for coeff in self.c[::-1]:
            out = f.vmul(out, xs)
            out ^= coeff
        return out

    # -- constructions ---------------------------------------------------------

    @classmethod
    def from_roots(cls, field: GF2m, roots) -> "UniPoly":
        """prod (x - r_i); repeated roots allowed."""
        roots = np.asarray(roots, dtype=COEFF_DTYPE)
        c = np.zeros(len(roots) + 1, dtype=COEFF_DTYPE)
        c[0] = 1
        deg = 0
        for root in roots:
            head = c[: deg + 1].copy()
            c[1 : deg + 2] = head
            c[0] = 0
            c[: deg + 1] ^= field.vscale(head, int(root))
            deg += 1
        return cls._raw(field, _trim(c))

    @classmethod
    def lagrange(cls, field: GF2m, xs, ys) -> "UniPoly":
        """Unique polynomial of degree < n through the n points (xs, ys)."""
        xs = np.asarray(xs, dtype=COEFF_DTYPE)
        ys = np.asarray(ys, dtype=COEFF_DTYPE)
        n = len(xs)
        if len(np.unique(xs)) != n:
            raise DuplicateAbscissa("repeated x coordinate")
        if n == 0:
            return cls.zero(field)
        phi = cls.from_roots(field, xs)
        # rows[i] = coefficients of phi / (x - xs[i]), built by running the
        # synthetic-division recurrence for all points at once.
        rows = np.zeros((n, n), dtype=COEFF_DTYPE)
        rows[:, n - 1] = phi.c[n]
        for j in range(n - 2, -1, -1):
            rows[:, j] = phi.c[j + 1] ^ field.vmul(xs, rows[:, j + 1])
        # denominators: row i evaluated at xs[i]
        den = np.zeros(n, dtype=COEFF_DTYPE)
        for j in range(n - 1, -1, -1):
            den = field.vmul(den, xs) ^ rows[:, j]
        weights = field.vmul(ys, field.vinv(den))
        mixed = field.exp[field.log[rows] + field.log[weights][:, None]]
        return cls._raw(field, _trim(np.bitwise_xor.reduce(mixed, axis=0)))

    # -- serialization -----------------------------------------------------------

    def to_text(self) -> str:
        """Comma-separated lowercase hex, degree ascending; '' for zero."""
        return ",".join(format(int(v), "x") for v in self.c)

    @classmethod
    def from_text(cls, field: GF2m, text: str) -> "UniPoly":
        text = text.strip()
        if not text:
            return cls.zero(field)
        return cls(field, [field.element_from_hex(tok) for tok in text.split(",")])


# -- multiplication kernels ----------------------------------------------------


def _school_mul(f: GF2m, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) > len(b):
        a, b = b, a
    out = np.zeros(len(a) + len(b) - 1, dtype=COEFF_DTYPE)
    log_b = f.log[b]
    exp, log = f.exp, f.log
    lb = len(b)
    for i, ci in enumerate(a.tolist()):
        if ci:
            out[i : i + lb] ^= exp[log_b + int(log[ci])]
    return out


def _xor_pad(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    out = a.copy()
    out[: len(b)] ^= b
    return out


def _kara_mul(f: GF2m, a: np.ndarray, b: np.ndarray, cutoff: int) -> np.ndarray:
    if len(a) < len(b):
        a, b = b, a
    la, lb = len(a), len(b)
    if lb <= cutoff:
        return _school_mul(f, a, b)
    h = (la + 1) >> 1
    if lb <= h:
        # strongly unbalanced: split the long operand into h-sized blocks
        out = np.zeros(la + lb - 1, dtype=COEFF_DTYPE)
        for ofs in range(0, la, h):
            chunk = _kara_mul(f, _trim(a[ofs : ofs + h]), b, cutoff)
            out[ofs : ofs + len(chunk)] ^= chunk
        return out
    a0, a1 = _trim(a[:h]), a[h:]
    b0, b1 = _trim(b[:h]), b[h:]
    z0 = _kara_mul(f, a0, b0, cutoff) if len(a0) and len(b0) else np.zeros(0, COEFF_DTYPE)
    z2 = _kara_mul(f, a1, b1, cutoff)
    zm = _kara_mul(f, _xor_pad(a0, a1), _xor_pad(b0, b1), cutoff)
    z1 = _xor_pad(_xor_pad(zm, z0), z2)
    out = np.zeros(la + lb - 1, dtype=COEFF_DTYPE)
    out[: len(z0)] ^= z0
    out[h : h + len(z1)] ^= z1
    out[2 * h : 2 * h + len(z2)] ^= z2
    return out


def uni_mul(a: UniPoly, b: UniPoly, cutoff: int | None = None) -> UniPoly:
    """Product of two polynomials; Karatsuba above `cutoff` coefficients."""
    if a.is_zero() or b.is_zero():
        return UniPoly.zero(a.field)
    if cutoff is None:
        cutoff = KARATSUBA_CUTOFF
    if min(len(a.c), len(b.c)) <= cutoff:
        out = _school_mul(a.field, a.c, b.c)
    else:
        out = _kara_mul(a.field, a.c, b.c, cutoff)
    return UniPoly._raw(a.field, _trim(out))
