"""GF(2^m) arithmetic backed by discrete-log/antilog tables.

Field elements are plain ints in [0, 2^m), read as bit vectors over the
polynomial basis.  Multiplication goes through two lookup tables sized so
that index arithmetic never needs a modulo or a zero branch: log[0] is a
sentinel that lands every product involving zero in a zero-filled region
of the antilog table.  This keeps both the scalar ops and the vectorized
numpy paths branch-free.
"""

from __future__ import annotations

import numpy as np

#: dtype used for coefficient arrays throughout the package.  int32 is wide
#: enough for any log-index sum (< 4 * 2^16) and halves memory traffic
#: compared to int64.
COEFF_DTYPE = np.int32


class DegreeOutOfRange(ValueError):
    """Extension degree, or defining polynomial degree, outside 2..16."""


class NotPrimitive(ValueError):
    """Defining polynomial does not generate the full multiplicative group."""


#: Conventional primitive polynomials per extension degree (bit-encoded,
#: monic).  Used by the CLI when no polynomial is given; any primitive
#: polynomial of the right degree is accepted by the constructor.
DEFAULT_PRIMITIVE_POLY = {
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x43,
    7: 0x89,
    8: 0x11D,
    9: 0x211,
    10: 0x409,
    11: 0x805,
    12: 0x1053,
    13: 0x201B,
    14: 0x4443,
    15: 0x8003,
    16: 0x1100B,
}


class GF2m:
    """The field GF(2^m), 2 <= m <= 16, over a given primitive polynomial.

    Immutable after construction; safe to share across threads.  Addition is
    bitwise XOR.  `exp` and `log` are exposed for the polynomial modules,
    which fuse table lookups into vectorized expressions.
    """

    __slots__ = ("m", "q", "order", "primitive_poly", "exp", "log", "_zero_log")

    def __init__(self, m: int, primitive_poly: int):
        if not 2 <= m <= 16:
            raise DegreeOutOfRange(f"extension degree must be in 2..16, got {m}")
        if primitive_poly >> m != 1:
            raise DegreeOutOfRange(
                f"defining polynomial must be monic of degree {m}, got {primitive_poly:#x}"
            )
        q = 1 << m
        order = q - 1
        zero_log = 2 * order - 1
        exp = np.zeros(4 * order - 1, dtype=COEFF_DTYPE)
        log = np.full(q, zero_log, dtype=COEFF_DTYPE)
        x = 1
        for i in range(order):
            if log[x] != zero_log:
                raise NotPrimitive(
                    f"{primitive_poly:#x} cycles after {i} steps, need {order}"
                )
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & q:
                x ^= primitive_poly
        if x != 1:
            raise NotPrimitive(f"{primitive_poly:#x} does not cycle back to 1")
        # Double the antilog cycle so log sums never need reduction; leave
        # everything at index >= 2*order-1 zero so products with 0 fall out.
        exp[order : 2 * order - 1] = exp[: order - 1]
        self.m = m
        self.q = q
        self.order = order
        self.primitive_poly = primitive_poly
        self.exp = exp
        self.log = log
        self._zero_log = zero_log

    @classmethod
    def default(cls, m: int) -> "GF2m":
        """Field over the conventional primitive polynomial for degree m."""
        if m not in DEFAULT_PRIMITIVE_POLY:
            raise DegreeOutOfRange(f"no default polynomial for degree {m}")
        return cls(m, DEFAULT_PRIMITIVE_POLY[m])

    # -- scalar operations ------------------------------------------------

    def add(self, a: int, b: int) -> int:
        return a ^ b

    sub = add  # characteristic 2

    def mul(self, a: int, b: int) -> int:
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of 0")
        return int(self.exp[self.order - self.log[a]])

    def div(self, a: int, b: int) -> int:
        if b == 0:
            raise ZeroDivisionError("division by 0")
        if a == 0:
            return 0
        return int(self.exp[(int(self.log[a]) - int(self.log[b])) % self.order])

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise ZeroDivisionError("0 to a negative power")
            return 0
        return int(self.exp[(int(self.log[a]) * e) % self.order])

    def alpha_pow(self, e: int) -> int:
        """Power of the generator (the root of the defining polynomial)."""
        return int(self.exp[e % self.order])

    # -- vectorized helpers -----------------------------------------------

    def vmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        return self.exp[self.log[a] + self.log[b]]

    def vscale(self, a: np.ndarray, c: int) -> np.ndarray:
        """c * a elementwise for scalar c."""
        if c == 0:
            return np.zeros_like(a)
        return self.exp[self.log[a] + int(self.log[c])]

    def vinv(self, a: np.ndarray) -> np.ndarray:
        if np.any(a == 0):
            raise ZeroDivisionError("inverse of 0")
        return self.exp[self.order - self.log[a]]

    def powers(self, x: int, count: int) -> np.ndarray:
        """[x^0, x^1, ..., x^(count-1)] as an array."""
        if count <= 0:
            return np.zeros(0, dtype=COEFF_DTYPE)
        if x == 0:
            out = np.zeros(count, dtype=COEFF_DTYPE)
            out[0] = 1
            return out
        idx = (int(self.log[x]) * np.arange(count, dtype=np.int64)) % self.order
        return self.exp[idx]

    # -- serialization ----------------------------------------------------

    def element_to_hex(self, a: int) -> str:
        return format(a, "x")

    def element_from_hex(self, text: str) -> int:
        value = int(text, 16)
        if not 0 <= value < self.q:
            raise ValueError(f"element {text!r} out of range for GF(2^{self.m})")
        return value

    def spec_string(self) -> str:
        return f"{self.m}:{self.primitive_poly:x}"

    @classmethod
    def from_spec_string(cls, text: str) -> "GF2m":
        m_text, _, poly_text = text.partition(":")
        return cls(int(m_text), int(poly_text, 16))

    # -- misc ---------------------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GF2m)
            and self.m == other.m
            and self.primitive_poly == other.primitive_poly
        )

    def __hash__(self) -> int:
        return hash((self.m, self.primitive_poly))

    def __repr__(self) -> str:
        return f"GF2m(m={self.m}, primitive_poly={self.primitive_poly:#x})"
