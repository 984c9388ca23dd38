"""End-to-end Guruswami-Sudan list decoder for Reed-Solomon codes.

Messages are polynomials of degree < k encoded by evaluation at the code
locators.  Decoding constructs a bivariate polynomial vanishing to order r
at every received point, extracts its y-roots of degree < k, and keeps the
candidates that agree with the received word in at least tau positions.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .field import COEFF_DTYPE, GF2m
from .unipoly import UniPoly, _trim
from .bipoly import BiPoly, TermOrder, _trim2d
from .modulebasis import InterpPoints, PolyBasis, iia, lee_osullivan
from .interpolation import (
    InterpolationStats,
    RngStream,
    back_substitute,
    interpolate,
    reencode_interpolate,
)

ALGORITHMS = ("iia", "lee_osullivan", "binary", "binary_reencoded")


class DegreeTooHigh(ValueError):
    """Message degree is k or more."""


@dataclass(frozen=True)
class CodeSpec:
    """(n, k) Reed-Solomon code given by its field and evaluation locators."""

    field: GF2m
    n: int
    k: int
    locators: np.ndarray

    def __post_init__(self):
        locators = np.asarray(self.locators, dtype=COEFF_DTYPE)
        object.__setattr__(self, "locators", locators)
        if not 1 <= self.k < self.n:
            raise ValueError(f"need 1 <= k < n, got k={self.k}, n={self.n}")
        if self.n > self.field.q - 1:
            raise ValueError(f"length {self.n} exceeds field size {self.field.q} - 1")
        if len(locators) != self.n or len(np.unique(locators)) != self.n:
            raise ValueError("locators must be n pairwise-distinct elements")

    @classmethod
    def standard(cls, field: GF2m, n: int, k: int) -> "CodeSpec":
        """Locators alpha^0 .. alpha^(n-1) for the field generator alpha."""
        locators = field.powers(field.alpha_pow(1), n)
        return cls(field, n, k, locators)


@dataclass(frozen=True)
class GsParams:
    """Decoder parameters for multiplicity r: y-degree bound rho, weighted
    degree bound l, agreement threshold tau."""

    r: int
    rho: int
    l: int
    tau: int


def gs_params(n: int, k: int, r: int) -> GsParams:
    """Interpolation parameters for an (n, k) code at multiplicity r.

    rho is the unique integer with rho(rho-1)/2 <= n r(r+1) / (2(k-1))
    < rho(rho+1)/2; l and tau follow by exact integer evaluation.
    """
    if not 2 <= k < n:
        raise ValueError(f"need 2 <= k < n, got k={k}, n={n}")
    if r < 1:
        raise ValueError("multiplicity must be >= 1")
    target = n * r * (r + 1)  # = 2 (k-1) * [n r (r+1) / (2(k-1))]
    rho = 1
    while rho * (rho + 1) * (k - 1) <= target:
        rho += 1
    # now rho(rho-1)(k-1) <= target < rho(rho+1)(k-1)
    l = (n * r * (r + 1) + rho * (rho - 1) * (k - 1)) // (2 * rho)
    tau = l // r + 1
    return GsParams(r=r, rho=rho, l=l, tau=tau)


def encode(msg: UniPoly, code: CodeSpec) -> np.ndarray:
    """Evaluation-map encoding: c_i = msg(x_i)."""
    if msg.degree >= code.k:
        raise DegreeTooHigh(f"message degree {msg.degree} >= k = {code.k}")
    return msg.eval_many(code.locators)


def agreement(msg: UniPoly, code: CodeSpec, received: np.ndarray) -> int:
    """Number of positions where msg's codeword matches the received word."""
    return int(np.count_nonzero(msg.eval_many(code.locators) == np.asarray(received)))


# -- y-root extraction -----------------------------------------------------------


def _strip_x(c: np.ndarray) -> np.ndarray:
    """Divide out the largest power of x dividing every row."""
    cols = np.nonzero(c.any(axis=0))[0]
    if len(cols) == 0 or cols[0] == 0:
        return c
    return c[:, cols[0]:]


def _shift_y_substitution(field: GF2m, c: np.ndarray, gamma: int) -> np.ndarray:
    """Coefficients of Q(x, x*y + gamma), with common x powers stripped.

    Row t of the result is x^t * sum over rows j >= t with binomial C(j, t)
    odd of gamma^(j-t) * row_j.
    """
    rows, width = c.shape
    gp = field.powers(gamma, rows)
    out = np.zeros((rows, width + rows - 1), dtype=COEFF_DTYPE)
    for t in range(rows):
        acc = np.zeros(width, dtype=COEFF_DTYPE)
        for j in range(t, rows):
            if (j & t) == t:
                acc ^= field.vscale(c[j], int(gp[j - t]))
        out[t, t : t + width] = acc
    return _strip_x(_trim2d(out))


def y_roots(q_poly: BiPoly, k: int) -> list[UniPoly]:
    """All f with deg f < k and q_poly(x, f(x)) identically zero.

    Depth-first search over the coefficients of f: the constant term must be
    a root of Q(0, y), and each accepted digit transforms Q by y -> x*y +
    digit.  Every candidate is re-verified by direct substitution before
    being returned.
    """
    if q_poly.is_zero():
        raise ValueError("cannot extract roots of the zero polynomial")
    field = q_poly.field
    all_elements = np.arange(field.q, dtype=COEFF_DTYPE)
    found: dict[tuple, UniPoly] = {}

    def record(prefix: list[int]):
        poly = UniPoly._raw(field, _trim(np.array(prefix, dtype=COEFF_DTYPE)))
        found.setdefault(tuple(poly.c.tolist()), poly)

    def visit(c: np.ndarray, depth: int, prefix: list[int]):
        if not c[0].any():
            record(prefix)
        if depth == k:
            return
        # roots of Q(0, y): evaluate the first column at every field element
        col = c[:, 0]
        vals = np.zeros(field.q, dtype=COEFF_DTYPE)
        for coeff in col[::-1].tolist():
            vals = field.vmul(vals, all_elements)
            vals ^= coeff
        for gamma in all_elements[vals == 0].tolist():
            visit(_shift_y_substitution(field, c, gamma), depth + 1, prefix + [gamma])

    visit(_strip_x(q_poly.c), 0, [])
    verified = []
    for poly in found.values():
        y_pow = UniPoly.one(field)
        total = UniPoly.zero(field)
        for j in range(q_poly.ydeg + 1):
            if j > 0:
                y_pow = y_pow * poly
            total = total + q_poly.row(j) * y_pow
        if total.is_zero():
            verified.append(poly)
    verified.sort(key=lambda p: (p.degree, p.c.tolist()))
    return verified


# -- decoding ---------------------------------------------------------------------


@dataclass
class DecodeResult:
    """Candidates as (message, agreement) pairs, best agreement first."""

    candidates: list[tuple[UniPoly, int]]
    params: GsParams
    stats: InterpolationStats = dataclass_field(default_factory=InterpolationStats)

    @property
    def messages(self) -> list[UniPoly]:
        return [msg for msg, _ in self.candidates]


def _interpolation_poly(
    pts: InterpPoints, code: CodeSpec, params: GsParams, algorithm: str, rng: RngStream
) -> tuple[BiPoly, InterpolationStats]:
    order = TermOrder(1, code.k - 1)
    if algorithm == "iia":
        basis = iia(pts, params.r, params.rho, order)
        return basis.smallest(), InterpolationStats()
    if algorithm == "lee_osullivan":
        steps: list[int] = []
        basis = lee_osullivan(pts, params.r, params.rho, code.k, order, _steps_out=steps)
        stats = InterpolationStats(setup_reduce_steps=steps[0])
        return basis.smallest(), stats
    if algorithm == "binary":
        basis, stats = interpolate(pts, params.r, code.k, rng)
        return basis.smallest(), stats
    if algorithm == "binary_reencoded":
        basis, stats = reencode_interpolate(pts, params.r, code.k, rng)
        field = code.field
        psi = UniPoly.from_roots(field, pts.xs[: code.k])
        t_poly = UniPoly.lagrange(field, pts.xs, pts.ys)
        g_poly = t_poly % psi
        q_poly = back_substitute(basis.smallest(), g_poly, psi, params.r)
        return q_poly, stats
    raise ValueError(f"unknown algorithm {algorithm!r}; choose from {ALGORITHMS}")


def list_decode(
    received,
    code: CodeSpec,
    r: int,
    algorithm: str = "binary",
    seed: int = 0,
    *,
    gao_early_exit: bool = False,
) -> DecodeResult:
    """All messages agreeing with `received` in at least tau positions.

    `algorithm` selects how the interpolation basis is built; every choice
    yields the same candidate list.  With `gao_early_exit`, a multiplicity-1
    pass runs first and its result is returned if it already pins down a
    codeword within half the minimum distance.
    """
    received = np.asarray(received, dtype=COEFF_DTYPE)
    if received.shape != (code.n,):
        raise ValueError(f"received word must have length {code.n}")
    params = gs_params(code.n, code.k, r)
    if gao_early_exit and r > 1:
        quick = list_decode(received, code, 1, algorithm, seed)
        limit = code.n - (code.n - code.k) // 2
        sure = [cand for cand in quick.candidates if cand[1] >= limit]
        if sure:
            return DecodeResult(sure, quick.params, quick.stats)
    pts = InterpPoints(code.field, code.locators, received)
    rng = RngStream(seed)
    q_poly, stats = _interpolation_poly(pts, code, params, algorithm, rng)
    candidates = []
    for msg in y_roots(q_poly, code.k):
        agree = agreement(msg, code, received)
        if agree >= params.tau:
            candidates.append((msg, agree))
    candidates.sort(key=lambda pair: (-pair[1], pair[0].c.tolist()))
    return DecodeResult(candidates, params, stats)
