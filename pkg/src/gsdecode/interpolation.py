"""Interpolation by ideal multiplication.

The multiplicity-r interpolation ideal is the r-th power of the
multiplicity-1 ideal, so its Groebner basis can be computed by binary
exponentiation over an ideal product.  The product step (`merge`) seeds a
basis with one leading-term-minimal pairwise product per y-degree and then
folds random linear combinations of the factors until the leading-degree sum
drops to its known target; a deterministic fallback folds every pairwise
product, which always terminates.

`reencode_interpolate` runs the same exponentiation after the change of
variable y = g(x) + z*psi(x), which strips the k re-encoded points out of
the problem; `back_substitute` maps results back to (x, y).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .field import COEFF_DTYPE, GF2m
from .unipoly import UniPoly
from .bipoly import BiPoly, TermOrder, bi_mul, bi_mul_uni
from .modulebasis import (
    InterpPoints,
    PolyBasis,
    PreconditionViolated,
    _WorkBasis,
)

#: Random-combination passes allowed before merge switches to the
#: deterministic all-pairwise-products fallback.
MAX_RANDOM_ITERS = 64

_MASK64 = (1 << 64) - 1


class FallbackExhausted(RuntimeError):
    """Even the deterministic pairwise-product fallback missed the target
    leading-degree sum; the input bases violated the shape preconditions."""


class InexactDivision(ValueError):
    """Back substitution hit a row that is not divisible by the required
    power of the re-encoding locator polynomial."""


class RngStream:
    """Deterministic 64-bit counter-based generator (splitmix64).

    The same seed always yields the same draw sequence; `counter` records how
    many draws were made.  Not safe to share between concurrent decodes; give
    each decode its own stream.
    """

    __slots__ = ("seed", "counter")

    def __init__(self, seed: int):
        self.seed = seed & _MASK64
        self.counter = 0

    def next_u64(self) -> int:
        self.counter += 1
        z = (self.seed + self.counter * 0x9E3779B97F4A7C15) & _MASK64
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def element(self, field: GF2m) -> int:
        # q is a power of two, so masking the low bits is uniform
        return self.next_u64() & (field.q - 1)

    def elements(self, field: GF2m, count: int) -> list[int]:
        return [self.element(field) for _ in range(count)]

    def derive(self, index: int) -> "RngStream":
        """Independent stream for a numbered subtask (seed xor index)."""
        return RngStream(self.seed ^ index)


@dataclass
class MergeStats:
    """Counters for one ideal-product call.

    `random_iterations` counts folds of random combinations, i.e. passes
    beyond the u+v+1 initial products; `reduce_steps` counts inner reduction
    iterations across the whole call.
    """

    r: int
    u: int
    v: int
    random_iterations: int
    reduce_steps: int
    fallback_used: bool

    CSV_HEADER = "r,u,v,random_iterations,reduce_steps,fallback_used"

    def csv_row(self) -> str:
        return (
            f"{self.r},{self.u},{self.v},{self.random_iterations},"
            f"{self.reduce_steps},{int(self.fallback_used)}"
        )


@dataclass
class InterpolationStats:
    """Aggregated counters for one interpolation run."""

    merge_calls: list[MergeStats] = dataclass_field(default_factory=list)
    setup_reduce_steps: int = 0  # reduction work outside merge (basis seeding)

    @property
    def merge_call_count(self) -> int:
        return len(self.merge_calls)

    @property
    def random_iterations(self) -> int:
        return sum(ms.random_iterations for ms in self.merge_calls)

    @property
    def reduce_steps(self) -> int:
        return self.setup_reduce_steps + sum(ms.reduce_steps for ms in self.merge_calls)

    @property
    def fallback_count(self) -> int:
        return sum(1 for ms in self.merge_calls if ms.fallback_used)


def _check_contiguous(basis: PolyBasis, name: str) -> list:
    lts = basis.leading_terms()
    ydegs = [mon.j for mon in lts]
    if ydegs != list(range(len(lts))):
        raise PreconditionViolated(
            f"{name} must have leading y-degrees 0..{len(lts) - 1}, got {ydegs}"
        )
    return lts


def initial_product_basis(p_basis: PolyBasis, s_basis: PolyBasis) -> list[BiPoly]:
    """One pairwise product per result y-degree, chosen leading-term minimal.

    For slot i the candidates are P_(i-j) * S_j over all valid j; their
    leading terms are the products of the factors' leading terms, so the
    choice needs no polynomial multiplication.  Ties go to the smallest j.
    """
    order = p_basis.order
    p_lts = _check_contiguous(p_basis, "left factor")
    s_lts = _check_contiguous(s_basis, "right factor")
    u, v = len(p_lts) - 1, len(s_lts) - 1
    products = []
    for i in range(u + v + 1):
        best_j = None
        best_key = None
        for j in range(max(0, i - u), min(v, i) + 1):
            key = order.key(p_lts[i - j].i + s_lts[j].i, i)
            if best_key is None or key < best_key:
                best_key = key
                best_j = j
        products.append(bi_mul(p_basis[i - best_j], s_basis[best_j]))
    return products


def _linear_combination(field: GF2m, polys, coeffs) -> BiPoly:
    rows = max(p.c.shape[0] for p in polys)
    cols = max(p.c.shape[1] for p in polys)
    out = np.zeros((rows, cols), dtype=COEFF_DTYPE)
    for p, a in zip(polys, coeffs):
        if a:
            out[: p.c.shape[0], : p.c.shape[1]] ^= field.vscale(p.c, a)
    return BiPoly(field, out)


def merge(
    p_basis: PolyBasis,
    s_basis: PolyBasis,
    delta0: int,
    rng: RngStream,
    *,
    max_random_iters: int = MAX_RANDOM_ITERS,
    r_label: int = 0,
) -> tuple[PolyBasis, MergeStats]:
    """Groebner basis of the product of two ideals given Groebner bases.

    `delta0` is the known leading-degree sum of the product module's basis;
    the random folding loop runs until it is reached.  Draws that would give
    an identically-zero combination are redrawn without being counted.
    """
    field = p_basis[0].field
    order = p_basis.order
    u = len(p_basis) - 1
    v = len(s_basis) - 1
    work = _WorkBasis(field, order)
    for q in initial_product_basis(p_basis, s_basis):
        mon = q.leading_term(order)
        if mon.j in work.slots:  # distinct by construction
            raise PreconditionViolated("initial products collide")
        work.fold(q.c)
    iterations = 0
    fallback = False
    while work.delta() > delta0:
        if iterations >= max_random_iters:
            # deterministic fallback: the set of all pairwise products
            # generates the module, so folding every one must reach delta0
            fallback = True
            for i in range(u + 1):
                for j in range(v + 1):
                    work.fold(bi_mul(p_basis[i], s_basis[j]).c)
            break
        alpha = rng.elements(field, u + 1)
        while not any(alpha):
            alpha = rng.elements(field, u + 1)
        beta = rng.elements(field, v + 1)
        while not any(beta):
            beta = rng.elements(field, v + 1)
        combo = bi_mul(
            _linear_combination(field, p_basis.polys, alpha),
            _linear_combination(field, s_basis.polys, beta),
        )
        work.fold(combo.c)
        iterations += 1
    if work.delta() != delta0:
        raise FallbackExhausted(
            f"leading-degree sum stuck at {work.delta()}, target {delta0}"
        )
    stats = MergeStats(
        r=r_label,
        u=u,
        v=v,
        random_iterations=iterations,
        reduce_steps=work.steps,
        fallback_used=fallback,
    )
    return work.to_basis(), stats


def prune(basis: PolyBasis) -> PolyBasis:
    """Drop redundant elements led by a pure power of y, keeping the smallest."""
    return _prune_pure(basis, lambda j: 0)


def _prune_pure(basis: PolyBasis, expected_xdeg) -> PolyBasis:
    """Shared pruning: elements whose leading x-degree equals expected_xdeg(j)
    are y-power multiples of the smallest such element and are redundant."""
    lts = basis.leading_terms()
    marked = [idx for idx, mon in enumerate(lts) if mon.i == expected_xdeg(mon.j)]
    if len(marked) <= 1:
        return basis
    keep = min(marked, key=lambda idx: basis.order.monomial_key(lts[idx]))
    drop = {idx for idx in marked if idx != keep}
    polys = tuple(p for idx, p in enumerate(basis.polys) if idx not in drop)
    return PolyBasis(polys, basis.order)


def _binary_exponentiation(
    seed_basis: PolyBasis,
    r: int,
    rng: RngStream,
    stats: InterpolationStats,
    threshold,
    prune_expected,
    max_random_iters: int,
) -> PolyBasis:
    """Shared doubling loop: square, then multiply the seed back in on 1-bits."""
    basis = seed_basis
    bits = bin(r)[2:]
    big_r = 1
    for bit in bits[1:]:
        big_r *= 2
        merged, ms = merge(
            basis, basis, threshold(len(basis), len(basis), big_r), rng,
            max_random_iters=max_random_iters, r_label=big_r,
        )
        stats.merge_calls.append(ms)
        basis = _prune_pure(merged, prune_expected(big_r))
        if bit == "1":
            big_r += 1
            merged, ms = merge(
                basis, seed_basis, threshold(len(basis), len(seed_basis), big_r), rng,
                max_random_iters=max_random_iters, r_label=big_r,
            )
            stats.merge_calls.append(ms)
            basis = _prune_pure(merged, prune_expected(big_r))
    return basis


def interpolate(
    pts: InterpPoints,
    r: int,
    k: int,
    rng: RngStream,
    *,
    max_random_iters: int = MAX_RANDOM_ITERS,
) -> tuple[PolyBasis, InterpolationStats]:
    """Groebner basis of the multiplicity-r interpolation ideal.

    Seeds the multiplicity-1 basis by folding y^j (y - T) until an element
    led by a pure power of y appears, then raises the ideal to the r-th power
    by binary exponentiation over `merge`.  Uses the (1, k-1)-weighted order
    throughout.
    """
    if r < 1:
        raise ValueError("multiplicity must be >= 1")
    field = pts.field
    n = pts.n
    order = TermOrder(1, k - 1)
    stats = InterpolationStats()
    phi = UniPoly.from_roots(field, pts.xs)
    t_poly = UniPoly.lagrange(field, pts.xs, pts.ys)
    work = _WorkBasis(field, order)
    work.fold(BiPoly.from_uni(phi).c)
    y_minus_t = BiPoly.from_rows(field, [t_poly, UniPoly.one(field)])
    j = 0
    while True:
        work.fold(y_minus_t.shift_y(j).c)
        j += 1
        top = work.slots.get(j)
        if top is not None and top.t == 0:
            break
        if j > n + 1:
            raise RuntimeError("seed basis failed to close; input points invalid")
    stats.setup_reduce_steps = work.steps
    seed = work.to_basis()
    basis = _binary_exponentiation(
        seed, r, rng, stats,
        threshold=lambda u1, u2, big_r: n * big_r * (big_r + 1) // 2,
        prune_expected=lambda big_r: (lambda j: 0),
        max_random_iters=max_random_iters,
    )
    return basis, stats


def reencode_threshold(u1: int, u2: int, big_r: int, n: int, k: int) -> int:
    """Leading-degree-sum target for a product of re-encoded bases of sizes
    u1 and u2 at multiplicity big_r."""
    if u1 < 1 or u2 < 1:
        raise ValueError("basis sizes must be >= 1")
    w = u1 + u2
    return (n - k) * big_r * (big_r + 1) // 2 + k * (w - 2 - big_r) * (w - 1 - big_r) // 2


def reencode_interpolate(
    pts: InterpPoints,
    r: int,
    k: int,
    rng: RngStream,
    *,
    max_random_iters: int = MAX_RANDOM_ITERS,
) -> tuple[PolyBasis, InterpolationStats]:
    """Binary interpolation after re-encoding away the first k points.

    Splits the locator polynomial as phi = psi * theta with psi over the
    first k points, writes T = h*psi + g, and works in the transformed
    variable z with the (1, -1)-weighted order.  Results live in (x, z);
    `back_substitute` maps them to (x, y).
    """
    if r < 1:
        raise ValueError("multiplicity must be >= 1")
    if k < 1:
        raise ValueError("re-encoding needs k >= 1")
    if k >= pts.n:
        raise ValueError("re-encoding needs k < n")
    field = pts.field
    n = pts.n
    order = TermOrder(1, -1)
    stats = InterpolationStats()
    psi = UniPoly.from_roots(field, pts.xs[:k])
    theta = UniPoly.from_roots(field, pts.xs[k:])
    t_poly = UniPoly.lagrange(field, pts.xs, pts.ys)
    h_poly, _g = divmod(t_poly, psi)
    work = _WorkBasis(field, order)
    work.fold(BiPoly.from_uni(theta).c)
    psi_pow = UniPoly.one(field)
    j = 0
    while True:
        # (psi*z)^j (z - h) has row j = psi^j * h and row j+1 = psi^j
        gen = BiPoly.from_rows(
            field,
            [UniPoly.zero(field)] * j + [psi_pow * h_poly, psi_pow],
        )
        work.fold(gen.c)
        j += 1
        top = work.slots.get(j)
        if top is not None and top.t == (j - 1) * k:
            break
        if j > n + 1:
            raise RuntimeError("re-encoded seed basis failed to close")
        psi_pow = psi_pow * psi
    stats.setup_reduce_steps = work.steps
    seed = work.to_basis()
    basis = _binary_exponentiation(
        seed, r, rng, stats,
        threshold=lambda u1, u2, big_r: reencode_threshold(u1, u2, big_r, n, k),
        prune_expected=lambda big_r: (lambda j: (j - big_r) * k),
        max_random_iters=max_random_iters,
    )
    return basis, stats


def back_substitute(p: BiPoly, g: UniPoly, psi: UniPoly, r: int) -> BiPoly:
    """Map a re-encoded module element from (x, z) back to (x, y).

    Row j becomes p_j(x) (y - g)^j psi^(r-j); rows above r must instead be
    exactly divisible by psi^(j-r), which is asserted.
    """
    field = p.field
    if p.is_zero():
        return BiPoly.zero(field)
    y_minus_g = BiPoly.from_rows(field, [g, UniPoly.one(field)])
    psi_pows = [UniPoly.one(field)]
    for _ in range(max(r, p.ydeg - r if p.ydeg > r else 0)):
        psi_pows.append(psi_pows[-1] * psi)
    acc = BiPoly.zero(field)
    ymg_pow = BiPoly.from_uni(UniPoly.one(field))
    for j in range(p.ydeg + 1):
        if j > 0:
            ymg_pow = bi_mul(ymg_pow, y_minus_g)
        row = p.row(j)
        if row.is_zero():
            continue
        if j <= r:
            factor = row * psi_pows[r - j]
        else:
            quotient, remainder = divmod(row, psi_pows[j - r])
            if not remainder.is_zero():
                raise InexactDivision(
                    f"row {j} not divisible by the order-{j - r} locator power"
                )
            factor = quotient
        acc = acc + bi_mul_uni(ymg_pow, factor)
    return acc
