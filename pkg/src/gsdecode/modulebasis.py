"""Groebner bases of F[x]-submodules of F[x,y].

A basis is in Groebner form when its leading terms have pairwise-distinct
y-degrees; delta() of such a basis is the sum of the leading-term x-degrees.
The reduction core keeps one polynomial per leading y-degree and cancels a
folded polynomial against the slots until it either lands on a free y-degree
or vanishes; this is the multi-pivot analogue of the extended Euclidean
algorithm and is shared by every interpolation algorithm here.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple

import numpy as np

from .field import COEFF_DTYPE, GF2m
from .bipoly import (
    BiPoly,
    Monomial,
    TermOrder,
    _leading_term_raw,
    _row_degrees,
    _trim2d,
    bi_mul,
    bi_mul_uni,
)
from .unipoly import UniPoly


class NotGroebnerShape(ValueError):
    """Two basis elements share a leading y-degree."""


class PreconditionViolated(ValueError):
    """Input basis does not satisfy the documented shape requirements."""


@dataclass(frozen=True)
class InterpPoints:
    """Interpolation points (x_i, y_i) with pairwise-distinct x_i."""

    field: GF2m
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        xs = np.asarray(self.xs, dtype=COEFF_DTYPE)
        ys = np.asarray(self.ys, dtype=COEFF_DTYPE)
        object.__setattr__(self, "xs", xs)
        object.__setattr__(self, "ys", ys)
        if xs.shape != ys.shape or xs.ndim != 1:
            raise ValueError("xs and ys must be 1-d arrays of equal length")
        if len(np.unique(xs)) != len(xs):
            raise ValueError("x coordinates must be pairwise distinct")
        for arr in (xs, ys):
            if arr.size and (arr.min() < 0 or arr.max() >= self.field.q):
                raise ValueError("coordinate out of field range")

    @property
    def n(self) -> int:
        return len(self.xs)

    def pairs(self) -> Iterable[tuple[int, int]]:
        return zip(self.xs.tolist(), self.ys.tolist())


class VerifyResult(NamedTuple):
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class PolyBasis:
    """Ordered basis of a module, kept sorted by leading y-degree."""

    polys: tuple[BiPoly, ...]
    order: TermOrder

    def __len__(self) -> int:
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, idx: int) -> BiPoly:
        return self.polys[idx]

    def leading_terms(self) -> list[Monomial]:
        return [p.leading_term(self.order) for p in self.polys]

    def leading_ydegs(self) -> list[int]:
        return [mon.j for mon in self.leading_terms()]

    def delta(self) -> int:
        """Sum of leading-term x-degrees; requires Groebner shape."""
        lts = self.leading_terms()
        ydegs = [mon.j for mon in lts]
        if len(set(ydegs)) != len(ydegs):
            raise NotGroebnerShape(f"repeated leading y-degrees: {sorted(ydegs)}")
        return sum(mon.i for mon in lts)

    def smallest(self) -> BiPoly:
        return min(self.polys, key=lambda p: self.order.monomial_key(p.leading_term(self.order)))

    def dump(self) -> str:
        blocks = [f"order: {self.order}"]
        blocks.extend(p.to_text() for p in self.polys)
        return "\n\n".join(blocks) + "\n"

    @classmethod
    def load(cls, field: GF2m, text: str) -> "PolyBasis":
        blocks = [b for b in text.split("\n\n") if b.strip()]
        head = blocks[0].strip()
        if not head.startswith("order:"):
            raise ValueError("missing order header")
        wx_text, wy_text = head[len("order:"):].split(",")
        order = TermOrder(int(wx_text), int(wy_text))
        polys = [BiPoly.from_text(field, b) for b in blocks[1:]]
        return cls(tuple(polys), order)


# -- reduction core ----------------------------------------------------------


class _Slot:
    __slots__ = ("c", "_logc", "t", "coeff")

    def __init__(self, c: np.ndarray, t: int, coeff: int):
        self.c = c
        self._logc = None  # log-table image of c, built on first use
        self.t = t
        self.coeff = coeff

    def logc(self, field: GF2m) -> np.ndarray:
        if self._logc is None:
            self._logc = field.log[self.c]
        return self._logc


class _WorkBasis:
    """Mutable Groebner basis keyed by leading y-degree.

    fold() reduces one polynomial in a preallocated scratch buffer; every
    monomial appearing during reduction is bounded by the largest leading
    term involved, which bounds the buffer width up front and keeps the hot
    loop allocation-free.
    """

    __slots__ = ("field", "order", "slots", "steps")

    def __init__(self, field: GF2m, order: TermOrder):
        self.field = field
        self.order = order
        self.slots: dict[int, _Slot] = {}
        self.steps = 0  # inner reduction iterations performed

    @classmethod
    def from_polys(cls, field: GF2m, order: TermOrder, polys: Iterable[BiPoly]) -> "_WorkBasis":
        work = cls(field, order)
        for p in polys:
            mon = p.leading_term(order)
            if mon.j in work.slots:
                raise PreconditionViolated(f"leading y-degree {mon.j} occurs twice")
            work.slots[mon.j] = _Slot(p.c, mon.i, mon.coeff)
        return work

    def delta(self) -> int:
        return sum(slot.t for slot in self.slots.values())

    def fold(self, c: np.ndarray) -> None:
        """Reduce one polynomial against the basis, extending it if needed."""
        f = self.field
        wx, wy = self.order.wx, self.order.wy
        c = _trim2d(c)
        mon = _leading_term_raw(c, self.order)
        if mon is None:
            return
        exp, log = f.exp, f.log
        slots = self.slots
        # capacity: rows from the widest participant; width from the largest
        # leading-term weight reachable (swaps can raise the working leading
        # term up to a slot's), plus the y-span when y carries negative weight
        rows_cap = max([c.shape[0]] + [s.c.shape[0] for s in slots.values()])
        wmax = wx * mon.i + wy * mon.j
        for j, s in slots.items():
            wmax = max(wmax, wx * s.t + wy * j)
        width_cap = max(
            [wmax + (rows_cap if wy < 0 else 0) + 1, c.shape[1]]
            + [s.c.shape[1] for s in slots.values()]
        )
        buf = np.zeros((rows_cap, width_cap), dtype=COEFF_DTYPE)
        buf[: c.shape[0], : c.shape[1]] = c
        rowdeg = np.full(rows_cap, -1, dtype=np.int64)
        rowdeg[: c.shape[0]] = _row_degrees(c)
        js = np.arange(rows_cap, dtype=np.int64)
        dead = np.iinfo(np.int64).min

        def lead():
            live = rowdeg >= 0
            if not live.any():
                return None
            keys = np.where(live, (rowdeg * wx + js * wy) * (rows_cap + 1) + js, dead)
            jb = int(np.argmax(keys))
            return jb, int(rowdeg[jb])

        def snapshot() -> np.ndarray:
            # rowdeg gives exact bounds, so no trimming scan is needed
            top = int(np.max(np.nonzero(rowdeg >= 0)[0]))
            act = int(rowdeg.max()) + 1
            return buf[: top + 1, :act].copy()

        pos = lead()
        while pos is not None:
            j, t = pos
            coeff = int(buf[j, t])
            slot = slots.get(j)
            if slot is None:
                slots[j] = _Slot(snapshot(), t, coeff)
                return
            self.steps += 1
            if t <= slot.t:
                # working polynomial divides the slot entry: swap them
                d = slot.t - t
                lf = int(log[f.div(slot.coeff, coeff)])
                act = int(rowdeg.max()) + 1
                tmp = np.zeros_like(buf)
                sc = slot.c
                tmp[: sc.shape[0], : sc.shape[1]] = sc
                tmp[:, d : d + act] ^= exp[log[buf[:, :act]] + lf]
                slots[j] = _Slot(snapshot(), t, coeff)
                buf = tmp
                nz = buf != 0
                rowdeg = np.where(
                    nz.any(axis=1), width_cap - 1 - np.argmax(nz[:, ::-1], axis=1), -1
                )
            else:
                d = t - slot.t
                lf = int(log[f.div(coeff, slot.coeff)])
                sc = slot.c
                nr, ncol = sc.shape
                buf[:nr, d : d + ncol] ^= exp[slot.logc(f) + lf]
                hi = max(int(rowdeg[:nr].max()), d + ncol - 1) + 1
                nz = buf[:nr, :hi] != 0
                rowdeg[:nr] = np.where(
                    nz.any(axis=1), hi - 1 - np.argmax(nz[:, ::-1], axis=1), -1
                )
            pos = lead()
        # reduced to zero: basis unchanged

    def to_basis(self) -> PolyBasis:
        polys = tuple(
            BiPoly._raw(self.field, self.slots[j].c) for j in sorted(self.slots)
        )
        return PolyBasis(polys, self.order)


def reduce_extend(basis: PolyBasis, p: BiPoly) -> PolyBasis:
    """Groebner basis of the module spanned by `basis` and one new polynomial.

    The input basis must already have pairwise-distinct leading y-degrees.
    If `p` reduces to zero the basis is returned unchanged.
    """
    work = _WorkBasis.from_polys(basis_field(basis), basis.order, basis.polys)
    if not p.is_zero():
        work.fold(p.c)
    return work.to_basis()


def basis_field(basis: PolyBasis) -> GF2m:
    if not basis.polys:
        raise ValueError("empty basis has no field")
    return basis.polys[0].field


# -- iterative interpolation ---------------------------------------------------


def iia(pts: InterpPoints, r: int, rho: int, order: TermOrder) -> PolyBasis:
    """Iterative interpolation: rho polynomials vanishing to order r everywhere.

    Starts from (1, y, ..., y^(rho-1)) and, for every point and every Hasse
    derivative order (a, b) with a+b < r, cancels the derivative across the
    working polynomials against the smallest one, which is then multiplied by
    (x - x_i).  Output element j keeps leading term a_j x^(t_j) y^j, and the
    t_j sum to n*r*(r+1)/2.
    """
    if r < 1 or rho < 1:
        raise ValueError("r and rho must be >= 1")
    f = pts.field
    exp, log = f.exp, f.log
    polys = []
    for j in range(rho):
        c = np.zeros((j + 1, 1), dtype=COEFF_DTYPE)
        c[j, 0] = 1
        polys.append(c)
    tdeg = [0] * rho  # leading x-degree of each working polynomial
    col_masks: dict[tuple[int, int], np.ndarray] = {}

    def masked_cols(alpha: int, width: int) -> np.ndarray:
        key = (alpha, width)
        got = col_masks.get(key)
        if got is None:
            cols = np.arange(alpha, width)
            got = cols[(cols & alpha) == alpha]
            col_masks[key] = got
        return got

    for x0, y0 in pts.pairs():
        max_width = max(p.shape[1] for p in polys) + r * (r + 1) // 2
        xp = f.powers(x0, max_width)
        log_xp = log[xp]
        yp = f.powers(y0, rho)
        log_yp = log[yp]
        for beta in range(r):
            for alpha in range(r - beta):
                deltas = []
                for c in polys:
                    nrows, width = c.shape
                    rows = [j for j in range(beta, nrows) if (j & beta) == beta]
                    if not rows or width <= alpha:
                        deltas.append(0)
                        continue
                    cols = masked_cols(alpha, width)
                    if len(cols) == 0:
                        deltas.append(0)
                        continue
                    sub = c[np.ix_(rows, cols)]
                    rowvals = np.bitwise_xor.reduce(
                        exp[log[sub] + log_xp[cols - alpha][None, :]], axis=1
                    )
                    val = np.bitwise_xor.reduce(
                        exp[log[rowvals] + log_yp[np.asarray(rows) - beta]]
                    )
                    deltas.append(int(val))
                nonzero = [j for j, d in enumerate(deltas) if d]
                if not nonzero:
                    continue
                m_idx = min(nonzero, key=lambda j: order.key(tdeg[j], j))
                qm = polys[m_idx]
                inv_dm = f.inv(deltas[m_idx])
                log_qm = log[qm]
                for j in nonzero:
                    if j == m_idx:
                        continue
                    factor = f.mul(deltas[j], inv_dm)
                    cj = polys[j]
                    rows = max(cj.shape[0], qm.shape[0])
                    cols = max(cj.shape[1], qm.shape[1])
                    if cj.shape != (rows, cols):
                        grown = np.zeros((rows, cols), dtype=COEFF_DTYPE)
                        grown[: cj.shape[0], : cj.shape[1]] = cj
                        cj = grown
                        polys[j] = cj
                    cj[: qm.shape[0], : qm.shape[1]] ^= exp[log_qm + int(log[factor])]
                # multiply the pivot by (x - x0): shift plus scaled copy
                shifted = np.zeros((qm.shape[0], qm.shape[1] + 1), dtype=COEFF_DTYPE)
                shifted[:, 1:] = qm
                if x0:
                    shifted[:, :-1] ^= exp[log_qm + int(log[x0])]
                polys[m_idx] = shifted
                tdeg[m_idx] += 1
    out = tuple(BiPoly._raw(f, _trim2d(c)) for c in polys)
    return PolyBasis(out, order)


# -- basis from explicit generators ---------------------------------------------


def lee_osullivan(
    pts: InterpPoints,
    r: int,
    rho: int,
    k: int,
    order: TermOrder | None = None,
    _steps_out: list | None = None,
) -> PolyBasis:
    """Groebner basis of the multiplicity-r module from its generator chain.

    Builds the generators (y - T)^j phi^(r-j) for j <= r (phi the locator
    polynomial, T the interpolating polynomial of the points) extended by
    y^j-multiples of the last one, and folds them through the reduction core
    one by one.
    """
    if r < 1 or rho < 1:
        raise ValueError("r and rho must be >= 1")
    f = pts.field
    if order is None:
        order = TermOrder(1, k - 1)
    phi = UniPoly.from_roots(f, pts.xs)
    t_poly = UniPoly.lagrange(f, pts.xs, pts.ys)
    y_minus_t = BiPoly.from_rows(f, [t_poly, UniPoly.one(f)])

    phi_pows = [UniPoly.one(f)]
    for _ in range(r):
        phi_pows.append(phi_pows[-1] * phi)
    ymt_pows = [BiPoly.from_uni(UniPoly.one(f))]
    for _ in range(min(r, rho - 1)):
        ymt_pows.append(bi_mul(ymt_pows[-1], y_minus_t))

    gens = []
    for j in range(min(r, rho - 1) + 1):
        gens.append(bi_mul_uni(ymt_pows[j], phi_pows[r - j]))
    for j in range(1, rho - r):
        gens.append(gens[r].shift_y(j))

    work = _WorkBasis(f, order)
    for gen in gens:
        work.fold(gen.c)
    if _steps_out is not None:
        _steps_out.append(work.steps)
    return work.to_basis()


# -- verification oracles ---------------------------------------------------------


def _check_vanishing(basis: PolyBasis, pts: InterpPoints, r: int) -> VerifyResult:
    for idx, p in enumerate(basis.polys):
        for x0, y0 in pts.pairs():
            if not p.has_root_mult(x0, y0, r):
                return VerifyResult(
                    False, f"element {idx} misses multiplicity {r} at ({x0:#x}, {y0:#x})"
                )
    return VerifyResult(True)


def verify_module_basis(basis: PolyBasis, pts: InterpPoints, r: int) -> VerifyResult:
    """Groebner shape + full Hasse vanishing + exact leading-degree sum."""
    try:
        delta = basis.delta()
    except NotGroebnerShape as exc:
        return VerifyResult(False, str(exc))
    target = pts.n * r * (r + 1) // 2
    if delta != target:
        return VerifyResult(False, f"delta {delta} != {target}")
    return _check_vanishing(basis, pts, r)


def verify_ideal_basis(basis: PolyBasis, pts: InterpPoints, r: int, n: int) -> VerifyResult:
    """Module checks plus a pure power of y leading the top element."""
    try:
        delta = basis.delta()
    except NotGroebnerShape as exc:
        return VerifyResult(False, str(exc))
    target = n * r * (r + 1) // 2
    if delta != target:
        return VerifyResult(False, f"delta {delta} != {target}")
    top = max(basis.leading_terms(), key=lambda mon: mon.j)
    if top.i != 0:
        return VerifyResult(False, f"top leading term x^{top.i} y^{top.j} is not pure in y")
    return _check_vanishing(basis, pts, r)
