"""Projective hypersurfaces over F_p: cohomology basis, Hasse-Witt matrix, smoothness.

H^{n-1}(Y, O_Y) of a degree-d hypersurface Y in P^n is identified with the
kernel of multiplication by g on H^n(P^n, O(-d)), whose basis is the Laurent
monomials x^-a with every a_i >= 1 and sum(a) = d.  Frobenius sends x^-a to
g^(p-1) x^-(pa), so its matrix entry at (row b, column a) is the coefficient
of x^(pa - b) in g^(p-1).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidInput, ResourceCap, VanishesModP, WorkCapExceeded
from .field import FieldCtx, check_prime, make_field
from .groebner import DEFAULT_STEP_CAP, groebner_basis, has_empty_projective_locus
from .mpoly import DEFAULT_MEMORY_BUDGET, Exps, MultiPolyP, MultiPolyZ, _box_mul, _terms_to_box, reduce_mod, simplex
from .semilinear import SemilinearOperator

SMOOTH = "Smooth"
SINGULAR = "Singular"
INCONCLUSIVE = "Inconclusive"

# above this prime the d = n+1 case reads its single entry by truncated convolution
TRUNCATED_PATH_MIN_PRIME = 2000
DEFAULT_WORK_CAP = 2_000_000


@dataclass(frozen=True)
class HypersurfaceP:
    p: int
    n: int
    d: int
    g: MultiPolyP

    @classmethod
    def from_poly(cls, g: MultiPolyP) -> "HypersurfaceP":
        if g.is_zero():
            raise InvalidInput("the zero polynomial does not define a hypersurface")
        if not g.is_homogeneous():
            raise InvalidInput("hypersurface equation must be homogeneous")
        n = g.nvars - 1
        if n < 2:
            raise InvalidInput(f"need at least 3 variables (n >= 2), got {g.nvars}")
        if g.degree < 1:
            raise InvalidInput("hypersurface equation must have positive degree")
        return cls(g.p, n, g.degree, g)

    @property
    def field(self) -> FieldCtx:
        return FieldCtx(self.p)


def cohomology_basis(n: int, d: int) -> List[Exps]:
    """Exponents a with all a_i >= 1 and sum d, in colex order; binomial(d-1, n) of them."""
    if n < 2 or d < 1:
        raise InvalidInput("cohomology_basis needs n >= 2 and d >= 1")
    return [tuple(x + 1 for x in a) for a in simplex(n + 1, d - n - 1)]


def h_dimension(n: int, d: int) -> int:
    return comb(d - 1, n)


@dataclass(frozen=True)
class HasseWittData:
    basis: Tuple[Exps, ...]
    operator: SemilinearOperator

    @property
    def matrix(self) -> Tuple[Tuple[int, ...], ...]:
        return self.operator.matrix


def hasse_witt_matrix(
    H: HypersurfaceP, *, method: str = "auto", budget: int = DEFAULT_MEMORY_BUDGET
) -> HasseWittData:
    """Frobenius on H^{n-1}(Y, O_Y) in the monomial basis.

    ``method``: ``"auto"``, ``"dense"``/``"schoolbook"`` (expand g^(p-1) with
    that power kernel) or ``"truncated"`` (only for d = n+1).
    """
    p, n, d = H.p, H.n, H.d
    basis = tuple(cohomology_basis(n, d))
    ctx = FieldCtx(p)
    if not basis:
        return HasseWittData(basis, SemilinearOperator(ctx, []))
    if method == "auto" and d == n + 1 and p >= TRUNCATED_PATH_MIN_PRIME:
        method = "truncated"
    if method == "truncated":
        if d != n + 1:
            raise InvalidInput("the truncated path only applies when d = n + 1")
        return HasseWittData(basis, SemilinearOperator(ctx, [[hasse_invariant(H.g)]]))
    expansion = H.g.pow(p - 1, method=method, budget=budget)
    target_degree = d * (p - 1)
    rows = []
    for b in basis:
        row = []
        for a in basis:
            e = tuple(p * x - y for x, y in zip(a, b))
            assert sum(e) == target_degree
            row.append(expansion.coeff(e) if min(e) >= 0 else 0)
        rows.append(row)
    return HasseWittData(basis, SemilinearOperator(ctx, rows))


def hasse_invariant(g: MultiPolyP) -> int:
    """Coefficient of (x_0...x_n)^(p-1) in g^(p-1), without the full expansion.

    Multiplying by g never lowers an exponent, so monomials with an exponent
    above p-1 are discarded after every product.  The last variable's exponent
    is implied by the degree.  Since p-1 is even, g^(p-1) = C^2 with
    C = g^((p-1)/2) and the wanted coefficient is one correlation of C with
    its own reflection.
    """
    p, m, d = g.p, g.nvars - 1, g.degree
    if not g.is_homogeneous():
        raise InvalidInput("hasse_invariant needs a homogeneous polynomial")
    if g.nvars - 1 != d - 1:
        raise InvalidInput("hasse_invariant needs degree = number of variables")
    top = p - 1
    box, _ = _truncated_pow(g, top // 2)
    full = np.zeros((p,) * m, dtype=object if p >= (1 << 31) else np.int64)
    full[tuple(slice(0, s) for s in box.shape)] = box
    mirror = full[(slice(None, None, -1),) * m]
    acc = (full * mirror) % p
    return int(acc.sum(dtype=object)) % p


def _truncate(box: np.ndarray, deg: int, p: int) -> np.ndarray:
    """Clip a box to exponents <= p-1, including the implied last one."""
    m = box.ndim
    box = box[(slice(0, p),) * m].copy()
    last = deg - np.indices(box.shape).sum(axis=0)
    box[(last < 0) | (last > p - 1)] = 0
    return box


def _truncated_pow(g: MultiPolyP, k: int):
    p, m, d = g.p, g.nvars - 1, g.degree
    base = _truncate(_terms_to_box(g.terms, m, d, p), d, p)
    if k == 0:
        one = np.zeros((1,) * m, dtype=base.dtype)
        one[(0,) * m] = 1
        return one, 0
    box, deg = base, d
    for bit in bin(k)[3:]:
        box = _truncate(_box_mul(box, box.shape[0] - 1, box, box.shape[0] - 1, p), 2 * deg, p)
        deg *= 2
        if bit == "1":
            box = _truncate(_box_mul(box, box.shape[0] - 1, base, base.shape[0] - 1, p), deg + d, p)
            deg += d
    return box, deg


# ---------------------------------------------------------------------------
# smoothness


def smoothness_check(H: HypersurfaceP, *, step_cap: int = DEFAULT_STEP_CAP) -> str:
    """Smooth, Singular or Inconclusive (step cap hit) for the projective hypersurface."""
    gens = [H.g.terms] + [H.g.partial_derivative(i).terms for i in range(H.n + 1)]
    try:
        gb = groebner_basis(gens, H.p, step_cap)
    except ResourceCap:
        return INCONCLUSIVE
    return SMOOTH if has_empty_projective_locus(gb, H.n + 1) else SINGULAR


def _projective_points(ctx: FieldCtx, nvars: int):
    """Points of P^(nvars-1)(F_q) with first nonzero coordinate equal to 1."""
    q = ctx.q
    for lead in range(nvars):
        for tail in product(range(q), repeat=nvars - lead - 1):
            yield (0,) * lead + (1,) + tail


def _evaluator(ctx: FieldCtx, poly: MultiPolyP, powers):
    terms = [(a, ctx.element(c).value) for a, c in poly.terms.items()]

    def ev(pt) -> int:
        acc = 0
        for a, c in terms:
            v = c
            for i, e in enumerate(a):
                if e:
                    v = ctx.mul(v, powers[pt[i]][e])
                    if not v:
                        break
            acc = ctx.add(acc, v)
        return acc

    return ev


def _defined_over_subfield(ctx: FieldCtx, pt) -> bool:
    e = ctx.e
    for k in range(1, e):
        if e % k == 0 and all(ctx.frob(x, k) == x for x in pt):
            return True
    return False


def singular_points_bruteforce(
    H: HypersurfaceP, max_ext: int, *, work_cap: int = DEFAULT_WORK_CAP
) -> List[Tuple[int, Tuple[Tuple[int, ...], ...]]]:
    """Common zeros of g and all partials over F_{p^e}, e = 1..max_ext.

    Returns ``(e, point)`` pairs with each point listed once, over the
    smallest field tried that contains it; coordinates are coefficient tuples
    in the basis of that field (see ``make_field``).
    """
    if max_ext < 1:
        raise InvalidInput("max_ext must be at least 1")
    nv = H.n + 1
    work = sum((H.p ** (e * nv) - 1) // (H.p ** e - 1) for e in range(1, max_ext + 1))
    if work > work_cap:
        raise WorkCapExceeded(f"{work} points to test exceeds the cap of {work_cap}")
    polys = [H.g] + [H.g.partial_derivative(i) for i in range(nv)]
    polys = [f for f in polys if not f.is_zero()]
    found = []
    for e in range(1, max_ext + 1):
        ctx = make_field(H.p, e)
        powers = [[ctx.pow(x, k) for k in range(H.d + 1)] for x in range(ctx.q)]
        evals = [_evaluator(ctx, f, powers) for f in polys]
        for pt in _projective_points(ctx, nv):
            if all(ev(pt) == 0 for ev in evals) and not _defined_over_subfield(ctx, pt):
                found.append((e, tuple(ctx.from_raw(x).coeffs for x in pt)))
    return found


# ---------------------------------------------------------------------------
# good reduction


@dataclass(frozen=True)
class GoodReduction:
    hypersurface: Optional[HypersurfaceP]
    reason: Optional[str] = None  # VanishesModP, DegreeDrop, SingularFibre, Inconclusive

    @property
    def valid(self) -> bool:
        return self.reason is None

    def __str__(self) -> str:
        return "Valid" if self.valid else f"Bad: {self.reason}"


def good_reduction_check(g: MultiPolyZ, p: int, *, step_cap: int = DEFAULT_STEP_CAP) -> GoodReduction:
    """Degree check first, then smoothness of the reduced hypersurface."""
    check_prime(p)
    try:
        red = reduce_mod(g, p)
    except VanishesModP:
        return GoodReduction(None, "VanishesModP")
    if red.degree_dropped:
        return GoodReduction(None, "DegreeDrop")
    H = HypersurfaceP.from_poly(red.poly)
    verdict = smoothness_check(H, step_cap=step_cap)
    if verdict == SMOOTH:
        return GoodReduction(H)
    if verdict == SINGULAR:
        return GoodReduction(None, "SingularFibre")
    return GoodReduction(None, "Inconclusive")
