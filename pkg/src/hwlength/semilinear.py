"""p-semilinear endomorphisms of F_q^dim.

An operator is a square matrix A acting by ``F(v) = A * sigma(v)`` where
sigma raises every coordinate to the p-th power.  Matrix entries are raw
field ints (see :mod:`hwlength.field`).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List, Sequence, Tuple

from .errors import InvalidInput, UnsupportedExtensionDegree
from .field import FieldCtx, make_field
from .upoly import UniPoly, count_irreducible_factors

Matrix = List[List[int]]
Vector = Tuple[int, ...]


# ---------------------------------------------------------------------------
# plain linear algebra over F_q


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul(ctx: FieldCtx, a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if ctx.e == 1:
        p = ctx.p
        cols = list(zip(*b))
        return [[sum(x * y for x, y in zip(row, col)) % p for col in cols] for row in a]
    out = []
    for row in a:
        new = []
        for j in range(len(b[0]) if b else 0):
            acc = 0
            for k, x in enumerate(row):
                if x and b[k][j]:
                    acc = ctx.add(acc, ctx.mul(x, b[k][j]))
            new.append(acc)
        out.append(new)
    return out


def mat_vec(ctx: FieldCtx, a: Sequence[Sequence[int]], v: Sequence[int]) -> List[int]:
    return [row[0] for row in mat_mul(ctx, a, [[x] for x in v])] if a else []


def mat_frob(ctx: FieldCtx, a: Sequence[Sequence[int]], r: int = 1) -> Matrix:
    """Apply sigma^r to every entry; negative r is taken mod e."""
    return [[ctx.frob(x, r % ctx.e) for x in row] for row in a]


def transpose(a: Sequence[Sequence[int]]) -> Matrix:
    return [list(col) for col in zip(*a)]


def rref(ctx: FieldCtx, rows: Sequence[Sequence[int]]) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form; returns the nonzero rows and their pivot columns."""
    m = [list(r) for r in rows]
    pivots: List[int] = []
    ncols = len(m[0]) if m else 0
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = ctx.inv(m[r][c])
        m[r] = [ctx.mul(inv, x) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(ctx: FieldCtx, a: Sequence[Sequence[int]]) -> int:
    return len(rref(ctx, a)[0]) if a else 0


def kernel(ctx: FieldCtx, a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of {v : a v = 0}."""
    red, pivots = rref(ctx, a) if a else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for row, pc in zip(red, pivots):
            v[pc] = ctx.neg(row[f])
        basis.append(v)
    return basis


def determinant(ctx: FieldCtx, a: Sequence[Sequence[int]]) -> int:
    m = [list(r) for r in a]
    n = len(m)
    det = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if m[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = ctx.neg(det)
        det = ctx.mul(det, m[c][c])
        inv = ctx.inv(m[c][c])
        for i in range(c + 1, n):
            if m[i][c]:
                f = ctx.mul(m[i][c], inv)
                m[i] = [ctx.sub(x, ctx.mul(f, y)) for x, y in zip(m[i], m[c])]
    return det


# ---------------------------------------------------------------------------
# domain types


@dataclass(frozen=True)
class Subspace:
    """Subspace of F_q^ambient; ``basis`` rows are in reduced echelon form."""

    field: FieldCtx
    ambient: int
    basis: Tuple[Vector, ...]

    @classmethod
    def span(cls, field: FieldCtx, ambient: int, vectors: Sequence[Sequence[int]]) -> "Subspace":
        rows = [list(v) for v in vectors if any(v)]
        red, _ = rref(field, rows) if rows else ([], [])
        return cls(field, ambient, tuple(tuple(r) for r in red))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence[int]) -> bool:
        return Subspace.span(self.field, self.ambient, list(self.basis) + [list(v)]).dim == self.dim

    def intersection_dim(self, other: "Subspace") -> int:
        both = Subspace.span(self.field, self.ambient, list(self.basis) + list(other.basis))
        return self.dim + other.dim - both.dim


@dataclass(frozen=True)
class SemilinearOperator:
    field: FieldCtx
    matrix: Tuple[Tuple[int, ...], ...]

    def __init__(self, field: FieldCtx, matrix: Sequence[Sequence[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in matrix)
        if any(len(r) != len(rows) for r in rows):
            raise InvalidInput("operator matrix must be square")
        if any(not 0 <= x < field.q for r in rows for x in r):
            raise InvalidInput("matrix entries must be canonical field elements")
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "matrix", rows)

    @classmethod
    def from_ints(cls, field: FieldCtx, matrix: Sequence[Sequence[int]]) -> "SemilinearOperator":
        """Build from prime-field residues (any integers, reduced mod p)."""
        return cls(field, [[field.element(x).value for x in row] for row in matrix])

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def apply(self, v: Sequence[int]) -> List[int]:
        ctx = self.field
        return mat_vec(ctx, self.matrix, [ctx.frob(x, 1) for x in v])

    def conjugate(self, P: Sequence[Sequence[int]]) -> "SemilinearOperator":
        """Matrix of the same map in the basis given by the columns of P: P^-1 A sigma(P)."""
        ctx = self.field
        n = self.dim
        aug = [list(P[i]) + identity(n)[i] for i in range(n)]
        red, pivots = rref(ctx, aug)
        if pivots[:n] != list(range(n)):
            raise InvalidInput("change of basis matrix is singular")
        inv = [row[n:] for row in red]
        return SemilinearOperator(ctx, mat_mul(ctx, mat_mul(ctx, inv, self.matrix), mat_frob(ctx, P, 1)))


# ---------------------------------------------------------------------------
# Frobenius iteration and the stable / nilpotent decomposition


def iterate_matrix(T: SemilinearOperator, r: int) -> Matrix:
    """A_r with F^r(v) = A_r * sigma^r(v); A_r = A * sigma(A_{r-1})."""
    if r < 0:
        raise ValueError("iteration count must be non-negative")
    ctx = T.field
    out = identity(T.dim)
    for _ in range(r):
        out = mat_mul(ctx, T.matrix, mat_frob(ctx, out, 1))
    return out


def stable_part(T: SemilinearOperator) -> Subspace:
    """Intersection of the images of all F^r: the column space of A_dim."""
    a = iterate_matrix(T, T.dim)
    return Subspace.span(T.field, T.dim, transpose(a))


def nilpotent_part(T: SemilinearOperator) -> Subspace:
    """Vectors killed by some power of F: sigma^-dim applied to ker A_dim."""
    ctx = T.field
    a = iterate_matrix(T, T.dim)
    ker = kernel(ctx, a, T.dim)
    back = -T.dim % ctx.e
    return Subspace.span(ctx, T.dim, [[ctx.frob(x, back) for x in v] for v in ker])


def stable_rank(T: SemilinearOperator) -> int:
    if T.dim == 0:
        return 0
    return rank(T.field, iterate_matrix(T, T.dim))


def restricted_matrix(T: SemilinearOperator) -> Matrix:
    """Matrix of F on the stable part, in its echelon basis (prime fields only)."""
    ctx = T.field
    if ctx.e != 1:
        raise UnsupportedExtensionDegree("restriction to the stable part is linear only over F_p")
    stable = stable_part(T)
    _, pivots = rref(ctx, stable.basis) if stable.basis else ([], [])
    images = [T.apply(b) for b in stable.basis]
    # echelon rows carry an identity block at the pivots, so coordinates are read off there
    return [[img[pc] for img in images] for pc in pivots]


def char_poly(M: Sequence[Sequence[int]], p: int) -> UniPoly:
    """Monic characteristic polynomial over F_p via Hessenberg reduction."""
    n = len(M)
    H = [[x % p for x in row] for row in M]
    for m in range(1, n - 1):
        piv = next((i for i in range(m, n) if H[i][m - 1]), None)
        if piv is None:
            continue
        if piv != m:
            H[m], H[piv] = H[piv], H[m]
            for row in H:
                row[m], row[piv] = row[piv], row[m]
        inv = pow(H[m][m - 1], -1, p)
        for r in range(m + 1, n):
            u = H[r][m - 1] * inv % p
            if u:
                H[r] = [(x - u * y) % p for x, y in zip(H[r], H[m])]
                for row in H:
                    row[m] = (row[m] + u * row[r]) % p
    polys = [UniPoly(p, (1,))]
    x = UniPoly.x(p)
    for k in range(1, n + 1):
        nxt = (x - UniPoly.constant(p, H[k - 1][k - 1])) * polys[k - 1]
        prod = 1
        for i in range(1, k):
            prod = prod * H[k - i][k - i - 1] % p
            c = H[k - i - 1][k - 1] * prod % p
            if c:
                nxt = nxt - polys[k - i - 1].scale(c)
        polys.append(nxt)
    return polys[n]


def quasilength(T: SemilinearOperator) -> int:
    """Irreducible-factor count of the characteristic polynomial of F on the stable part."""
    if T.field.e != 1:
        raise UnsupportedExtensionDegree(
            f"quasilength is implemented for prime fields only, got {T.field}")
    if stable_rank(T) == 0:
        return 0
    return count_irreducible_factors(char_poly(restricted_matrix(T), T.field.p))


@dataclass(frozen=True)
class Classification:
    kind: str  # "Ordinary", "Nilpotent" or "Intermediate"
    stable_rank: int

    def __str__(self) -> str:
        if self.kind == "Intermediate":
            return f"Intermediate({self.stable_rank})"
        return self.kind

    @classmethod
    def parse(cls, text: str) -> "Classification":
        """Inverse of ``str``; the stable rank of Ordinary/Nilpotent is not recoverable and set to -1."""
        if text.startswith("Intermediate(") and text.endswith(")"):
            return cls("Intermediate", int(text[len("Intermediate("):-1]))
        if text in ("Ordinary", "Nilpotent"):
            return cls(text, -1)
        raise ValueError(f"unknown classification {text!r}")


def classify(T: SemilinearOperator) -> Classification:
    s = stable_rank(T)
    if s == T.dim:
        return Classification("Ordinary", s)
    if s == 0:
        return Classification("Nilpotent", s)
    return Classification("Intermediate", s)


# ---------------------------------------------------------------------------
# matrix file format


def _parse_entry(ctx: FieldCtx, token: str) -> int:
    parts = token.split(",")
    if ctx.e == 1:
        if len(parts) != 1:
            raise InvalidInput(f"entry {token!r}: tuples are only allowed when e > 1")
        return int(parts[0]) % ctx.p
    if len(parts) != ctx.e:
        raise InvalidInput(f"entry {token!r}: expected {ctx.e} comma-joined coefficients")
    return ctx.element([int(x) for x in parts]).value


def load_operator(text: str) -> SemilinearOperator:
    """Parse ``p e dim`` / [modulus] / dim rows of dim entries."""
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise InvalidInput("empty matrix file")
    try:
        p, e, dim = (int(x) for x in lines[0].split())
    except ValueError:
        raise InvalidInput("first line must be 'p e dim'") from None
    rest = lines[1:]
    modulus = None
    if e > 1:
        if not rest:
            raise InvalidInput("missing modulus line")
        modulus = [int(x) for x in rest[0].replace(",", " ").split()]
        rest = rest[1:]
    ctx = make_field(p, e, modulus)
    if len(rest) != dim:
        raise InvalidInput(f"expected {dim} matrix rows, found {len(rest)}")
    rows = []
    for ln in rest:
        row = [_parse_entry(ctx, tok) for tok in ln.split()]
        if len(row) != dim:
            raise InvalidInput(f"row {ln!r} has {len(row)} entries, expected {dim}")
        rows.append(row)
    return SemilinearOperator(ctx, rows)


def dump_operator(T: SemilinearOperator) -> str:
    ctx = T.field
    lines = [f"{ctx.p} {ctx.e} {T.dim}"]
    if ctx.e > 1:
        lines.append(" ".join(str(c) for c in ctx.mod_poly))
    for row in T.matrix:
        if ctx.e == 1:
            lines.append(" ".join(str(x) for x in row))
        else:
            lines.append(" ".join(",".join(str(c) for c in ctx.from_raw(x).coeffs) for x in row))
    return "\n".join(lines) + "\n"
