"""Multivariate polynomials over Z and over F_p.

``MultiPolyZ`` is a plain sparse map from exponent tuples to Python ints.
``MultiPolyP`` keeps coefficients mod p either sparsely or, for large
homogeneous powers, as a dense numpy box: a homogeneous polynomial of degree
D in x_0..x_n is stored through its first n exponents, the last one being
``D - sum``.  The box layout is what makes Kronecker substitution possible
for the big squarings inside :meth:`MultiPolyP.pow`.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from .errors import InvalidInput, OutOfMemoryBudget, VanishesModP
from .field import FieldCtx
from .polyparse import parse_terms

try:
    import gmpy2
except ImportError:  # pragma: no cover - gmpy2 is a declared dependency
    gmpy2 = None

Exps = Tuple[int, ...]

DEFAULT_MEMORY_BUDGET = 1 << 31
# below this many output coefficients the dict-based schoolbook path is used
SPARSE_POW_LIMIT = 4096
# fewest terms in both factors before Kronecker substitution pays off
KRONECKER_MIN_TERMS = 48


# ---------------------------------------------------------------------------
# exponent simplex


def simplex_size(nvars: int, degree: int) -> int:
    """Number of monomials of the given degree in ``nvars`` variables."""
    if degree < 0:
        return 0
    return comb(degree + nvars - 1, nvars - 1)


def colex_key(a: Exps) -> Exps:
    return tuple(reversed(a))


def simplex_rank(a: Exps) -> int:
    """Position of ``a`` in colex order among vectors of its length and sum."""
    rest = sum(a)
    r = 0
    for i in range(len(a) - 1, 0, -1):
        for v in range(a[i]):
            r += comb(rest - v + i - 1, i - 1)
        rest -= a[i]
    return r


def simplex_unrank(r: int, nvars: int, degree: int) -> Exps:
    out = [0] * nvars
    rest = degree
    for i in range(nvars - 1, 0, -1):
        v = 0
        while True:
            block = comb(rest - v + i - 1, i - 1)
            if r < block:
                break
            r -= block
            v += 1
        out[i] = v
        rest -= v
    out[0] = rest
    return tuple(out)


def simplex(nvars: int, degree: int) -> List[Exps]:
    """All exponent vectors of the given degree, colex order."""
    if nvars == 1:
        return [(degree,)] if degree >= 0 else []
    out = []
    for last in range(degree + 1):
        for head in simplex(nvars - 1, degree - last):
            out.append(head + (last,))
    return out


# ---------------------------------------------------------------------------
# integer polynomials


@dataclass(frozen=True, eq=True)
class MultiPolyZ:
    nvars: int
    terms: Mapping[Exps, int]

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def degree(self) -> int:
        return max((sum(a) for a in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(a) for a in self.terms}) <= 1

    def __len__(self) -> int:
        return len(self.terms)


def parse_poly(text: str, variables: Sequence[str]) -> MultiPolyZ:
    return MultiPolyZ(len(variables), parse_terms(text, variables))


@dataclass(frozen=True)
class Reduction:
    poly: "MultiPolyP"
    degree_dropped: bool
    support_dropped: bool


def reduce_mod(g: MultiPolyZ, field) -> Reduction:
    """Reduce integer coefficients mod p.

    ``field`` is a prime-field ``FieldCtx`` or a prime.
    """
    p = _prime_of(field)
    terms = {a: c % p for a, c in g.terms.items() if c % p}
    if not terms:
        raise VanishesModP(f"every coefficient is divisible by {p}")
    red = MultiPolyP(p, g.nvars, terms)
    return Reduction(red, red.degree < g.degree, len(terms) < len(g.terms))


def _prime_of(field) -> int:
    if isinstance(field, FieldCtx):
        if field.e != 1:
            raise InvalidInput("polynomials mod p need a prime field")
        return field.p
    return int(field)


# ---------------------------------------------------------------------------
# dense box kernel


def _dtype(p: int):
    # c * a with c, a < p must fit in int64 alongside an accumulator < p
    return np.int64 if p < (1 << 31) else object


def _box_shape(m: int, degree: int) -> Tuple[int, ...]:
    return (degree + 1,) * m


def _terms_to_box(terms: Mapping[Exps, int], m: int, degree: int, p: int) -> np.ndarray:
    box = np.zeros(_box_shape(m, degree), dtype=_dtype(p))
    for a, c in terms.items():
        box[a[:m]] = c
    return box


def _box_nonzero_terms(box: np.ndarray, degree: int) -> Dict[Exps, int]:
    idx = np.nonzero(box)
    vals = box[idx]
    cols = [i.tolist() for i in idx]
    out = {}
    for k, c in enumerate(vals.tolist()):
        head = tuple(col[k] for col in cols)
        out[head + (degree - sum(head),)] = int(c)
    return out


def _box_mul_sparse(box: np.ndarray, deg_box: int, terms: Mapping[Exps, int], deg_terms: int, p: int) -> np.ndarray:
    """Product of a dense box with a sparse homogeneous polynomial, by shifted adds."""
    m = box.ndim
    out = np.zeros(_box_shape(m, deg_box + deg_terms), dtype=box.dtype)
    for a, c in terms.items():
        window = tuple(slice(a[k], a[k] + deg_box + 1) for k in range(m))
        out[window] = (out[window] + c * box) % p
    return out


def _box_mul_kronecker(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Dense product via Kronecker substitution into one big-integer multiply.

    Each box is laid out in a row-major array whose every axis has the length
    of the product's axis, then read as the little-endian digits of a single
    integer with fixed-width slots.  Slots never overflow: every output
    coefficient is a sum of at most min(nnz_a, nnz_b) products below p^2.
    """
    m = a.ndim
    da, db = a.shape[0] - 1, b.shape[0] - 1
    side = da + db + 1
    bound = (p - 1) ** 2 * min(np.count_nonzero(a), np.count_nonzero(b))
    width = 4 if bound < (1 << 32) else 8
    dt = np.dtype(f"<u{width}")

    def pack(x: np.ndarray) -> int:
        lay = np.zeros((x.shape[0],) + (side,) * (m - 1), dtype=dt)
        lay[tuple(slice(0, s) for s in x.shape)] = x
        return int.from_bytes(lay.tobytes(), "little")

    ia = pack(a)
    if a is b:
        prod = gmpy2.mpz(ia) ** 2 if gmpy2 else ia * ia
    else:
        ib = pack(b)
        prod = gmpy2.mpz(ia) * gmpy2.mpz(ib) if gmpy2 else ia * ib
    nbytes = width * side ** m
    raw = int(prod).to_bytes(nbytes, "little")
    out = np.frombuffer(raw, dtype=dt).reshape((side,) * m)
    return (out % p).astype(np.int64)


def _box_mul(a: np.ndarray, da: int, b: np.ndarray, db: int, p: int) -> np.ndarray:
    na, nb = np.count_nonzero(a), np.count_nonzero(b)
    bits_ok = (p - 1) ** 2 * min(na, nb) < (1 << 64)
    if min(na, nb) >= KRONECKER_MIN_TERMS and bits_ok and a.dtype != object:
        return _box_mul_kronecker(a, b, p)
    if na < nb:
        a, da, b, db = b, db, a, da
    return _box_mul_sparse(a, da, _box_nonzero_terms(b, db), db, p)


# ---------------------------------------------------------------------------
# polynomials over F_p


class MultiPolyP:
    """Polynomial over F_p in ``nvars`` variables.

    Storage is a sparse dict unless the polynomial came out of a dense
    power; both views are available through :attr:`terms` and :meth:`coeff`.
    """

    __slots__ = ("p", "nvars", "_terms", "_box", "_box_degree")

    def __init__(self, p: int, nvars: int, terms: Optional[Mapping[Exps, int]] = None):
        self.p = p
        self.nvars = nvars
        self._box = None
        self._box_degree = None
        clean = {}
        for a, c in (terms or {}).items():
            if len(a) != nvars:
                raise ValueError(f"exponent {a} has wrong length for {nvars} variables")
            c %= p
            if c:
                clean[tuple(a)] = c
        self._terms = clean

    @classmethod
    def _from_box(cls, p: int, nvars: int, degree: int, box: np.ndarray) -> "MultiPolyP":
        out = cls.__new__(cls)
        out.p, out.nvars = p, nvars
        nnz = int(np.count_nonzero(box))
        if nnz * 16 < simplex_size(nvars, degree):
            out._terms = _box_nonzero_terms(box, degree)
            out._box = out._box_degree = None
        else:
            out._terms = None
            out._box, out._box_degree = box, degree
        return out

    @classmethod
    def one(cls, p: int, nvars: int) -> "MultiPolyP":
        return cls(p, nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, p: int, a: Exps, c: int = 1) -> "MultiPolyP":
        return cls(p, len(a), {tuple(a): c})

    @property
    def n(self) -> int:
        return self.nvars - 1

    @property
    def terms(self) -> Dict[Exps, int]:
        if self._terms is None:
            self._terms = _box_nonzero_terms(self._box, self._box_degree)
        return self._terms

    @property
    def is_dense(self) -> bool:
        return self._box is not None

    def nterms(self) -> int:
        if self._terms is None:
            return int(np.count_nonzero(self._box))
        return len(self._terms)

    def coeff(self, a: Sequence[int]) -> int:
        a = tuple(a)
        if len(a) != self.nvars or min(a, default=0) < 0:
            return 0
        if self._terms is not None:
            return self._terms.get(a, 0)
        if sum(a) != self._box_degree:
            return 0
        return int(self._box[a[: self.nvars - 1]])

    def is_zero(self) -> bool:
        return self.nterms() == 0

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        if self._terms is None:
            return self._box_degree
        return max((sum(a) for a in self._terms), default=-1)

    def is_homogeneous(self) -> bool:
        if self._terms is None:
            return True
        return len({sum(a) for a in self._terms}) <= 1

    def partial_derivative(self, i: int) -> "MultiPolyP":
        if not 0 <= i < self.nvars:
            raise IndexError(f"variable index {i} out of range")
        out = {}
        for a, c in self.terms.items():
            if a[i] and (c * a[i]) % self.p:
                b = list(a)
                b[i] -= 1
                out[tuple(b)] = c * a[i]
        return MultiPolyP(self.p, self.nvars, out)

    def _check(self, other: "MultiPolyP") -> None:
        if (self.p, self.nvars) != (other.p, other.nvars):
            raise ValueError("polynomials over different rings")

    def __add__(self, other: "MultiPolyP") -> "MultiPolyP":
        self._check(other)
        out = dict(self.terms)
        for a, c in other.terms.items():
            out[a] = out.get(a, 0) + c
        return MultiPolyP(self.p, self.nvars, out)

    def __neg__(self) -> "MultiPolyP":
        return self.scale(-1)

    def __sub__(self, other: "MultiPolyP") -> "MultiPolyP":
        return self + (-other)

    def scale(self, c: int) -> "MultiPolyP":
        return MultiPolyP(self.p, self.nvars, {a: c * v for a, v in self.terms.items()})

    def __mul__(self, other: "MultiPolyP") -> "MultiPolyP":
        self._check(other)
        if (
            self.nvars > 1
            and self.is_homogeneous()
            and other.is_homogeneous()
            and not self.is_zero()
            and not other.is_zero()
            and simplex_size(self.nvars, self.degree + other.degree) > SPARSE_POW_LIMIT
        ):
            return self._dense_mul(other)
        return self._schoolbook_mul(other)

    def _schoolbook_mul(self, other: "MultiPolyP") -> "MultiPolyP":
        p = self.p
        out: Dict[Exps, int] = {}
        for a, ca in self.terms.items():
            for b, cb in other.terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                out[key] = (out.get(key, 0) + ca * cb) % p
        return MultiPolyP(p, self.nvars, out)

    def _as_box(self) -> np.ndarray:
        if self._box is not None:
            return self._box
        return _terms_to_box(self._terms, self.nvars - 1, self.degree, self.p)

    def _dense_mul(self, other: "MultiPolyP") -> "MultiPolyP":
        da, db = self.degree, other.degree
        box = _box_mul(self._as_box(), da, other._as_box(), db, self.p)
        return MultiPolyP._from_box(self.p, self.nvars, da + db, box)

    def pow(self, k: int, *, method: str = "auto", budget: int = DEFAULT_MEMORY_BUDGET) -> "MultiPolyP":
        """``self ** k`` by binary exponentiation.

        ``method`` is ``"schoolbook"`` (dict convolution, always available),
        ``"dense"`` (numpy box kernel with Kronecker squaring) or ``"auto"``.
        The dense kernel needs a homogeneous input.
        """
        if k < 0:
            raise ValueError("negative exponent")
        if k == 0:
            return MultiPolyP.one(self.p, self.nvars)
        if self.is_zero():
            return self
        homogeneous = self.is_homogeneous()
        if homogeneous:
            estimate = simplex_size(self.nvars, self.degree * k)
            if estimate > budget:
                raise OutOfMemoryBudget(estimate, budget)
        if method == "auto":
            dense = (
                homogeneous
                and self.nvars > 1
                and simplex_size(self.nvars, self.degree * k) > SPARSE_POW_LIMIT
            )
            method = "dense" if dense else "schoolbook"
        if method == "schoolbook":
            return _binary_pow(self, k, MultiPolyP._schoolbook_mul)
        if method != "dense":
            raise ValueError(f"unknown method {method!r}")
        if not homogeneous:
            raise InvalidInput("the dense power kernel needs a homogeneous polynomial")
        if self.nvars == 1:
            return _binary_pow(self, k, MultiPolyP._schoolbook_mul)
        return self._dense_pow(k)

    def _dense_pow(self, k: int) -> "MultiPolyP":
        p, d, m = self.p, self.degree, self.nvars - 1
        base_terms = self.terms
        box = _terms_to_box(base_terms, m, d, p)
        deg = d
        for bit in bin(k)[3:]:
            box = _square(box, deg, p)
            deg *= 2
            if bit == "1":
                box = _box_mul_sparse(box, deg, base_terms, d, p)
                deg += d
        return MultiPolyP._from_box(p, self.nvars, deg, box)

    def __pow__(self, k: int) -> "MultiPolyP":
        return self.pow(k)

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPolyP):
            return NotImplemented
        return (self.p, self.nvars) == (other.p, other.nvars) and self.terms == other.terms

    def __hash__(self):
        return hash((self.p, self.nvars, frozenset(self.terms.items())))

    def __repr__(self) -> str:
        return f"MultiPolyP(p={self.p}, nvars={self.nvars}, {format_poly(self.terms)})"


def _square(box: np.ndarray, deg: int, p: int) -> np.ndarray:
    return _box_mul(box, deg, box, deg, p)


def _binary_pow(base: MultiPolyP, k: int, mul) -> MultiPolyP:
    result = base
    for bit in bin(k)[3:]:
        result = mul(result, result)
        if bit == "1":
            result = mul(result, base)
    return result


def poly_query(g: MultiPolyP, kind: str, arg=None):
    if kind == "is_homogeneous":
        return g.is_homogeneous()
    if kind == "degree":
        return g.degree
    if kind == "partial_derivative":
        return g.partial_derivative(arg)
    if kind == "coeff":
        return g.coeff(arg)
    raise ValueError(f"unknown query {kind!r}")


def format_poly(terms: Mapping[Exps, int], variables: Optional[Sequence[str]] = None) -> str:
    if not terms:
        return "0"
    nv = len(next(iter(terms)))
    names = list(variables) if variables else [f"x{i}" for i in range(nv)]
    parts = []
    for a in sorted(terms, key=lambda e: (-sum(e), tuple(-x for x in e))):
        c = terms[a]
        mono = "*".join(
            v if e == 1 else f"{v}^{e}" for v, e in zip(names, a) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return " + ".join(parts)
