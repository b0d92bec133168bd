"""Univariate polynomials over a prime field F_p.

Coefficients are plain ints in ``[0, p)``, lowest degree first.  Only what the
quasilength computation needs is here: ring arithmetic, gcd, squarefree
decomposition and distinct-degree factor counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, List, Sequence, Tuple


def _strip(coeffs: List[int]) -> List[int]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


@dataclass(frozen=True)
class UniPoly:
    p: int
    coeffs: Tuple[int, ...]

    def __init__(self, p: int, coeffs: Iterable[int] = ()):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(_strip([c % p for c in coeffs])))

    @classmethod
    def x(cls, p: int) -> "UniPoly":
        return cls(p, (0, 1))

    @classmethod
    def constant(cls, p: int, c: int) -> "UniPoly":
        return cls(p, (c,))

    @property
    def degree(self) -> int:
        """Degree, with -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def lead(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def _check(self, other: "UniPoly") -> None:
        if other.p != self.p:
            raise ValueError(f"field mismatch: F_{self.p} vs F_{other.p}")

    def __add__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(self.p, out)

    def __neg__(self) -> "UniPoly":
        return UniPoly(self.p, [-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other: "UniPoly") -> "UniPoly":
        self._check(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return UniPoly(self.p)
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return UniPoly(self.p, out)

    def scale(self, c: int) -> "UniPoly":
        return UniPoly(self.p, [c * x for x in self.coeffs])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        return self.scale(pow(self.lead(), -1, self.p))

    def divrem(self, other: "UniPoly") -> Tuple["UniPoly", "UniPoly"]:
        self._check(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        p = self.p
        rem = list(self.coeffs)
        db = other.degree
        if len(rem) <= db:
            return UniPoly(p), self
        inv = pow(other.lead(), -1, p)
        b = other.coeffs
        quo = [0] * (len(rem) - db)
        for k in range(len(rem) - 1 - db, -1, -1):
            c = rem[k + db] * inv % p
            quo[k] = c
            if c:
                for j in range(db + 1):
                    rem[k + j] = (rem[k + j] - c * b[j]) % p
        return UniPoly(p, quo), UniPoly(p, rem[:db])

    def __floordiv__(self, other: "UniPoly") -> "UniPoly":
        return self.divrem(other)[0]

    def __mod__(self, other: "UniPoly") -> "UniPoly":
        return self.divrem(other)[1]

    def derivative(self) -> "UniPoly":
        return UniPoly(self.p, [i * c for i, c in enumerate(self.coeffs)][1:])

    def powmod(self, k: int, modulus: "UniPoly") -> "UniPoly":
        result = UniPoly(self.p, (1,)) % modulus
        base = self % modulus
        while k:
            if k & 1:
                result = (result * base) % modulus
            base = (base * base) % modulus
            k >>= 1
        return result

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return f"UniPoly(F_{self.p}: 0)"
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            else:
                terms.append(f"{c}*{mono}")
        return f"UniPoly(F_{self.p}: {' + '.join(terms)})"


def gcd(f: UniPoly, g: UniPoly) -> UniPoly:
    """Monic gcd; gcd(0, 0) is the zero polynomial."""
    while not g.is_zero():
        f, g = g, f % g
    return f.monic()


def upoly_arith(f: UniPoly, g: UniPoly, kind: str):
    if kind == "add":
        return f + g
    if kind == "mul":
        return f * g
    if kind == "divrem":
        return f.divrem(g)
    if kind == "gcd":
        return gcd(f, g)
    raise ValueError(f"unknown kind {kind!r}")


def _pth_root(f: UniPoly) -> UniPoly:
    # over F_p every coefficient is its own p-th root
    p = f.p
    return UniPoly(p, f.coeffs[::p])


def squarefree_decomposition(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    """Return ``[(part, multiplicity), ...]`` with monic, squarefree, pairwise coprime parts.

    The product of ``part**multiplicity`` equals ``f`` up to its leading
    coefficient.  Parts are listed by increasing multiplicity.
    """
    if f.is_zero():
        raise ValueError("squarefree decomposition of the zero polynomial")
    parts = _sqf_monic(f.monic())
    return sorted(parts, key=lambda t: t[1])


def _sqf_monic(f: UniPoly) -> List[Tuple[UniPoly, int]]:
    out: List[Tuple[UniPoly, int]] = []
    if f.degree <= 0:
        return out
    c = gcd(f, f.derivative())
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        part = w // y
        if part.degree > 0:
            out.append((part.monic(), i))
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        # whatever is left is a p-th power: its derivative vanished
        for part, m in _sqf_monic(_pth_root(c)):
            out.append((part, m * f.p))
    return out


def distinct_degree_counts(f: UniPoly) -> List[Tuple[int, int]]:
    """For squarefree ``f`` return ``[(d, number of irreducible factors of degree d)]``."""
    p = f.p
    f = f.monic()
    x = UniPoly.x(p)
    counts = []
    h = x % f if f.degree > 0 else x
    d = 1
    while f.degree >= 2 * d:
        h = h.powmod(p, f)
        g = gcd(h - x, f)
        if g.degree > 0:
            counts.append((d, g.degree // d))
            f = f // g
            h = h % f
        d += 1
    if f.degree > 0:
        counts.append((f.degree, 1))
    return counts


def count_irreducible_factors(f: UniPoly) -> int:
    """Number of irreducible factors of ``f`` counted with multiplicity."""
    if f.degree < 1:
        raise ValueError("count_irreducible_factors needs a non-constant polynomial")
    total = 0
    for part, mult in squarefree_decomposition(f):
        total += mult * sum(k for _, k in distinct_degree_counts(part))
    return total


def is_irreducible(f: UniPoly) -> bool:
    if f.degree < 1:
        return False
    parts = squarefree_decomposition(f)
    if len(parts) != 1 or parts[0][1] != 1:
        return False
    return distinct_degree_counts(parts[0][0]) == [(f.degree, 1)]


def first_irreducible(p: int, degree: int) -> UniPoly:
    """Smallest monic irreducible of the given degree, scanning coefficients in base p."""
    if degree == 1:
        return UniPoly(p, (0, 1))
    for n in range(p ** degree):
        coeffs = []
        for _ in range(degree):
            coeffs.append(n % p)
            n //= p
        f = UniPoly(p, coeffs + [1])
        if is_irreducible(f):
            return f
    raise AssertionError("unreachable: irreducibles exist in every degree")


def from_roots(p: int, roots: Sequence[int]) -> UniPoly:
    out = UniPoly(p, (1,))
    for r in roots:
        out = out * UniPoly(p, (-r, 1))
    return out
