"""Finite fields F_p and F_{p^e} with their Frobenius.

Elements are handled in two forms.  Hot loops work on *raw* ints in
``[0, q)`` whose base-p digits are the coefficients in the power basis
``1, t, ..., t^(e-1)``; for a prime field the raw int is the residue itself.
``FieldElement`` wraps a raw value with its context for readable code and
operator syntax.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence, Tuple

from .errors import DegreeMismatch, InvalidInput, NotPrime, ReducibleModulus
from .upoly import UniPoly, first_irreducible, is_irreducible

# Deterministic for n < 3.3e24, which covers the 2^62 ceiling with room to spare.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

MAX_PRIME = 1 << 62


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin primality test, exact for all n < 2^62."""
    if n < 2:
        return False
    for b in _MR_BASES:
        if n % b == 0:
            return n == b
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> int:
    if not isinstance(p, int) or p <= 2 or p >= MAX_PRIME or not is_prime(p):
        raise NotPrime(p)
    return p


@dataclass(frozen=True)
class FieldCtx:
    """The field F_q, q = p^e, presented as F_p[t]/(mod_poly)."""

    p: int
    e: int = 1
    mod_poly: Optional[Tuple[int, ...]] = None
    q: int = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "q", self.p ** self.e)

    # raw-element arithmetic
    def _digits(self, a: int):
        p = self.p
        out = []
        for _ in range(self.e):
            out.append(a % p)
            a //= p
        return out

    def _pack(self, digits) -> int:
        p = self.p
        a = 0
        for c in reversed(digits):
            a = a * p + c
        return a

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        return self._pack([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        return self._pack([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        p, e = self.p, self.e
        if e == 1:
            return a * b % p
        if a == 0 or b == 0:
            return 0
        x, y = self._digits(a), self._digits(b)
        prod = [0] * (2 * e - 1)
        for i, xi in enumerate(x):
            if xi:
                for j, yj in enumerate(y):
                    prod[i + j] += xi * yj
        m = self.mod_poly
        for k in range(2 * e - 2, e - 1, -1):
            c = prod[k] % p
            if c:
                # t^e = -(m_0 + ... + m_{e-1} t^{e-1})
                for j in range(e):
                    prod[k - e + j] -= c * m[j]
        return self._pack([c % p for c in prod[:e]])

    def pow(self, a: int, k: int) -> int:
        if self.e == 1:
            return pow(a, k, self.p)
        if k < 0:
            a, k = self.inv(a), -k
        result, base = 1, a
        while k:
            if k & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            k >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in a finite field")
        if self.e == 1:
            return pow(a, -1, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def frob(self, a: int, r: int = 1) -> int:
        """a^(p^r); the identity on a prime field."""
        if self.e == 1:
            return a
        r %= self.e
        for _ in range(r):
            a = self.pow(a, self.p)
        return a

    def elements(self):
        return range(self.q)

    def element(self, value) -> "FieldElement":
        """Wrap an int (prime-field residue) or a coefficient sequence."""
        if isinstance(value, int):
            if self.e == 1:
                return FieldElement(self, value % self.p)
            return FieldElement(self, self._pack([value % self.p] + [0] * (self.e - 1)))
        digits = [int(c) % self.p for c in value]
        if len(digits) > self.e:
            raise DegreeMismatch(f"{len(digits)} coefficients for an extension of degree {self.e}")
        digits += [0] * (self.e - len(digits))
        return FieldElement(self, self._pack(digits))

    def from_raw(self, a: int) -> "FieldElement":
        return FieldElement(self, a)

    def gen(self) -> "FieldElement":
        """The class of t, or 1 in a prime field."""
        return self.element([0, 1] if self.e > 1 else [1])

    def __str__(self) -> str:
        return f"F_{self.p}" if self.e == 1 else f"F_{self.p}^{self.e}"


def make_field(p: int, e: int = 1, mod_poly: Optional[Sequence[int]] = None) -> FieldCtx:
    """Validated field context.

    ``mod_poly`` lists coefficients low to high.  When ``e > 1`` and no
    modulus is given, the smallest monic irreducible of degree ``e`` is used.
    """
    check_prime(p)
    if not isinstance(e, int) or e < 1:
        raise InvalidInput(f"extension degree must be >= 1, got {e}")
    if e == 1:
        if mod_poly is not None and len(UniPoly(p, mod_poly).coeffs) != 2:
            raise DegreeMismatch("a prime field takes no modulus (or a linear one)")
        return FieldCtx(p, 1, None)
    if mod_poly is None:
        f = first_irreducible(p, e)
    else:
        f = UniPoly(p, mod_poly)
        if f.degree != e:
            raise DegreeMismatch(f"modulus has degree {f.degree}, expected {e}")
        if f.lead() != 1:
            raise InvalidInput("modulus must be monic")
    if not is_irreducible(f):
        raise ReducibleModulus(f"{f} is reducible over F_{p}")
    return FieldCtx(p, e, f.coeffs)


@dataclass(frozen=True)
class FieldElement:
    ctx: FieldCtx
    value: int

    @property
    def coeffs(self) -> Tuple[int, ...]:
        return tuple(self.ctx._digits(self.value))

    def _other(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.ctx != self.ctx:
                raise ValueError("elements of different fields")
            return other.value
        return self.ctx.element(other).value

    def __add__(self, other):
        return FieldElement(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.ctx, self.ctx.neg(self.value))

    def __pow__(self, k: int):
        return FieldElement(self.ctx, self.ctx.pow(self.value, k))

    def __bool__(self):
        return self.value != 0

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, int):
            return self.value == self.ctx.element(other).value
        return NotImplemented

    def __hash__(self):
        return hash((self.ctx, self.value))

    def inverse(self) -> "FieldElement":
        return FieldElement(self.ctx, self.ctx.inv(self.value))

    def frobenius(self, r: int = 1) -> "FieldElement":
        return frobenius(self, r)

    def __repr__(self):
        if self.ctx.e == 1:
            return f"{self.value} (mod {self.ctx.p})"
        terms = [f"{c}*t^{i}" if i else str(c) for i, c in enumerate(self.coeffs) if c]
        return f"{' + '.join(terms) or '0'} in {self.ctx}"


def arith(a: FieldElement, b: FieldElement, kind: str) -> FieldElement:
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if kind == "div":
        return a / b
    raise ValueError(f"unknown kind {kind!r}")


def frobenius(a: FieldElement, r: int = 1) -> FieldElement:
    if r < 0:
        raise ValueError("frobenius power must be non-negative")
    return FieldElement(a.ctx, a.ctx.frob(a.value, r))
