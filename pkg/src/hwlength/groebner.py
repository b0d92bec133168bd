"""Buchberger's algorithm over F_p in degree-reverse-lexicographic order.

Just enough to decide whether a homogeneous ideal cuts out the empty set in
projective space: that happens exactly when every variable has a pure power
among the leading monomials of a Groebner basis.
"""

from __future__ import annotations

from typing import Dict, List, Optional, Sequence, Tuple

from .errors import ResourceCap

Exps = Tuple[int, ...]
Poly = Dict[Exps, int]

DEFAULT_STEP_CAP = 10 ** 6


def degrevlex_key(a: Exps):
    return (sum(a), tuple(-x for x in reversed(a)))


def leading(f: Poly) -> Exps:
    return max(f, key=degrevlex_key)


def _divides(a: Exps, b: Exps) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _lcm(a: Exps, b: Exps) -> Exps:
    return tuple(max(x, y) for x, y in zip(a, b))


class _Reducer:
    def __init__(self, p: int, cap: int):
        self.p = p
        self.cap = cap
        self.steps = 0

    def tick(self):
        self.steps += 1
        if self.steps > self.cap:
            raise ResourceCap(self.steps - 1)

    def monic(self, f: Poly) -> Poly:
        inv = pow(f[leading(f)], -1, self.p)
        return {a: c * inv % self.p for a, c in f.items()}

    def reduce(self, f: Poly, basis: Sequence[Tuple[Exps, Poly]]) -> Poly:
        """Full reduction of ``f`` modulo monic ``basis`` entries ``(lead, poly)``."""
        p = self.p
        f = dict(f)
        out: Poly = {}
        while f:
            lm = leading(f)
            c = f[lm]
            for glm, g in basis:
                if _divides(glm, lm):
                    self.tick()
                    shift = tuple(x - y for x, y in zip(lm, glm))
                    for b, cb in g.items():
                        key = tuple(x + y for x, y in zip(b, shift))
                        v = (f.get(key, 0) - c * cb) % p
                        if v:
                            f[key] = v
                        else:
                            f.pop(key, None)
                    break
            else:
                out[lm] = c
                del f[lm]
        return out


def groebner_basis(polys: Sequence[Poly], p: int, step_cap: int = DEFAULT_STEP_CAP) -> List[Poly]:
    """Reduced monic Groebner basis of the ideal generated by ``polys`` over F_p.

    Raises :class:`ResourceCap` once more than ``step_cap`` elementary
    reduction steps have been spent.
    """
    red = _Reducer(p, step_cap)
    basis: List[Tuple[Exps, Poly]] = []
    for f in polys:
        f = {a: c % p for a, c in f.items() if c % p}
        if f:
            f = red.reduce(f, basis)
            if f:
                f = red.monic(f)
                basis.append((leading(f), f))
    pairs = {(i, j) for j in range(len(basis)) for i in range(j)}
    done = set()
    while pairs:
        i, j = min(pairs, key=lambda ij: (sum(_lcm(basis[ij[0]][0], basis[ij[1]][0])), ij[1], ij[0]))
        pairs.discard((i, j))
        done.add((i, j))
        li, fi = basis[i]
        lj, fj = basis[j]
        lcm = _lcm(li, lj)
        if all(min(x, y) == 0 for x, y in zip(li, lj)):
            continue  # coprime leading monomials
        if _chain_skip(i, j, lcm, basis, done):
            continue
        s = _spoly(fi, li, fj, lj, lcm, p)
        s = red.reduce(s, basis)
        if s:
            s = red.monic(s)
            k = len(basis)
            basis.append((leading(s), s))
            pairs.update((m, k) for m in range(k))
    return _interreduce(basis, red)


def _chain_skip(i, j, lcm, basis, done) -> bool:
    for k, (lk, _) in enumerate(basis):
        if k in (i, j) or not _divides(lk, lcm):
            continue
        if (min(i, k), max(i, k)) in done and (min(j, k), max(j, k)) in done:
            return True
    return False


def _spoly(fi: Poly, li: Exps, fj: Poly, lj: Exps, lcm: Exps, p: int) -> Poly:
    si = tuple(x - y for x, y in zip(lcm, li))
    sj = tuple(x - y for x, y in zip(lcm, lj))
    out: Poly = {}
    for a, c in fi.items():
        key = tuple(x + y for x, y in zip(a, si))
        out[key] = (out.get(key, 0) + c) % p
    for a, c in fj.items():
        key = tuple(x + y for x, y in zip(a, sj))
        out[key] = (out.get(key, 0) - c) % p
    return {a: c for a, c in out.items() if c}


def _interreduce(basis: List[Tuple[Exps, Poly]], red: _Reducer) -> List[Poly]:
    # drop elements whose leading monomial is divisible by another's
    minimal = []
    for k, (lk, fk) in enumerate(basis):
        redundant = any(
            _divides(lm, lk) and (lm != lk or m < k)
            for m, (lm, _) in enumerate(basis) if m != k
        )
        if not redundant:
            minimal.append((lk, fk))
    out = []
    for k, (lk, fk) in enumerate(minimal):
        others = [b for m, b in enumerate(minimal) if m != k]
        tail = {a: c for a, c in fk.items() if a != lk}
        out.append({lk: 1, **red.reduce(tail, others)})
    return sorted(out, key=lambda f: degrevlex_key(leading(f)))


def has_empty_projective_locus(basis: Sequence[Poly], nvars: int) -> bool:
    """True when every variable has a pure power among the leading monomials."""
    leads = [leading(f) for f in basis]
    if any(sum(a) == 0 for a in leads):
        return True
    for i in range(nvars):
        if not any(a[i] > 0 and sum(a) == a[i] for a in leads):
            return False
    return True
