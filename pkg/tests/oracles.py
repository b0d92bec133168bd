"""Independent reference computations used by the tests.

Nothing here calls into the code paths it is used to check.
"""

from itertools import product

import sympy


def expand_power_naive(terms, k, p):
    """g^k mod p by k-1 successive dict multiplications by g (no squaring)."""
    nv = len(next(iter(terms)))
    acc = {(0,) * nv: 1}
    for _ in range(k):
        nxt = {}
        for a, ca in acc.items():
            for b, cb in terms.items():
                key = tuple(x + y for x, y in zip(a, b))
                nxt[key] = (nxt.get(key, 0) + ca * cb) % p
        acc = {a: c for a, c in nxt.items() if c}
    return acc


def hasse_witt_oracle(terms, n, d, p):
    """Hasse-Witt matrix read from a naive expansion of g^(p-1)."""
    basis = sorted(
        (a for a in product(range(1, d + 1), repeat=n + 1) if sum(a) == d),
        key=lambda a: tuple(reversed(a)),
    )
    big = expand_power_naive(terms, p - 1, p)
    return [[big.get(tuple(p * x - y for x, y in zip(a, b)), 0) for a in basis] for b in basis]


def rank_mod_p(rows, p):
    """Rank over F_p through sympy's exact rational arithmetic on a GF(p) matrix."""
    if not rows:
        return 0
    from sympy.polys.matrices import DomainMatrix
    from sympy import GF
    dm = DomainMatrix([[GF(p)(x) for x in r] for r in rows], (len(rows), len(rows[0])), GF(p))
    return dm.rank()


def matpow_mod(rows, k, p):
    n = len(rows)
    out = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(k):
        out = [[sum(out[i][t] * rows[t][j] for t in range(n)) % p for j in range(n)] for i in range(n)]
    return out


def charpoly_sympy(rows, p):
    """Characteristic polynomial over Z then reduced mod p, low degree first."""
    x = sympy.Symbol("x")
    cp = sympy.Matrix(rows).charpoly(x).all_coeffs()[::-1]
    return [int(c) % p for c in cp]


def monic_irreducibles(p, max_degree):
    """All monic irreducible polynomials over F_p of degree <= max_degree, by sieving products."""
    def mul(a, b):
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
        return tuple(out)

    irreducible = {1: [(c, 1) for c in range(p)]}
    for deg in range(2, max_degree + 1):
        reducible = set()
        for da in range(1, deg // 2 + 1):
            for a in _all_monic(p, da):
                for b in _all_monic(p, deg - da):
                    reducible.add(mul(a, b))
        irreducible[deg] = [f for f in _all_monic(p, deg) if f not in reducible]
    return irreducible


def _all_monic(p, deg):
    for tail in product(range(p), repeat=deg):
        yield tuple(tail) + (1,)


def trial_division_count(coeffs, p, irreducibles):
    """Irreducible factors with multiplicity of a monic polynomial of degree <= 2*max_degree+1."""
    f = [c % p for c in coeffs]
    while f and f[-1] == 0:
        f.pop()
    count = 0
    for deg in sorted(irreducibles):
        for h in irreducibles[deg]:
            while len(f) - 1 >= deg:
                q, r = _divmod(f, list(h), p)
                if any(r):
                    break
                f = q
                count += 1
    if len(f) > 1:
        # a leftover of degree <= 2*max_degree+1 with no factor of degree <= max_degree is irreducible
        count += 1
    return count


def _divmod(f, g, p):
    f = list(f)
    inv = pow(g[-1], -1, p)
    q = [0] * (len(f) - len(g) + 1)
    for k in range(len(f) - len(g), -1, -1):
        c = f[k + len(g) - 1] * inv % p
        q[k] = c
        for j, gj in enumerate(g):
            f[k + j] = (f[k + j] - c * gj) % p
    r = f[: len(g) - 1]
    return q, r


def stable_part_iterative(apply, basis_vectors, rank_of):
    """Push the whole space through F until the image dimension stops shrinking."""
    current = list(basis_vectors)
    dims = [rank_of(current)]
    while True:
        current = [apply(v) for v in current]
        dims.append(rank_of(current))
        if dims[-1] == dims[-2]:
            return current, dims
