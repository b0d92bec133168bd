import random

import pytest

from hwlength.errors import UnsupportedExtensionDegree
from hwlength.field import make_field
from hwlength.semilinear import (
    SemilinearOperator,
    Subspace,
    char_poly,
    classify,
    determinant,
    dump_operator,
    iterate_matrix,
    load_operator,
    mat_frob,
    mat_mul,
    nilpotent_part,
    quasilength,
    rank,
    restricted_matrix,
    stable_part,
    stable_rank,
)
from hwlength.upoly import UniPoly

from oracles import charpoly_sympy, matpow_mod, rank_mod_p, stable_part_iterative

F5 = make_field(5)
F9 = make_field(3, 2, [1, 0, 1])
COMPANION_X2_MINUS_2 = [[0, 2], [1, 0]]


def op(field, rows):
    return SemilinearOperator.from_ints(field, rows)


def test_iterate_examples():
    T = op(F5, [[1, 2], [3, 4]])
    assert iterate_matrix(T, 0) == [[1, 0], [0, 1]]
    for r in range(5):
        assert iterate_matrix(T, r) == matpow_mod([[1, 2], [3, 4]], r, 5)
    t = F9.gen().value
    T9 = SemilinearOperator(F9, [[t]])
    # t * t^3 = t * 2t = 2 t^2 = -2 = 1
    assert iterate_matrix(T9, 2) == [[1]]


def test_stable_and_nilpotent_examples():
    ident = op(F5, [[1, 0], [0, 1]])
    jordan = op(F5, [[0, 1], [0, 0]])
    diag = op(F5, [[1, 0], [0, 0]])
    assert stable_part(ident).dim == 2
    assert stable_part(jordan).dim == 0
    assert stable_part(diag).basis == ((1, 0),)
    assert nilpotent_part(ident).dim == 0
    assert nilpotent_part(jordan).dim == 2
    assert nilpotent_part(diag).basis == ((0, 1),)


def test_stable_rank_examples():
    assert stable_rank(op(F5, [[1, 0, 0], [0, 1, 0], [0, 0, 1]])) == 3
    assert stable_rank(op(F5, [[0, 1], [0, 0]])) == 0
    assert stable_rank(op(F5, COMPANION_X2_MINUS_2)) == 2


def test_quasilength_examples():
    assert quasilength(op(F5, [[1, 0], [0, 1]])) == 2
    assert quasilength(op(F5, COMPANION_X2_MINUS_2)) == 1
    assert quasilength(op(F5, [[0, 1], [0, 0]])) == 0
    with pytest.raises(UnsupportedExtensionDegree):
        quasilength(op(F9, [[1]]))


def test_classify_examples():
    assert str(classify(op(F5, [[1]]))) == "Ordinary"
    assert str(classify(op(F5, [[0]]))) == "Nilpotent"
    assert str(classify(op(F5, [[1, 0], [0, 0]]))) == "Intermediate(1)"
    empty = SemilinearOperator(F5, [])
    assert str(classify(empty)) == "Ordinary"
    assert stable_rank(empty) == 0 and quasilength(empty) == 0


def test_char_poly_examples():
    assert char_poly([[1, 0], [0, 1]], 5) == UniPoly(5, [1, 3, 1])
    assert char_poly([[0, 0], [0, 0]], 5) == UniPoly(5, [0, 0, 1])
    assert char_poly(COMPANION_X2_MINUS_2, 5) == UniPoly(5, [-2, 0, 1])


@pytest.mark.parametrize("p", [3, 5, 7, 13, 101])
def test_char_poly_matches_sympy(p):
    rng = random.Random(p)
    for _ in range(40):
        n = rng.randint(1, 7)
        rows = [[rng.randrange(p) if rng.random() < 0.7 else 0 for _ in range(n)] for _ in range(n)]
        assert list(char_poly(rows, p).coeffs) == charpoly_sympy(rows, p)


def random_operator(rng, field, dim):
    # mix in structured cases so nilpotent and intermediate operators show up
    style = rng.random()
    rows = [[rng.randrange(field.q) for _ in range(dim)] for _ in range(dim)]
    if style < 0.3:
        rows = [[x if j > i else 0 for j, x in enumerate(r)] for i, r in enumerate(rows)]
    elif style < 0.6:
        for i in rng.sample(range(dim), rng.randint(0, dim)):
            rows[i] = [0] * dim
    return SemilinearOperator(field, rows)


def random_invertible(rng, field, dim):
    while True:
        P = [[rng.randrange(field.q) for _ in range(dim)] for _ in range(dim)]
        if rank(field, P) == dim:
            return P


FIELDS = [make_field(3), make_field(5), make_field(7), make_field(13),
          make_field(3, 2), make_field(5, 2), make_field(7, 2)]


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_fitting_and_invariance(field):
    rng = random.Random(field.q)
    for _ in range(30):
        dim = rng.randint(0, 6)
        T = random_operator(rng, field, dim)
        S, N = stable_part(T), nilpotent_part(T)
        assert S.dim + N.dim == dim
        assert S.intersection_dim(N) == 0
        # F kills the nilpotent part after dim steps
        for v in N.basis:
            w = list(v)
            for _ in range(dim):
                w = T.apply(w)
            assert not any(w)
        # F maps the stable part onto itself
        images = [T.apply(v) for v in S.basis]
        assert Subspace.span(field, dim, images) == S
        P = random_invertible(rng, field, dim)
        U = T.conjugate(P)
        assert stable_rank(U) == stable_rank(T)
        assert classify(U) == classify(T)
        if field.e == 1:
            assert quasilength(U) == quasilength(T)


@pytest.mark.parametrize("field", FIELDS, ids=str)
def test_chain_stabilizes_and_matches_iterative_oracle(field):
    rng = random.Random(field.q + 1)
    for _ in range(30):
        dim = rng.randint(1, 6)
        T = random_operator(rng, field, dim)
        ranks = [rank(field, iterate_matrix(T, r)) for r in range(2 * dim + 2)]
        assert all(a >= b for a, b in zip(ranks, ranks[1:]))
        assert len(set(ranks[dim:])) == 1
        unit = [[int(i == j) for j in range(dim)] for i in range(dim)]
        vecs, _ = stable_part_iterative(T.apply, unit, lambda vs: Subspace.span(field, dim, vs).dim)
        assert Subspace.span(field, dim, vecs) == stable_part(T)


@pytest.mark.parametrize("p", [3, 5, 7, 13])
def test_quasilength_bounds_and_split_case(p):
    field = make_field(p)
    rng = random.Random(p + 100)
    for _ in range(40):
        dim = rng.randint(1, 6)
        T = random_operator(rng, field, dim)
        s, q = stable_rank(T), quasilength(T)
        assert q <= s
        if s:
            B = restricted_matrix(T)
            assert determinant(field, B) != 0
            cp = char_poly(B, p)
            splits = sum(1 for r in range(p) if cp(r) == 0)
            linear = _linear_factor_count(cp)
            assert (q == s) == (linear == s)


def _linear_factor_count(f):
    p = f.p
    count = 0
    for r in range(p):
        lin = UniPoly(p, [-r, 1])
        while f.degree >= 1:
            q, rem = f.divrem(lin)
            if not rem.is_zero():
                break
            f = q
            count += 1
    return count


def test_diagonalizable_split_operator_has_equal_ranks():
    # eigenvalues 1, 2, 3 over F_7: splits completely, so ql = stable rank
    T = op(make_field(7), [[1, 0, 0], [0, 2, 0], [0, 0, 3]])
    assert quasilength(T) == stable_rank(T) == 3


def test_rank_against_sympy():
    rng = random.Random(0)
    for _ in range(50):
        p = rng.choice([3, 5, 7, 13])
        rows = [[rng.randrange(p) for _ in range(5)] for _ in range(rng.randint(1, 6))]
        assert rank(make_field(p), rows) == rank_mod_p(rows, p)


def test_matrix_file_roundtrip():
    T = SemilinearOperator(F9, [[F9.gen().value, 1], [0, 5]])
    text = dump_operator(T)
    assert text.splitlines()[:2] == ["3 2 2", "1 0 1"]
    assert load_operator(text) == T
    T5 = load_operator("5 1 2\n0 2\n1 0\n")
    assert T5.matrix == ((0, 2), (1, 0))


def test_semilinear_twist_matters_over_f9():
    # over F_9 the twist changes A_2, so it differs from the plain matrix square
    t = F9.gen().value
    T = SemilinearOperator(F9, [[t, 0], [1, 0]])
    plain = mat_mul(F9, T.matrix, T.matrix)
    twisted = mat_mul(F9, T.matrix, mat_frob(F9, T.matrix))
    assert iterate_matrix(T, 2) == twisted != plain
