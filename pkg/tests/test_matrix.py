import pytest
from hypothesis import given, settings, strategies as st

from _support import rand_det1, rand_matrix, seeded
from wittbench import ZZ, Elementary, Matrix, ModularRing, Permutation, build_generator
from wittbench.errors import (BadCertificate, BadSpec, NotInvertible, NotSquare, ParseError,
                              ShapeMismatch)
from wittbench.matrix import (block_swap, leibniz_det, permutation_sign, permutation_word,
                              special_linear_group, word_product)
from wittbench.rings import polynomial_ring, sphere_ring

RINGS = [ZZ, ModularRing(4), ModularRing(5), ModularRing(2), polynomial_ring("x y"),
         sphere_ring(2)]


@pytest.mark.parametrize("R", RINGS, ids=str)
def test_berkowitz_matches_leibniz(R):
    rng = seeded(11)
    for n in range(0, 6):
        for _ in range(4):
            A = rand_matrix(R, n, rng)
            assert A.det() == leibniz_det(A)


@pytest.mark.parametrize("R", RINGS[:5], ids=str)
def test_det_multiplicative(R):
    rng = seeded(12)
    for n in (1, 2, 3, 4):
        A, B = rand_matrix(R, n, rng), rand_matrix(R, n, rng)
        assert (A @ B).det() == A.det() * B.det()
        assert A.T.det() == A.det()


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(-9, 9), min_size=9, max_size=9))
def test_adjugate_identity_over_z(vals):
    A = Matrix(ZZ, [vals[0:3], vals[3:6], vals[6:9]])
    d = A.det()
    assert A @ A.adjugate() == Matrix.identity(ZZ, 3).scale(d)
    assert A.adjugate() @ A == Matrix.identity(ZZ, 3).scale(d)


def test_inverse_and_certificates():
    R = ModularRing(5)
    A = Matrix(R, [[1, 2], [3, 4]])          # det = -2 = 3 mod 5
    inv = A.inverse()
    assert A @ inv == Matrix.identity(R, 2)
    assert A.inverse(det_inverse=R(2)) == inv
    with pytest.raises(BadCertificate):
        A.inverse(det_inverse=R(3))
    with pytest.raises(NotInvertible):
        Matrix(ZZ, [[1, 2], [3, 4]]).inverse()
    with pytest.raises(NotSquare):
        Matrix(ZZ, [[1, 2]]).det()


def test_det_examples():
    assert Matrix(ZZ, [[1, 2], [3, 4]]).det() == -2
    assert Matrix(ZZ, [], ncols=0).det() == 1
    R = polynomial_ring("a b c d")
    M = Matrix(R, [["a", "b"], ["c", "d"]])
    assert M.det() == R("a*d - b*c")


def test_shapes():
    with pytest.raises(ShapeMismatch):
        Matrix(ZZ, [[1, 2], [3]])
    with pytest.raises(ShapeMismatch):
        Matrix(ZZ, [[1, 2]]) @ Matrix(ZZ, [[1, 2]])
    A = Matrix(ZZ, [[1, 2]]).direct_sum(Matrix(ZZ, [[3], [4]]))
    assert A.entry_strings() == [["1", "2", "0"], ["0", "0", "3"], ["0", "0", "4"]]


def test_json_round_trip():
    R = polynomial_ring("x")
    M = Matrix(R, [["x^2-1", "0"], ["3", "-x"]])
    assert Matrix.from_json(M.to_json()) == M
    assert Matrix.from_json(M.dumps()) == M
    assert M.dumps() == Matrix.from_json(M.dumps()).dumps()
    with pytest.raises(ParseError):
        Matrix.from_json({"rows": [["1"]]})
    with pytest.raises(ParseError):
        Matrix.from_json({"ring": {"kind": "int"}, "rows": [[1.5]]})


def test_elementary_generators():
    R = ModularRing(4)
    E = build_generator(Elementary(1, 3, R(2)), 3)
    assert E.entry_strings() == [["1", "0", "2"], ["0", "1", "0"], ["0", "0", "1"]]
    assert E @ build_generator(Elementary(1, 3, R(2)).inverse(), 3) == Matrix.identity(R, 3)


@pytest.mark.parametrize("perm", [(2, 1), (2, 3, 1), (3, 4, 1, 2), (4, 3, 2, 1, 5)])
def test_permutation_word(perm):
    R = ZZ
    P = build_generator(Permutation(perm), len(perm), R)
    if permutation_sign(perm) < 0:
        # odd permutation matrices have determinant -1, so they are not in E_n
        with pytest.raises(BadSpec):
            permutation_word(perm, R)
        signed = build_generator(Permutation(perm, sign_corrected=True), len(perm), R)
        assert signed.det() == 1
        return
    assert word_product(permutation_word(perm, R), len(perm), R) == P


@pytest.mark.parametrize("r,s", [(2, 2), (2, 4), (4, 6), (6, 2)])
def test_block_swap(r, s):
    R = ModularRing(5)
    spec, B = block_swap(R, r, s)
    assert B.det() == 1
    W = word_product(permutation_word(spec.perm, R), r + s, R)
    assert W == B
    X = Matrix(R, [[i * 7 + j for j in range(r)] for i in range(r)])
    Y = Matrix(R, [[i + 3 * j for j in range(s)] for i in range(s)])
    assert B.T @ Y.direct_sum(X) @ B == X.direct_sum(Y)


def test_special_linear_group_orders():
    assert len(special_linear_group(ModularRing(2), 2)) == 6
    assert len(special_linear_group(ModularRing(3), 2)) == 24
    assert len(special_linear_group(ModularRing(2), 3)) == 168


def test_random_det1_factors():
    rng = seeded(13)
    for R in (ZZ, ModularRing(4), polynomial_ring("λ")):
        for _ in range(20):
            assert rand_det1(R, 3, rng).det() == 1
