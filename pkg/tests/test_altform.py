import pytest
from hypothesis import given, settings, strategies as st

from _support import rand_alt, rand_matrix, seeded
from wittbench import ZZ, AlternatingMatrix, Matrix, ModularRing, perp, pfaffian, psi, sigma
from wittbench.altform import congruence, empty_form, is_alternating, stabilize
from wittbench.errors import NotAlternating
from wittbench.rings import polynomial_ring


def test_pfaffian_small_formulas():
    R = polynomial_ring("a b c d e f")
    M2 = AlternatingMatrix(R, [["0", "a"], ["-a", "0"]])
    assert pfaffian(M2) == R("a")
    M4 = AlternatingMatrix(R, [
        ["0", "a", "b", "c"],
        ["-a", "0", "d", "e"],
        ["-b", "-d", "0", "f"],
        ["-c", "-e", "-f", "0"]])
    assert pfaffian(M4) == R("a*f - b*e + c*d")
    assert pfaffian(M4) ** 2 == M4.det()


@pytest.mark.parametrize("n", range(0, 5))
def test_standard_forms(n):
    for R in (ZZ, ModularRing(2), ModularRing(4)):
        assert pfaffian(psi(n, R)) == 1
        if n:
            S = sigma(n, R)
            assert S @ S == Matrix.identity(R, 2 * n)
            assert S.T == S


def test_char_two_diagonal_is_checked():
    R = ModularRing(2)
    # skew-symmetric over F2 (1 = -1) but with a nonzero diagonal
    with pytest.raises(NotAlternating):
        AlternatingMatrix(R, [[1, 1], [1, 0]])
    assert not is_alternating(Matrix(R, [[1, 1], [1, 0]]))
    assert is_alternating(Matrix(R, [[0, 1], [1, 0]]))


def test_rejections():
    with pytest.raises(NotAlternating):
        AlternatingMatrix(ZZ, [[0, 1, 2], [-1, 0, 3], [-2, -3, 0]])
    with pytest.raises(NotAlternating):
        AlternatingMatrix(ZZ, [[0, 1], [1, 0]])
    with pytest.raises(NotAlternating):
        AlternatingMatrix.from_json({"ring": {"kind": "int"}, "rows": [["0", "1"], ["-1", "0"]],
                                     "alternating": False})


def test_json_carries_flag_and_revalidates():
    d = psi(2).to_json()
    assert d["alternating"] is True
    assert AlternatingMatrix.from_json(d) == psi(2)
    d["rows"][0][1] = "5"
    with pytest.raises(NotAlternating):
        AlternatingMatrix.from_json(d)


def test_empty_form_is_neutral():
    M = psi(2)
    assert perp(empty_form(), M) == M
    assert pfaffian(empty_form()) == 1
    assert stabilize(M, 0) == M
    assert stabilize(M, 1) == psi(3)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from([2, 4, 6]))
def test_pfaffian_laws_property(seed, n):
    rng = seeded(seed)
    for R in (ZZ, ModularRing(4), ModularRing(5)):
        M = rand_alt(R, n, rng)
        N = rand_alt(R, 2, rng)
        G = rand_matrix(R, n, rng)
        pm = pfaffian(M)
        assert pm * pm == M.det()
        assert pfaffian(perp(M, N)) == pm * pfaffian(N)
        assert pfaffian(congruence(G, M)) == G.det() * pm
