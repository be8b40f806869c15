import pytest

from _support import rand_det1, rand_umrow, seeded
from wittbench import (ZZ, Matrix, ModularRing, UnimodularRow, kernel_idempotent, pfaffian,
                       psi, sl4_act, sphere_ring, suslin_matrix, symbol_transform_check,
                       umrow_make, vaserstein_symbol)
from wittbench.errors import BadCertificate, NotUnimodular, SizeCap, WrongLength
from wittbench.rings import polynomial_ring
from wittbench.vaserstein import act_on_row


def test_unimodular_row_checks_section():
    umrow_make(ZZ, [2, 3], [-1, 1])
    with pytest.raises(NotUnimodular):
        umrow_make(ZZ, [2, 4], [1, 0])
    r = umrow_make(ModularRing(4), ["1", "2"], ["1", "0"])
    assert UnimodularRow.from_json(r.to_json()) == r


def test_suslin_small_cases():
    R = polynomial_ring("a1 a2 b1 b2")
    S = suslin_matrix([R("a1"), R("a2")], [R("b1"), R("b2")], R)
    assert S.entry_strings() == [["a1", "a2"], ["-b2", "b1"]]
    assert S.det() == R("a1*b1 + a2*b2")
    assert suslin_matrix([ZZ(5)], [ZZ(7)], ZZ).entry_strings() == [["5"]]


def test_suslin_unimodular_row_has_det_one():
    rng = seeded(31)
    for R in (ZZ, ModularRing(4)):
        for n in (2, 3, 4):
            r = rand_umrow(R, n, rng)
            assert suslin_matrix(r).det() == 1


def test_suslin_cap():
    with pytest.raises(SizeCap):
        suslin_matrix([1] * 6, [0] * 5 + [1], ZZ)


def test_kernel_idempotent():
    rng = seeded(32)
    R = ModularRing(5)
    for _ in range(10):
        r = rand_umrow(R, 3, rng)
        Q = kernel_idempotent(r)
        assert Q @ Q == Q
        assert (r.as_row() @ Q).is_zero()
        assert (Q @ r.section_column()).is_zero()


def test_basepoint_and_orientation():
    row = umrow_make(ZZ, [0, 0, 1], [0, 0, 1])
    assert vaserstein_symbol(row, 1) == psi(2)
    V = vaserstein_symbol(row, -1)
    assert V.entry_strings()[0][1] == "-1"
    assert pfaffian(V) == -1


def test_universal_symbol():
    S = sphere_ring(3)
    row = umrow_make(S, ["x1", "x2", "x3"], ["y1", "y2", "y3"])
    V = vaserstein_symbol(row)
    assert V.entry_strings() == [
        ["0", "y3", "-y2", "x1"],
        ["-y3", "0", "y1", "x2"],
        ["y2", "-y1", "0", "x3"],
        ["-x1", "-x2", "-x3", "0"]]
    assert pfaffian(V) == 1


def test_wrong_length():
    with pytest.raises(WrongLength):
        vaserstein_symbol(umrow_make(ZZ, [0, 1], [0, 1]))


def test_symbol_pfaffian_is_one_on_random_rows():
    rng = seeded(33)
    for R in (ZZ, ModularRing(4), polynomial_ring("λ")):
        for _ in range(15):
            assert pfaffian(vaserstein_symbol(rand_umrow(R, 3, rng))) == 1


def test_transform_law():
    rng = seeded(34)
    for R in (ModularRing(4), ZZ, polynomial_ring("λ")):
        for _ in range(15):
            row = rand_umrow(R, 3, rng)
            phi = rand_det1(R, 3, rng)
            assert symbol_transform_check(row, phi, 1)
            assert symbol_transform_check(row, phi, -1)


def test_action_rejects_non_det_one():
    row = umrow_make(ZZ, [0, 0, 1], [0, 0, 1])
    with pytest.raises(BadCertificate):
        act_on_row(row, Matrix.diag(ZZ, [1, 1, -1]))
    with pytest.raises(BadCertificate):
        sl4_act(row, Matrix.diag(ZZ, [1, 1, 1, -1]))


def test_sl4_act_extends_row_action():
    rng = seeded(35)
    R = ModularRing(5)
    for _ in range(10):
        row = rand_umrow(R, 3, rng)
        phi = rand_det1(R, 3, rng)
        out = sl4_act(row, phi.direct_sum(Matrix.identity(R, 1)))
        assert out.a == act_on_row(row, phi).a
