"""Unimodular rows, Suslin matrices and the Vaserstein symbol of a length-3 row.

Everything is concrete for the free module P0 = R^2 with the orientation
1 -> e1 ^ e2.  The alternating form on ker(a) induced by the orientation is
then (p, q) -> det[p | q | b], where b is the chosen section, and the
symbol is the 4 x 4 matrix

    V((x, u), (y, v)) = eps * det[r x | r y | b] + a(x) v - a(y) u

with r = I - b a the retraction onto ker(a).  eps = -1 gives the opposite
orientation.
"""

import json
from dataclasses import dataclass

from .altform import AlternatingMatrix, congruence, pfaffian
from .errors import (BadCertificate, NotUnimodular, ParseError, ShapeMismatch,
                     SizeCap, WrongLength)
from .matrix import Matrix, _coerce, certify_unit
from .rings import ring_from_descriptor

SUSLIN_MAX_LENGTH = 5


@dataclass(frozen=True)
class UnimodularRow:
    """A row ``a`` with a section ``b`` (a . b = 1), both as payload tuples."""

    ring: object
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ShapeMismatch(f"row length {len(self.a)} vs section length {len(self.b)}")
        R = self.ring
        dot = R.sum(R.mul(x, y) for x, y in zip(self.a, self.b))
        if dot != R.one:
            raise NotUnimodular(f"a.b = {R.to_str(dot)}, expected 1")

    @property
    def n(self):
        return len(self.a)

    def row_strings(self):
        return [self.ring.to_str(x) for x in self.a]

    def to_json(self):
        ts = self.ring.to_str
        return {"ring": self.ring.descriptor(), "a": [ts(x) for x in self.a],
                "b": [ts(x) for x in self.b]}

    @classmethod
    def from_json(cls, d, ring=None):
        if isinstance(d, str):
            try:
                d = json.loads(d)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad row JSON: {exc}") from None
        if not isinstance(d, dict) or "a" not in d or "b" not in d:
            raise ParseError("row JSON needs 'a' and 'b'")
        if ring is None:
            if "ring" not in d:
                raise ParseError("row JSON needs a 'ring' field")
            ring = ring_from_descriptor(d["ring"])
        return umrow_make(ring, [str(x) for x in d["a"]], [str(x) for x in d["b"]])

    def as_row(self):
        return Matrix(self.ring, [self.a], _trusted=True)

    def section_column(self):
        return Matrix(self.ring, [(x,) for x in self.b], ncols=1, _trusted=True)


def umrow_make(ring, a, b):
    a = tuple(_coerce(ring, x) for x in a)
    b = tuple(_coerce(ring, x) for x in b)
    return UnimodularRow(ring, a, b)


def suslin_matrix(a, b=None, ring=None, max_length=SUSLIN_MAX_LENGTH):
    """Suslin's matrix alpha_n(a, b) of size 2^(n-1).

    alpha_1 = (a1) and for n >= 2
        [[ a1 I,                 alpha_{n-1}(a', b') ],
         [ -alpha_{n-1}(b', a')^t,  b1 I            ]]
    with a', b' the rows with the first entry dropped.
    """
    if isinstance(a, UnimodularRow):
        ring, a, b = a.ring, a.a, a.b
    if ring is None:
        raise ValueError("raw rows need a ring")
    a = tuple(_coerce(ring, x) for x in a)
    b = tuple(_coerce(ring, x) for x in b)
    if len(a) != len(b) or not a:
        raise ShapeMismatch("a and b must be nonempty rows of equal length")
    if len(a) > max_length:
        raise SizeCap(f"length {len(a)} exceeds the cap {max_length} "
                      f"(matrix size {2 ** (len(a) - 1)})")
    return Matrix(ring, _suslin_rows(ring, a, b), _trusted=True)


def _suslin_rows(R, a, b):
    if len(a) == 1:
        return ((a[0],),)
    half = 2 ** (len(a) - 2)
    top_right = _suslin_rows(R, a[1:], b[1:])
    other = _suslin_rows(R, b[1:], a[1:])
    z = R.zero
    rows = []
    for i in range(half):
        left = tuple(a[0] if i == j else z for j in range(half))
        rows.append(left + top_right[i])
    for i in range(half):
        left = tuple(R.neg(other[j][i]) for j in range(half))
        right = tuple(b[0] if i == j else z for j in range(half))
        rows.append(left + right)
    return tuple(rows)


def kernel_idempotent(r):
    """Q = I - b a: the retraction of R^n onto ker(a) along the section."""
    R = r.ring
    return Matrix.identity(R, r.n) - r.section_column() @ r.as_row()


def _det3(R, c1, c2, c3):
    # det of the 3x3 matrix with columns c1, c2, c3
    m, s = R.mul, R.sub
    t1 = m(c1[0], s(m(c2[1], c3[2]), m(c2[2], c3[1])))
    t2 = m(c2[0], s(m(c1[1], c3[2]), m(c1[2], c3[1])))
    t3 = m(c3[0], s(m(c1[1], c2[2]), m(c1[2], c2[1])))
    return R.add(s(t1, t2), t3)


def vaserstein_symbol(row, orientation=1):
    """The 4 x 4 alternating matrix V(a, b) of a length-3 unimodular row."""
    if row.n != 3:
        raise WrongLength(f"the symbol is defined for rows of length 3, got {row.n}")
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    R = row.ring
    Q = kernel_idempotent(row)
    cols = [tuple(Q.rows[k][i] for k in range(3)) for i in range(3)]
    b = row.b
    V = [[R.zero] * 4 for _ in range(4)]
    for i in range(3):
        for j in range(i + 1, 3):
            d = _det3(R, cols[i], cols[j], b)
            if orientation < 0:
                d = R.neg(d)
            V[i][j] = d
            V[j][i] = R.neg(d)
        V[i][3] = row.a[i]
        V[3][i] = R.neg(row.a[i])
    return AlternatingMatrix(R, [tuple(r) for r in V], ncols=4, _trusted=True)


def _det_one(phi, size):
    if phi.shape != (size, size):
        raise ShapeMismatch(f"expected a {size}x{size} matrix, got {phi.shape}")
    d = phi.det()
    if d != 1:
        raise BadCertificate(f"determinant is {d}, not 1")


def _plus_one(phi):
    return phi.direct_sum(Matrix.identity(phi.ring, 1))


def act_on_row(row, phi):
    """(a phi, phi^-1 b): the right action of a det-1 matrix on a certified row."""
    _det_one(phi, row.n)
    R = row.ring
    a2 = (row.as_row() @ phi).rows[0]
    b2 = (phi.inverse(det_inverse=R.element(R.one)) @ row.section_column()).rows
    return UnimodularRow(R, a2, tuple(x[0] for x in b2))


def symbol_transform_check(row, phi, orientation=1):
    """(phi + 1)^t V(a, b) (phi + 1) == V(a phi, phi^-1 b) for det-1 phi."""
    _det_one(phi, 3)
    lhs = congruence(_plus_one(phi), vaserstein_symbol(row, orientation))
    rhs = vaserstein_symbol(act_on_row(row, phi), orientation)
    return lhs == rhs


def sl4_act(row, phi, orientation=1):
    """Row read off the last column of phi^t V(a, b) phi, with a fresh section.

    The section is the last row of the inverse form: (chi^-1 chi)_44 = 1 and
    chi_44 = 0 give sum_j (chi^-1)_4j chi_j4 = 1.
    """
    _det_one(phi, 4)
    R = row.ring
    chi = congruence(phi, vaserstein_symbol(row, orientation))
    pf_inv = certify_unit(R, pfaffian(chi).value)
    inv = chi.inverse(det_inverse=R.element(R.mul(pf_inv, pf_inv)))
    a2 = tuple(chi.rows[i][3] for i in range(3))
    b2 = tuple(inv.rows[3][j] for j in range(3))
    return UnimodularRow(R, a2, b2)
