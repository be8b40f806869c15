"""Alternating matrices, the standard forms psi and sigma, and Pfaffians.

"Alternating" means skew-symmetric *and* zero diagonal; in characteristic 2
the second condition does not follow from the first, so both are checked.
"""

from .errors import MixedRings, NotAlternating, ShapeMismatch
from .matrix import Matrix, _lift_modulus
from .rings import ZZ, RingElement


class AlternatingMatrix(Matrix):
    """A matrix validated to satisfy M^t = -M with zero diagonal.

    Invertibility is *not* part of the type; it is certified separately
    through a unit Pfaffian.  The 0 x 0 matrix is allowed and acts as the
    neutral element for orthogonal sums.
    """

    __slots__ = ()

    def __init__(self, ring, rows, ncols=None, _trusted=False):
        super().__init__(ring, rows, ncols=ncols, _trusted=_trusted)
        bad = alternation_defect(self)
        if bad is not None:
            raise NotAlternating(bad)

    @classmethod
    def from_matrix(cls, M):
        if isinstance(M, AlternatingMatrix):
            return M
        return cls(M.ring, M.rows, ncols=M.ncols, _trusted=True)

    @classmethod
    def from_json(cls, d, ring=None):
        M = Matrix.from_json(d, ring)
        if isinstance(d, dict) and d.get("alternating") is False:
            raise NotAlternating("document declares alternating: false")
        return cls.from_matrix(M)

    def to_json(self):
        d = super().to_json()
        d["alternating"] = True
        return d

    @property
    def size_half(self):
        return self.nrows // 2


def alternation_defect(M):
    """None if M is alternating, else a description of the first violation."""
    if not M.is_square:
        return f"alternating matrix must be square, got {M.shape}"
    if M.nrows % 2:
        return f"alternating invertible matrices have even size, got {M.nrows}"
    R = M.ring
    rows = M.rows
    z = R.zero
    for i in range(M.nrows):
        if rows[i][i] != z:
            return f"nonzero diagonal entry at ({i},{i})"
        for j in range(i + 1, M.nrows):
            if rows[j][i] != R.neg(rows[i][j]):
                return f"entries ({i},{j}) and ({j},{i}) are not negatives"
    return None


def is_alternating(M):
    return alternation_defect(M) is None


def psi2(ring=ZZ):
    return AlternatingMatrix(ring, [[0, 1], [-1, 0]])


def empty_form(ring=ZZ):
    return AlternatingMatrix(ring, [], ncols=0)


def psi(n, ring=ZZ):
    """The standard form psi_{2n} = psi_2 + ... + psi_2 (n blocks)."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    M = empty_form(ring)
    block = psi2(ring)
    for _ in range(n):
        M = M.direct_sum(block)
    return AlternatingMatrix.from_matrix(M)


def sigma(n, ring=ZZ):
    """The symmetric swap sigma_{2n}, block diagonal in [[0, 1], [1, 0]]."""
    if n < 1:
        raise ValueError("n must be positive")
    M = Matrix(ring, [[0, 1], [1, 0]])
    block = M
    for _ in range(n - 1):
        M = M.direct_sum(block)
    return M


def pfaffian(M):
    """Pfaffian by expansion along the first row, memoised on index subsets.

    Pf of the submatrix on sorted indices (s0, s1, ...) is
    sum_j (-1)^(j+1) m[s0][sj] Pf(indices without s0, sj); with this sign
    convention Pf(psi_{2n}) = 1.
    """
    if not isinstance(M, AlternatingMatrix):
        M = AlternatingMatrix.from_matrix(M)
    R = M.ring
    n = M.nrows
    A = M.rows
    lifted, m = _lift_modulus(R)
    if lifted:
        add = lambda x, y: x + y      # noqa: E731
        sub = lambda x, y: x - y      # noqa: E731
        mul = lambda x, y: x * y      # noqa: E731
        zero, one = 0, 1
    else:
        add, sub, mul, zero, one = R.add, R.sub, R.mul, R.zero, R.one
    memo = {}

    def pf(mask):
        if mask == 0:
            return one
        hit = memo.get(mask)
        if hit is not None:
            return hit
        idx = [i for i in range(n) if mask >> i & 1]
        i0 = idx[0]
        row = A[i0]
        acc = zero
        for pos, j in enumerate(idx[1:]):
            a = row[j]
            if a == zero:
                continue
            term = mul(a, pf(mask & ~(1 << i0) & ~(1 << j)))
            acc = add(acc, term) if pos % 2 == 0 else sub(acc, term)
        memo[mask] = acc
        return acc

    value = pf((1 << n) - 1)
    if lifted and m is not None:
        value %= m
    return RingElement(R, value)


def perp(M, N):
    """Orthogonal sum M _|_ N (block diagonal)."""
    if M.ring != N.ring:
        raise MixedRings(f"{M.ring!r} vs {N.ring!r}")
    return AlternatingMatrix.from_matrix(
        AlternatingMatrix.from_matrix(M).direct_sum(AlternatingMatrix.from_matrix(N)))


def congruence(G, M):
    """G^t M G, revalidated as alternating."""
    if G.shape != M.shape:
        raise ShapeMismatch(f"congruence by {G.shape} on {M.shape}")
    return AlternatingMatrix.from_matrix(G.T @ M @ G)


def stabilize(M, s):
    """M _|_ psi_{2s}."""
    if s < 0:
        raise ValueError("stabilization level must be nonnegative")
    if s == 0:
        return AlternatingMatrix.from_matrix(M)
    return perp(M, psi(s, M.ring))
