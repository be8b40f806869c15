"""Dense exact matrices over a ring handle.

Entries are stored as canonical payloads of the owning ring, so a matrix is
hashable and two matrices are equal exactly when their entries are.
Determinants use Berkowitz's division-free algorithm, which is valid over any
commutative ring (including Z/4 and quotient rings); inverses are adjugate
times a certified inverse of the determinant.
"""

import itertools
import json
from dataclasses import dataclass
from typing import Optional

from .errors import (BadCertificate, BadSpec, MixedRings, NotInvertible,
                     NotSquare, ParseError, ShapeMismatch)
from .rings import (IntegerRing, ModularRing, Ring, RingElement, YES,
                    ring_from_descriptor)


def _lift_modulus(ring):
    """(True, m) when arithmetic can be done on plain ints and reduced mod m.

    m is None for Z.  Division-free formulas commute with the reduction
    Z -> Z/m, so integer rings get a fast path.
    """
    if isinstance(ring, ModularRing):
        return True, ring.m
    if isinstance(ring, IntegerRing):
        return True, None
    return False, None


class Matrix:
    """Immutable dense matrix; ``rows`` is a tuple of tuples of payloads."""

    __slots__ = ("ring", "nrows", "ncols", "rows")

    def __init__(self, ring, rows, ncols=None, _trusted=False):
        if not isinstance(ring, Ring):
            raise TypeError("first argument must be a ring handle")
        if _trusted:
            rows = tuple(rows)
        else:
            rows = tuple(tuple(_coerce(ring, x) for x in row) for row in rows)
        nrows = len(rows)
        if ncols is None:
            ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeMismatch("ragged rows")
        self.ring = ring
        self.nrows = nrows
        self.ncols = ncols
        self.rows = rows

    # -- constructors -------------------------------------------------------

    @classmethod
    def identity(cls, ring, n):
        z, o = ring.zero, ring.one
        return cls(ring, [tuple(o if i == j else z for j in range(n)) for i in range(n)],
                   ncols=n, _trusted=True)

    @classmethod
    def zeros(cls, ring, nrows, ncols):
        return cls(ring, [(ring.zero,) * ncols for _ in range(nrows)], ncols=ncols,
                   _trusted=True)

    @classmethod
    def diag(cls, ring, values):
        values = [_coerce(ring, v) for v in values]
        n = len(values)
        return cls(ring, [tuple(values[i] if i == j else ring.zero for j in range(n))
                          for i in range(n)], ncols=n, _trusted=True)

    @classmethod
    def column(cls, ring, values):
        return cls(ring, [(v,) for v in values])

    @classmethod
    def row(cls, ring, values):
        return cls(ring, [tuple(values)])

    def _new(self, rows, ncols=None):
        return Matrix(self.ring, rows, ncols=self.ncols if ncols is None else ncols,
                      _trusted=True)

    # -- access -------------------------------------------------------------

    @property
    def shape(self):
        return self.nrows, self.ncols

    @property
    def is_square(self):
        return self.nrows == self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return RingElement(self.ring, self.rows[i][j])

    def entry_strings(self):
        ts = self.ring.to_str
        return [[ts(x) for x in row] for row in self.rows]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.ring == other.ring and self.ncols == other.ncols
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.ring, self.ncols, self.rows))

    def __repr__(self):
        return f"Matrix({self.entry_strings()})"

    def __str__(self):
        cells = self.entry_strings()
        if not cells:
            return "[]"
        width = max(len(c) for row in cells for c in row)
        return "\n".join("[" + " ".join(c.rjust(width) for c in row) + "]" for row in cells)

    # -- algebra ------------------------------------------------------------

    def _check_ring(self, other):
        if self.ring != other.ring:
            raise MixedRings(f"{self.ring!r} vs {other.ring!r}")

    def transpose(self):
        return self._new(tuple(zip(*self.rows)) if self.rows else (), ncols=self.nrows)

    T = property(transpose)

    def __add__(self, other):
        self._check_ring(other)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} + {other.shape}")
        add = self.ring.add
        return self._new(tuple(tuple(add(a, b) for a, b in zip(r, s))
                               for r, s in zip(self.rows, other.rows)))

    def __neg__(self):
        neg = self.ring.neg
        return self._new(tuple(tuple(neg(a) for a in r) for r in self.rows))

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        c = _coerce(self.ring, c)
        mul = self.ring.mul
        return self._new(tuple(tuple(mul(c, a) for a in r) for r in self.rows))

    def __matmul__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        self._check_ring(other)
        if self.ncols != other.nrows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        return self._new(_matmul(self.ring, self.rows, other.rows, other.ncols),
                         ncols=other.ncols)

    def __mul__(self, other):
        if isinstance(other, Matrix):
            return self @ other
        return self.scale(other)

    __rmul__ = scale

    def direct_sum(self, other):
        """Block diagonal [[self, 0], [0, other]]."""
        self._check_ring(other)
        z = self.ring.zero
        rows = [r + (z,) * other.ncols for r in self.rows]
        rows += [(z,) * self.ncols + r for r in other.rows]
        return self._new(tuple(rows), ncols=self.ncols + other.ncols)

    def pad(self, n):
        """Embed a square matrix top-left into GL_n by adding an identity block."""
        if n < self.nrows:
            raise ShapeMismatch(f"cannot pad {self.shape} down to {n}")
        if n == self.nrows:
            return self
        return self.direct_sum(Matrix.identity(self.ring, n - self.nrows))

    def submatrix(self, rows, cols):
        return self._new(tuple(tuple(self.rows[i][j] for j in cols) for i in rows),
                         ncols=len(cols))

    def is_zero(self):
        z = self.ring.zero
        return all(x == z for r in self.rows for x in r)

    # -- determinants ---------------------------------------------------------

    def charpoly(self):
        """Coefficients of det(t*I - A), leading first (length n+1)."""
        if not self.is_square:
            raise NotSquare(f"charpoly of {self.shape} matrix")
        return [RingElement(self.ring, c) for c in _berkowitz(self.ring, self.rows)]

    def det(self):
        if not self.is_square:
            raise NotSquare(f"det of {self.shape} matrix")
        R = self.ring
        n = self.nrows
        c = _berkowitz(R, self.rows)[n]
        return RingElement(R, c if n % 2 == 0 else R.neg(c))

    def adjugate(self):
        """Adjugate via Cayley-Hamilton; division-free."""
        if not self.is_square:
            raise NotSquare(f"adjugate of {self.shape} matrix")
        R = self.ring
        n = self.nrows
        if n == 0:
            return self
        coeffs = _berkowitz(R, self.rows)
        # adj(A) = (-1)^(n-1) (A^(n-1) + c1 A^(n-2) + ... + c_(n-1) I)
        acc = Matrix.identity(R, n)
        for k in range(1, n):
            acc = (self @ acc) + Matrix.identity(R, n).scale(RingElement(R, coeffs[k]))
        return acc if n % 2 == 1 else -acc

    def inverse(self, det_inverse=None):
        """Exact inverse ``det^-1 * adj``.

        The determinant must be certified a unit, either by the ring's unit
        test or by ``det_inverse`` (which is checked).
        """
        if not self.is_square:
            raise NotSquare(f"inverse of {self.shape} matrix")
        R = self.ring
        d = self.det()
        if det_inverse is not None:
            dinv = _coerce(R, det_inverse)
            if R.mul(d.value, dinv) != R.one:
                raise BadCertificate(f"det * certificate = {R.to_str(R.mul(d.value, dinv))}, not 1")
        else:
            status = d.is_unit()
            if not status.yes:
                raise NotInvertible(f"determinant {d} is not certified a unit ({status.status})")
            dinv = status.inverse.value
        inv = self.adjugate().scale(dinv)
        if inv @ self != Matrix.identity(R, self.nrows):
            raise AssertionError("adjugate inverse failed verification")
        return inv

    # -- serialization ------------------------------------------------------

    def to_json(self):
        return {"ring": self.ring.descriptor(), "rows": self.entry_strings()}

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    @classmethod
    def from_json(cls, d, ring=None):
        if isinstance(d, str):
            try:
                d = json.loads(d)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad matrix JSON: {exc}") from None
        if not isinstance(d, dict) or "rows" not in d:
            raise ParseError("matrix JSON needs a 'rows' field")
        if ring is None:
            if "ring" not in d:
                raise ParseError("matrix JSON needs a 'ring' field")
            ring = ring_from_descriptor(d["ring"])
        rows = d["rows"]
        if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
            raise ParseError("'rows' must be a list of lists")
        for r in rows:
            for x in r:
                if not isinstance(x, (str, int)) or isinstance(x, bool):
                    raise ParseError(f"matrix entries must be strings, got {x!r}")
        return cls(ring, [tuple(ring.parse(str(x)) for x in r) for r in rows],
                   ncols=len(rows[0]) if rows else 0, _trusted=True)


def _coerce(ring, x):
    if isinstance(x, RingElement):
        if x.ring != ring:
            raise MixedRings(f"entry from {x.ring!r} in matrix over {ring!r}")
        return x.value
    if isinstance(x, bool):
        raise TypeError("bool entry")
    if isinstance(x, int):
        return ring.from_int(x)
    if isinstance(x, str):
        return ring.parse(x)
    if ring.is_canonical(x):
        return x
    raise TypeError(f"cannot use {x!r} as an entry over {ring!r}")


def _matmul(R, A, B, ncols):
    lifted, m = _lift_modulus(R)
    Bt = list(zip(*B)) if B else [()] * ncols
    if lifted:
        if m is None:
            return tuple(tuple(sum(a * b for a, b in zip(r, c)) for c in Bt) for r in A)
        return tuple(tuple(sum(a * b for a, b in zip(r, c)) % m for c in Bt) for r in A)
    add, mul, z = R.add, R.mul, R.zero
    out = []
    for r in A:
        row = []
        for c in Bt:
            acc = z
            for a, b in zip(r, c):
                if a != z and b != z:
                    acc = add(acc, mul(a, b))
            row.append(acc)
        out.append(tuple(row))
    return tuple(out)


def _berkowitz(R, A):
    """Berkowitz: characteristic polynomial coefficients of det(tI - A)."""
    n = len(A)
    if n == 0:
        return [R.one]
    lifted, m = _lift_modulus(R)
    if lifted:
        add = lambda x, y: x + y          # noqa: E731
        mul = lambda x, y: x * y          # noqa: E731
        neg = lambda x: -x                # noqa: E731
        zero, one = 0, 1
    else:
        add, mul, neg, zero, one = R.add, R.mul, R.neg, R.zero, R.one

    def dot(u, v):
        acc = zero
        for x, y in zip(u, v):
            if x != zero and y != zero:
                acc = add(acc, mul(x, y))
        return acc

    # start from the trailing 1x1 block and grow upward-left
    p = [one, neg(A[n - 1][n - 1])]
    for k in range(n - 2, -1, -1):
        a = A[k][k]
        R_ = A[k][k + 1:]
        C = [A[i][k] for i in range(k + 1, n)]
        sub = [row[k + 1:] for row in A[k + 1:]]
        msize = n - k - 1
        q = [one, neg(a)]
        v = C
        for _ in range(msize):
            q.append(neg(dot(R_, v)))
            v = [dot(row, v) for row in sub]
        # p_new = T p with T lower-triangular Toeplitz built from q
        newp = []
        for i in range(msize + 2):
            acc = zero
            for j in range(min(i, msize) + 1):
                if q[i - j] != zero and p[j] != zero:
                    acc = add(acc, mul(q[i - j], p[j]))
            newp.append(acc)
        p = newp
        if lifted and m is not None:
            p = [x % m for x in p]
    if lifted and m is not None:
        p = [x % m for x in p]
    return p


# -- generators -----------------------------------------------------------------

@dataclass(frozen=True)
class Elementary:
    """I + lam * E_ij with 1-based indices i != j."""

    i: int
    j: int
    lam: RingElement

    def inverse(self):
        return Elementary(self.i, self.j, -self.lam)


@dataclass(frozen=True)
class Permutation:
    """Permutation matrix with P e_k = e_perm[k] (1-based images).

    With ``sign_corrected`` an odd permutation gets its first column negated,
    so the result always has determinant 1.
    """

    perm: tuple
    sign_corrected: bool = False


@dataclass(frozen=True)
class Transvection:
    """x -> x + lam * form(x, v) * v, which preserves ``form``."""

    v: tuple
    lam: RingElement
    form: Matrix


def permutation_sign(perm):
    perm = [p - 1 for p in perm]
    seen = [False] * len(perm)
    sign = 1
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def build_generator(g, n, ring=None):
    """Materialize a generator spec as an n x n matrix."""
    if isinstance(g, Elementary):
        R = g.lam.ring
        if not (1 <= g.i <= n and 1 <= g.j <= n) or g.i == g.j:
            raise BadSpec(f"elementary({g.i},{g.j}) does not fit size {n}")
        rows = [list(r) for r in Matrix.identity(R, n).rows]
        rows[g.i - 1][g.j - 1] = g.lam.value
        return Matrix(R, [tuple(r) for r in rows], ncols=n, _trusted=True)
    if isinstance(g, Permutation):
        if ring is None:
            raise BadSpec("permutation generator needs a ring")
        perm = tuple(g.perm)
        if len(perm) != n or sorted(perm) != list(range(1, n + 1)):
            raise BadSpec(f"{perm} is not a permutation of 1..{n}")
        rows = [[ring.zero] * n for _ in range(n)]
        for k, img in enumerate(perm):
            rows[img - 1][k] = ring.one
        if g.sign_corrected and permutation_sign(perm) < 0:
            rows[perm[0] - 1][0] = ring.neg(ring.one)
        return Matrix(ring, [tuple(r) for r in rows], ncols=n, _trusted=True)
    if isinstance(g, Transvection):
        F = g.form
        R = F.ring
        if F.shape != (n, n) or len(g.v) != n:
            raise BadSpec(f"transvection vector/form do not fit size {n}")
        v = Matrix.column(R, [_coerce(R, x) for x in g.v])
        lam = _coerce(R, g.lam)
        # T = I - lam * v v^t F
        T = Matrix.identity(R, n) - (v @ v.T @ F).scale(lam)
        if T.T @ F @ T != F:
            raise BadSpec("transvection does not preserve its form (is the form alternating?)")
        return T
    if isinstance(g, Matrix):
        return g.pad(n)
    raise BadSpec(f"unknown generator spec {g!r}")


def block_swap(ring, r, s):
    """The block matrix [[0, I_s], [I_r, 0]] of size r + s."""
    n = r + s
    # columns 1..r go to positions s+1..s+r, columns r+1..n to 1..s
    perm = tuple(list(range(s + 1, s + r + 1)) + list(range(1, s + 1)))
    return Permutation(perm), build_generator(Permutation(perm), n, ring)


def permutation_word(perm, ring):
    """Elementary factors whose product is the (unsigned) permutation matrix.

    Only possible for even permutations; raises BadSpec otherwise.  Works over
    any commutative ring since only the entries 0, 1, -1 occur.
    """
    perm = tuple(perm)
    n = len(perm)
    if permutation_sign(perm) < 0:
        raise BadSpec("odd permutation matrices have determinant -1")
    one = ring.element(ring.one)
    # current matrix as a signed permutation: column k = sign[k] * e_(img[k])
    img = [p - 1 for p in perm]
    sign = [1] * n
    applied = []

    def signed_swap(i, j):
        # right multiplication by E_ij(1) E_ji(-1) E_ij(1): new col i = -col j, new col j = col i
        applied.extend([Elementary(i + 1, j + 1, one), Elementary(j + 1, i + 1, -one),
                        Elementary(i + 1, j + 1, one)])
        img[i], img[j] = img[j], img[i]
        sign[i], sign[j] = -sign[j], sign[i]

    for k in range(n):
        l = img.index(k)
        if l != k:
            signed_swap(k, l)
    negs = [k for k in range(n) if sign[k] < 0]
    for a, b in zip(negs[::2], negs[1::2]):
        signed_swap(a, b)
        signed_swap(a, b)
    # P * W = I, so P = W^-1
    return [f.inverse() for f in reversed(applied)]


def word_product(factors, n, ring):
    M = Matrix.identity(ring, n)
    for f in factors:
        M = M @ build_generator(f, n, ring)
    return M


# -- functional entry points ----------------------------------------------------

def mat_compose(op, A, B=None):
    if op == "transpose":
        return A.transpose()
    if B is None:
        raise ValueError(f"{op} needs two operands")
    if op == "mul":
        return A @ B
    if op == "add":
        return A + B
    if op == "direct_sum":
        return A.direct_sum(B)
    if op == "scalar_mul":
        return B.scale(A) if isinstance(B, Matrix) else A.scale(B)
    raise ValueError(f"unknown op {op!r}")


def det(A):
    return A.det()


def inverse(A, det_inverse=None):
    return A.inverse(det_inverse)


def leibniz_det(A):
    """Permutation-expansion determinant; slow, kept as an independent check."""
    R = A.ring
    n = A.nrows
    acc = R.zero
    for p in itertools.permutations(range(n)):
        term = R.one
        for i in range(n):
            term = R.mul(term, A.rows[i][p[i]])
        sgn = permutation_sign(tuple(x + 1 for x in p))
        acc = R.add(acc, term) if sgn > 0 else R.sub(acc, term)
    return RingElement(R, acc)


def enumerate_matrices(ring, n, budget=None):
    """All n x n matrices over a finite ring (as payload row tuples)."""
    elems = list(ring.elements())
    total = len(elems) ** (n * n)
    if budget is not None and total > budget:
        from .errors import BudgetExceeded
        raise BudgetExceeded(f"{total} candidate {n}x{n} matrices exceed budget {budget}")
    for flat in itertools.product(elems, repeat=n * n):
        yield tuple(flat[i * n:(i + 1) * n] for i in range(n))


def special_linear_group(ring, n, budget=10**6):
    """All det-1 matrices over a finite ring, by exhaustive filtering."""
    one = ring.one
    out = []
    for rows in enumerate_matrices(ring, n, budget):
        if _det_payload(ring, rows) == one:
            out.append(Matrix(ring, rows, ncols=n, _trusted=True))
    return out


def _det_payload(R, rows):
    n = len(rows)
    c = _berkowitz(R, rows)[n]
    return c if n % 2 == 0 else R.neg(c)


def certify_unit(ring, value, certificate: Optional[object] = None):
    """Inverse payload of ``value`` from a checked certificate or the unit test."""
    if certificate is not None:
        inv = _coerce(ring, certificate)
        if ring.mul(value, inv) != ring.one:
            raise BadCertificate(f"{ring.to_str(value)} * {ring.to_str(inv)} != 1")
        return inv
    status, inv = ring.unit_inverse(value)
    if status != YES:
        raise NotInvertible(f"{ring.to_str(value)} is not certified a unit ({status})")
    return inv
