"""Representative-level arithmetic for the groups W'_E(R), W'_SL(R).

Classes are never decided canonically.  Two representatives are shown equal
by a `WitnessWord`: a product E of generators with

    M _|_ psi_{2n+2s} = E^t (N _|_ psi_{2m+2s}) E

for M of size 2m and N of size 2n.  `check_equiv_witness` replays such a
word exactly.  Exhaustive decisions over finite rings live in ``census``.
"""

import json
from dataclasses import dataclass, field
from typing import Optional

from .altform import (AlternatingMatrix, congruence, perp, pfaffian, psi, sigma,
                      stabilize)
from .errors import BadWitness, MixedRings, ParseError, ShapeMismatch
from .matrix import (Elementary, Matrix, block_swap, build_generator, certify_unit,
                     permutation_word)
from .rings import RingElement

GROUPS = ("E", "SL")


@dataclass(frozen=True)
class WittRep:
    """An alternating matrix standing for its class in W'_G(R).

    ``pf_inverse`` optionally certifies that the Pfaffian is a unit.
    """

    rep: AlternatingMatrix
    group: str = "E"
    pf_inverse: Optional[RingElement] = None

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}")
        object.__setattr__(self, "rep", AlternatingMatrix.from_matrix(self.rep))
        if self.pf_inverse is not None:
            certify_unit(self.rep.ring, self.pf.value, self.pf_inverse)

    @property
    def ring(self):
        return self.rep.ring

    @property
    def pf(self):
        return pfaffian(self.rep)

    def in_kernel(self):
        """Whether the representative lies in W_G(R), i.e. has Pfaffian 1."""
        return self.pf == 1


@dataclass(frozen=True)
class WitnessWord:
    """Ordered generator factors plus the stabilization level ``s``.

    Factors are `Elementary` specs or explicit det-1 matrices; explicit
    matrices smaller than the working size are embedded top-left.
    """

    factors: tuple = ()
    s: int = 0

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        if self.s < 0:
            raise BadWitness("stabilization level must be nonnegative")

    def to_json(self):
        out = []
        for f in self.factors:
            if isinstance(f, Elementary):
                out.append({"elem": [f.i, f.j, str(f.lam)]})
            else:
                out.append({"sl": f.to_json()})
        return {"s": self.s, "factors": out}

    @classmethod
    def from_json(cls, d, ring):
        if isinstance(d, str):
            try:
                d = json.loads(d)
            except json.JSONDecodeError as exc:
                raise ParseError(f"bad witness JSON: {exc}") from None
        if not isinstance(d, dict):
            raise ParseError("witness must be a JSON object")
        factors = []
        for f in d.get("factors", []):
            if not isinstance(f, dict) or len(f) != 1:
                raise ParseError(f"bad witness factor {f!r}")
            if "elem" in f:
                i, j, lam = f["elem"]
                if not isinstance(i, int) or not isinstance(j, int):
                    raise ParseError(f"elementary indices must be integers: {f!r}")
                factors.append(Elementary(i, j, ring(str(lam))))
            elif "sl" in f:
                factors.append(Matrix.from_json(f["sl"], ring))
            else:
                raise ParseError(f"bad witness factor {f!r}")
        s = d.get("s", 0)
        if not isinstance(s, int) or s < 0:
            raise ParseError("witness 's' must be a nonnegative integer")
        return cls(tuple(factors), s)


@dataclass(frozen=True)
class WitnessCheck:
    """Outcome of replaying a witness; ``locus`` names the first bad entry."""

    ok: bool
    size: int
    locus: Optional[dict] = None


def assemble_witness(w, ring, size, group):
    """Multiply out the factors of ``w`` at the given size.

    Raises BadWitness for shape or group-membership problems; the identity
    itself is not checked here.
    """
    E = Matrix.identity(ring, size)
    for k, f in enumerate(w.factors):
        if isinstance(f, Elementary):
            if f.lam.ring != ring:
                raise BadWitness(f"factor {k}: scalar from a different ring")
            if f.i == f.j or not (1 <= f.i <= size and 1 <= f.j <= size):
                raise BadWitness(f"factor {k}: elementary({f.i},{f.j}) outside size {size}")
            g = build_generator(f, size)
        elif isinstance(f, Matrix):
            if group == "E":
                raise BadWitness(f"factor {k}: explicit matrix in an E-witness")
            if f.ring != ring:
                raise BadWitness(f"factor {k}: matrix over a different ring")
            if not f.is_square or f.nrows > size:
                raise BadWitness(f"factor {k}: shape {f.shape} does not fit size {size}")
            if f.det() != 1:
                raise BadWitness(f"factor {k}: determinant {f.det()} is not 1")
            g = f.pad(size)
        else:
            raise BadWitness(f"factor {k}: unknown factor type {type(f).__name__}")
        E = E @ g
    return E


def verify_witness(M, N, w, group="E"):
    """Replay ``w`` against M ~ N; see module docstring for the identity."""
    if group not in GROUPS:
        raise BadWitness(f"unknown group flag {group!r}")
    M = AlternatingMatrix.from_matrix(M)
    N = AlternatingMatrix.from_matrix(N)
    if M.ring != N.ring:
        raise MixedRings("witness sides live in different rings")
    m, n = M.size_half, N.size_half
    size = 2 * (m + n + w.s)
    E = assemble_witness(w, M.ring, size, group)
    lhs = stabilize(M, n + w.s)
    rhs = E.T @ stabilize(N, m + w.s) @ E
    for i in range(size):
        for j in range(size):
            if lhs.rows[i][j] != rhs.rows[i][j]:
                return WitnessCheck(False, size, {
                    "entry": [i, j], "lhs": str(lhs[i, j]), "rhs": str(rhs[i, j])})
    return WitnessCheck(True, size)


def check_equiv_witness(M, N, w, group="E"):
    return verify_witness(M, N, w, group).ok


def witt_add(x, y):
    if x.ring != y.ring:
        raise MixedRings("witt_add across rings")
    if x.group != y.group:
        raise ValueError("witt_add across group flags")
    cert = None
    if x.pf_inverse is not None and y.pf_inverse is not None:
        cert = x.pf_inverse * y.pf_inverse
    return WittRep(perp(x.rep, y.rep), x.group, cert)


def commutativity_witness(x, y):
    """E-witness that x + y and y + x are the same class.

    The orthogonal sums differ by the block swap [[0, I], [I, 0]], which has
    even block sizes here and is written out as elementary factors.  The word
    certifies (x _|_ y) ~ (y _|_ x) at s = 0.
    """
    R = x.ring
    r, s = x.rep.nrows, y.rep.nrows
    spec, _ = block_swap(R, r, s)
    factors = tuple(permutation_word(spec.perm, R))
    return WitnessWord(factors, 0)


def _alt_inverse(M, pf_inverse=None):
    pf_inv = certify_unit(M.ring, pfaffian(M).value, pf_inverse)
    R = M.ring
    return M.inverse(det_inverse=R.mul(pf_inv, pf_inv)), pf_inv


def witt_neg(x):
    """Representative sigma N^-1 sigma of the inverse class."""
    N = x.rep
    inv, pf_inv = _alt_inverse(N, x.pf_inverse)
    S = sigma(N.size_half, N.ring)
    rep = AlternatingMatrix.from_matrix(S @ inv @ S)
    # Pf(sigma N^-1 sigma) = Pf(N)^-1, so Pf(N) certifies the new Pfaffian
    return WittRep(rep, x.group, pfaffian(N))


def hyperbolic(M, det_inverse=None, group="E"):
    """M^t psi M for an even-size square M with unit determinant."""
    if not M.is_square or M.nrows % 2:
        raise ShapeMismatch(f"hyperbolic map needs an even square matrix, got {M.shape}")
    R = M.ring
    d = M.det()
    dinv = certify_unit(R, d.value, det_inverse)
    rep = congruence(M, psi(M.nrows // 2, R))
    return WittRep(rep, group, RingElement(R, dinv))


@dataclass(frozen=True)
class EtaValue:
    """Formal difference [R^2n, plus] - [R^2n, minus]; data only."""

    plus: AlternatingMatrix
    minus: AlternatingMatrix
    zero: bool = False

    def to_json(self):
        return {"plus": self.plus.to_json(), "minus": self.minus.to_json(),
                "rank": self.plus.nrows, "zero": self.zero}

    @classmethod
    def from_json(cls, d):
        plus = AlternatingMatrix.from_json(d["plus"])
        minus = AlternatingMatrix.from_json(d["minus"])
        if plus.shape != minus.shape:
            raise ParseError("eta components differ in size")
        return cls(plus, minus, bool(d.get("zero", False)))


def eta(M, pf_inverse=None):
    M = AlternatingMatrix.from_matrix(M)
    certify_unit(M.ring, pfaffian(M).value, pf_inverse)
    base = psi(M.size_half, M.ring)
    return EtaValue(M, base, zero=(M == base))


@dataclass(frozen=True)
class FreeTriple:
    """(R^{2n}, g, f) with an optional basis change alpha."""

    g: AlternatingMatrix
    f: AlternatingMatrix
    alpha: Optional[Matrix] = field(default=None)

    def __post_init__(self):
        g = AlternatingMatrix.from_matrix(self.g)
        f = AlternatingMatrix.from_matrix(self.f)
        if g.shape != f.shape:
            raise ShapeMismatch(f"triple forms differ in size: {g.shape} vs {f.shape}")
        if g.ring != f.ring:
            raise MixedRings("triple forms live in different rings")
        if self.alpha is not None and self.alpha.shape != g.shape:
            raise ShapeMismatch("basis change has the wrong size")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "f", f)


def xi_triple(t, g_pf_inverse=None):
    """(alpha^t f alpha) _|_ sigma (alpha^t g alpha)^-1 sigma^t, an element of A_4n."""
    R = t.g.ring
    n = t.g.size_half
    alpha = t.alpha if t.alpha is not None else Matrix.identity(R, 2 * n)
    f_a = congruence(alpha, t.f)
    g_a = congruence(alpha, t.g)
    # Pf(alpha^t g alpha) = det(alpha) Pf(g); a certificate for Pf(g) alone is
    # only usable when alpha has an invertible determinant we can certify.
    cert = None
    if g_pf_inverse is not None:
        pf_g_inv = certify_unit(R, pfaffian(t.g).value, g_pf_inverse)
        det_inv = certify_unit(R, alpha.det().value)
        cert = R.mul(pf_g_inv, det_inv)
    g_inv, _ = _alt_inverse(g_a, None if cert is None else RingElement(R, cert))
    S = sigma(n, R)
    return WittRep(perp(f_a, AlternatingMatrix.from_matrix(S @ g_inv @ S.T)), "E")
