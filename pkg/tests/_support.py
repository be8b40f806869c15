"""Random object generators shared by the test modules."""

import random

from wittbench import Elementary, Matrix, ModularRing, PolynomialRing, ZZ, polynomial_ring
from wittbench.altform import AlternatingMatrix, congruence, pfaffian, psi
from wittbench.matrix import build_generator
from wittbench.rings import IntegerRing, YES
from wittbench.vaserstein import UnimodularRow


def rand_elem(R, rng, small=3):
    if isinstance(R, IntegerRing):
        return rng.randint(-small, small)
    if isinstance(R, ModularRing):
        return rng.randrange(R.m)
    if isinstance(R, PolynomialRing):
        # sparse: a constant plus at most one monomial of degree <= 2
        c = rand_elem(R.base, rng, small)
        p = R.constant(c)
        if rng.random() < 0.5:
            exps = [0] * len(R.variables)
            for _ in range(rng.randint(1, 2)):
                exps[rng.randrange(len(exps))] += 1
            p = R.add(p, R.monomial(tuple(exps), rand_elem(R.base, rng, small)))
        return p
    return R.from_int(rng.randint(-small, small))


def rand_matrix(R, n, rng, m=None):
    m = n if m is None else m
    return Matrix(R, [tuple(rand_elem(R, rng) for _ in range(m)) for _ in range(n)],
                  ncols=m, _trusted=True)


def rand_alt(R, n, rng):
    rows = [[R.zero] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = rand_elem(R, rng)
            rows[i][j] = v
            rows[j][i] = R.neg(v)
    return AlternatingMatrix(R, [tuple(r) for r in rows], ncols=n, _trusted=True)


def units(R):
    if isinstance(R, ModularRing):
        return [u for u in range(1, R.m) if R.unit_inverse(u)[0] == YES]
    return [R.one, R.neg(R.one)]


def rand_det1(R, n, rng, max_factors=6):
    """Product of at most ``max_factors`` elementary or det-1 diagonal matrices."""
    M = Matrix.identity(R, n)
    us = units(R)
    for _ in range(rng.randint(1, max_factors)):
        if rng.random() < 0.7:
            i, j = rng.sample(range(1, n + 1), 2)
            g = build_generator(Elementary(i, j, R.element(rand_elem(R, rng))), n)
        else:
            i, j = rng.sample(range(n), 2)
            u = rng.choice(us)
            d = [R.one] * n
            d[i] = u
            d[j] = R.unit_inverse(u)[1]
            g = Matrix.diag(R, [R.element(x) for x in d])
        M = M @ g
    return M


def rand_invertible_alt(R, n, rng):
    """psi congruent by a random det-1 matrix, then rescaled by a random unit row/col."""
    G = rand_det1(R, n, rng)
    u = rng.choice(units(R))
    D = Matrix.diag(R, [R.element(u)] + [R.element(R.one)] * (n - 1))
    return congruence(G @ D, psi(n // 2, R))


def rand_umrow(R, n, rng):
    """(last row of g, last column of g^-1) for a random det-1 g."""
    g = rand_det1(R, n, rng)
    inv = g.inverse(det_inverse=R.element(R.one))
    return UnimodularRow(R, g.rows[n - 1], tuple(inv.rows[i][n - 1] for i in range(n)))


def pf_is_unit(M):
    return M.ring.unit_inverse(pfaffian(M).value)[0] == YES


RINGS_SMALL = [ZZ, ModularRing(4), ModularRing(5)]


def poly6():
    return polynomial_ring("a b c d e f")


def seeded(seed):
    return random.Random(seed)
