"""Exhaustive orbit censuses over finite rings.

Objects are unimodular rows (right action a -> a g) or alternating invertible
matrices (congruence X -> g^t X g, optionally after stabilizing by psi).
Orbits are found by breadth-first search; the canonical representative of
an orbit is the member whose serialized form is lexicographically least, so
reports do not depend on visiting order.

Census results over finite rings are observations about those rings only.
"""

import itertools
import json
import random
from collections import deque
from dataclasses import dataclass, field, replace
from typing import Optional

from .altform import AlternatingMatrix, pfaffian, psi
from .errors import BadSpec, BudgetExceeded
from .matrix import (Elementary, Matrix, Transvection, _matmul, build_generator,
                     special_linear_group)
from .rings import YES
from .vaserstein import UnimodularRow
from .witt import WitnessWord, check_equiv_witness

OBJECT_KINDS = ("umrows", "alt")
GENERATOR_SETS = ("E", "SL", "Sp", "ESp")
GENERATOR_NOTES = {
    "E": "elementary matrices I + l*E_ij",
    "SL": "all determinant-1 matrices",
    "Sp": "transvection-generated subgroup of Sp (x -> x + l*psi(x,v)*v)",
    "ESp": "E intersected with Sp, from the enumerated closure of E",
}
DEFAULT_BUDGET = 10**6
DEFAULT_STAB_CAP = 2


def _dumps(obj):
    return json.dumps(obj, separators=(",", ":"), ensure_ascii=False)


@dataclass(frozen=True)
class CensusJob:
    """What to enumerate and which generators act.

    ``n`` is the row length for ``umrows`` and the matrix size (even) for
    ``alt``.  ``stab_cap`` only matters for ``alt``: objects M, N are put in
    the same class when M _|_ psi_{2s} and N _|_ psi_{2s} are congruent for
    s = stab_cap.
    """

    ring: object
    object_kind: str
    n: int
    generators: str = "E"
    stab_cap: int = DEFAULT_STAB_CAP
    budget: int = DEFAULT_BUDGET

    def __post_init__(self):
        if not self.ring.is_finite:
            raise BadSpec(f"census needs a finite ring, got {self.ring!r}")
        if self.object_kind not in OBJECT_KINDS:
            raise BadSpec(f"object kind must be one of {OBJECT_KINDS}")
        if self.generators not in GENERATOR_SETS:
            raise BadSpec(f"generator set must be one of {GENERATOR_SETS}")
        if self.n < 1 or (self.object_kind == "alt" and self.n % 2):
            raise BadSpec(f"bad size {self.n} for {self.object_kind}")
        if self.stab_cap < 0:
            raise BadSpec("stabilization cap must be nonnegative")
        if self.object_kind == "umrows" and self.stab_cap:
            object.__setattr__(self, "stab_cap", 0)

    @property
    def level(self):
        """Matrix size the generators act at."""
        if self.object_kind == "alt":
            return self.n + 2 * self.stab_cap
        return self.n

    def to_json(self):
        return {"ring": self.ring.descriptor(), "object": self.object_kind, "n": self.n,
                "generators": self.generators, "stab_cap": self.stab_cap}


# -- generators -------------------------------------------------------------------

@dataclass(frozen=True)
class Generator:
    """One acting matrix; ``elem`` holds 0-based (i, j, lam payload) when elementary."""

    factor: object
    matrix: Matrix
    elem: Optional[tuple] = None


def _nonzero_elements(ring):
    return [x for x in ring.elements() if x != ring.zero]


def elementary_generators(ring, size):
    gens = []
    for i in range(size):
        for j in range(size):
            if i == j:
                continue
            for lam in _nonzero_elements(ring):
                f = Elementary(i + 1, j + 1, ring.element(lam))
                gens.append(Generator(f, build_generator(f, size), (i, j, lam)))
    return gens


def transvection_generators(ring, size):
    if size % 2:
        raise BadSpec(f"symplectic generators need even size, got {size}")
    form = psi(size // 2, ring)
    ident = Matrix.identity(ring, size)
    out, seen = [], set()
    for v in itertools.product(list(ring.elements()), repeat=size):
        if all(x == ring.zero for x in v):
            continue
        for lam in _nonzero_elements(ring):
            T = build_generator(Transvection(v, ring.element(lam), form), size)
            if T != ident and T not in seen:
                seen.add(T)
                out.append(Generator(T, T))
    return out


def group_closure(ring, matrices, size, budget=DEFAULT_BUDGET):
    """All products of the given matrices (a finite group over a finite ring)."""
    ident = Matrix.identity(ring, size)
    seen = {ident.rows}
    queue = deque([ident.rows])
    gens = [g.rows for g in matrices]
    while queue:
        x = queue.popleft()
        for g in gens:
            y = _matmul(ring, x, g, size)
            if y not in seen:
                seen.add(y)
                if len(seen) > budget:
                    raise BudgetExceeded(f"group closure exceeds budget {budget}")
                queue.append(y)
    return [Matrix(ring, rows, ncols=size, _trusted=True) for rows in seen]


def make_generators(ring, name, size, budget=DEFAULT_BUDGET):
    """Instantiate a named generator set at the given matrix size."""
    if name == "E":
        return elementary_generators(ring, size)
    ident = Matrix.identity(ring, size)
    if name == "SL":
        return [Generator(g, g) for g in special_linear_group(ring, size, budget) if g != ident]
    if name == "Sp":
        return transvection_generators(ring, size)
    if name == "ESp":
        if size % 2:
            raise BadSpec(f"symplectic generators need even size, got {size}")
        form = psi(size // 2, ring)
        E = [g.matrix for g in elementary_generators(ring, size)]
        group = group_closure(ring, E, size, budget)
        keep = [g for g in group if g != ident and g.T @ form @ g == form]
        keep.sort(key=lambda g: _dumps(g.entry_strings()))
        return [Generator(g, g) for g in keep]
    raise BadSpec(f"unknown generator set {name!r}")


def generated_group_order(ring, name, size, budget=DEFAULT_BUDGET):
    gens = make_generators(ring, name, size, budget)
    return len(group_closure(ring, [g.matrix for g in gens], size, budget))


# -- actions ------------------------------------------------------------------------

def _row_actor(ring):
    add, mul = ring.add, ring.mul

    def act(a, g):
        if g.elem is not None:
            i, j, lam = g.elem
            out = list(a)
            out[j] = add(out[j], mul(lam, a[i]))
            return tuple(out)
        return _matmul(ring, (a,), g.matrix.rows, len(a))[0]
    return act


def _alt_actor(ring):
    add, mul = ring.add, ring.mul

    def act(X, g):
        if g.elem is not None:
            # E^t X E with E = I + lam e_i e_j^t: column j += lam col i, then row j += lam row i
            i, j, lam = g.elem
            rows = [list(r) for r in X]
            for r in rows:
                r[j] = add(r[j], mul(lam, r[i]))
            ri = rows[i]
            rows[j] = [add(x, mul(lam, y)) for x, y in zip(rows[j], ri)]
            return tuple(tuple(r) for r in rows)
        G = g.matrix.rows
        n = len(X)
        Gt = tuple(zip(*G))
        return _matmul(ring, _matmul(ring, Gt, X, n), G, n)
    return act


def _bfs(start, gens, act, budget, target=None):
    """Parent links of everything reachable from ``start``."""
    parents = {start: None}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for gi, g in enumerate(gens):
            y = act(x, g)
            if y not in parents:
                parents[y] = (x, gi)
                if len(parents) > budget:
                    raise BudgetExceeded(f"orbit search exceeds budget {budget}")
                if y == target:
                    return parents
                queue.append(y)
    return parents


def _trace(parents, x):
    path = []
    while parents[x] is not None:
        x, gi = parents[x]
        path.append(gi)
    path.reverse()
    return tuple(path)


def _stabilized(ring, X, s):
    if s == 0:
        return X
    return AlternatingMatrix(ring, X, _trusted=True).direct_sum(psi(s, ring)).rows


# -- enumeration ----------------------------------------------------------------

def _state_key(ring, kind, state):
    ts = ring.to_str
    if kind == "umrows":
        return _dumps([ts(x) for x in state])
    return _dumps([[ts(x) for x in r] for r in state])


def _enumerate_states(job):
    R = job.ring
    elems = list(R.elements())
    if job.object_kind == "umrows":
        total = len(elems) ** job.n
        if total > job.budget:
            raise BudgetExceeded(f"{total} candidate rows exceed budget {job.budget}")
        sections = {}
        for a in itertools.product(elems, repeat=job.n):
            for b in itertools.product(elems, repeat=job.n):
                if R.sum(R.mul(x, y) for x, y in zip(a, b)) == R.one:
                    sections[a] = b
                    break
        return list(sections), sections
    n = job.n
    slots = [(i, j) for i in range(n) for j in range(i + 1, n)]
    total = len(elems) ** len(slots)
    if total > job.budget:
        raise BudgetExceeded(f"{total} candidate matrices exceed budget {job.budget}")
    out = []
    for vals in itertools.product(elems, repeat=len(slots)):
        rows = [[R.zero] * n for _ in range(n)]
        for (i, j), v in zip(slots, vals):
            rows[i][j] = v
            rows[j][i] = R.neg(v)
        X = tuple(tuple(r) for r in rows)
        pf = pfaffian(AlternatingMatrix(R, X, ncols=n, _trusted=True))
        status, _ = R.unit_inverse(pf.value)
        if status == YES:
            out.append(X)
        elif status != "no":
            raise BadSpec(f"cannot decide whether Pfaffian {pf} is a unit")
    return out, None


def enumerate_objects(job):
    """All objects of the job: certified rows, or alternating invertible matrices."""
    states, sections = _enumerate_states(job)
    R = job.ring
    key = lambda st: _state_key(R, job.object_kind, st)  # noqa: E731
    states.sort(key=key)
    if job.object_kind == "umrows":
        return [UnimodularRow(R, a, sections[a]) for a in states]
    return [AlternatingMatrix(R, X, ncols=job.n, _trusted=True) for X in states]


# -- results ------------------------------------------------------------------------

@dataclass
class Orbit:
    rep: tuple
    members: tuple
    paths: dict
    pf: Optional[str] = None

    @property
    def size(self):
        return len(self.members)


@dataclass
class CensusResult:
    job: CensusJob
    generators: list
    orbits: list
    sections: Optional[dict] = None
    seed: Optional[int] = None
    _index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        for k, orb in enumerate(self.orbits):
            for m in orb.members:
                self._index[m] = k

    @property
    def orbit_count(self):
        return len(self.orbits)

    @property
    def orbit_sizes(self):
        return [o.size for o in self.orbits]

    @property
    def object_count(self):
        return sum(self.orbit_sizes)

    def _obj(self, state):
        R = self.job.ring
        if self.job.object_kind == "umrows":
            return UnimodularRow(R, state, self.sections[state])
        return AlternatingMatrix(R, state, ncols=self.job.n, _trusted=True)

    @property
    def canonical_reps(self):
        return [self._obj(o.rep) for o in self.orbits]

    @property
    def invariant_table(self):
        return [o.pf for o in self.orbits]

    def key(self, state):
        return _state_key(self.job.ring, self.job.object_kind, state)

    def orbit_of(self, obj):
        """Index of the orbit containing a row, row payload tuple or matrix."""
        if isinstance(obj, UnimodularRow):
            state = obj.a
        elif isinstance(obj, Matrix):
            state = obj.rows
        else:
            state = tuple(obj)
        return self._index[state]

    @property
    def witness_group(self):
        return "E" if self.job.generators == "E" else "SL"

    def witness(self, state):
        """Word carrying the canonical representative of its orbit to ``state``."""
        orb = self.orbits[self._index[state]]
        factors = tuple(self.generators[gi].factor for gi in orb.paths[state])
        s = 0
        if self.job.object_kind == "alt":
            s = max(0, self.job.stab_cap - self.job.n // 2)
        return WitnessWord(factors, s)

    @property
    def witness_paths(self):
        return {m: self.witness(m) for o in self.orbits for m in o.members}

    def verify_witnesses(self):
        """Replay every witness path; returns the list of failing members."""
        R = self.job.ring
        bad = []
        for orb in self.orbits:
            rep = self._obj(orb.rep)
            for m in orb.members:
                w = self.witness(m)
                if self.job.object_kind == "umrows":
                    ok = replay_row(R, orb.rep, w) == m
                else:
                    ok = check_equiv_witness(self._obj(m), rep, w, self.witness_group)
                if not ok:
                    bad.append(m)
        return bad

    def pfaffian_constant(self):
        """Each congruence class has a single Pfaffian (alt jobs only)."""
        R = self.job.ring
        for orb in self.orbits:
            values = {str(pfaffian(AlternatingMatrix(R, m, _trusted=True))) for m in orb.members}
            if values != {orb.pf}:
                return False
        return True

    def to_report(self):
        orbits = []
        R = self.job.ring
        for o in self.orbits:
            if self.job.object_kind == "umrows":
                rep = [R.to_str(x) for x in o.rep]
            else:
                rep = [[R.to_str(x) for x in r] for r in o.rep]
            entry = {"size": o.size, "rep": rep}
            if o.pf is not None:
                entry["pf"] = o.pf
            orbits.append(entry)
        return {"job": self.job.to_json(), "orbits": orbits,
                "generator_set": self.job.generators,
                "generator_note": GENERATOR_NOTES[self.job.generators],
                "stab_cap": self.job.stab_cap,
                "objects": self.object_count, "label": "observation"}

    def dumps(self):
        return _dumps(self.to_report())


def replay_row(ring, rep, word):
    """Apply the factors of ``word`` to a row payload tuple, left to right."""
    a = Matrix(ring, [tuple(rep)], _trusted=True)
    for f in word.factors:
        a = a @ build_generator(f, len(rep), ring)
    return a.rows[0]


def orbit_bfs(job, seed=None):
    """Partition the job's objects into orbits.

    With ``seed`` the generator order and the order in which start points
    are tried are shuffled; the partition and canonical representatives must
    not change (witness paths may).
    """
    R = job.ring
    kind = job.object_kind
    states, sections = _enumerate_states(job)
    key = lambda st: _state_key(R, kind, st)  # noqa: E731
    gens = make_generators(R, job.generators, job.level, job.budget)
    starts = sorted(states, key=key)
    if seed is not None:
        rng = random.Random(seed)
        rng.shuffle(gens)
        rng.shuffle(starts)
    act = _row_actor(R) if kind == "umrows" else _alt_actor(R)
    s = job.stab_cap if kind == "alt" else 0
    lift = (lambda X: _stabilized(R, X, s)) if s else (lambda X: X)  # noqa: E731
    state_set = set(states)
    budget = job.budget
    assigned = set()
    orbits = []
    for start in starts:
        if start in assigned:
            continue
        parents = _bfs(lift(start), gens, act, budget)
        budget -= len(parents)
        if s == 0:
            stray = [x for x in parents if x not in state_set]
            if stray:
                raise AssertionError(f"generators leave the object set: {stray[0]}")
            members = list(parents)
        else:
            members = [x for x in states if lift(x) in parents]
        members.sort(key=key)
        rep = members[0]
        if rep != start:
            parents = _bfs(lift(rep), gens, act, budget)
        if s:
            # map lifted path endpoints back to the objects
            paths = {m: _trace(parents, lift(m)) for m in members}
        else:
            paths = {m: _trace(parents, m) for m in members}
        pf = None
        if kind == "alt":
            pf = str(pfaffian(AlternatingMatrix(R, rep, _trusted=True)))
        assigned.update(members)
        orbits.append(Orbit(rep, tuple(members), paths, pf))
    orbits.sort(key=lambda o: key(o.rep))
    return CensusResult(job, gens, orbits, sections, seed)


def compare_generator_sets(job, set_a, set_b):
    """Compare the orbit partitions of two generator sets on the same objects."""
    ra = orbit_bfs(replace(job, generators=set_a))
    rb = orbit_bfs(replace(job, generators=set_b))
    pa = {frozenset(o.members) for o in ra.orbits}
    pb = {frozenset(o.members) for o in rb.orbits}
    report = {"job": replace(job, generators=set_a).to_json(), "set_a": set_a, "set_b": set_b,
              "orbits_a": ra.orbit_sizes, "orbits_b": rb.orbit_sizes,
              "coincide": pa == pb, "separating": None, "label": "observation"}
    if pa != pb:
        for o in ra.orbits:
            for m in o.members:
                oa = set(o.members)
                ob = set(rb.orbits[rb._index[m]].members)
                if oa != ob:
                    other = min(oa ^ ob, key=ra.key)
                    report["separating"] = {
                        "object": json.loads(ra.key(m)), "other": json.loads(ra.key(other)),
                        "same_orbit_under": set_a if other in oa else set_b}
                    return report
    return report


def find_equivalence(M, N, group="E", cap=DEFAULT_STAB_CAP, budget=DEFAULT_BUDGET):
    """Search for a witness of M ~ N over a finite ring, stabilizing up to ``cap``.

    Returns a verified WitnessWord, or None when the orbits at every level
    up to the cap were exhausted without meeting.
    """
    M = AlternatingMatrix.from_matrix(M)
    N = AlternatingMatrix.from_matrix(N)
    R = M.ring
    if M.shape != N.shape:
        raise BadSpec("find_equivalence compares matrices of equal size")
    if not R.is_finite:
        raise BadSpec("find_equivalence needs a finite ring")
    k = M.size_half
    act = _alt_actor(R)
    for s in range(cap + 1):
        size = M.nrows + 2 * s
        gens = make_generators(R, "E" if group == "E" else "SL", size, budget)
        start = _stabilized(R, N.rows, s)
        target = _stabilized(R, M.rows, s)
        parents = _bfs(start, gens, act, budget, target=target)
        budget -= len(parents)
        if target in parents:
            word = WitnessWord(tuple(gens[gi].factor for gi in _trace(parents, target)),
                               max(0, s - k))
            if not check_equiv_witness(M, N, word, group):
                raise AssertionError("census produced a witness that does not replay")
            return word
    return None
