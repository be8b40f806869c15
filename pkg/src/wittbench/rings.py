"""Presented commutative rings with canonical-form arithmetic.

A ring object is a small immutable "handle" that knows how to do arithmetic
on raw payloads (Python ints, or tuples of monomial terms).  `RingElement`
pairs a payload with its ring and gives the usual operator syntax.  Matrix
code works on payloads directly, which keeps the inner loops cheap.

Supported presentations:

* ``IntegerRing``            -- Z, arbitrary precision
* ``ModularRing(m)``         -- Z/m, residues in [0, m)
* ``PolynomialRing``         -- Z[vars] or (Z/m)[vars] with a fixed monomial order
* ``QuotientRing``           -- a polynomial ring modulo ONE relation with monic
                                leading term; division by the relation gives
                                a canonical normal form
"""

import heapq
import itertools
import json
import math
import re
from dataclasses import dataclass
from typing import Optional

from .errors import BadSpec, MixedRings, ParseError

MONOMIAL_ORDERS = ("lex", "grlex", "grevlex")

YES, NO, UNKNOWN = "yes", "no", "unknown"


def _order_key(order):
    if order == "lex":
        return lambda e: e
    if order == "grlex":
        return lambda e: (sum(e),) + e
    if order == "grevlex":
        return lambda e: (sum(e),) + tuple(-x for x in reversed(e))
    raise BadSpec(f"unknown monomial order {order!r}")


def _prime_factors(m):
    out = []
    d = 2
    while d * d <= m:
        if m % d == 0:
            out.append(d)
            while m % d == 0:
                m //= d
        d += 1
    if m > 1:
        out.append(m)
    return out


def is_prime(m):
    return m >= 2 and _prime_factors(m) == [m]


@dataclass(frozen=True)
class UnitStatus:
    """Tri-state answer of `is_unit`.  ``inverse`` is set iff status is yes."""

    status: str
    inverse: Optional["RingElement"] = None

    @property
    def yes(self):
        return self.status == YES


class Ring:
    """Base class for ring handles.  Subclasses implement the payload API."""

    kind = "abstract"
    zero = 0
    one = 1

    # -- identity -----------------------------------------------------------

    def descriptor(self):
        raise NotImplementedError

    @property
    def _key(self):
        key = self.__dict__.get("_cached_key")
        if key is None:
            key = json.dumps(self.descriptor(), separators=(",", ":"))
            self.__dict__["_cached_key"] = key
        return key

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"{type(self).__name__}({self._key})"

    # -- payload arithmetic -------------------------------------------------

    def add(self, x, y):
        raise NotImplementedError

    def neg(self, x):
        raise NotImplementedError

    def mul(self, x, y):
        raise NotImplementedError

    def from_int(self, n):
        raise NotImplementedError

    def sub(self, x, y):
        return self.add(x, self.neg(y))

    def is_zero(self, x):
        return x == self.zero

    def pow(self, x, k):
        if k < 0:
            raise ValueError("negative exponent")
        result, base = self.one, x
        while k:
            if k & 1:
                result = self.mul(result, base)
            k >>= 1
            if k:
                base = self.mul(base, base)
        return result

    def sum(self, xs):
        acc = self.zero
        for x in xs:
            acc = self.add(acc, x)
        return acc

    # -- text form ----------------------------------------------------------

    def to_str(self, x):
        raise NotImplementedError

    def variable(self, name):
        raise ParseError(f"unknown symbol {name!r} in {self.kind} ring")

    def parse(self, text):
        """Parse an element string into a canonical payload."""
        return _Parser(self, text).run()

    def is_canonical(self, x):
        raise NotImplementedError

    # -- units --------------------------------------------------------------

    def unit_inverse(self, x):
        """Return (status, inverse payload or None)."""
        return UNKNOWN, None

    # -- finiteness ---------------------------------------------------------

    @property
    def is_finite(self):
        return False

    @property
    def size(self):
        return None

    def elements(self):
        raise BadSpec(f"{self.kind} ring is not enumerable")

    # -- element construction -----------------------------------------------

    def __call__(self, value):
        if isinstance(value, RingElement):
            if value.ring != self:
                raise MixedRings(f"element of {value.ring!r} used in {self!r}")
            return value
        if isinstance(value, bool):
            raise TypeError("bool is not a ring element")
        if isinstance(value, int):
            return RingElement(self, self.from_int(value))
        if isinstance(value, str):
            return RingElement(self, self.parse(value))
        raise TypeError(f"cannot coerce {type(value).__name__} into {self!r}")

    def element(self, payload):
        return RingElement(self, payload)

    def gens(self):
        return ()


class IntegerRing(Ring):
    kind = "int"

    def descriptor(self):
        return {"kind": "int"}

    def add(self, x, y):
        return x + y

    def neg(self, x):
        return -x

    def sub(self, x, y):
        return x - y

    def mul(self, x, y):
        return x * y

    def from_int(self, n):
        return int(n)

    def to_str(self, x):
        return str(x)

    def is_canonical(self, x):
        return type(x) is int

    def unit_inverse(self, x):
        if x in (1, -1):
            return YES, x
        return NO, None

    def is_domain(self):
        return True

    def is_nilpotent(self, x):
        return x == 0


class ModularRing(Ring):
    kind = "mod"

    def __init__(self, m):
        if isinstance(m, bool) or not isinstance(m, int) or m < 2:
            raise BadSpec(f"modulus must be an integer >= 2, got {m!r}")
        self.m = m

    def descriptor(self):
        return {"kind": "mod", "m": self.m}

    def add(self, x, y):
        return (x + y) % self.m

    def neg(self, x):
        return -x % self.m

    def sub(self, x, y):
        return (x - y) % self.m

    def mul(self, x, y):
        return x * y % self.m

    def from_int(self, n):
        return int(n) % self.m

    def to_str(self, x):
        return str(x)

    def is_canonical(self, x):
        return type(x) is int and 0 <= x < self.m

    def unit_inverse(self, x):
        if math.gcd(x, self.m) == 1:
            return YES, pow(x, -1, self.m)
        return NO, None

    def is_domain(self):
        return is_prime(self.m)

    def is_nilpotent(self, x):
        return all(x % p == 0 for p in _prime_factors(self.m))

    @property
    def is_finite(self):
        return True

    @property
    def size(self):
        return self.m

    def elements(self):
        return iter(range(self.m))


ZZ = IntegerRing()


def Zmod(m):
    return ModularRing(m)


_NAME_RE = re.compile(r"[^\W\d]\w*\Z")


class PolynomialRing(Ring):
    """Multivariate polynomials over Z or Z/m.

    Payload: tuple of ``(exponents, coefficient)`` pairs, sorted strictly
    descending in the ring's monomial order, zero coefficients dropped.
    The zero polynomial is the empty tuple.
    """

    kind = "poly"

    def __init__(self, base, variables, order="grlex"):
        if not isinstance(base, (IntegerRing, ModularRing)):
            raise BadSpec("polynomial coefficients must come from Z or Z/m")
        variables = tuple(variables)
        if not variables:
            raise BadSpec("polynomial ring needs at least one variable")
        if len(set(variables)) != len(variables):
            raise BadSpec(f"duplicate variable names in {variables}")
        for v in variables:
            if not isinstance(v, str) or not _NAME_RE.match(v):
                raise BadSpec(f"bad variable name {v!r}")
        if order not in MONOMIAL_ORDERS:
            raise BadSpec(f"unknown monomial order {order!r}")
        self.base = base
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self.key = _order_key(order)
        self.zero = ()
        self.one = (((0,) * self.nvars, base.one),)
        self._index = {v: i for i, v in enumerate(variables)}

    def descriptor(self):
        return {"kind": "poly", "base": self.base.descriptor(),
                "vars": list(self.variables), "order": self.order}

    # canonical assembly
    def _from_dict(self, d):
        bz = self.base.is_zero
        items = [(e, c) for e, c in d.items() if not bz(c)]
        items.sort(key=lambda t: self.key(t[0]), reverse=True)
        return tuple(items)

    def add(self, x, y):
        if not x:
            return y
        if not y:
            return x
        d = dict(x)
        badd = self.base.add
        for e, c in y:
            d[e] = badd(d[e], c) if e in d else c
        return self._from_dict(d)

    def neg(self, x):
        bneg = self.base.neg
        return tuple((e, bneg(c)) for e, c in x)

    def mul(self, x, y):
        if not x or not y:
            return ()
        d = {}
        badd, bmul = self.base.add, self.base.mul
        for e1, c1 in x:
            for e2, c2 in y:
                e = tuple(a + b for a, b in zip(e1, e2))
                c = bmul(c1, c2)
                d[e] = badd(d[e], c) if e in d else c
        return self._from_dict(d)

    def scale(self, c, x):
        """Multiply payload ``x`` by a base-ring coefficient payload ``c``."""
        bmul = self.base.mul
        return self._from_dict({e: bmul(c, cx) for e, cx in x})

    def from_int(self, n):
        c = self.base.from_int(n)
        if self.base.is_zero(c):
            return ()
        return (((0,) * self.nvars, c),)

    def constant(self, c):
        if self.base.is_zero(c):
            return ()
        return (((0,) * self.nvars, c),)

    def monomial(self, exps, c=None):
        c = self.base.one if c is None else c
        if self.base.is_zero(c) or not any(exps):
            return self.constant(c)
        return ((tuple(exps), c),)

    def variable(self, name):
        if name not in self._index:
            raise ParseError(f"unknown variable {name!r}")
        e = [0] * self.nvars
        e[self._index[name]] = 1
        return ((tuple(e), self.base.one),)

    def gens(self):
        return tuple(RingElement(self, self.variable(v)) for v in self.variables)

    def is_canonical(self, x):
        if not isinstance(x, tuple):
            return False
        keys = []
        for t in x:
            if not (isinstance(t, tuple) and len(t) == 2):
                return False
            e, c = t
            if not (isinstance(e, tuple) and len(e) == self.nvars
                    and all(type(a) is int and a >= 0 for a in e)):
                return False
            if not self.base.is_canonical(c) or self.base.is_zero(c):
                return False
            keys.append(self.key(e))
        return all(a > b for a, b in zip(keys, keys[1:]))

    def _mono_str(self, e):
        parts = []
        for name, k in zip(self.variables, e):
            if k == 1:
                parts.append(name)
            elif k > 1:
                parts.append(f"{name}^{k}")
        return "*".join(parts)

    def to_str(self, x):
        if not x:
            return "0"
        out = []
        one = self.base.one
        minus_one = self.base.neg(one)
        for e, c in x:
            mono = self._mono_str(e)
            if not mono:
                term = self.base.to_str(c)
            elif c == one:
                term = mono
            elif c == minus_one and isinstance(self.base, IntegerRing):
                term = "-" + mono
            else:
                term = f"{self.base.to_str(c)}*{mono}"
            if out and not term.startswith("-"):
                out.append("+")
            out.append(term)
        return "".join(out)

    def degree(self, x):
        return max((sum(e) for e, _ in x), default=-1)

    def constant_coeff(self, x):
        if x and not any(x[-1][0]):
            return x[-1][1]
        return self.base.zero

    def unit_inverse(self, x):
        # Over a commutative ring A, u + n with u in A^x and n nilpotent is a
        # unit of A[X], and every unit has this shape.
        base = self.base
        u = self.constant_coeff(x)
        status, uinv = base.unit_inverse(u)
        if status != YES:
            return NO, None
        if any(any(e) and not base.is_nilpotent(c) for e, c in x):
            return NO, None
        t = self.scale(base.neg(uinv), self.sub(x, self.constant(u)))
        inv, term = self.one, self.one
        while True:
            term = self.mul(term, t)
            if not term:
                break
            inv = self.add(inv, term)
        return YES, self.scale(uinv, inv)


class QuotientRing(Ring):
    """``base / (relation)`` for a single relation with unit leading coefficient 1.

    A single relation is its own Groebner basis, so full reduction by it
    yields a canonical representative for each residue class.
    """

    kind = "quot"

    def __init__(self, base, relation):
        if not isinstance(base, PolynomialRing):
            raise BadSpec("quotient base must be a polynomial ring")
        if isinstance(relation, RingElement):
            if relation.ring != base:
                raise MixedRings("relation does not live in the base ring")
            relation = relation.value
        elif isinstance(relation, str):
            relation = base.parse(relation)
        if not relation:
            raise BadSpec("relation must be nonzero")
        lead_e, lead_c = relation[0]
        if lead_c != base.base.one:
            raise BadSpec("relation must have leading coefficient 1")
        if not any(lead_e):
            raise BadSpec("relation is a unit constant; quotient is the zero ring")
        self.base = base
        self.relation = relation
        self.lead = lead_e
        self._tail = relation[1:]
        self.zero = ()
        self.one = base.one
        self.variables = base.variables

    def descriptor(self):
        return {"kind": "quot", "base": self.base.descriptor(),
                "relation": self.base.to_str(self.relation)}

    def _divides(self, e):
        return all(a >= b for a, b in zip(e, self.lead))

    def reduce(self, p):
        """Full reduction of a base-ring payload by the relation."""
        base = self.base
        if not any(self._divides(e) for e, _ in p):
            return p
        key = base.key
        badd, bmul, bneg, bzero = base.base.add, base.base.mul, base.base.neg, base.base.is_zero
        lead = self.lead
        terms = dict(p)
        heap = [_Desc(key(e), e) for e in terms]
        heapq.heapify(heap)
        out = {}
        while heap:
            e = heapq.heappop(heap).e
            c = terms.pop(e, None)
            if c is None or bzero(c):
                continue
            if not self._divides(e):
                out[e] = c
                continue
            q = tuple(a - b for a, b in zip(e, lead))
            mc = bneg(c)
            for te, tc in self._tail:
                ne = tuple(a + b for a, b in zip(q, te))
                nc = bmul(mc, tc)
                if ne in terms:
                    terms[ne] = badd(terms[ne], nc)
                else:
                    terms[ne] = nc
                    heapq.heappush(heap, _Desc(key(ne), ne))
        return base._from_dict(out)

    def add(self, x, y):
        return self.base.add(x, y)

    def neg(self, x):
        return self.base.neg(x)

    def mul(self, x, y):
        return self.reduce(self.base.mul(x, y))

    def from_int(self, n):
        return self.reduce(self.base.from_int(n))

    def variable(self, name):
        return self.reduce(self.base.variable(name))

    def gens(self):
        return tuple(RingElement(self, self.variable(v)) for v in self.variables)

    def to_str(self, x):
        return self.base.to_str(x)

    def is_canonical(self, x):
        return self.base.is_canonical(x) and not any(self._divides(e) for e, _ in x)

    # finite presentations: univariate over Z/m
    @property
    def is_finite(self):
        return isinstance(self.base.base, ModularRing) and self.base.nvars == 1

    @property
    def size(self):
        if not self.is_finite:
            return None
        return self.base.base.m ** self.lead[0]

    def elements(self):
        if not self.is_finite:
            raise BadSpec("quotient ring is not enumerable")
        m, d = self.base.base.m, self.lead[0]
        for coeffs in itertools.product(range(m), repeat=d):
            yield self.base._from_dict({(k,): c for k, c in enumerate(reversed(coeffs))})

    def unit_inverse(self, x):
        coeffs = self.base.base
        if not x:
            return NO, None
        if len(x) == 1 and not any(x[0][0]):
            status, inv = coeffs.unit_inverse(x[0][1])
            if status == YES:
                return YES, self.base.constant(inv)
        if not self.is_finite:
            return UNKNOWN, None
        if is_prime(coeffs.m):
            return self._univariate_field_inverse(x)
        if self.size <= 4096:
            for y in self.elements():
                if self.mul(x, y) == self.one:
                    return YES, y
            return NO, None
        return UNKNOWN, None

    def _univariate_field_inverse(self, x):
        p = self.base.base.m

        def dense(payload):
            deg = max((e[0] for e, _ in payload), default=-1)
            v = [0] * (deg + 1)
            for e, c in payload:
                v[e[0]] = c
            return v

        def trim(v):
            while v and v[-1] == 0:
                v.pop()
            return v

        def sub_mul(a, b, c, shift):
            # a - c * t^shift * b
            a = a + [0] * max(0, len(b) + shift - len(a))
            for i, bi in enumerate(b):
                a[i + shift] = (a[i + shift] - c * bi) % p
            return trim(a)

        def mul(a, b):
            if not a or not b:
                return []
            out = [0] * (len(a) + len(b) - 1)
            for i, ai in enumerate(a):
                for j, bj in enumerate(b):
                    out[i + j] = (out[i + j] + ai * bj) % p
            return trim(out)

        def divmod_(a, b):
            q, r = [], list(a)
            inv_lead = pow(b[-1], -1, p)
            while len(r) >= len(b):
                shift = len(r) - len(b)
                c = r[-1] * inv_lead % p
                q = q + [0] * max(0, shift + 1 - len(q))
                q[shift] = (q[shift] + c) % p
                r = sub_mul(r, b, c, shift)
            return trim(q), r

        r0, r1 = trim(dense(self.relation)), trim(dense(x))
        s0, s1 = [], [1]
        while r1:
            q, r = divmod_(r0, r1)
            r0, r1 = r1, r
            ns = s0
            for i, c in enumerate(mul(q, s1)):
                ns = sub_mul(ns, [c], 1, i) if c else ns
            s0, s1 = s1, ns
        if len(r0) != 1:
            return NO, None
        g_inv = pow(r0[0], -1, p)
        inv = self.reduce(self.base._from_dict(
            {(k,): c * g_inv % p for k, c in enumerate(s0) if c}))
        return YES, inv


class _Desc:
    """Heap entry ordering monomials largest-first."""

    __slots__ = ("k", "e")

    def __init__(self, k, e):
        self.k, self.e = k, e

    def __lt__(self, other):
        return self.k > other.k


class RingElement:
    """An element of a ring handle; equality is equality of canonical payloads."""

    __slots__ = ("ring", "value")

    def __init__(self, ring, value):
        self.ring = ring
        self.value = value

    def _other(self, other):
        if isinstance(other, RingElement):
            if other.ring != self.ring:
                raise MixedRings(f"{self.ring!r} vs {other.ring!r}")
            return other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.ring.from_int(other)
        return NotImplemented

    def __add__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.add(self.value, y))

    __radd__ = __add__

    def __sub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.sub(self.value, y))

    def __rsub__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.sub(y, self.value))

    def __mul__(self, other):
        y = self._other(other)
        if y is NotImplemented:
            return y
        return RingElement(self.ring, self.ring.mul(self.value, y))

    __rmul__ = __mul__

    def __neg__(self):
        return RingElement(self.ring, self.ring.neg(self.value))

    def __pow__(self, k):
        return RingElement(self.ring, self.ring.pow(self.value, k))

    def __eq__(self, other):
        if isinstance(other, RingElement):
            return self.ring == other.ring and self.value == other.value
        if isinstance(other, int) and not isinstance(other, bool):
            return self.value == self.ring.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring, self.value))

    def __str__(self):
        return self.ring.to_str(self.value)

    def __repr__(self):
        return f"RingElement({self.ring.kind}, {self})"

    def is_zero(self):
        return self.ring.is_zero(self.value)

    def is_unit(self):
        return is_unit(self)

    def inverse(self):
        from .errors import NotInvertible
        st = is_unit(self)
        if not st.yes:
            raise NotInvertible(f"{self} is not certified a unit ({st.status})")
        return st.inverse


def ring_arith(op, x, y=None):
    """Apply ``add``, ``sub``, ``mul`` or ``neg`` to ring elements."""
    if op == "neg":
        if y is not None:
            raise ValueError("neg takes one operand")
        return -x
    if y is None:
        raise ValueError(f"{op} needs two operands")
    if x.ring != y.ring:
        raise MixedRings(f"{x.ring!r} vs {y.ring!r}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    raise ValueError(f"unknown op {op!r}")


def normal_form(p):
    """Reduce an element modulo its quotient ring's relation (idempotent)."""
    ring = p.ring
    if not isinstance(ring, QuotientRing):
        raise BadSpec("normal_form needs an element of a quotient ring")
    return RingElement(ring, ring.reduce(p.value))


def is_unit(x):
    status, inv = x.ring.unit_inverse(x.value)
    if status == YES:
        if x.ring.mul(x.value, inv) != x.ring.one:
            raise AssertionError(f"bogus inverse for {x}")
        return UnitStatus(YES, RingElement(x.ring, inv))
    return UnitStatus(status)


# -- descriptors --------------------------------------------------------------

def ring_from_descriptor(d):
    if isinstance(d, str):
        try:
            d = json.loads(d)
        except json.JSONDecodeError as exc:
            raise ParseError(f"bad ring descriptor: {exc}") from None
    if not isinstance(d, dict) or "kind" not in d:
        raise ParseError(f"bad ring descriptor {d!r}")
    kind = d["kind"]
    try:
        if kind == "int":
            return ZZ
        if kind == "mod":
            return ModularRing(d["m"])
        if kind == "poly":
            return PolynomialRing(ring_from_descriptor(d["base"]), d["vars"],
                                  d.get("order", "grlex"))
        if kind == "quot":
            base = ring_from_descriptor(d["base"])
            return QuotientRing(base, d["relation"])
    except KeyError as exc:
        raise ParseError(f"ring descriptor missing field {exc}") from None
    raise ParseError(f"unknown ring kind {kind!r}")


def polynomial_ring(names, base=ZZ, order="grlex"):
    if isinstance(names, str):
        names = names.replace(",", " ").split()
    return PolynomialRing(base, names, order)


def sphere_ring(n, base=ZZ, order="grlex"):
    """Coordinate ring base[x1..xn, y1..yn]/(x1*y1 + ... + xn*yn - 1).

    Variables are ordered x1 > y1 > x2 > y2 > ..., so the leading monomial of
    the relation is x1*y1.
    """
    names = []
    for i in range(1, n + 1):
        names += [f"x{i}", f"y{i}"]
    P = PolynomialRing(base, names, order)
    rel = "+".join(f"x{i}*y{i}" for i in range(1, n + 1)) + "-1"
    return QuotientRing(P, rel)


def finite_field(p, modulus="t^2+t+1", var="t"):
    """F_p[var]/(modulus); irreducibility of ``modulus`` is the caller's job."""
    if not is_prime(p):
        raise BadSpec(f"{p} is not prime")
    P = PolynomialRing(ModularRing(p), [var])
    return QuotientRing(P, modulus)


# -- element parser -------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([^\W\d]\w*)|(\S))")


class _Parser:
    """Recursive descent over ``+ - * ^ ( )``, integers and variable names."""

    def __init__(self, ring, text):
        if not isinstance(text, str):
            raise ParseError(f"element must be a string, got {text!r}")
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m:
                raise ParseError(f"cannot tokenize {self.text!r}")
            num, name, sym = m.groups()
            if num is not None:
                self.tokens.append(("num", int(num)))
            elif name is not None:
                self.tokens.append(("name", name))
            else:
                if sym not in "+-*^()":
                    raise ParseError(f"unexpected {sym!r} in {self.text!r}")
                self.tokens.append(("sym", sym))
            pos = m.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def run(self):
        if not self.tokens:
            raise ParseError("empty element string")
        value = self.expr()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input in {self.text!r}")
        return value

    def expr(self):
        R = self.ring
        sign = 1
        if self.peek() == ("sym", "-"):
            self.take()
            sign = -1
        elif self.peek() == ("sym", "+"):
            self.take()
        acc = self.term()
        if sign < 0:
            acc = R.neg(acc)
        while self.peek() in (("sym", "+"), ("sym", "-")):
            op = self.take()[1]
            t = self.term()
            acc = R.add(acc, t) if op == "+" else R.sub(acc, t)
        return acc

    def term(self):
        acc = self.factor()
        while self.peek() == ("sym", "*"):
            self.take()
            acc = self.ring.mul(acc, self.factor())
        return acc

    def factor(self):
        base = self.atom()
        if self.peek() == ("sym", "^"):
            self.take()
            kind, k = self.take()
            if kind != "num":
                raise ParseError(f"exponent must be a nonnegative integer in {self.text!r}")
            base = self.ring.pow(base, k)
        return base

    def atom(self):
        kind, val = self.take()
        if kind == "num":
            return self.ring.from_int(val)
        if kind == "name":
            return self.ring.variable(val)
        if (kind, val) == ("sym", "("):
            v = self.expr()
            if self.take() != ("sym", ")"):
                raise ParseError(f"unbalanced parenthesis in {self.text!r}")
            return v
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")
