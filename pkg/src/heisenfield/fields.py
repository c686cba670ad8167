"""Exact arithmetic over GF(p), GF(p^k) and the rationals.

Elements are :class:`FieldElem` values tagged with their owning
:class:`FieldCtx`. The context does the arithmetic on canonical raw values:

* ``GF(p)``: an ``int`` residue in ``[0, p)``;
* ``GF(p^k)``: a tuple of ``k`` coefficients ``(c0, ..., c_{k-1})`` of a
  polynomial in the generator, reduced mod ``p`` and the modulus;
* ``Q``: a ``gmpy2.mpq`` (arbitrary precision, always reduced, positive
  denominator).

Every finite field has a total enumeration (``element(i)`` / ``index(x)``).
The rationals are enumerated as ``0, q1, -q1, q2, -q2, ...`` where ``q1, q2,
...`` walk the Stern-Brocot tree breadth first (``1, 1/2, 2, 1/3, 2/3, 3/2,
3, ...``).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property

import gmpy2
import numpy as np

from .errors import ContextMismatch, FieldError, SizeBoundError

EXT_MAX_ORDER = 64


def is_prime(n):
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


# -- polynomials over GF(p), coefficient lists lowest degree first -------------

def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def poly_divmod(num, den, p):
    num, den = _trim(num), _trim(den)
    if not den:
        raise ZeroDivisionError("polynomial division by zero")
    inv_lead = pow(den[-1], p - 2, p)
    q = [0] * max(len(num) - len(den) + 1, 1)
    r = list(num)
    while len(r) >= len(den) and r:
        shift = len(r) - len(den)
        coef = r[-1] * inv_lead % p
        q[shift] = coef
        for i, d in enumerate(den):
            r[shift + i] = (r[shift + i] - coef * d) % p
        r = _trim(r)
    return _trim(q), r


def is_irreducible(poly, p):
    """Trial division by every monic polynomial of degree 1..deg/2."""
    poly = _trim(poly)
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for low in itertools.product(range(p), repeat=d):
            _, r = poly_divmod(poly, list(low) + [1], p)
            if not r:
                return False
    return True


_TERM = re.compile(r"^(\d*)\*?(x(?:\^(\d+))?)?$")


def parse_poly(text, p):
    """Parse ``"x^2+x+1"``-style text into coefficients mod p (lowest first)."""
    s = text.replace(" ", "").replace("**", "^")
    if not s:
        raise FieldError("empty polynomial")
    s = s.replace("-", "+-")
    coeffs = {}
    for raw in s.split("+"):
        if not raw:
            continue
        sign = 1
        if raw.startswith("-"):
            sign, raw = -1, raw[1:]
        m = _TERM.match(raw)
        if not m or (not m.group(1) and not m.group(2)):
            raise FieldError(f"cannot parse polynomial term {raw!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if m.group(2):
            e = int(m.group(3)) if m.group(3) else 1
        else:
            e = 0
        coeffs[e] = coeffs.get(e, 0) + sign * c
    deg = max(coeffs)
    return _trim([coeffs.get(i, 0) % p for i in range(deg + 1)])


def format_poly(coeffs):
    terms = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        mono = "" if e == 0 else ("x" if e == 1 else f"x^{e}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms) or "0"


# -- Stern-Brocot enumeration of the positive rationals ------------------------

def stern_brocot(n):
    """The n-th node (n >= 1) of the Stern-Brocot tree in breadth-first order.

    The bits of ``n`` after its leading one spell the path from the root:
    ``0`` goes left, ``1`` goes right.
    """
    if n < 1:
        raise ValueError("Stern-Brocot index starts at 1")
    ln, ld, rn, rd = 0, 1, 1, 0
    for bit in bin(n)[3:]:
        mn, md = ln + rn, ld + rd
        if bit == "0":
            rn, rd = mn, md
        else:
            ln, ld = mn, md
    return Fraction(ln + rn, ld + rd)


def stern_brocot_index(q):
    """Inverse of :func:`stern_brocot` for a positive rational."""
    q = Fraction(q)
    if q <= 0:
        raise ValueError("only positive rationals are in the tree")
    n = 1
    ln, ld, rn, rd = 0, 1, 1, 0
    while True:
        m = Fraction(ln + rn, ld + rd)
        if m == q:
            return n
        if q < m:
            rn, rd = m.numerator, m.denominator
            n = 2 * n
        else:
            ln, ld = m.numerator, m.denominator
            n = 2 * n + 1


# -- contexts and elements -----------------------------------------------------

@dataclass(frozen=True)
class FieldCtx:
    """A field: ``kind`` is ``"prime"``, ``"ext"`` or ``"rationals"``.

    Build one with :func:`field_make` or :func:`parse_field_spec`; the
    constructor itself does not validate.
    """

    kind: str
    p: int = 0
    k: int = 1
    modulus: tuple = field(default=(), compare=True)

    # -- sizes and enumeration ----------------------------------------------
    @property
    def is_finite(self):
        return self.kind != "rationals"

    @property
    def order(self):
        """Number of elements, or ``None`` for the rationals."""
        if self.kind == "rationals":
            return None
        return self.p ** self.k

    @property
    def characteristic(self):
        return 0 if self.kind == "rationals" else self.p

    def element(self, i):
        """The i-th element of the fixed enumeration."""
        return FieldElem(self, self._raw_element(i))

    def _raw_element(self, i):
        if i < 0:
            raise IndexError(i)
        if self.kind == "prime":
            if i >= self.p:
                raise IndexError(i)
            return i
        if self.kind == "ext":
            if i >= self.order:
                raise IndexError(i)
            return tuple((i // self.p ** j) % self.p for j in range(self.k))
        if i == 0:
            return gmpy2.mpq(0)
        q = stern_brocot((i + 1) // 2)
        q = gmpy2.mpq(q.numerator, q.denominator)
        return q if i % 2 == 1 else -q

    def index(self, x):
        """Position of ``x`` in the enumeration (inverse of :meth:`element`)."""
        v = self._raw(x)
        if self.kind == "prime":
            return v
        if self.kind == "ext":
            return sum(c * self.p ** j for j, c in enumerate(v))
        if v == 0:
            return 0
        n = stern_brocot_index(Fraction(int(abs(v).numerator), int(abs(v).denominator)))
        return 2 * n - 1 if v > 0 else 2 * n

    def elements(self):
        """Iterate the enumeration (infinite for the rationals)."""
        if self.is_finite:
            return (self.element(i) for i in range(self.order))
        return (self.element(i) for i in itertools.count())

    # -- constants and coercion ---------------------------------------------
    @cached_property
    def zero(self):
        return FieldElem(self, self.canon(0))

    @cached_property
    def one(self):
        return FieldElem(self, self.canon(1))

    @property
    def gen(self):
        """Generator ``x`` of an extension field (root of the modulus)."""
        if self.kind != "ext":
            raise FieldError("only extension fields have a generator")
        return FieldElem(self, tuple(1 if j == 1 else 0 for j in range(self.k)))

    def __call__(self, value):
        return FieldElem(self, self.canon(value))

    def canon(self, value):
        """Canonical raw value of ``value`` (int, rational, str, tuple or element)."""
        if isinstance(value, FieldElem):
            if value.ctx != self:
                raise ContextMismatch(f"element of {value.ctx} used in {self}")
            return value.value
        if self.kind == "prime":
            if not isinstance(value, int) and hasattr(value, "denominator"):
                num, den = int(value.numerator), int(value.denominator)
                return (num * pow(den, -1, self.p)) % self.p
            return int(value) % self.p
        if self.kind == "ext":
            if isinstance(value, (tuple, list)):
                c = [int(a) % self.p for a in value]
                if len(c) > self.k:
                    _, c = poly_divmod(c, list(self.modulus), self.p)
                return tuple(c) + (0,) * (self.k - len(c))
            return (int(value) % self.p,) + (0,) * (self.k - 1)
        if isinstance(value, Fraction):
            return gmpy2.mpq(value.numerator, value.denominator)
        return gmpy2.mpq(value)

    def _raw(self, x):
        if isinstance(x, FieldElem):
            if x.ctx != self:
                raise ContextMismatch(f"element of {x.ctx} used in {self}")
            return x.value
        return self.canon(x)

    # -- raw arithmetic -----------------------------------------------------
    def add(self, a, b):
        if self.kind == "prime":
            return (a + b) % self.p
        if self.kind == "ext":
            return tuple((x + y) % self.p for x, y in zip(a, b))
        return a + b

    def neg(self, a):
        if self.kind == "prime":
            return (-a) % self.p
        if self.kind == "ext":
            return tuple((-x) % self.p for x in a)
        return -a

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def mul(self, a, b):
        if self.kind == "prime":
            return (a * b) % self.p
        if self.kind == "ext":
            prod = [0] * (2 * self.k - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        prod[i + j] += x * y
            _, r = poly_divmod([c % self.p for c in prod], list(self.modulus), self.p)
            return tuple(r) + (0,) * (self.k - len(r))
        return a * b

    def is_zero(self, a):
        if self.kind == "ext":
            return not any(a)
        return a == 0

    def inv(self, a):
        if self.is_zero(a):
            raise ZeroDivisionError("inverse of zero")
        if self.kind == "prime":
            return pow(a, self.p - 2, self.p)
        if self.kind == "ext":
            result, base, e = self.canon(1), a, self.order - 2
            while e:
                if e & 1:
                    result = self.mul(result, base)
                base = self.mul(base, base)
                e >>= 1
            return result
        return 1 / a

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    # -- tables for vectorized work on finite fields ------------------------
    @cached_property
    def add_table(self):
        return self._table(self.add)

    @cached_property
    def mul_table(self):
        return self._table(self.mul)

    def _table(self, op):
        if not self.is_finite:
            raise FieldError("operation tables exist only for finite fields")
        n = self.order
        raws = [self._raw_element(i) for i in range(n)]
        t = np.empty((n, n), dtype=np.int64)
        for i, a in enumerate(raws):
            for j, b in enumerate(raws):
                t[i, j] = self.index(op(a, b))
        return t

    # -- text ---------------------------------------------------------------
    @property
    def spec(self):
        """The textual spec accepted by :func:`parse_field_spec`."""
        if self.kind == "prime":
            return f"gf:{self.p}"
        if self.kind == "ext":
            return f"gf:{self.order}:{format_poly(self.modulus)}"
        return "q"

    def __str__(self):
        if self.kind == "prime":
            return f"GF({self.p})"
        if self.kind == "ext":
            return f"GF({self.p}^{self.k})"
        return "Q"

    def format(self, x):
        v = self._raw(x)
        if self.kind == "ext":
            return format_poly(list(v)).replace("x", "g")
        return str(v)

    def to_json(self, x):
        v = self._raw(x)
        if self.kind == "prime":
            return v
        if self.kind == "ext":
            return list(v)
        return str(v)


class FieldElem:
    """An immutable element of a :class:`FieldCtx`."""

    __slots__ = ("ctx", "value")

    def __init__(self, ctx, value):
        object.__setattr__(self, "ctx", ctx)
        object.__setattr__(self, "value", value)

    def __setattr__(self, name, value):
        raise AttributeError("FieldElem is immutable")

    def _other(self, other):
        if isinstance(other, FieldElem):
            if other.ctx != self.ctx:
                raise ContextMismatch(f"cannot combine {self.ctx} and {other.ctx}")
            return other.value
        return self.ctx.canon(other)

    def __add__(self, other):
        return FieldElem(self.ctx, self.ctx.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElem(self.ctx, self.ctx.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElem(self.ctx, self.ctx.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self.value, self._other(other)))

    def __rtruediv__(self, other):
        return FieldElem(self.ctx, self.ctx.div(self._other(other), self.value))

    def __neg__(self):
        return FieldElem(self.ctx, self.ctx.neg(self.value))

    def inverse(self):
        return FieldElem(self.ctx, self.ctx.inv(self.value))

    def is_zero(self):
        return self.ctx.is_zero(self.value)

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.ctx == other.ctx and self.value == other.value
        if isinstance(other, (int, Fraction, type(gmpy2.mpq()))) and self.ctx.kind != "ext":
            return self.value == self.ctx.canon(other)
        return NotImplemented

    def __hash__(self):
        # agrees with hash(int) / hash(Fraction) / hash(mpq) so mixed comparisons stay sound
        return hash(self.value)

    @property
    def index(self):
        return self.ctx.index(self)

    def __repr__(self):
        return f"{self.ctx}({self.ctx.format(self)})"

    def __str__(self):
        return self.ctx.format(self)


# -- construction --------------------------------------------------------------

def field_make(kind, p=None, k=1, modulus=None, max_order=EXT_MAX_ORDER):
    """Validate and build a :class:`FieldCtx`.

    ``kind`` is ``"prime"`` (needs ``p``), ``"ext"`` (needs ``p``, ``k`` and a
    monic-izable irreducible ``modulus`` of degree ``k``, as coefficients or
    text) or ``"rationals"``.
    """
    if kind == "rationals":
        return FieldCtx("rationals")
    if p is None or p < 2:
        raise FieldError(f"characteristic must be at least 2, got {p}")
    if not is_prime(p):
        raise FieldError(f"{p} is not prime")
    if kind == "prime":
        return FieldCtx("prime", p, 1, ())
    if kind != "ext":
        raise FieldError(f"unknown field kind {kind!r}")
    if k < 1:
        raise FieldError("extension degree must be at least 1")
    if p ** k > max_order:
        raise SizeBoundError(f"GF({p}^{k}) has {p ** k} elements, bound is {max_order}")
    if modulus is None:
        raise FieldError("an extension field needs an explicit modulus polynomial")
    coeffs = parse_poly(modulus, p) if isinstance(modulus, str) else _trim([c % p for c in modulus])
    if len(coeffs) - 1 != k:
        raise FieldError(f"modulus has degree {len(coeffs) - 1}, expected {k}")
    lead_inv = pow(coeffs[-1], p - 2, p)
    coeffs = [c * lead_inv % p for c in coeffs]
    if not is_irreducible(coeffs, p):
        raise FieldError(f"{format_poly(coeffs)} is reducible over GF({p})")
    if k == 1:
        return FieldCtx("prime", p, 1, ())
    return FieldCtx("ext", p, k, tuple(coeffs))


def _prime_power(q):
    for p in range(2, q + 1):
        if q % p == 0:
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 and is_prime(p) else None
    return None


def parse_field_spec(spec, max_order=EXT_MAX_ORDER):
    """Parse ``gf:p``, ``gf:q:modulus`` (q = p^k) or ``q``."""
    s = spec.strip().lower()
    if s in ("q", "rationals", "qq"):
        return field_make("rationals")
    parts = s.split(":")
    if parts[0] != "gf" or len(parts) not in (2, 3):
        raise FieldError(f"bad field spec {spec!r}; use gf:p, gf:p^k:modulus or q")
    try:
        q = int(parts[1])
    except ValueError:
        raise FieldError(f"bad field order in {spec!r}") from None
    if len(parts) == 2:
        if not is_prime(q):
            raise FieldError(f"{q} is not prime; extension fields need gf:q:modulus")
        return field_make("prime", q)
    pk = _prime_power(q)
    if pk is None:
        raise FieldError(f"{q} is not a prime power")
    p, k = pk
    return field_make("ext", p, k, parts[2], max_order=max_order)


# -- checking recovered fields -------------------------------------------------

def check_field_axioms(elements, add, mul, zero, one, limit=None):
    """Exhaustively check the field axioms on ``elements``.

    ``add`` and ``mul`` are callables on whatever the elements are (ids,
    classes, ...). Returns a list of violation dicts; empty means a field.
    """
    elems = list(elements)
    bad = []

    def fail(law, *w):
        bad.append({"law": law, "witness": list(w)})

    eset = set(elems)
    if zero == one:
        fail("zero != one", zero)
    for a in elems:
        for b in elems:
            s, m = add(a, b), mul(a, b)
            if s not in eset:
                fail("add closed", a, b)
            if m not in eset:
                fail("mul closed", a, b)
            if s != add(b, a):
                fail("add commutative", a, b)
            if m != mul(b, a):
                fail("mul commutative", a, b)
        if add(a, zero) != a:
            fail("add identity", a)
        if mul(a, one) != a:
            fail("mul identity", a)
        if not any(add(a, b) == zero for b in elems):
            fail("add inverse", a)
        if a != zero and not any(mul(a, b) == one for b in elems):
            fail("mul inverse", a)
    for a in elems:
        for b in elems:
            ab_s, ab_m = add(a, b), mul(a, b)
            for c in elems:
                if add(ab_s, c) != add(a, add(b, c)):
                    fail("add associative", a, b, c)
                if mul(ab_m, c) != mul(a, mul(b, c)):
                    fail("mul associative", a, b, c)
                if mul(a, add(b, c)) != add(ab_m, mul(a, c)):
                    fail("distributive", a, b, c)
                if limit and len(bad) >= limit:
                    return bad
    return bad


def find_field_isomorphism(ctx, elements, add, mul, zero, one):
    """An isomorphism ``ctx -> (elements, add, mul)`` as a dict, or ``None``.

    Prime fields: ``n*1 -> n*one`` (extend additively from one). Extension
    fields: try every root ``r`` of the modulus and send ``sum c_i g^i`` to
    ``sum c_i r^i``. The candidate is checked exhaustively before return.
    """
    elems = list(elements)
    if not ctx.is_finite or len(elems) != ctx.order:
        return None

    def scal(c, x):
        acc = zero
        for _ in range(c):
            acc = add(acc, x)
        return acc

    def power(x, e):
        acc = one
        for _ in range(e):
            acc = mul(acc, x)
        return acc

    if ctx.kind == "prime":
        candidates = [None]
    else:
        candidates = elems

    for r in candidates:
        if ctx.kind == "prime":
            def image(a):
                return scal(a.value, one)
        else:
            pw = [power(r, j) for j in range(ctx.k + 1)]
            # r must be a root of the (monic) modulus
            val = zero
            for j, c in enumerate(ctx.modulus):
                val = add(val, scal(c, pw[j]))
            if val != zero:
                continue

            def image(a, pw=pw):
                acc = zero
                for j, c in enumerate(a.value):
                    acc = add(acc, scal(c, pw[j]))
                return acc

        iso = {a: image(a) for a in ctx.elements()}
        if len(set(iso.values())) != len(elems) or not set(iso.values()) <= set(elems):
            continue
        if all(
            iso[a + b] == add(iso[a], iso[b]) and iso[a * b] == mul(iso[a], iso[b])
            for a in iso for b in iso
        ):
            return iso
    return None
