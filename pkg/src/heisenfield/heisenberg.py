"""The Heisenberg group H(F) of upper unitriangular 3x3 matrices.

``h(a, b, c)`` stands for the matrix::

    [1 a c]
    [0 1 b]
    [0 0 1]

so that ``h(a,b,c) * h(a',b',c') = h(a+a', b+b', c+c'+ab')``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .errors import ContextMismatch, SizeBoundError
from .fields import FieldCtx, FieldElem

DEFAULT_MAX_GROUP_ORDER = 729


@dataclass(frozen=True)
class HElem:
    a: FieldElem
    b: FieldElem
    c: FieldElem

    @property
    def ctx(self):
        return self.a.ctx

    def __mul__(self, other):
        return h_mul(self, other)

    def inverse(self):
        return h_inv(self)

    def __iter__(self):
        return iter((self.a, self.b, self.c))

    def __repr__(self):
        return f"h({self.a}, {self.b}, {self.c})"


def h(ctx, a, b, c):
    """Build ``h(a, b, c)`` over ``ctx`` from anything the field can coerce."""
    return HElem(ctx(a), ctx(b), ctx(c))


def _check(x, y):
    if x.ctx != y.ctx:
        raise ContextMismatch(f"elements of H({x.ctx}) and H({y.ctx})")


def h_mul(x, y):
    _check(x, y)
    return HElem(x.a + y.a, x.b + y.b, x.c + y.c + x.a * y.b)


def h_inv(x):
    return HElem(-x.a, -x.b, x.a * x.b - x.c)


def h_identity(ctx):
    return HElem(ctx.zero, ctx.zero, ctx.zero)


def delta(u, v):
    """The determinant ``u1*v2 - u2*v1`` of the first two coordinates."""
    _check(u, v)
    return u.a * v.b - u.b * v.a


def commutator(x, y):
    """``[x, y] = x^-1 y^-1 x y``, computed with the group law."""
    _check(x, y)
    return h_mul(h_mul(h_inv(x), h_inv(y)), h_mul(x, y))


def is_central(x):
    return x.a.is_zero() and x.b.is_zero()


class HGroup:
    """H(F) over a field context.

    Finite groups list their elements lexicographically in ``(a, b, c)``
    under the field enumeration; element ``i`` has coordinates
    ``(i // q^2, (i // q) % q, i % q)`` with ``q = |F|``.
    """

    def __init__(self, ctx: FieldCtx, max_order=DEFAULT_MAX_GROUP_ORDER):
        self.ctx = ctx
        if ctx.is_finite and ctx.order ** 3 > max_order:
            raise SizeBoundError(f"H({ctx}) has {ctx.order ** 3} elements, bound is {max_order}")
        self.identity = h_identity(ctx)

    @property
    def is_finite(self):
        return self.ctx.is_finite

    @property
    def order(self):
        return self.ctx.order ** 3 if self.ctx.is_finite else None

    def __len__(self):
        if not self.is_finite:
            raise TypeError("H(Q) is infinite")
        return self.order

    def element(self, i):
        """The i-th element; for Q this walks N^3 by max coordinate, then lex."""
        if self.is_finite:
            q = self.ctx.order
            return HElem(self.ctx.element(i // (q * q)), self.ctx.element((i // q) % q),
                         self.ctx.element(i % q))
        return HElem(*(self.ctx.element(j) for j in unrank_triple(i)))

    def index(self, x):
        ia, ib, ic = (self.ctx.index(t) for t in x)
        if self.is_finite:
            q = self.ctx.order
            return (ia * q + ib) * q + ic
        return rank_triple(ia, ib, ic)

    @cached_property
    def elements(self):
        if not self.is_finite:
            raise TypeError("H(Q) cannot be materialized")
        return [self.element(i) for i in range(self.order)]

    def __iter__(self):
        if self.is_finite:
            return iter(self.elements)
        return (self.element(i) for i in _count())

    def center(self):
        return [x for x in self.elements if is_central(x)]

    # -- vectorized tables --------------------------------------------------
    def mul_table(self):
        """``table[i, j]`` = index of ``element(i) * element(j)``.

        Computed from the field tables with the triple formula.
        """
        if not self.is_finite:
            raise TypeError("only finite groups have a table")
        q = self.ctx.order
        A, M = self.ctx.add_table, self.ctx.mul_table
        idx = np.arange(q ** 3)
        a, b, c = idx // (q * q), (idx // q) % q, idx % q
        ra = A[a[:, None], a[None, :]]
        rb = A[b[:, None], b[None, :]]
        rc = A[A[c[:, None], c[None, :]], M[a[:, None], b[None, :]]]
        return (ra * q + rb) * q + rc

    def to_json(self):
        """``{"order", "field", "elements", "mul"}``; ``mul`` is the flat n*n table."""
        table = self.mul_table()
        return {
            "order": self.order,
            "field": self.ctx.spec,
            "elements": [[self.ctx.to_json(t) for t in x] for x in self.elements],
            "mul": table.ravel().tolist(),
        }

    def dumps(self):
        return json.dumps(self.to_json(), separators=(",", ":"))

    def __repr__(self):
        return f"HGroup({self.ctx})"


def theta(ctx, max_order=DEFAULT_MAX_GROUP_ORDER):
    """The embedding F -> H(F)."""
    return HGroup(ctx, max_order=max_order)


def matrix(x):
    """3x3 matrix of field elements (used as an independent check of h_mul)."""
    z, o = x.ctx.zero, x.ctx.one
    return [[o, x.a, x.c], [z, o, x.b], [z, z, o]]


def _count():
    i = 0
    while True:
        yield i
        i += 1


# -- N^3 ordered by max coordinate, then lexicographically ----------------------

def unrank_triple(n):
    m = round(n ** (1 / 3))
    while m ** 3 > n:
        m -= 1
    while (m + 1) ** 3 <= n:
        m += 1
    r = n - m ** 3
    block = 2 * m + 1  # pairs (b, c) with max(b, c) == m
    if r < m * block:
        a, r = divmod(r, block)
        if r < m:
            return a, r, m
        return a, m, r - m
    r -= m * block
    b, c = divmod(r, m + 1)
    return m, b, c


def rank_triple(a, b, c):
    m = max(a, b, c)
    base = m ** 3
    if a < m:
        if b < m:
            return base + a * (2 * m + 1) + b
        return base + a * (2 * m + 1) + m + c
    return base + m * (2 * m + 1) + b * (m + 1) + c
