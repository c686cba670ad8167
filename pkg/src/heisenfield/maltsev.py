"""Recovering F from a copy of H(F) with a non-commuting pair as parameters.

For parameters ``(u, v)`` with ``[u, v] != 1`` the recovered field lives on
the center ``{x : [x,u] = [x,v] = 1}``: addition is the group law and
``x * y = z`` holds iff there are ``x', y'`` with

    [x',u] = 1,  [y',v] = 1,  [x',v] = x,  [u,y'] = y,  [x',y'] = z.

The witness conditions split into one pair of conditions on ``x'`` alone and
one on ``y'`` alone. The first pair in dovetailed order (max index, then lex)
satisfying both halves is therefore ``(first x', first y')``, so scanning the
two halves separately returns exactly the witness of the dovetailed pair
search, in linear rather than quadratic time.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .bbox import DEFAULT_BUDGET, TableGroup, first_noncommuting_pair
from .errors import BudgetExhausted, CommutingPairError, InterpretationError, NotCentralError
from .fields import check_field_axioms, find_field_isomorphism
from .heisenberg import HElem, delta


class RecoveredField:
    """The field carried by the center of ``host`` for parameters ``(u, v)``."""

    def __init__(self, host, u, v, budget=DEFAULT_BUDGET):
        if host.commutes(u, v):
            raise CommutingPairError(f"parameters {host.label(u)}, {host.label(v)} commute")
        self.host = host
        self.u = u
        self.v = v
        self.budget = budget
        self.zero = host.identity
        self.one = host.comm(u, v)
        self._memo = {}

    @property
    def params(self):
        return self.u, self.v

    @property
    def is_finite(self):
        return isinstance(self.host, TableGroup)

    def contains(self, x):
        if self.is_finite:
            return x in self.position
        h = self.host
        return h.comm(x, self.u) == h.identity and h.comm(x, self.v) == h.identity

    @cached_property
    def elements(self):
        """Center ids in enumeration order (finite hosts only)."""
        if not self.is_finite:
            raise TypeError("the center of a countable host is exposed via contains()")
        ct, e = self.host.comm_table, self.host.identity
        return [int(x) for x in np.nonzero((ct[:, self.u] == e) & (ct[:, self.v] == e))[0]]

    def __len__(self):
        return len(self.elements)

    def add(self, x, y):
        return self.host.mul(x, y)

    def neg(self, x):
        return self.host.inv(x)

    def mul(self, x, y):
        return mal_mul(self, x, y)

    # -- finite hosts: vectorized witness tables ----------------------------
    @cached_property
    def _witness_index(self):
        """First ``x'`` for each central x and first ``y'`` for each central y."""
        ct, e = self.host.comm_table, self.host.identity
        u, v = self.u, self.v
        xs, ys = {}, {}
        cand = np.nonzero(ct[:, u] == e)[0]
        for xp, x in zip(cand.tolist(), ct[cand, v].tolist()):
            xs.setdefault(x, xp)
        cand = np.nonzero(ct[:, v] == e)[0]
        for yp, y in zip(cand.tolist(), ct[u, cand].tolist()):
            ys.setdefault(y, yp)
        return xs, ys

    @cached_property
    def table(self):
        """``table[i][j]`` = element id of ``elements[i] * elements[j]``."""
        xs, ys = self._witness_index
        els = self.elements
        missing = [x for x in els if x not in xs or x not in ys]
        if missing:
            raise InterpretationError(
                "multiplication is not total: some central elements have no witness",
                [{"law": "mul total", "witness": [self.host.label(x) for x in missing[:5]]}])
        xp = np.array([xs[x] for x in els])
        yp = np.array([ys[y] for y in els])
        return self.host.comm_table[xp[:, None], yp[None, :]].tolist()

    @cached_property
    def position(self):
        return {x: i for i, x in enumerate(self.elements)}

    def all_witnesses(self, x, y):
        """Every ``(x', y', z)`` satisfying the witness conditions (finite)."""
        ct, e = self.host.comm_table, self.host.identity
        u, v = self.u, self.v
        xp = np.nonzero((ct[:, u] == e) & (ct[:, v] == x))[0]
        yp = np.nonzero((ct[:, v] == e) & (ct[u, :] == y))[0]
        return [(int(a), int(b), int(ct[a, b])) for a in xp for b in yp]

    # -- checks ---------------------------------------------------------------
    def axiom_violations(self):
        return check_field_axioms(self.elements, self.add, self.mul, self.zero, self.one)

    def isomorphism_from(self, ctx):
        """Dict ``FieldElem -> id`` realizing ``ctx`` ≅ this field, or ``None``."""
        return find_field_isomorphism(ctx, self.elements, self.add, self.mul, self.zero, self.one)

    def __repr__(self):
        return f"RecoveredField({self.host!r}, u={self.u!r}, v={self.v!r})"


def recover(host, u, v, budget=DEFAULT_BUDGET):
    return RecoveredField(host, u, v, budget=budget)


def mal_mul(rf, x, y):
    """Product of central ``x`` and ``y`` in ``rf`` via the witness search."""
    if rf.is_finite:
        pos = rf.position
        if x not in pos or y not in pos:
            bad = x if x not in pos else y
            raise NotCentralError(f"{rf.host.label(bad)} is not in the center")
        return rf.table[pos[x]][pos[y]]
    z = rf._memo.get((x, y))
    if z is None:
        if not (rf.contains(x) and rf.contains(y)):
            raise NotCentralError("mal_mul needs central arguments")
        xp, yp = _lazy_witnesses(rf, x, y)
        z = rf._memo[(x, y)] = rf.host.comm(xp, yp)
    return z


def _lazy_witnesses(rf, x, y):
    host, u, v, e = rf.host, rf.u, rf.v, rf.host.identity

    def x_ok(c):
        return host.comm(c, u) == e and host.comm(c, v) == x

    def y_ok(c):
        return host.comm(c, v) == e and host.comm(u, c) == y

    solver = getattr(host, "witness_solver", None)
    if solver is not None:
        xp, yp = solver(u, v, x, y)
        if x_ok(xp) and y_ok(yp):
            return xp, yp
    return _scan(host, x_ok, rf.budget, "x' witness"), _scan(host, y_ok, rf.budget, "y' witness")


def _scan(host, ok, budget, what):
    for i in range(budget):
        c = host.element(i)
        if ok(c):
            return c
    raise BudgetExhausted(what, budget)


def g_iso(ctx, group, u, v):
    """``alpha -> h(0, 0, alpha * delta(u, v))`` on the concrete group."""
    d = delta(u, v)
    if d.is_zero():
        raise CommutingPairError(f"{u} and {v} commute")
    zero = ctx.zero

    def g(alpha):
        return HElem(zero, zero, ctx(alpha) * d)

    return g


def phi(host, budget=DEFAULT_BUDGET):
    """Recover the field using the host's first non-commuting pair."""
    u, v = first_noncommuting_pair(host, budget=budget)
    return recover(host, u, v, budget=budget)
