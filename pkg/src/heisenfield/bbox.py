"""Black-box groups: opaque ids plus multiplication, inverse and enumeration.

Two flavours:

* :class:`TableGroup` -- finite, ids are ``0..n-1`` and the enumeration is
  the id order. Backed by an ``n x n`` numpy multiplication table.
* :class:`LazyGroup` -- countable, ids are arbitrary hashable values handed
  out by an enumerator; every search over it takes a step budget.

Pairs are always searched in the same dovetailed order: by the larger of the
two enumeration indices, then lexicographically.
"""

from __future__ import annotations

import json
from functools import cached_property

import numpy as np

from .errors import AbelianGroupError, BudgetExhausted, NotAGroupError, SizeBoundError
from .heisenberg import DEFAULT_MAX_GROUP_ORDER, HGroup, delta, h_mul, h_inv

DEFAULT_BUDGET = 1_000_000
ASSOC_EXHAUSTIVE_MAX = 64
ASSOC_SAMPLES = 20_000


class BBoxGroup:
    """Interface shared by every black-box group."""

    order = None
    identity = None
    labels = None

    @property
    def is_finite(self):
        return self.order is not None

    def mul(self, x, y):
        raise NotImplementedError

    def inv(self, x):
        raise NotImplementedError

    def element(self, i):
        raise NotImplementedError

    def comm(self, x, y):
        return self.mul(self.mul(self.inv(x), self.inv(y)), self.mul(x, y))

    def commutes(self, x, y):
        return self.mul(x, y) == self.mul(y, x)

    def label(self, x):
        """Human-readable label of an id (its concrete element when known)."""
        return x if self.labels is None else self.labels[x]


class TableGroup(BBoxGroup):
    """A finite group given by its multiplication table.

    ``validate`` (default on) checks closure, identity and inverses
    exhaustively and associativity exhaustively up to order
    ``ASSOC_EXHAUSTIVE_MAX`` (sampled beyond).
    """

    def __init__(self, table, labels=None, source=None, validate=True, name="group"):
        t = np.asarray(table, dtype=np.int64)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] == 0:
            raise NotAGroupError(f"multiplication table must be square, got shape {t.shape}")
        self.table = t
        self.order = t.shape[0]
        self.labels = labels
        self.source = source
        self.name = name
        n = self.order
        if t.min() < 0 or t.max() >= n:
            raise NotAGroupError("multiplication table has entries outside the group")
        ids = np.arange(n)
        unit = [e for e in range(n) if (t[e] == ids).all() and (t[:, e] == ids).all()]
        if not unit:
            raise NotAGroupError("no identity element")
        self.identity = unit[0]
        hits = t == self.identity
        if not (hits.sum(axis=1) == 1).all():
            bad = int(np.nonzero(hits.sum(axis=1) != 1)[0][0])
            raise NotAGroupError(f"element {bad} has no unique right inverse")
        self.inverse = hits.argmax(axis=1)
        if validate:
            self._check_group()
        self._rows = t.tolist()
        self._inv = self.inverse.tolist()

    def _check_group(self):
        t, n = self.table, self.order
        if not (t[self.inverse, np.arange(n)] == self.identity).all():
            raise NotAGroupError("left and right inverses differ")
        for row in t:
            if len(np.unique(row)) != n:
                raise NotAGroupError("a row of the table is not a permutation")
        if n <= ASSOC_EXHAUSTIVE_MAX:
            lhs = t[t[:, :, None], np.arange(n)[None, None, :]]
            rhs = t[np.arange(n)[:, None, None], t[None, :, :]]
            if not (lhs == rhs).all():
                a, b, c = map(int, np.argwhere(lhs != rhs)[0])
                raise NotAGroupError(f"associativity fails at ({a}, {b}, {c})")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
            bad = t[t[a, b], c] != t[a, t[b, c]]
            if bad.any():
                i = int(np.nonzero(bad)[0][0])
                raise NotAGroupError(f"associativity fails at ({a[i]}, {b[i]}, {c[i]})")

    def mul(self, x, y):
        return self._rows[x][y]

    def inv(self, x):
        return self._inv[x]

    def element(self, i):
        if not 0 <= i < self.order:
            raise IndexError(i)
        return i

    def elements(self):
        return range(self.order)

    def __len__(self):
        return self.order

    @cached_property
    def comm_table(self):
        """``comm_table[x, y] = [x, y]`` for all ids."""
        t, inv = self.table, self.inverse
        left = t[inv[:, None], inv[None, :]]
        right = t
        return t[left, right]

    @cached_property
    def _comm_rows(self):
        return self.comm_table.tolist()

    def comm(self, x, y):
        return self._comm_rows[x][y]

    def commutes(self, x, y):
        return self._rows[x][y] == self._rows[y][x]

    @cached_property
    def center(self):
        return np.nonzero((self.comm_table == self.identity).all(axis=1))[0]

    def to_json(self):
        out = {"order": self.order}
        if self.labels is not None:
            out["elements"] = [_label_json(x) for x in self.labels]
        out["mul"] = self.table.ravel().tolist()
        return out

    def __repr__(self):
        return f"TableGroup({self.name}, order={self.order})"


def _label_json(x):
    if hasattr(x, "a"):
        return [x.ctx.to_json(t) for t in x]
    return x


class LazyGroup(BBoxGroup):
    """A countable group given by oracles.

    ``witness_solver(u, v, x, y)``, when supplied, proposes the witnesses
    ``(x', y')`` of the Maltsev multiplication formula; callers must verify
    them before use.
    """

    order = None

    def __init__(self, mul, inv, identity, enumerate, index=None, witness_solver=None,
                 name="lazy group", comm=None):
        self._mul = mul
        self._inv = inv
        self._comm_oracle = comm
        self._comm_memo = {}
        self.identity = identity
        self._enum = enumerate
        self._index = index
        self.witness_solver = witness_solver
        self.name = name

    def mul(self, x, y):
        return self._mul(x, y)

    def inv(self, x):
        return self._inv(x)

    def comm(self, x, y):
        """Commutator, memoized; uses the ``comm`` oracle when one was given."""
        key = (x, y)
        z = self._comm_memo.get(key)
        if z is None:
            z = self._comm_oracle(x, y) if self._comm_oracle else BBoxGroup.comm(self, x, y)
            if len(self._comm_memo) < 1_000_000:
                self._comm_memo[key] = z
        return z

    def commutes(self, x, y):
        return self.comm(x, y) == self.identity

    def element(self, i):
        return self._enum(i)

    def index(self, x):
        if self._index is None:
            raise NotImplementedError("this enumerator has no inverse")
        return self._index(x)

    def elements(self):
        i = 0
        while True:
            yield self._enum(i)
            i += 1

    def __repr__(self):
        return f"LazyGroup({self.name})"


# -- construction --------------------------------------------------------------

def wrap(group: HGroup):
    """Black-box view of a concrete Heisenberg group (enumeration order kept)."""
    if group.is_finite:
        return TableGroup(group.mul_table(), labels=group.elements, source=group,
                          validate=False, name=f"H({group.ctx})")

    def solver(u, v, x, y):
        d = delta(u, v)
        alpha, beta = x.c / d, y.c / d
        zero = group.ctx.zero
        return (type(u)(alpha * u.a, alpha * u.b, zero), type(u)(beta * v.a, beta * v.b, zero))

    lazy = LazyGroup(h_mul, h_inv, group.identity, group.element, index=group.index,
                     witness_solver=solver, name=f"H({group.ctx})")
    lazy.source = group
    return lazy


def from_table(table, labels=None, name="group", max_order=None):
    """Wrap an externally supplied multiplication table (validated)."""
    t = np.asarray(table, dtype=np.int64)
    if max_order is not None and t.shape[0] > max_order:
        raise SizeBoundError(f"group of order {t.shape[0]} exceeds bound {max_order}")
    return TableGroup(t, labels=labels, name=name)


def from_json(data, max_order=DEFAULT_MAX_GROUP_ORDER):
    """Read the ``{"order", "elements", "mul"}`` interchange format."""
    if not isinstance(data, dict) or "mul" not in data or "order" not in data:
        raise NotAGroupError("group JSON needs 'order' and 'mul'")
    n = int(data["order"])
    flat = data["mul"]
    if len(flat) != n * n:
        raise NotAGroupError(f"'mul' has {len(flat)} entries, expected {n * n}")
    labels = data.get("elements")
    if labels is not None and len(labels) != n:
        raise NotAGroupError("'elements' length differs from 'order'")
    return from_table(np.asarray(flat, dtype=np.int64).reshape(n, n), labels=labels,
                      name=data.get("field", "group"), max_order=max_order)


def load(path, max_order=DEFAULT_MAX_GROUP_ORDER):
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise NotAGroupError(f"{path}: not valid JSON ({exc})") from None
    return from_json(data, max_order=max_order)


# -- isomorphisms between copies -----------------------------------------------

class CopyIso:
    """A map between two black-box groups, claimed to be an isomorphism.

    For table groups ``mapping`` is an integer array; otherwise a callable.
    """

    def __init__(self, source, target, mapping):
        self.source = source
        self.target = target
        if callable(mapping):
            self._fn = mapping
            self.array = None
        else:
            self.array = np.asarray(mapping, dtype=np.int64)
            lst = self.array.tolist()
            self._fn = lst.__getitem__

    def __call__(self, x):
        return self._fn(x)

    def violations(self, samples=64, seed=0):
        """Homomorphism/bijectivity failures; exhaustive for finite groups.

        Infinite groups are checked on the first ``samples`` products of the
        dovetailed pair enumeration.
        """
        bad = []
        if self.array is not None and self.source.is_finite:
            a = self.array
            if len(np.unique(a)) != len(a) or len(a) != self.target.order:
                bad.append({"law": "bijective", "witness": []})
            lhs = a[self.source.table]
            rhs = self.target.table[a[:, None], a[None, :]]
            for x, y in np.argwhere(lhs != rhs)[:5]:
                bad.append({"law": "homomorphism", "witness": [int(x), int(y)]})
            return bad
        for k, (i, j) in enumerate(dovetail_pairs()):
            if k >= samples:
                break
            x, y = self.source.element(i), self.source.element(j)
            if self(self.source.mul(x, y)) != self.target.mul(self(x), self(y)):
                bad.append({"law": "homomorphism", "witness": [x, y]})
        return bad

    def compose(self, other):
        """``other o self`` (first self, then other)."""
        if self.array is not None and other.array is not None:
            return CopyIso(self.source, other.target, other.array[self.array])
        return CopyIso(self.source, other.target, lambda x: other(self(x)))

    def inverse(self):
        if self.array is None:
            raise NotImplementedError("only table isomorphisms can be inverted")
        inv = np.empty_like(self.array)
        inv[self.array] = np.arange(len(self.array))
        return CopyIso(self.target, self.source, inv)

    @classmethod
    def identity(cls, group):
        if group.is_finite:
            return cls(group, group, np.arange(group.order))
        return cls(group, group, lambda x: x)


def relabel(group, seed):
    """A copy of ``group`` with ids permuted by a seed-determined permutation.

    Returns ``(copy, iso)`` where ``iso`` maps old ids to new ids. The copy's
    enumeration is its own id order, so it generally differs from the
    original's.
    """
    if not isinstance(group, TableGroup):
        raise TypeError("only finite table groups can be relabelled")
    n = group.order
    perm = np.random.default_rng(seed).permutation(n)
    table = np.empty_like(group.table)
    table[perm[:, None], perm[None, :]] = perm[group.table]
    labels = None
    if group.labels is not None:
        labels = [None] * n
        for old, new in enumerate(perm.tolist()):
            labels[new] = group.labels[old]
    copy = TableGroup(table, labels=labels, source=group.source, validate=False,
                      name=f"{group.name}~{seed}")
    return copy, CopyIso(group, copy, perm)


# -- searches ------------------------------------------------------------------

def dovetail_pairs(start=0):
    """Index pairs ordered by max index, then lexicographically."""
    m = start
    while True:
        for i in range(m):
            yield i, m
        for j in range(m + 1):
            yield m, j
        m += 1


def first_noncommuting_pair(group, budget=DEFAULT_BUDGET):
    """The least non-commuting pair ``(u, v)`` in dovetailed order.

    Finite abelian groups raise :class:`AbelianGroupError`; on a lazy group
    the search stops with :class:`BudgetExhausted` after ``budget`` pairs.
    """
    if isinstance(group, TableGroup):
        t = group.table
        nc = t != t.T
        for m in range(group.order):
            col = np.nonzero(nc[:m, m])[0]
            if len(col):
                return int(col[0]), m
            row = np.nonzero(nc[m, : m + 1])[0]
            if len(row):
                return m, int(row[0])
        raise AbelianGroupError(f"{group.name} is abelian")
    for k, (i, j) in enumerate(dovetail_pairs()):
        if k >= budget:
            raise BudgetExhausted("non-commuting pair", budget)
        x, y = group.element(i), group.element(j)
        if not group.commutes(x, y):
            return x, y


def noncommuting_pairs(group):
    """All non-commuting ``(u, v)`` of a finite group, in dovetailed order."""
    t = group.table
    nc = t != t.T
    out = []
    for m in range(group.order):
        out.extend((int(i), m) for i in np.nonzero(nc[:m, m])[0])
        out.extend((m, int(j)) for j in np.nonzero(nc[m, : m + 1])[0])
    return out
