"""Finite structures: a universe ``range(size)`` with named function and relation tables."""

from __future__ import annotations

import numpy as np

from ..errors import FormulaError


class FinStructure:
    """Universe ``0 .. size-1``, total function tables and relation tuple sets.

    ``functions`` maps a name to a nested table: an int for a constant, a list
    for a unary map, a list of lists for a binary one and so on. ``relations``
    maps a name to ``(arity, set of tuples)``.
    """

    def __init__(self, size, functions=None, relations=None, labels=None, name="structure"):
        self.size = int(size)
        self.functions = {}
        self.arities = {}
        for fn, table in (functions or {}).items():
            self.add_function(fn, table)
        self.relations = {}
        for rn, (arity, tuples) in (relations or {}).items():
            self.add_relation(rn, arity, tuples)
        self.labels = labels
        self.name = name
        self._evaluators = {}

    @property
    def universe(self):
        return range(self.size)

    def add_function(self, name, table):
        t = np.asarray(table, dtype=np.int64)
        if t.size and (t.min() < 0 or t.max() >= self.size):
            raise FormulaError(f"function {name} leaves the universe")
        if any(d != self.size for d in t.shape):
            raise FormulaError(f"function {name} is not total over the universe")
        self.functions[name] = t.tolist() if t.ndim else int(t)
        self.arities[name] = t.ndim
        self._evaluators = {}

    def add_relation(self, name, arity, tuples):
        rows = {tuple(int(a) for a in r) for r in tuples}
        if any(len(r) != arity or min(r, default=0) < 0 or max(r, default=0) >= self.size
               for r in rows):
            raise FormulaError(f"relation {name} has a malformed tuple")
        self.relations[name] = (arity, frozenset(rows))
        self._evaluators = {}

    def substructure(self, keep):
        """Induced substructure on ``keep`` (which must be closed under the functions).

        Elements are renumbered in increasing order; the map old -> new is
        returned alongside.
        """
        keep = sorted(set(int(k) for k in keep))
        pos = {k: i for i, k in enumerate(keep)}
        funcs = {}
        for fn, table in self.functions.items():
            t = np.asarray(table)
            sub = t[np.ix_(*[keep] * t.ndim)] if t.ndim else t
            if np.any(~np.isin(sub, keep)):
                raise FormulaError(f"{keep} is not closed under {fn}")
            funcs[fn] = np.vectorize(pos.get, otypes=[np.int64])(sub) if t.ndim else pos[int(t)]
        rels = {rn: (a, [tuple(pos[x] for x in r) for r in rows if all(x in pos for x in r)])
                for rn, (a, rows) in self.relations.items()}
        labels = [self.labels[k] for k in keep] if self.labels is not None else None
        return FinStructure(len(keep), funcs, rels, labels, name=f"sub({self.name})"), pos

    def __repr__(self):
        return f"FinStructure({self.name}, size={self.size})"


def from_group(group, name=None):
    """The group language structure (``mul``, ``inv``, ``e``) of a finite table group."""
    n = group.order
    if n is None:
        raise FormulaError("formula evaluation needs a finite group")
    return FinStructure(n, {"mul": group.table, "inv": [group.inv(a) for a in range(n)],
                            "e": group.identity},
                        labels=getattr(group, "labels", None), name=name or group.name)
