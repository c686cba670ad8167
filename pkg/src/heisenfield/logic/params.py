"""Turning an interpretation with parameters into one without, for a finite structure.

The input is an :class:`InterpDatum`: formulas for a domain ``D(b; x)`` of
``n``-tuples, relations on it, a formula ``phi`` for the orbit of the
parameter tuple ``b``, and a formula ``psi(c, d, x, y)`` for isomorphisms
between the copies built from different orbit members. The parameter-free
interpretation has domain ``{(c, x) : phi(c), x in D(c)}``, identifies
``(c, x)`` with ``(d, y)`` when ``psi(c, d, x, y)``, and evaluates each
relation after moving every argument into the copy of the first one.

The construction is only sound when ``psi`` gives bijections that respect
identity and composition and preserve the relations. :func:`remove_parameters`
checks all of that exhaustively and raises :class:`HypothesisViolation` naming
the first condition that fails. Whether ``phi`` defines exactly one orbit can
only be confirmed against a list of automorphisms; without one the report says
``"unverified"``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

import numpy as np

from ..errors import FormulaError, HypothesisViolation
from .engine import evaluator
from .library import builtin_formulas
from .syntax import Formula, is_sigma1, parse

MAX_ORBIT = 5000
MAX_TABLE = 1_000_000


@dataclass
class InterpDatum:
    """Formulas of a fixed-arity interpretation with parameters ``params``.

    ``relations`` maps a name to ``(k, positive, negative)``: a ``k``-ary
    relation on ``n``-tuples given by two formulas with ``m + k*n`` free
    variables (parameters first); ``negative`` may be ``None``.
    """

    n: int
    params: tuple
    domain: Formula
    relations: dict
    orbit: Formula
    psi: Formula
    defs: dict = field(default_factory=builtin_formulas)
    name: str = "datum"

    def __post_init__(self):
        self.params = tuple(int(b) for b in self.params)
        m, n = len(self.params), self.n
        checks = [("domain", self.domain, m + n), ("orbit", self.orbit, m),
                  ("psi", self.psi, 2 * m + 2 * n)]
        for rname, (k, pos, neg) in self.relations.items():
            checks.append((rname, pos, m + k * n))
            if neg is not None:
                checks.append((f"not {rname}", neg, m + k * n))
        for what, f, arity in checks:
            if f.arity != arity:
                raise FormulaError(f"{what} formula has {f.arity} free variables, expected {arity}")
            if not is_sigma1(f, self.defs):
                raise FormulaError(f"{what} formula is not existential")

    @property
    def m(self):
        return len(self.params)


@dataclass
class ParamFreeInterp:
    """Evaluated tables of the parameter-free interpretation and its quotient."""

    datum: InterpDatum
    orbit: list
    domains: list
    maps: np.ndarray
    relations: dict
    report: dict

    @property
    def base(self):
        return self.orbit.index(self.datum.params)

    @property
    def elements(self):
        """The domain ``D*`` as ``(c, x)`` pairs, grouped by orbit member."""
        return [(c, x) for c, dom in zip(self.orbit, self.domains) for x in dom]

    def class_of(self, c, x):
        """Class of ``(c, x)``: the position of its image in ``D(b)``."""
        i = self.orbit.index(tuple(c))
        return int(self.maps[i, self.base, self.domains[i].index(tuple(x))])

    def sim(self, a, b):
        return self.class_of(*a) == self.class_of(*b)

    def relation_star(self, name, args):
        """``R*`` on elements of ``D*``: move every argument into the first copy."""
        k, table = self.relations[name]
        (c0, _) = args[0]
        i0 = self.orbit.index(tuple(c0))
        pos = []
        for c, x in args:
            i = self.orbit.index(tuple(c))
            pos.append(int(self.maps[i, i0, self.domains[i].index(tuple(x))]))
        return bool(table[i0][tuple(pos)])

    @property
    def order(self):
        return len(self.domains[self.base])

    def quotient_relations(self):
        """Relations of the quotient on classes ``0 .. order-1``."""
        out = {}
        for name, (k, table) in self.relations.items():
            t = table[self.base]
            out[name] = {tuple(int(a) for a in idx) for idx in zip(*np.nonzero(t))}
        return out

    def partition(self):
        groups = {}
        for c, x in self.elements:
            groups.setdefault(self.class_of(c, x), set()).add((c, x))
        return [frozenset(g) for _, g in sorted(groups.items())]


def _fail(condition, violations):
    raise HypothesisViolation(condition, violations[:5])


def remove_parameters(struct, datum, autos=None):
    """Build and verify the parameter-free interpretation of ``datum`` in ``struct``.

    ``autos`` (a list of permutations of the universe) lets the orbit
    hypothesis be checked: the set defined by ``phi`` must be the orbit of the
    parameters under the group they generate.
    """
    ev = evaluator(struct, datum.defs)
    m, n = datum.m, datum.n
    b = datum.params

    orbit = sorted(ev.solutions(datum.orbit))
    if len(orbit) > MAX_ORBIT:
        _fail("orbit", [{"reason": f"orbit formula defines {len(orbit)} tuples, "
                                   f"bound is {MAX_ORBIT}"}])
    if b not in orbit:
        _fail("orbit", [{"reason": "parameters do not satisfy the orbit formula", "params": b}])
    orbit_status = "unverified"
    if autos is not None:
        images = {tuple(int(s[x]) for x in b) for s in autos}
        moved = [{"tuple": c, "automorphism": k} for c in orbit for k, s in enumerate(autos)
                 if tuple(int(s[x]) for x in c) not in set(orbit)]
        if moved or images != set(orbit):
            extra = sorted(set(orbit) - images)[:5]
            _fail("orbit", moved + [{"reason": "not an image of the parameters", "tuple": c}
                                    for c in extra])
        orbit_status = "verified"

    dom_params = datum.domain.params
    domains = []
    for c in orbit:
        dom = sorted(ev.solutions(datum.domain, dict(zip(dom_params[:m], c))))
        if not dom:
            _fail("domain", [{"params": c, "reason": "empty domain"}])
        domains.append(dom)
    sizes = {len(d) for d in domains}
    if len(sizes) != 1:
        _fail("bijection", [{"reason": "copies of different sizes", "sizes": sorted(sizes)}])
    (d,) = sizes
    o = len(orbit)

    # psi tables: maps[i, j, a] = position in D(c_j) of the image of D(c_i)[a]
    maps = np.empty((o, o, d), dtype=np.int64)
    pos = [{x: a for a, x in enumerate(dom)} for dom in domains]
    pp = datum.psi.params
    bad = []
    for i, j in product(range(o), range(o)):
        fixed = dict(zip(pp[:m], orbit[i]))
        fixed.update(zip(pp[m:2 * m], orbit[j]))
        for a, x in enumerate(domains[i]):
            fixed.update(zip(pp[2 * m:2 * m + n], x))
            ys = ev.solutions(datum.psi, fixed)
            if len(ys) != 1 or next(iter(ys)) not in pos[j]:
                bad.append({"from": orbit[i], "to": orbit[j], "x": x, "images": sorted(ys)[:5]})
                continue
            maps[i, j, a] = pos[j][next(iter(ys))]
        if not bad and len(set(maps[i, j].tolist())) != d:
            bad.append({"from": orbit[i], "to": orbit[j], "reason": "not injective"})
        if len(bad) >= 5:
            break
    if bad:
        _fail("bijection", bad)

    ident = np.arange(d)
    bad = [{"params": orbit[i], "moved": np.nonzero(maps[i, i] != ident)[0].tolist()}
           for i in range(o) if (maps[i, i] != ident).any()]
    if bad:
        _fail("identity", bad)

    rows = np.arange(o)
    for i in range(o):
        a = maps[i]                                   # (j, x) -> position in copy j
        via = maps[rows[:, None, None], rows[None, :, None], a[:, None, :]]   # f_jk(f_ij(x))
        wrong = np.argwhere(via != a[None, :, :])
        if len(wrong):
            bad = [{"c": orbit[i], "d": orbit[int(j)], "e": orbit[int(k)],
                    "x": domains[i][int(x)]} for j, k, x in wrong[:5]]
            _fail("composition", bad)

    relations = {}
    for rname, (k, posf, negf) in datum.relations.items():
        if d ** k > MAX_TABLE:
            raise FormulaError(f"relation {rname} table of size {d ** k} exceeds {MAX_TABLE}")
        table = np.zeros((o,) + (d,) * k, dtype=bool)
        for i, c in enumerate(orbit):
            for idx in product(range(d), repeat=k):
                args = c + tuple(v for t in idx for v in domains[i][t])
                table[(i, *idx)] = ev.holds(posf, args)
                if negf is not None and ev.holds(negf, args) == table[(i, *idx)]:
                    _fail("complement", [{"relation": rname, "params": c,
                                          "args": [domains[i][t] for t in idx]}])
        for i in range(o):
            a = maps[i]
            index = [rows.reshape((o,) + (1,) * k)]
            for t in range(k):
                shape = [o] + [1] * k
                shape[1 + t] = d
                index.append(a.reshape(shape))
            moved = table[tuple(index)]                # R(c_j) at the images of x
            wrong = np.argwhere(moved != table[i][None])
            if len(wrong):
                _fail("isomorphism", [{"relation": rname, "from": orbit[i],
                                       "to": orbit[int(w[0])],
                                       "args": [domains[i][int(t)] for t in w[1:]]}
                                      for w in wrong[:5]])
        relations[rname] = (k, table)

    report = {"orbit": orbit_status, "orbit_size": o, "copy_size": d,
              "domain_size": o * d, "classes": d,
              "checked": {"bijection": o * o * d, "identity": o * d,
                          "composition": o ** 3 * d,
                          "isomorphism": {r: o * o * d ** k for r, (k, _) in relations.items()}}}
    return ParamFreeInterp(datum, orbit, domains, maps, relations, report)


# -- the datum for the field inside the Heisenberg group -------------------------

def maltsev_datum(params, defs=None):
    """Parameters ``(u, v)``, domain the center, ``+`` and ``*`` as relations."""
    defs = builtin_formulas() if defs is None else defs
    return InterpDatum(
        n=1,
        params=tuple(params),
        domain=parse("(lambda (u v x) (rel D u v x))"),
        relations={
            "add": (3, parse("(lambda (u v x y z) (= (mul x y) z))"),
                    parse("(lambda (u v x y z) (exists (w) (and (= (mul x y) w) (not (= w z)))))")),
            "mul": (3, parse("(lambda (u v x y z) (rel otimes u v x y z))"),
                    parse("(lambda (u v x y z) (exists (w) "
                          "(and (rel otimes u v x y w) (not (= w z)))))")),
        },
        orbit=parse("(lambda (u v) (rel noncomm u v))"),
        psi=parse("(lambda (u v u2 v2 x y) (rel transfer u v u2 v2 x y))"),
        defs=defs,
        name="maltsev",
    )


def broken_psi_datum(params, defs=None):
    """Like :func:`maltsev_datum`, but ``psi`` is the identity on a copy and
    inversion between different copies, so composition fails whenever
    inversion is not trivial on the center."""
    d = maltsev_datum(params, defs)
    d.psi = parse("(lambda (u v u2 v2 x y) (or (and (= u u2) (= v v2) (= y x)) "
                  "(and (or (not (= u u2)) (not (= v v2))) (= y (inv x)))))")
    d.name = "broken psi"
    return d


def pinned_datum(params, defs=None):
    """Orbit formula naming the parameters by constants: one copy, no gluing."""
    d = maltsev_datum(params, defs)
    u, v = params
    d.orbit = parse(f"(lambda (u v) (and (= u #{u}) (= v #{v})))")
    d.name = "pinned"
    return d


def relation_table_fn(result, name):
    """Binary operation on classes read off a functional ternary relation, or None."""
    rel = result.quotient_relations()[name]
    out = {}
    for a, bb, c in rel:
        if (a, bb) in out:
            return None
        out[(a, bb)] = c
    return out
