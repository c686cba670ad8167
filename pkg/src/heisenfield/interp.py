"""Parameter-free interpretation of F in H(F) by triples.

The domain is every ``(u, v, x)`` with ``uv != vu`` and ``x`` commuting with
both. Two triples are equivalent when the transfer isomorphism between their
pairs sends one ``x`` to the other. Addition and multiplication are ternary
relations that pull the second and third triple back to the pair of the
first and then compute in that recovered field. Each negated relation is
evaluated in its own existential form ("some other value is the answer").
"""

from __future__ import annotations

import weakref
from dataclasses import dataclass
from itertools import islice
from typing import Any, NamedTuple

import numpy as np

from .bbox import (DEFAULT_BUDGET, LazyGroup, TableGroup, dovetail_pairs, first_noncommuting_pair,
                   noncommuting_pairs)
from .errors import BudgetExhausted, InterpretationError, SizeBoundError
from .fields import check_field_axioms, find_field_isomorphism
from .transfer import FieldFamily

EQUIV_MATRIX_MAX = 2000
WELLDEF_EXHAUSTIVE_MAX = 200_000
WELLDEF_SAMPLES = 20_000
FUNCTORIAL_SAMPLES = 20_000
DOMAIN_MAX = 100_000


class InterpTriple(NamedTuple):
    u: Any
    v: Any
    x: Any

    @property
    def pair(self):
        return self.u, self.v


class Interpretation:
    """The relations D, ~, ⊕, ⊙ (and negations) evaluated on one host."""

    def __init__(self, host, budget=DEFAULT_BUDGET):
        self.host = host
        self.budget = budget
        self.family = FieldFamily(host, budget=budget)

    @property
    def is_finite(self):
        return isinstance(self.host, TableGroup)

    def in_domain(self, t):
        h = self.host
        u, v, x = t
        return (not h.commutes(u, v)) and h.commutes(x, u) and h.commutes(x, v)

    def _require(self, *ts):
        for t in ts:
            if not self.in_domain(t):
                raise InterpretationError(f"triple {t} is not in the domain",
                                          [{"law": "domain", "witness": [t]}])

    def _center(self, pair):
        return self.family.field(*pair).elements

    def transfer(self, t, pair):
        return self.family.transfer(t.pair, pair, t.x)

    # -- equivalence ----------------------------------------------------------
    def sim(self, t1, t2):
        t1, t2 = InterpTriple(*t1), InterpTriple(*t2)
        self._require(t1, t2)
        return self._sim(t1, t2)

    def _sim(self, t1, t2):
        return self.transfer(t1, t2.pair) == t2.x

    def not_sim(self, t1, t2):
        """Some ``y' != x'`` central for ``t2``'s pair is the image of ``t1``."""
        t1, t2 = InterpTriple(*t1), InterpTriple(*t2)
        self._require(t1, t2)
        for y in self._candidates(t2.pair, lambda: self.transfer(t1, t2.pair)):
            if y != t2.x and self._sim(t1, InterpTriple(t2.u, t2.v, y)):
                return True
        return False

    def _candidates(self, pair, guess):
        """Central elements for ``pair`` to try as an existential witness.

        Finite hosts: the whole center. Countable hosts: the single computed
        candidate (the witness is unique whenever it exists).
        """
        if self.is_finite:
            return self._center(pair)
        return [guess()]

    def pull(self, pair, t):
        """The ``y`` with ``(pair, y) ~ t``, or ``None`` if there is none."""
        t = InterpTriple(*t)
        for y in self._candidates(pair, lambda: self.transfer(t, pair)):
            if self._sim(InterpTriple(pair[0], pair[1], y), t):
                return y
        return None

    # -- operations -------------------------------------------------------------
    def _op(self, t1, t2, t3, combine):
        y = self.pull(t1.pair, t2)
        if y is None:
            return False
        z = self.pull(t1.pair, t3)
        if z is None:
            return False
        return combine(self.family.field(*t1.pair), t1.x, y) == z

    def _not_op(self, t1, t2, t3, combine):
        def guess():
            y = self.pull(t1.pair, t2)
            return self.family.transfer(t1.pair, t3.pair,
                                        combine(self.family.field(*t1.pair), t1.x, y))

        for w in self._candidates(t3.pair, guess):
            if w != t3.x and self._op(t1, t2, InterpTriple(t3.u, t3.v, w), combine):
                return True
        return False

    def _checked(self, ts):
        ts = [InterpTriple(*t) for t in ts]
        self._require(*ts)
        return ts

    def oplus(self, t1, t2, t3):
        return self._op(*self._checked((t1, t2, t3)), _add)

    def odot(self, t1, t2, t3):
        return self._op(*self._checked((t1, t2, t3)), _mul)

    def not_oplus(self, t1, t2, t3):
        return self._not_op(*self._checked((t1, t2, t3)), _add)

    def not_odot(self, t1, t2, t3):
        return self._not_op(*self._checked((t1, t2, t3)), _mul)

    # -- finite domain ----------------------------------------------------------
    def domain(self, max_size=DOMAIN_MAX):
        if not self.is_finite:
            raise TypeError("the domain over a countable host is exposed via in_domain()")
        pairs = noncommuting_pairs(self.host)
        center = self._center(pairs[0]) if pairs else []
        size = len(pairs) * len(center)
        if size > max_size:
            raise SizeBoundError(f"domain has {size} triples, bound is {max_size}")
        out = []
        for u, v in pairs:
            out.extend(InterpTriple(u, v, x) for x in self._center((u, v)))
        return out


def _add(rf, x, y):
    return rf.add(x, y)


def _mul(rf, x, y):
    return rf.mul(x, y)


_CACHE = weakref.WeakKeyDictionary()


def interpretation(host, budget=DEFAULT_BUDGET):
    """The (cached) :class:`Interpretation` of ``host``."""
    it = _CACHE.get(host)
    if it is None or it.budget != budget:
        it = _CACHE[host] = Interpretation(host, budget=budget)
    return it


def domain_d(host, max_size=DOMAIN_MAX):
    return interpretation(host).domain(max_size)


def sim(host, t1, t2):
    return interpretation(host).sim(t1, t2)


def not_sim(host, t1, t2):
    return interpretation(host).not_sim(t1, t2)


def oplus(host, t1, t2, t3):
    return interpretation(host).oplus(t1, t2, t3)


def odot(host, t1, t2, t3):
    return interpretation(host).odot(t1, t2, t3)


def not_oplus(host, t1, t2, t3):
    return interpretation(host).not_oplus(t1, t2, t3)


def not_odot(host, t1, t2, t3):
    return interpretation(host).not_odot(t1, t2, t3)


# -- the quotient field ------------------------------------------------------------

class TransferTensor:
    """All transfers between all pairs of a finite host, as position arrays.

    ``T[i]`` is the multiplication table of the field of ``pairs[i]`` on center
    positions and ``unit[j]`` the position of ``[u_j, v_j]``, so that the
    transfer from pair ``i`` to pair ``j`` sends position ``a`` to
    ``T[i, a, unit[j]]``.
    """

    def __init__(self, it):
        host = it.host
        self.pairs = noncommuting_pairs(host)
        self.center = it._center(self.pairs[0])
        pos = {x: k for k, x in enumerate(self.center)}
        z = len(self.center)
        T = np.empty((len(self.pairs), z, z), dtype=np.int64)
        for i, pr in enumerate(self.pairs):
            rf = it.family.field(*pr)
            if rf.elements != self.center:
                raise InterpretationError("the center depends on the parameter pair",
                                          [{"law": "center", "witness": [pr]}])
            T[i] = [[pos[c] for c in row] for row in rf.table]
        self.T = T
        self.unit = np.array([pos[host.comm(u, v)] for u, v in self.pairs])
        self.pos = pos

    def to(self, j):
        """Position map from every pair to pair ``j``: shape (pairs, z)."""
        return self.T[:, :, self.unit[j]]

    def sim_matrix(self):
        """Boolean ``|D| x |D|`` matrix of ~ in :meth:`Interpretation.domain` order."""
        n, z = len(self.pairs), len(self.center)
        F = self.T[:, :, self.unit]                       # (n, z, n)
        S = F[:, :, :, None] == np.arange(z)[None, None, None, :]
        return S.reshape(n * z, n * z)

    def functorial_violations(self, samples, seed=0):
        rng = np.random.default_rng(seed)
        n, z = len(self.pairs), len(self.center)
        i, j, k = rng.integers(0, n, size=(3, samples))
        a = np.arange(z)
        T, unit = self.T, self.unit
        direct = T[i[:, None], a[None, :], unit[k][:, None]]
        mid = T[i[:, None], a[None, :], unit[j][:, None]]
        via = T[j[:, None], mid, unit[k][:, None]]
        bad = np.argwhere(direct != via)
        return [{"law": "composition",
                 "witness": [self.pairs[i[r]], self.pairs[j[r]], self.pairs[k[r]], int(c)]}
                for r, c in bad[:5]]


def equivalence_violations(S):
    """Reflexivity, symmetry and transitivity of a boolean relation matrix."""
    bad = []
    d = np.nonzero(~S.diagonal())[0]
    if len(d):
        bad.append({"law": "reflexive", "witness": [int(d[0])]})
    s = np.argwhere(S != S.T)
    if len(s):
        bad.append({"law": "symmetric", "witness": [int(s[0][0]), int(s[0][1])]})
    Sf = S.astype(np.float32)
    t = np.argwhere((Sf @ Sf > 0) & ~S)
    if len(t):
        bad.append({"law": "transitive", "witness": [int(t[0][0]), int(t[0][1])]})
    return bad


@dataclass
class QuotientField:
    """``D / ~`` with the induced operations; classes are numbered by the
    center position of their representative ``(u0, v0, x)``."""

    host: Any
    rep_pair: tuple
    center: list
    domain_size: int
    class_sizes: list
    add_table: list
    mul_table: list
    checks: dict
    interp: Any = None

    @property
    def order(self):
        return len(self.center)

    @property
    def zero(self):
        return self.class_of((*self.rep_pair, self.host.identity))

    @property
    def one(self):
        return self.class_of((*self.rep_pair, self.host.comm(*self.rep_pair)))

    def class_of(self, t):
        """Class number of a domain triple (via transfer to the representative pair)."""
        t = InterpTriple(*t)
        y = self.interp.transfer(t, self.rep_pair)
        return self.center.index(y)

    def representative(self, c):
        return InterpTriple(*self.rep_pair, self.center[c])

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def elements(self):
        return list(range(self.order))

    def axiom_violations(self):
        return check_field_axioms(self.elements(), self.add, self.mul, self.zero, self.one)

    def isomorphism_from(self, ctx):
        return find_field_isomorphism(ctx, self.elements(), self.add, self.mul, self.zero, self.one)

    def report(self, ctx=None):
        iso = self.isomorphism_from(ctx) is not None if ctx is not None else None
        return {
            "classes": self.order,
            "field_order": ctx.order if ctx is not None else self.order,
            "iso_to_input_field": iso,
            "violations": list(self.checks.get("violations", [])),
        }


def quotient(host, exhaustive=None, seed=0):
    """Build and check ``D / ~`` on a finite host.

    ``exhaustive=None`` picks exhaustive checks when they are cheap (the ~
    matrix up to ``EQUIV_MATRIX_MAX`` triples, well-definedness of ⊕ and ⊙
    over ``D^3`` up to ``WELLDEF_EXHAUSTIVE_MAX`` triples) and seeded samples
    otherwise. Any failure raises :class:`InterpretationError`.
    """
    if not isinstance(host, TableGroup):
        raise TypeError("quotient needs a finite host")
    it = interpretation(host)
    rep = first_noncommuting_pair(host)
    tt = TransferTensor(it)
    z, n = len(tt.center), len(tt.pairs)
    D = n * z
    checks = {"domain_size": D, "violations": []}
    bad = checks["violations"]

    # classes: pair i, position a belongs to class to_rep[i, a]
    j0 = tt.pairs.index(rep)
    to_rep = tt.to(j0)
    for i in range(n):
        if len(set(to_rep[i].tolist())) != z:
            bad.append({"law": "column bijective", "witness": [tt.pairs[i]]})
            break
    sizes = np.bincount(to_rep.ravel(), minlength=z).tolist()

    full = exhaustive if exhaustive is not None else D <= EQUIV_MATRIX_MAX
    if full:
        bad.extend(equivalence_violations(tt.sim_matrix()))
        checks["equivalence"] = "exhaustive"
    else:
        bad.extend(tt.functorial_violations(FUNCTORIAL_SAMPLES, seed))
        checks["equivalence"] = f"sampled({FUNCTORIAL_SAMPLES})"

    reps = [InterpTriple(*rep, x) for x in tt.center]
    add_t = [[_unique(it.oplus, a, b, reps) for b in reps] for a in reps]
    mul_t = [[_unique(it.odot, a, b, reps) for b in reps] for a in reps]
    for name, tab in (("oplus", add_t), ("odot", mul_t)):
        if any(c is None for row in tab for c in row):
            bad.append({"law": f"{name} functional", "witness": []})
    if bad:
        raise InterpretationError("host does not carry a well-defined quotient field", bad)

    q = QuotientField(host, rep, tt.center, D, sizes, add_t, mul_t, checks, it)
    full = exhaustive if exhaustive is not None else D ** 3 <= WELLDEF_EXHAUSTIVE_MAX
    bad.extend(_welldef_violations(it, tt, to_rep, q, full, seed))
    checks["welldefined"] = "exhaustive" if full else f"sampled({WELLDEF_SAMPLES})"
    bad.extend({"law": "field: " + v["law"], "witness": v["witness"]}
               for v in q.axiom_violations())
    if bad:
        raise InterpretationError("host does not carry a well-defined quotient field", bad)
    return q


def _unique(rel, a, b, reps):
    hits = [k for k, c in enumerate(reps) if rel(a, b, c)]
    return hits[0] if len(hits) == 1 else None


def _welldef_violations(it, tt, to_rep, q, full, seed):
    """⊕ and ⊙ must agree with the class operations on (sampled) D^3."""
    n, z = len(tt.pairs), len(tt.center)
    D = n * z
    if full:
        idx = np.array(np.meshgrid(np.arange(D), np.arange(D), np.arange(D),
                                   indexing="ij")).reshape(3, -1)
    else:
        idx = np.random.default_rng(seed).integers(0, D, size=(3, WELLDEF_SAMPLES))
        # bias half of the samples towards true instances
        half = WELLDEF_SAMPLES // 2
        i1, i2 = idx[0, :half] // z, idx[1, :half] // z
        c1 = to_rep[i1, idx[0, :half] % z]
        c2 = to_rep[i2, idx[1, :half] % z]
        target = np.array([q.add_table[a][b] for a, b in zip(c1.tolist(), c2.tolist())])
        i3 = idx[2, :half] // z
        inv = np.argsort(to_rep[i3], axis=1)          # class -> position in pair i3
        idx[2, :half] = i3 * z + inv[np.arange(half), target]
    bad = []
    cls = to_rep.ravel()
    for r1, r2, r3 in idx.T.tolist():
        ts = [InterpTriple(*tt.pairs[r // z], tt.center[r % z]) for r in (r1, r2, r3)]
        c1, c2, c3 = cls[r1], cls[r2], cls[r3]
        if it.oplus(*ts) != (q.add_table[c1][c2] == c3):
            bad.append({"law": "oplus respects ~", "witness": ts})
        if it.odot(*ts) != (q.mul_table[c1][c2] == c3):
            bad.append({"law": "odot respects ~", "witness": ts})
        if len(bad) >= 5:
            break
    return bad


# -- one half of bi-interpretability -------------------------------------------

def heisenberg_in_field(ctx, budget=DEFAULT_BUDGET):
    """H(F) defined inside F: triples with ``(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')``.

    Finite fields give a :class:`TableGroup` whose labels are the triples;
    the rationals give a :class:`LazyGroup` over triples.
    """
    def mul(s, t):
        a, b, c = s
        a2, b2, c2 = t
        return (a + a2, b + b2, c + c2 + a * b2)

    def inv(s):
        a, b, c = s
        return (-a, -b, a * b - c)

    if ctx.is_finite:
        els = [(a, b, c) for a in ctx.elements() for b in ctx.elements() for c in ctx.elements()]
        pos = {t: i for i, t in enumerate(els)}
        table = [[pos[mul(s, t)] for t in els] for s in els]
        return TableGroup(table, labels=els, validate=False, name=f"H({ctx}) in {ctx}")

    from .heisenberg import unrank_triple

    def element(i):
        return tuple(ctx.element(j) for j in unrank_triple(i))

    def solver(u, v, x, y):
        d = u[0] * v[1] - u[1] * v[0]
        al, be = x[2] / d, y[2] / d
        return (al * u[0], al * u[1], ctx.zero), (be * v[0], be * v[1], ctx.zero)

    def comm(s, t):
        return (ctx.zero, ctx.zero, s[0] * t[1] - s[1] * t[0])

    return LazyGroup(mul, inv, (ctx.zero,) * 3, element, witness_solver=solver,
                     name=f"H({ctx}) in {ctx}", comm=comm)


@dataclass
class BiInterpResult:
    ctx: Any
    host: Any
    k: dict
    quotient: Any
    violations: list
    checked: dict

    @property
    def ok(self):
        return not self.violations


def biinterp_k(ctx, sample=64, budget=DEFAULT_BUDGET):
    """``alpha -> class of (h(1,0,0), h(0,1,0), h(0,0,alpha))`` and its checks.

    Finite fields: ``k`` maps each element to a class number of the quotient
    and is verified to be a field isomorphism exhaustively. The rationals:
    ``k`` maps each of the first ``sample`` rationals to its representative
    triple; injectivity, both homomorphism laws, their negated forms and
    surjectivity onto sampled domain triples are checked.
    """
    host = heisenberg_in_field(ctx, budget=budget)
    one, zero = ctx.one, ctx.zero
    if ctx.is_finite:
        pos = {t: i for i, t in enumerate(host.labels)}
        u, v = pos[(one, zero, zero)], pos[(zero, one, zero)]
        q = quotient(host)
        k = {a: q.class_of((u, v, pos[(zero, zero, a)])) for a in ctx.elements()}
        bad = []
        if sorted(k.values()) != list(range(q.order)):
            bad.append({"law": "bijective", "witness": []})
        if k[zero] != q.zero:
            bad.append({"law": "k(0) = 0", "witness": []})
        if k[one] != q.one:
            bad.append({"law": "k(1) = 1", "witness": []})
        for a in k:
            for b in k:
                if q.add(k[a], k[b]) != k[a + b]:
                    bad.append({"law": "additive", "witness": [str(a), str(b)]})
                if q.mul(k[a], k[b]) != k[a * b]:
                    bad.append({"law": "multiplicative", "witness": [str(a), str(b)]})
        return BiInterpResult(ctx, host, k, q, bad, {"pairs": len(k) ** 2})

    it = Interpretation(host, budget=budget)
    u, v = (one, zero, zero), (zero, one, zero)
    alphas = list(islice(ctx.elements(), sample))

    def kk(a):
        return InterpTriple(u, v, (zero, zero, ctx(a)))

    k = {a: kk(a) for a in alphas}
    bad = []
    checked = {"injective": 0, "additive": 0, "multiplicative": 0, "surjective": 0}
    if not it.sim(k[alphas[0]], (u, v, host.identity)):
        bad.append({"law": "k(0) = 0", "witness": []})
    if not it.sim(k[one], (u, v, host.comm(u, v))):
        bad.append({"law": "k(1) = 1", "witness": []})
    for a in alphas:
        for b in alphas:
            ta, tb = k[a], k[b]
            checked["injective"] += 1
            if (a == b) != it.sim(ta, tb) or (a != b) != it.not_sim(ta, tb):
                bad.append({"law": "injective", "witness": [str(a), str(b)]})
            checked["additive"] += 1
            ts, wrong = kk(a + b), kk(a + b + 1)
            if not it.oplus(ta, tb, ts) or it.oplus(ta, tb, wrong) \
                    or it.not_oplus(ta, tb, ts) or not it.not_oplus(ta, tb, wrong):
                bad.append({"law": "additive", "witness": [str(a), str(b)]})
            checked["multiplicative"] += 1
            tp, wrong = kk(a * b), kk(a * b + 1)
            if not it.odot(ta, tb, tp) or it.odot(ta, tb, wrong) \
                    or it.not_odot(ta, tb, tp) or not it.not_odot(ta, tb, wrong):
                bad.append({"law": "multiplicative", "witness": [str(a), str(b)]})
    # surjectivity on sampled domain triples with other pairs
    found = []
    for step, (i, j) in enumerate(dovetail_pairs()):
        if len(found) >= 8:
            break
        if step >= budget:
            raise BudgetExhausted("sample pairs", budget)
        s, t = host.element(i), host.element(j)
        if not host.commutes(s, t):
            found.append((s, t))
    for (s, t), a in zip([p for p in found for _ in range(8)], alphas * 8):
        tr = InterpTriple(s, t, (zero, zero, ctx(a)))
        checked["surjective"] += 1
        alpha = it.transfer(tr, (u, v))[2]
        if not it.sim(tr, kk(alpha)):
            bad.append({"law": "surjective", "witness": [str(s), str(t), str(a)]})
    return BiInterpResult(ctx, host, k, None, bad, checked)
