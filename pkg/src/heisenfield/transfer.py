"""Isomorphisms between the fields recovered from different parameter pairs.

``f_transfer`` sends ``x`` in the field for ``(u, v)`` to ``x * 1'`` computed
in that same field, where ``1' = [u', v']`` is the unit of the field for
``(u', v')``. ``psi`` turns an isomorphism between two copies of H(F) into an
isomorphism between the fields recovered from them, which together with
:func:`heisenfield.maltsev.phi` makes a computable functor.
"""

from __future__ import annotations

from itertools import product

from .bbox import DEFAULT_BUDGET, CopyIso, first_noncommuting_pair
from .errors import CommutingPairError, CopyIsoError, NotCentralError
from .maltsev import RecoveredField, mal_mul, phi


class FieldFamily:
    """Caches the recovered field of every parameter pair used on a host."""

    def __init__(self, host, budget=DEFAULT_BUDGET):
        self.host = host
        self.budget = budget
        self._fields = {}

    def field(self, u, v):
        key = (u, v)
        rf = self._fields.get(key)
        if rf is None:
            rf = self._fields[key] = RecoveredField(self.host, u, v, budget=self.budget)
        return rf

    def transfer(self, src, dst, x):
        rf = self.field(*src)
        if not rf.contains(x):
            raise NotCentralError(f"{self.host.label(x)} is not central")
        u2, v2 = dst
        if self.host.commutes(u2, v2):
            raise CommutingPairError("target pair commutes")
        return mal_mul(rf, x, self.host.comm(u2, v2))


def f_transfer(host, u, v, u2, v2, x, family=None):
    """Image of ``x`` under the natural isomorphism F_(u,v) -> F_(u2,v2)."""
    family = family or FieldFamily(host)
    return family.transfer((u, v), (u2, v2), x)


def check_functorial(host, pairs, transfer=None):
    """Check the identity and composition laws of the transfer family.

    ``transfer(src, dst, x)`` defaults to :func:`f_transfer`; pass another
    callable to test a doctored family. Every pair-triple of ``pairs`` is
    checked on every central element. Returns a report dict.
    """
    family = FieldFamily(host)
    if transfer is None:
        transfer = family.transfer
    pairs = [tuple(p) for p in pairs]
    center = family.field(*pairs[0]).elements if pairs else []
    report = {"pairs": len(pairs), "identity": [], "composition": [], "checked": 0}
    cache = {}

    def f(s, d, x):
        key = (s, d, x)
        if key not in cache:
            cache[key] = transfer(s, d, x)
        return cache[key]

    for p in pairs:
        for x in center:
            report["checked"] += 1
            if f(p, p, x) != x:
                report["identity"].append({"pair": p, "x": x, "got": f(p, p, x)})
    for p, q, r in product(pairs, repeat=3):
        for x in center:
            report["checked"] += 1
            direct, via = f(p, r, x), f(q, r, f(p, q, x))
            if direct != via:
                report["composition"].append(
                    {"pairs": [p, q, r], "x": x, "direct": direct, "composed": via})
    report["ok"] = not report["identity"] and not report["composition"]
    return report


def psi(g1, p, g2, samples=64, family=None):
    """The isomorphism ``phi(g1) -> phi(g2)`` induced by ``p: g1 -> g2``.

    ``p`` is checked first (exhaustively on finite groups, on the first
    ``samples`` products otherwise). Returns a dict on finite groups and a
    callable otherwise.
    """
    if not isinstance(p, CopyIso):
        raise TypeError("psi expects a CopyIso")
    bad = p.violations(samples=samples)
    if bad:
        raise CopyIsoError(f"claimed isomorphism fails: {bad[0]['law']}", bad)
    u, v = first_noncommuting_pair(g1)
    u2, v2 = first_noncommuting_pair(g2)
    family = family or FieldFamily(g2)
    src = (p(u), p(v))

    def q(x):
        return family.transfer(src, (u2, v2), p(x))

    if g1.is_finite:
        return {x: q(x) for x in phi(g1).elements}
    return q


def is_field_isomorphism(q, rf1, rf2):
    """Exhaustive check that the dict ``q`` is an isomorphism rf1 -> rf2."""
    els = rf1.elements
    if sorted(q) != sorted(els) or sorted(q.values()) != sorted(rf2.elements):
        return False
    return all(
        q[rf1.add(a, b)] == rf2.add(q[a], q[b]) and q[rf1.mul(a, b)] == rf2.mul(q[a], q[b])
        for a in els for b in els
    )


def check_psi_laws(groups, isos):
    """Identity and composition laws of ``psi`` over a chain of copies.

    ``groups = [g1, g2, g3]`` and ``isos = [p1, p2]`` with ``p1: g1 -> g2`` and
    ``p2: g2 -> g3``. Returns a report dict.
    """
    report = {"identity": [], "composition": [], "isomorphism": []}
    for g in groups:
        q = psi(g, CopyIso.identity(g), g)
        moved = [x for x, y in q.items() if x != y]
        if moved:
            report["identity"].append({"group": g.name, "moved": moved})
    g1, g2, g3 = groups
    p1, p2 = isos
    q1, q2 = psi(g1, p1, g2), psi(g2, p2, g3)
    q3 = psi(g1, p1.compose(p2), g3)
    for name, q, a, b in (("q1", q1, g1, g2), ("q2", q2, g2, g3), ("q3", q3, g1, g3)):
        if not is_field_isomorphism(q, phi(a), phi(b)):
            report["isomorphism"].append(name)
    for x in q1:
        if q3[x] != q2[q1[x]]:
            report["composition"].append({"x": x, "q3": q3[x], "q2q1": q2[q1[x]]})
    report["ok"] = not any(report[k] for k in ("identity", "composition", "isomorphism"))
    return report
