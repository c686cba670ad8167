"""Formula evaluation against the hand-coded operations, tuple by tuple.

For each library formula the inputs range over every tuple meeting the
precondition of the matching hand-coded operation. The last coordinate is not
enumerated: the evaluator returns the full set of values that make the
formula true, and that set is compared with the one the hand-coded code
predicts. So every argument tuple of the formula is decided, including the
ones where it must be false.

The ternary class relations have ``|D|**2 * pairs * |Z|`` input tuples. That
is about 4.4 * 10**5 on H(GF(2)) but about 2 * 10**10 on H(GF(3)), so on
large hosts they are checked on a seeded slice whose size is reported.
"""

from __future__ import annotations

from itertools import product

import numpy as np

from ..bbox import noncommuting_pairs
from ..interp import interpretation
from ..transfer import FieldFamily
from .engine import evaluator
from .library import builtin_formulas
from .structure import from_group

TERNARY = ("oplus", "not_oplus", "odot", "not_odot")
TERNARY_EXHAUSTIVE_MAX = 200_000


def _center(host):
    e = host.identity
    ct = host.comm_table
    return [int(x) for x in np.nonzero((ct == e).all(axis=1))[0]]


def oracle_check(host, names=None, naive=False, ternary_limit=TERNARY_EXHAUSTIVE_MAX,
                 slice_pairs=4, seed=0):
    """Compare every named library formula with its hand-coded counterpart.

    Returns ``{name: {"tuples", "total", "exhaustive", "mismatches"}}`` where
    ``tuples`` counts the decided argument tuples and ``total`` the size of
    the full argument space. Mismatch lists are cut at five witnesses.
    """
    defs = builtin_formulas()
    names = list(defs) if names is None else list(names)
    struct = from_group(host)
    ev = evaluator(struct, defs, naive=naive)
    n = host.order
    e = host.identity
    pairs = noncommuting_pairs(host)
    center = _center(host)
    it = interpretation(host)
    fam = FieldFamily(host)
    univ = range(n)
    report = {}

    def run(name, inputs, expect, total):
        f = defs[name]
        bad, count = [], 0
        params = f.params[:-1]
        for args in inputs:
            got = {x for (x,) in ev.solutions(f, dict(zip(params, args)))}
            want = expect(args)
            count += n
            if got != want and len(bad) < 5:
                bad.append({"args": list(args), "formula": sorted(got), "hand": sorted(want)})
        report[name] = {"tuples": count, "total": total, "exhaustive": count == total,
                        "mismatches": bad}

    for name in names:
        if name == "noncomm":
            run(name, ((u,) for u in univ),
                lambda a: {v for v in univ if not host.commutes(a[0], v)}, n * n)
        elif name == "center":
            run(name, ((x, u) for x in univ for u in univ),
                lambda a: {v for v in univ
                           if host.comm(a[0], a[1]) == e and host.comm(a[0], v) == e}, n ** 3)
            labels = host.labels
            if labels is not None and hasattr(labels[0], "a"):
                f = defs[name]
                bad = [(x, u, v) for (u, v) in pairs for x in univ
                       if ev.holds(f, (x, u, v)) != (labels[x].a.is_zero() and labels[x].b.is_zero())]
                report["center"]["matches_is_central"] = not bad
                report["center"]["mismatches"] += [{"args": list(b)} for b in bad[:5]]
        elif name == "otimes":
            def want(a):
                rf = fam.field(a[0], a[1])
                return {rf.mul(a[2], a[3])}
            run(name, ((u, v, x, y) for (u, v) in pairs for x in center for y in center),
                want, len(pairs) * len(center) ** 2 * n)
        elif name == "transfer":
            run(name, ((u, v, u2, v2, x) for (u, v), (u2, v2) in product(pairs, pairs)
                       for x in center),
                lambda a: {fam.transfer((a[0], a[1]), (a[2], a[3]), a[4])},
                len(pairs) ** 2 * len(center) * n)
        elif name == "D":
            run(name, ((u, v) for u in univ for v in univ),
                lambda a: {x for x in univ if it.in_domain((a[0], a[1], x))}, n ** 3)
        elif name in ("sim", "not_sim"):
            op = it.sim if name == "sim" else it.not_sim
            dom = [(u, v, x) for (u, v) in pairs for x in center]
            run(name, (t + p for t in dom for p in pairs),
                lambda a: {x for x in center if op(a[:3], (a[3], a[4], x))},
                len(dom) ** 2 * n // len(center))
        elif name in TERNARY:
            op = getattr(it, name)
            dom = [(u, v, x) for (u, v) in pairs for x in center]
            total = len(dom) ** 2 * len(pairs) * n
            if len(dom) ** 2 * len(pairs) <= ternary_limit:
                inputs = (t1 + t2 + p for t1 in dom for t2 in dom for p in pairs)
            else:
                rng = np.random.default_rng(seed)
                pick = sorted(rng.choice(len(pairs), size=min(slice_pairs, len(pairs)),
                                         replace=False).tolist())
                some = [pairs[i] for i in pick]
                dom2 = [(u, v, x) for (u, v) in some for x in center]
                inputs = (t1 + t2 + p for t1 in dom for t2 in dom2 for p in some)
            run(name, inputs,
                lambda a: {x for x in center if op(a[:3], a[3:6], (a[6], a[7], x))}, total)
        else:
            raise KeyError(f"no hand-coded counterpart for {name!r}")
    return report


def oracle_ok(report):
    return all(not r["mismatches"] for r in report.values())


def oracle_complete(report):
    return all(r["exhaustive"] for r in report.values())
