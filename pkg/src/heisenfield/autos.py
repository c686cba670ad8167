"""Automorphisms of small finite groups and the rigidity facts they witness.

Automorphisms are found by choosing a generating set greedily, then
backtracking over the images of the generators. Images must have the same
order as the generator, and each partial assignment must extend consistently
along the Cayley graph of the subgroup it generates. Every result is checked
against the full multiplication table before it is returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

import numpy as np

from .bbox import TableGroup, noncommuting_pairs
from .errors import SizeBoundError
from .heisenberg import DEFAULT_MAX_GROUP_ORDER

MAX_FIXED_TUPLES = 1_000_000

LIMITATION = (
    "These counts cover the orbit facts that the impossibility argument rests on. "
    "They do not check every parameter-free definition, which no finite computation can do."
)


@dataclass(frozen=True)
class Automorphism:
    group: TableGroup
    perm: tuple

    def __call__(self, x):
        return self.perm[x]

    def compose(self, other):
        """``other`` after ``self``."""
        return Automorphism(self.group, tuple(other.perm[x] for x in self.perm))

    def inverse(self):
        inv = [0] * len(self.perm)
        for x, y in enumerate(self.perm):
            inv[y] = x
        return Automorphism(self.group, tuple(inv))

    @property
    def is_identity(self):
        return all(x == y for x, y in enumerate(self.perm))

    def violations(self):
        return automorphism_violations(self.group, self.perm)


def automorphism_violations(group, perm):
    """Exhaustive bijectivity and homomorphism check of a candidate map."""
    p = np.asarray(perm, dtype=np.int64)
    n = group.order
    bad = []
    if p.shape != (n,) or sorted(p.tolist()) != list(range(n)):
        return [{"law": "bijective"}]
    t = group.table
    wrong = np.argwhere(t[p[:, None], p[None, :]] != p[t])
    bad.extend({"law": "homomorphism", "witness": [int(a), int(b)]} for a, b in wrong[:5])
    return bad


def is_automorphism(group, perm):
    return not automorphism_violations(group, perm)


def element_orders(group):
    n, t, e = group.order, group.table, group.identity
    orders = np.zeros(n, dtype=np.int64)
    power = np.arange(n)
    for k in range(1, n + 1):
        hit = (power == e) & (orders == 0)
        orders[hit] = k
        if (orders > 0).all():
            break
        power = t[power, np.arange(n)]
    return orders


def _closure(group, gens):
    """Subgroup generated by ``gens`` as a boolean mask."""
    t = group.table
    seen = np.zeros(group.order, dtype=bool)
    seen[group.identity] = True
    frontier = np.array([group.identity])
    gens = np.asarray(gens, dtype=np.int64)
    while frontier.size and gens.size:
        nxt = np.unique(t[frontier[:, None], gens[None, :]].ravel())
        nxt = nxt[~seen[nxt]]
        seen[nxt] = True
        frontier = nxt
    return seen


def generating_set(group):
    """Deterministic greedy generating set: each step adds the element that
    enlarges the generated subgroup most (ties go to the smaller id)."""
    gens = []
    current = _closure(group, gens)
    while not current.all():
        best, best_size = None, -1
        for x in np.nonzero(~current)[0].tolist():
            size = int(_closure(group, gens + [x]).sum())
            if size > best_size:
                best, best_size = x, size
        gens.append(best)
        current = _closure(group, gens)
    return gens


def _extend(group, gens, images):
    """Extend ``gens[i] -> images[i]`` along the Cayley graph, or None on conflict."""
    t = group.table
    n = group.order
    img = np.full(n, -1, dtype=np.int64)
    img[group.identity] = group.identity
    frontier = [group.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for g, h in zip(gens, images):
                y = int(t[x, g])
                want = int(t[img[x], h])
                if img[y] < 0:
                    img[y] = want
                    nxt.append(y)
                elif img[y] != want:
                    return None
        frontier = nxt
    return img


def enumerate_autos(group, max_order=DEFAULT_MAX_GROUP_ORDER):
    """All automorphisms of a finite table group, sorted by image tuple."""
    if not isinstance(group, TableGroup):
        raise TypeError("automorphisms are enumerated for finite table groups only")
    if group.order > max_order:
        raise SizeBoundError(f"group of order {group.order} exceeds bound {max_order}")
    gens = generating_set(group)
    orders = element_orders(group)
    cands = [np.nonzero(orders == orders[g])[0].tolist() for g in gens]
    found = []

    def search(k, images):
        if k and _extend(group, gens[:k], images) is None:
            return
        if k == len(gens):
            img = _extend(group, gens, images)
            if len(set(img.tolist())) == group.order and is_automorphism(group, img):
                found.append(Automorphism(group, tuple(int(x) for x in img)))
            return
        for c in cands[k]:
            search(k + 1, images + [c])

    search(0, [])
    found.sort(key=lambda a: a.perm)
    return found


def fixed_tuples(group, autos, n):
    """Every ``n``-tuple fixed pointwise by all of ``autos``.

    A tuple is fixed iff each coordinate is, so the answer is ``F**n`` for the
    set ``F`` of fixed elements.
    """
    fixed = [x for x in range(group.order) if all(a.perm[x] == x for a in autos)]
    if len(fixed) ** n > MAX_FIXED_TUPLES:
        raise SizeBoundError(f"{len(fixed)}**{n} fixed tuples exceed {MAX_FIXED_TUPLES}")
    return set(product(fixed, repeat=n))


def swap_map(group):
    """``h(x, y, z) -> h(y, x, xy - z)`` as a permutation of a wrapped H(F)."""
    labels = group.labels
    pos = {lab: i for i, lab in enumerate(labels)}
    return tuple(pos[type(lab)(lab.b, lab.a, lab.a * lab.b - lab.c)] for lab in labels)


def _is_heisenberg(group):
    labels = getattr(group, "labels", None)
    return labels is not None and len(labels) and all(hasattr(labels[0], k) for k in "abc")


def rigidity_report(group, autos=None):
    """Automorphism count, fixed tuples for n <= 3, and the swap map when it applies."""
    autos = enumerate_autos(group) if autos is None else autos
    n = group.order
    fixed = [x for x in range(n) if all(a.perm[x] == x for a in autos)]
    report = {
        "order": n,
        "automorphisms": len(autos),
        "abelian": not noncommuting_pairs(group),
        "fixed_elements": fixed,
        "fixed_tuples": {k: len(fixed) ** k for k in (1, 2, 3)},
    }
    if _is_heisenberg(group):
        s = swap_map(group)
        report["swap_is_automorphism"] = is_automorphism(group, s)
        report["swap_found"] = s in {a.perm for a in autos}
    only_identity = fixed == [group.identity]
    report["only_identity_fixed"] = only_identity
    if only_identity and not report["abelian"]:
        report["conclusion"] = (
            "Every automorphism moves every non-identity element, so the only tuples fixed "
            "by all automorphisms are the all-identity tuples. A parameter-free definition "
            "defines a union of orbits, so it cannot single out a non-identity tuple as a "
            "parameter.")
    else:
        report["conclusion"] = "Some non-identity element is fixed by every automorphism."
    report["limitation"] = LIMITATION
    return report


def invariance_violations(group, autos, q=None):
    """Each automorphism must map ~-classes to ~-classes by a field automorphism.

    ``q`` is the quotient of ``group``; every domain triple is moved by every
    automorphism and the induced map on classes is checked to be well defined
    and to preserve both class operations.
    """
    from .interp import quotient

    q = quotient(group) if q is None else q
    it = q.interp
    dom = it.domain()
    base = [q.class_of(t) for t in dom]
    bad = []
    for k, a in enumerate(autos):
        induced = {}
        for t, c in zip(dom, base):
            img = (a.perm[t.u], a.perm[t.v], a.perm[t.x])
            if not it.in_domain(img):
                bad.append({"law": "domain preserved", "automorphism": k, "witness": list(t)})
                break
            d = q.class_of(img)
            if induced.setdefault(c, d) != d:
                bad.append({"law": "classes preserved", "automorphism": k, "witness": list(t)})
                break
        else:
            els = q.elements()
            for x in els:
                for y in els:
                    if (induced[q.add(x, y)] != q.add(induced[x], induced[y])
                            or induced[q.mul(x, y)] != q.mul(induced[x], induced[y])):
                        bad.append({"law": "field automorphism", "automorphism": k,
                                    "witness": [x, y]})
        if len(bad) >= 5:
            break
    return bad
