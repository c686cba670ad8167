"""Built-in formulas of the group language.

Every definition is existential and parameter-free apart from its declared
free variables. Later definitions refer to earlier ones through ``rel``
atoms, so the library reads as a chain of abbreviations; ``expand`` inlines
them into plain formulas.

=============  =========================  ==========================================
name           free variables             meaning
=============  =========================  ==========================================
noncomm        u v                        uv != vu
center         x u v                      [x,u] = [x,v] = 1
otimes         u v x y z                  x * y = z in the field of (u, v)
transfer       u v u2 v2 x y              y = x * [u2,v2] in the field of (u, v)
D              u v x                      (u, v, x) is a domain triple
sim            u v x u2 v2 x2             (u,v,x) ~ (u2,v2,x2)
not_sim        u v x u2 v2 x2             some w != x2 has (u,v,x) ~ (u2,v2,w)
oplus          t1 t2 t3 (9 variables)     class sum
not_oplus      t1 t2 t3                   some w != z is the sum
odot           t1 t2 t3                   class product
not_odot       t1 t2 t3                   some w != z is the product
=============  =========================  ==========================================
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import Eq, Formula, comm, conj, e, exists, mul, neq, rel, var

TRIPLES = ("u1", "v1", "x1", "u2", "v2", "x2", "u3", "v3", "x3")


def _noncomm():
    u, v = var("u", "v")
    return Formula(("u", "v"), neq(mul(u, v), mul(v, u)))


def _center():
    x, u, v = var("x", "u", "v")
    return Formula(("x", "u", "v"), conj(Eq(comm(x, u), e()), Eq(comm(x, v), e())))


def _otimes():
    u, v, x, y, z, xp, yp = var("u", "v", "x", "y", "z", "xp", "yp")
    return Formula(("u", "v", "x", "y", "z"), exists("xp yp", conj(
        Eq(comm(xp, u), e()),
        Eq(comm(yp, v), e()),
        Eq(comm(xp, v), x),
        Eq(comm(u, yp), y),
        Eq(comm(xp, yp), z),
    )))


def _transfer():
    u, v, u2, v2, x, y = var("u", "v", "u2", "v2", "x", "y")
    return Formula(("u", "v", "u2", "v2", "x", "y"), rel("otimes", u, v, x, comm(u2, v2), y))


def _domain():
    u, v, x = var("u", "v", "x")
    return Formula(("u", "v", "x"), conj(
        rel("noncomm", u, v),
        Eq(mul(x, u), mul(u, x)),
        Eq(mul(x, v), mul(v, x)),
    ))


def _sim():
    u, v, x, u2, v2, x2 = var("u", "v", "x", "u2", "v2", "x2")
    return Formula(("u", "v", "x", "u2", "v2", "x2"), conj(
        rel("D", u, v, x),
        rel("D", u2, v2, x2),
        rel("transfer", u, v, u2, v2, x, x2),
    ))


def _not_sim():
    u, v, x, u2, v2, x2, w = var("u", "v", "x", "u2", "v2", "x2", "w")
    return Formula(("u", "v", "x", "u2", "v2", "x2"), exists("w", conj(
        rel("D", u2, v2, x2),
        rel("sim", u, v, x, u2, v2, w),
        neq(w, x2),
    )))


def _ternary(kind, negated):
    u1, v1, x1, u2, v2, x2, u3, v3, x3 = var(*TRIPLES)
    y, z, w = var("y", "z", "w")
    pull = [rel("D", u1, v1, x1), rel("sim", u2, v2, x2, u1, v1, y),
            rel("sim", u3, v3, x3, u1, v1, z)]
    if negated:
        if kind == "add":
            law = [Eq(mul(x1, y), w)]
        else:
            law = [rel("otimes", u1, v1, x1, y, w)]
        body = exists("y z w", conj(*pull, *law, neq(w, z)))
    else:
        law = Eq(mul(x1, y), z) if kind == "add" else rel("otimes", u1, v1, x1, y, z)
        body = exists("y z", conj(*pull, law))
    return Formula(TRIPLES, body)


@lru_cache(maxsize=None)
def _library():
    return (
        ("noncomm", _noncomm()),
        ("center", _center()),
        ("otimes", _otimes()),
        ("transfer", _transfer()),
        ("D", _domain()),
        ("sim", _sim()),
        ("not_sim", _not_sim()),
        ("oplus", _ternary("add", False)),
        ("not_oplus", _ternary("add", True)),
        ("odot", _ternary("mul", False)),
        ("not_odot", _ternary("mul", True)),
    )


def builtin_formulas():
    """Name -> :class:`Formula` for the whole library (a fresh dict each call)."""
    return dict(_library())
