"""Existential formulas over a finite functional language, and their text form.

Terms are variables, constants ``#i`` (element ids) and applications
``(f t1 ... tk)`` of structure functions; in groups these are ``mul``, ``inv``
and the nullary ``e``. Formulas are built from equations, relation atoms,
negated atoms, conjunction, disjunction and existential blocks, so every
formula is Σ₁ as long as negation only touches atoms that are not themselves
defined relations.

Text grammar (whitespace separated, ``;`` starts a comment)::

    formula := (lambda (VAR*) body)
    body    := (= term term) | (rel NAME term*) | (not atom)
             | (and body*) | (or body*) | (exists (VAR+) body)
    atom    := (= term term) | (rel NAME term*)
    term    := VAR | #INT | (NAME term*)

``(and)`` is true and ``(or)`` is false. Printing then parsing gives back the
same formula, and parsing then printing gives the canonical spacing.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import count

from ..errors import FormulaError

KEYWORDS = frozenset({"lambda", "=", "not", "and", "or", "exists", "rel"})
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


# -- terms ----------------------------------------------------------------------

@dataclass(frozen=True)
class Var:
    name: str

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class Const:
    value: int

    def __str__(self):
        return f"#{self.value}"


@dataclass(frozen=True)
class App:
    fn: str
    args: tuple = ()

    def __str__(self):
        return "(" + " ".join([self.fn, *map(str, self.args)]) + ")"


# -- formulas -------------------------------------------------------------------

@dataclass(frozen=True)
class Eq:
    left: object
    right: object

    def __str__(self):
        return f"(= {self.left} {self.right})"


@dataclass(frozen=True)
class Rel:
    name: str
    args: tuple = ()

    def __str__(self):
        return "(" + " ".join(["rel", self.name, *map(str, self.args)]) + ")"


@dataclass(frozen=True)
class Not:
    atom: object

    def __str__(self):
        return f"(not {self.atom})"


@dataclass(frozen=True)
class And:
    parts: tuple = ()

    def __str__(self):
        return "(" + " ".join(["and", *map(str, self.parts)]) + ")"


@dataclass(frozen=True)
class Or:
    parts: tuple = ()

    def __str__(self):
        return "(" + " ".join(["or", *map(str, self.parts)]) + ")"


@dataclass(frozen=True)
class Exists:
    vars: tuple
    body: object

    def __str__(self):
        return f"(exists ({' '.join(self.vars)}) {self.body})"


@dataclass(frozen=True)
class Formula:
    """A body together with its declared free variables."""

    params: tuple
    body: object

    def __post_init__(self):
        if len(set(self.params)) != len(self.params):
            raise FormulaError(f"repeated parameter in {self.params}")
        extra = free_vars(self.body) - set(self.params)
        if extra:
            raise FormulaError(f"undeclared free variables {sorted(extra)}")

    @property
    def arity(self):
        return len(self.params)

    def __str__(self):
        return f"(lambda ({' '.join(self.params)}) {self.body})"

    @classmethod
    def parse(cls, text):
        return parse(text)


# -- helpers for building formulas in Python -----------------------------------

def var(*names):
    out = tuple(Var(n) for n in names)
    return out[0] if len(out) == 1 else out


def e():
    return App("e")


def mul(a, b):
    return App("mul", (a, b))


def inv(a):
    return App("inv", (a,))


def comm(a, b):
    """``[a, b] = a^-1 b^-1 a b`` spelled in the group language."""
    return mul(mul(inv(a), inv(b)), mul(a, b))


def conj(*parts):
    return And(tuple(parts))


def disj(*parts):
    return Or(tuple(parts))


def exists(names, body):
    names = tuple(names.split()) if isinstance(names, str) else tuple(names)
    return Exists(names, body) if names else body


def rel(name, *args):
    return Rel(name, tuple(args))


def neq(a, b):
    return Not(Eq(a, b))


# -- structural queries ---------------------------------------------------------

def term_vars(t):
    if isinstance(t, Var):
        return {t.name}
    if isinstance(t, App):
        out = set()
        for a in t.args:
            out |= term_vars(a)
        return out
    return set()


def free_vars(node):
    if isinstance(node, Eq):
        return term_vars(node.left) | term_vars(node.right)
    if isinstance(node, Rel):
        out = set()
        for a in node.args:
            out |= term_vars(a)
        return out
    if isinstance(node, Not):
        return free_vars(node.atom)
    if isinstance(node, (And, Or)):
        out = set()
        for p in node.parts:
            out |= free_vars(p)
        return out
    if isinstance(node, Exists):
        return free_vars(node.body) - set(node.vars)
    raise FormulaError(f"not a formula node: {node!r}")


def relation_names(node, acc=None):
    acc = set() if acc is None else acc
    if isinstance(node, Rel):
        acc.add(node.name)
    elif isinstance(node, Not):
        relation_names(node.atom, acc)
    elif isinstance(node, (And, Or)):
        for p in node.parts:
            relation_names(p, acc)
    elif isinstance(node, Exists):
        relation_names(node.body, acc)
    return acc


def is_sigma1(f, defs=None):
    """Structural Σ₁ check.

    Negation may only wrap an equation or an atom of a relation that is not
    in ``defs``; every definition reached through ``defs`` must pass too.
    """
    defs = defs or {}
    seen = set()

    def ok(node):
        if isinstance(node, (Eq, Rel)):
            if isinstance(node, Rel) and node.name in defs and node.name not in seen:
                seen.add(node.name)
                return ok(defs[node.name].body)
            return True
        if isinstance(node, Not):
            a = node.atom
            if isinstance(a, Eq):
                return True
            return isinstance(a, Rel) and a.name not in defs
        if isinstance(node, (And, Or)):
            return all(ok(p) for p in node.parts)
        if isinstance(node, Exists):
            return ok(node.body)
        return False

    body = f.body if isinstance(f, Formula) else f
    return ok(body)


# -- substitution and inlining ---------------------------------------------------

_fresh = count()


def subst_term(t, mapping):
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, App):
        return App(t.fn, tuple(subst_term(a, mapping) for a in t.args))
    return t


def subst(node, mapping):
    """Capture-avoiding substitution of terms for free variables."""
    if isinstance(node, Eq):
        return Eq(subst_term(node.left, mapping), subst_term(node.right, mapping))
    if isinstance(node, Rel):
        return Rel(node.name, tuple(subst_term(a, mapping) for a in node.args))
    if isinstance(node, Not):
        return Not(subst(node.atom, mapping))
    if isinstance(node, And):
        return And(tuple(subst(p, mapping) for p in node.parts))
    if isinstance(node, Or):
        return Or(tuple(subst(p, mapping) for p in node.parts))
    if isinstance(node, Exists):
        inner = {k: v for k, v in mapping.items() if k not in node.vars}
        incoming = set()
        for v in inner.values():
            incoming |= term_vars(v)
        names, ren = [], {}
        for n in node.vars:
            if n in incoming:
                fresh = f"{n}_{next(_fresh)}"
                ren[n] = Var(fresh)
                names.append(fresh)
            else:
                names.append(n)
        body = subst(node.body, ren) if ren else node.body
        return Exists(tuple(names), subst(body, inner))
    raise FormulaError(f"not a formula node: {node!r}")


def instantiate(f, args):
    """Body of ``f`` with its parameters replaced by the terms ``args``."""
    if len(args) != f.arity:
        raise FormulaError(f"arity mismatch: expected {f.arity} arguments, got {len(args)}")
    return subst(f.body, dict(zip(f.params, args)))


def expand(f, defs):
    """Inline every relation atom that names a definition in ``defs``."""
    def go(node):
        if isinstance(node, Rel) and node.name in defs:
            return go(instantiate(defs[node.name], node.args))
        if isinstance(node, Not):
            if isinstance(node.atom, Rel) and node.atom.name in defs:
                raise FormulaError(f"cannot inline negated definition {node.atom.name}")
            return node
        if isinstance(node, And):
            return And(tuple(go(p) for p in node.parts))
        if isinstance(node, Or):
            return Or(tuple(go(p) for p in node.parts))
        if isinstance(node, Exists):
            return Exists(node.vars, go(node.body))
        return node

    return Formula(f.params, go(f.body))


# -- text format ----------------------------------------------------------------

def _tokens(text):
    text = re.sub(r";[^\n]*", " ", text)
    return text.replace("(", " ( ").replace(")", " ) ").split()


def _read(tokens):
    """Nested lists of atoms from a token stream."""
    stack, out = [], []
    for tok in tokens:
        if tok == "(":
            stack.append(out)
            out = []
        elif tok == ")":
            if not stack:
                raise FormulaError("unbalanced ')'")
            done, out = out, stack.pop()
            out.append(done)
        else:
            out.append(tok)
    if stack:
        raise FormulaError("unbalanced '('")
    return out


def _name(tok, what):
    if not isinstance(tok, str) or not _NAME.match(tok) or tok in KEYWORDS:
        raise FormulaError(f"bad {what}: {tok!r}")
    return tok


def _term(x):
    if isinstance(x, str):
        if x.startswith("#"):
            if not x[1:].isdigit():
                raise FormulaError(f"bad constant {x!r}")
            return Const(int(x[1:]))
        return Var(_name(x, "variable"))
    if not x:
        raise FormulaError("empty term")
    return App(_name(x[0], "function symbol"), tuple(_term(a) for a in x[1:]))


def _body(x):
    if not isinstance(x, list) or not x:
        raise FormulaError(f"expected a formula, got {x!r}")
    head, rest = x[0], x[1:]
    if head == "=":
        if len(rest) != 2:
            raise FormulaError("'=' takes two terms")
        return Eq(_term(rest[0]), _term(rest[1]))
    if head == "rel":
        if not rest:
            raise FormulaError("'rel' needs a relation name")
        return Rel(_name(rest[0], "relation name"), tuple(_term(a) for a in rest[1:]))
    if head == "not":
        if len(rest) != 1:
            raise FormulaError("'not' takes one atom")
        atom = _body(rest[0])
        if not isinstance(atom, (Eq, Rel)):
            raise FormulaError("'not' may only wrap an atom")
        return Not(atom)
    if head == "and":
        return And(tuple(_body(p) for p in rest))
    if head == "or":
        return Or(tuple(_body(p) for p in rest))
    if head == "exists":
        if len(rest) != 2 or not isinstance(rest[0], list) or not rest[0]:
            raise FormulaError("'exists' takes a variable list and a body")
        return Exists(tuple(_name(v, "variable") for v in rest[0]), _body(rest[1]))
    raise FormulaError(f"unknown formula head {head!r}")


def parse(text):
    """Parse one ``(lambda (vars) body)`` form."""
    forms = _read(_tokens(text))
    if len(forms) != 1:
        raise FormulaError(f"expected one formula, found {len(forms)}")
    x = forms[0]
    if not isinstance(x, list) or len(x) != 3 or x[0] != "lambda" or not isinstance(x[1], list):
        raise FormulaError("a formula must have the form (lambda (vars) body)")
    return Formula(tuple(_name(v, "variable") for v in x[1]), _body(x[2]))


def parse_library(text):
    """Parse ``(define NAME (lambda ...))`` forms into a dict."""
    out = {}
    for x in _read(_tokens(text)):
        if not isinstance(x, list) or len(x) != 3 or x[0] != "define":
            raise FormulaError("library entries must be (define NAME formula)")
        name = _name(x[1], "definition name")
        out[name] = parse(_unread(x[2]))
    return out


def _unread(x):
    return x if isinstance(x, str) else "(" + " ".join(_unread(a) for a in x) + ")"


def format_library(defs):
    return "\n".join(f"(define {name} {f})" for name, f in defs.items()) + "\n"
