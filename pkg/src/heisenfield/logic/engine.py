"""Satisfaction of existential formulas in finite structures.

Two evaluators share one semantics:

* the naive one recurses on the syntax tree and tries every tuple of the
  universe for each existential block; it is short enough to check by eye
  and serves as the reference;
* the planned one flattens a body into one existential block of literals and
  then binds variables in a fixed order. A variable is computed from an
  equation ``y = t`` when ``t`` is already known, drawn from the memoized
  solution set of a defined relation when one of its atoms has all other
  arguments known, and enumerated over the universe otherwise. Every literal
  is tested as soon as its variables are bound.

Both decide exactly the same formulas; the test suite cross-checks them.
"""

from __future__ import annotations

from itertools import count, product

from ..errors import FormulaError
from .syntax import (And, App, Const, Eq, Exists, Formula, Not, Or, Rel, Var, free_vars,
                     subst, term_vars)

_fresh = count()


def _default_defs():
    from .library import builtin_formulas
    return builtin_formulas()


class Evaluator:
    """Evaluates formulas in one structure against one set of definitions."""

    def __init__(self, struct, defs=None):
        self.struct = struct
        self.defs = _default_defs() if defs is None else dict(defs)
        self._checked = {}
        for name, f in self.defs.items():
            if name in struct.relations:
                raise FormulaError(f"definition {name} clashes with a structure relation")
            self.check(f)
        self._plans = {}
        self._memo = {}
        self._truth = {}
        self._index = {}

    # -- validation -----------------------------------------------------------
    def _check_term(self, t):
        if isinstance(t, Var):
            return
        if isinstance(t, Const):
            if not 0 <= t.value < self.struct.size:
                raise FormulaError(f"constant #{t.value} is outside the universe")
            return
        if isinstance(t, App):
            if t.fn not in self.struct.functions:
                raise FormulaError(f"unknown function symbol {t.fn!r}")
            if self.struct.arities[t.fn] != len(t.args):
                raise FormulaError(f"arity mismatch: {t.fn} takes {self.struct.arities[t.fn]} "
                                   f"arguments, got {len(t.args)}")
            for a in t.args:
                self._check_term(a)
            return
        raise FormulaError(f"not a term: {t!r}")

    def _arity(self, name):
        if name in self.struct.relations:
            return self.struct.relations[name][0]
        if name in self.defs:
            return self.defs[name].arity
        raise FormulaError(f"unknown relation symbol {name!r}")

    def check(self, f):
        """Raise :class:`FormulaError` on unknown symbols or arity mismatches."""
        if self._checked.get(id(f)) is f:
            return

        def go(node):
            if isinstance(node, Eq):
                self._check_term(node.left)
                self._check_term(node.right)
            elif isinstance(node, Rel):
                if self._arity(node.name) != len(node.args):
                    raise FormulaError(f"arity mismatch: {node.name} takes "
                                       f"{self._arity(node.name)} arguments, got {len(node.args)}")
                for a in node.args:
                    self._check_term(a)
            elif isinstance(node, Not):
                go(node.atom)
            elif isinstance(node, (And, Or)):
                for p in node.parts:
                    go(p)
            elif isinstance(node, Exists):
                go(node.body)
            else:
                raise FormulaError(f"not a formula node: {node!r}")

        go(f.body if isinstance(f, Formula) else f)
        self._checked[id(f)] = f

    def _assignment(self, f, assignment, partial=False):
        if assignment is None:
            assignment = {}
        if not isinstance(assignment, dict):
            assignment = list(assignment)
            if len(assignment) != f.arity:
                raise FormulaError(f"arity mismatch: formula has {f.arity} free variables, "
                                   f"assignment has {len(assignment)} values")
            assignment = dict(zip(f.params, assignment))
        unknown = set(assignment) - set(f.params)
        if unknown:
            raise FormulaError(f"assignment names unknown variables {sorted(unknown)}")
        if not partial and len(assignment) != f.arity:
            missing = [p for p in f.params if p not in assignment]
            raise FormulaError(f"assignment does not cover {missing}")
        env = {}
        for k, v in assignment.items():
            v = int(v)
            if not 0 <= v < self.struct.size:
                raise FormulaError(f"value {v} for {k} is outside the universe")
            env[k] = v
        return env

    # -- public entry points -------------------------------------------------
    def holds(self, f, assignment):
        self.check(f)
        env = self._assignment(f, assignment)
        inputs = tuple(p for p in f.params)
        run = self._plan(f.body, inputs, ())
        return run(env, None)

    def solutions(self, f, partial=None):
        """Tuples of the unassigned parameters (in declaration order) making ``f`` true."""
        self.check(f)
        env = self._assignment(f, partial, partial=True)
        inputs = tuple(p for p in f.params if p in env)
        outputs = tuple(p for p in f.params if p not in env)
        out = set()
        self._plan(f.body, inputs, outputs)(env, out)
        return out

    def def_solutions(self, name, in_pos, values):
        """Memoized solutions of definition ``name`` with positions ``in_pos`` fixed."""
        key = (name, in_pos, values)
        got = self._memo.get(key)
        if got is None:
            f = self.defs[name]
            env = dict(zip((f.params[i] for i in in_pos), values))
            inputs = tuple(f.params[i] for i in in_pos)
            outputs = tuple(p for i, p in enumerate(f.params) if i not in in_pos)
            out = set()
            self._plan(f.body, inputs, outputs)(env, out)
            got = self._memo[key] = tuple(sorted(out))
        return got

    def def_holds(self, name, values):
        key = (name, values)
        got = self._truth.get(key)
        if got is None:
            f = self.defs[name]
            got = self._truth[key] = self._plan(f.body, f.params, ())(dict(zip(f.params, values)),
                                                                      None)
        return got

    # -- compilation ----------------------------------------------------------
    def _term(self, t):
        if isinstance(t, Var):
            name = t.name
            return lambda env: env[name]
        if isinstance(t, Const):
            value = t.value
            return lambda env: value
        table = self.struct.functions[t.fn]
        args = [self._term(a) for a in t.args]
        if not args:
            return lambda env: table
        if len(args) == 1:
            (a,) = args
            return lambda env: table[a(env)]
        if len(args) == 2:
            a, b = args
            return lambda env: table[a(env)][b(env)]

        def app(env):
            out = table
            for a in args:
                out = out[a(env)]
            return out

        return app

    def _flatten(self, node, exvars, lits):
        if isinstance(node, And):
            for p in node.parts:
                self._flatten(p, exvars, lits)
        elif isinstance(node, Exists):
            ren = {v: Var(f"{v}~{next(_fresh)}") for v in node.vars}
            exvars.extend(r.name for r in ren.values())
            self._flatten(subst(node.body, ren), exvars, lits)
        else:
            lits.append(node)

    def _test(self, lit):
        """Closure deciding a literal whose variables are all bound."""
        if isinstance(lit, Eq):
            a, b = self._term(lit.left), self._term(lit.right)
            return lambda env: a(env) == b(env)
        if isinstance(lit, Not):
            t = self._test(lit.atom)
            return lambda env: not t(env)
        if isinstance(lit, Rel):
            args = [self._term(a) for a in lit.args]
            if lit.name in self.struct.relations:
                rows = self.struct.relations[lit.name][1]
                return lambda env: tuple(a(env) for a in args) in rows
            name, holds = lit.name, self.def_holds
            return lambda env: holds(name, tuple([a(env) for a in args]))
        if isinstance(lit, Or):
            subs = []
            for p in lit.parts:
                fv = tuple(sorted(free_vars(p)))
                subs.append(self._plan(p, fv, ()))
            return lambda env: any(s(env, None) for s in subs)
        raise FormulaError(f"cannot test {lit!r}")

    def _generator(self, lit, bound, todo):
        """``(names, fn)`` enumerating the unbound variables of a relation atom, or None."""
        if not isinstance(lit, Rel):
            return None
        in_pos, in_terms, out_names = [], [], []
        for i, a in enumerate(lit.args):
            vs = term_vars(a)
            if vs <= bound:
                in_pos.append(i)
                in_terms.append(self._term(a))
            elif isinstance(a, Var) and a.name in todo and a.name not in out_names:
                out_names.append(a.name)
            else:
                return None
        if not out_names:
            return None
        in_pos = tuple(in_pos)
        if lit.name in self.struct.relations:
            index = self._rel_index(lit.name, in_pos)

            def gen(env):
                return index.get(tuple(t(env) for t in in_terms), ())
        else:
            if not in_pos:
                return None
            name, sols = lit.name, self.def_solutions

            if len(in_terms) == 1:
                (t0,) = in_terms

                def gen(env):
                    return sols(name, in_pos, (t0(env),))
            else:
                def gen(env):
                    return sols(name, in_pos, tuple([t(env) for t in in_terms]))

        return tuple(out_names), gen, len(in_pos)

    def _rel_index(self, name, in_pos):
        key = (name, in_pos)
        if key not in self._index:
            arity, rows = self.struct.relations[name]
            out_pos = [i for i in range(arity) if i not in in_pos]
            idx = {}
            for r in sorted(rows):
                idx.setdefault(tuple(r[i] for i in in_pos), []).append(tuple(r[i] for i in out_pos))
            self._index[key] = idx
        return self._index[key]

    def _plan(self, body, inputs, outputs):
        """Compile ``body`` into ``run(env, sink)``.

        With ``sink=None`` the run answers whether some extension of ``env``
        satisfies the body; otherwise every satisfying tuple of ``outputs`` is
        added to ``sink``.
        """
        key = (id(body), inputs, outputs)
        hit = self._plans.get(key)
        if hit is not None and hit[0] is body:
            return hit[1]
        exvars, lits = [], []
        self._flatten(body, exvars, lits)
        bound = set(inputs)
        todo = list(outputs) + exvars
        steps = []
        pending = list(lits)

        def flush():
            ready = [l for l in pending if free_vars(l) <= bound]
            ready.sort(key=lambda l: (isinstance(l, Or), isinstance(l, Rel) or
                                      isinstance(l, Not) and isinstance(l.atom, Rel)))
            for l in ready:
                pending.remove(l)
                steps.append(("test", self._test(l)))

        flush()
        while todo:
            choice = None
            for l in pending:
                if isinstance(l, Eq):
                    for y, t in ((l.left, l.right), (l.right, l.left)):
                        if (isinstance(y, Var) and y.name in todo
                                and term_vars(t) <= bound):
                            choice = ("bind", y.name, self._term(t), l)
                            break
                if choice:
                    break
            if choice:
                _, name, tf, lit = choice
                pending.remove(lit)
                steps.append(("bind", name, tf))
                todo.remove(name)
                bound.add(name)
            else:
                best = None
                for l in pending:
                    g = self._generator(l, bound, todo)
                    if g and (best is None or g[2] > best[1][2]):
                        best = (l, g)
                if best:
                    lit, (names, gen, _) = best
                    pending.remove(lit)
                    steps.append(("gen", names, gen))
                    for n in names:
                        todo.remove(n)
                        bound.add(n)
                else:
                    # enumerate the variable that completes the most literals
                    def gain(y):
                        return sum(free_vars(l) <= bound | {y} for l in pending)
                    name = max(todo, key=gain)
                    todo.remove(name)
                    steps.append(("enum", name))
                    bound.add(name)
            flush()
        if pending:
            raise FormulaError(f"unbound variables in {pending[0]}")
        run = self._chain(steps, outputs)
        self._plans[key] = (body, run)
        return run

    def _chain(self, steps, outputs):
        size = self.struct.size

        def final(env, sink):
            if sink is None:
                return True
            sink.add(tuple(env[o] for o in outputs))
            return False

        nxt = final
        for step in reversed(steps):
            nxt = self._link(step, nxt, size)
        return lambda env, sink: nxt(dict(env), sink)

    @staticmethod
    def _link(step, nxt, size):
        kind = step[0]
        if kind == "test":
            fn = step[1]
            return lambda env, sink: fn(env) and nxt(env, sink)
        if kind == "bind":
            name, tf = step[1], step[2]

            def bind(env, sink):
                env[name] = tf(env)
                return nxt(env, sink)

            return bind
        if kind == "gen":
            names, gen = step[1], step[2]
            if len(names) == 1:
                (name,) = names

                def gen1(env, sink):
                    for (x,) in gen(env):
                        env[name] = x
                        if nxt(env, sink):
                            return True
                    return False

                return gen1

            def genk(env, sink):
                for xs in gen(env):
                    env.update(zip(names, xs))
                    if nxt(env, sink):
                        return True
                return False

            return genk
        name = step[1]

        def enum(env, sink):
            for x in range(size):
                env[name] = x
                if nxt(env, sink):
                    return True
            return False

        return enum


class NaiveEvaluator:
    """Reference semantics: plain recursion, every existential tried exhaustively."""

    def __init__(self, struct, defs=None):
        self.struct = struct
        self.defs = _default_defs() if defs is None else dict(defs)
        self._checker = Evaluator(struct, self.defs)

    def term(self, t, env):
        if isinstance(t, Var):
            return env[t.name]
        if isinstance(t, Const):
            return t.value
        out = self.struct.functions[t.fn]
        for a in t.args:
            out = out[self.term(a, env)]
        return out

    def sat(self, node, env):
        if isinstance(node, Eq):
            return self.term(node.left, env) == self.term(node.right, env)
        if isinstance(node, Rel):
            vals = tuple(self.term(a, env) for a in node.args)
            if node.name in self.struct.relations:
                return vals in self.struct.relations[node.name][1]
            f = self.defs[node.name]
            return self.sat(f.body, dict(zip(f.params, vals)))
        if isinstance(node, Not):
            return not self.sat(node.atom, env)
        if isinstance(node, And):
            return all(self.sat(p, env) for p in node.parts)
        if isinstance(node, Or):
            return any(self.sat(p, env) for p in node.parts)
        if isinstance(node, Exists):
            for xs in product(range(self.struct.size), repeat=len(node.vars)):
                if self.sat(node.body, {**env, **dict(zip(node.vars, xs))}):
                    return True
            return False
        raise FormulaError(f"not a formula node: {node!r}")

    def holds(self, f, assignment):
        self._checker.check(f)
        return self.sat(f.body, self._checker._assignment(f, assignment))

    def solutions(self, f, partial=None):
        self._checker.check(f)
        env = self._checker._assignment(f, partial, partial=True)
        outputs = [p for p in f.params if p not in env]
        return {xs for xs in product(range(self.struct.size), repeat=len(outputs))
                if self.sat(f.body, {**env, **dict(zip(outputs, xs))})}


def evaluator(struct, defs=None, naive=False):
    """The (cached) evaluator of ``struct`` for the definitions ``defs``."""
    key = (id(defs), naive)
    hit = struct._evaluators.get(key)
    if hit is None or hit[0] is not defs:
        ev = (NaiveEvaluator if naive else Evaluator)(struct, defs)
        struct._evaluators[key] = hit = (defs, ev)
    return hit[1]


def evaluate(struct, f, assignment, defs=None, naive=False):
    """Whether ``struct`` satisfies ``f`` under ``assignment`` (dict or sequence)."""
    return evaluator(struct, defs, naive).holds(f, assignment)


def solutions(struct, f, partial=None, defs=None, naive=False):
    """Every tuple of the parameters missing from ``partial`` that satisfies ``f``."""
    return evaluator(struct, defs, naive).solutions(f, partial)


eval = evaluate
