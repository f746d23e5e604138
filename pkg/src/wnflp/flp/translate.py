"""Head-linearizing translation of graded rules and a solver for the translated clauses.

A rule ``p(t1..tn) :- Q with d`` becomes, for every predicate q with
R(p, q) = a >= lambda, the clause
``q(H1..Hn) :- guard(d * a), H1 ~~ t1, ..., Hn ~~ tn, Q``
where ``*`` is the t-norm and ``~~`` weak unification.
"""
from __future__ import annotations

from typing import Iterator, NamedTuple

from ..equation_gen import format_sim
from ..proximity import ProximityEquation, passes_cut
from ..terms import Struct, Term, Var, format_term, rename
from ..weak_unify import UnificationFailure, unify_into
from .engine import Solver, Step, _push, _State
from .program import Program


class ExpandedClause(NamedTuple):
    head: Struct              # q(H1, ..., Hn), distinct fresh variables
    guard: float              # delta t-norm alpha
    matches: tuple            # ((Hi, ti), ...)
    body: Term | None
    rule: int                 # index of the source rule
    delta: float
    alpha: float


def translate(program: Program) -> list[ExpandedClause]:
    """Expanded clauses in source-rule order, then by descending predicate degree."""
    rel, lam, tnorm = program.relation, program.lam, program.tnorm
    out = []
    for idx, rule in enumerate(program.rules):
        p, n = rule.head.functor, rule.head.arity
        xs = tuple(Var(("H", i + 1)) for i in range(n))
        for q, alpha in rel.neighbours(p):
            if not passes_cut(alpha, lam):
                continue
            guard = tnorm(rule.delta, alpha)
            out.append(ExpandedClause(Struct(q, xs), guard, tuple(zip(xs, rule.head.args)),
                                      rule.body, idx, rule.delta, alpha))
    return out


class TranslatedSolver(Solver):
    """Runs queries over :func:`translate` output; heads match syntactically."""

    def __init__(self, program: Program, clauses: list[ExpandedClause] | None = None, **kw):
        super().__init__(program, **kw)
        self.clauses = translate(program) if clauses is None else clauses
        self._index: dict = {}
        for i, c in enumerate(self.clauses):
            self._index.setdefault(c.head.indicator, []).append(i)

    def _resolve(self, goal: Struct, rest, state: _State) -> Iterator[_State]:
        lam, tnorm, rel = self.program.lam, self.program.tnorm, self.program.relation
        for ci in self._index.get(goal.indicator, ()):
            clause = self.clauses[ci]
            alpha = tnorm(state.alpha, clause.guard)
            if not passes_cut(alpha, lam):
                continue
            mapping: dict = {}
            subst = dict(state.subst)
            pairs = []
            for (x, t), arg in zip(clause.matches, goal.args):
                subst[rename(x, mapping)] = arg
                pairs.append((rename(x, mapping), rename(t, mapping)))
            try:
                beta = unify_into(pairs, subst, rel, lam, tnorm, 1.0, self.occurs_check)
            except UnificationFailure:
                continue
            alpha = tnorm(alpha, beta)
            if not passes_cut(alpha, lam):
                continue
            body = rename(clause.body, mapping) if clause.body is not None else None
            yield _State(_push(body, rest), subst, alpha, state.depth + 1,
                         state.trace + (Step(clause.rule, clause.delta, tnorm(clause.alpha, beta)),))


def solve_translated(program: Program, query, *, max_depth: int | None = None,
                     dedup_max: bool = False):
    return TranslatedSolver(program, max_depth=max_depth).solve(query, dedup_max=dedup_max)


def format_body(body: Term) -> str:
    if isinstance(body, Struct) and body.functor == "," and body.arity == 2:
        return f"{format_body(body.args[0])}, {format_body(body.args[1])}"
    if isinstance(body, Struct) and body.functor == ";" and body.arity == 2:
        return f"({format_body(body.args[0])} ; {format_body(body.args[1])})"
    return format_term(body)


def relation_lines(program: Program) -> list[str]:
    """``sim/3`` and ``sim/4`` facts: surviving source equations first, then closure additions."""
    rel = program.relation
    lines, seen = [], set()
    for eq in program.equations:
        key = (eq.block, frozenset((eq.sym_a, eq.sym_b)))
        if eq.sym_a == eq.sym_b or key in seen or not passes_cut(eq.degree, program.lam):
            continue
        seen.add(key)
        stored = rel.blocks.get(eq.block, {}).get(key[1], eq.degree)
        lines.append(format_sim(eq._replace(degree=stored)))
    for eq in rel.equations():
        if (eq.block, frozenset((eq.sym_a, eq.sym_b))) not in seen:
            lines.append(format_sim(ProximityEquation(*eq)))
    return lines


def emit_tpl(program: Program, clauses: list[ExpandedClause] | None = None) -> str:
    clauses = translate(program) if clauses is None else clauses
    out = [f"% lambda={program.lam!r} tnorm={program.tnorm.value} closure={program.closure.value}"]
    out.extend(relation_lines(program))
    for c in clauses:
        goals = [f"degree_guard({c.guard!r})"]
        goals += [f"approx({format_term(x)}, {format_term(t)})" for x, t in c.matches]
        if c.body is not None:
            goals.append(format_body(c.body))
        out.append(f"{format_term(c.head)} :- {', '.join(goals)}.")
    return "\n".join(out) + "\n"
