"""Depth-first weak SLD resolution with approximation degrees."""
from __future__ import annotations

from typing import Iterator, NamedTuple

from ..proximity import TNorm, passes_cut
from ..sim_measures import Measure
from ..terms import Struct, Term, Var, apply, format_term, rename, unique_vars, walk
from ..weak_unify import UnificationFailure, unify_into
from ..wn_store import WordTerm
from .parser import parse_query
from .program import Program


class EngineError(RuntimeError):
    pass


class Step(NamedTuple):
    """One resolution step: rule index (-1 for builtins), rule degree, unification degree."""
    rule: int
    delta: float
    beta: float


class Answer(NamedTuple):
    bindings: dict   # query variable name -> Term
    degree: float
    trace: tuple = ()

    def format(self) -> str:
        if self.bindings:
            body = ", ".join(f"{k}={format_term(v)}" for k, v in self.bindings.items())
        else:
            body = "yes"
        return f"{body} with {self.degree!r}"


class _State(NamedTuple):
    goals: tuple | None      # cons list (goal, rest)
    subst: dict
    alpha: float
    depth: int
    trace: tuple


def _push(goal: Term | None, rest):
    return rest if goal is None else (goal, rest)


_WN_MEASURES = {f"wn_{m.value}": m for m in Measure}


def _word_term(t: Term) -> WordTerm:
    if isinstance(t, Var):
        raise EngineError("WordNet builtins need bound word arguments")
    if not t.args and isinstance(t.functor, str):
        return WordTerm(t.functor, "n", 1)
    if t.functor == ":" and t.arity == 2:
        w, rest = t.args
        if isinstance(rest, Struct) and rest.functor == ":" and rest.arity == 2:
            p, s = rest.args
            if isinstance(w, Struct) and isinstance(p, Struct) and isinstance(s, Struct) \
                    and isinstance(s.functor, int):
                return WordTerm(str(w.functor), str(p.functor), s.functor)
    raise EngineError(f"not a word term: {format_term(t)}")


class Solver:
    """Answers queries against an immutable :class:`Program`.

    A solver holds no per-query state, so one instance may serve concurrent queries.
    """

    def __init__(self, program: Program, *, max_depth: int | None = None, occurs_check: bool = True):
        self.program = program
        self.max_depth = max_depth
        self.occurs_check = occurs_check

    def solve(self, query, *, dedup_max: bool = False) -> Iterator[Answer]:
        if isinstance(query, str):
            goal, qvars = parse_query(query)
        else:
            goal, qvars = query, None
        if qvars is None:
            qvars = {str(v): v for v in unique_vars(goal)}
        qvars = {k: v for k, v in qvars.items() if not k.startswith("_")}
        stream = self._run(goal, qvars)
        return _dedup(stream) if dedup_max else stream

    def _run(self, goal: Term, qvars: dict) -> Iterator[Answer]:
        lam = self.program.lam
        stack = [iter((_State((goal, None), {}, 1.0, 0, ()),))]
        while stack:
            state = next(stack[-1], None)
            if state is None:
                stack.pop()
                continue
            if state.goals is None:
                bindings = {k: apply(v, state.subst) for k, v in qvars.items()}
                if passes_cut(state.alpha, lam):
                    yield Answer(bindings, state.alpha, state.trace)
                continue
            stack.append(self._expand(state))

    def _expand(self, state: _State) -> Iterator[_State]:
        goal, rest = state.goals
        goal = walk(goal, state.subst)
        if isinstance(goal, Var):
            raise EngineError("unbound goal")
        if goal.functor == "," and goal.arity == 2:
            yield state._replace(goals=(goal.args[0], (goal.args[1], rest)))
            return
        if goal.functor == ";" and goal.arity == 2:
            yield state._replace(goals=(goal.args[0], rest))
            yield state._replace(goals=(goal.args[1], rest))
            return
        if goal == Struct("true"):
            yield state._replace(goals=rest)
            return
        if self.max_depth is not None and state.depth >= self.max_depth:
            return
        prog = self.program
        if prog.wn_connect and goal.functor in _WN_MEASURES and goal.arity in (2, 3):
            yield from self._wn_builtin(goal, rest, state)
            return
        yield from self._resolve(goal, rest, state)

    def _resolve(self, goal: Struct, rest, state: _State) -> Iterator[_State]:
        prog = self.program
        lam, tnorm = prog.lam, prog.tnorm
        for idx in prog.candidates(goal.functor, goal.arity):
            rule = prog.rules[idx]
            mapping: dict = {}
            head = rename(rule.head, mapping)
            body = rename(rule.body, mapping) if rule.body is not None else None
            subst = dict(state.subst)
            try:
                beta = unify_into([(goal, head)], subst, prog.relation, lam, tnorm, 1.0,
                                  self.occurs_check)
            except UnificationFailure:
                continue
            alpha = tnorm(rule.delta, tnorm(beta, state.alpha))
            if not passes_cut(alpha, lam):
                continue
            yield _State(_push(body, rest), subst, alpha, state.depth + 1,
                         state.trace + (Step(idx, rule.delta, beta),))

    def _wn_builtin(self, goal: Struct, rest, state: _State) -> Iterator[_State]:
        wn = self.program.wordnet
        measure = _WN_MEASURES[goal.functor]
        a = _word_term(apply(goal.args[0], state.subst))
        b = _word_term(apply(goal.args[1], state.subst))
        sid_a, sid_b = wn.store.try_resolve(a), wn.store.try_resolve(b)
        if sid_a is None or sid_b is None or wn.taxonomy.pos_of(sid_a) != wn.taxonomy.pos_of(sid_b):
            return
        d = wn.sim.degree(measure, sid_a, sid_b)
        tnorm, lam = self.program.tnorm, self.program.lam
        if goal.arity == 3:
            subst = dict(state.subst)
            try:
                unify_into([(goal.args[2], Struct(d))], subst, self.program.relation, lam, tnorm)
            except UnificationFailure:
                return
            yield _State(rest, subst, state.alpha, state.depth + 1, state.trace + (Step(-1, 1.0, 1.0),))
            return
        alpha = tnorm(state.alpha, d)
        if d > 0.0 and passes_cut(alpha, lam):
            yield _State(rest, state.subst, alpha, state.depth + 1, state.trace + (Step(-1, 1.0, d),))


def _dedup(stream: Iterator[Answer]) -> Iterator[Answer]:
    """Collapse answers with equal bindings to the best degree, in first-seen order."""
    best: dict = {}
    for ans in stream:
        key = tuple((k, format_term(v)) for k, v in ans.bindings.items())
        if key not in best or ans.degree > best[key].degree:
            best[key] = ans
    yield from best.values()


def solve(program: Program, query, *, max_depth: int | None = None, dedup_max: bool = False,
          occurs_check: bool = True) -> Iterator[Answer]:
    """Stream the answers to *query* (text or goal term) in derivation order."""
    return Solver(program, max_depth=max_depth, occurs_check=occurs_check).solve(query, dedup_max=dedup_max)


def replay_degree(program: Program, trace) -> float:
    """Re-fold the (delta, beta) pairs of a derivation with the program's t-norm."""
    t: TNorm = program.tnorm
    alpha = 1.0
    for step in trace:
        alpha = t(step.delta, t(step.beta, alpha))
    return alpha
