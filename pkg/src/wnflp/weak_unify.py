"""Proximity-based (weak) unification with approximation degrees."""
from __future__ import annotations

from typing import NamedTuple

from .proximity import FuzzyRelation, TNorm, identity_relation, passes_cut
from .terms import Substitution, Term, Var, occurs, resolve_substitution, walk


class UnificationFailure(Exception):
    """Raised by :func:`wmgu`; ``reason`` is ``clash``, ``arity`` or ``occurs``."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


class Unifier(NamedTuple):
    subst: Substitution
    degree: float


def unify_into(pairs, subst: Substitution, rel: FuzzyRelation, lam: float, tnorm: TNorm,
               degree: float = 1.0, occurs_check: bool = True) -> float:
    """Extend the triangular *subst* in place so every pair weakly unifies.

    Pairs are solved left to right (decompose, delete, orient, eliminate).
    Returns the accumulated degree; raises :class:`UnificationFailure`.
    """
    stack = list(reversed(pairs))
    while stack:
        s, t = stack.pop()
        s, t = walk(s, subst), walk(t, subst)
        if s == t:
            continue
        if isinstance(s, Var):
            if occurs_check and occurs(s, t, subst):
                raise UnificationFailure("occurs", f"{s} in {t}")
            subst[s] = t
            continue
        if isinstance(t, Var):
            if occurs_check and occurs(t, s, subst):
                raise UnificationFailure("occurs", f"{t} in {s}")
            subst[t] = s
            continue
        if len(s.args) != len(t.args):
            raise UnificationFailure("arity", f"{s.functor}/{len(s.args)} vs {t.functor}/{len(t.args)}")
        if s.functor != t.functor:
            beta = rel.degree_of(s.functor, t.functor)
            if not passes_cut(beta, lam):
                raise UnificationFailure("clash", f"{s.functor} ~ {t.functor} = {beta}")
            degree = tnorm(degree, beta)
            if not passes_cut(degree, lam):
                raise UnificationFailure("clash", f"degree {degree} below lambda {lam}")
        stack.extend(reversed(list(zip(s.args, t.args))))
    return degree


def wmgu(e1: Term, e2: Term, rel: FuzzyRelation | None = None, lam: float | None = None,
         tnorm=None, occurs_check: bool = True) -> Unifier:
    """Weak most general unifier of *e1* and *e2* and its degree.

    *lam* and *tnorm* default to the relation's own settings. Without the
    occurs check the bindings may be cyclic, so the substitution is returned
    in triangular form.
    """
    rel = rel if rel is not None else identity_relation()
    lam = rel.lam if lam is None else lam
    tnorm = rel.tnorm if tnorm is None else TNorm.parse(tnorm)
    subst: Substitution = {}
    degree = unify_into([(e1, e2)], subst, rel, lam, tnorm, 1.0, occurs_check)
    return Unifier(resolve_substitution(subst) if occurs_check else subst, degree)


def try_wmgu(e1: Term, e2: Term, rel: FuzzyRelation | None = None, lam=None, tnorm=None,
             occurs_check: bool = True) -> Unifier | None:
    try:
        return wmgu(e1, e2, rel, lam, tnorm, occurs_check)
    except UnificationFailure:
        return None


def term_degree(e1: Term, e2: Term, rel: FuzzyRelation, tnorm=None) -> float:
    """R(e1, e2) for two terms: t-norm of the symbol degrees, 0 if the shapes differ.

    Variables only match the identical variable.
    """
    tnorm = rel.tnorm if tnorm is None else TNorm.parse(tnorm)
    degree = 1.0
    stack = [(e1, e2)]
    while stack:
        s, t = stack.pop()
        if isinstance(s, Var) or isinstance(t, Var):
            if s != t:
                return 0.0
            continue
        if len(s.args) != len(t.args):
            return 0.0
        degree = tnorm(degree, rel.degree_of(s.functor, t.functor))
        if degree <= 0.0:
            return 0.0
        stack.extend(zip(s.args, t.args))
    return degree

