"""First-order terms: variables and structures (constants are 0-ary structures)."""
from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Hashable, Iterator, Union


@dataclass(frozen=True)
class Var:
    name: Hashable

    def __str__(self):
        if isinstance(self.name, tuple):
            return f"_{self.name[0]}_{self.name[1]}"
        return str(self.name)


@dataclass(frozen=True)
class Struct:
    functor: Hashable
    args: tuple = ()

    @property
    def arity(self) -> int:
        return len(self.args)

    @property
    def indicator(self) -> tuple:
        return (self.functor, len(self.args))

    def __str__(self):
        return format_term(self)


Term = Union[Var, Struct]
Substitution = dict  # Var -> Term

NIL = Struct("[]")


def const(name) -> Struct:
    return Struct(name)


def make_list(items, tail: Term = NIL) -> Term:
    out = tail
    for item in reversed(list(items)):
        out = Struct(".", (item, out))
    return out


def list_items(term: Term) -> list[Term] | None:
    """Python list for a proper list term, else None."""
    out = []
    while isinstance(term, Struct) and term.functor == "." and term.arity == 2:
        out.append(term.args[0])
        term = term.args[1]
    return out if term == NIL else None


def variables(term: Term) -> Iterator[Var]:
    """Variables of *term* in left-to-right order (repeats included)."""
    stack = [term]
    while stack:
        t = stack.pop()
        if isinstance(t, Var):
            yield t
        else:
            stack.extend(reversed(t.args))


def unique_vars(term_or_terms) -> list[Var]:
    terms = term_or_terms if isinstance(term_or_terms, (list, tuple)) else [term_or_terms]
    seen = {}
    for t in terms:
        for v in variables(t):
            seen.setdefault(v, None)
    return list(seen)


def walk(term: Term, subst: Substitution) -> Term:
    while isinstance(term, Var) and term in subst:
        term = subst[term]
    return term


def apply(term: Term, subst: Substitution) -> Term:
    """Fully resolve *term* under a (possibly triangular) substitution."""
    term = walk(term, subst)
    if isinstance(term, Var) or not term.args:
        return term
    return Struct(term.functor, tuple(apply(a, subst) for a in term.args))


def occurs(var: Var, term: Term, subst: Substitution) -> bool:
    stack = [term]
    while stack:
        t = walk(stack.pop(), subst)
        if t == var:
            return True
        if isinstance(t, Struct):
            stack.extend(t.args)
    return False


def resolve_substitution(subst: Substitution, keep=None) -> Substitution:
    """Idempotent form of a triangular substitution, optionally restricted to *keep*."""
    keys = subst.keys() if keep is None else keep
    out = {}
    for v in keys:
        t = apply(v, subst)
        if t != v:
            out[v] = t
    return out


_fresh = itertools.count()


def rename(term: Term, mapping: dict) -> Term:
    if isinstance(term, Var):
        if term not in mapping:
            mapping[term] = Var((term.name if not isinstance(term.name, tuple) else term.name[0],
                                 next(_fresh)))
        return mapping[term]
    if not term.args:
        return term
    return Struct(term.functor, tuple(rename(a, mapping) for a in term.args))


_PLAIN_ATOM = re.compile(r"[a-z][A-Za-z0-9_]*$")


def format_atom(name) -> str:
    if isinstance(name, (int, float)):
        return repr(name)
    s = str(name)
    if _PLAIN_ATOM.match(s) or s in ("[]", "!", ";", ","):
        return s
    return "'" + s.replace("\\", "\\\\").replace("'", "\\'") + "'"


def format_term(term: Term) -> str:
    if isinstance(term, Var):
        return str(term)
    items = list_items(term)
    if items is not None and term != NIL:
        return "[" + ", ".join(format_term(i) for i in items) + "]"
    if term.functor == ":" and term.arity == 2:
        return f"{format_term(term.args[0])}:{format_term(term.args[1])}"
    if not term.args:
        return format_atom(term.functor)
    return f"{format_atom(term.functor)}({', '.join(format_term(a) for a in term.args)})"
