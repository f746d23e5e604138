"""Generate block-numbered proximity equations from word lists or program tokens."""
from __future__ import annotations

from typing import Iterable, Sequence, Union

from .proximity import ProximityEquation
from .sim_measures import Measure
from .terms import Struct, Term, Var, format_atom, list_items
from .wn_store import HIERARCHY_POS, WordTerm

Pattern = Union[str, WordTerm]


class PatternError(ValueError):
    pass


def pattern_from_term(term: Term) -> Pattern:
    """``man`` -> "man"; ``grain:n:8`` -> WordTerm("grain", "n", 8)."""
    if isinstance(term, Struct) and not term.args and isinstance(term.functor, str):
        return term.functor
    if isinstance(term, Struct) and term.functor == ":" and term.arity == 2:
        word, rest = term.args
        if isinstance(rest, Struct) and rest.functor == ":" and rest.arity == 2:
            pos, sense = rest.args
            if (isinstance(word, Struct) and not word.args and isinstance(word.functor, str)
                    and isinstance(pos, Struct) and pos.functor in HIERARCHY_POS and not pos.args
                    and isinstance(sense, Struct) and isinstance(sense.functor, int)
                    and sense.functor > 0):
                return WordTerm(word.functor, pos.functor, sense.functor)
    raise PatternError(f"malformed pattern {term}; expected Word or Word:Type:Sense with Type in n/v")


def patterns_from_term(term: Term) -> list[list[Pattern]]:
    """Convert a directive's list-of-lists argument."""
    outer = list_items(term) if isinstance(term, Struct) else None
    if outer is None:
        raise PatternError(f"expected a list of pattern lists, got {term}")
    lists = []
    for inner in outer:
        items = list_items(inner) if isinstance(inner, Struct) else None
        if items is None:
            raise PatternError(f"expected a list of patterns, got {inner}")
        lists.append([pattern_from_term(i) for i in items])
    return lists


def default_patterns(store, items: Sequence[Pattern]) -> list[WordTerm]:
    """Give plain words sense 1 and the part of speech shared by the list."""
    if not items:
        raise PatternError("empty pattern list")
    typed = {i.pos for i in items if isinstance(i, WordTerm)}
    if len(typed) > 1:
        raise PatternError(f"patterns mix parts of speech {sorted(typed)}")
    plain = [i for i in items if not isinstance(i, WordTerm)]
    if typed:
        pos = typed.pop()
    else:
        known = [w for w in plain if store.has_word(w) or store.try_resolve(WordTerm(w, "n", 1))
                 or store.try_resolve(WordTerm(w, "v", 1))]
        pos = None
        for cand in HIERARCHY_POS:
            if all(store.try_resolve(WordTerm(w, cand, 1)) is not None for w in known):
                pos = cand
                break
        if pos is None:
            raise PatternError(f"no part of speech is shared by {known}")
    return [i if isinstance(i, WordTerm) else WordTerm(i, pos, 1) for i in items]


def _pairs(wn, measure: Measure, named: list[tuple[object, int | None]], block: int, lam: float):
    out = []
    for i in range(len(named)):
        sym_a, ca = named[i]
        if ca is None:
            continue
        for j in range(i + 1, len(named)):
            sym_b, cb = named[j]
            if cb is None or sym_a == sym_b:
                continue
            if wn.taxonomy.pos_of(ca) != wn.taxonomy.pos_of(cb):
                continue
            d = wn.sim.degree(measure, ca, cb)
            if d > lam and d > 0.0:
                out.append(ProximityEquation(sym_a, sym_b, d, block))
    return out


def generate(wn, measure, lists: Sequence[Sequence[Pattern]], lam: float = 0.0) -> list[ProximityEquation]:
    """One equation per unordered pair of distinct resolvable words in each list.

    The last list is block 0 and blocks count up toward the first list.
    """
    measure = Measure.parse(measure)
    out = []
    for idx, items in enumerate(lists):
        block = len(lists) - 1 - idx
        terms = default_patterns(wn.store, items)
        named = [(t.word, wn.store.try_resolve(t)) for t in terms]
        out.extend(_pairs(wn, measure, named, block, lam))
    return out


def token_classes(clauses) -> tuple[list[str], list[str], list[str]]:
    """Constants, functors and predicate names of *clauses*, in first-occurrence order.

    *clauses* yields (head, body-goals) pairs of terms.
    """
    consts, functors, preds = {}, {}, {}

    def scan_arg(t):
        if isinstance(t, Var):
            return
        if isinstance(t.functor, str):
            (functors if t.args else consts).setdefault(t.functor, None)
        for a in t.args:
            scan_arg(a)

    def scan_goal(g):
        if isinstance(g, Struct) and g.functor in (",", ";") and g.arity == 2:
            scan_goal(g.args[0])
            scan_goal(g.args[1])
            return
        preds.setdefault(g.functor, None)
        for a in g.args:
            scan_arg(a)

    for head, body in clauses:
        scan_goal(head)
        if body is not None:
            scan_goal(body)
    return list(consts), list(functors), list(preds)


def _lookup_token(store, token: str, order: Iterable[str]) -> int | None:
    for pos in order:
        for form in dict.fromkeys((token, token.replace("_", " "))):
            sid = store.try_resolve(WordTerm(form, pos, 1))
            if sid is not None:
                return sid
    return None


def auto_generate(wn, measure, clauses, lam: float = 0.0) -> list[ProximityEquation]:
    """Relate the program's own tokens, each token class in a separate block.

    Constants and functors are read as nouns; predicates as verbs, falling
    back to nouns. Blocks: constants 2, functors 1, predicates 0.
    """
    measure = Measure.parse(measure)
    consts, functors, preds = token_classes(clauses)
    out = []
    for block, tokens, order in ((2, consts, ("n",)), (1, functors, ("n",)), (0, preds, ("v", "n"))):
        named = [(t, _lookup_token(wn.store, t, order)) for t in tokens]
        out.extend(_pairs(wn, measure, named, block, lam))
    return out


def format_sim(eq: ProximityEquation) -> str:
    """``sim(man, human, 1, 0.56).`` with full float precision."""
    a, b = format_atom(eq.sym_a), format_atom(eq.sym_b)
    if eq.block is None:
        return f"sim({a}, {b}, {eq.degree!r})."
    return f"sim({a}, {b}, {eq.block}, {eq.degree!r})."
