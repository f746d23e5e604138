"""Program model: graded rules, proximity equations, directives and the built relation."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterator

from ..equation_gen import PatternError, auto_generate, generate, patterns_from_term
from ..proximity import ClosureKind, FuzzyRelation, ProximityEquation, TNorm, build_relation
from ..sim_measures import Measure
from ..terms import Struct, Term
from .parser import ParseError, RawClause, RawDirective, RawEquation, parse_items

DIRECTIVES = ("lambda_cut", "transitivity", "wn_connect", "wn_gen_prox_equations")


class ProgramError(ValueError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class GradedRule:
    head: Struct
    body: Term | None
    delta: float = 1.0
    line: int = 0

    @property
    def indicator(self) -> tuple:
        return self.head.indicator


@dataclass(frozen=True)
class GenDirective:
    """A validated ``wn_gen_prox_equations`` request; ``lists`` is None in auto mode."""
    measure: Measure
    lists: tuple | None
    line: int = 0


@dataclass(frozen=True)
class Directive:
    name: str
    args: tuple
    line: int = 0
    col: int = 0


@dataclass(frozen=True, eq=False)
class Program:
    rules: tuple = ()
    equations: tuple = ()        # hand-written and generated, block-tagged
    directives: tuple = ()
    lam: float = 0.0
    tnorm: TNorm = TNorm.GODEL
    closure: ClosureKind = ClosureKind.PROXIMITY
    wn_connect: bool = False
    wordnet: object = None
    relation: FuzzyRelation = None
    _by_indicator: dict = field(init=False, repr=False)
    _candidates: dict = field(init=False, repr=False)

    def __post_init__(self):
        if self.relation is None:
            object.__setattr__(self, "relation",
                               build_relation(self.equations, self.lam, self.tnorm, self.closure))
        by_ind: dict = {}
        for i, r in enumerate(self.rules):
            by_ind.setdefault(r.indicator, []).append(i)
        object.__setattr__(self, "_by_indicator", by_ind)
        object.__setattr__(self, "_candidates", {})

    def candidates(self, functor, arity: int) -> list[int]:
        """Indices of rules whose head predicate is lambda-close to functor/arity, in source order."""
        key = (functor, arity)
        hit = self._candidates.get(key)
        if hit is None:
            idx = []
            for sym, _ in self.relation.neighbours(functor):
                idx.extend(self._by_indicator.get((sym, arity), ()))
            hit = sorted(idx)
            self._candidates[key] = hit
        return hit

    @property
    def hand_equations(self) -> list[ProximityEquation]:
        return [e for e in self.equations if e.block is None]

    @property
    def generated_equations(self) -> list[ProximityEquation]:
        return [e for e in self.equations if e.block is not None]

    def predicates(self) -> list[tuple]:
        return list(dict.fromkeys(r.indicator for r in self.rules))

    def __len__(self):
        return len(self.rules)


def _number_arg(d: Directive) -> float:
    if len(d.args) != 1 or not isinstance(d.args[0], Struct) or d.args[0].args \
            or not isinstance(d.args[0].functor, (int, float)) or isinstance(d.args[0].functor, bool):
        raise ProgramError(f"{d.name} expects one number", d.line, d.col)
    return float(d.args[0].functor)


def _atom_arg(d: Directive) -> str:
    if len(d.args) != 1 or not isinstance(d.args[0], Struct) or d.args[0].args \
            or not isinstance(d.args[0].functor, str):
        raise ProgramError(f"{d.name} expects one atom", d.line, d.col)
    return d.args[0].functor


def _gen_directive(d: Directive) -> GenDirective:
    if len(d.args) != 2:
        raise ProgramError("wn_gen_prox_equations expects (Measure, ListOfPatternLists | auto)",
                           d.line, d.col)
    m, pats = d.args
    if not (isinstance(m, Struct) and not m.args and isinstance(m.functor, str)):
        raise ProgramError(f"invalid measure {m}", d.line, d.col)
    try:
        measure = Measure.parse(m.functor)
    except ValueError as exc:
        raise ProgramError(str(exc), d.line, d.col) from None
    if pats == Struct("auto"):
        return GenDirective(measure, None, d.line)
    try:
        lists = patterns_from_term(pats)
    except PatternError as exc:
        raise ProgramError(str(exc), d.line, d.col) from None
    return GenDirective(measure, tuple(tuple(l) for l in lists), d.line)


def _settings(directives: list[Directive]) -> tuple[dict, list[GenDirective]]:
    out: dict = {}
    gens = []
    for d in directives:
        if d.name == "lambda_cut":
            lam = _number_arg(d)
            if not 0.0 <= lam <= 1.0:
                raise ProgramError(f"lambda_cut must lie in [0, 1], got {lam}", d.line, d.col)
            out["lam"] = lam
        elif d.name == "transitivity":
            val = _atom_arg(d)
            if val in ("yes", "true", "on"):
                out["closure"] = ClosureKind.SIMILARITY
            elif val in ("no", "false", "off"):
                out["closure"] = ClosureKind.PROXIMITY
            else:
                try:
                    out["tnorm"] = TNorm.parse(val)
                except ValueError:
                    raise ProgramError(f"transitivity expects yes, no or a t-norm, got {val}",
                                       d.line, d.col) from None
                out["closure"] = ClosureKind.SIMILARITY
        elif d.name == "wn_connect":
            if d.args:
                raise ProgramError("wn_connect takes no arguments", d.line, d.col)
            out["wn_connect"] = True
        elif d.name == "wn_gen_prox_equations":
            gens.append(_gen_directive(d))
        else:
            raise ProgramError(f"unknown directive {d.name}", d.line, d.col)
    return out, gens


def _clauses_for_scan(rules) -> Iterator[tuple]:
    for r in rules:
        yield r.head, r.body


def parse_program(source: str, wordnet=None, *, lam: float | None = None, tnorm=None,
                  closure=None) -> Program:
    """Parse, validate directives, generate equations and build the relation.

    Keyword settings override the program's own directives. A WordNet handle
    is opened from ``WNDB`` when a generation directive needs one and none is given.
    """
    try:
        items = parse_items(source)
    except ParseError as exc:
        raise ProgramError(str(exc).split(": ", 1)[-1], exc.line, exc.col) from None
    rules, eqs, directives = [], [], []
    for it in items:
        if isinstance(it, RawClause):
            rules.append(GradedRule(it.head, it.body, it.degree, it.line))
        elif isinstance(it, RawEquation):
            if not 0.0 < it.degree <= 1.0:
                raise ProgramError(f"equation degree must lie in (0, 1], got {it.degree}", it.line)
            eqs.append(ProximityEquation(it.sym_a, it.sym_b, it.degree, None))
        elif isinstance(it, RawDirective):
            if it.name not in DIRECTIVES:
                raise ProgramError(f"unknown directive {it.name}", it.line, it.col)
            directives.append(Directive(it.name, it.args, it.line, it.col))
    settings, gens = _settings(directives)
    if lam is not None:
        settings["lam"] = float(lam)
    if tnorm is not None:
        settings["tnorm"] = TNorm.parse(tnorm)
    if closure is not None:
        settings["closure"] = ClosureKind(closure)
    gen_lam = settings.get("lam", 0.0)
    if not 0.0 <= gen_lam <= 1.0:
        raise ProgramError(f"lambda must lie in [0, 1], got {gen_lam}")

    if gens or settings.get("wn_connect"):
        if wordnet is None:
            from ..lexicon import WordNet
            try:
                wordnet = WordNet.open()
            except Exception as exc:
                raise ProgramError(f"program needs WordNet but none could be opened: {exc}") from None
    for g in gens:
        try:
            if g.lists is None:
                eqs.extend(auto_generate(wordnet, g.measure, list(_clauses_for_scan(rules)), gen_lam))
            else:
                eqs.extend(generate(wordnet, g.measure, [list(l) for l in g.lists], gen_lam))
        except PatternError as exc:
            raise ProgramError(str(exc), g.line) from None
    return Program(tuple(rules), tuple(eqs), tuple(directives), wordnet=wordnet, **settings)


def load_program(path, wordnet=None, **settings) -> Program:
    with open(path, encoding="utf-8") as fh:
        return parse_program(fh.read(), wordnet, **settings)


def set_lambda(program: Program, lam: float) -> Program:
    """Same program with the relation rebuilt at a new lambda-cut."""
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"lambda must lie in [0, 1], got {lam}")
    return replace(program, lam=float(lam), relation=None)


def set_tnorm(program: Program, tnorm) -> Program:
    return replace(program, tnorm=TNorm.parse(tnorm), relation=None)


def set_closure(program: Program, closure) -> Program:
    return replace(program, closure=ClosureKind(closure), relation=None)
