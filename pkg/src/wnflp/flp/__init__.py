"""Fuzzy logic programs: parsing, weak SLD resolution and translation."""
from .engine import Answer, EngineError, Solver, Step, replay_degree, solve
from .parser import ParseError, parse_query, parse_term
from .program import (GradedRule, Program, ProgramError, load_program, parse_program,
                      set_closure, set_lambda, set_tnorm)
from .translate import ExpandedClause, TranslatedSolver, emit_tpl, solve_translated, translate

__all__ = [
    "Answer", "EngineError", "ExpandedClause", "GradedRule", "ParseError", "Program",
    "ProgramError", "Solver", "Step", "TranslatedSolver", "emit_tpl", "load_program",
    "parse_program", "parse_query", "parse_term", "replay_degree", "set_closure",
    "set_lambda", "set_tnorm", "solve", "solve_translated", "translate",
]
