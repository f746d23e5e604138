import pytest

from wnflp.flp import ParseError, ProgramError, parse_program, parse_query, parse_term
from wnflp.proximity import ClosureKind, TNorm
from wnflp.terms import NIL, Struct, Var, list_items
from helpers import FAMILY


def test_family_program_shape():
    prog = parse_program(FAMILY)
    facts = [r for r in prog.rules if r.body is None]
    rules = [r for r in prog.rules if r.body is not None]
    assert len(prog.equations) == 2
    assert len(facts) == 6
    assert len(rules) == 3
    assert sum(1 for r in rules if r.body.functor == ";") == 1
    assert [r.head.functor for r in rules] == ["direct_ancestor", "ancestor", "ancestor"]


def test_empty_source():
    prog = parse_program("")
    assert prog.rules == () and prog.equations == () and prog.directives == ()
    assert parse_program("% only a comment\n").rules == ()


def test_rule_degree():
    prog = parse_program("p(X) :- q(X) with 0.9.")
    assert prog.rules[0].delta == 0.9
    assert prog.rules[0].body == Struct("q", (Var("X"),))


def test_fact_degree_and_default():
    prog = parse_program("p(a) with 0.5.\np(b).")
    assert [r.delta for r in prog.rules] == [0.5, 1.0]


@pytest.mark.parametrize("src", ["p(a) with 0.", "p(a) with 1.5."])
def test_rule_degree_range(src):
    with pytest.raises(ProgramError):
        parse_program(src)


def test_syntax_error_position():
    with pytest.raises(ProgramError) as err:
        parse_program("p(a).\nq(b :- r.\n")
    assert err.value.line == 2
    assert err.value.col is not None


def test_unknown_directive():
    with pytest.raises(ProgramError, match="unknown directive"):
        parse_program(":- frobnicate(3).")


def test_invalid_measure():
    with pytest.raises(ProgramError, match="measure"):
        parse_program(":- wn_gen_prox_equations(cosine, [[a, b]]).")


@pytest.mark.parametrize("pats", ["[[a:q:1, b]]", "[a, b]", "[[a:n:0]]", "[[f(x)]]"])
def test_malformed_patterns(pats):
    with pytest.raises(ProgramError):
        parse_program(f":- wn_gen_prox_equations(wup, {pats}).")


def test_settings_directives():
    prog = parse_program(":- lambda_cut(0.5).\n:- transitivity(product).\np(a).")
    assert prog.lam == 0.5
    assert prog.tnorm is TNorm.PRODUCT
    assert prog.closure is ClosureKind.SIMILARITY
    assert parse_program(":- transitivity(no).").closure is ClosureKind.PROXIMITY
    with pytest.raises(ProgramError):
        parse_program(":- lambda_cut(2).")
    with pytest.raises(ProgramError):
        parse_program(":- transitivity(sometimes).")


def test_keyword_settings_override_directives():
    prog = parse_program(":- lambda_cut(0.5).", lam=0.2, tnorm="luka")
    assert prog.lam == 0.2 and prog.tnorm is TNorm.LUKASIEWICZ


def test_equation_degree_range():
    with pytest.raises(ProgramError):
        parse_program("a~b=1.5.")


def test_terms():
    assert parse_term("[a, b | T]").args[1].args[1] == Var("T")
    assert list_items(parse_term("[a, b]")) == [Struct("a"), Struct("b")]
    assert parse_term("[]") == NIL
    assert parse_term("grain:n:8") == Struct(":", (Struct("grain"), Struct(":", (Struct("n"), Struct(8)))))
    assert parse_term("'New York'") == Struct("New York")
    assert parse_term("'it''s'") == Struct("it's")


def test_anonymous_variables_are_distinct():
    goal, qvars = parse_query("p(_, _, X)")
    assert goal.args[0] != goal.args[1]
    assert list(qvars) == ["X"]


def test_query_forms():
    g1, _ = parse_query("progenitor(X, isaac).")
    g2, _ = parse_query("progenitor(X, isaac)")
    assert g1 == g2
    g, _ = parse_query("p(X), (q(X) ; r(X))")
    assert g.functor == "," and g.args[1].functor == ";"


def test_parse_error_has_location():
    with pytest.raises(ParseError) as err:
        parse_term("f(a,")
    assert err.value.line == 1
