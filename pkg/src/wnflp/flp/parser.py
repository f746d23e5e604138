"""Tokenizer and recursive-descent parser for ``.bpl`` program text.

::

    program    := (clause | equation | directive)*
    clause     := atom (":-" body)? ("with" float)? "."
    body       := conj (";" conj)*        conj := goal ("," goal)*
    goal       := atom | "(" body ")"
    equation   := symbol "~" symbol "=" float "."
    directive  := ":-" name ("(" args ")")? "."

Terms are Prolog-like: lowercase or quoted atoms, capitalised variables,
numbers, compound terms, ``[...]`` lists and right-associative ``a:b``
(used for word patterns such as ``grain:n:8``).
"""
from __future__ import annotations

import re
from dataclasses import dataclass

from ..terms import NIL, Struct, Term, Var, make_list


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        self.line, self.col = line, col
        super().__init__(f"line {line}, column {col}: {message}")


@dataclass(frozen=True)
class Token:
    kind: str   # atom qatom var num punct end eof
    text: str
    line: int
    col: int


_TOKEN = re.compile(r"""
    (?P<ws>\s+|%[^\n]*|/\*.*?\*/)
  | (?P<num>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<var>[A-Z_][A-Za-z0-9_]*)
  | (?P<atom>[a-z][A-Za-z0-9_]*)
  | (?P<qatom>'(?:[^'\\]|\\.|'')*')
  | (?P<punct>:-|\[\]|[()\[\],;|~=:])
  | (?P<end>\.(?=\s|%|$))
""", re.VERBOSE | re.DOTALL)


def tokenize(text: str) -> list[Token]:
    out = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        if kind != "ws":
            value = m.group()
            if kind == "qatom":
                value = re.sub(r"\\(.)", r"\1", value[1:-1].replace("''", "'"))
            out.append(Token(kind, value, line, pos - line_start + 1))
        chunk = m.group()
        nl = chunk.count("\n")
        if nl:
            line += nl
            line_start = pos + chunk.rfind("\n") + 1
        pos = m.end()
    out.append(Token("eof", "", line, pos - line_start + 1))
    return out


def _number(text: str):
    return float(text) if any(c in text for c in ".eE") else int(text)


@dataclass
class RawClause:
    head: Struct
    body: Term | None
    degree: float
    line: int


@dataclass
class RawEquation:
    sym_a: object
    sym_b: object
    degree: float
    line: int


@dataclass
class RawDirective:
    name: str
    args: tuple
    line: int
    col: int


class Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0
        self._vars: dict[str, Var] = {}
        self._anon = 0

    # -- token helpers --------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def peek(self, k=1) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def advance(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def error(self, msg, tok=None) -> ParseError:
        tok = tok or self.tok
        return ParseError(msg, tok.line, tok.col)

    def expect(self, text: str, kind="punct") -> Token:
        if self.tok.kind != kind or (text is not None and self.tok.text != text):
            want = text if text is not None else kind
            got = self.tok.text or self.tok.kind
            raise self.error(f"expected {want!r}, found {got!r}")
        return self.advance()

    def at(self, text, kind="punct") -> bool:
        return self.tok.kind == kind and self.tok.text == text

    # -- program ---------------------------------------------------------

    def program(self):
        items = []
        while self.tok.kind != "eof":
            self._vars, self._anon = {}, 0
            items.append(self.item())
        return items

    def item(self):
        start = self.tok
        if self.at(":-"):
            self.advance()
            return self.directive(start)
        if self._is_equation():
            a = self.symbol()
            self.expect("~")
            b = self.symbol()
            self.expect("=")
            deg = self.expect(None, "num")
            self.expect(".", "end")
            return RawEquation(a, b, float(deg.text), start.line)
        head = self.term()
        if isinstance(head, Var) or not isinstance(head, Struct) or isinstance(head.functor, (int, float)):
            raise self.error("clause head must be an atom", start)
        body = None
        if self.at(":-"):
            self.advance()
            body = self.body()
        degree = 1.0
        if self.tok.kind == "atom" and self.tok.text == "with":
            self.advance()
            deg_tok = self.expect(None, "num")
            degree = float(deg_tok.text)
            if not 0.0 < degree <= 1.0:
                raise self.error(f"rule degree must lie in (0, 1], got {degree}", deg_tok)
        self.expect(".", "end")
        return RawClause(head, body, degree, start.line)

    def _is_equation(self) -> bool:
        return self.tok.kind in ("atom", "qatom", "num") and self.peek().kind == "punct" \
            and self.peek().text == "~"

    def symbol(self):
        t = self.advance()
        if t.kind in ("atom", "qatom"):
            return t.text
        if t.kind == "num":
            return _number(t.text)
        raise self.error(f"expected a symbol, found {t.text!r}", t)

    def directive(self, start: Token) -> RawDirective:
        name_tok = self.tok
        if name_tok.kind != "atom":
            raise self.error("expected a directive name")
        self.advance()
        args: tuple = ()
        if self.at("("):
            self.advance()
            args = tuple(self.arglist())
            self.expect(")")
        self.expect(".", "end")
        return RawDirective(name_tok.text, args, start.line, start.col)

    # -- bodies -----------------------------------------------------------

    def body(self) -> Term:
        left = self.conj()
        while self.at(";"):
            self.advance()
            left = Struct(";", (left, self.conj()))
        return left

    def conj(self) -> Term:
        left = self.goal()
        while self.at(","):
            self.advance()
            left = Struct(",", (left, self.goal()))
        return left

    def goal(self) -> Term:
        if self.at("("):
            self.advance()
            g = self.body()
            self.expect(")")
            return g
        start = self.tok
        g = self.term()
        if not isinstance(g, Struct) or isinstance(g.functor, (int, float)):
            raise self.error("goal must be an atom", start)
        return g

    # -- terms -------------------------------------------------------------

    def term(self) -> Term:
        left = self.primary()
        if self.at(":"):
            self.advance()
            return Struct(":", (left, self.term()))
        return left

    def arglist(self) -> list[Term]:
        args = [self.term()]
        while self.at(","):
            self.advance()
            args.append(self.term())
        return args

    def primary(self) -> Term:
        t = self.tok
        if t.kind == "var":
            self.advance()
            if t.text == "_":
                self._anon += 1
                return Var(f"_G{self._anon}")
            return self._vars.setdefault(t.text, Var(t.text))
        if t.kind == "num":
            self.advance()
            return Struct(_number(t.text))
        if t.kind in ("atom", "qatom"):
            self.advance()
            if self.at("("):
                self.advance()
                args = self.arglist()
                self.expect(")")
                return Struct(t.text, tuple(args))
            return Struct(t.text)
        if self.at("[]"):
            self.advance()
            return NIL
        if self.at("["):
            self.advance()
            if self.at("]"):
                self.advance()
                return NIL
            items = self.arglist()
            tail = NIL
            if self.at("|"):
                self.advance()
                tail = self.term()
            self.expect("]")
            return make_list(items, tail)
        if self.at("("):
            self.advance()
            inner = self.term()
            self.expect(")")
            return inner
        raise self.error(f"unexpected {t.text or t.kind!r}")


def parse_items(text: str):
    return Parser(text).program()


def parse_query(text: str) -> tuple[Term, dict[str, Var]]:
    """Parse a goal such as ``progenitor(X, isaac).`` (the final dot is optional)."""
    text = text.strip()
    if not text.endswith("."):
        text += "."
    p = Parser(text)
    if p.at(":-"):
        p.advance()
    goal = p.body()
    p.expect(".", "end")
    if p.tok.kind != "eof":
        raise p.error("trailing input after query")
    return goal, dict(p._vars)


def parse_term(text: str) -> Term:
    p = Parser(text)
    t = p.term()
    if p.tok.kind != "eof":
        raise p.error("trailing input after term")
    return t
