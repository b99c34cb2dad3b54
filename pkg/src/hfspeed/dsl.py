"""Text form for family expressions.

Grammar (case-sensitive, whitespace-insensitive between tokens):

    expr    := orexpr
    orexpr  := andexpr ("or" andexpr)*
    andexpr := primary ("and" primary)*
    primary := "S" | "C" | "M" | "ALL"
             | "forb" "(" graph ("," graph)* ")"
             | "H" "(" int "," int ")"
             | "P" "(" expr ("," expr)* ")"
             | "iota" "(" graph ")"
             | "apex" "(" expr ")"
             | "co" "(" expr ")"
             | "du" "(" expr "," expr ")"
             | "join" "(" expr "," expr ")"
             | "(" expr ")"
    graph   := NAME | "g6:" <graph6 chars>

Graph literals: K13 is the claw K_{1,3} (the one aliased name); otherwise
Kn, Cn, Pn, En and mKn (m disjoint complete graphs) parse structurally, and
g6:... takes anything else.  "and" binds tighter than "or".  format_family
emits the same grammar, so parse_family(format_family(e)) reproduces e.
"""

from __future__ import annotations

import re

from .errors import ValidationError
from .families import (
    ALL,
    Apex,
    C,
    ComplementFamily,
    DisjointUnionFam,
    Family,
    Forb,
    HST,
    IntersectionFam,
    Iota,
    JoinFam,
    M,
    PartitionProduct,
    S,
    UnionFam,
    graph_from_name,
)

_TOKEN = re.compile(r"""
    \s*(
      g6:[?-~]+              # graph6 literal, printable ASCII, no spaces
    | \d*[A-Za-z][A-Za-z0-9]*  # names: atoms, keywords, graph literals (2K2)
    | \d+
    | [(),]
    )""", re.VERBOSE)

_KEYWORDS = {"forb", "H", "P", "iota", "apex", "co", "du", "join", "or", "and"}
_ATOMS = {"S": S, "C": C, "M": M, "ALL": ALL}


def _tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            if text[pos:].strip() == "":
                break
            raise ValidationError(
                f"bad character at position {pos}: {text[pos:pos+10]!r}")
        out.append((m.group(1), pos))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i][0] if self.i < len(self.toks) else None

    def next(self):
        if self.i >= len(self.toks):
            raise ValidationError(f"unexpected end of input in {self.text!r}")
        tok = self.toks[self.i]
        self.i += 1
        return tok[0]

    def expect(self, want):
        got = self.next()
        if got != want:
            raise ValidationError(
                f"expected {want!r}, got {got!r} in {self.text!r}")
        return got

    def parse(self):
        e = self.or_expr()
        if self.i != len(self.toks):
            raise ValidationError(
                f"trailing input from token {self.peek()!r} in {self.text!r}")
        return e

    def or_expr(self):
        e = self.and_expr()
        while self.peek() == "or":
            self.next()
            e = UnionFam(e, self.and_expr())
        return e

    def and_expr(self):
        e = self.primary()
        while self.peek() == "and":
            self.next()
            e = IntersectionFam(e, self.primary())
        return e

    def int_lit(self):
        tok = self.next()
        if not tok.isdigit():
            raise ValidationError(f"expected integer, got {tok!r}")
        return int(tok)

    def graph_lit(self):
        tok = self.next()
        return graph_from_name(tok)

    def primary(self):
        tok = self.next()
        if tok in _ATOMS:
            return _ATOMS[tok]
        if tok == "(":
            e = self.or_expr()
            self.expect(")")
            return e
        if tok == "forb":
            self.expect("(")
            pats = [self.graph_lit()]
            while self.peek() == ",":
                self.next()
                pats.append(self.graph_lit())
            self.expect(")")
            return Forb(pats)
        if tok == "H":
            self.expect("(")
            s = self.int_lit()
            self.expect(",")
            t = self.int_lit()
            self.expect(")")
            return HST(s, t)
        if tok == "P":
            self.expect("(")
            fs = [self.or_expr()]
            while self.peek() == ",":
                self.next()
                fs.append(self.or_expr())
            self.expect(")")
            return PartitionProduct(fs)
        if tok == "iota":
            self.expect("(")
            g = self.graph_lit()
            self.expect(")")
            return Iota(g)
        if tok in ("apex", "co"):
            self.expect("(")
            e = self.or_expr()
            self.expect(")")
            return Apex(e) if tok == "apex" else ComplementFamily(e)
        if tok in ("du", "join"):
            self.expect("(")
            a = self.or_expr()
            self.expect(",")
            b = self.or_expr()
            self.expect(")")
            return DisjointUnionFam(a, b) if tok == "du" else JoinFam(a, b)
        raise ValidationError(f"unexpected token {tok!r} in {self.text!r}")


def parse_family(text: str) -> Family:
    """Parse the family DSL; raises ValidationError with a position."""
    return _Parser(text).parse()


def format_family(f: Family) -> str:
    """Canonical text of a family expression (inverse of parse_family)."""
    if not isinstance(f, Family):
        raise ValidationError("format_family takes a family")
    return f.text()
