"""Text syntax for boolean formulas.

Grammar, loosest binding first::

    formula  := disj ( "->" formula )?        right-associative
    disj     := conj ( "|" conj )*
    conj     := unary ( "&" unary )*
    unary    := "!" unary | NAME | "(" formula ")"

The words ``not``, ``and``, ``or`` and ``implies`` are accepted as
synonyms of ``!``, ``&``, ``|`` and ``->`` and are therefore reserved.
"""

from __future__ import annotations

import re

from prefcalc.errors import PrefcalcError
from prefcalc.worlds import And, Atom, Formula, Implies, Not, Or

KEYWORDS = {"not": "!", "and": "&", "or": "|", "implies": "->"}
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_TOKEN = re.compile(r"\s*(?:(->)|([!&|()])|([A-Za-z_][A-Za-z0-9_]*))")


class FormulaError(PrefcalcError, ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


def is_name(s: str) -> bool:
    return bool(NAME_RE.match(s)) and s not in KEYWORDS


def _tokens(text: str) -> list[tuple[str, str, int]]:
    out: list[tuple[str, str, int]] = []
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos == len(text):
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise FormulaError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastindex)
        arrow, sym, name = m.groups()
        if name is not None:
            if name in KEYWORDS:
                out.append(("op", KEYWORDS[name], start))
            else:
                out.append(("name", name, start))
        else:
            out.append(("op", arrow or sym, start))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = _tokens(text)
        self.i = 0

    def peek(self) -> tuple[str, str, int]:
        return self.toks[self.i]

    def take(self, value: str | None = None) -> tuple[str, str, int]:
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            found = tok[1] or "end of input"
            raise FormulaError(f"expected {value!r}, found {found!r}", self.text, tok[2])
        self.i += 1
        return tok

    def formula(self) -> Formula:
        left = self.disj()
        if self.peek()[1] == "->":
            self.take()
            return Implies(left, self.formula())
        return left

    def disj(self) -> Formula:
        node = self.conj()
        while self.peek()[1] == "|":
            self.take()
            node = Or(node, self.conj())
        return node

    def conj(self) -> Formula:
        node = self.unary()
        while self.peek()[1] == "&":
            self.take()
            node = And(node, self.unary())
        return node

    def unary(self) -> Formula:
        kind, value, pos = self.peek()
        if value == "!" and kind == "op":
            self.take()
            return Not(self.unary())
        if value == "(" and kind == "op":
            self.take()
            node = self.formula()
            self.take(")")
            return node
        if kind == "name":
            self.take()
            return Atom(value)
        raise FormulaError(f"expected a name, '!' or '(', found {value or 'end of input'!r}", self.text, pos)


def parse_formula(text: str) -> Formula:
    p = _Parser(text)
    node = p.formula()
    kind, value, pos = p.peek()
    if kind != "end":
        raise FormulaError(f"unexpected {value!r}", text, pos)
    return node


def format_formula(f: Formula) -> str:
    """Render a tree back to fully parenthesised text."""
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Not):
        return f"!{format_formula(f.arg)}"
    if isinstance(f, And):
        return f"({format_formula(f.left)} & {format_formula(f.right)})"
    if isinstance(f, Or):
        return f"({format_formula(f.left)} | {format_formula(f.right)})"
    return f"({format_formula(f.antecedent)} -> {format_formula(f.consequent)})"
