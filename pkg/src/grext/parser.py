"""Recursive-descent parser for functor expressions.

    expr := term ('+' term)*
    term := atom ('*' atom)*
    atom := 'a' | 'a^' INT | 'passi(' INT ')' | 'const(' INT ')' | '(' expr ')'

Whitespace is ignored. Sums and products associate to the left. Inside a
product, neighbouring powers of ``a`` are merged, so ``a*a*a`` and ``a^3``
give the same tree.
"""

from __future__ import annotations

import re

from .functors import Ab, AbPow, Const, DirectSum, FunctorExpr, PassiBar, Tensor, power_of_ab


class FunctorSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        self.pos = pos
        self.text = text
        super().__init__(f"{message} at position {pos}: {text!r}")


_TOKEN = re.compile(r"\s*(?:(?P<int>\d+)|(?P<word>passi|const|a)|(?P<op>[-+*^()]))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise FunctorSyntaxError("unexpected character", text, pos)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self, kind: str, value: str | None = None):
        tok = self.peek()
        if tok[0] != kind or (value is not None and tok[1] != value):
            got = tok[1] or "end of input"
            if kind == "end":
                raise FunctorSyntaxError(f"unexpected {got!r}", self.text, tok[2])
            want = "an integer" if kind == "int" else repr(value)
            raise FunctorSyntaxError(f"expected {want}, found {got!r}", self.text, tok[2])
        self.i += 1
        return tok

    def integer(self) -> int:
        return int(self.take("int")[1])

    def expr(self) -> FunctorExpr:
        node = self.term()
        while self.peek()[:2] == ("op", "+"):
            self.i += 1
            node = DirectSum(node, self.term())
        return node

    def term(self) -> FunctorExpr:
        factors = [self.atom()]
        while self.peek()[:2] == ("op", "*"):
            self.i += 1
            factors.append(self.atom())
        merged: list[FunctorExpr] = []
        for f in factors:
            if merged and _ab_power(f) and _ab_power(merged[-1]):
                merged[-1] = power_of_ab(_ab_power(merged[-1]) + _ab_power(f))
            else:
                merged.append(f)
        node = merged[0]
        for f in merged[1:]:
            node = Tensor(node, f)
        return node

    def atom(self) -> FunctorExpr:
        kind, value, pos = self.peek()
        if kind == "word" and value == "a":
            self.i += 1
            if self.peek()[:2] == ("op", "^"):
                self.i += 1
                return power_of_ab(self.integer())
            return Ab()
        if kind == "word":
            self.i += 1
            self.take("op", "(")
            k = self.integer()
            self.take("op", ")")
            return PassiBar(k) if value == "passi" else Const(k)
        if (kind, value) == ("op", "("):
            self.i += 1
            node = self.expr()
            self.take("op", ")")
            return node
        got = value or "end of input"
        raise FunctorSyntaxError(f"expected a functor, found {got!r}", self.text, pos)


def _ab_power(e: FunctorExpr) -> int:
    if isinstance(e, Ab):
        return 1
    if isinstance(e, AbPow):
        return e.d
    return 0


def parse_functor(text: str, max_degree: int | None = None) -> FunctorExpr:
    p = _Parser(text)
    node = p.expr()
    p.take("end")
    if max_degree is not None and node.degree > max_degree:
        raise FunctorSyntaxError(f"degree {node.degree} exceeds the bound {max_degree}", text, 0)
    return node
