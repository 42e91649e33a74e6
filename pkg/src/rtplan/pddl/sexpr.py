"""Tokenizer and s-expression reader that keeps source positions."""
from __future__ import annotations

from .errors import PddlSyntaxError


class Word(str):
    """A lower-cased PDDL symbol remembering where it was read."""

    line: int
    column: int

    def __new__(cls, text: str, line: int = 0, column: int = 0):
        obj = super().__new__(cls, text.lower())
        obj.line = line
        obj.column = column
        return obj


class SList(list):
    """A parenthesised list remembering the position of its opening paren."""

    def __init__(self, items=(), line: int = 0, column: int = 0):
        super().__init__(items)
        self.line = line
        self.column = column


def tokenize(text: str, filename: str | None = None):
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line += 1
            col = 1
            i += 1
        elif c.isspace():
            i += 1
            col += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, line, col
            i += 1
            col += 1
        else:
            start, start_col = i, col
            while i < n and not text[i].isspace() and text[i] not in "();":
                i += 1
                col += 1
            yield text[start:i], line, start_col


def read(text: str, filename: str | None = None) -> SList:
    """Read exactly one top-level s-expression."""
    stack: list[SList] = []
    result = None
    for tok, line, col in tokenize(text, filename):
        if result is not None:
            raise PddlSyntaxError(f"unexpected content after top-level expression: {tok!r}",
                                  line, col, filename)
        if tok == "(":
            stack.append(SList((), line, col))
        elif tok == ")":
            if not stack:
                raise PddlSyntaxError("unbalanced ')'", line, col, filename)
            done = stack.pop()
            if stack:
                stack[-1].append(done)
            else:
                result = done
        else:
            if not stack:
                raise PddlSyntaxError(f"expected '(' but found {tok!r}", line, col, filename)
            stack[-1].append(Word(tok, line, col))
    if stack:
        opened = stack[-1]
        raise PddlSyntaxError("unclosed '('", opened.line, opened.column, filename)
    if result is None:
        raise PddlSyntaxError("empty input", 1, 1, filename)
    return result
