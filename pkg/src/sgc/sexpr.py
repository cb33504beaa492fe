"""Position-tracking s-expression reader.

Atoms come back as :class:`Sym` (a ``str`` carrying ``line``/``col``), lists as
:class:`SList`. The reader is iterative, so hostile nesting depth cannot blow
the Python stack.
"""

from __future__ import annotations

from .errors import ParseError


class Sym(str):
    line: int = 0
    col: int = 0

    def __new__(cls, text: str, line: int = 0, col: int = 0):
        s = super().__new__(cls, text)
        s.line = line
        s.col = col
        return s


class SList(list):
    line: int = 0
    col: int = 0

    def __init__(self, items=(), line: int = 0, col: int = 0):
        super().__init__(items)
        self.line = line
        self.col = col


def decode(data) -> str:
    if isinstance(data, (bytes, bytearray)):
        try:
            return bytes(data).decode("utf-8")
        except UnicodeDecodeError as e:
            raise ParseError(f"input is not UTF-8 (byte offset {e.start})") from None
    return data


def read_all(text, lower: bool = False) -> list:
    """Parse every top-level expression in ``text``."""
    text = decode(text)
    stack: list[SList] = [SList()]
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            line, col = line + 1, 1
            i += 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if c == ";":
            while i < n and text[i] != "\n":
                i += 1
            continue
        if c == "(":
            stack.append(SList(line=line, col=col))
            i += 1
            col += 1
            continue
        if c == ")":
            if len(stack) == 1:
                raise ParseError("unexpected ')'", line, col)
            done = stack.pop()
            stack[-1].append(done)
            i += 1
            col += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "();":
            j += 1
        word = text[i:j]
        stack[-1].append(Sym(word.lower() if lower else word, line, col))
        col += j - i
        i = j
    if len(stack) > 1:
        open_ = stack[-1]
        raise ParseError("unclosed '(' (expected ')')", open_.line, open_.col)
    return list(stack[0])


def read_one(text, lower: bool = False):
    items = read_all(text, lower)
    if len(items) != 1:
        where = items[1] if len(items) > 1 else None
        raise ParseError(
            f"expected exactly one top-level expression, found {len(items)}",
            getattr(where, "line", None),
            getattr(where, "col", None),
        )
    return items[0]


def where(node) -> tuple[int | None, int | None]:
    return getattr(node, "line", None), getattr(node, "col", None)


def fail(message: str, node=None, cls=ParseError):
    line, col = where(node)
    raise cls(message, line, col)


def expect_list(node, what: str) -> SList:
    if not isinstance(node, list):
        fail(f"expected {what} list, found {node!r}", node)
    return node


def expect_sym(node, what: str) -> Sym:
    if isinstance(node, list):
        fail(f"expected {what}, found a list", node)
    return node


def head(node) -> str | None:
    if isinstance(node, list) and node and not isinstance(node[0], list):
        return node[0]
    return None
