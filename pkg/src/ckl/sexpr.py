"""Minimal s-expression reader used for formulas, proofs and theory files.

Atoms come back as ``Symbol`` (bare words), ``int`` or ``str`` (double
quoted). Lists come back as ``SList`` which remembers its source offset so
callers can report positions.
"""

from .errors import ParseError


class Symbol(str):
    __slots__ = ()


class SList(list):
    def __init__(self, items=(), pos=0):
        super().__init__(items)
        self.pos = pos


_DELIMS = set("()\";")


def tokenize(text):
    i, n = 0, len(text)
    while i < n:
        c = text[i]
        if c.isspace():
            i += 1
        elif c == ";":
            while i < n and text[i] != "\n":
                i += 1
        elif c in "()":
            yield c, c, i
            i += 1
        elif c == '"':
            j = i + 1
            buf = []
            while j < n and text[j] != '"':
                if text[j] == "\\" and j + 1 < n:
                    j += 1
                buf.append(text[j])
                j += 1
            if j >= n:
                raise ParseError("unterminated string", i)
            yield "str", "".join(buf), i
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in _DELIMS:
                j += 1
            word = text[i:j]
            if word.isdigit():
                yield "int", int(word), i
            else:
                yield "sym", Symbol(word), i
            i = j


def read_all(text):
    """Parse every top-level expression in ``text``."""
    stack = [SList(pos=0)]
    for kind, value, pos in tokenize(text):
        if kind == "(":
            stack.append(SList(pos=pos))
        elif kind == ")":
            if len(stack) == 1:
                raise ParseError("unbalanced ')'", pos)
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(value)
    if len(stack) != 1:
        raise ParseError("missing ')'", stack[-1].pos)
    return list(stack[0])


def read_one(text):
    items = read_all(text)
    if len(items) != 1:
        raise ParseError(f"expected exactly one expression, found {len(items)}", 0)
    return items[0]


def dumps(expr):
    if isinstance(expr, list):
        return "(" + " ".join(dumps(e) for e in expr) + ")"
    if isinstance(expr, Symbol):
        return str(expr)
    if isinstance(expr, str):
        return '"' + expr.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return str(expr)
