"""S-expression reader for SMT-LIB 2.6 scripts and solver responses"""

import re
from dataclasses import dataclass
from typing import Iterator, List, Union


class FrontendError(Exception):
    """Base class for input errors"""
    pass


class SExpressionError(FrontendError):
    pass


class Symbol(str):
    """SMT-LIB symbol or keyword (quoted symbols are stored without bars)"""
    pass


@dataclass(frozen=True)
class StringLiteral:
    """Decoded SMT-LIB string constant"""
    value: str


SExpr = Union[Symbol, StringLiteral, List["SExpr"]]

_UNICODE_ESCAPE = re.compile(r"\\u\{([0-9a-fA-F]{1,5})\}|\\u([0-9a-fA-F]{4})")


def decode_string_literal(body: str) -> str:
    """Decode the contents between the outer quotes of a string literal"""
    body = body.replace('""', '"')

    def replace(match: re.Match) -> str:
        code = int(match.group(1) or match.group(2), 16)
        if code > 0x2FFFF:
            raise SExpressionError(f"Unicode escape out of range: {match.group(0)}")
        return chr(code)

    return _UNICODE_ESCAPE.sub(replace, body)


def encode_string_literal(word: str) -> str:
    """Quote `word` as an SMT-LIB string literal"""
    out = []
    for ch in word:
        if ch == '"':
            out.append('""')
        elif ch == "\\" or not (0x20 <= ord(ch) <= 0x7E):
            out.append(f"\\u{{{ord(ch):x}}}")
        else:
            out.append(ch)
    return '"' + "".join(out) + '"'


def _tokens(text: str) -> Iterator[Union[str, StringLiteral, Symbol]]:
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch == ";":
            end = text.find("\n", i)
            i = n if end == -1 else end + 1
        elif ch in "()":
            yield ch
            i += 1
        elif ch == '"':
            j = i + 1
            while True:
                j = text.find('"', j)
                if j == -1:
                    raise SExpressionError("Unterminated string literal")
                if j + 1 < n and text[j + 1] == '"':
                    j += 2
                    continue
                break
            yield StringLiteral(decode_string_literal(text[i + 1:j]))
            i = j + 1
        elif ch == "|":
            j = text.find("|", i + 1)
            if j == -1:
                raise SExpressionError("Unterminated quoted symbol")
            yield Symbol(text[i + 1:j])
            i = j + 1
        else:
            j = i
            while j < n and not text[j].isspace() and text[j] not in '();"|':
                j += 1
            yield Symbol(text[i:j])
            i = j


def parse_sexprs(text: str) -> List[SExpr]:
    """Read every top-level s-expression of `text`"""
    stack: List[List[SExpr]] = [[]]
    for token in _tokens(text):
        if token == "(" and not isinstance(token, Symbol):
            stack.append([])
        elif token == ")" and not isinstance(token, Symbol):
            if len(stack) == 1:
                raise SExpressionError("Unbalanced ')'")
            done = stack.pop()
            stack[-1].append(done)
        else:
            stack[-1].append(token)
    if len(stack) != 1:
        raise SExpressionError("Unbalanced '(': input ended inside an expression")
    return stack[0]


def render(expr: SExpr) -> str:
    """Inverse of parse_sexprs for a single expression"""
    if isinstance(expr, StringLiteral):
        return encode_string_literal(expr.value)
    if isinstance(expr, list):
        return "(" + " ".join(render(e) for e in expr) + ")"
    if expr == "" or any(c.isspace() or c in '()";' for c in expr):
        return f"|{expr}|"
    return str(expr)
