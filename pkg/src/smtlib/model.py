"""Reading words out of get-value responses"""

from typing import Dict

from src.frontend.sexpr import SExpressionError, StringLiteral, parse_sexprs


class SmtlibError(Exception):
    """Base class for external solver errors"""
    pass


class ModelParseFailure(SmtlibError):
    pass


def parse_model_values(text: str) -> Dict[str, str]:
    """((var "value") ...) -> {var: value}"""
    try:
        exprs = parse_sexprs(text)
    except SExpressionError as e:
        raise ModelParseFailure(f"Malformed solver response: {e}") from e
    if len(exprs) != 1 or not isinstance(exprs[0], list):
        raise ModelParseFailure(f"Expected one get-value response, got {text!r}")
    values = {}
    for pair in exprs[0]:
        if not isinstance(pair, list) or len(pair) != 2 or isinstance(pair[0], (list, StringLiteral)):
            raise ModelParseFailure(f"Unexpected get-value entry in {text!r}")
        if not isinstance(pair[1], StringLiteral):
            raise ModelParseFailure(f"Value of {pair[0]} is not a string literal: {text!r}")
        values[str(pair[0])] = pair[1].value
    return values


def parse_model_word(text: str, var: str = None) -> str:
    """The string value in a get-value response (or a bare string literal)"""
    text = text.strip()
    if text.startswith('"'):
        try:
            exprs = parse_sexprs(text)
        except SExpressionError as e:
            raise ModelParseFailure(f"Malformed string literal: {e}") from e
        if len(exprs) != 1 or not isinstance(exprs[0], StringLiteral):
            raise ModelParseFailure(f"Expected a single string literal, got {text!r}")
        return exprs[0].value
    values = parse_model_values(text)
    if var is None:
        if len(values) != 1:
            raise ModelParseFailure(f"Response binds {len(values)} variables; name the one to read")
        return next(iter(values.values()))
    if var not in values:
        raise ModelParseFailure(f"Response has no value for {var}: {text!r}")
    return values[var]
