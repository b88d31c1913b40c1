"""Expression module initialization."""

from .expression_parser import (
    Token,
    Num,
    Var,
    Mu,
    Neg,
    BinOp,
    Pow,
    tokenize,
    parse,
    parse_poly,
    to_poly,
    render_expr,
)

__all__ = [
    'Token', 'Num', 'Var', 'Mu', 'Neg', 'BinOp', 'Pow',
    'tokenize', 'parse', 'parse_poly', 'to_poly', 'render_expr',
]
