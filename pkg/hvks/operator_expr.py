"""
A small expression language for operators on n spin-1/2 sites.

    expr   := ['-'] term { ('+' | '-') term }
    term   := factor { '*' factor }
    factor := NUMBER | 'I' | ('sx' | 'sy' | 'sz') '(' INT ')' | '(' expr ')'

Sites are 1-based, site 1 being the leftmost tensor factor. A leading minus
is accepted so that every parsed expression can be printed back.
"""
import logging
import numpy as np
from dataclasses import dataclass
from functools import reduce
from lark import Lark, Transformer
from lark.exceptions import UnexpectedInput, UnexpectedEOF
from .exceptions import ExpressionSyntaxError, SiteOutOfRange
from .quantum_state import PAULI, site_operator

__all__ = ["PauliAtom", "Identity", "ScalarMul", "Product", "Sum",
           "parse", "evaluate", "pretty_print", "build_operator"]

logger = logging.getLogger(__name__)

_GRAMMAR = r"""
start: expr

expr: lead sum_op*

lead: term          -> pos_lead
    | "-" term      -> neg_lead

sum_op: "+" term    -> plus
      | "-" term    -> minus

term: factor ("*" factor)*

factor: NUMBER                -> number
      | "I"                   -> identity
      | PAULI "(" INT ")"     -> pauli
      | "(" expr ")"          -> group

PAULI: "sx" | "sy" | "sz"

%import common.NUMBER
%import common.INT
%import common.WS
%ignore WS
"""

_parser = Lark(_GRAMMAR, parser='lalr')


@dataclass(frozen=True)
class PauliAtom:
    axis: str
    site: int


@dataclass(frozen=True)
class Identity:
    pass


@dataclass(frozen=True)
class ScalarMul:
    coeff: float
    expr: object


@dataclass(frozen=True)
class Product:
    factors: tuple


@dataclass(frozen=True)
class Sum:
    terms: tuple


class _astBuilder(Transformer):

    def start(self, items):
        return items[0]

    def expr(self, items):
        if len(items) == 1:
            return items[0]
        return Sum(tuple(items))

    def pos_lead(self, items):
        return items[0]

    def neg_lead(self, items):
        return ScalarMul(-1.0, items[0])

    def plus(self, items):
        return items[0]

    def minus(self, items):
        return ScalarMul(-1.0, items[0])

    def term(self, items):
        if len(items) == 1:
            return items[0]
        return Product(tuple(items))

    def number(self, items):
        return ScalarMul(float(items[0]), Identity())

    def identity(self, items):
        return Identity()

    def pauli(self, items):
        return PauliAtom(str(items[0])[1], int(items[1]))

    def group(self, items):
        return items[0]


def _end_position(source):

    lines = source.split('\n')
    return len(lines), len(lines[-1]) + 1


def _check_sites(expr, n):

    if isinstance(expr, PauliAtom):
        if expr.site < 1 or expr.site > n:
            raise SiteOutOfRange("Site %i of s%s is outside 1..%i." %
                                 (expr.site, expr.axis, n))
    elif isinstance(expr, ScalarMul):
        _check_sites(expr.expr, n)
    elif isinstance(expr, Product):
        for f in expr.factors:
            _check_sites(f, n)
    elif isinstance(expr, Sum):
        for t in expr.terms:
            _check_sites(t, n)


def parse(source, n):
    """
    Parse an operator expression on n sites.

    Parameters
    ----------
    source: str
    Expression text, whitespace insensitive.

    n: int
    Number of sites, at least 1.

    Returns
    -------
    expr: PauliAtom, Identity, ScalarMul, Product or Sum
    A number c parses to ScalarMul(c, Identity()), a negated term t to
    ScalarMul(-1.0, t). Single-factor terms and single-term sums are not
    wrapped.
    """
    if n < 1:
        raise ValueError("Need at least one site, got %i." % n)
    try:
        tree = _parser.parse(source)
    except UnexpectedEOF:
        line, column = _end_position(source)
        raise ExpressionSyntaxError("Unexpected end of expression", line,
                                    column)
    except UnexpectedInput as err:
        line, column = getattr(err, 'line', -1), getattr(err, 'column', -1)
        if line is None or line < 1:
            line, column = _end_position(source)
        raise ExpressionSyntaxError("Unexpected input", line, column)

    expr = _astBuilder().transform(tree)
    _check_sites(expr, n)

    return expr


def _is_negation(expr):
    return isinstance(expr, ScalarMul) and expr.coeff == -1.0


def _print_factor(expr):

    if isinstance(expr, PauliAtom):
        return 's%s(%i)' % (expr.axis, expr.site)
    if isinstance(expr, Identity):
        return 'I'
    if isinstance(expr, ScalarMul) and isinstance(expr.expr, Identity) \
            and expr.coeff >= 0.:
        return repr(float(expr.coeff))
    return '(%s)' % _print_expr(expr)


def _print_term(expr):

    if isinstance(expr, Product):
        return '*'.join(_print_factor(f) for f in expr.factors)
    if isinstance(expr, ScalarMul) and not _is_negation(expr) and \
            not (isinstance(expr.expr, Identity) and expr.coeff >= 0.):
        # coefficients not produced by the parser
        if expr.coeff < 0.:
            return '(-%s)' % _print_term(ScalarMul(-expr.coeff, expr.expr))
        return '%r*%s' % (float(expr.coeff), _print_factor(expr.expr))
    return _print_factor(expr)


def _print_lead(expr):

    if _is_negation(expr):
        return '-' + _print_term(expr.expr)
    return _print_term(expr)


def _print_expr(expr):

    if not isinstance(expr, Sum):
        return _print_lead(expr)
    out = [_print_lead(expr.terms[0])]
    for t in expr.terms[1:]:
        if _is_negation(t):
            out.append(' - ' + _print_term(t.expr))
        else:
            out.append(' + ' + _print_term(t))
    return ''.join(out)


def pretty_print(expr):
    """
    Render an expression so that parse(pretty_print(e), n) == e for every
    e returned by parse.
    """
    return _print_expr(expr)


def evaluate(expr, n):
    """
    The 2^n x 2^n matrix of an expression. Products and sums are taken
    left to right; products need not be Hermitian.
    """
    if isinstance(expr, PauliAtom):
        return site_operator(PAULI[expr.axis], expr.site, n)
    if isinstance(expr, Identity):
        return np.eye(2**n, dtype=complex)
    if isinstance(expr, ScalarMul):
        return expr.coeff*evaluate(expr.expr, n)
    if isinstance(expr, Product):
        return reduce(np.dot, [evaluate(f, n) for f in expr.factors])
    if isinstance(expr, Sum):
        return reduce(np.add, [evaluate(t, n) for t in expr.terms])
    raise TypeError("Unknown expression node %r." % (expr,))


def build_operator(source, n):
    """Parse and evaluate in one step."""
    expr = parse(source, n)
    logger.debug("Parsed %r as %s", source, pretty_print(expr))
    return evaluate(expr, n)
