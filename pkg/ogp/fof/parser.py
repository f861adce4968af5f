"""
Recursive-descent parser for the FOF subset.

Operator precedence, tightest first: ``~`` and quantifiers, ``&``, ``|``,
then ``=>`` / ``<=>``. Implications do not chain without parentheses.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import List, Optional, Tuple

from ..errors import FofSemanticError, FofSyntaxError
from .syntax import (
    ROLES, And, AnnotatedFormula, Atom, Equality, Exists, FofDocument, Forall,
    Formula, Function, Iff, Implies, Not, Or, Span, Term, Variable,
)

TOKEN_SPEC = [
    ('NEWLINE', r'\n'),
    ('SKIP', r'[ \t\r\f\v]+'),
    ('COMMENT', r'%[^\n]*'),
    ('IFF', r'<=>'),
    ('IMPLIES', r'=>'),
    ('NEQ', r'!='),
    ('EQ', r'='),
    ('LOWER', r'[a-z][A-Za-z0-9_]*'),
    ('UPPER', r'[A-Z][A-Za-z0-9_]*'),
    ('QUOTED', r"'(?:[^'\\\n]|\\.)*'"),
    ('PUNCT', r'[()\[\],.:!?~&|]'),
    ('MISMATCH', r'.'),
]
TOKEN_RE = re.compile('|'.join(f'(?P<{name}>{pattern})' for name, pattern in TOKEN_SPEC))

_DESCRIPTIONS = {
    'LOWER': 'a lowercase identifier',
    'UPPER': 'a variable',
    'QUOTED': 'a quoted path',
    'EOF': 'end of input',
}


@dataclass(frozen=True)
class Token:
    kind: str
    value: str
    line: int
    column: int

    def describe(self) -> str:
        if self.kind == 'EOF':
            return 'end of input'
        return repr(self.value)


def tokenize(text: str, source: Optional[str] = None) -> List[Token]:
    tokens = []
    line = 1
    line_start = 0
    for match in TOKEN_RE.finditer(text):
        kind = match.lastgroup
        value = match.group()
        column = match.start() - line_start + 1
        if kind == 'NEWLINE':
            line += 1
            line_start = match.end()
            continue
        if kind in ('SKIP', 'COMMENT'):
            continue
        if kind == 'MISMATCH':
            if value == "'":
                raise FofSyntaxError('unterminated quoted string', line, column, source)
            raise FofSyntaxError(f'unexpected character {value!r}', line, column, source)
        if kind in ('IFF', 'IMPLIES', 'NEQ', 'EQ'):
            kind = 'PUNCT'
        tokens.append(Token(kind, value, line, column))
    tokens.append(Token('EOF', '', line, len(text) - line_start + 1))
    return tokens


class FofParser:
    """Parses one FOF text into a :class:`FofDocument`."""

    def __init__(self, text: str, source: Optional[str] = None, allow_conjecture: bool = True):
        self.source = source
        self.allow_conjecture = allow_conjecture
        self.tokens = tokenize(text, source)
        self.pos = 0

    # -- token helpers ---------------------------------------------------

    def peek(self) -> Token:
        return self.tokens[self.pos]

    def advance(self) -> Token:
        token = self.tokens[self.pos]
        if token.kind != 'EOF':
            self.pos += 1
        return token

    def at(self, value: str) -> bool:
        token = self.peek()
        return token.kind == 'PUNCT' and token.value == value

    def error(self, message: str, token: Optional[Token] = None) -> FofSyntaxError:
        token = token or self.peek()
        return FofSyntaxError(message, token.line, token.column, self.source)

    def expect(self, value: str) -> Token:
        token = self.peek()
        if token.kind == 'PUNCT' and token.value == value:
            return self.advance()
        raise self.error(f"expected '{value}' but found {token.describe()}")

    def expect_kind(self, kind: str) -> Token:
        token = self.peek()
        if token.kind == kind:
            return self.advance()
        raise self.error(f'expected {_DESCRIPTIONS[kind]} but found {token.describe()}')

    # -- document --------------------------------------------------------

    def parse_document(self) -> FofDocument:
        includes: List[str] = []
        formulas: List[AnnotatedFormula] = []
        names = set()
        conjecture: Optional[AnnotatedFormula] = None

        while self.peek().kind != 'EOF':
            token = self.peek()
            if token.kind == 'LOWER' and token.value == 'include':
                includes.append(self.parse_include())
            elif token.kind == 'LOWER' and token.value == 'fof':
                annotated = self.parse_annotated()
                if annotated.name in names:
                    raise FofSemanticError(f'duplicate formula name {annotated.name!r}',
                                           annotated.name, annotated.span.line, annotated.span.column)
                if annotated.role == 'conjecture':
                    if not self.allow_conjecture:
                        raise FofSemanticError('conjectures are not allowed in axiom files',
                                               annotated.name, annotated.span.line, annotated.span.column)
                    if conjecture is not None:
                        raise FofSemanticError(
                            f'more than one conjecture ({conjecture.name!r} and {annotated.name!r})',
                            annotated.name, annotated.span.line, annotated.span.column)
                    conjecture = annotated
                names.add(annotated.name)
                formulas.append(annotated)
            else:
                raise self.error(f"expected 'fof' or 'include' but found {token.describe()}")

        return FofDocument(tuple(includes), tuple(formulas))

    def parse_include(self) -> str:
        self.advance()
        self.expect('(')
        token = self.expect_kind('QUOTED')
        path = token.value[1:-1].replace("\\'", "'").replace('\\\\', '\\')
        if not path or path.startswith('/') or '\\' in path or re.match(r'[A-Za-z]:', path):
            raise self.error(f'include path must be relative with forward slashes: {path!r}', token)
        self.expect(')')
        self.expect('.')
        return path

    def parse_annotated(self) -> AnnotatedFormula:
        start = self.advance()
        self.expect('(')
        name = self.expect_kind('LOWER').value
        self.expect(',')
        role_token = self.expect_kind('LOWER')
        if role_token.value not in ROLES:
            raise FofSemanticError(
                f"unknown role {role_token.value!r} (expected one of {', '.join(ROLES)})",
                name, role_token.line, role_token.column)
        self.expect(',')
        formula = self.parse_formula()
        self.expect(')')
        self.expect('.')
        return AnnotatedFormula(name, role_token.value, formula, Span(start.line, start.column))

    # -- formulas --------------------------------------------------------

    def parse_formula(self) -> Formula:
        lhs = self.parse_disjunction()
        if self.at('=>') or self.at('<=>'):
            operator = self.advance().value
            rhs = self.parse_disjunction()
            if self.at('=>') or self.at('<=>'):
                raise self.error(f"'{self.peek().value}' cannot follow '{operator}' without parentheses")
            return Implies(lhs, rhs) if operator == '=>' else Iff(lhs, rhs)
        return lhs

    def parse_disjunction(self) -> Formula:
        operands = [self.parse_conjunction()]
        while self.at('|'):
            self.advance()
            operands.append(self.parse_conjunction())
        return operands[0] if len(operands) == 1 else Or(tuple(operands))

    def parse_conjunction(self) -> Formula:
        operands = [self.parse_unary()]
        while self.at('&'):
            self.advance()
            operands.append(self.parse_unary())
        return operands[0] if len(operands) == 1 else And(tuple(operands))

    def parse_unary(self) -> Formula:
        if self.at('~'):
            self.advance()
            return Not(self.parse_unary())
        if self.at('!') or self.at('?'):
            return self.parse_quantified()
        if self.at('('):
            self.advance()
            formula = self.parse_formula()
            self.expect(')')
            return formula
        return self.parse_atomic()

    def parse_quantified(self) -> Formula:
        quantifier = self.advance()
        self.expect('[')
        variables = [self.expect_kind('UPPER')]
        while self.at(','):
            self.advance()
            variables.append(self.expect_kind('UPPER'))
        self.expect(']')
        self.expect(':')
        names: Tuple[str, ...] = tuple(v.value for v in variables)
        seen = set()
        for token in variables:
            if token.value in seen:
                raise self.error(f'duplicate quantified variable {token.value}', token)
            seen.add(token.value)
        body = self.parse_unary()
        return Forall(names, body) if quantifier.value == '!' else Exists(names, body)

    def parse_atomic(self) -> Formula:
        token = self.peek()
        if token.kind == 'UPPER':
            lhs: Term = Variable(self.advance().value)
            if not (self.at('=') or self.at('!=')):
                raise self.error(f"expected '=' or '!=' after variable {token.value}")
            return self.parse_equality(lhs)
        if token.kind != 'LOWER':
            raise self.error(f'expected a formula but found {token.describe()}')
        symbol = self.advance().value
        args = self.parse_arguments()
        if self.at('=') or self.at('!='):
            return self.parse_equality(Function(symbol, args))
        return Atom(symbol, args)

    def parse_equality(self, lhs: Term) -> Equality:
        negated = self.advance().value == '!='
        return Equality(lhs, self.parse_term(), negated)

    def parse_arguments(self) -> Tuple[Term, ...]:
        if not self.at('('):
            return ()
        self.advance()
        args = [self.parse_term()]
        while self.at(','):
            self.advance()
            args.append(self.parse_term())
        self.expect(')')
        return tuple(args)

    def parse_term(self) -> Term:
        token = self.peek()
        if token.kind == 'UPPER':
            return Variable(self.advance().value)
        if token.kind == 'LOWER':
            symbol = self.advance().value
            return Function(symbol, self.parse_arguments())
        raise self.error(f'expected a term but found {token.describe()}')


def parse_fof(text: str, source: Optional[str] = None, allow_conjecture: bool = True) -> FofDocument:
    """
    Parse FOF text.

    Args:
        text: ``include('path').`` and ``fof(name, role, formula).`` items
        source: file name used in error messages
        allow_conjecture: False for ``.ax`` axiom files

    Returns:
        FofDocument with a source span on every annotated formula
    """
    return FofParser(text, source, allow_conjecture).parse_document()
