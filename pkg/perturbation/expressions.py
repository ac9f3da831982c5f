"""Model expression grammar used by job files.

    expr    := name | name '(' args ')' | 'diag{' pair (',' pair)* '}'
               | 'matrix[' row (';' row)* ']'
    name    := shift | backshift | bishift | identity | zero | dual
               | translate | scale | sum
    pair    := '(' complex ',' count ')'      count := nat | 'inf'

Anything outside the catalog raises ConfigError.
"""
import re

from opMatrix.counts import ExtendedCount, INF, ONE
from opMatrix.errors import ConfigError, ModelError
from opMatrix.models import (
    UnilateralShift, BackwardShift, BilateralShift, Identity, Zero, DiagonalOp,
    FiniteMatrix, Translate, Scale, DirectSum, Dual,
)
from opMatrix.utils.math import RationalComplex

from .engine import DiagonalTuple

_NAME = re.compile(r'[a-z]+')
_COUNT = re.compile(r'^(\d+|inf)$')
_SLOT = re.compile(r'^D(\d+)$')

COUNT_MODELS = {
    'shift': (UnilateralShift, ONE),
    'backshift': (BackwardShift, ONE),
    'identity': (Identity, INF),
    'zero': (Zero, INF),
}


def _count(text):
    text = text.strip()
    if not _COUNT.match(text):
        raise ConfigError(f"expected a natural number or 'inf', got {text!r}")
    return ExtendedCount.coerce(text)


def _complex(text):
    try:
        return RationalComplex.parse(text.strip())
    except (ValueError, ZeroDivisionError) as e:
        raise ConfigError(f"bad complex literal {text!r}: {e}")


class _Parser:
    def __init__(self, text):
        self.text = text
        self.pos = 0

    def fail(self, message):
        raise ConfigError(f"{message} at position {self.pos} in {self.text!r}")

    def skip(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def expect(self, char):
        self.skip()
        if not self.text.startswith(char, self.pos):
            self.fail(f"expected {char!r}")
        self.pos += len(char)

    def peek(self, char):
        self.skip()
        return self.text.startswith(char, self.pos)

    def literal(self):
        """Raw text up to the next ',' or ')' at this level."""
        self.skip()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos] not in ',)':
            self.pos += 1
        if start == self.pos:
            self.fail("expected a literal")
        return self.text[start:self.pos]

    def enclosed(self, close):
        start = self.pos
        end = self.text.find(close, start)
        if end < 0:
            self.fail(f"missing {close!r}")
        self.pos = end + 1
        return self.text[start:end]

    def expr(self):
        self.skip()
        if self.text.startswith('diag{', self.pos):
            self.pos += len('diag{')
            return self.diagonal(self.enclosed('}'))
        if self.text.startswith('matrix[', self.pos):
            self.pos += len('matrix[')
            return self.matrix(self.enclosed(']'))
        match = _NAME.match(self.text, self.pos)
        if match is None:
            self.fail("expected a model name")
        name = match.group(0)
        self.pos = match.end()
        return self.named(name)

    def named(self, name):
        if name in COUNT_MODELS:
            cls, default = COUNT_MODELS[name]
            if not self.peek('('):
                return cls(default)
            self.expect('(')
            count = _count(self.literal())
            self.expect(')')
            return cls(count)
        if name == 'bishift':
            return BilateralShift()
        if name == 'dual':
            self.expect('(')
            inner = self.expr()
            self.expect(')')
            return Dual(inner)
        if name in ('translate', 'scale'):
            self.expect('(')
            inner = self.expr()
            self.expect(',')
            value = _complex(self.literal())
            self.expect(')')
            return Translate(inner, value) if name == 'translate' else Scale(inner, value)
        if name == 'sum':
            self.expect('(')
            first = self.expr()
            self.expect(',')
            second = self.expr()
            self.expect(')')
            return DirectSum(first, second)
        self.fail(f"unknown model {name!r}")

    def diagonal(self, body):
        pairs = re.findall(r'\(([^()]*)\)', body)
        leftover = re.sub(r'\(([^()]*)\)', '', body).replace(',', '').strip()
        if not pairs or leftover:
            self.fail("diag{...} expects (value,count) pairs")
        entries = []
        for pair in pairs:
            parts = pair.split(',')
            if len(parts) != 2:
                self.fail(f"bad diagonal pair ({pair})")
            entries.append((_complex(parts[0]), _count(parts[1])))
        return DiagonalOp(tuple(entries))

    def matrix(self, body):
        rows = [[_complex(v) for v in row.split(',')] for row in body.split(';')]
        return FiniteMatrix(tuple(tuple(row) for row in rows))

    def parse(self):
        model = self.expr()
        self.skip()
        if self.pos != len(self.text):
            self.fail("trailing input")
        return model


def parse_model(text):
    """Model for one expression, e.g. ``translate(shift, 1+i)``."""
    if not isinstance(text, str):
        raise ConfigError(f"model expressions are strings, got {text!r}")
    try:
        return _Parser(text).parse()
    except ModelError as e:
        raise ConfigError(f"{text!r} is outside the catalog: {e}")


def parse_models(models):
    """Models from a list of expressions, a ``{D1: ..., D2: ...}`` mapping or ``Dk = expr`` lines."""
    if isinstance(models, str):
        models = _slot_lines(models)
    if isinstance(models, dict):
        models = _ordered_slots(models)
    if not isinstance(models, (list, tuple)) or not models:
        raise ConfigError("models must be a non-empty list, a D1..Dn mapping or 'Dk = expr' lines")
    return [parse_model(text) for text in models]


def parse_tuple(models):
    models = parse_models(models)
    if len(models) < 2:
        raise ConfigError(f"a diagonal tuple needs at least two models, got {len(models)}")
    return DiagonalTuple(tuple(models))


def _slot_lines(text):
    slots = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.split('#', 1)[0].strip()
        if not line:
            continue
        if '=' not in line:
            raise ConfigError(f"line {number}: expected 'Dk = expr', got {line!r}")
        name, expression = (part.strip() for part in line.split('=', 1))
        if name in slots:
            raise ConfigError(f"line {number}: {name} defined twice")
        slots[name] = expression
    return slots


def _ordered_slots(mapping):
    indexed = {}
    for name, expression in mapping.items():
        match = _SLOT.match(str(name))
        if match is None:
            raise ConfigError(f"diagonal slots are named D1, D2, ...; got {name!r}")
        indexed[int(match.group(1))] = expression
    if sorted(indexed) != list(range(1, len(indexed) + 1)):
        raise ConfigError(f"diagonal slots must be D1..Dn without gaps, got {sorted(indexed)}")
    return [indexed[k] for k in sorted(indexed)]
