"""Operator-expression language.

Grammar (atoms separated by whitespace)::

    atom := name ['+'] '(' mode [',' spin] ')' ['@' time]
    name := c | psi | a | A | alpha
    spin := up | down

``c``, ``psi`` and ``a`` are bare fields, ``A`` is a formal field of the
abstract model, ``alpha`` a quasi operator (``alpha+`` creates). Modes are
1-based in the text and 0-based in the syntax tree.
"""
import logging
import re
from dataclasses import dataclass, field
from typing import Iterator, List, Optional, Tuple

from .algebra.operators import OperatorBase, OperatorSymbol
from .errors import ParseError

logger = logging.getLogger(__name__)

FIELD_NAMES = ("c", "psi", "a", "A")
QUASI_NAMES = ("alpha",)
NAMES = FIELD_NAMES + QUASI_NAMES
SPINS = ("up", "down")

_TOKEN_SPEC = [
    ("NUMBER", r"[+-]?(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"),
    ("NAME", r"[A-Za-z_][A-Za-z_0-9]*"),
    ("PLUS", r"\+"),
    ("LPAREN", r"\("),
    ("RPAREN", r"\)"),
    ("COMMA", r","),
    ("AT", r"@"),
    ("NEWLINE", r"\n"),
    ("SKIP", r"[ \t\r]+"),
    ("MISMATCH", r"."),
]
_TOKEN_RE = re.compile("|".join(f"(?P<{name}>{pattern})" for name, pattern in _TOKEN_SPEC))


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int
    # Whitespace preceded the token
    spaced: bool = False


@dataclass(frozen=True)
class Atom:
    """One operator in an expression.

    Args:
        name: One of c, psi, a, A, alpha
        dagger: True for the creation operator
        mode: 0-based mode (k for spin atoms)
        spin: ``up`` or ``down`` for spin-momentum atoms
        time: Optional time label
    """
    name: str
    dagger: bool
    mode: int
    spin: Optional[str] = None
    time: Optional[float] = None
    line: int = field(default=0, compare=False)
    column: int = field(default=0, compare=False)

    def __str__(self) -> str:
        text = f"{self.name}{'+' if self.dagger else ''}({self.mode + 1}"
        if self.spin:
            text += f",{self.spin}"
        text += ")"
        if self.time is not None:
            text += f"@{self.time!r}"
        return text

    def to_symbol(self) -> OperatorSymbol:
        """Engine symbol; spin atoms map (k, spin) to mode 2k + [spin == down]."""
        mode = 2 * self.mode + (self.spin == "down") if self.spin else self.mode
        if self.name in QUASI_NAMES:
            base = OperatorBase.QUASI_CREATE if self.dagger else OperatorBase.QUASI_ANNIHILATE
        else:
            base = OperatorBase.FIELD_CREATE if self.dagger else OperatorBase.FIELD_ANNIHILATE
        return OperatorSymbol(base, mode, self.time, self.name)


@dataclass(frozen=True)
class OperatorExpr:
    """An operator product as written."""
    atoms: Tuple[Atom, ...]

    def __str__(self) -> str:
        return print_expr(self)

    def __len__(self) -> int:
        return len(self.atoms)

    def __iter__(self) -> Iterator[Atom]:
        return iter(self.atoms)

    @property
    def has_times(self) -> bool:
        return any(atom.time is not None for atom in self.atoms)

    def to_symbols(self) -> Tuple[OperatorSymbol, ...]:
        return tuple(atom.to_symbol() for atom in self.atoms)


def tokenize(text: str) -> List[Token]:
    tokens = []
    line, line_start = 1, 0
    spaced = True
    for match in _TOKEN_RE.finditer(text):
        kind = match.lastgroup
        column = match.start() - line_start + 1
        if kind == "NEWLINE":
            line, line_start = line + 1, match.end()
            spaced = True
        elif kind == "SKIP":
            spaced = True
        elif kind == "MISMATCH":
            raise ParseError(f"unexpected character {match.group()!r}", line, column)
        else:
            tokens.append(Token(kind, match.group(), line, column, spaced))
            spaced = False
    tokens.append(Token("END", "", line, len(text) - line_start + 1, spaced))
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.index = 0

    def peek(self) -> Token:
        return self.tokens[self.index]

    def take(self, kind: str, what: str) -> Token:
        token = self.peek()
        if token.kind != kind:
            found = repr(token.text) if token.text else "end of input"
            raise ParseError(f"expected {what}, found {found}", token.line, token.column)
        self.index += 1
        return token

    def parse(self) -> OperatorExpr:
        atoms = []
        while self.peek().kind != "END":
            if atoms and not self.peek().spaced:
                token = self.peek()
                raise ParseError("operators must be separated by whitespace", token.line, token.column)
            atoms.append(self.atom())
        return OperatorExpr(tuple(atoms))

    def atom(self) -> Atom:
        name = self.take("NAME", "operator name")
        if name.text not in NAMES:
            raise ParseError(f"unknown operator name {name.text!r}; expected one of {', '.join(NAMES)}",
                             name.line, name.column)
        dagger = False
        if self.peek().kind == "PLUS":
            self.index += 1
            dagger = True
        self.take("LPAREN", "'('")
        mode_token = self.take("NUMBER", "mode number")
        if not mode_token.text.isdigit() or int(mode_token.text) < 1:
            raise ParseError(f"mode must be a positive integer, got {mode_token.text!r}",
                             mode_token.line, mode_token.column)
        spin = None
        if self.peek().kind == "COMMA":
            self.index += 1
            spin_token = self.take("NAME", "spin")
            if spin_token.text not in SPINS:
                raise ParseError(f"spin must be 'up' or 'down', got {spin_token.text!r}",
                                 spin_token.line, spin_token.column)
            if name.text in QUASI_NAMES:
                raise ParseError("quasi operators take no spin", spin_token.line, spin_token.column)
            spin = spin_token.text
        self.take("RPAREN", "')'")
        time = None
        if self.peek().kind == "AT":
            self.index += 1
            time_token = self.peek()
            if time_token.kind != "NUMBER":
                raise ParseError(f"malformed time {time_token.text!r}", time_token.line, time_token.column)
            self.index += 1
            time = float(time_token.text)
        return Atom(name.text, dagger, int(mode_token.text) - 1, spin, time, name.line, name.column)


def parse(text: str) -> OperatorExpr:
    """Parse an operator product.

    Raises:
        ParseError: with the line and column of the first offending token
    """
    expr = _Parser(text).parse()
    logger.debug(f"Parsed {len(expr)} operators from {text!r}")
    return expr


def print_expr(expr: OperatorExpr) -> str:
    return " ".join(str(atom) for atom in expr.atoms)


def parse_symbols(text: str) -> Tuple[OperatorSymbol, ...]:
    return parse(text).to_symbols()


def format_symbol(symbol: OperatorSymbol) -> str:
    """Render an engine symbol in expression syntax.

    Formal components of an abstract field print as ``A(1)^+`` / ``A(1)^-``.
    """
    if symbol.parent is not None:
        dagger = "+" if symbol.parent.is_creation_type else ""
        text = f"{symbol.species}{dagger}({symbol.mode + 1})^{'+' if symbol.sign_class > 0 else '-'}"
    else:
        dagger = "+" if symbol.is_creation_type else ""
        text = f"{symbol.species}{dagger}({symbol.mode + 1})"
    if symbol.time is not None:
        text += f"@{symbol.time!r}"
    return text
