"""Propositional formula AST, parser, printer and evaluator.

Two surface syntaxes are accepted and may be mixed freely:

* prefix terms: ``neg(x)``, ``and(x,y)``, ``or(x,y)``, ``imp(x,y)``,
  ``iff(x,y)``, ``xor(x,y)``
* infix: ``!``, ``&``, ``|``, ``->``, ``<->``, ``^``

Infix binding, tightest first: ``!``, ``&``, ``|``, ``->``, then ``<->``
and ``^`` sharing the loosest level. ``->`` associates to the right, the
other binary operators to the left.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping

__all__ = [
    "Formula",
    "Atom",
    "Neg",
    "And",
    "Or",
    "Imp",
    "Iff",
    "Xor",
    "Interpretation",
    "FormulaSyntaxError",
    "EvaluationError",
    "KEYWORDS",
    "parse_formula",
    "print_formula",
    "subformulae",
    "atoms",
    "evaluate",
]

ATOM_RE = re.compile(r"[a-z][a-zA-Z0-9_]*\Z")


class Formula:
    """Base class of all formula nodes."""

    __slots__ = ()

    def __str__(self) -> str:
        return print_formula(self, "infix")


@dataclass(frozen=True, slots=True)
class Atom(Formula):
    name: str

    def __post_init__(self) -> None:
        if not ATOM_RE.match(self.name) or self.name in KEYWORDS:
            raise ValueError(f"invalid atom name {self.name!r}")


@dataclass(frozen=True, slots=True)
class Neg(Formula):
    child: Formula


@dataclass(frozen=True, slots=True)
class _Binary(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True, slots=True)
class And(_Binary):
    pass


@dataclass(frozen=True, slots=True)
class Or(_Binary):
    pass


@dataclass(frozen=True, slots=True)
class Imp(_Binary):
    pass


@dataclass(frozen=True, slots=True)
class Iff(_Binary):
    pass


@dataclass(frozen=True, slots=True)
class Xor(_Binary):
    pass


KEYWORDS: dict[str, type[Formula]] = {
    "neg": Neg,
    "and": And,
    "or": Or,
    "imp": Imp,
    "iff": Iff,
    "xor": Xor,
}
_TERM_NAME = {cls: name for name, cls in KEYWORDS.items()}
_INFIX_SYMBOL = {And: "&", Or: "|", Imp: "->", Iff: "<->", Xor: "^"}
# binding strength used by the infix printer; higher binds tighter
_PRECEDENCE = {Iff: 1, Xor: 1, Imp: 2, Or: 3, And: 4, Neg: 5, Atom: 6}


class FormulaSyntaxError(ValueError):
    """Raised for malformed formula text; ``offset`` is a byte offset."""

    def __init__(self, message: str, offset: int, text: str = ""):
        super().__init__(f"{message} at offset {offset}")
        self.offset = offset
        self.text = text


class EvaluationError(KeyError):
    """Lookup of an atom outside an interpretation's domain."""


class Interpretation(Mapping[str, bool]):
    """A total truth assignment over a fixed, finite set of atom names."""

    __slots__ = ("_values",)

    def __init__(self, assignment: Mapping[str, bool]):
        self._values = {name: bool(value) for name, value in assignment.items()}

    @property
    def domain(self) -> frozenset[str]:
        return frozenset(self._values)

    def __getitem__(self, name: str) -> bool:
        try:
            return self._values[name]
        except KeyError:
            raise EvaluationError(f"atom {name!r} outside interpretation domain") from None

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._values))

    def __len__(self) -> int:
        return len(self._values)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Interpretation):
            return self._values == other._values
        return NotImplemented

    def __hash__(self) -> int:
        return hash(frozenset(self._values.items()))

    def __repr__(self) -> str:
        body = ", ".join(f"{k}:{'T' if self._values[k] else 'F'}" for k in self)
        return f"Interpretation({{{body}}})"


# --------------------------------------------------------------------------
# parsing

_TOKEN_RE = re.compile(
    r"\s*(?:(?P<ident>[A-Za-z_][A-Za-z0-9_]*)|(?P<op><->|->|[!&|^(),])|(?P<bad>\S))"
)


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        if kind == "bad":
            raise FormulaSyntaxError(f"unexpected character {value!r}", _byte_offset(text, start), text)
        tokens.append((kind, value, start))
        pos = m.end()
    tokens.append(("eof", "", len(text)))
    return tokens


def _byte_offset(text: str, index: int) -> int:
    return len(text[:index].encode("utf-8"))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def error(self, message: str, token=None):
        token = token or self.tokens[self.i]
        return FormulaSyntaxError(message, _byte_offset(self.text, token[2]), self.text)

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        token = self.tokens[self.i]
        self.i += 1
        return token

    def expect(self, value: str):
        token = self.take()
        if token[1] != value or token[0] == "ident":
            if token[0] == "eof" and value == ")":
                raise self.error("unbalanced parentheses: missing ')'", token)
            raise self.error(f"expected {value!r}, found {token[1] or 'end of input'!r}", token)

    def parse(self) -> Formula:
        f = self.equivalence()
        token = self.peek()
        if token[0] != "eof":
            if token[1] == ")":
                raise self.error("unbalanced parentheses: unexpected ')'")
            raise self.error(f"unexpected token {token[1]!r}")
        return f

    # <-> and ^ share the loosest level, left associative
    def equivalence(self) -> Formula:
        left = self.implication()
        while self.peek()[1] in ("<->", "^") and self.peek()[0] == "op":
            cls = Iff if self.take()[1] == "<->" else Xor
            left = cls(left, self.implication())
        return left

    def implication(self) -> Formula:
        left = self.disjunction()
        if self.peek()[1] == "->" and self.peek()[0] == "op":
            self.take()
            return Imp(left, self.implication())
        return left

    def disjunction(self) -> Formula:
        left = self.conjunction()
        while self.peek()[1] == "|" and self.peek()[0] == "op":
            self.take()
            left = Or(left, self.conjunction())
        return left

    def conjunction(self) -> Formula:
        left = self.unary()
        while self.peek()[1] == "&" and self.peek()[0] == "op":
            self.take()
            left = And(left, self.unary())
        return left

    def unary(self) -> Formula:
        kind, value, _ = token = self.peek()
        if kind == "op" and value == "!":
            self.take()
            return Neg(self.unary())
        if kind == "op" and value == "(":
            self.take()
            f = self.equivalence()
            self.expect(")")
            return f
        if kind == "ident":
            self.take()
            if self.peek()[1] == "(" and self.peek()[0] == "op":
                return self.term(token)
            if value in KEYWORDS:
                raise self.error(f"connective {value!r} used as an atom", token)
            if not ATOM_RE.match(value):
                raise self.error(f"invalid atom name {value!r}", token)
            return Atom(value)
        if kind == "eof":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected token {value!r}")

    def term(self, head) -> Formula:
        cls = KEYWORDS.get(head[1])
        if cls is None:
            raise self.error(f"unknown connective {head[1]!r}", head)
        self.expect("(")
        first = self.equivalence()
        if cls is Neg:
            self.expect(")")
            return Neg(first)
        self.expect(",")
        second = self.equivalence()
        self.expect(")")
        return cls(first, second)


def parse_formula(text: str) -> Formula:
    """Parse ``text`` in prefix-term or infix syntax (or a mix of both).

    >>> parse_formula("a -> b & c")
    Imp(left=Atom(name='a'), right=And(left=Atom(name='b'), right=Atom(name='c')))
    """
    if not text or not text.strip():
        raise FormulaSyntaxError("empty formula", 0, text)
    return _Parser(text).parse()


# --------------------------------------------------------------------------
# printing


def print_formula(f: Formula, style: str = "prefix") -> str:
    if style == "prefix":
        return _prefix(f)
    if style == "infix":
        return _infix(f)
    raise ValueError(f"unknown style {style!r}")


def _prefix(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        return f"neg({_prefix(f.child)})"
    return f"{_TERM_NAME[type(f)]}({_prefix(f.left)},{_prefix(f.right)})"


def _infix(f: Formula) -> str:
    if isinstance(f, Atom):
        return f.name
    if isinstance(f, Neg):
        inner = _infix(f.child)
        if _PRECEDENCE[type(f.child)] < _PRECEDENCE[Neg]:
            inner = f"({inner})"
        return "!" + inner
    prec = _PRECEDENCE[type(f)]
    right_assoc = isinstance(f, Imp)
    left, right = _infix(f.left), _infix(f.right)
    lp, rp = _PRECEDENCE[type(f.left)], _PRECEDENCE[type(f.right)]
    if lp < prec or (lp == prec and right_assoc):
        left = f"({left})"
    if rp < prec or (rp == prec and not right_assoc):
        right = f"({right})"
    return f"{left} {_INFIX_SYMBOL[type(f)]} {right}"


# --------------------------------------------------------------------------
# decomposition and evaluation


def _children(f: Formula) -> tuple[Formula, ...]:
    if isinstance(f, Atom):
        return ()
    if isinstance(f, Neg):
        return (f.child,)
    return (f.left, f.right)


def subformulae(f: Formula) -> tuple[Formula, ...]:
    """``f`` and all its descendants in pre-order, first occurrence only."""
    seen: dict[Formula, None] = {}
    stack = [f]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen[node] = None
        stack.extend(reversed(_children(node)))
    return tuple(seen)


def atoms(f: Formula) -> tuple[str, ...]:
    names = set()
    stack = [f]
    while stack:
        node = stack.pop()
        if isinstance(node, Atom):
            names.add(node.name)
        else:
            stack.extend(_children(node))
    return tuple(sorted(names))


def evaluate(f: Formula, interpretation: Mapping[str, bool]) -> bool:
    """Classical truth value of ``f``.

    Raises :class:`EvaluationError` if ``f`` mentions an atom the
    interpretation does not cover.
    """
    if isinstance(f, Atom):
        try:
            return bool(interpretation[f.name])
        except KeyError:
            raise EvaluationError(f"atom {f.name!r} outside interpretation domain") from None
    if isinstance(f, Neg):
        return not evaluate(f.child, interpretation)
    left = evaluate(f.left, interpretation)
    right = evaluate(f.right, interpretation)
    if isinstance(f, And):
        return left and right
    if isinstance(f, Or):
        return left or right
    if isinstance(f, Imp):
        return (not left) or right
    if isinstance(f, Iff):
        return left == right
    return left != right
