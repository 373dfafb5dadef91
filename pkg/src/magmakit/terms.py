"""Terms and identities over a single binary operation.

Concrete syntax: variables are lowercase identifiers, the operation is
written ``*``, which is left-associative, and parentheses group.  So
``x*y*z`` is ``(x*y)*z`` and ``x*(y*(u*v))`` is the right-nested product.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator, Mapping, Sequence, Union

__all__ = [
    "Var", "App", "Term", "Identity", "Variety", "TermSyntaxError",
    "parse_term", "parse_identity", "eval_term", "term_vars",
    "dual_term", "dual_identity", "dual_variety", "parse_variety_text",
    "format_variety",
]


class TermSyntaxError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos} in {text!r}")
        self.text = text
        self.pos = pos


@dataclass(frozen=True)
class Var:
    name: str

    def __post_init__(self):
        if not self.name:
            raise ValueError("variable name must be nonempty")

    def __str__(self):
        return self.name


@dataclass(frozen=True)
class App:
    left: "Term"
    right: "Term"

    def __str__(self):
        # the left operand never needs parentheses because * is left-associative
        rhs = str(self.right)
        if isinstance(self.right, App):
            rhs = f"({rhs})"
        return f"{self.left}*{rhs}"


Term = Union[Var, App]


def term_vars(t: Term) -> tuple[str, ...]:
    """Distinct variable names of ``t`` in left-to-right order of first occurrence."""
    seen: dict[str, None] = {}
    stack = [t]
    while stack:
        s = stack.pop()
        if isinstance(s, Var):
            seen.setdefault(s.name)
        else:
            stack.append(s.right)
            stack.append(s.left)
    return tuple(seen)


def term_depth(t: Term) -> int:
    if isinstance(t, Var):
        return 0
    return 1 + max(term_depth(t.left), term_depth(t.right))


def subterms(t: Term) -> Iterator[Term]:
    yield t
    if isinstance(t, App):
        yield from subterms(t.left)
        yield from subterms(t.right)


_TOKEN = re.compile(r"\s*(?:([a-z][a-z0-9_]*)|(\*)|(\()|(\))|(\S))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        name, star, lpar, rpar, bad = m.groups()
        start = m.start(m.lastindex)
        if bad is not None:
            raise TermSyntaxError(f"unexpected character {bad!r}", text, start)
        kind = "var" if name else "*" if star else "(" if lpar else ")"
        tokens.append((kind, name or star or lpar or rpar, start))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message):
        tok = self.peek()
        pos = tok[2] if tok else len(self.text)
        raise TermSyntaxError(message, self.text, pos)

    def term(self) -> Term:
        t = self.atom()
        while (tok := self.peek()) is not None and tok[0] == "*":
            self.i += 1
            t = App(t, self.atom())
        return t

    def atom(self) -> Term:
        tok = self.peek()
        if tok is None:
            self.error("unexpected end of input")
        kind, value, _ = tok
        if kind == "var":
            self.i += 1
            return Var(value)
        if kind == "(":
            self.i += 1
            t = self.term()
            tok = self.peek()
            if tok is None or tok[0] != ")":
                self.error("expected ')'")
            self.i += 1
            return t
        self.error(f"unexpected {value!r}")


def parse_term(text: str) -> Term:
    """Parse ``text`` into a term; raises :class:`TermSyntaxError` on bad input."""
    p = _Parser(text)
    if not p.tokens:
        raise TermSyntaxError("empty term", text, 0)
    t = p.term()
    if p.peek() is not None:
        p.error("trailing input")
    return t


@dataclass(frozen=True)
class Identity:
    lhs: Term
    rhs: Term

    def __str__(self):
        return f"{self.lhs} = {self.rhs}"

    @property
    def vars(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(term_vars(self.lhs) + term_vars(self.rhs)))


def parse_identity(text: str) -> Identity:
    parts = text.split("=")
    if len(parts) != 2:
        what = "missing '='" if len(parts) == 1 else "more than one '='"
        pos = 0 if len(parts) == 1 else len(parts[0]) + 1 + len(parts[1])
        raise TermSyntaxError(what, text, pos)
    lhs, rhs = parts
    try:
        left = parse_term(lhs)
    except TermSyntaxError as e:
        raise TermSyntaxError(str(e).split(" at position")[0], text, e.pos) from None
    try:
        right = parse_term(rhs)
    except TermSyntaxError as e:
        off = len(lhs) + 1
        raise TermSyntaxError(str(e).split(" at position")[0], text, e.pos + off) from None
    return Identity(left, right)


def eval_term(t: Term, table: Sequence[Sequence[int]], env: Mapping[str, int]) -> int:
    """Value of ``t`` in the magma given by ``table`` (anything indexable as
    ``table[a][b]``, including a :class:`~magmakit.magma.Magma`)."""
    if isinstance(t, Var):
        try:
            return env[t.name]
        except KeyError:
            raise KeyError(f"unbound variable {t.name!r}") from None
    ops = getattr(table, "table", table)
    return int(ops[eval_term(t.left, table, env)][eval_term(t.right, table, env)])


def dual_term(t: Term) -> Term:
    if isinstance(t, Var):
        return t
    return App(dual_term(t.right), dual_term(t.left))


def dual_identity(i: Identity) -> Identity:
    return Identity(dual_term(i.lhs), dual_term(i.rhs))


@dataclass(frozen=True)
class Variety:
    """A named, ordered set of identities.  An empty set means all magmas."""

    name: str
    identities: tuple[Identity, ...]
    notes: str = ""

    def __post_init__(self):
        object.__setattr__(self, "identities", tuple(self.identities))

    def __str__(self):
        return f"{self.name}: " + ", ".join(map(str, self.identities))

    @property
    def max_vars(self) -> int:
        return max((len(i.vars) for i in self.identities), default=0)

    def meet(self, other: "Variety", name: str | None = None) -> "Variety":
        """Intersection of two varieties: the union of their identity sets."""
        ids = tuple(dict.fromkeys(self.identities + other.identities))
        return Variety(name or f"{self.name}&{other.name}", ids)


def dual_variety(v: Variety, name: str | None = None) -> Variety:
    return Variety(name or f"{v.name}^d", tuple(map(dual_identity, v.identities)))


def parse_variety_text(text: str, name: str) -> Variety:
    """Read a variety file: one identity per line, ``#`` comments and blank
    lines skipped.  Syntax errors report the offending line number."""
    ids = []
    notes = []
    for lineno, line in enumerate(text.splitlines(), 1):
        s = line.strip()
        if s.startswith("#"):
            notes.append(s[1:].strip())
        if not s or s.startswith("#"):
            continue
        try:
            ids.append(parse_identity(s))
        except TermSyntaxError as e:
            raise TermSyntaxError(f"line {lineno}: {str(e).split(' at position')[0]}",
                                  s, e.pos) from None
    return Variety(name, tuple(ids), "\n".join(notes))


def format_variety(v: Variety) -> str:
    lines = [f"# {n}" for n in (v.notes or v.name).splitlines()]
    lines += [str(i) for i in v.identities]
    return "\n".join(lines) + "\n"
