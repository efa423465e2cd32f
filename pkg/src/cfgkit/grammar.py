"""Grammar data types and the line-oriented ``.cfg`` file format.

A grammar file looks like::

    # a^n b^n, n >= 1
    start: S
    S -> a S b | a b

Identifiers appearing on a left-hand side are variables, every other
identifier is a terminal.  ``eps`` denotes the empty body.  Two optional
directives, ``variables:`` and ``terminals:``, declare symbols that occur in
no rule (a variable without productions, an unused terminal); the serializer
emits them only when needed so that round-trips are lossless.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass, field
from typing import Iterable, Sequence

EPS_TOKEN = "eps"
IDENT_RE = re.compile(r"[A-Za-z0-9_']+")


class Kind(str, enum.Enum):
    VARIABLE = "variable"
    TERMINAL = "terminal"


@dataclass(frozen=True, order=True)
class Symbol:
    name: str
    kind: Kind

    def __post_init__(self):
        if not IDENT_RE.fullmatch(self.name):
            raise ValueError(f"invalid identifier {self.name!r}")

    @classmethod
    def var(cls, name: str) -> Symbol:
        return cls(name, Kind.VARIABLE)

    @classmethod
    def term(cls, name: str) -> Symbol:
        return cls(name, Kind.TERMINAL)

    @property
    def is_variable(self) -> bool:
        return self.kind is Kind.VARIABLE

    @property
    def is_terminal(self) -> bool:
        return self.kind is Kind.TERMINAL

    def __str__(self):
        return self.name

    def __repr__(self):
        return f"{'V' if self.is_variable else 'T'}({self.name})"


Word = tuple[Symbol, ...]


@dataclass(frozen=True)
class Production:
    """A rule ``head -> body``; an empty body is an epsilon-production."""

    head: Symbol
    body: tuple[Symbol, ...] = ()

    def __post_init__(self):
        if not self.head.is_variable:
            raise ValueError(f"production head {self.head.name!r} is not a variable")
        object.__setattr__(self, "body", tuple(self.body))

    @property
    def is_epsilon(self) -> bool:
        return not self.body

    @property
    def is_unit(self) -> bool:
        return len(self.body) == 1 and self.body[0].is_variable

    def __str__(self):
        rhs = " ".join(s.name for s in self.body) if self.body else EPS_TOKEN
        return f"{self.head.name} -> {rhs}"


@dataclass(frozen=True)
class Grammar:
    variables: frozenset[Symbol]
    terminals: frozenset[Symbol]
    productions: tuple[Production, ...]
    axiom: Symbol

    def __post_init__(self):
        object.__setattr__(self, "variables", frozenset(self.variables))
        object.__setattr__(self, "terminals", frozenset(self.terminals))
        object.__setattr__(self, "productions", tuple(self.productions))

    @classmethod
    def from_productions(
        cls,
        axiom: Symbol,
        productions: Iterable[Production],
        variables: Iterable[Symbol] = (),
        terminals: Iterable[Symbol] = (),
    ) -> Grammar:
        """Build a grammar whose symbol sets are inferred from its rules.

        Duplicate productions are dropped, keeping the first occurrence.
        """
        prods = list(dict.fromkeys(productions))
        vs = {axiom, *variables}
        ts = set(terminals)
        for p in prods:
            vs.add(p.head)
            for s in p.body:
                (vs if s.is_variable else ts).add(s)
        return cls(frozenset(vs), frozenset(ts), tuple(prods), axiom)

    def productions_of(self, head: Symbol) -> list[Production]:
        return [p for p in self.productions if p.head == head]

    @property
    def symbols(self) -> frozenset[Symbol]:
        return self.variables | self.terminals

    def same_as(self, other: Grammar) -> bool:
        """Equality up to production order."""
        return (
            self.axiom == other.axiom
            and self.variables == other.variables
            and self.terminals == other.terminals
            and len(self.productions) == len(other.productions)
            and set(self.productions) == set(other.productions)
        )

    def __str__(self):
        return serialize_grammar(self)


class GrammarError(ValueError):
    pass


class GrammarSyntaxError(GrammarError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def validate(g: Grammar) -> list[str]:
    """Return a description of every well-formedness violation of ``g``."""
    problems = []
    for v in sorted(g.variables):
        if not v.is_variable:
            problems.append(f"{v.name!r} is listed as a variable but is a terminal symbol")
    for t in sorted(g.terminals):
        if not t.is_terminal:
            problems.append(f"{t.name!r} is listed as a terminal but is a variable symbol")
    clash = {v.name for v in g.variables} & {t.name for t in g.terminals}
    for name in sorted(clash):
        problems.append(f"{name!r} is both a variable and a terminal")
    if g.axiom not in g.variables:
        problems.append(f"axiom {g.axiom.name!r} is not a variable of the grammar")
    seen = set()
    for p in g.productions:
        if p.head not in g.variables:
            problems.append(f"head {p.head.name!r} of '{p}' is not a variable of the grammar")
        for s in p.body:
            if s not in g.variables and s not in g.terminals:
                problems.append(f"symbol {s.name!r} in '{p}' is not in V or T")
        if p in seen:
            problems.append(f"duplicate production '{p}'")
        seen.add(p)
    return problems


_DIRECTIVES = ("start", "variables", "terminals")


def _tokens(text: str, lineno: int, offset: int):
    """Yield (token, column) pairs; raise on characters outside the ident alphabet."""
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch == "|":
            yield "|", offset + pos + 1
            pos += 1
            continue
        m = IDENT_RE.match(text, pos)
        if not m:
            raise GrammarSyntaxError(f"unexpected character {ch!r}", lineno, offset + pos + 1)
        yield m.group(), offset + pos + 1
        pos = m.end()


def parse_grammar(text: str) -> Grammar:
    """Parse the ``.cfg`` text format into a :class:`Grammar`."""
    axiom_name = None
    declared_vars: list[str] = []
    declared_terms: list[tuple[str, int, int]] = []
    rules: list[tuple[str, list[list[str]], int, int]] = []

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        if not line.strip():
            continue
        col0 = len(line) - len(line.lstrip()) + 1
        stripped = line.strip()

        head_part, sep, rest = stripped.partition(":")
        if sep and head_part.strip() in _DIRECTIVES and "->" not in head_part:
            directive = head_part.strip()
            rest_offset = col0 + len(head_part) + 1 - 1
            names = [(tok, col) for tok, col in _tokens(rest, lineno, rest_offset)]
            for tok, col in names:
                if tok == "|" or tok == EPS_TOKEN:
                    raise GrammarSyntaxError(f"unexpected token {tok!r}", lineno, col)
            if directive == "start":
                if axiom_name is not None:
                    raise GrammarSyntaxError("duplicate start line", lineno, col0)
                if len(names) != 1:
                    raise GrammarSyntaxError("start line needs exactly one identifier", lineno, col0)
                axiom_name = names[0][0]
            elif axiom_name is None:
                raise GrammarSyntaxError("first line must be 'start: <ident>'", lineno, col0)
            elif directive == "variables":
                declared_vars.extend(tok for tok, _ in names)
            else:
                declared_terms.extend((tok, lineno, col) for tok, col in names)
            continue

        if axiom_name is None:
            raise GrammarSyntaxError("first line must be 'start: <ident>'", lineno, col0)
        arrow = line.find("->")
        if arrow < 0:
            toks = list(_tokens(line, lineno, 0))
            col = toks[0][1] + len(toks[0][0]) if len(toks) > 1 else col0
            raise GrammarSyntaxError("expected '->'", lineno, col)
        lhs = list(_tokens(line[:arrow], lineno, 0))
        if len(lhs) != 1 or lhs[0][0] in ("|", EPS_TOKEN):
            raise GrammarSyntaxError("left-hand side must be a single identifier", lineno, col0)
        alternatives: list[list[str]] = [[]]
        last_col = arrow + 3
        for tok, col in _tokens(line[arrow + 2:], lineno, arrow + 2):
            last_col = col
            if tok == "|":
                if not alternatives[-1]:
                    raise GrammarSyntaxError("empty alternative", lineno, col)
                alternatives.append([])
            else:
                alternatives[-1].append(tok)
        if not alternatives[-1]:
            raise GrammarSyntaxError("empty alternative", lineno, last_col)
        for alt in alternatives:
            if EPS_TOKEN in alt and len(alt) > 1:
                raise GrammarSyntaxError("'eps' must stand alone in an alternative", lineno, col0)
        rules.append((lhs[0][0], alternatives, lineno, col0))

    if axiom_name is None:
        raise GrammarSyntaxError("missing 'start: <ident>' line", 1, 1)

    var_names = {name for name, *_ in rules} | set(declared_vars)
    if rules and axiom_name not in var_names:
        raise GrammarError(f"axiom {axiom_name!r} is not a left-hand side")
    var_names.add(axiom_name)
    for name, lineno, col in declared_terms:
        if name in var_names:
            raise GrammarSyntaxError(f"{name!r} declared as terminal but used as variable", lineno, col)

    def sym(name: str) -> Symbol:
        return Symbol.var(name) if name in var_names else Symbol.term(name)

    productions: list[Production] = []
    seen: set[Production] = set()
    for head, alternatives, lineno, col in rules:
        for alt in alternatives:
            body = () if alt == [EPS_TOKEN] else tuple(sym(n) for n in alt)
            p = Production(Symbol.var(head), body)
            if p in seen:
                raise GrammarSyntaxError(f"duplicate production '{p}'", lineno, col)
            seen.add(p)
            productions.append(p)

    return Grammar.from_productions(
        Symbol.var(axiom_name),
        productions,
        variables=(Symbol.var(n) for n in var_names),
        terminals=(Symbol.term(n) for n, *_ in declared_terms),
    )


def _body_key(body: Sequence[Symbol]):
    return tuple(s.name for s in body)


def serialize_grammar(g: Grammar) -> str:
    """Deterministic text form: heads sorted by name, alternatives by body."""
    lines = [f"start: {g.axiom.name}"]
    heads = {p.head for p in g.productions}
    bare_vars = sorted(v.name for v in g.variables - heads if g.productions or v != g.axiom)
    if bare_vars:
        lines.append("variables: " + " ".join(bare_vars))
    used = {s for p in g.productions for s in p.body if s.is_terminal}
    bare_terms = sorted(t.name for t in g.terminals - used)
    if bare_terms:
        lines.append("terminals: " + " ".join(bare_terms))
    for head in sorted(heads, key=lambda s: s.name):
        bodies = sorted((p.body for p in g.productions if p.head == head), key=_body_key)
        alts = [" ".join(s.name for s in b) if b else EPS_TOKEN for b in bodies]
        lines.append(f"{head.name} -> {' | '.join(alts)}")
    return "\n".join(lines) + "\n"


def load_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def parse_word(text: str, terminals: Iterable[Symbol] | None = None) -> Word:
    """Turn a command-line word into a :data:`Word`.

    ``eps`` (or the empty string) is the empty word.  Text containing
    whitespace is split on it; otherwise, when every known terminal is a
    single character (or no alphabet is given), the text is split
    character-wise, and else it is read as a single terminal.
    """
    text = text.strip()
    if text in ("", EPS_TOKEN):
        return ()
    if any(ch.isspace() for ch in text):
        names = text.split()
    elif terminals is None or all(len(t.name) == 1 for t in terminals):
        names = list(text)
    else:
        names = [text]
    return tuple(Symbol.term(n) for n in names)


def format_word(w: Sequence[Symbol]) -> str:
    if not w:
        return ""
    if all(len(s.name) == 1 for s in w):
        return "".join(s.name for s in w)
    return " ".join(s.name for s in w)


def word(text: str) -> Word:
    """Character-wise word shorthand: ``word("aabb")``."""
    return tuple(Symbol.term(ch) for ch in text)


@dataclass
class _FreshNames:
    """Hands out identifiers not already taken, appending primes on collision."""

    taken: set[str] = field(default_factory=set)

    def __call__(self, base: str) -> str:
        name = base
        while name in self.taken:
            name += "'"
        self.taken.add(name)
        return name
