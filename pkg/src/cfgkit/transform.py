"""Grammar reduction and Chomsky normal form conversion."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product as cartesian

from .grammar import Grammar, GrammarError, Production, Symbol, _FreshNames


class EmptyLanguageError(GrammarError):
    """The grammar's axiom derives no terminal word."""


@dataclass(frozen=True)
class ReductionReport:
    removed_nongenerating: frozenset[Symbol] = frozenset()
    removed_unreachable: frozenset[Symbol] = frozenset()
    removed_epsilon_rules: int = 0
    removed_unit_rules: int = 0

    @property
    def empty(self) -> bool:
        return not (
            self.removed_nongenerating
            or self.removed_unreachable
            or self.removed_epsilon_rules
            or self.removed_unit_rules
        )


@dataclass(frozen=True)
class CnfGrammar:
    """A grammar with only ``A -> B C`` and ``A -> a`` rules.

    Since such rules cannot produce the empty word, membership of epsilon is
    carried separately by ``generates_epsilon``.  The one grammar allowed to
    break the no-useless-symbols rule is the core of the language ``{eps}``:
    an axiom with no productions at all.
    """

    grammar: Grammar
    generates_epsilon: bool = False

    @property
    def variables(self):
        return self.grammar.variables

    @property
    def terminals(self):
        return self.grammar.terminals

    @property
    def productions(self):
        return self.grammar.productions

    @property
    def axiom(self):
        return self.grammar.axiom

    def violations(self) -> list[str]:
        out = []
        for p in self.grammar.productions:
            b = p.body
            binary = len(b) == 2 and all(s.is_variable for s in b)
            lexical = len(b) == 1 and b[0].is_terminal
            if not (binary or lexical):
                out.append(f"'{p}' is not of the form A -> B C or A -> a")
        if self.grammar.productions:
            useless = self.grammar.variables - (
                generating_variables(self.grammar) & reachable_symbols(self.grammar)
            )
            out.extend(f"useless variable {v.name!r}" for v in sorted(useless))
        return out


def generating_variables(g: Grammar) -> set[Symbol]:
    """Variables that derive at least one terminal word (least fixpoint)."""
    generating: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head in generating:
                continue
            if all(s.is_terminal or s in generating for s in p.body):
                generating.add(p.head)
                changed = True
    return generating


def reachable_symbols(g: Grammar) -> set[Symbol]:
    """Symbols occurring in some sentential form, terminals included."""
    reached = {g.axiom}
    stack = [g.axiom]
    while stack:
        head = stack.pop()
        for p in g.productions:
            if p.head != head:
                continue
            for s in p.body:
                if s not in reached:
                    reached.add(s)
                    if s.is_variable:
                        stack.append(s)
    return reached


def remove_useless(g: Grammar) -> tuple[Grammar, ReductionReport]:
    """Drop useless symbols: non-generating ones first, then unreachable ones.

    The order matters.  Filtering for reachability first can keep a symbol
    that only becomes unreachable once non-generating rules are gone.
    """
    generating = generating_variables(g)
    if g.axiom not in generating:
        raise EmptyLanguageError(f"axiom {g.axiom.name!r} derives no terminal word")

    kept = [
        p for p in g.productions
        if p.head in generating and all(s.is_terminal or s in generating for s in p.body)
    ]
    step1 = Grammar(frozenset(generating), g.terminals, tuple(kept), g.axiom)

    reached = reachable_symbols(step1)
    final = Grammar(
        frozenset(v for v in step1.variables if v in reached),
        frozenset(t for t in step1.terminals if t in reached),
        tuple(p for p in kept if p.head in reached),
        g.axiom,
    )
    report = ReductionReport(
        removed_nongenerating=frozenset(g.variables - generating),
        removed_unreachable=frozenset(step1.symbols - reached),
    )
    return final, report


def nullable_variables(g: Grammar) -> set[Symbol]:
    nullable: set[Symbol] = set()
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            if p.head not in nullable and all(s in nullable for s in p.body):
                nullable.add(p.head)
                changed = True
    return nullable


def remove_epsilon(g: Grammar) -> tuple[Grammar, bool]:
    """Eliminate epsilon-productions; returns ``(grammar, eps in L(g))``.

    Every rule is expanded over all ways of omitting nullable occurrences in
    its body.  Empty results are dropped, so the output generates exactly
    the non-empty words of ``g``.
    """
    nullable = nullable_variables(g)
    out: dict[Production, None] = {}
    for p in g.productions:
        if not p.body:
            continue
        options = [((s,), ()) if s in nullable else ((s,),) for s in p.body]
        for choice in cartesian(*options):
            body = tuple(s for part in choice for s in part)
            if body:
                out.setdefault(Production(p.head, body))
    return Grammar(g.variables, g.terminals, tuple(out), g.axiom), g.axiom in nullable


def remove_unit(g: Grammar) -> Grammar:
    """Replace unit chains ``A =>* B`` by copies of B's non-unit rules."""
    heads = list(dict.fromkeys(p.head for p in g.productions))
    out: dict[Production, None] = {}
    for a in heads:
        closure = [a]
        seen = {a}
        i = 0
        while i < len(closure):
            for p in g.productions_of(closure[i]):
                if p.is_unit and p.body[0] not in seen:
                    seen.add(p.body[0])
                    closure.append(p.body[0])
            i += 1
        for b in closure:
            for p in g.productions_of(b):
                if not p.is_unit:
                    out.setdefault(Production(a, p.body))
    return Grammar(g.variables, g.terminals, tuple(out), g.axiom)


def _lift_terminals(g: Grammar, fresh: _FreshNames) -> Grammar:
    lifted: dict[Symbol, Symbol] = {}
    rules: list[Production] = []
    extra: list[Production] = []
    for p in g.productions:
        if len(p.body) < 2:
            rules.append(p)
            continue
        body = []
        for s in p.body:
            if s.is_terminal:
                if s not in lifted:
                    lifted[s] = Symbol.var(fresh(f"_T_{s.name}"))
                    extra.append(Production(lifted[s], (s,)))
                s = lifted[s]
            body.append(s)
        rules.append(Production(p.head, tuple(body)))
    return Grammar(g.variables | set(lifted.values()), g.terminals, tuple(rules + extra), g.axiom)


def _split_bodies(g: Grammar, fresh: _FreshNames) -> Grammar:
    rules: list[Production] = []
    new_vars: set[Symbol] = set()
    counter = 0
    for p in g.productions:
        head, body = p.head, p.body
        while len(body) > 2:
            counter += 1
            rest = Symbol.var(fresh(f"_B{counter}"))
            new_vars.add(rest)
            rules.append(Production(head, (body[0], rest)))
            head, body = rest, body[1:]
        rules.append(Production(head, body))
    return Grammar(g.variables | new_vars, g.terminals, tuple(rules), g.axiom)


def to_cnf(g: Grammar) -> CnfGrammar:
    """Convert ``g`` to Chomsky normal form.

    Pipeline: epsilon removal, unit removal, useless-symbol removal, then
    terminal lifting (``_T_<a> -> a``) and body splitting (``_B<k>``).
    Raises :class:`EmptyLanguageError` when ``L(g)`` is empty.
    """
    no_eps, has_eps = remove_epsilon(g)
    no_unit = remove_unit(no_eps)
    if g.axiom not in generating_variables(no_unit):
        if has_eps:
            return CnfGrammar(Grammar(frozenset({g.axiom}), frozenset(), (), g.axiom), True)
        raise EmptyLanguageError(f"axiom {g.axiom.name!r} derives no terminal word")
    reduced, _ = remove_useless(no_unit)
    fresh = _FreshNames({s.name for s in g.symbols})
    lifted = _lift_terminals(reduced, fresh)
    return CnfGrammar(_split_bodies(lifted, fresh), has_eps)

