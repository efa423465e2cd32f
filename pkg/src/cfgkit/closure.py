"""Grammar constructions for union, concatenation, star and substitution."""

from __future__ import annotations

from typing import Mapping, Sequence, Union

from .grammar import Grammar, Production, Symbol, Word, _FreshNames

Substitution = Mapping[Symbol, Grammar]


def rename_apart(grammars: Sequence[Grammar], reserved: set[str] = frozenset()) -> list[Grammar]:
    """Rename variables so no variable name is shared between grammars.

    A variable keeps its name unless that name is a variable of another
    grammar, a terminal of any grammar, or reserved; colliding names in the
    k-th grammar (1-based) get the suffix ``_k``, plus primes if needed.
    """
    var_owners: dict[str, int] = {}
    for g in grammars:
        for v in g.variables:
            var_owners[v.name] = var_owners.get(v.name, 0) + 1
    terminal_names = {t.name for g in grammars for t in g.terminals}
    clashing = {n for n, c in var_owners.items() if c > 1} | (set(var_owners) & (terminal_names | set(reserved)))

    fresh = _FreshNames(set(var_owners) | terminal_names | set(reserved))
    out = []
    for k, g in enumerate(grammars, start=1):
        mapping = {
            v: Symbol.var(fresh(f"{v.name}_{k}")) if v.name in clashing else v
            for v in sorted(g.variables)
        }
        out.append(_rename(g, mapping))
    return out


def _rename(g: Grammar, mapping: Mapping[Symbol, Symbol]) -> Grammar:
    def r(s: Symbol) -> Symbol:
        return mapping.get(s, s)

    return Grammar(
        frozenset(r(v) for v in g.variables),
        g.terminals,
        tuple(Production(r(p.head), tuple(r(s) for s in p.body)) for p in g.productions),
        r(g.axiom),
    )


def _fresh_axiom(base: str, grammars: Sequence[Grammar]) -> Symbol:
    taken = {s.name for g in grammars for s in g.symbols}
    return Symbol.var(_FreshNames(taken)(base))


def union(g1: Grammar, g2: Grammar) -> Grammar:
    a, b = rename_apart([g1, g2])
    s = _fresh_axiom("S3", [a, b])
    return Grammar(
        a.variables | b.variables | {s},
        a.terminals | b.terminals,
        a.productions + b.productions + (Production(s, (a.axiom,)), Production(s, (b.axiom,))),
        s,
    )


def concat(g1: Grammar, g2: Grammar) -> Grammar:
    a, b = rename_apart([g1, g2])
    s = _fresh_axiom("S4", [a, b])
    return Grammar(
        a.variables | b.variables | {s},
        a.terminals | b.terminals,
        a.productions + b.productions + (Production(s, (a.axiom, b.axiom)),),
        s,
    )


def star(g1: Grammar) -> Grammar:
    s = _fresh_axiom("S5", [g1])
    return Grammar(
        g1.variables | {s},
        g1.terminals,
        g1.productions + (Production(s, (g1.axiom, s)), Production(s, ())),
        s,
    )


def substitute(g: Grammar, f: Substitution) -> Grammar:
    """Grammar for ``f(L(g))``: each terminal ``a`` becomes the axiom of ``f[a]``.

    The image grammars and ``g`` are renamed apart first; ``g``'s terminals
    do not survive, the result's alphabet is the union of the images'.
    """
    missing = sorted(t.name for t in g.terminals if t not in f)
    if missing:
        raise ValueError(f"substitution has no image for: {', '.join(missing)}")
    order = sorted(g.terminals)
    images = [f[t] for t in order]
    renamed = rename_apart([g, *images])
    base, parts = renamed[0], renamed[1:]
    axiom_of = {t: part.axiom for t, part in zip(order, parts)}

    rewritten = tuple(
        Production(p.head, tuple(axiom_of[s] if s.is_terminal else s for s in p.body))
        for p in base.productions
    )
    variables = set(base.variables)
    terminals: set[Symbol] = set()
    productions: list[Production] = []
    for part in parts:
        variables |= part.variables
        terminals |= part.terminals
        productions.extend(part.productions)
    return Grammar(frozenset(variables), frozenset(terminals), tuple(productions) + rewritten, base.axiom)


def singleton_grammar(w: Word, axiom: str = "S") -> Grammar:
    """A grammar whose language is exactly ``{w}``."""
    s = Symbol.var(axiom)
    return Grammar.from_productions(s, [Production(s, tuple(w))])


def homomorphism(g: Grammar, h: Mapping[Union[Symbol, str], Word]) -> Grammar:
    images = {}
    for key, image in h.items():
        sym = key if isinstance(key, Symbol) else Symbol.term(key)
        images[sym] = singleton_grammar(image)
    return substitute(g, images)
