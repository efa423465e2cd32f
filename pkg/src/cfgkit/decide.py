"""Membership, emptiness and finiteness, plus brute-force oracles.

The production paths are the polynomial algorithms (CYK, generating-set
fixpoint, cycle detection on the CNF variable graph).  ``oracle_nonempty``
and ``oracle_infinite`` instead search derivations up to the length bounds
implied by the pumping constant; they are slow and capped, and exist to
cross-check the fast paths.  ``enumerate_words`` is the bounded-language
oracle used throughout the tests; it works on arbitrary grammars and never
goes through CNF.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from graphlib import CycleError, TopologicalSorter
from typing import Optional

from .grammar import Grammar, GrammarError, Symbol, Word
from .transform import CnfGrammar, EmptyLanguageError, generating_variables, to_cnf
from .trees import DerivationTree

DEFAULT_ENUM_CAP = 12
DEFAULT_STEP_CAP = 1 << 10


class ForeignTerminalError(GrammarError):
    pass


class CapExceededError(ValueError):
    pass


@dataclass
class CykTable:
    """``cells[(p, l)]`` holds the variables deriving ``word[p:p+l]``."""

    grammar: CnfGrammar
    word: Word
    cells: dict[tuple[int, int], frozenset[Symbol]]

    def cell(self, start: int, length: int) -> frozenset[Symbol]:
        return self.cells.get((start, length), frozenset())

    def accepts(self) -> bool:
        if not self.word:
            return self.grammar.generates_epsilon
        return self.grammar.axiom in self.cell(0, len(self.word))

    def tree(self, var: Symbol, start: int, length: int) -> Optional[DerivationTree]:
        """A derivation tree for ``word[start:start+length]`` rooted at ``var``."""
        if var not in self.cell(start, length):
            return None
        prods = self.grammar.productions
        if length == 1:
            t = self.word[start]
            return DerivationTree(var, (DerivationTree(t),))
        for split in range(1, length):
            left = self.cell(start, split)
            right = self.cell(start + split, length - split)
            for p in prods:
                if p.head == var and len(p.body) == 2 and p.body[0] in left and p.body[1] in right:
                    return DerivationTree(var, (
                        self.tree(p.body[0], start, split),
                        self.tree(p.body[1], start + split, length - split),
                    ))
        raise AssertionError("inconsistent CYK table")


def _check_alphabet(g: CnfGrammar, w: Word) -> None:
    foreign = sorted({s.name for s in w if s not in g.terminals})
    if foreign:
        raise ForeignTerminalError(f"symbols not in the grammar's alphabet: {', '.join(foreign)}")


def cyk(g: CnfGrammar, w: Word) -> CykTable:
    _check_alphabet(g, w)
    lexical: dict[Symbol, set[Symbol]] = defaultdict(set)
    binary: dict[tuple[Symbol, Symbol], set[Symbol]] = defaultdict(set)
    for p in g.productions:
        if len(p.body) == 1:
            lexical[p.body[0]].add(p.head)
        else:
            binary[p.body].add(p.head)

    n = len(w)
    cells: dict[tuple[int, int], frozenset[Symbol]] = {}
    for i, t in enumerate(w):
        cells[(i, 1)] = frozenset(lexical.get(t, ()))
    for length in range(2, n + 1):
        for start in range(n - length + 1):
            found: set[Symbol] = set()
            for split in range(1, length):
                left = cells[(start, split)]
                right = cells[(start + split, length - split)]
                if not left or not right:
                    continue
                for b in left:
                    for c in right:
                        found |= binary.get((b, c), set())
            cells[(start, length)] = frozenset(found)
    return CykTable(g, tuple(w), cells)


def member(g: CnfGrammar, w: Word) -> bool:
    return cyk(g, w).accepts()


def parse_tree(g: CnfGrammar, w: Word) -> Optional[DerivationTree]:
    """A derivation tree of ``w`` in ``g``, or None if ``w`` is not a member.

    The empty word has no tree in a CNF grammar, so None is returned for it
    even when ``g.generates_epsilon`` holds.
    """
    table = cyk(g, w)
    if not w or not table.accepts():
        return None
    return table.tree(g.axiom, 0, len(w))


def enumerate_words(g: Grammar, max_len: int, cap: int = DEFAULT_ENUM_CAP) -> set[Word]:
    """All words of ``L(g)`` with length at most ``max_len``.

    Word sets per variable are built one length at a time.  Words of length
    ``l`` only combine shorter words, except through nullable neighbours, so
    each length is settled by a small fixpoint before moving on.  Epsilon-
    and unit-rules need no preprocessing.
    """
    if max_len > cap:
        raise CapExceededError(f"max_len {max_len} exceeds enumeration cap {cap}")
    lang: dict[Symbol, list[set[Word]]] = {
        v: [set() for _ in range(max_len + 1)] for v in g.variables
    }

    def exact(s: Symbol, length: int) -> set[Word]:
        if s.is_terminal:
            return {(s,)} if length == 1 else set()
        return lang[s][length]

    def compose(body: tuple[Symbol, ...], length: int) -> set[Word]:
        if not body:
            return {()} if length == 0 else set()
        out: set[Word] = set()
        for first in range(length + 1):
            heads = exact(body[0], first)
            if not heads:
                continue
            tails = compose(body[1:], length - first)
            if tails:
                out.update(h + t for h in heads for t in tails)
        return out

    for length in range(max_len + 1):
        changed = True
        while changed:
            changed = False
            for p in g.productions:
                new = compose(p.body, length)
                target = lang[p.head][length]
                if not new <= target:
                    target |= new
                    changed = True
    return set().union(*lang[g.axiom])


def is_empty(g: Grammar) -> bool:
    return g.axiom not in generating_variables(g)


def variable_graph(g: CnfGrammar) -> dict[Symbol, set[Symbol]]:
    """Edges ``A -> B`` and ``A -> C`` for every rule ``A -> B C``."""
    graph: dict[Symbol, set[Symbol]] = {v: set() for v in g.variables}
    for p in g.productions:
        if len(p.body) == 2:
            graph[p.head].update(p.body)
    return graph


def is_finite(g: Grammar) -> bool:
    """Whether ``L(g)`` is finite; the empty language counts as finite."""
    if is_empty(g):
        return True
    cnf = to_cnf(g)
    try:
        tuple(TopologicalSorter(variable_graph(cnf)).static_order())
    except CycleError:
        return False
    return True


def _derivable_length(g: CnfGrammar, lo: int, hi: int, step_cap: int) -> bool:
    """Search derivations for a terminal word with ``lo <= length <= hi``.

    Breadth-first over leftmost derivations, one production per step.  The
    terminals emitted so far only matter through their count, and pending
    variables only through their multiset, so a form is stored as
    ``(emitted, sorted pending variables)``.  CNF forms never shrink, which
    bounds every reachable form by ``hi`` symbols, and a word of length ``k``
    needs exactly ``2k - 1`` steps, which bounds the search depth.
    """
    max_steps = 2 * hi - 1
    if max_steps > step_cap:
        raise CapExceededError(f"derivation bound {max_steps} exceeds step cap {step_cap}")
    lexical = defaultdict(int)
    binary = defaultdict(list)
    for p in g.productions:
        if len(p.body) == 1:
            lexical[p.head] += 1
        else:
            binary[p.head].append(p.body)

    start = (0, (g.axiom,))
    seen = {start}
    frontier = deque([(start, 0)])
    while frontier:
        (emitted, pending), steps = frontier.popleft()
        if not pending:
            if lo <= emitted <= hi:
                return True
            continue
        if steps == max_steps:
            continue
        head, rest = pending[0], pending[1:]
        successors = []
        if lexical[head]:
            successors.append((emitted + 1, rest))
        for b, c in binary[head]:
            successors.append((emitted, tuple(sorted(rest + (b, c)))))
        for state in successors:
            if state[0] + len(state[1]) > hi or state in seen:
                continue
            seen.add(state)
            frontier.append((state, steps + 1))
    return False


def oracle_nonempty(g: CnfGrammar, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Search all derivations yielding words of length at most ``2**|V|``."""
    if g.generates_epsilon:
        return True
    if not g.productions:
        return False
    return _derivable_length(g, 1, 2 ** len(g.variables), step_cap)


def oracle_infinite(g: CnfGrammar, step_cap: int = DEFAULT_STEP_CAP) -> bool:
    """Look for a word ``z`` with ``2**|V| < |z| <= 2**(2|V|)``.

    Such a word can be pumped, so finding one proves the language infinite;
    conversely an infinite language has one in this window.
    """
    if not g.productions:
        return False
    n = len(g.variables)
    return _derivable_length(g, 2 ** n + 1, 2 ** (2 * n), step_cap)


def cnf_or_none(g: Grammar) -> Optional[CnfGrammar]:
    try:
        return to_cnf(g)
    except EmptyLanguageError:
        return None
