"""Derivation trees: validity, yields, derivation replay and tree surgery."""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .grammar import EPS_TOKEN, Grammar, Production, Symbol, Word

TreePath = tuple[int, ...]


class PartialTreeError(ValueError):
    """Raised when a yield is requested from a tree with variable leaves."""


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class DerivationTree:
    """A rooted ordered tree; ``label is None`` marks an epsilon leaf."""

    label: Optional[Symbol]
    children: tuple[DerivationTree, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "children", tuple(self.children))
        if self.label is None and self.children:
            raise ValueError("an epsilon node must be a leaf")
        if self.children and not self.label.is_variable:
            raise ValueError(f"internal node labeled by terminal {self.label.name!r}")
        if len(self.children) > 1 and any(c.is_epsilon for c in self.children):
            raise ValueError("an epsilon leaf must be the only child of its parent")

    @property
    def is_epsilon(self) -> bool:
        return self.label is None

    @property
    def is_leaf(self) -> bool:
        return not self.children

    @property
    def body(self) -> tuple[Symbol, ...]:
        """Labels of the children, as a production body (epsilon -> empty)."""
        return tuple(c.label for c in self.children if not c.is_epsilon)

    def subtree(self, path: TreePath) -> DerivationTree:
        node = self
        for i in path:
            node = node.children[i]
        return node

    def replace(self, path: TreePath, new: DerivationTree) -> DerivationTree:
        """Return a copy with the subtree at ``path`` swapped for ``new``."""
        if not path:
            return new
        i, rest = path[0], path[1:]
        kids = list(self.children)
        kids[i] = kids[i].replace(rest, new)
        return DerivationTree(self.label, tuple(kids))

    def leaves(self) -> Iterator[tuple[TreePath, DerivationTree]]:
        stack: list[tuple[TreePath, DerivationTree]] = [((), self)]
        while stack:
            path, node = stack.pop()
            if node.is_leaf:
                yield path, node
            else:
                for i in reversed(range(len(node.children))):
                    stack.append((path + (i,), node.children[i]))

    @property
    def is_complete(self) -> bool:
        return not any(n.label is not None and n.label.is_variable for _, n in self.leaves())

    def __str__(self):
        return render_tree(self)


def node(label: Symbol, *children: DerivationTree) -> DerivationTree:
    return DerivationTree(label, children)


def eps_leaf() -> DerivationTree:
    return DerivationTree(None)


def check_tree(t: DerivationTree, g: Grammar) -> bool:
    """Whether ``t`` is a derivation tree of ``g`` rooted at its axiom."""
    if t.label != g.axiom:
        return False
    rules = set(g.productions)
    stack = [t]
    while stack:
        n = stack.pop()
        if n.is_epsilon:
            continue
        if n.label not in g.variables and n.label not in g.terminals:
            return False
        if n.children:
            if Production(n.label, n.body) not in rules:
                return False
            stack.extend(n.children)
    return True


def yield_of(t: DerivationTree) -> Word:
    out = []
    partial = []
    for path, leaf in t.leaves():
        if leaf.is_epsilon:
            continue
        if leaf.label.is_variable:
            partial.append(f"{leaf.label.name}@{list(path)}")
        out.append(leaf.label)
    if partial:
        raise PartialTreeError("variable leaves: " + ", ".join(partial))
    return tuple(out)


def frontier(t: DerivationTree) -> tuple[Symbol, ...]:
    """Leaf labels left to right, variables included (a sentential form)."""
    return tuple(leaf.label for _, leaf in t.leaves() if not leaf.is_epsilon)


def _expand(g: Grammar, prod: Production) -> DerivationTree:
    if prod.is_epsilon:
        return DerivationTree(prod.head, (eps_leaf(),))
    return DerivationTree(prod.head, tuple(DerivationTree(s) for s in prod.body))


def tree_from_derivation(
    g: Grammar, steps: Sequence[tuple[TreePath, int]]
) -> DerivationTree:
    """Grow a tree from the axiom by expanding variable leaves.

    Each step is ``(path, index)``: the leaf at ``path`` is expanded with
    ``g.productions[index]``.  Steps addressing disjoint leaves commute.
    """
    t = DerivationTree(g.axiom)
    for path, index in steps:
        path = tuple(path)
        try:
            target = t.subtree(path)
        except IndexError:
            raise DerivationError(f"no node at path {list(path)}") from None
        if not target.is_leaf or target.is_epsilon or not target.label.is_variable:
            raise DerivationError(f"node at {list(path)} is not a variable leaf")
        prod = g.productions[index]
        if prod.head != target.label:
            raise DerivationError(
                f"production '{prod}' does not rewrite {target.label.name!r}"
            )
        t = t.replace(path, _expand(g, prod))
    return t


def leftmost_derivation(t: DerivationTree, g: Grammar) -> list[tuple[TreePath, int]]:
    """Steps that rebuild ``t`` by always expanding the leftmost variable."""
    index = {p: i for i, p in reversed(list(enumerate(g.productions)))}
    steps = []
    stack: list[tuple[TreePath, DerivationTree]] = [((), t)]
    while stack:
        path, n = stack.pop()
        if not n.children:
            continue
        try:
            steps.append((path, index[Production(n.label, n.body)]))
        except KeyError:
            raise DerivationError(f"'{n.label.name} -> ...' at {list(path)} is not a rule") from None
        for i in reversed(range(len(n.children))):
            stack.append((path + (i,), n.children[i]))
    return steps


def sentential_forms(g: Grammar, steps: Sequence[tuple[TreePath, int]]) -> list[tuple[Symbol, ...]]:
    """The sequence of sentential forms traversed by ``steps``."""
    forms = [(g.axiom,)]
    t = DerivationTree(g.axiom)
    for path, index in steps:
        t = tree_from_derivation_step(g, t, path, index)
        forms.append(frontier(t))
    return forms


def tree_from_derivation_step(g: Grammar, t: DerivationTree, path: TreePath, index: int) -> DerivationTree:
    target = t.subtree(path)
    prod = g.productions[index]
    if not target.is_leaf or target.label != prod.head:
        raise DerivationError(f"cannot apply '{prod}' at {list(path)}")
    return t.replace(tuple(path), _expand(g, prod))


def longest_path_length(t: DerivationTree) -> int:
    """Edges on the longest root-to-leaf path (0 for a single node)."""
    if not t.children:
        return 0
    return 1 + max(longest_path_length(c) for c in t.children)


def longest_path(t: DerivationTree) -> TreePath:
    """Child indices of the leftmost longest root-to-leaf path."""
    path = []
    n = t
    while n.children:
        depths = [longest_path_length(c) for c in n.children]
        i = depths.index(max(depths))
        path.append(i)
        n = n.children[i]
    return tuple(path)


def render_tree(t: DerivationTree) -> str:
    lines = []
    stack: list[tuple[int, DerivationTree]] = [(0, t)]
    while stack:
        depth, n = stack.pop()
        label = f"<{EPS_TOKEN}>" if n.is_epsilon else n.label.name
        lines.append("  " * depth + label)
        for c in reversed(n.children):
            stack.append((depth + 1, c))
    return "\n".join(lines) + "\n"


def random_tree(
    g: Grammar, rng: random.Random, max_depth: int, root: Optional[Symbol] = None
) -> DerivationTree:
    """Sample a complete derivation tree of height at most ``max_depth``.

    At each node a production is drawn uniformly among those whose body can
    still be completed within the remaining depth.
    """
    height = min_heights(g)
    root = g.axiom if root is None else root
    if height.get(root, max_depth + 1) > max_depth:
        raise ValueError(f"{root.name!r} has no complete tree of height <= {max_depth}")

    def build(sym: Symbol, budget: int) -> DerivationTree:
        if sym.is_terminal:
            return DerivationTree(sym)
        options = [
            p for p in g.productions_of(sym)
            if all(height.get(s, budget) <= budget - 1 for s in p.body if s.is_variable)
        ]
        p = rng.choice(options)
        if p.is_epsilon:
            return DerivationTree(sym, (eps_leaf(),))
        return DerivationTree(sym, tuple(build(s, budget - 1) for s in p.body))

    return build(root, max_depth)


def min_heights(g: Grammar) -> dict[Symbol, int]:
    """Height of the shortest complete tree rooted at each generating variable."""
    inf = float("inf")
    h: dict[Symbol, float] = {v: inf for v in g.variables}
    changed = True
    while changed:
        changed = False
        for p in g.productions:
            sub = [h[s] for s in p.body if s.is_variable]
            cand = 1 + (max(sub) if sub else 0)
            if cand < h[p.head]:
                h[p.head] = cand
                changed = True
    return {v: int(x) for v, x in h.items() if x != inf}
