"""Executable pumping lemma: constants, decompositions, refutations."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional

from .decide import member, parse_tree
from .grammar import Symbol, Word, format_word, word
from .transform import CnfGrammar
from .trees import DerivationTree, longest_path, yield_of


class NotAMemberError(ValueError):
    pass


class WordTooShortError(ValueError):
    pass


@dataclass(frozen=True)
class PumpDecomposition:
    u: Word
    v: Word
    w: Word
    x: Word
    y: Word
    constant_n: int

    @property
    def word(self) -> Word:
        return self.u + self.v + self.w + self.x + self.y

    def violations(self) -> list[str]:
        out = []
        if not self.v + self.x:
            out.append("|vx| = 0")
        if len(self.v + self.w + self.x) > self.constant_n:
            out.append(f"|vwx| = {len(self.v + self.w + self.x)} > {self.constant_n}")
        return out

    def __str__(self):
        parts = " ".join(f"{k}={format_word(getattr(self, k))}" for k in "uvwxy")
        return f"N={self.constant_n} {parts}"


def pumping_constant(g: CnfGrammar) -> int:
    return 2 ** len(g.variables)


def pump(d: PumpDecomposition, i: int) -> Word:
    if i < 0:
        raise ValueError("pumping exponent must be non-negative")
    return d.u + d.v * i + d.w + d.x * i + d.y


def _spans(t: DerivationTree, path: tuple[int, ...]) -> list[tuple[int, int]]:
    """(start, end) offsets in the yield of each node along ``path``."""
    spans = [(0, len(yield_of(t)))]
    node, offset = t, 0
    for i in path:
        offset += sum(len(yield_of(c)) for c in node.children[:i])
        node = node.children[i]
        spans.append((offset, offset + len(yield_of(node))))
    return spans


def decompose_tree(t: DerivationTree, n_vars: int) -> PumpDecomposition:
    """Read ``u v w x y`` off a repeated variable on a longest path of ``t``.

    Only the lowest ``n_vars + 1`` variables of the path are scanned, bottom
    up, so the upper occurrence roots a subtree of height at most
    ``n_vars + 1`` and ``|vwx| <= 2**n_vars`` holds.
    """
    z = yield_of(t)
    path = longest_path(t)
    labels = [t.subtree(path[:k]).label for k in range(len(path) + 1)]
    spans = _spans(t, path)
    var_depths = [k for k, s in enumerate(labels) if s is not None and s.is_variable]
    window = var_depths[-(n_vars + 1):]
    lowest: dict[Symbol, int] = {}
    for k in reversed(window):
        if labels[k] in lowest:
            upper, lower = k, lowest[labels[k]]
            break
        lowest[labels[k]] = k
    else:
        raise WordTooShortError("no repeated variable on the longest path")
    (a, b), (c, e) = spans[upper], spans[lower]
    return PumpDecomposition(z[:a], z[a:c], z[c:e], z[e:b], z[b:], 2 ** n_vars)


def decompose(g: CnfGrammar, z: Word) -> PumpDecomposition:
    n = pumping_constant(g)
    if len(z) < n:
        raise WordTooShortError(f"|z| = {len(z)} is below the pumping constant {n}")
    t = parse_tree(g, z)
    if t is None:
        raise NotAMemberError(f"{format_word(z)!r} is not generated by the grammar")
    return decompose_tree(t, len(g.variables))


def pump_check(g: CnfGrammar, d: PumpDecomposition, max_i: int) -> bool:
    return all(member(g, pump(d, i)) for i in range(max_i + 1))


def admissible_splits(z: Word, n: int) -> Iterator[PumpDecomposition]:
    """Every ``z = uvwxy`` with ``|vwx| <= n`` and ``|vx| >= 1``.

    Ordered lexicographically by ``(|u|, |v|, |w|, |x|)``.
    """
    size = len(z)
    for lu in range(size + 1):
        for lv in range(min(n, size - lu) + 1):
            for lw in range(min(n - lv, size - lu - lv) + 1):
                for lx in range(min(n - lv - lw, size - lu - lv - lw) + 1):
                    if lv + lx == 0:
                        continue
                    a, b, c, e = lu, lu + lv, lu + lv + lw, lu + lv + lw + lx
                    yield PumpDecomposition(z[:a], z[a:b], z[b:c], z[c:e], z[e:], n)


@dataclass(frozen=True)
class LanguagePredicate:
    name: str
    membership: Callable[[Word], bool]
    alphabet: frozenset[Symbol]
    witness: Optional[Callable[[int], Word]] = None

    def __call__(self, w: Word) -> bool:
        return all(s in self.alphabet for s in w) and self.membership(w)


def _runs(w: Word, letters: str) -> Optional[list[int]]:
    """Lengths of the blocks ``letters[0]^k0 letters[1]^k1 ...``, or None."""
    text = "".join(s.name for s in w)
    counts = []
    pos = 0
    for ch in letters:
        start = pos
        while pos < len(text) and text[pos] == ch:
            pos += 1
        counts.append(pos - start)
    return counts if pos == len(text) else None


def _is_anbncn(w: Word) -> bool:
    r = _runs(w, "abc")
    return r is not None and r[0] >= 1 and r[0] == r[1] == r[2]


def _is_anbn(w: Word) -> bool:
    r = _runs(w, "ab")
    return r is not None and r[0] >= 1 and r[0] == r[1]


def _is_a2n(w: Word) -> bool:
    k = len(w)
    return k >= 2 and k & (k - 1) == 0 and all(s.name == "a" for s in w)


PREDICATES: dict[str, LanguagePredicate] = {
    p.name: p
    for p in (
        LanguagePredicate("anbncn", _is_anbncn, frozenset(word("abc")),
                          lambda n: word("a" * n + "b" * n + "c" * n)),
        LanguagePredicate("a2n", _is_a2n, frozenset(word("a")),
                          lambda n: word("a" * 2 ** n)),
        LanguagePredicate("anbn", _is_anbn, frozenset(word("ab")),
                          lambda n: word("a" * n + "b" * n)),
    )
}


@dataclass(frozen=True)
class SplitFailure:
    split: PumpDecomposition
    exponent: int

    def __str__(self):
        parts = " ".join(f"{k}={format_word(getattr(self.split, k))}" for k in "uvwxy")
        return f"{parts} fails_at_i={self.exponent}"


@dataclass(frozen=True)
class RefutationCertificate:
    """Every admissible split of ``witness`` leaves the language for some i."""

    predicate: str
    constant_n: int
    witness: Word
    max_i: int
    failures: tuple[SplitFailure, ...]

    refuted = True

    def header(self) -> str:
        return (f"predicate={self.predicate} n={self.constant_n} "
                f"witness={format_word(self.witness)} max_i={self.max_i}")

    def render(self) -> str:
        return "\n".join([self.header(), *map(str, self.failures)]) + "\n"


@dataclass(frozen=True)
class PumpabilityReport:
    """Splits that stayed inside the language for every tried exponent."""

    predicate: str
    constant_n: int
    witness: Word
    max_i: int
    pumpable: tuple[PumpDecomposition, ...]
    failures: tuple[SplitFailure, ...] = field(default=())

    refuted = False

    def header(self) -> str:
        return (f"predicate={self.predicate} n={self.constant_n} "
                f"witness={format_word(self.witness)} max_i={self.max_i} not_refuted")

    def render(self) -> str:
        lines = [self.header()]
        for d in self.pumpable:
            lines.append(" ".join(f"{k}={format_word(getattr(d, k))}" for k in "uvwxy") + " pumps")
        return "\n".join(lines) + "\n"


def refute_cfl(
    p: LanguagePredicate,
    n: int,
    witness_builder: Optional[Callable[[int], Word]] = None,
    max_i: int = 2,
):
    """Try to refute context-freeness of ``p`` with constant ``n``.

    Returns a :class:`RefutationCertificate` if every admissible split of the
    witness fails for some exponent ``i <= max_i`` (smallest such i is
    recorded), else a :class:`PumpabilityReport` listing the splits that
    survive.
    """
    build = witness_builder or p.witness
    if build is None:
        raise ValueError(f"no witness builder for {p.name!r}")
    z = tuple(build(n))
    if not p(z):
        raise NotAMemberError(f"witness {format_word(z)!r} is not in {p.name}")
    if len(z) < n:
        raise WordTooShortError(f"witness length {len(z)} is below n = {n}")

    failures = []
    pumpable = []
    for d in admissible_splits(z, n):
        bad = next((i for i in range(max_i + 1) if not p(pump(d, i))), None)
        if bad is None:
            pumpable.append(d)
        else:
            failures.append(SplitFailure(d, bad))
    if pumpable:
        return PumpabilityReport(p.name, n, z, max_i, tuple(pumpable), tuple(failures))
    return RefutationCertificate(p.name, n, z, max_i, tuple(failures))
