import itertools

import pytest

from cfgkit import (
    concat, enumerate_words, homomorphism, is_empty, parse_grammar, star, substitute, union, word,
)
from cfgkit.closure import rename_apart, singleton_grammar
from cfgkit.grammar import Symbol, validate

from .conftest import as_strings, words


# Word-level oracles.  They operate on bounded word sets only.

def oracle_concat(l1, l2, k):
    return {u + v for u in l1 for v in l2 if len(u) + len(v) <= k}


def oracle_star(lang, k):
    base = {w for w in lang if w}
    out = {()}
    frontier = {()}
    while frontier:
        frontier = {s + u for s in frontier for u in base if len(s) + len(u) <= k} - out
        out |= frontier
    return out


def oracle_substitute(lang, images, k):
    """Image of ``lang`` under a finite substitution, words longer than k dropped."""
    out = set()
    for w in lang:
        for parts in itertools.product(*(images[s] for s in w)):
            joined = tuple(itertools.chain.from_iterable(parts))
            if len(joined) <= k:
                out.add(joined)
    return out


S = parse_grammar("start: S\nS -> c")


def test_union_anbn(g_anbn):
    g = union(g_anbn, S)
    assert validate(g) == []
    assert as_strings(enumerate_words(g, 6)) == {"ab", "aabb", "aaabbb", "c"}


def test_union_with_itself(g_anbn):
    assert enumerate_words(union(g_anbn, g_anbn), 8) == enumerate_words(g_anbn, 8)


def test_union_of_counterexample_grammars(corpus):
    lang = as_strings(enumerate_words(union(corpus["abc_l1"], corpus["abc_l2"]), 5))
    assert {"abc", "abcc", "aabc", "aabbc", "abbcc"} <= lang
    assert "abbc" not in lang


def test_union_renames_apart(g_anbn):
    g = union(g_anbn, S)
    assert {v.name for v in g.variables} == {"S3", "S_1", "S_2"}
    assert g.axiom.name == "S3"


def test_concat_examples(g_anbn):
    a = parse_grammar("start: S\nS -> a")
    b = parse_grammar("start: S\nS -> b")
    assert enumerate_words(concat(a, b), 4) == words("ab")
    assert as_strings(enumerate_words(concat(g_anbn, S), 7)) == {"abc", "aabbc", "aaabbbc"}
    empty = parse_grammar("start: S\nS -> S S")
    assert enumerate_words(concat(g_anbn, empty), 8) == set()
    assert is_empty(concat(g_anbn, empty))


def test_star_examples(g_anbn):
    a_star = star(parse_grammar("start: S\nS -> a"))
    assert as_strings(enumerate_words(a_star, 3)) == {"", "a", "aa", "aaa"}
    lang8 = as_strings(enumerate_words(star(g_anbn), 8))
    assert {"", "ab", "abab", "aabb", "ababab", "abaabb", "aabbab", "aaabbb"} <= lang8
    assert enumerate_words(star(g_anbn), 8) == oracle_star(enumerate_words(g_anbn, 8), 8)


def test_star_always_has_epsilon(corpus):
    for g in corpus.values():
        assert () in enumerate_words(star(g), 0)


def test_substitute_example():
    g = parse_grammar("start: S\nS -> a b")
    f = {
        Symbol.term("a"): parse_grammar("start: S\nS -> 0 S 1 | 0 1"),
        Symbol.term("b"): parse_grammar("start: S\nS -> 2"),
    }
    out = substitute(g, f)
    assert validate(out) == []
    assert as_strings(enumerate_words(out, 7)) == {"012", "00112", "0001112"}


def test_substitute_identity(g_anbn):
    f = {t: singleton_grammar((t,)) for t in g_anbn.terminals}
    assert enumerate_words(substitute(g_anbn, f), 10) == enumerate_words(g_anbn, 10)


def test_substitute_empty_image(g_anbn):
    f = {Symbol.term("a"): parse_grammar("start: S\nS -> S S"), Symbol.term("b"): S}
    assert enumerate_words(substitute(g_anbn, f), 8) == set()


def test_substitute_epsilon_image(g_anbn):
    # a -> {eps, x}, b -> b: a^n b^n maps to words x^j b^n with j <= n.
    # Images never drop the b's, so a source word of length 2n yields length >= n.
    f = {Symbol.term("a"): parse_grammar("start: S\nS -> x | eps"),
         Symbol.term("b"): singleton_grammar((Symbol.term("b"),))}
    expected = {"x" * j + "b" * n for n in range(1, 9) for j in range(n + 1) if j + n <= 8}
    assert as_strings(enumerate_words(substitute(g_anbn, f), 8)) == expected
    images = {Symbol.term("a"): {(), word("x")}, Symbol.term("b"): {word("b")}}
    assert enumerate_words(substitute(g_anbn, f), 8) == oracle_substitute(
        enumerate_words(g_anbn, 16, cap=16), images, 8)


def test_substitute_requires_total_map(g_anbn):
    with pytest.raises(ValueError, match="b"):
        substitute(g_anbn, {Symbol.term("a"): S})


def test_homomorphism(g_anbn):
    out = homomorphism(g_anbn, {"a": word("xy"), "b": ()})
    # source words of length <= 8 cover every image of length <= 8, since a^n b^n maps to length 2n
    source = enumerate_words(g_anbn, 8)
    expected = {tuple(itertools.chain.from_iterable(
        word("xy") if s.name == "a" else () for s in w)) for w in source}
    assert enumerate_words(out, 8) == expected == words("xy", "xyxy", "xyxyxy", "xyxyxyxy")


def test_homomorphism_identity(g_anbn):
    out = homomorphism(g_anbn, {"a": word("a"), "b": word("b")})
    assert enumerate_words(out, 10) == enumerate_words(g_anbn, 10)


def test_homomorphism_to_epsilon(g_anbn):
    out = homomorphism(g_anbn, {"a": (), "b": ()})
    assert enumerate_words(out, 5) <= {()}


def test_rename_apart_avoids_terminal_names():
    g1 = parse_grammar("start: S\nS -> x A\nA -> a")
    g2 = parse_grammar("start: T\nT -> A\nA -> S")  # here S is a terminal
    r1, r2 = rename_apart([g1, g2])
    names1 = {v.name for v in r1.variables}
    names2 = {v.name for v in r2.variables}
    assert not names1 & names2
    assert not (names1 | names2) & {t.name for t in r1.terminals | r2.terminals}


def test_fresh_axioms_only_where_introduced(corpus):
    g1, g2 = corpus["anbn"], corpus["dyck"]
    for g in (union(g1, g2), concat(g1, g2), star(g1)):
        in_bodies = [p for p in g.productions if g.axiom in p.body]
        assert all(p.head == g.axiom for p in in_bodies)


def test_closure_oracle_all_pairs(corpus):
    k = 6
    langs = {name: enumerate_words(g, k) for name, g in corpus.items()}
    for (n1, g1), (n2, g2) in itertools.product(corpus.items(), repeat=2):
        l1, l2 = langs[n1], langs[n2]
        assert enumerate_words(union(g1, g2), k) == l1 | l2, (n1, n2)
        assert enumerate_words(concat(g1, g2), k) == oracle_concat(l1, l2, k), (n1, n2)


def test_counterexample_grammars_match_definitions(corpus):
    k = 9
    l1 = as_strings(enumerate_words(corpus["abc_l1"], k))
    l2 = as_strings(enumerate_words(corpus["abc_l2"], k))
    defn1 = {"a" * i + "b" * i + "c" * j for i in range(1, k) for j in range(1, k) if 2 * i + j <= k}
    defn2 = {"a" * i + "b" * j + "c" * j for i in range(1, k) for j in range(1, k) if i + 2 * j <= k}
    assert l1 == defn1
    assert l2 == defn2


def test_printed_counterexample_grammars_are_wrong():
    printed1 = parse_grammar("start: S\nS -> A B\nA -> a A B | a b\nB -> c B | c")
    printed2 = parse_grammar("start: S\nS -> C D\nC -> a c | a\nD -> b D c | b c")
    assert "aabcc" in as_strings(enumerate_words(printed1, 6))  # a^2 b c^2
    assert "acbc" in as_strings(enumerate_words(printed2, 6))
    assert "aabc" not in as_strings(enumerate_words(printed2, 6))
