import pytest
from hypothesis import given, strategies as st

from cfgkit import (
    PREDICATES, PumpDecomposition, decompose, member, parse_grammar, pump, pump_check,
    pumping_constant, refute_cfl, to_cnf, word,
)
from cfgkit.grammar import Grammar, Production, Symbol
from cfgkit.pumping import (
    NotAMemberError, PumpabilityReport, RefutationCertificate, WordTooShortError,
    admissible_splits,
)
from cfgkit.transform import CnfGrammar


def brute_splits(z, n):
    """Independent re-enumeration of every admissible split, as index tuples."""
    out = set()
    size = len(z)
    for i in range(size + 1):
        for j in range(i, size + 1):
            for k in range(j, size + 1):
                for m in range(k, size + 1):
                    if m - i <= n and (j - i) + (m - k) >= 1:
                        out.add((z[:i], z[i:j], z[j:k], z[k:m], z[m:]))
    return out


def test_constant_formula():
    vs = [Symbol.var(n) for n in "SABC"]
    a = Symbol.term("a")
    g = Grammar.from_productions(vs[0], [Production(v, (a,)) for v in vs])
    assert pumping_constant(CnfGrammar(g)) == 16
    assert pumping_constant(to_cnf(parse_grammar("start: S\nS -> a"))) == 2


def test_constant_of_cnf_anbn(g_anbn):
    cnf = to_cnf(g_anbn)
    assert len(cnf.variables) == 4  # S, _T_a, _T_b, _B1
    assert pumping_constant(cnf) == 16


def test_decompose_anbn(g_anbn):
    cnf = to_cnf(g_anbn)
    z = word("a" * 8 + "b" * 8)
    d = decompose(cnf, z)
    assert d.word == z
    assert d.violations() == []
    t = len(d.v)
    assert t >= 1 and d.v == word("a" * t) and d.x == word("b" * t)
    assert pump_check(cnf, d, 3)
    splits = {(s.u, s.v, s.w, s.x, s.y) for s in admissible_splits(z, 16)}
    assert (d.u, d.v, d.w, d.x, d.y) in splits
    # at least one admissible split pumps, found without the tree
    assert any(all(member(cnf, pump(s, i)) for i in range(4)) for s in admissible_splits(z, 16))


def test_decompose_errors(g_anbn):
    cnf = to_cnf(g_anbn)
    with pytest.raises(WordTooShortError):
        decompose(cnf, word("aabb"))
    with pytest.raises(NotAMemberError):
        decompose(cnf, word("a" * 9 + "b" * 7))


def test_pump_identity_and_zero():
    d = PumpDecomposition(word("u"), word("v"), word("w"), word("x"), word("y"), 4)
    assert pump(d, 1) == word("uvwxy")
    assert pump(d, 0) == word("uwy")
    assert pump(d, 3) == word("uvvvwxxxy")


def test_pump_check_rejects_bad_split(g_anbn):
    cnf = to_cnf(g_anbn)
    z = word("aaaabbbb")
    bad = PumpDecomposition(word("a"), word("a"), word("a"), word("a"), word("bbbb"), 16)
    assert bad.word == z
    assert not pump_check(cnf, bad, 2)
    assert not member(cnf, pump(bad, 0)) and not member(cnf, pump(bad, 2))


def test_pump_check_trivial_range(g_anbn):
    cnf = to_cnf(g_anbn)
    d = decompose(cnf, word("a" * 8 + "b" * 8))
    assert pump_check(cnf, d, 1)


@given(
    st.text("ab", max_size=4), st.text("ab", max_size=3), st.text("ab", max_size=3),
    st.text("ab", max_size=3), st.text("ab", max_size=4), st.integers(0, 6),
)
def test_pump_length_arithmetic(u, v, w, x, y, i):
    d = PumpDecomposition(word(u), word(v), word(w), word(x), word(y), 8)
    assert len(pump(d, i)) == len(d.word) + (i - 1) * len(v + x)


def test_admissible_splits_complete():
    z = word("aabbc")
    for n in (1, 3, 5):
        got = [(s.u, s.v, s.w, s.x, s.y) for s in admissible_splits(z, n)]
        assert len(got) == len(set(got))
        assert set(got) == brute_splits(z, n)


def test_refute_a2n():
    cert = refute_cfl(PREDICATES["a2n"], 4, max_i=2)
    assert isinstance(cert, RefutationCertificate)
    assert cert.witness == word("a" * 16)
    assert {(f.split.u, f.split.v, f.split.w, f.split.x, f.split.y) for f in cert.failures} == brute_splits(cert.witness, 4)
    for f in cert.failures:
        assert not PREDICATES["a2n"](pump(f.split, f.exponent))
        # 12 <= |uwy| <= 15 and 17 <= |uv^2wx^2y| <= 20: neither is a power of two
        assert not PREDICATES["a2n"](pump(f.split, 2))


def test_refute_anbncn():
    p = PREDICATES["anbncn"]
    cert = refute_cfl(p, 4, max_i=2)
    assert isinstance(cert, RefutationCertificate)
    assert cert.witness == word("aaaabbbbcccc")
    for f in cert.failures:
        pumped = pump(f.split, 2)
        text = "".join(s.name for s in pumped)
        mixed = any(len({s.name for s in part}) > 1 for part in (f.split.v, f.split.x))
        # the two failure modes: mixed blocks or unequal counts
        assert mixed or len({text.count(c) for c in "abc"}) > 1
        assert not p(pumped)


def test_refute_anbn_fails():
    report = refute_cfl(PREDICATES["anbn"], 8, witness_builder=lambda n: word("aaaabbbb"))
    assert isinstance(report, PumpabilityReport)
    assert not report.refuted
    pumpable = {(d.u, d.v, d.w, d.x, d.y) for d in report.pumpable}
    assert (word("aaa"), word("a"), (), word("b"), word("bbb")) in pumpable


def test_refute_rejects_bad_witness():
    with pytest.raises(NotAMemberError):
        refute_cfl(PREDICATES["anbn"], 2, witness_builder=lambda n: word("aab"))
    with pytest.raises(WordTooShortError):
        refute_cfl(PREDICATES["anbn"], 5, witness_builder=lambda n: word("ab"))


def test_certificate_rendering():
    cert = refute_cfl(PREDICATES["a2n"], 1, max_i=2)
    assert cert.render() == (
        "predicate=a2n n=1 witness=aa max_i=2\n"
        "u= v= w= x=a y=a fails_at_i=0\n"
        "u= v=a w= x= y=a fails_at_i=0\n"
        "u=a v= w= x=a y= fails_at_i=0\n"
        "u=a v=a w= x= y= fails_at_i=0\n"
    )


def test_predicates():
    assert PREDICATES["a2n"](word("aa")) and PREDICATES["a2n"](word("a" * 8))
    assert not PREDICATES["a2n"](word("a")) and not PREDICATES["a2n"](word("a" * 6))
    assert PREDICATES["anbncn"](word("abc")) and not PREDICATES["anbncn"](word("abcc"))
    assert not PREDICATES["anbncn"](()) and not PREDICATES["anbn"](word("ba"))
    assert not PREDICATES["anbn"](word("abx"))
