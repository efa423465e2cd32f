from collections import deque

import pytest

from cfgkit import format_word, load_corpus, parse_grammar, word

ANBN = """\
start: S
S -> a S b | a b
"""

USELESS = """\
start: S
variables: B
S -> A B | a
A -> a
"""

EQUAL_AB = """\
start: S
S -> b A | a B
A -> b A A | a S | a
B -> a B B | b S | b
"""


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def g_anbn():
    return parse_grammar(ANBN)


@pytest.fixture
def g_useless():
    return parse_grammar(USELESS)


@pytest.fixture
def g_equal():
    return parse_grammar(EQUAL_AB)


def words(*texts):
    return {word(t) for t in texts}


def as_strings(ws):
    return {format_word(w) for w in ws}


def brute_force_language(g, max_len, slack=4):
    """Words of length <= max_len reachable by leftmost rewriting.

    Sentential forms are explored breadth-first; forms longer than
    ``max_len + slack`` are discarded, so epsilon-heavy grammars need a
    larger slack.  Independent of every algorithm in the package.
    """
    rules = {}
    for p in g.productions:
        rules.setdefault(p.head, []).append(p.body)
    start = (g.axiom,)
    seen = {start}
    queue = deque([start])
    found = set()
    while queue:
        form = queue.popleft()
        idx = next((i for i, s in enumerate(form) if s.is_variable), None)
        if idx is None:
            found.add(form)
            continue
        for body in rules.get(form[idx], ()):
            nxt = form[:idx] + body + form[idx + 1:]
            n_terms = sum(1 for s in nxt if s.is_terminal)
            if n_terms > max_len or len(nxt) > max_len + slack or nxt in seen:
                continue
            seen.add(nxt)
            queue.append(nxt)
    return found


def pytest_terminal_summary(terminalreporter):
    from . import test_acceptance

    if test_acceptance.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in sorted(test_acceptance.RESULTS, key=lambda s: int(s.split()[1].rstrip("."))):
            terminalreporter.write_line(line)
