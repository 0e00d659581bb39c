import random
from fractions import Fraction

import pytest

from obf.braids import (
    BraidWord,
    MarkovPath,
    MarkovStep,
    _triples,
    bennequin_sl,
    canonical,
    check_jk_classical,
    markov_search,
    min_braid_index_upper,
    parse_braid,
    writhe,
)
from obf.errors import IncompleteInput, InvalidParameter, NotFoundWithinBounds, ParseError

T = Fraction(2)


def burau(b: BraidWord, t=T):
    """Unreduced Burau matrix at a rational t, an oracle independent of the search."""
    n = b.n
    m = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for x in b.letters:
        i = abs(x) - 1
        if x > 0:
            blk = [[1 - t, t], [1, 0]]
        else:
            blk = [[0, 1], [1 / t, 1 - 1 / t]]
        g = [[Fraction(int(r == c)) for c in range(n)] for r in range(n)]
        for r in range(2):
            for c in range(2):
                g[i + r][i + c] = Fraction(blk[r][c])
        m = [[sum(m[r][k] * g[k][c] for k in range(n)) for c in range(n)] for r in range(n)]
    return m


def trace(m):
    return sum(m[i][i] for i in range(len(m)))


def test_parse_and_print():
    b = parse_braid("s1 s2^-1 s1^2")
    assert b.n == 3 and b.letters == (1, -2, 1, 1)
    assert str(b) == "s1 s2^-1 s1 s1"
    assert parse_braid("e", 3) == BraidWord(3, ())
    assert str(BraidWord(2)) == "e"
    for bad in ("1", "s0", "s1^0", "x2"):
        with pytest.raises(ParseError):
            parse_braid(bad)
    with pytest.raises(InvalidParameter):
        parse_braid("s3", 3)


def test_writhe_and_sl():
    b = parse_braid("s1 s1 s1")
    assert writhe(b) == 3 and bennequin_sl(b) == 1
    assert bennequin_sl(parse_braid("e", 1)) == -1
    assert bennequin_sl(parse_braid("s1^-1")) == -3


def test_canonical_forgets_rotation_and_cancellation():
    a = canonical(3, (1, 2, -2, 2, 1))
    assert a == canonical(3, (2, 1, 1)) == canonical(3, (1, 1, 2))
    assert canonical(3, (1, -1)) == canonical(3, ())


@pytest.mark.parametrize("n", [3, 4, 5])
def test_every_triple_relation_holds_in_burau(n):
    for lhs, rhss in _triples(n).items():
        for rhs in rhss:
            assert burau(BraidWord(n, lhs)) == burau(BraidWord(n, rhs)), (lhs, rhs)


def test_oracle_separates_nonequal_words():
    assert burau(parse_braid("s1 s2")) != burau(parse_braid("s2 s1"))


def test_markov_examples():
    p = markov_search(parse_braid("s1"), parse_braid("e", 1))
    assert p.verify() and len(p.moves) == 1
    assert p.moves[0].kind == "destabilization"
    p = markov_search(parse_braid("s1 s2 s1"), parse_braid("s2 s1 s2"))
    assert p.verify() and [s.kind for s in p.moves] == ["braid-relation"]


def test_trefoil_is_not_the_unknot_within_bounds():
    with pytest.raises(NotFoundWithinBounds):
        markov_search(parse_braid("s1^3"), parse_braid("e", 1), 8, 4, 12)


def _same_conjugacy_trace(step):
    a, b = burau(step.before), burau(step.after)
    if step.kind == "conjugation":
        return trace(a) == trace(b)
    return a == b


def test_random_paths_verify_and_respect_burau():
    rng = random.Random(11)
    found = 0
    for _ in range(25):
        n = rng.choice([2, 3])
        letters = [x for i in range(1, n) for x in (i, -i)]
        w = BraidWord(n, tuple(rng.choice(letters) for _ in range(rng.randint(0, 5))))
        k = rng.randrange(len(w) + 1)
        v = BraidWord(n, w.letters[k:] + w.letters[:k] + (1, -1))
        p = markov_search(w, v)
        found += 1
        assert p.verify()
        for s in p.steps:
            if s.kind in ("conjugation", "free-cancellation", "braid-relation"):
                assert _same_conjugacy_trace(s), s
    assert found == 25


def test_tampered_path_fails_verification():
    p = markov_search(parse_braid("s1 s2 s1"), parse_braid("s2 s1 s2"))
    s = p.steps[-1]
    bad = MarkovStep(s.kind, s.sign, s.before, BraidWord(3, (1, 1, 1)))
    assert not MarkovPath(p.start, p.end, p.steps[:-1] + (bad,)).verify()
    assert not MarkovPath(p.start, parse_braid("s1"), p.steps).verify()


def test_min_braid_index():
    for text, want in (("s1", 1), ("s1 s2", 1), ("s1^3", 2)):
        n, path = min_braid_index_upper(parse_braid(text))
        assert n == want and path.verify() and path.end.n == n


def test_classical_check():
    a, b = parse_braid("s1"), parse_braid("e", 1)
    rep = check_jk_classical(a, b, 1, "unknot")
    assert (rep.lhs, rep.rhs, rep.verdict) == (0, 2, "holds")
    assert rep.classical["writhe_verdict"] == "HOLDS"
    assert rep.classical["markov_moves"] == 1
    neg = parse_braid("s1^-1")
    rep = check_jk_classical(neg, b, 1, "unknot")
    assert (rep.lhs, rep.rhs) == (2, 2) and rep.verdict == "holds"


def test_classical_check_needs_inputs():
    a = parse_braid("s1")
    with pytest.raises(IncompleteInput):
        check_jk_classical(a, a, None)
    with pytest.raises(IncompleteInput):
        check_jk_classical(parse_braid("s1^3"), parse_braid("e", 1), 1, bounds=(6, 3, 6))
    wrong = markov_search(parse_braid("s1 s2 s1"), parse_braid("s2 s1 s2"))
    with pytest.raises(IncompleteInput):
        check_jk_classical(a, parse_braid("e", 1), 1, path=wrong)
