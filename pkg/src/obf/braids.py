"""Classical braids: words, writhe, Bennequin self-linking and Markov search.

Words are tuples of nonzero integers, ``i`` for the generator s_i and ``-i``
for its inverse.  The search works on cyclic words: a word is freely and
cyclically reduced and then rotated to its lexicographically least rotation,
so conjugation and free cancellation cost nothing.  The remaining moves are
far commutation, the length-three braid relations, insertion of a cancelling
pair, and (de)stabilization at the last strand.
"""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass

from .errors import IncompleteInput, InvalidParameter, NotFoundWithinBounds, ParseError
from .normalize import BraidData, InequalityReport

_TOKEN = re.compile(r"^s(\d+)(?:\^(-?\d+))?$")


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameter(f"strand count must be at least 1, got {self.n}")
        for x in self.letters:
            if x == 0 or abs(x) > self.n - 1:
                raise InvalidParameter(f"letter s{abs(x)} is out of range in B_{self.n}")
        object.__setattr__(self, "letters", tuple(self.letters))

    def __str__(self):
        if not self.letters:
            return "e"
        return " ".join(f"s{x}" if x > 0 else f"s{-x}^-1" for x in self.letters)

    def __len__(self):
        return len(self.letters)


def parse_braid(text: str, n: int | None = None) -> BraidWord:
    """Parse ``"s1 s2^-1 s1"``; ``e`` or an empty string is the identity.

    Exponents other than 1 and -1 expand to repeated letters.  Without ``n``
    the strand count is one more than the largest index.
    """
    letters = []
    for col, tok in _tokens(text):
        if tok == "e":
            continue
        m = _TOKEN.match(tok)
        if not m or int(m.group(1)) < 1:
            raise ParseError(f"bad braid letter {tok!r}", 1, col)
        i, k = int(m.group(1)), int(m.group(2) or 1)
        if k == 0:
            raise ParseError(f"zero exponent in {tok!r}", 1, col)
        letters.extend([i if k > 0 else -i] * abs(k))
    if n is None:
        n = max((abs(x) for x in letters), default=0) + 1
    return BraidWord(n, tuple(letters))


def _tokens(text):
    col = 1
    for part in re.split(r"(\s+)", text.strip()):
        if part and not part.isspace():
            yield col, part
        col += len(part)


def writhe(b: BraidWord) -> int:
    return sum(1 if x > 0 else -1 for x in b.letters)


def bennequin_sl(b: BraidWord) -> int:
    return writhe(b) - b.n


# ---------------------------------------------------------------------------
# reductions and canonical keys


def free_reduce(word):
    out = []
    for x in word:
        if out and out[-1] == -x:
            out.pop()
        else:
            out.append(x)
    return tuple(out)


def cyclic_reduce(word):
    w = free_reduce(word)
    k = 0
    while len(w) - 2 * k >= 2 and w[k] == -w[len(w) - 1 - k]:
        k += 1
    return w[k:len(w) - k]


def _min_rotation(w):
    if not w:
        return 0
    return min(range(len(w)), key=lambda k: w[k:] + w[:k])


def canonical(n: int, word) -> tuple:
    w = cyclic_reduce(word)
    k = _min_rotation(w)
    return (n, w[k:] + w[:k])


def _relations():
    rel = {}

    def add(lhs, rhs):
        rel.setdefault(lhs, set()).add(rhs)
        rel.setdefault(rhs, set()).add(lhs)

    return rel, add


def _triple_relations(max_index):
    rel, add = _relations()
    for a in range(1, max_index + 1):
        for b in (a - 1, a + 1):
            if not 1 <= b <= max_index:
                continue
            add((a, b, a), (b, a, b))
            add((-a, -b, -a), (-b, -a, -b))
            add((a, b, -a), (-b, a, b))
            add((b, -a, -b), (-a, -b, a))
    return {k: tuple(sorted(v)) for k, v in rel.items()}


_TRIPLES = {}


def _triples(n):
    if n not in _TRIPLES:
        _TRIPLES[n] = _triple_relations(n - 1)
    return _TRIPLES[n]


# ---------------------------------------------------------------------------
# moves


@dataclass(frozen=True)
class MarkovStep:
    kind: str  # conjugation | free-cancellation | braid-relation | stabilization | destabilization
    sign: int
    before: BraidWord
    after: BraidWord

    def __str__(self):
        sign = {1: "+", -1: "-"}.get(self.sign, "")
        return f"{self.kind}{sign}: {self.before} [B{self.before.n}] -> {self.after} [B{self.after.n}]"


@dataclass(frozen=True)
class MarkovPath:
    start: BraidWord
    end: BraidWord
    steps: tuple = ()

    @property
    def moves(self):
        """Steps that are not bookkeeping conjugations or cancellations."""
        return tuple(s for s in self.steps if s.kind not in ("conjugation", "free-cancellation"))

    def verify(self) -> bool:
        cur = self.start
        for s in self.steps:
            if s.before != cur or not step_is_valid(s):
                return False
            cur = s.after
        return cur == self.end


def step_is_valid(s: MarkovStep) -> bool:
    a, b = s.before.letters, s.after.letters
    if s.kind == "conjugation":
        return s.before.n == s.after.n and len(a) == len(b) and \
            any(a[k:] + a[:k] == b for k in range(max(len(a), 1)))
    if s.kind == "free-cancellation":
        if s.before.n != s.after.n:
            return False
        short, long_ = (b, a) if len(a) == len(b) + 2 else (a, b)
        if len(long_) != len(short) + 2:
            return False
        return any(long_[k] == -long_[k + 1] and long_[:k] + long_[k + 2:] == short
                   for k in range(len(long_) - 1))
    if s.kind == "braid-relation":
        if s.before.n != s.after.n or len(a) != len(b):
            return False
        diff = [k for k in range(len(a)) if a[k] != b[k]]
        if not diff:
            return False
        lo, hi = diff[0], diff[-1]
        if hi - lo == 1:
            return a[lo] == b[hi] and a[hi] == b[lo] and abs(abs(a[lo]) - abs(a[hi])) >= 2
        if hi - lo <= 2 and lo + 3 <= len(a):
            lo = min(lo, len(a) - 3)
            return b[lo:lo + 3] in _triples(s.before.n).get(a[lo:lo + 3], ())
        return False
    if s.kind == "stabilization":
        n = s.before.n
        return s.after.n == n + 1 and b == a + (s.sign * n,)
    if s.kind == "destabilization":
        n = s.after.n
        return s.before.n == n + 1 and a == b + (s.sign * n,)
    return False


def _rotations(w):
    return [(k, w[k:] + w[:k]) for k in range(max(len(w), 1))]


def _relation_moves(n, w):
    if len(w) >= 2 and abs(abs(w[0]) - abs(w[1])) >= 2:
        yield (w[1], w[0]) + w[2:]
    if len(w) >= 3:
        for rhs in _triples(n).get(w[:3], ()):
            yield rhs + w[3:]


def _local_moves(n, w, max_len, max_n, compound=False):
    """Yield chains of (kind, sign, n', word') sub-steps starting at the word ``w``.

    Relations, stabilization and destabilization act at the front or back of
    ``w``; callers rotate the word to reach every cyclic position.  With
    ``compound`` set, a cancelling pair is also inserted and immediately used
    by a relation, since a bare insertion would be undone by reduction.
    """
    m = len(w)
    for w2 in _relation_moves(n, w):
        yield (("braid-relation", 0, n, w2),)
    if n + 1 <= max_n and m + 1 <= max_len:
        for sign in (1, -1):
            yield (("stabilization", sign, n + 1, w + (sign * n,)),)
    if n >= 2 and w and abs(w[-1]) == n - 1 and sum(1 for x in w if abs(x) == n - 1) == 1:
        yield (("destabilization", (1 if w[-1] > 0 else -1), n - 1, w[:-1]),)
    if compound and m + 2 <= max_len:
        for p in range(max(m, 1)):
            for i in range(1, n):
                for x in (i, -i):
                    ins = w[:p] + (x, -x) + w[p:]
                    for k, r in _rotations(ins):
                        # only windows touching the inserted pair can use it
                        if (p - k) % len(ins) > 2 and (p + 1 - k) % len(ins) > 2:
                            continue
                        head = (("free-cancellation", 0, n, ins),)
                        if k:
                            head += (("conjugation", 0, n, r),)
                        for w2 in _relation_moves(n, r):
                            yield head + (("braid-relation", 0, n, w2),)


def _neighbors(key, max_len, max_n):
    n, c = key
    seen = set()
    for k, w in _rotations(c):
        for j, chain in enumerate(_local_moves(n, w, max_len, max_n, compound=k == 0)):
            _, _, n2, w2 = chain[-1]
            nk = canonical(n2, w2)
            if nk != key and nk not in seen:
                seen.add(nk)
                yield nk, (k, j)


def _replay(key, desc, max_len, max_n):
    """Concrete steps from canonical word ``key`` along move descriptor ``desc``."""
    n, c = key
    k, j = desc
    steps = []
    cur = BraidWord(n, c)
    w = c[k:] + c[:k]
    if w != c:
        steps.append(MarkovStep("conjugation", 0, cur, BraidWord(n, w)))
        cur = BraidWord(n, w)
    chain = list(_local_moves(n, w, max_len, max_n, compound=k == 0))[j]
    for kind, sign, n2, w2 in chain:
        nxt = BraidWord(n2, w2)
        steps.append(MarkovStep(kind, sign, cur, nxt))
        cur = nxt
    steps.extend(_canonicalize_steps(cur))
    return steps


def _canonicalize_steps(b: BraidWord):
    steps = []
    cur = b
    while True:
        w = cur.letters
        k = next((k for k in range(len(w) - 1) if w[k] == -w[k + 1]), None)
        if k is not None:
            nxt = BraidWord(cur.n, w[:k] + w[k + 2:])
        elif len(w) >= 2 and w[0] == -w[-1]:
            nxt = BraidWord(cur.n, w[1:] + w[:1])
            steps.append(MarkovStep("conjugation", 0, cur, nxt))
            cur = nxt
            continue
        else:
            break
        steps.append(MarkovStep("free-cancellation", 0, cur, nxt))
        cur = nxt
    r = _min_rotation(cur.letters)
    if r:
        nxt = BraidWord(cur.n, cur.letters[r:] + cur.letters[:r])
        steps.append(MarkovStep("conjugation", 0, cur, nxt))
    return steps


def _reverse(step: MarkovStep) -> MarkovStep:
    kind = {"stabilization": "destabilization", "destabilization": "stabilization"}.get(
        step.kind, step.kind)
    return MarkovStep(kind, step.sign, step.after, step.before)


def _check_bounds(max_len, max_n, max_depth):
    if min(max_len, max_n, max_depth) < 1:
        raise InvalidParameter("search bounds must be positive")


def markov_search(a: BraidWord, b: BraidWord, max_len: int = 8, max_n: int = 4,
                  max_depth: int = 10) -> MarkovPath:
    """Bidirectional breadth-first search for a Markov path from ``a`` to ``b``.

    Depth counts moves other than the free conjugations and cancellations
    used to reach canonical form.  Raises NotFoundWithinBounds when the
    bounded graph has been exhausted, which says nothing about isotopy.
    """
    _check_bounds(max_len, max_n, max_depth)
    max_len = max(max_len, len(a), len(b))
    max_n = max(max_n, a.n, b.n)
    ka, kb = canonical(a.n, a.letters), canonical(b.n, b.letters)
    parents = ({ka: None}, {kb: None})
    frontiers = ([ka], [kb])
    depth = [0, 0]
    meet = ka if ka == kb else None
    while meet is None and depth[0] + depth[1] < max_depth and all(frontiers):
        side = 0 if len(frontiers[0]) <= len(frontiers[1]) else 1
        nxt = []
        for key in frontiers[side]:
            for nk, desc in _neighbors(key, max_len, max_n):
                if nk in parents[side]:
                    continue
                parents[side][nk] = (key, desc)
                nxt.append(nk)
                if nk in parents[1 - side]:
                    meet = nk
                    break
            if meet is not None:
                break
        frontiers[side][:] = nxt
        depth[side] += 1
    if meet is None:
        raise NotFoundWithinBounds(
            f"no Markov path from {a} [B{a.n}] to {b} [B{b.n}] within "
            f"len<={max_len}, n<={max_n}, depth<={max_depth}")
    return MarkovPath(a, b, tuple(_assemble(a, b, parents, meet, max_len, max_n)))


def _chain(parents, key, max_len, max_n):
    """Steps from the root of ``parents`` to ``key``."""
    out = []
    while parents[key] is not None:
        prev, desc = parents[key]
        out[:0] = _replay(prev, desc, max_len, max_n)
        key = prev
    return out


def _assemble(a, b, parents, meet, max_len, max_n):
    steps = _canonicalize_steps(a) + _chain(parents[0], meet, max_len, max_n)
    back = _canonicalize_steps(b) + _chain(parents[1], meet, max_len, max_n)
    return steps + [_reverse(s) for s in reversed(back)]


def explore(b: BraidWord, max_len: int, max_n: int, max_depth: int | None = None):
    """Breadth-first ball around ``b``: canonical key -> (depth, parent key, descriptor)."""
    max_len = max(max_len, len(b))
    max_n = max(max_n, b.n)
    start = canonical(b.n, b.letters)
    seen = {start: (0, None, None)}
    q = deque([start])
    while q:
        key = q.popleft()
        d = seen[key][0]
        if max_depth is not None and d >= max_depth:
            continue
        for nk, desc in _neighbors(key, max_len, max_n):
            if nk not in seen:
                seen[nk] = (d + 1, key, desc)
                q.append(nk)
    return seen


def min_braid_index_upper(b: BraidWord, max_len: int = 8, max_n: int | None = None,
                          max_depth: int = 8):
    """Smallest strand count reachable from ``b`` within bounds, with a witness path."""
    max_n = b.n + 1 if max_n is None else max_n
    _check_bounds(max_len, max_n, max_depth)
    ball = explore(b, max_len, max_n, max_depth)
    best = min(ball, key=lambda k: (k[0], ball[k][0], k))
    target = BraidWord(best[0], best[1])
    parents = {k: (None if v[1] is None else (v[1], v[2])) for k, v in ball.items()}
    steps = _canonicalize_steps(b) + _chain(parents, best, max(max_len, len(b)), max(max_n, b.n))
    return best[0], MarkovPath(b, target, tuple(steps))


# ---------------------------------------------------------------------------
# the classical inequalities


def check_jk_classical(a: BraidWord, b: BraidWord, b_L: int | None, provenance: str = "",
                       path: MarkovPath | None = None, bounds=(8, 4, 10)) -> InequalityReport:
    """Evaluate |w(a)-w(b)| <= n(a)+n(b)-2b(L) and |sl(a)-sl(b)| <= 2(max n - b(L))."""
    if b_L is None:
        raise IncompleteInput("b(L) is required")
    if path is None:
        try:
            path = markov_search(a, b, *bounds)
        except NotFoundWithinBounds as exc:
            raise IncompleteInput(f"no isotopy certificate: {exc}") from exc
    elif not (path.start == a and path.end == b and path.verify()):
        raise IncompleteInput("the supplied Markov path does not connect the two words")
    lhs1 = abs(writhe(a) - writhe(b))
    rhs1 = a.n + b.n - 2 * b_L
    lhs = abs(bennequin_sl(a) - bennequin_sl(b))
    rhs = 2 * (max(a.n, b.n) - b_L)
    classical = {
        "writhe_lhs": lhs1,
        "writhe_rhs": rhs1,
        "writhe_verdict": "HOLDS" if lhs1 <= rhs1 else "VIOLATED",
        "markov_moves": len(path.moves),
    }
    return InequalityReport(
        BraidData(str(a), a.n, bennequin_sl(a)), BraidData(str(b), b.n, bennequin_sl(b)),
        b_L, provenance, lhs, rhs, "holds" if lhs <= rhs else "violated",
        {"Planar": (True, True), "C-Top": ("Markov path", True)}, False, classical)


# ---------------------------------------------------------------------------
# exhaustive sweep


@dataclass(frozen=True)
class SweepReport:
    words: int
    classes: int
    pairs: int
    violations: tuple
    disagreements: tuple
    bounds: tuple

    @property
    def ok(self):
        return not self.violations and not self.disagreements


def all_words(n: int, max_len: int):
    letters = [x for i in range(1, n) for x in (i, -i)]
    for m in range(max_len + 1):
        for t in itertools.product(letters, repeat=m):
            yield BraidWord(n, t)


def classical_sweep(strands=(2, 3), word_len: int = 6, max_len: int = 8,
                    max_n: int = 5) -> SweepReport:
    """Check both classical inequalities on every pair of words in one Markov class.

    Classes are connected components of the bounded move graph, so any two
    words in a class are joined by a verified path.  Within a class the
    braid index bound is the least strand count seen in the component.
    """
    words = [w for n in strands for w in all_words(n, word_len)]
    owner, least = {}, []
    for w in words:
        key = canonical(w.n, w.letters)
        if key in owner:
            continue
        ball = explore(w, max_len, max_n)
        cid = len(least)
        least.append(min(k[0] for k in ball))
        for k in ball:
            owner.setdefault(k, cid)
    members = {}
    for w in words:
        cid = owner[canonical(w.n, w.letters)]
        members.setdefault(cid, set()).add((w.n, writhe(w), w))
    pairs, bad, split = 0, [], []
    for cid, group in sorted(members.items()):
        b_L = least[cid]
        reps = {}
        for n, wr, w in group:
            reps.setdefault((n, wr), w)
        for (na, wa), a in sorted(reps.items()):
            for (nb, wb), b in sorted(reps.items()):
                pairs += 1
                ok2 = abs((wa - na) - (wb - nb)) <= 2 * (max(na, nb) - b_L)
                ok1 = abs(wa - wb) <= na + nb - 2 * b_L
                if not ok2:
                    bad.append((a, b, b_L))
                if ok1 != ok2:
                    split.append((a, b, b_L))
    return SweepReport(len(words), len(least), pairs, tuple(bad), tuple(split),
                       (word_len, max_len, max_n))
