"""Markov moves on classical braid words.

Words are compared up to rotation and free cancellation; the search adds
braid relations, stabilizations and destabilizations.  Every path it
returns can be replayed step by step with ``verify``.
"""
from obf.braids import check_jk_classical, markov_search, min_braid_index_upper, parse_braid
from obf.errors import NotFoundWithinBounds
from obf.normalize import verdict_line

path = markov_search(parse_braid("s1 s2 s1 s2^-1"), parse_braid("s1"))
print(f"{len(path.moves)} moves, verified={path.verify()}")
for step in path.steps:
    print("  ", step)

for word in ("s1 s2", "s1^3", "s1 s2^-1 s1 s2^-1"):
    n, witness = min_braid_index_upper(parse_braid(word))
    print(f"{word}: reaches {n} strands ({witness.end})")

try:
    markov_search(parse_braid("s1^3"), parse_braid("e", 1), max_depth=8)
except NotFoundWithinBounds as exc:
    print("trefoil vs unknot:", exc)

rep = check_jk_classical(parse_braid("s1^-1 s2"), parse_braid("e", 1), 1, "unknot")
print(verdict_line(rep), rep.classical)
