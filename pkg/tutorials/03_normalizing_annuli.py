"""Normalizing cobounding annuli on a planar page.

``normalize`` removes elliptic points one at a time (destabilizations,
exchange moves, foliation changes) until what is left is either a product
or an alternating tiling.  An alternating tiling is undone by the same
number of stabilizations on both sides, so the two braids started with
equal n and sl.
"""
from obf.generate import alternating_tiling, random_corpus
from obf.normalize import common_stabilization, format_report, normalize

tiling = alternating_tiling(3)
r = normalize(tiling)
print(format_report(result=r))
alpha, beta = common_stabilization(tiling)
print("alpha side:", *alpha, sep="\n  ")
print("beta side:", *beta, sep="\n  ")

# A random annulus with a twisting coefficient of 2 about the core.
f = random_corpus(1, seed=3)[0]
r = normalize(f, fdtc_value=2)
print()
print(f"{f.name}: singular-point measure per step {r.measures}")
print(format_report(result=r))
