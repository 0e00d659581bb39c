"""Reading a disc off its movie.

A movie lists the first slice of a surface on the page (elliptic points,
braid punctures and the arcs between them) and then the saddles, one per
line, in the order they occur as the page turns.  Everything else (the
graph, the tiles, the signs of the singular points) is rebuilt from that.

Run with ``python3 tutorials/01_reading_a_movie.py``.
"""
from obf.fixtures import data_text
from obf.foliation import euler_audit, self_linking, singularity_counts, validate
from obf.movie import braid_boundary, interpret, movie_slices, parse_movie
from obf.render import to_dot

text = data_text("ex2_2.obf")
print(text)

movie = parse_movie(text)
disc = interpret(movie)
print("valid:", validate(disc).ok)

# Four saddles: three negative, then one positive that closes the disc.
for event, leaves in movie_slices(movie)[1:]:
    print(f"t={event.time} sign={event.sign:+d} leaves now {sorted(leaves)}")

c = singularity_counts(disc)
print("counts (e+, e-, h+, h-):", c.as_tuple())
print("sl =", self_linking(disc))  # -(e+ - e-) + (h+ - h-) = -1 - 2 = -3

b = braid_boundary(movie)
print(f"the boundary is a {b.n}-braid; lk with the binding: {dict(b.linking)}")
print("turns around the core:", b.core_winding)

audit = euler_audit(disc, "sphere")
print(f"V={audit.V} E={audit.E} R={audit.R}, V-E+R={audit.V - audit.E + audit.R}")
print(to_dot(disc))
