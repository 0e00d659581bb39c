import pytest

from obf.errors import MalformedMovie, ParseError, UnknownLeaf, Unsupported
from obf.fixtures import data_text, load_data_movie
from obf.foliation import self_linking, singularity_counts, validate
from obf.movie import (
    braid_boundary,
    interpret,
    linking_with_binding,
    movie_slices,
    parse_movie,
    serialize_movie,
)

EX22 = data_text("ex2_2.obf")

ALL = ["ex2_2.obf", "ex6_1_a.obf", "ex6_1_b.obf", "ex6_2.obf", "lemma6_3.obf",
       "lemma6_3_opposite.obf", "lemma6_3_planar.obf", "meridian.obf"]


@pytest.mark.parametrize("name", ALL)
def test_serialize_round_trip(name):
    m = load_data_movie(name)
    text = serialize_movie(m)
    again = parse_movie(text)
    assert again == m
    assert serialize_movie(again) == text


def test_bytes_input_is_accepted():
    assert parse_movie(EX22.encode()) == parse_movie(EX22)


def test_ex2_2_events():
    m = parse_movie(EX22)
    assert [e.sign for e in m.events] == [-1, -1, -1, 1]
    assert [int(e.time) for e in m.events] == [1, 2, 3, 4]
    assert m.kind == "disc"
    f = interpret(m)
    assert validate(f).ok
    assert self_linking(f) == -3
    assert singularity_counts(f).as_tuple() == (3, 2, 1, 3)


def test_ex2_2_boundary_braid():
    b = braid_boundary(parse_movie(EX22))
    assert b.n == 1
    assert b.lk("C0") == 3 and b.lk("C1") == -2
    # three positive points on C0 minus the one strand
    assert b.core_winding == 2


def test_slices_follow_the_events():
    m = parse_movie(EX22)
    shots = movie_slices(m)
    assert len(shots) == len(m.events) + 1
    assert shots[0][0] is None
    assert set(shots[0][1]) == {"a0", "b11", "b22"}
    assert set(shots[-1][1]) == {"a0b", "b11b", "b22b"}
    # every event swaps two leaves for two
    assert all(len(s) == 3 for _, s in shots)


def test_unknown_leaf_is_reported_with_its_line():
    bad = EX22.replace("join a0@v0 b11@w1", "join l9@v0 b11@w1")
    with pytest.raises(UnknownLeaf) as info:
        parse_movie(bad)
    assert info.value.leaf == "l9"
    assert info.value.line == EX22.splitlines().index(
        next(line for line in EX22.splitlines() if "event 1" in line)) + 1


@pytest.mark.parametrize("mutate,where", [
    (lambda t: t.replace("obf-movie v1", "obf-movie v2"), "header"),
    (lambda t: t.replace("event 2 sign=-", "event 0 sign=-"), "increase"),
    (lambda t: t.replace("event 1 sign=-", "event 1 sign=?"), "sign"),
    (lambda t: t.replace("elliptic w2 - C1", "elliptic w2 - C7"), "component"),
    (lambda t: t.replace("result: a1 b01", ""), "result"),
])
def test_malformed_text(mutate, where):
    with pytest.raises(ParseError) as info:
        parse_movie(mutate(EX22))
    assert where in str(info.value)


def test_movie_without_events():
    text = EX22.split("events")[0]
    m = parse_movie(text)
    assert m.events == ()
    assert len(movie_slices(m)) == 1


def test_strand_count_must_not_change():
    text = data_text("meridian.obf")
    m = parse_movie(text)
    assert braid_boundary(m).n == 1


def test_linking_needs_a_planar_page():
    m = load_data_movie("lemma6_3.obf")
    with pytest.raises(Unsupported):
        linking_with_binding(m, "C0")


def test_linking_needs_a_disc():
    m = load_data_movie("lemma6_3_opposite.obf")
    assert m.kind == "annulus"
    with pytest.raises(Unsupported):
        linking_with_binding(m, "C0")


def test_no_alpha_punctures():
    text = data_text("meridian.obf")
    m = parse_movie(text)
    with pytest.raises(MalformedMovie):
        braid_boundary(m, side="beta")
