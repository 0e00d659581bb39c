import io

import pytest

from obf.cli import INCONCLUSIVE, OK, USAGE, VIOLATED, run


def obf(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.fixture(autouse=True)
def _mono(monkeypatch):
    monkeypatch.setenv("OBF_COLOR", "0")


def test_sl_on_a_packaged_file():
    code, out, _ = obf("sl", "fixtures/ex2_2.obf")
    assert code == OK
    assert out.splitlines()[:2] == ["sl = -3", "n = 1"]
    assert "e+=3 e-=2 h+=1 h-=3" in out


def test_sl_on_an_annulus():
    code, out, _ = obf("sl", "lemma6_3.obf")
    assert code == OK and out.startswith("sl(alpha) - sl(beta) = 2")


def test_validate_and_euler():
    assert obf("validate", "ex2_2.obf")[:2] == (OK, "valid\n")
    code, out, _ = obf("validate", "lemma6_3_planar.obf")
    assert code == VIOLATED and "EqualSignsOnPlanarPage" in out
    code, out, _ = obf("euler", "ex2_2.obf")
    assert code == OK and "V - E + R = 2" in out and out.rstrip().endswith("HOLDS")


def test_jk_counterexample():
    code, out, _ = obf("jk", "--left", "ex6_1_a.obf", "--right", "ex6_1_b.obf", "--bC", "1",
                       "--c-isotopic", "yes")
    assert code == VIOLATED
    assert out.splitlines()[0] == "VIOLATED 4 > 2"
    assert "FDTC: fails (c=-1, |c|=1)" in out


def test_jk_holds_with_override(tmp_path):
    code, out, _ = obf("jk", "--left", "meridian.obf", "--right", "meridian.obf", "--bC", "1")
    assert code == OK and out.startswith("HOLDS 0 <= 0")


def test_jk_refuses_mixed_books():
    code, _, err = obf("jk", "--left", "ex2_2.obf", "--right", "ex6_1_b.obf", "--bC", "1")
    assert code == VIOLATED and "InvalidPage" in err


def test_normalize_verbs():
    code, out, _ = obf("normalize", "lemma6_3_opposite.obf")
    assert code == OK and "kind: split-recursion" in out
    code, _, err = obf("normalize", "lemma6_3.obf")
    assert code == VIOLATED and "not planar" in err


def test_markov_verb():
    code, out, _ = obf("markov", "--a", "s1 s2 s1", "--b", "s2 s1 s2")
    assert code == OK and out.startswith("FOUND 1 moves")
    code, out, _ = obf("markov", "--a", "s1^3", "--b", "e", "--nb", "1", "--max-depth", "6")
    assert code == INCONCLUSIVE and out.startswith("NOT FOUND")


def test_fixture_verb():
    code, out, _ = obf("fixture", "--list")
    assert code == OK and "ex6_2" in out.split()
    code, out, _ = obf("fixture", "ex6_4")
    assert code == OK and "flag: fdtc-override" in out
    code, out, _ = obf("fixture", "ex2_2", "--emit")
    assert code == OK and out.startswith("obf-movie v1")
    assert obf("fixture", "nope")[0] == USAGE
    assert obf("fixture", "product", "--emit")[0] == INCONCLUSIVE


def test_render_dot_counts():
    code, out, _ = obf("render", "ex2_2.obf")
    assert code == OK
    assert out.count(" -- ") == 8
    assert out.count("shape=") == 9


def test_render_svg(tmp_path):
    target = tmp_path / "m.svg"
    code, out, _ = obf("render", "ex2_2.obf", "--format", "svg", "-o", str(target))
    assert code == OK and target.read_text().startswith("<svg")
    code, out, _ = obf("render", "ex2_2.obf", "--format", "svg", "--graph")
    assert out.count("<line") == 8 and "#f4c7c3" not in out


def test_output_is_deterministic():
    for argv in (("render", "ex6_2.obf"), ("fixture", "ex6_2"), ("euler", "ex6_2.obf")):
        assert obf(*argv) == obf(*argv)


@pytest.mark.parametrize("argv", [(), ("frobnicate",), ("sl",), ("jk", "--left", "x"),
                                  ("render", "ex2_2.obf", "--format", "png")])
def test_usage_errors(argv):
    assert obf(*argv)[0] == USAGE


def test_bad_input_files(tmp_path):
    junk = tmp_path / "junk.obf"
    junk.write_text("hello\n")
    code, _, err = obf("sl", str(junk))
    assert code == VIOLATED and "ParseError" in err
    assert obf("sl", str(tmp_path / "missing.obf"))[0] == VIOLATED
