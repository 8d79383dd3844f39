"""Smoke tests for the python bindings: every exposed operation once."""

import pytest

import lampi


def test_parse_print_round_trip():
    assert lampi.parse_term("\\x. x") == "\\x. x"
    assert lampi.parse_term("(x y) z") == "x y z"
    assert lampi.parse_process("new x. (x<@a> | 0)") == "new x. (x<@a> | 0)"
    with pytest.raises(lampi.ParseError):
        lampi.parse_term("(x")
    with pytest.raises(lampi.ParseError):
        lampi.parse_process("!x(y,z). 0")


def test_vker_shape_is_validated():
    assert lampi.trace_cbv("(\\x.x) (y y)") != []
    with pytest.raises(lampi.VkerShapeError):
        lampi.trace_cbv("(x y) z")


def test_free_variables_and_alpha():
    assert lampi.free_vars("x[x/y]") == ["y"]
    assert lampi.alpha_eq("\\x.x", "\\y.y")
    assert not lampi.alpha_eq("x", "y")
    assert lampi.alpha_eq_process("new x. x<@a>", "new y. y<@a>")
    assert lampi.unfold("x[x/y]") == "y"


def test_cbn_trace():
    steps = lampi.trace_cbn("(\\x.x) y", fuel=10)
    assert [label for label, _ in steps] == ["db", "ls"]
    assert lampi.alpha_eq(steps[-1][1], "y[x/y]")


def test_cbv_trace():
    steps = lampi.trace_cbv("(\\y.y) z", fuel=10)
    assert [label for label, _ in steps] == ["vdb"]
    assert lampi.alpha_eq(steps[0][1], "y[y/z]")


def test_encodings():
    assert lampi.encode_cbn("x") == "x<@a>"
    assert lampi.alpha_eq_process(lampi.encode_cbn("\\x. x"), "@a(x,@b). x<@b>")
    assert lampi.alpha_eq_process(lampi.encode_cbv("y"), "!z1(@b1). y<@b1>")


def test_pi_successors_and_congruence():
    succ = lampi.pi_successors("x<@a> | !x(@b). y<@b>")
    assert len(succ) == 1
    kind, proc = succ[0]
    assert kind == "bang"
    assert lampi.congruent(proc, "y<@a> | !x(@b). y<@b>")
    assert lampi.congruent("p<@a> | 0", "p<@a>")
    assert not lampi.congruent("x(y,z). (p<@a> | 0)", "x(y,z). p<@a>")
    assert lampi.canonicalize("new x. 0") == "0"


def test_harmony():
    report = lampi.harmony_check("x<@a> | !x(@b). y<@b>", depth=4)
    assert report["ok"]
    assert report["distance_bang"] == 1


def test_bisim_game():
    report = lampi.bisim_game("(\\x.x) y", mode="cbn", fuel=20)
    assert report["ok"]
    assert report["rounds"] == 2
    report = lampi.bisim_game("((\\x.x) (y y))[y/z]", mode="cbv", fuel=20)
    assert report["ok"]


def test_enumeration_and_random():
    assert lampi.enumerate_terms(2, "lsub", True) == ["\\b1. b1"]
    assert len(lampi.enumerate_terms(4, "vker", True)) == 7
    a = lampi.random_term(8, seed=42, mode="lsub", closed=True)
    b = lampi.random_term(8, seed=42, mode="lsub", closed=True)
    assert a == b


def test_suite_runner():
    result = lampi.run_suite("determinism", max_size=5)
    assert result["pass"]
    assert result["checked"] == 40  # closed lsub terms up to size 5


def test_quadratic():
    report = lampi.quadratic_experiment(fuel=600)
    assert report["pass"]
    assert "term,n,m,d,terminated" in report["csv"]
