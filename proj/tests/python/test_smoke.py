import pytest

import padiq


def test_parse_render_round_trip():
    f = padiq.parse("v2(x) <= v2(y)", [2])
    assert str(f) == "v2(x) <= v2(y)"
    assert padiq.render(padiq.parse(str(f), [2])) == str(f)
    assert f.free_vars == {"x", "y"}


def test_qe_golden():
    f = padiq.parse("E x. v2(x - a) >= 1 && v2(x) >= 1", [2])
    g = padiq.qe(f)
    assert str(g) == "D2(a)"
    assert g.quantifier_free
    for a in range(-10, 11):
        assert padiq.evaluate(g, {"a": a}) == (a % 2 == 0)


def test_decide():
    assert padiq.decide(padiq.parse("E x. v2(x) >= 2 && D3(x - 1)", [2, 3]))
    assert not padiq.decide(padiq.parse("E x. D2(x) && !D2(x)", [2]))
    with pytest.raises(ValueError):
        padiq.decide(padiq.parse("v2(x) >= 1", [2]))


def test_solve():
    r = padiq.solve(padiq.parse("v2(x - 1) >= 2 && D3(x)", [2, 3]))
    assert r["sat"] and r["witness"] == 9
    assert r["modulus"] == 12
    assert not padiq.solve(padiq.parse("v2(x) >= 1 && !(v2(x) >= 2) && !(v2(x - 2) >= 2)", [2]))["sat"]


def test_subgroups():
    s = padiq.recognize_subgroup(padiq.parse("D12(x)", [2, 3]), "x", [2, 3])
    assert s["cofactor"] == 1 and s["gamma"] == {2: 2, 3: 1}
    assert padiq.recognize_subgroup(padiq.parse("D2(x - 1)", [2]), "x", [2]) is None


def test_errors():
    with pytest.raises(padiq.ParseError):
        padiq.parse("v2(x) >=", [2])
    with pytest.raises(ValueError):
        padiq.parse("v3(x) >= 1", [2])
    big = "E x. (D2(x - a) || D3(x - b)) && (D5(x - a) || D7(x - b)) && (v2(x - b) >= 1 || v3(x - a) >= 1)"
    with pytest.raises(padiq.ResourceError):
        padiq.qe(padiq.parse(big, [2, 3]), node_cap=4)


def test_fuzz_is_deterministic():
    a = padiq.fuzz_check(trials=20, seed=5)
    b = padiq.fuzz_check(trials=20, seed=5)
    assert a["summary"] == b["summary"]
    assert a["agree"] == 20
    with pytest.raises(ValueError):
        padiq.fuzz_check(trials=0)
