import json

import pytest

import pibase
from pibase import FiniteSpace, Ordinal, Pattern


def test_ordinals():
    a = Ordinal("w1*2+w")
    assert str(a) == "w1*2 + w"
    assert Ordinal("w") < Ordinal("w+1")
    assert Ordinal(1) + Ordinal("w") == Ordinal("w")
    assert str(Ordinal("w1") * Ordinal("w*2+3")) == "w^(w1 + 1)*2 + w1*3"
    assert pibase.compare("w1*w", "w1^2") == "LT"
    assert pibase.div_by_cardinal("w1+w^2", 0) == (Ordinal("w1+w"), Ordinal(0))
    assert Ordinal("w1*w").cofinality() == Ordinal("w")
    with pytest.raises(pibase.ParseError):
        Ordinal("w+")
    with pytest.raises(ValueError):
        pibase.sub_left("w+1", "w")


def test_sigma():
    assert pibase.sigma_eval("w") == Ordinal("w^2")
    alphas, rest, text = pibase.sigma_nf("w1+w*3+5")
    assert alphas == [Ordinal("w1"), Ordinal(3)]
    assert rest == Ordinal(5)
    assert text == "sigma(w1) + sigma(3) + 5"
    assert pibase.gamma("w1+w*3+5") == Ordinal("w1")
    assert pibase.delta_prime("w^2") == Ordinal("w^2+w")


def test_pairing_and_fdelta():
    c = pibase.pair("w*2+1", 5)
    assert pibase.unpair(c) == (Ordinal("w*2+1"), Ordinal(5))
    assert pibase.pair(3, 4) < Ordinal("w")
    A = Pattern("(3,0)")
    xi = pibase.f_delta_witness("w^2", A)
    assert pibase.f_delta("w^2", xi) == A
    assert xi > Ordinal(3)


def test_phi():
    assert len(pibase.phi_eval(5)) == 0
    A = Pattern("(3,0);(w*2,1)")
    xi = pibase.phi_witness("w^2", A)
    assert xi < Ordinal("w^2")
    assert pibase.phi_eval(xi) == A
    assert str(pibase.phi_eval(xi)) == "{(3,0),(w*2,1)}"
    report = pibase.phi_check_condition2("w1+w^2", samples=30)
    assert report["ok"] and report["passed"] == 30


def test_topology():
    s = FiniteSpace.from_json(json.dumps({"points": ["a", "b"], "opens": [[], ["a"], ["a", "b"]]}))
    inv = pibase.invariants(s)
    assert inv["F"]["value"] == 1
    assert inv["d"]["value"] == 1
    assert not s.is_regular()
    assert not pibase.is_free_sequence(s, ["b", "a"])
    assert len(pibase.enumerate_topologies(4)) == 355
    assert pibase.min_pibase_order(FiniteSpace.discrete(3))[0] == 1
    assert pibase.lemma24_bruteforce(3)["extract_failures"] == 0


def test_builder():
    out = pibase.check_prefix("rationals", steps=40)
    assert out["report"]["a"]["status"] == "pass"
    assert out["report"]["b"]["status"] == "pass"
    assert out["report"]["c"]["status"] == "vacuous"
    bad = pibase.check_finite(FiniteSpace.discrete(3), steps=3, inject_b=True)
    assert bad["report"]["b"]["status"] == "fail"
    with pytest.raises(ValueError):
        pibase.check_finite(FiniteSpace.sierpinski(), steps=1)


def test_cli_in_process():
    code, out, err = pibase.run_cli(["sigma", "nf", "--kappa", "0", "w1+w*3+5"])
    assert code == 0
    assert out == "sigma(w1) + sigma(3) + 5\n"
    code, out, _ = pibase.run_cli(["--format", "json", "phi", "check2", "--delta", "w", "--samples", "20"])
    assert code == 0
    assert json.loads(out)["schema"] == "pibase.phi.check2/1"
    assert pibase.run_cli(["nonsense"])[0] == 2
