import pytest

import jetlc


def test_omega_at_normal_point():
    out = jetlc.eval_form("omega", {"dimension": 2}, [{"y11": "1"}])
    assert [[jetlc.fraction(v) for v in row] for row in out["value"]] == [[0.5, 0], [0, 0]]


def test_p1_witness_is_nonzero():
    vectors = [{"x1": "1"}, {"x2": "1"}, {"y11,2": "1"}, {"y12,2": "1"}]
    out = jetlc.eval_form("p_1", {"dimension": 2}, vectors)
    assert out["value"] == out["brute_force"] == "-1/2"


def test_invariants_dimension_two():
    out = jetlc.invariants(3)
    assert out["invariants"]["invariant_dimension"] == 2
    assert out["basis_match"]["ok"]


def test_small_verify_passes():
    report = jetlc.verify({"dimensions": [2], "invariants": False, "health": False, "seed": 3})
    assert report["status"] == "pass"
    assert report["checks"]


def test_errors_are_value_errors():
    with pytest.raises(ValueError):
        jetlc.eval_form("zeta", {"dimension": 2}, [])
    with pytest.raises(ValueError):
        jetlc.verify({"dimensions": [9]})
    with pytest.raises(ValueError):
        jetlc.invariants(3, "U")
