import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from walk_kernel.arith import Rat
from walk_kernel.model import (
    COMPASS,
    STEPS,
    ModelError,
    StepWeights,
    assumptions,
    builtin_model,
    check_a1,
    check_a2,
    in_upper_antidiagonal_halfplane,
    load_model,
    phi_transform,
)

step_sets = st.sets(st.sampled_from(STEPS), min_size=1)


def test_uniform_normalizes():
    w = StepWeights.uniform(["N", "S", "E", "W", "NE"])
    assert all(w[COMPASS[s]] == Rat(1, 5) for s in ("N", "S", "E", "W", "NE"))
    assert w.is_unweighted()


@pytest.mark.parametrize(
    "d, msg",
    [
        ({(1, 0): Rat(1, 2)}, "sum"),
        ({(2, 0): Rat(1)}, "small step"),
        ({(1, 0): Rat(3, 2), (0, 1): Rat(-1, 2)}, "outside"),
    ],
)
def test_validation(d, msg):
    with pytest.raises(ModelError, match=msg):
        StepWeights(d)


def test_a1():
    assert check_a1(builtin_model("simple-ne"))
    assert not check_a1(StepWeights.uniform(["N", "E", "SE", "NW"]))
    # symmetric but with anti-diagonal steps
    assert not check_a1(StepWeights.uniform(["N", "S", "E", "W", "NW", "SE"]))
    assert not check_a1(StepWeights.uniform(["N", "NE", "SW", "W"]))


def test_a2_half_planes():
    assert check_a2(builtin_model("simple-ne"))
    assert not check_a2(StepWeights.uniform(["NW", "N", "NE", "E", "SE"]))
    assert not check_a2(StepWeights.uniform(["NE", "SW"]))
    assert not check_a2(StepWeights.uniform(["N", "S", "E"]))


@given(step_sets)
def test_a2_invariant_under_reflection(steps):
    w = StepWeights.uniform(steps)
    assert check_a2(w) == check_a2(w.reflect())


def test_rational_half_plane():
    assert in_upper_antidiagonal_halfplane(StepWeights.uniform(["N", "E", "NW", "SE"]))
    assert not in_upper_antidiagonal_halfplane(builtin_model("simple"))


def test_assumption_diagnostic():
    rep = assumptions(StepWeights.uniform(["N", "E", "NE", "SE"]))
    assert not rep.a1 and not rep.a2
    assert "anti-diagonal" in rep.diagnostic


def test_phi_table_simple_ne():
    phi = phi_transform(builtin_model("simple-ne"))
    expected = {(0, 1), (1, 1), (-1, 0), (1, 0), (-1, -1)}
    assert phi.support == expected
    assert all(phi[s] == Rat(1, 5) for s in expected)


def test_phi_example_47_weights():
    lam = Rat(1, 3)
    mu = (1 - lam) / 4
    phi = phi_transform(builtin_model("example-4.7:1/3"))
    assert phi[(0, 1)] == lam
    for s in [(-1, 0), (1, 1), (1, 0), (-1, -1)]:
        assert phi[s] == mu


def test_phi_simple_sw():
    phi = phi_transform(builtin_model("simple-sw"))
    assert phi.support == {COMPASS[s] for s in ("E", "W", "SW", "S", "NE")}


@given(step_sets)
def test_phi_properties(steps):
    w = StepWeights.uniform(steps)
    if not check_a1(w):
        with pytest.raises(ModelError, match="large step"):
            phi_transform(w)
        return
    phi = phi_transform(w)
    assert sum(phi.d.values()) == 1
    assert phi[(-1, 1)] == 0 and phi[(1, -1)] == 0


def test_builtins():
    assert builtin_model("example-4.10")[(-1, -1)] == Rat(1, 3)
    w = builtin_model("example-4.14")
    assert w[(1, 0)] == w[(0, 1)] == w[(1, 1)] == Rat(1, 5) and w[(-1, -1)] == Rat(2, 5)
    assert builtin_model("example-4.7(1/3)") == builtin_model("example-4.7:1/3")
    with pytest.raises(ModelError):
        builtin_model("nope")
    with pytest.raises(ModelError):
        builtin_model("simple:1/2")


def test_json_round_trip(tmp_path):
    w = builtin_model("example-4.10")
    path = tmp_path / "m.json"
    path.write_text(json.dumps(w.to_json()))
    assert load_model(str(path)) == w
    assert w.to_json()["d"]["-1,-1"] == "1/3"


def test_json_rejects_floats():
    with pytest.raises(ModelError):
        StepWeights.from_json({"d": {"1,0": 0.5, "-1,0": "1/2"}})
