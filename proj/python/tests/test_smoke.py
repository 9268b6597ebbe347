import cmath
import json
import math
import os

import pytest

import fockde

DATA = os.environ.get("FOCKDE_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "tests", "data"))


def test_weights():
    w = fockde.WeightProfile.power(3)
    assert fockde.laplacian_radial(w, 2.0) == pytest.approx(18.0, rel=1e-15)
    assert fockde.tau(w, 4.0, 1.0) == pytest.approx(1 / 6, rel=1e-15)
    assert fockde.classify_weight(w)["class_I"] is True
    assert fockde.weight({"kind": "classical"}).label == fockde.WeightProfile.classical_gaussian().label


def test_functions():
    cos = fockde.function({"type": "named", "name": "cos"})
    assert abs(cos(math.pi) + 1) < 1e-15
    p = fockde.EntireFunction.polynomial([0, 0, 1])
    assert p(1 + 1j) == 2j
    assert abs(cos.derivative(2)(0.3) + math.cos(0.3)) < 1e-15


def test_norm_of_z():
    r = fockde.weighted_norm(fockde.function({"type": "poly", "coeffs": [0, 1]}))
    assert r["in_space"] is True
    assert abs(r["value"] - math.sqrt(math.pi)) < 1e-10


def test_kernel():
    b = fockde.KernelBasis(fockde.WeightProfile.classical_gaussian(), 40)
    assert b.delta_sq(10) == pytest.approx(math.pi * math.factorial(10), rel=1e-9)
    z, w = 0.3 + 0.4j, -1.1 + 0.2j
    assert abs(b(z, w) - cmath.exp(z * w.conjugate()) / math.pi) < 1e-12
    rep, ref, err, ok = fockde.reproduce_check(b, fockde.EntireFunction.polynomial([0, 0, 1]), 1 + 1j)
    assert ok and err < 1e-6


def test_ode():
    problem = {"order": 2, "initial": [1, 0], "coefficients": [{"type": "named", "name": "constant", "c": 1}, {"type": "zero"}]}
    a = fockde.taylor_solution(problem, 10)
    assert a[2] == pytest.approx(-0.5)
    vals, blowup = fockde.ray_values(problem, 0.0, [math.pi])
    assert not blowup
    assert abs(vals[-1] + 1) < 1e-8


def test_sup_ratio():
    value, at_inf, degree_flag = fockde.sup_ratio(fockde.EntireFunction.polynomial([0, 0, 0, 1]), 2)
    assert math.isinf(value) and degree_flag


def test_schema_error():
    with pytest.raises(fockde.SchemaError):
        fockde.weight({"kind": "power"})


def test_cli():
    code, out, err = fockde.run_cli("norm", "--function", os.path.join(DATA, "z.json"))
    assert code == 0, err
    assert abs(json.loads(out)["result"]["value"] - math.sqrt(math.pi)) < 1e-10
    code, out, err = fockde.run_cli("check", "--theorem", "T1.1", "--problem", os.path.join(DATA, "bad_coefficient.json"))
    assert code == 1
    assert "$.coefficients[1].coeffs" in err
    assert "ode.oracle_agreement" in fockde.battery_case_names()
