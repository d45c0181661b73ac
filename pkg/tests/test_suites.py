import pytest

from serrekit.suites import SUITES, SuiteError, calibrate_s0, calibrate_t0, verify_suite


def test_calibration_constants():
    assert calibrate_s0() == -2
    assert calibrate_t0() == -2


def test_serre_duality_report_shape():
    rep = verify_suite("serre-duality", "a2", 42, 50)
    data = rep.to_json()
    assert data["pass"] and data["seed"] == 42 and data["version"]
    assert len(data["cases"]) >= 50
    assert {"description", "lhs", "rhs", "pass"} <= set(data["cases"][0])


def test_final_diagram_reports_s0():
    rep = verify_suite("final-diagram", "a3", 7, 20)
    assert rep.passed and rep.constants == {"s0": -2}
    certified = [c for c in rep.cases if "~" in c["description"]]
    assert len(certified) == 3 and all("certificate" in c for c in certified)


def test_reports_are_deterministic():
    a = verify_suite("phi-duality", "n3", 3, 10).to_json()
    b = verify_suite("phi-duality", "n3", 3, 10).to_json()
    a.pop("elapsed_ms"), b.pop("elapsed_ms")
    assert a == b


@pytest.mark.parametrize("suite", SUITES)
def test_every_suite_passes_on_a2(suite):
    assert verify_suite(suite, "a2", 0, 10).passed


def test_unknown_suite():
    with pytest.raises(SuiteError):
        verify_suite("bogus", "a2", 0, 0)


def test_prime_field_dimension_suites():
    from serrekit.catalog import CATALOG
    from serrekit.pathalg import load_algebra

    A = load_algebra(dict(CATALOG["n3"], field={"kind": "prime", "p": 5}), name="n3-mod5")
    for suite in ("serre-duality", "phi-duality", "d-duality", "lambda-embedding"):
        assert verify_suite(suite, A, 1, 10).passed
