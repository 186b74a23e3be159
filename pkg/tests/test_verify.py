from ternaryforms.forms import TernaryForm
from ternaryforms.verify import (
    IdentityReport,
    _check_weighted_identity,
    density_suites,
    verify_theorem_1_1,
    verify_theorem_1_2,
    verify_theorem_1_3,
    watson_suite,
)


def test_report_schema():
    report = verify_theorem_1_1(25)
    d = report.to_dict()
    assert set(d) == {"identity", "p", "n_max", "failures", "pass"}
    assert d["identity"] == "thm1.1"
    assert d["p"] == 3
    assert d["n_max"] == 25
    assert d["failures"] == []
    assert d["pass"] is True


def test_small_scale_identities():
    assert verify_theorem_1_1(100).passed
    assert verify_theorem_1_2(100).passed
    assert verify_theorem_1_3(3, 60).passed
    assert verify_theorem_1_3(11, 60).passed


def test_wrong_weights_are_detected():
    report = _check_weighted_identity(
        "broken",
        3,
        40,
        (
            (3, TernaryForm(1, 1, 3, 0, 0, 1)),  # weight should be 2
            (-4, TernaryForm(4, 3, 4, 0, 4, 0)),
        ),
    )
    assert not report.passed
    assert report.failures
    first = report.failures[0]
    assert first["lhs"] != first["rhs"]


def test_failing_report_is_not_pass():
    r = IdentityReport("x", None, 5, failures=[{"n": 1, "lhs": 0, "rhs": 1}])
    assert not r.passed
    assert r.to_dict()["pass"] is False


def test_density_suites_tiny():
    suites = density_suites(n_odd=12, n_dyadic=16, n_split=10, n_gamma=12, n_scale=8)
    assert set(suites) == {
        "odd-prime-closed-form",
        "dyadic-three-squares",
        "split-anisotropic-odd",
        "prime-square-scaling",
        "dyadic-difference-forms",
        "difference-kernel",
    }
    for name, failures in suites.items():
        assert failures == [], name


def test_watson_suite_small():
    result = watson_suite(primes=(3,), n_scaling=30)
    for name, failures in result.items():
        assert failures == [], name
