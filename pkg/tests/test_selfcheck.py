from dfmat.selfcheck import CHECKS, FAIL, KNOWN, PASS, Check, format_table, run_selfcheck


def test_fresh_build_passes():
    results = run_selfcheck()
    assert len(results) == len(CHECKS)
    assert not [r for r in results if r.status == FAIL]
    for r, c in zip(results, CHECKS):
        if not c.known:
            assert r.status == PASS, r


def test_known_non_identities_are_reported():
    results = {r.name: r for r in run_selfcheck(samples=20)}
    assert results["ad homomorphism"].status == KNOWN
    assert results["Killing closed form vs small-ad STP"].status == KNOWN


def test_seed_is_reproducible():
    a = format_table(run_selfcheck(seed=7, samples=4))
    b = format_table(run_selfcheck(seed=7, samples=4))
    assert a == b


def test_failures_and_exceptions_are_caught():
    checks = [
        Check("always fails", lambda rng, n, tol: "counterexample"),
        Check("raises", lambda rng, n, tol: 1 / 0),
        Check("known", lambda rng, n, tol: "expected", known=True),
        Check("ok", lambda rng, n, tol: None),
    ]
    results = run_selfcheck(checks=checks)
    assert [r.status for r in results] == [FAIL, FAIL, KNOWN, PASS]
    assert "ZeroDivisionError" in results[1].detail
    assert format_table(results).splitlines()[-1] == "1 passed, 2 failed, 1 known non-identities"


def test_tolerance_reaches_float_suite():
    # An absurdly tight tolerance makes the float exp comparison fail.
    results = {r.name: r.status for r in run_selfcheck(samples=3, tol=0.0)}
    assert results["class exp lift independent"] == FAIL
