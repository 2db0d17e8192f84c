"""End-to-end smoke tests for the python bindings and the CLI binary."""

import json
import os
import subprocess
from fractions import Fraction

import pytest

import mvmom


def test_symbolic_moment_text():
    assert mvmom.moment([3, 3]) == "6*c12^3 + 9*c12"
    assert mvmom.moment([1, 1, 2]) == "c12 + 2*c13*c23"
    assert mvmom.moment([1, 2]) == "0"


def test_engines_agree_numeric():
    cov = ["1/2", "1/3", "1/4"]
    results = {e: mvmom.moment([4, 6, 2], cov, engine=e) for e in ("wick", "stein", "pure")}
    assert len(set(results.values())) == 1
    assert mvmom.moment_fraction([4, 6, 2], cov) == Fraction(results["wick"])


def test_moment_info_pure_metadata(tmp_path):
    info = mvmom.moment_info([40, 2], cov=["1/3"], cache_dir=str(tmp_path))
    assert info["engine"] == "pure"
    assert not info["fallback_used"]
    assert info["recurrence_order"] >= 1
    assert Fraction(info["result"]) == mvmom.moment_fraction([40, 2], ["1/3"], engine="wick")


def test_univariate_and_marriages():
    assert mvmom.univariate_moment(8) == 105
    assert mvmom.univariate_moment(7) == 0
    assert mvmom.count_marriages([2, 2], [2]) == 2
    assert (
        mvmom.count_marriages([20, 20, 20], [9, 7, 5])
        == 444975998773143505634352562176000000000
    )
    # The cross counts tile the full pairing count.
    total = sum(mvmom.count_marriages([4, 4], [a]) for a in range(5))
    assert total == 105  # (8-1)!!


def test_marriage_polynomial_matches_moment():
    assert mvmom.marriage_polynomial([3, 3]) == mvmom.moment([3, 3])
    assert mvmom.poly_coeff(mvmom.marriage_polynomial([4, 4]), {"c12": 2}) == "72"


def test_poly_eval():
    assert Fraction(mvmom.poly_eval("6*c12^3 + 9*c12", {"c12": "1/2"})) == Fraction(21, 4)


def test_discover_shape():
    rec = mvmom.discover(2, 1, [4])
    assert rec["order"] >= 1
    assert rec["direction"] == 1
    parsed = json.loads(rec["json"])
    assert parsed["order"] == rec["order"]
    with pytest.raises(mvmom.NotFoundError):
        mvmom.discover(2, 1, [4], max_order=0)


def test_cli_binary_agrees():
    cli = os.environ.get("MVMOM_CLI")
    if not cli:
        pytest.skip("MVMOM_CLI not set")
    out = subprocess.run(
        [cli, "moment", "--k", "2", "--m", "3,3", "--format", "json"],
        capture_output=True,
        text=True,
        check=True,
    )
    payload = json.loads(out.stdout)
    assert payload["result"] == mvmom.moment([3, 3])
