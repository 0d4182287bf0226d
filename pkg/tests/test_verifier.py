import json
from fractions import Fraction as F

import pytest

from ogs import claims
from ogs.errors import BadParams, UnknownClaim
from ogs.groups import Cyclic, Dihedral
from ogs.parser import parse_group_expr
from ogs.spectra import ADJACENCY, MatrixKind
from ogs.verifier import (
    FAIL,
    FINDING,
    PASS,
    CheckSpec,
    Report,
    check_paper_claim,
    cross_check,
    default_suite,
    run_suite,
)


def statuses(report):
    return {c.status for c in report.checks}


def test_cross_check_d5xd5_adjacency():
    r = cross_check(CheckSpec(group=parse_group_expr("D5 x D5"), kinds=(ADJACENCY,)))
    main = [c for c in r.checks if c.name == "cross.structural_vs_dense"]
    assert main[0].status == PASS and main[0].deviation < 1e-9


def test_cross_check_trivial_group():
    r = cross_check(CheckSpec(group=Cyclic(1)))
    assert statuses(r) == {PASS}


def test_cross_check_third_alpha():
    r = cross_check(CheckSpec(group=parse_group_expr("D3 x D3"), kinds=(MatrixKind.aalpha(F(1, 3)),)))
    assert statuses(r) == {PASS}


def test_cross_check_cap_is_reported_not_raised():
    r = cross_check(CheckSpec(group=Dihedral(20), cap=10))
    assert statuses(r) == {FAIL}
    assert "exceeds cap" in r.checks[0].details


def test_cor32_claim_pass():
    r = check_paper_claim("cor32", p=3)
    assert statuses(r) == {PASS}
    assert "1, -32, 18, 1696, 1645" in r.checks[0].details


def test_cor33_claim_pass_p5():
    assert statuses(check_paper_claim("cor33", p=5)) == {PASS}


def test_thm41cubic_half_alpha():
    r = check_paper_claim("thm41cubic", p=3, k=1, alpha=F(1, 2))
    (c,) = r.checks
    assert c.status in (PASS, FINDING)
    assert "factor=-5" in c.details
    # the printed alpha terms are not consistent with the matrix
    assert c.status == FINDING


def test_thm41cubic_alpha_zero_passes():
    (c,) = check_paper_claim("thm41cubic", p=3, k=1, alpha=0).checks
    assert c.status == PASS and "factor=-5" in c.details


@pytest.mark.parametrize("cid", claims.CLAIM_IDS)
def test_every_claim_runs(cid):
    r = check_paper_claim(cid, p=5, k=1, alpha=F(1, 4))
    assert r.checks
    assert FAIL not in statuses(r)


def test_claim_errors():
    with pytest.raises(UnknownClaim):
        check_paper_claim("thm99", p=3)
    with pytest.raises(BadParams):
        check_paper_claim("thm31", p=3)
    with pytest.raises(BadParams):
        check_paper_claim("thm41", p=3, alpha=0)
    with pytest.raises(BadParams):
        CheckSpec(group=Cyclic(3), tolerance=0)


def test_empty_suite():
    r = run_suite([])
    assert r.checks == [] and r.summary() == {"pass": 0, "fail": 0, "finding": 0}


def test_suite_isolation():
    good = CheckSpec(group=parse_group_expr("D3 x D3"), kinds=(ADJACENCY,))
    capped = CheckSpec(group=Dihedral(40), kinds=(ADJACENCY,), cap=20)
    bad_claim = CheckSpec(claim_ids=("thm31",), p=4, alpha=F(1, 2))
    alone = run_suite([good]).to_dict()["checks"]
    mixed = run_suite([capped, good, bad_claim], workers=3)
    fails = [c for c in mixed.checks if c.status == FAIL]
    assert len(fails) == 2
    assert any("exceeds cap" in c.details for c in fails)
    assert any("NotOddPrime" in c.details for c in fails)
    kept = [c.to_dict() for c in mixed.checks if c.params.get("group") == "D3 x D3"]
    strip = lambda rows: [{k: v for k, v in r.items() if k != "wall_time"} for r in rows]
    assert strip(kept) == strip(alone)


def _without_times(report: Report) -> str:
    d = report.to_dict()
    for c in d["checks"]:
        c.pop("wall_time")
    return json.dumps(d, sort_keys=True)


def test_default_suite_deterministic_and_complete():
    specs = default_suite()
    a = run_suite(specs, workers=4)
    b = run_suite(list(reversed(specs)), workers=1)
    assert _without_times(a) == _without_times(b)
    assert len(a.checks) >= 60
    assert a.summary()["fail"] == 0
    assert statuses(a) <= {PASS, FINDING}
    for cid in claims.CLAIM_IDS:
        points = {tuple(sorted(c.params.items())) for c in a.checks if c.name.startswith(cid + ".")}
        assert len(points) >= 2, cid


def test_report_json_round_trip():
    r = check_paper_claim("thm31", p=3, alpha=F(1, 2))
    d = json.loads(r.to_json())
    assert d["summary"]["pass"] == len(r.checks)
    assert {"name", "status", "deviation", "details"} <= set(d["checks"][0])
    assert d["checks"][0]["params"]["alpha"] == "1/2"
    assert F(d["checks"][0]["params"]["alpha"]) == F(1, 2)
