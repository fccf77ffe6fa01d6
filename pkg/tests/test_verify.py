import json

import pytest

from orbitkit import verify


@pytest.fixture(scope="module")
def report():
    return verify.run(seed=0)


def test_default_run_has_no_failures(report):
    assert report.exit_code == 0
    assert not [n for n, c in report.checks.items() if c.status == "fail"]


def test_only_published_form_comparisons_are_flagged(report):
    flagged = {n for n, c in report.checks.items() if c.status == "flagged"}
    assert all(n.startswith("finding.") or n == "charts.bracket_tables" for n in flagged)
    assert "finding.printed_action.galilei_ext" not in flagged


def test_names_are_unique_and_cover_every_module():
    names = verify.check_names()
    assert len(names) == len(set(names))
    for prefix in ("lie.", "groups.", "coadjoint.", "charts.", "reps.", "cli."):
        assert any(n.startswith(prefix) for n in names)


def test_report_serialization(report):
    doc = json.loads(report.dumps())
    assert doc["schema"] == 1
    assert doc["environment"]["seed"] == 0
    assert set(doc["summary"]) == {"pass", "fail", "flagged"}
    for entry in doc["checks"].values():
        assert set(entry) == {"status", "max_residual", "tolerance", "notes"}


def test_bracket_table_flag_names_the_entry(report):
    c = report.checks["charts.bracket_tables"]
    assert c.status == "flagged"
    assert "poincare_maxwell:{p1,p2}" in c.notes


def test_closed_forms_used_by_motion_finding():
    from orbitkit.charts import make_chart

    ch = make_chart("galilei_maxwell_ext", verify.CHART_LABELS["galilei_maxwell_ext"])
    y = verify.closed_form(ch, [1, 0, 0, 1, 0, 0], [2.0])
    assert y[0].tolist() == [1, 0, -2, 1, -2, 2]


def test_unknown_fault():
    with pytest.raises(ValueError):
        verify.run(fault="gremlin")


def test_seed_changes_samples_not_statuses():
    a = verify.run(seed=1, filter="coadjoint.invariance")
    b = verify.run(seed=2, filter="coadjoint.invariance")
    assert a.checks["coadjoint.invariance"].status == b.checks["coadjoint.invariance"].status == "pass"
    assert a.checks["coadjoint.invariance"].max_residual != b.checks["coadjoint.invariance"].max_residual
