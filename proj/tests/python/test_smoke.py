"""Smoke tests for the python bindings: a thin pass over each exposed surface."""

import math

import pytest

import equiaudit as ea


def test_fig3_bound_is_exact():
    gen = ea.gen_fig3()
    domain = gen["domain"]
    assert gen["closed_form_bound"] == 0.3
    assert ea.classification_bound(domain) == 0.3
    report = ea.bound_report(domain, "cls")
    assert report["total"] == 0.3
    assert report["orbits"][0]["dissent"] == 0.3


def test_audit_measures():
    domain = ea.gen_swiss_roll(c=0.0, i=0.0, e=1.0, n=16, seed=0)["domain"]
    measures = ea.audit(domain)["measures"]
    assert measures["extrinsic"] == pytest.approx(0.5, abs=1e-12)
    assert measures["undefined"] == 0.0


def test_square_closed_form():
    gen = ea.gen_square(c=0.2, m=0.4, grid=50)
    assert abs(ea.classification_bound(gen["domain"]) - gen["closed_form_bound"]) <= 2.0 / 50


def test_regression_verify_is_tight():
    domain = ea.gen_c4_regression(seed=7, n_theta=5)["domain"]
    results = ea.verify(domain)
    for row in results.values():
        assert row["empirical"] == pytest.approx(row["bound"], rel=1e-9)
    assert ea.invariant_regression_bound_value(domain) == results["invariant_regression"]["bound"]
    assert ea.equivariant_orthogonal_bound_value(domain) == pytest.approx(
        ea.equivariant_regression_bound_value(domain), abs=1e-9
    )


def test_label_merge_and_rademacher():
    digits = ea.gen_label_merge(classes=10, merge_pairs=[(6, 9)])
    assert ea.classification_bound(digits["domain"]) == 0.1

    rad = ea.rademacher_xor()
    assert rad["unconstrained"]["accuracy"] == "1"
    assert rad["invariant"]["accuracy"] == "31/32"
    assert rad["invariant"]["correlation"] == "15/16"
    assert not rad["invariant"]["conventions_agree"]


def test_json_round_trip(tmp_path):
    gen = ea.gen_fig3()
    path = tmp_path / "fig3.json"
    ea.save_domain(gen["domain"], str(path))
    loaded = ea.load_domain(str(path))
    assert loaded.n_points == 4
    assert loaded.group_order == 2
    assert loaded.target_kind == "labels"
    assert ea.classification_bound(loaded) == 0.3
    # byte-identical re-serialization
    assert loaded.to_json() == path.read_text()


def test_cli_entry_point(tmp_path):
    spec = tmp_path / "merge.json"
    assert ea.cli_run(["generate", "labelmerge", "--classes", "10", "--merge", "6:9",
                       "--out", str(spec)]) == 0
    assert ea.cli_run(["verify", str(spec)]) == 0
    assert ea.cli_run(["bound", str(spec), "--method", "equi-reg"]) == 2  # labels, not vectors
