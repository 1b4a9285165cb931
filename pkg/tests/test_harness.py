import hashlib
import json
from pathlib import Path

import jsonschema
import numpy as np
import pytest

from opholder import harness as H
from opholder.errors import FixtureError
from opholder.schema import RECORD, REPORT

FIXTURES = Path(__file__).parent / "fixtures"
SMALL = dict(dims=[1, 2], seq_lens=[1, 3], trials=6)


def small(ids, **kw):
    return H.CampaignConfig(ids, **{**SMALL, **kw})


def test_hash64_matches_sha256_prefix():
    want = int.from_bytes(hashlib.sha256(b"0:main:3").digest()[:8], "big")
    assert H.hash64(0, "main", 3) == want
    assert H.hash64(0, "main", 3) != H.hash64(0, "main", 4)


def test_registry_covers_every_id():
    assert len(H.INEQUALITY_IDS) == 20
    assert {"cs_sharp", "main", "discrete_v", "continuous_iii", "jensen_concave", "seo_ordering"} <= set(
        H.INEQUALITY_IDS)


@pytest.mark.parametrize("kw", [
    dict(inequality_ids=[]),
    dict(inequality_ids=["nope"]),
    dict(inequality_ids=["main"], trials=0),
    dict(inequality_ids=["main"], dims=[9]),
    dict(inequality_ids=["main"], seq_lens=[0]),
    dict(inequality_ids=["main"], p_values=[1.0]),
    dict(inequality_ids=["main"], seed=-1),
])
def test_config_validation(kw):
    with pytest.raises(ValueError):
        H.CampaignConfig(**kw)


def test_theta_defaults_to_reciprocal_p():
    cfg = H.CampaignConfig(["main"], p_values=[2.0, 4.0])
    assert cfg.theta_values == [0.5, 0.25]
    assert cfg.to_json()["q_values"] == [2.0, 4.0 / 3.0]


def test_grid_filters():
    cfg = small(["discrete_ii", "discrete_iii"], r_values=[1.0, 2.0], p_values=[1.5, 3.0])
    assert all(prm["r"] >= 2 for prm in H.parameter_grid("discrete_ii", cfg))
    assert all(prm["p"] >= 2 for prm in H.parameter_grid("discrete_iii", cfg))
    assert H.parameter_grid("discrete_iii", small(["discrete_iii"], p_values=[1.5])) == []


def test_grid_is_round_robin():
    cfg = small(["cs_sharp"], trials=40)
    grid = H.parameter_grid("cs_sharp", cfg)
    rep = H.run_campaign(cfg)
    used = [(r.params["d"], r.params["m"]) for r in rep.records]
    assert len(set(used)) == len(grid)
    assert used[: len(grid)] == [(g["d"], g["m"]) for g in grid]


def test_campaign_is_deterministic():
    cfg = small(["main", "jensen_convex", "discrete_v"])
    a = json.dumps(H.run_campaign(cfg).to_json(), sort_keys=True)
    b = json.dumps(H.run_campaign(cfg).to_json(), sort_keys=True)
    assert a == b
    c = json.dumps(H.run_campaign(small(["main", "jensen_convex", "discrete_v"], seed=1)).to_json())
    assert c != a


def test_seeds_follow_the_splitting_rule():
    rep = H.run_campaign(small(["weighted_cs"], seed=5))
    assert [r.seed for r in rep.records] == [H.hash64(5, "weighted_cs", k) for k in range(6)]


def test_summary_consistency():
    rep = H.run_campaign(small(list(H.INEQUALITY_IDS), trials=3))
    s = rep.summary
    assert s["total"] == len(rep.records)
    assert s["failures"] == sum(not r.passed for r in rep.records) == 0
    assert s["min_gap"] == min(r.gap for r in rep.records)
    assert sum(v["total"] for v in s["per_inequality"].values()) == s["total"]
    assert all("[" not in k for k in s["per_inequality"])


def test_records_and_report_match_schema():
    rep = H.run_campaign(small(list(H.INEQUALITY_IDS), trials=2))
    obj = json.loads(json.dumps(rep.to_json()))
    jsonschema.validate(obj, REPORT)
    for rec in obj["records"]:
        jsonschema.validate(rec, RECORD)


def test_schema_rejects_bad_record():
    rec = H.run_campaign(small(["main"], trials=1)).records[0].to_json()
    jsonschema.validate(rec, RECORD)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({**rec, "extra": 1}, RECORD)
    with pytest.raises(jsonschema.ValidationError):
        jsonschema.validate({k: v for k, v in rec.items() if k != "gap"}, RECORD)


@pytest.mark.parametrize("ident", H.INEQUALITY_IDS)
def test_instance_roundtrip_replays(ident):
    cfg = small([ident], p_values=[3.0], r_values=[2.0])
    prm = H.parameter_grid(ident, cfg)[0]
    rec, inputs = H.run_trial(ident, prm, 11, cfg.tolerance)
    obj = json.loads(json.dumps(H.instance_to_json(ident, inputs, prm, cfg.tolerance, rec)))
    res = H.replay(obj)
    assert res.matches and res.record.gap == pytest.approx(rec.gap, abs=1e-12)


@pytest.mark.parametrize("path", sorted(FIXTURES.glob("*.json")), ids=lambda p: p.stem)
def test_golden_fixtures_replay(path):
    res = H.replay(path)
    assert res.matches and res.record.passed


def test_equality_fixture_has_zero_gap():
    res = H.replay(FIXTURES / "main_scalar_equality.json")
    assert abs(res.record.gap) <= 1e-9


def test_tampered_fixture_does_not_match():
    obj = H.load_fixture(FIXTURES / "cs_sharp_random.json")
    obj["expected"]["gap"] += 1e-3
    assert not H.replay(obj).matches


def test_truncated_fixture_reports_position(tmp_path):
    text = (FIXTURES / "main_random.json").read_text()
    bad = tmp_path / "bad.json"
    bad.write_text(text[: len(text) // 2])
    with pytest.raises(FixtureError) as info:
        H.replay(bad)
    assert info.value.location.startswith(f"{bad}:")


@pytest.mark.parametrize("mutate, where", [
    (lambda o: o.update(inequality_id="nope"), "$.inequality_id"),
    (lambda o: o.pop("inputs"), "$.inputs"),
    (lambda o: o["inputs"].pop(next(iter(o["inputs"]))), "$.inputs"),
    (lambda o: o.update(expected={"gap": 0.0}), "$.expected"),
])
def test_malformed_fixture_locations(mutate, where):
    obj = H.load_fixture(FIXTURES / "main_random.json")
    mutate(obj)
    with pytest.raises(FixtureError) as info:
        H.replay(obj)
    assert info.value.location.startswith(where)


def test_bad_matrix_entry_location():
    obj = H.load_fixture(FIXTURES / "cs_sharp_random.json")
    key = next(iter(obj["inputs"]))
    obj["inputs"][key] = "not a matrix"
    with pytest.raises(FixtureError) as info:
        H.replay(obj)
    assert info.value.location.startswith(f"$.inputs.{key}")


def test_value_fixture_checks_shape_and_operation():
    obj = H.load_fixture(FIXTURES / "gm_2x2.json")
    obj["expected"]["value"] = {"dim": 1, "entries": [[1.0, 0.0]]}
    with pytest.raises(FixtureError):
        H.replay(obj)
    obj["operation"] = "logm"
    with pytest.raises(FixtureError):
        H.replay(obj)


def test_parallel_matches_serial():
    cfg = small(["main", "superadditivity"], trials=8)
    a = H.run_campaign(cfg).to_json()
    b = H.run_campaign(cfg, jobs=2).to_json()
    assert json.dumps(a) == json.dumps(b)
    assert np.isfinite(a["summary"]["min_gap"])
