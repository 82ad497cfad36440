import json
import os
from pathlib import Path

import pytest

import skewps

FIXTURES = Path(os.environ.get("SKEWPS_FIXTURE_DIR", Path(__file__).resolve().parents[2] / "fixtures"))


def test_list_suites():
    ids = [s for s, _ in skewps.list_suites()]
    assert "sfoh-pipeline" in ids
    assert len(ids) == len(set(ids))


def test_verify_frobenius_fixture():
    rep = skewps.verify_report(FIXTURES / "frobenius-f4.toml")
    assert rep["pass"] is True
    assert [r["suite"] for r in rep["records"]] == sorted(r["suite"] for r in rep["records"])


def test_reports_are_deterministic():
    a = skewps.verify(str(FIXTURES / "fd-lemmas.toml"))
    b = skewps.verify(str(FIXTURES / "fd-lemmas.toml"))
    assert a == b


def test_pipeline_and_decompose():
    out = json.loads(skewps.pipeline_sfoh(str(FIXTURES / "f4-ramified.toml")))
    assert out["ok"] is True
    dec = json.loads(skewps.decompose(str(FIXTURES / "iwasawa-f4.toml"), 1))
    assert dec["roundtrip_exact"] is True


def test_config_error(tmp_path):
    bad = tmp_path / "bad.toml"
    bad.write_text("[instance]\np = 4\n")
    with pytest.raises(skewps.ConfigError, match="p not prime"):
        skewps.verify(str(bad))


def test_group_algebra():
    R = skewps.GroupAlgebra(2, 1)
    assert R.dim == 2
    assert not R.is_prime()
    assert R.nilradical_dim() == 1
    assert R.central_minimal() == "1 + g"
    assert skewps.is_prime(2, 2, 1, 1, 1)
