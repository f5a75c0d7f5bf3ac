from __future__ import annotations

import dataclasses
import json

import pytest

from liga.params import REGISTRY_ENV, get_params, load_registry, parse_tuple, validate_params


@pytest.mark.parametrize("name,t", [("LIGA-128", 6), ("LIGA-192", 8), ("LIGA-256", 10)])
def test_table_sets_valid(name, t):
    p = get_params(name)
    assert p.t_pub == t == (p.n - p.k - p.w) // 2
    v = validate_params(p)
    assert v.ok and not v.notes


def test_lowered_w_reports_floor():
    p = dataclasses.replace(get_params("LIGA-128"), w=13)
    v = validate_params(p)
    assert any("floor((n-k)/2)+1 = 20" in s for s in v.violations)
    # all violations are reported, not just the first
    assert len(v.violations) >= 3


def test_desk_is_correctness_only():
    v = validate_params(get_params("desk"))
    assert v.correctness_ok and not v.security_ok
    assert any("zeta < w/(n-k-w)" in s for s in v.security)


def test_parse_tuple():
    p = parse_tuple("2,24,20,8,2,5,1")
    assert p.t_pub == 3
    assert p == get_params("desk")
    with pytest.raises(ValueError):
        parse_tuple("2,3")


def test_registry_override(tmp_path, monkeypatch):
    path = tmp_path / "reg.json"
    path.write_text(json.dumps({"tiny": {"q": 2, "m": 12, "n": 12, "k": 4, "u": 2, "w": 5, "zeta": 1}}))
    monkeypatch.setenv(REGISTRY_ENV, str(path))
    reg = load_registry()
    assert list(reg) == ["tiny"] and reg["tiny"].t_pub == 1
