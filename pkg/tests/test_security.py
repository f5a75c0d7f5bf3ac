from __future__ import annotations

import json
import math
from fractions import Fraction
from pathlib import Path

import pytest

from liga.params import get_params
from liga.security import (
    list_size_worst, mrd_weight_distribution, weak_key_analysis, work_factors,
)

GOLDEN = Path(__file__).parent / "golden"
SETS = ["LIGA-128", "LIGA-192", "LIGA-256"]


@pytest.mark.parametrize("name", SETS)
def test_golden(name):
    want = json.loads((GOLDEN / f"{name}.json").read_text())
    got = json.loads(work_factors(get_params(name)).to_json())
    assert got.keys() == want.keys()
    for key, v in want.items():
        if isinstance(v, float):
            assert got[key] == pytest.approx(v, abs=1e-6), key
        else:
            assert got[key] == v, key


@pytest.mark.parametrize("name", SETS)
def test_against_direct_evaluation(name):
    # recompute the closed forms with plain floats, independent of the module
    p = get_params(name)
    q, m, n, k, u, w, z, t = p.q, p.m, p.n, p.k, p.u, p.w, p.zeta, p.t_pub
    wf = work_factors(p).wf
    phi = min(z * (n - k - w), w)
    assert wf["alpha"] == m * u
    assert wf["distinguisher"] == m * z
    assert wf["MCE"] == (n - w) * (w * (z + 1) - z * (n - k))
    assert wf["Lin"] == m * max(u * t + u + 1 - phi, (u + 2) * t + k + 1 - n)
    assert wf["GCD"] == pytest.approx(m * (u - 1) + math.log2(2 ** (t + 1) - 1))
    assert wf["CRSD"] == pytest.approx(3 * math.log2((n - k) * m) + t * math.ceil((k + 1) * m / n) - m)
    assert wf["RGD_pk"] == pytest.approx(math.log2(n / 64) + min((n - k - w) * (m - n + w), (m - w) * (n - k - w)))
    e = t if m * math.comb(n - k - 1, t) <= math.comb(n, t) else t + 1
    gr = 2.807 * (e * math.log2((m + n) * t) - math.log2(math.factorial(e)))
    assert wf["Gr"] == pytest.approx(gr)
    assert wf["ARSD"] == min(wf["Gr"], wf["Wogr"])


def test_liga128_examples():
    r = work_factors(get_params("LIGA-128"))
    assert r.wf["alpha"] == 460 and r.wf["distinguisher"] == 184
    assert r.info["gamma_spread"] == 602
    assert r.info["L_c_worst_log2"] == "n/a"
    assert r.info["overbeck_guard"] and r.info["n_p_d_p_ok"] and r.info["d_p"] == 127


@pytest.mark.parametrize("name", SETS)
def test_weak_key(name):
    p = get_params(name)
    wk = weak_key_analysis(p)
    assert wk.hypothesis_ok
    assert wk.hypothesis_log2 == pytest.approx(math.log2(p.zeta) + p.zeta * p.w - p.m)
    lo, hi = wk.domain
    assert lo <= wk.t <= hi == p.w - p.zeta + 2
    assert wk.passes
    # the threshold is the first t whose dominant term drops below 2^-lambda
    def approx(t):
        e = (t + p.t_pub - p.w + 1) * (p.n + (t - 3 * p.w - p.t_pub) / 2)
        return max(-p.m * p.zeta, math.log2(64 * min(t, p.t_pub) ** 2) - e)
    assert approx(wk.t) <= -p.lam + 1 and approx(wk.t - 1) > -p.lam - 1


def test_weak_key_example_128():
    wk = weak_key_analysis(get_params("LIGA-128"))
    assert wk.hypothesis_log2 == -37


def test_list_size_bound_divisible_case():
    # n | m and gcd(n, n - tau) >= 2: the bound is defined
    from liga.params import ParameterSet
    p = ParameterSet(2, 12, 12, 4, 2, 5, 1, 1)
    v = list_size_worst(p, 6)
    assert v is not None
    from liga.linalg import gauss_binom
    cands = [math.log2(gauss_binom(2 ** g, 12 // g, 6 // g)) - 12 * (6 // g - 1) for g in (2, 3, 6)]
    assert v == pytest.approx(max(cands))
    assert list_size_worst(p, 5) is None


def test_mrd_distribution_sums():
    for (m, n, k) in [(3, 3, 2), (4, 4, 2), (5, 4, 3)]:
        d = mrd_weight_distribution(2, m, n, k)
        assert sum(d.values()) == 2 ** (m * k)
        assert min(r for r in d if r) == n - k + 1
