from __future__ import annotations

import random

from liga.attacks import (
    fl_keygen_original, got_attack, interleaved_attack, theorem2_probe,
    trace_rank_distribution_check,
)
from liga.linalg import rank
from liga.params import get_params
from liga.pke import decrypt, encrypt, serialize_pk, serialize_sk


def test_original_keys_are_broken():
    p = get_params("desk")
    rng = random.Random(1)
    for _ in range(5):
        sk, pk, info = fl_keygen_original(p, rng, return_info=True)
        assert rank(pk.tower.Fqm, info.Z) == p.u
        out = got_attack(pk, verify_rng=rng)
        assert out.success and out.verified and str(out) == "SUCCESS"
        # the recovered key is an alternative key: it decrypts
        m = [rng.getrandbits(24) for _ in range(p.k - p.u)]
        assert decrypt(encrypt(m, pk, b"a"), out.sk, pk) == m
        assert out.x == sk.x


def test_original_sizes_match_liga(desk, desk_keys):
    sk, pk, _ = desk_keys
    sk2, pk2 = fl_keygen_original(desk, random.Random(2))
    assert len(serialize_sk(sk)) == len(serialize_sk(sk2))
    assert len(serialize_pk(pk)) == len(serialize_pk(pk2))


def test_liga_keys_resist_when_zeta_restriction_holds():
    from liga.pke import keygen
    p = get_params("desk-got")
    rng = random.Random(3)
    need = p.w - p.zeta * (p.n - p.k - p.w)
    for _ in range(5):
        _, pk = keygen(p, rng)
        a, b = got_attack(pk), interleaved_attack(pk)
        assert not a.success and not b.success
        assert a.rank_deficit >= need and a.kernel_dim == b.kernel_dim
        assert str(a) == f"FAIL (rank deficit {a.rank_deficit})"


def test_theorem2_probe(desk_keys):
    _, pk, info = desk_keys
    p = pk.params
    a, b = theorem2_probe(pk.tower.Fqm, info.Z, p.n, p.k, p.w)
    assert a == b == info.phi


def test_trace_rank_distribution():
    em, ex, tv = trace_rank_distribution_check(trials=4000, rng=random.Random(4))
    assert tv < 0.05
    # zero codeword has probability q^{-m zeta}; every other codeword of a
    # 1-dim code spanned by a rank-3 vector has rank 3
    assert ex == {0: 1 / 64, 3: 63 / 64}
