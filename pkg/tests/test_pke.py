from __future__ import annotations

import random

import pytest

from liga.field import PrimeField
from liga.linalg import rank, rank_q, vec_fq_mat
from liga.params import get_params
from liga.pke import (
    DecryptionFailure, XofRandom, _sample_noise, decrypt, deserialize_ct,
    deserialize_pk, deserialize_sk, encrypt, encrypt_with_noise, keygen,
    serialize_ct, serialize_pk, serialize_sk, sizes,
)


def rand_msg(p, K, rng):
    return [K.random(rng) for _ in range(p.k - p.u)]


def test_roundtrip_and_erasure_route(desk, desk_keys):
    sk, pk, _ = desk_keys
    K = pk.tower.Fqm
    rng = random.Random(2)
    for _ in range(100):
        m = rand_msg(desk, K, rng)
        c = encrypt(m, pk, rng.randbytes(64))
        assert decrypt(c, sk, pk) == m
        assert decrypt(c, sk, pk, erasure=True) == m


def test_deterministic_from_theta(desk, desk_keys):
    _, pk, _ = desk_keys
    K = pk.tower.Fqm
    m = rand_msg(desk, K, random.Random(3))
    assert encrypt(m, pk, b"t" * 64) == encrypt(m, pk, b"t" * 64)
    assert encrypt(m, pk, b"t" * 64) != encrypt(m, pk, b"u" * 64)


def test_noise_rank_and_alpha(desk, desk_keys):
    _, pk, _ = desk_keys
    K = pk.tower.Fqm
    for i in range(50):
        alpha, e = _sample_noise(desk, pk.tower, XofRandom(bytes([i]) * 64, b"LIGA-enc"))
        assert any(alpha)
        assert rank_q(K, e) == desk.t_pub
        m = rand_msg(desk, K, random.Random(i))
        c = encrypt_with_noise(m, pk, alpha, e)
        base = encrypt_with_noise(m, pk, alpha, [0] * desk.n)
        assert rank_q(K, [a ^ b for a, b in zip(c, base)]) == desk.t_pub


def test_degenerate_alpha_zero(desk, desk_keys):
    sk, pk, _ = desk_keys
    K = pk.tower.Fqm
    m = rand_msg(desk, K, random.Random(4))
    c = pk.code.encode(m + [0] * desk.u)
    assert decrypt(c, sk, pk) == m


def test_ciphertext_decomposition(desk, desk_keys):
    # c = codeword + (error whose row space lies in that of (P^-1)_[1,w]) + e
    sk, pk, info = desk_keys
    T, K = pk.tower, pk.tower.Fqm
    rng = random.Random(5)
    m = rand_msg(desk, K, rng)
    alpha, e = _sample_noise(desk, T, rng)
    c = encrypt_with_noise(m, pk, alpha, e)
    tz = T.trace_vec(alpha, T.unfold(info.z))
    assert vec_fq_mat(K, tz, sk.P_cols) == [0] * (desk.n - desk.w)
    rest = [a ^ b ^ d for a, b, d in zip(c, tz, e)]
    tx = T.trace_vec(alpha, T.unfold(sk.x))
    assert rest == pk.code.encode([a ^ b for a, b in zip(m + [0] * desk.u, tx)])


def test_keygen_postconditions_over_many_keys(desk):
    rng = random.Random(6)
    K = None
    for _ in range(100):
        sk, pk, info = keygen(desk, rng, return_info=True)
        K = pk.tower.Fqm
        assert rank(K, info.Z) == desk.zeta
        assert all(rank_q(K, z) == desk.w for z in info.Z)
        assert rank(PrimeField(2), sk.P_cols) == desk.n - desk.w


def test_serialization_roundtrip(desk, desk_keys):
    sk, pk, _ = desk_keys
    assert deserialize_sk(desk, serialize_sk(sk)) == sk
    assert deserialize_pk(desk, serialize_pk(pk)) == pk
    c = encrypt([1] * (desk.k - desk.u), pk, b"x")
    assert deserialize_ct(desk, serialize_ct(desk, c)) == c
    assert (len(serialize_sk(sk)), len(serialize_pk(pk)), len(serialize_ct(desk, c))) == sizes(desk)


def test_serialization_rejects(desk, desk_keys):
    sk, pk, _ = desk_keys
    raw = serialize_sk(sk)
    with pytest.raises(ValueError):
        deserialize_sk(desk, raw[:-1])
    with pytest.raises(ValueError):
        deserialize_sk(desk, raw + b"\0")
    # sk is 684 bits, so the top four bits of the last byte are padding
    assert (desk.k * desk.u * desk.m + desk.n * (desk.n - desk.w)) % 8 == 4
    bad = raw[:-1] + bytes([raw[-1] | 0x80])
    with pytest.raises(ValueError):
        deserialize_sk(desk, bad)
    with pytest.raises(ValueError):
        deserialize_pk(desk, serialize_pk(pk)[:-1])


@pytest.mark.parametrize("name,want", [
    ("LIGA-128", (3795, 6348, 1058)),
    ("LIGA-192", (6450, 10800, 1800)),
    ("LIGA-256", (9805, 16428, 2738)),
])
def test_table_sizes(name, want):
    assert sizes(get_params(name)) == want


def test_liga128_roundtrip_and_sizes():
    p = get_params("LIGA-128")
    rng = random.Random(8)
    sk, pk = keygen(p, rng)
    K = pk.tower.Fqm
    m = rand_msg(p, K, rng)
    c = encrypt(m, pk, b"k" * 64)
    assert decrypt(c, sk, pk) == m
    assert (len(serialize_sk(sk)), len(serialize_pk(pk)), len(serialize_ct(p, c))) == (3795, 6348, 1058)
    assert deserialize_pk(p, serialize_pk(pk)) == pk


def test_malformed_ciphertext_signalled(desk, desk_keys):
    sk, pk, _ = desk_keys
    K = pk.tower.Fqm
    rng = random.Random(9)
    failures = 0
    for _ in range(30):
        c = [K.random(rng) for _ in range(desk.n)]
        try:
            decrypt(c, sk, pk)
        except DecryptionFailure:
            failures += 1
    assert failures > 20
