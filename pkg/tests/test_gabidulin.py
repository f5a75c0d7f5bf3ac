from __future__ import annotations

import random

import pytest

from liga.field import BinaryField, OddField
from liga.gabidulin import (
    ErasureInfo, GabidulinCode, lp_compose, lp_eval, lp_interpolate,
    lp_left_divide, subspace_poly,
)
from liga.linalg import rank_q, random_full_rank


def full_rank_g(K, n, rng):
    while True:
        g = [K.random(rng) for _ in range(n)]
        if rank_q(K, g) == n:
            return g


def rank_error(K, t, n, rng):
    if t == 0:
        return [0] * n
    A = random_full_rank(K.q, K.m, t, rng)
    B = random_full_rank(K.q, t, n, rng)
    cols = [K.from_coeffs([row[l] for row in A]) for l in range(t)]
    out = [0] * n
    for l, c in enumerate(cols):
        for j in range(n):
            if B[l][j]:
                out[j] = K.add(out[j], K.mul(B[l][j], c))
    return out


@pytest.fixture(scope="module")
def code12():
    K = BinaryField(12)
    rng = random.Random(7)
    return GabidulinCode(K, full_rank_g(K, 12, rng), 4)


def test_codewords_have_minimum_distance(code12):
    rng = random.Random(1)
    K = code12.K
    for _ in range(50):
        msg = [K.random(rng) for _ in range(4)]
        if any(msg):
            assert rank_q(K, code12.encode(msg)) >= 12 - 4 + 1


@pytest.mark.parametrize("t", range(5))
def test_unique_decoding(code12, t):
    rng = random.Random(t)
    K = code12.K
    for _ in range(30):
        msg = [K.random(rng) for _ in range(4)]
        e = rank_error(K, t, 12, rng)
        r = [a ^ b for a, b in zip(code12.encode(msg), e)]
        res = code12.decode(r)
        assert res and res.msg == msg and res.error == e


def test_beyond_radius_is_signalled_or_valid(code12):
    rng = random.Random(9)
    K = code12.K
    for _ in range(30):
        msg = [K.random(rng) for _ in range(4)]
        r = [a ^ b for a, b in zip(code12.encode(msg), rank_error(K, 6, 12, rng))]
        res = code12.decode(r)
        if res:
            assert rank_q(K, res.error) <= 4
            assert code12.encode(res.msg) == res.codeword


def test_decode_rejects_bad_radius(code12):
    with pytest.raises(ValueError):
        code12.decode([0] * 12, t=5)


def test_odd_characteristic_code():
    K = OddField(3, 5)
    rng = random.Random(2)
    C = GabidulinCode(K, full_rank_g(K, 5, rng), 1)
    for _ in range(10):
        msg = [K.random(rng)]
        e = rank_error(K, 2, 5, rng)
        r = [K.add(a, b) for a, b in zip(C.encode(msg), e)]
        assert C.decode(r).msg == msg


def test_linearized_polynomials():
    K = BinaryField(10)
    rng = random.Random(4)
    xs = full_rank_g(K, 5, rng)
    ys = [K.random(rng) for _ in range(5)]
    f = lp_interpolate(K, xs, ys)
    assert [lp_eval(K, f, a) for a in xs] == ys
    S = subspace_poly(K, xs[:3])
    assert lp_eval(K, S, K.add(xs[0], xs[2])) == 0
    h = lp_compose(K, S, f)
    assert lp_left_divide(K, h, S, len(f)) == f


def _mm2(A, B):
    return [[sum(a * b for a, b in zip(r, c)) & 1 for c in zip(*B)] for r in A]


def test_error_erasure_example(code12):
    rng = random.Random(5)
    K = code12.K
    msg = [K.random(rng) for _ in range(4)]
    A_row = random_full_rank(2, 12, 2, rng)
    B_col = random_full_rank(2, 2, 12, rng)
    R = [[rng.randrange(2) for _ in range(12)] for _ in range(2)]
    Lm = [[rng.randrange(2) for _ in range(2)] for _ in range(12)]
    E = [[a ^ b for a, b in zip(x, y)] for x, y in zip(_mm2(A_row, R), _mm2(Lm, B_col))]
    e = [a ^ b for a, b in zip((K.from_coeffs(col) for col in zip(*E)), rank_error(K, 2, 12, rng))]
    r = [a ^ b for a, b in zip(code12.encode(msg), e)]
    res = code12.decode_error_erasure(r, ErasureInfo(A_row, B_col))
    assert res and res.msg == msg


def test_too_many_erasures_signalled(code12):
    rng = random.Random(6)
    B_col = random_full_rank(2, 9, 12, rng)
    res = code12.decode_error_erasure([0] * 12, ErasureInfo([], B_col))
    assert not res
