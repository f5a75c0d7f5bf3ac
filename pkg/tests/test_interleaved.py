from __future__ import annotations

import random

from liga.field import BinaryField
from liga.gabidulin import GabidulinCode
from liga.interleaved import (
    InterleavedCode, failure_rank, fq_rank_rows, got_stack, ztilde_stack,
)
from liga.linalg import rank, random_full_rank, rank_q


def setup(seed=2):
    rng = random.Random(seed)
    K = BinaryField(12)
    while True:
        g = [K.random(rng) for _ in range(12)]
        if rank_q(K, g) == 12:
            break
    return K, GabidulinCode(K, g, 4), rng


def common_error(K, u, w, n, rng):
    B = random_full_rank(2, w, n, rng)
    rows = []
    for _ in range(u):
        A = random_full_rank(2, K.m, w, rng)
        M = [[sum(a * b for a, b in zip(r, c)) & 1 for c in zip(*B)] for r in A]
        rows.append([K.from_coeffs(col) for col in zip(*M)])
    return rows


def test_interleaved_decoding_beyond_half_distance():
    K, C, rng = setup()
    IC = InterleavedCode(C, 2)
    assert IC.max_radius == 5
    ok = 0
    for _ in range(30):
        msgs = [[K.random(rng) for _ in range(4)] for _ in range(2)]
        E = common_error(K, 2, 5, 12, rng)
        rows = [[a ^ b for a, b in zip(c, e)] for c, e in zip(IC.encode(msgs), E)]
        res = IC.decode(rows, 5)
        if res:
            assert res.msgs == msgs and res.error == E
            ok += 1
        else:
            assert failure_rank(K, C.g, 4, rows, 5) < 11
    assert ok >= 25


def test_repeated_rows_fail():
    # identical error rows give no extra rank: decoding must fail
    K, C, rng = setup(3)
    E = common_error(K, 1, 5, 12, rng)[0]
    msgs = [[K.random(rng) for _ in range(4)] for _ in range(2)]
    rows = [[a ^ b for a, b in zip(C.encode(m), E)] for m in msgs]
    res = InterleavedCode(C, 2).decode(rows, 5)
    assert not res
    assert res.info["kernel_dim"] > 1


def test_stack_orderings_have_equal_rank():
    K, _, rng = setup(4)
    Z = [[K.random(rng) for _ in range(12)] for _ in range(3)]
    assert rank(K, got_stack(K, Z, 3)) == rank(K, ztilde_stack(K, Z, 3))
    assert sorted(map(tuple, got_stack(K, Z, 3))) == sorted(map(tuple, ztilde_stack(K, Z, 3)))


def test_fq_rank_rows():
    K = BinaryField(4)
    assert fq_rank_rows(K, [[1, 2, 3], [1, 2, 3]]) == 2
    assert fq_rank_rows(K, [[1, 0, 0], [0, 1, 0]]) == 2
