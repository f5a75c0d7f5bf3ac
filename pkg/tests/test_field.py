from __future__ import annotations

import random

import pytest
from hypothesis import given, settings, strategies as st

from liga.field import (
    BinaryField, ExtField, OddField, PrimeField, Tower, base_field, binary_modulus,
)


def naive_gf2_mulmod(a, b, f):
    # schoolbook shift-and-add, independent of the table-driven multiply
    deg = f.bit_length() - 1
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
        if a >> deg & 1:
            a ^= f
    return r


@pytest.mark.parametrize("m", [1, 2, 3, 8, 24, 92, 148])
def test_mul_matches_schoolbook(m):
    K = BinaryField(m)
    rng = random.Random(m)
    for _ in range(200):
        a, b = K.random(rng), K.random(rng)
        assert K.mul(a, b) == naive_gf2_mulmod(a, b, K.modulus)


def test_small_moduli():
    assert binary_modulus(3) == 0b1011
    assert binary_modulus(8) == 0b100011011


@given(st.integers(1, (1 << 24) - 1))
@settings(max_examples=200, deadline=None)
def test_inverse_and_frobenius(a):
    K = BinaryField(24)
    assert K.mul(a, K.inv(a)) == 1
    assert K.frob(a, 24) == a
    assert K.frob(K.frob(a, 5), -5) == a
    assert K.frob(a, 1) == K.mul(a, a)


def test_field_axioms_exhaustive_gf16():
    K = BinaryField(4)
    for a in range(16):
        for b in range(16):
            for c in (1, 7, 13):
                assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))


def test_odd_field():
    K = OddField(3, 3)
    assert K.order == 27
    for a in range(1, 27):
        assert K.mul(a, K.inv(a)) == 1
        assert K.pow(a, 26) == 1
    F = PrimeField(5)
    assert F.mul(3, F.inv(3)) == 1


def test_base_field_rejects():
    with pytest.raises(ValueError):
        base_field(6, 3)
    with pytest.raises(NotImplementedError):
        base_field(4, 3)


def test_ext_field_inverse_exhaustive():
    L = ExtField(BinaryField(3), 2)
    for a in L.elements():
        if any(a):
            assert L.mul(a, L.inv(a)) == L.one


def test_tower_trace_and_dual_basis():
    T = Tower(2, 6, 3)
    L = T.Fqmu
    rng = random.Random(0)
    # relative trace equals the sum of the q^m-conjugates
    for _ in range(20):
        a = L.random(rng)
        conj, acc = a, L.zero
        for _ in range(3):
            acc = L.add(acc, conj)
            conj = L.pow(conj, 64)
        assert acc == (T.trace(a), 0, 0)
    dual = T.dual_basis()
    for i, gi in enumerate(L.basis()):
        for j, dj in enumerate(dual):
            assert T.trace(L.mul(gi, dj)) == (1 if i == j else 0)


def test_trace_components_roundtrip():
    T = Tower(2, 8, 3)
    rng = random.Random(1)
    v = [T.Fqmu.random(rng) for _ in range(7)]
    assert T.from_trace_components(T.trace_components(v)) == v
    alpha = T.Fqmu.random(rng)
    direct = [T.trace(T.Fqmu.mul(alpha, a)) for a in v]
    assert T.trace_vec(alpha, T.unfold(v)) == direct
