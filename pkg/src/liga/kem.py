"""KEM built on the PKE by re-encryption, with SHAKE256 hashing.

G, H and K are SHAKE256 with one-byte domain tags 0x01, 0x02, 0x03.
A rejected ciphertext decapsulates to None.
"""

from __future__ import annotations

import hashlib
import math
import random
import warnings
from dataclasses import dataclass

from .params import ParameterSet
from .pke import (
    DecryptionFailure, PublicKey, SecretKey, decrypt, deserialize_ct,
    encrypt, serialize_ct, serialize_msg, sizes,
)

__all__ = [
    "KemCiphertext",
    "encaps",
    "encaps_with_message",
    "decaps",
    "decaps_bytes",
    "hash_G",
    "hash_H",
    "hash_K",
    "gamma_spread",
    "D_LEN",
    "KEY_LEN",
    "THETA_LEN",
]

THETA_LEN = 64
D_LEN = 32
KEY_LEN = 32


def _shake(tag: int, data: bytes, n: int) -> bytes:
    return hashlib.shake_256(bytes([tag]) + data).digest(n)


def hash_G(mbytes: bytes) -> bytes:
    return _shake(0x01, mbytes, THETA_LEN)


def hash_H(mbytes: bytes) -> bytes:
    return _shake(0x02, mbytes, D_LEN)


def hash_K(mbytes: bytes, cbytes: bytes) -> bytes:
    return _shake(0x03, mbytes + cbytes, KEY_LEN)


@dataclass(frozen=True)
class KemCiphertext:
    c: tuple
    d: bytes

    def to_bytes(self, p: ParameterSet) -> bytes:
        return serialize_ct(p, self.c) + self.d

    @classmethod
    def from_bytes(cls, p: ParameterSet, data: bytes) -> "KemCiphertext":
        ct_len = sizes(p)[2]
        if len(data) != ct_len + D_LEN:
            raise ValueError("KEM ciphertext has wrong length")
        return cls(tuple(deserialize_ct(p, data[:ct_len])), bytes(data[ct_len:]))


def encaps_with_message(pk: PublicKey, m):
    """Deterministic encapsulation of a given message."""
    p = pk.params
    mb = serialize_msg(p, m)
    c = encrypt(m, pk, hash_G(mb))
    K = hash_K(mb, serialize_ct(p, c))
    return KemCiphertext(tuple(c), hash_H(mb)), K


def encaps(pk: PublicKey, rng=None):
    """Returns (KemCiphertext, 32-byte shared key)."""
    p = pk.params
    if (p.k - p.u) * p.m * math.log2(p.q) < 256:
        warnings.warn("message space below 256 bits; toy parameters only",
                      RuntimeWarning, stacklevel=2)
    rng = rng if rng is not None else random.SystemRandom()
    K = pk.tower.Fqm
    m = [K.random(rng) for _ in range(p.k - p.u)]
    return encaps_with_message(pk, m)


def decaps(ct: KemCiphertext, sk: SecretKey, pk: PublicKey):
    """Shared key, or None when the ciphertext is rejected."""
    p = pk.params
    try:
        m = decrypt(ct.c, sk, pk)
    except (DecryptionFailure, ValueError):
        return None
    mb = serialize_msg(p, m)
    c2 = encrypt(m, pk, hash_G(mb))
    if list(ct.c) != c2 or ct.d != hash_H(mb):
        return None
    return hash_K(mb, serialize_ct(p, c2))


def decaps_bytes(data: bytes, sk: SecretKey, pk: PublicKey):
    """decaps on raw bytes; any parse error is a rejection."""
    try:
        ct = KemCiphertext.from_bytes(pk.params, data)
    except ValueError:
        return None
    return decaps(ct, sk, pk)


def gamma_spread(p: ParameterSet) -> int:
    """Ciphertext min-entropy exponent m(t-u) + t(n-t-1), in log_q units
    (bits for q = 2)."""
    t = p.t_pub
    return p.m * (t - p.u) + t * (p.n - t - 1)
