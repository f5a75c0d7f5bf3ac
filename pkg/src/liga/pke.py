"""LIGA public-key encryption: key generation, encryption, decryption and
the byte formats of keys and ciphertexts."""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, field

from .field import PrimeField, tower_new
from .gabidulin import ErasureInfo, GabidulinCode
from .interleaved import ztilde_stack
from .linalg import (
    inverse, left_kernel, rank, rank_q, random_invertible, vec_fq_mat,
)
from .params import ParameterSet

__all__ = [
    "SecretKey",
    "PublicKey",
    "KeyInfo",
    "DecryptionFailure",
    "XofRandom",
    "keygen",
    "sample_error_space",
    "encrypt",
    "encrypt_with_noise",
    "decrypt",
    "serialize_sk",
    "deserialize_sk",
    "serialize_pk",
    "deserialize_pk",
    "serialize_ct",
    "deserialize_ct",
    "serialize_msg",
    "deserialize_msg",
    "sizes",
]


class DecryptionFailure(Exception):
    """The ciphertext could not be decoded."""


class XofRandom(random.Random):
    """Deterministic random source expanded from a seed with SHAKE256.

    Blocks are SHAKE256(tag || seed || counter) so the stream can be read
    incrementally.  Only getrandbits is primitive; randrange and friends
    are derived from it by the base class.
    """

    _BLOCK = 136

    def __new__(cls, *args, **kw):
        return super().__new__(cls)

    def __init__(self, seed: bytes, tag: bytes = b""):
        self._prefix = bytes(tag) + bytes(seed)
        self._ctr = 0
        self._buf = b""
        super().__init__(0)

    def seed(self, *args, **kw):
        pass

    def _take(self, n):
        while len(self._buf) < n:
            h = hashlib.shake_256(self._prefix + self._ctr.to_bytes(8, "little"))
            self._buf += h.digest(self._BLOCK)
            self._ctr += 1
        out, self._buf = self._buf[:n], self._buf[n:]
        return out

    def getrandbits(self, k):
        if k <= 0:
            return 0
        v = int.from_bytes(self._take((k + 7) // 8), "little")
        return v & ((1 << k) - 1)

    def random(self):
        return self.getrandbits(53) / (1 << 53)

    def getstate(self):
        return (self._prefix, self._ctr, self._buf)

    def setstate(self, state):
        self._prefix, self._ctr, self._buf = state


# ------------------------------------------------------------------- keys

@dataclass(eq=False)
class PublicKey:
    params: ParameterSet
    g: list
    k_pub: list
    _code: object = field(default=None, repr=False)

    @property
    def t_pub(self):
        return self.params.t_pub

    @property
    def tower(self):
        p = self.params
        return tower_new(p.q, p.m, p.u)

    @property
    def code(self):
        if self._code is None:
            self._code = GabidulinCode(self.tower.Fqm, self.g, self.params.k)
        return self._code

    def __eq__(self, other):
        return (isinstance(other, PublicKey) and self.params == other.params
                and self.g == other.g and self.k_pub == other.k_pub)


@dataclass(eq=False)
class SecretKey:
    params: ParameterSet
    x: list
    P_cols: list
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def tower(self):
        p = self.params
        return tower_new(p.q, p.m, p.u)

    def x_dual(self):
        d = self._cache.get("dual")
        if d is None:
            k, u = self.params.k, self.params.u
            d = self.tower.dual_basis(self.x[k - u:])
            self._cache["dual"] = d
        return d

    def punctured_code(self, g):
        key = ("punct", tuple(g))
        code = self._cache.get(key)
        if code is None:
            K = self.tower.Fqm
            code = GabidulinCode(K, vec_fq_mat(K, g, self.P_cols), self.params.k)
            self._cache[key] = code
        return code

    def erasure_rows(self):
        """Row space of (P^-1)_[1,w]: the left kernel of P_cols."""
        B = self._cache.get("B")
        if B is None:
            B = left_kernel(PrimeField(self.params.q), self.P_cols)
            self._cache["B"] = B
        return B

    def __eq__(self, other):
        return (isinstance(other, SecretKey) and self.params == other.params
                and self.x == other.x and self.P_cols == other.P_cols)


@dataclass
class KeyInfo:
    """Secret intermediate values of key generation, kept for tests and
    the cryptanalysis harness."""

    A: list             # zeta x w generator of the error subspace
    S: list             # u x w rows s_i
    P: list
    P_inv: list
    z: list             # over F_{q^{mu}}
    Z: list             # u x n trace components z_i
    phi: int | None
    retries: int


def _rng(rng):
    return rng if rng is not None else random.SystemRandom()


def _sample_g(K, n, rng):
    while True:
        g = [K.random(rng) for _ in range(n)]
        if rank_q(K, g) == n:
            return g


def _sample_x(T, k, u, rng):
    L, K = T.Fqmu, T.Fqm
    while True:
        x = [L.random(rng) for _ in range(k)]
        if rank(K, [list(a) for a in x[k - u:]]) == u:
            return x


def sample_error_space(T, w, zeta, rng, draws_per_space=None):
    """Sample a zeta-dim subspace A of F_{q^m}^w and u codewords of full
    F_q-rank w spanning it.  Returns (A, S, retries)."""
    K, u = T.Fqm, T.u
    if zeta > min(u, w):
        raise ValueError("need zeta <= min(u, w)")
    bound = draws_per_space or 32 * u
    retries = 0
    while True:
        A = [[K.random(rng) for _ in range(w)] for _ in range(zeta)]
        if rank(K, A) != zeta:
            retries += 1
            continue
        draws = 0
        while draws < bound:
            S = []
            while len(S) < u and draws < bound:
                coef = [K.random(rng) for _ in range(zeta)]
                s = [0] * w
                for c, row in zip(coef, A):
                    if c:
                        s = K.axpy(s, c, row)
                draws += 1
                if rank_q(K, s) == w:
                    S.append(s)
                else:
                    retries += 1
            if len(S) == u and rank(K, S) == zeta:
                return A, S, retries
            retries += 1
        retries += 1


def keygen(p: ParameterSet, rng=None, *, check=True, return_info=False):
    """LIGA key generation.  With check=True the structural postconditions
    are asserted on the fresh key."""
    rng = _rng(rng)
    T = tower_new(p.q, p.m, p.u)
    K, L = T.Fqm, T.Fqmu
    n, k, u, w = p.n, p.k, p.u, p.w
    g = _sample_g(K, n, rng)
    x = _sample_x(T, k, u, rng)
    A, S, retries = sample_error_space(T, w, p.zeta, rng)
    P = random_invertible(p.q, n, rng)
    P_inv = inverse(PrimeField(p.q), P)
    top = P_inv[:w]
    Z = [vec_fq_mat(K, s, top) for s in S]
    z = T.from_trace_components(Z)
    pk = PublicKey(p, g, [])
    xG = pk.code.encode(x)
    pk.k_pub = [L.add(a, b) for a, b in zip(xG, z)]
    sk = SecretKey(p, x, [row[w:] for row in P])
    phi = None
    if check:
        phi = _check_key(p, K, Z)
    if return_info:
        return sk, pk, KeyInfo(A, S, P, P_inv, z, Z, phi, retries)
    return sk, pk


def _check_key(p, K, Z):
    n, k, w, zeta = p.n, p.k, p.w, p.zeta
    for zi in Z:
        assert rank_q(K, zi) == w, "trace component of z has wrong F_q-rank"
    assert rank(K, Z) == zeta, "z components do not span a zeta-dim space"
    s = n - k - w
    if s < 1:
        return None
    phi = rank(K, ztilde_stack(K, Z, s))
    bound = min(zeta * s, w)
    assert phi <= bound, "rank of the interleaved z stack exceeds its bound"
    if zeta * s < w:
        assert phi < w, "no rank deficit"
    return phi


# ------------------------------------------------------------ encryption

def _check_msg(p, K, m):
    m = list(m)
    if len(m) != p.k - p.u:
        raise ValueError(f"message length {len(m)} != k - u = {p.k - p.u}")
    for a in m:
        if not (isinstance(a, int) and 0 <= a < K.order):
            raise ValueError("message entry outside F_{q^m}")
    return m


def _sample_noise(p, T, rng):
    """alpha != 0 first, then e = A B with full-rank factors."""
    from .linalg import random_full_rank
    L, K = T.Fqmu, T.Fqm
    while True:
        alpha = L.random(rng)
        if any(alpha):
            break
    t = p.t_pub
    e = [0] * p.n
    if t:
        Am = random_full_rank(p.q, p.m, t, rng)
        Bm = random_full_rank(p.q, t, p.n, rng)
        cols = [K.from_coeffs([row[l] for row in Am]) for l in range(t)]
        e = vec_fq_mat(K, cols, Bm)
    return alpha, e


def encrypt_with_noise(m, pk: PublicKey, alpha, e):
    """c = (m, 0_u) G + Tr(alpha k_pub) + e for explicit alpha, e."""
    p, T = pk.params, pk.tower
    K = T.Fqm
    m = _check_msg(p, K, m)
    c = pk.code.encode(m + [0] * p.u)
    tr = T.trace_vec(alpha, T.unfold(pk.k_pub))
    return [K.add(K.add(a, b), d) for a, b, d in zip(c, tr, e)]


def encrypt(m, pk: PublicKey, theta: bytes | None = None, rng=None):
    """Encrypt m (k-u elements of F_{q^m}).  Given theta the output is a
    deterministic function of (m, pk, theta)."""
    if theta is not None:
        rng = XofRandom(theta, b"LIGA-enc")
    rng = _rng(rng)
    alpha, e = _sample_noise(pk.params, pk.tower, rng)
    return encrypt_with_noise(m, pk, alpha, e)


def decrypt(c, sk: SecretKey, pk: PublicKey, *, erasure: bool = False):
    """Recover m from c; raises DecryptionFailure if c does not decode.

    The default route decodes c P' in the punctured code; erasure=True
    runs the error-erasure decoder of the full public code instead, with
    the hidden error row space as column erasures.
    """
    p, T = sk.params, sk.tower
    K, L = T.Fqm, T.Fqmu
    c = list(c)
    if len(c) != p.n:
        raise ValueError("ciphertext has wrong length")
    if erasure:
        res = pk.code.decode_error_erasure(c, ErasureInfo([], sk.erasure_rows()))
    else:
        code = sk.punctured_code(pk.g)
        res = code.decode(vec_fq_mat(K, c, sk.P_cols))
    if not res:
        raise DecryptionFailure(res.reason)
    mp = res.msg
    k, u = p.k, p.u
    alpha = L.zero
    for a, d in zip(mp[k - u:], sk.x_dual()):
        if a:
            alpha = L.add(alpha, L.scalar(a, d))
    tr = T.trace_vec(alpha, T.unfold(sk.x))
    return [K.sub(a, b) for a, b in zip(mp[: k - u], tr[: k - u])]


# ---------------------------------------------------------- serialization

def _elem_width(q):
    return (q - 1).bit_length()


class _Writer:
    def __init__(self):
        self.v = 0
        self.pos = 0

    def put(self, x, bits):
        self.v |= x << self.pos
        self.pos += bits

    def bytes(self):
        return self.v.to_bytes((self.pos + 7) // 8, "little")


class _Reader:
    def __init__(self, data: bytes, total_bits: int):
        if len(data) != (total_bits + 7) // 8:
            raise ValueError(f"expected {(total_bits + 7) // 8} bytes, got {len(data)}")
        self.v = int.from_bytes(data, "little")
        if self.v >> total_bits:
            raise ValueError("non-zero padding bits")
        self.pos = 0

    def get(self, bits):
        x = (self.v >> self.pos) & ((1 << bits) - 1)
        self.pos += bits
        return x


def _put_k(wr, K, a):
    if K.q == 2:
        wr.put(a, K.m)
        return
    b = _elem_width(K.q)
    for c in K.coeffs(a):
        wr.put(c, b)


def _get_k(rd, K):
    if K.q == 2:
        return rd.get(K.m)
    b = _elem_width(K.q)
    cs = [rd.get(b) for _ in range(K.m)]
    if any(c >= K.q for c in cs):
        raise ValueError("non-canonical field element")
    return K.from_coeffs(cs)


def _get_fq(rd, q):
    c = rd.get(_elem_width(q))
    if c >= q:
        raise ValueError("non-canonical F_q entry")
    return c


def _kbits(p):
    return p.m * _elem_width(p.q)


def sizes(p: ParameterSet):
    """(sk, pk, ct) sizes in bytes."""
    kb, fb = _kbits(p), _elem_width(p.q)
    sk = p.k * p.u * kb + p.n * (p.n - p.w) * fb
    pk = p.n * kb + p.n * p.u * kb
    ct = p.n * kb
    return tuple((b + 7) // 8 for b in (sk, pk, ct))


def serialize_sk(sk: SecretKey) -> bytes:
    p, K = sk.params, sk.tower.Fqm
    wr = _Writer()
    for a in sk.x:
        for c in a:
            _put_k(wr, K, c)
    fb = _elem_width(p.q)
    for row in sk.P_cols:
        for b in row:
            wr.put(b, fb)
    return wr.bytes()


def deserialize_sk(p: ParameterSet, data: bytes) -> SecretKey:
    T = tower_new(p.q, p.m, p.u)
    K = T.Fqm
    kb, fb = _kbits(p), _elem_width(p.q)
    rd = _Reader(data, p.k * p.u * kb + p.n * (p.n - p.w) * fb)
    x = [tuple(_get_k(rd, K) for _ in range(p.u)) for _ in range(p.k)]
    P_cols = [[_get_fq(rd, p.q) for _ in range(p.n - p.w)] for _ in range(p.n)]
    if rank(K, [list(a) for a in x[p.k - p.u:]]) != p.u:
        raise ValueError("last u entries of x are dependent")
    if rank(PrimeField(p.q), P_cols) != p.n - p.w:
        raise ValueError("P' does not have full column rank")
    return SecretKey(p, x, P_cols)


def serialize_pk(pk: PublicKey) -> bytes:
    K = pk.tower.Fqm
    wr = _Writer()
    for a in pk.g:
        _put_k(wr, K, a)
    for a in pk.k_pub:
        for c in a:
            _put_k(wr, K, c)
    return wr.bytes()


def deserialize_pk(p: ParameterSet, data: bytes) -> PublicKey:
    K = tower_new(p.q, p.m, p.u).Fqm
    kb = _kbits(p)
    rd = _Reader(data, p.n * kb * (1 + p.u))
    g = [_get_k(rd, K) for _ in range(p.n)]
    k_pub = [tuple(_get_k(rd, K) for _ in range(p.u)) for _ in range(p.n)]
    if rank_q(K, g) != p.n:
        raise ValueError("g does not have full F_q-rank")
    return PublicKey(p, g, k_pub)


def serialize_ct(p: ParameterSet, c) -> bytes:
    K = tower_new(p.q, p.m, p.u).Fqm
    wr = _Writer()
    for a in c:
        _put_k(wr, K, a)
    return wr.bytes()


def deserialize_ct(p: ParameterSet, data: bytes) -> list:
    K = tower_new(p.q, p.m, p.u).Fqm
    rd = _Reader(data, p.n * _kbits(p))
    return [_get_k(rd, K) for _ in range(p.n)]


def serialize_msg(p: ParameterSet, m) -> bytes:
    K = tower_new(p.q, p.m, p.u).Fqm
    wr = _Writer()
    for a in m:
        _put_k(wr, K, a)
    return wr.bytes()


def deserialize_msg(p: ParameterSet, data: bytes) -> list:
    K = tower_new(p.q, p.m, p.u).Fqm
    rd = _Reader(data, (p.k - p.u) * _kbits(p))
    return [_get_k(rd, K) for _ in range(p.k - p.u)]
