"""Executable attacks and experiments at toy sizes.

The original FL key generation serves as the positive control for the
GOT and interleaved-decoding key recoveries; LIGA keys should defeat both.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from itertools import product

from .field import PrimeField, tower_new
from .gabidulin import GabidulinCode
from .interleaved import (
    decode_interleaved, fq_rank_rows, got_stack, recover_from_stack, ztilde_stack,
)
from .linalg import inverse, moore, rank, rank_q, random_invertible, vec_fq_mat
from .params import ParameterSet
from .pke import (
    DecryptionFailure, KeyInfo, PublicKey, SecretKey, _sample_g, _sample_x,
    decrypt, encrypt, sample_error_space,
)

__all__ = [
    "AttackOutcome",
    "fl_keygen_original",
    "got_attack",
    "interleaved_attack",
    "theorem2_probe",
    "trace_rank_distribution_check",
    "code_weight_distribution",
    "full_rank_basis",
]


@dataclass
class AttackOutcome:
    success: bool
    sk: SecretKey | None = None
    x: list | None = None
    z: list | None = None
    kernel_dim: int | None = None
    stack_rank: int | None = None
    stack_shape: tuple = ()
    reason: str = ""
    verified: bool | None = None
    ops: dict = field(default_factory=dict)

    @property
    def rank_deficit(self):
        """w - phi, read off the kernel dimension (dim = 1 + deficit)."""
        return None if self.kernel_dim is None else self.kernel_dim - 1

    def __str__(self):
        if self.success:
            return "SUCCESS"
        return f"FAIL (rank deficit {self.rank_deficit})"


def fl_keygen_original(p: ParameterSet, rng=None, *, return_info=False):
    """Original FL key generation: s of full F_q-rank w over F_{q^{mu}},
    with no restriction on the F_{q^m}-span of its trace components."""
    rng = rng if rng is not None else random.SystemRandom()
    T = tower_new(p.q, p.m, p.u)
    K, L = T.Fqm, T.Fqmu
    n, k, u, w = p.n, p.k, p.u, p.w
    g = _sample_g(K, n, rng)
    x = _sample_x(T, k, u, rng)
    while True:
        S = [[K.random(rng) for _ in range(w)] for _ in range(u)]
        if fq_rank_rows(K, S) == w:
            break
    P = random_invertible(p.q, n, rng)
    P_inv = inverse(PrimeField(p.q), P)
    Z = [vec_fq_mat(K, s, P_inv[:w]) for s in S]
    z = T.from_trace_components(Z)
    pk = PublicKey(p, g, [])
    pk.k_pub = [L.add(a, b) for a, b in zip(pk.code.encode(x), z)]
    sk = SecretKey(p, x, [row[w:] for row in P])
    if return_info:
        return sk, pk, KeyInfo(None, S, P, P_inv, z, Z, None, 0)
    return sk, pk


def _outcome(pk, res, shape, verify_rng):
    p = pk.params
    T = pk.tower
    if not res:
        info = res.info
        return AttackOutcome(False, kernel_dim=info.get("kernel_dim"),
                             stack_rank=info.get("stack_rank"),
                             stack_shape=shape, reason=res.reason)
    x = T.from_trace_components(res.msgs)
    z = [T.Fqmu.sub(a, b) for a, b in zip(pk.k_pub, pk.code.encode(x))]
    out = AttackOutcome(True, x=x, z=z, kernel_dim=1, stack_rank=p.n - 1,
                        stack_shape=shape)
    k, u = p.k, p.u
    if rank(T.Fqm, [list(a) for a in x[k - u:]]) != u:
        out.reason = "recovered x has dependent tail"
        out.verified = False
        return out
    out.sk = SecretKey(p, x, [row[p.w:] for row in res.P])
    if verify_rng is not None:
        K = T.Fqm
        m = [K.random(verify_rng) for _ in range(k - u)]
        c = encrypt(m, pk, rng=verify_rng)
        try:
            out.verified = decrypt(c, out.sk, pk) == m
        except DecryptionFailure:
            out.verified = False
        out.success = bool(out.verified)
    return out


def got_attack(pk: PublicKey, verify_rng=None) -> AttackOutcome:
    """Key recovery from the kernel of M_{n-w-k}([G; k_pub^(1..u)]).

    On success an equivalent secret key is returned; with verify_rng it
    must also decrypt a fresh ciphertext to count as a success.
    """
    p, T = pk.params, pk.tower
    K = T.Fqm
    n, k, w = p.n, p.k, p.w
    s = n - w - k
    rows = T.trace_components(pk.k_pub)
    stack = got_stack(K, moore(K, pk.g, k) + rows, s)
    res = recover_from_stack(K, pk.g, k, rows, w, stack)
    return _outcome(pk, res, (len(stack), n), verify_rng)


def interleaved_attack(pk: PublicKey, verify_rng=None) -> AttackOutcome:
    """Decode the trace components of k_pub in the interleaved code."""
    p, T = pk.params, pk.tower
    rows = T.trace_components(pk.k_pub)
    res = decode_interleaved(pk.code, rows, p.w)
    shape = (p.n - p.w - 1 + p.u * (p.n - p.k - p.w), p.n)
    return _outcome(pk, res, shape, verify_rng)


def theorem2_probe(K, Z, n, k, w):
    """Ranks of the power-major and row-major Moore stacks of Z."""
    s = n - k - w
    return rank(K, got_stack(K, Z, s)), rank(K, ztilde_stack(K, Z, s))


def trace_rank_distribution_check(q=2, m=6, u=2, w=3, zeta=1, n=None,
                                  trials=10_000, rng=None):
    """Empirical distribution of rank_q(Tr(alpha z)) over uniform alpha,
    against exact enumeration of the ranks of the codewords of A.

    Returns (empirical, exact, total_variation), distributions as dicts
    rank -> probability.
    """
    rng = rng if rng is not None else random.Random()
    n = n or m
    T = tower_new(q, m, u)
    K, L = T.Fqm, T.Fqmu
    A, S, _ = sample_error_space(T, w, zeta, rng)
    P = random_invertible(q, n, rng)
    P_inv = inverse(PrimeField(q), P)
    Z = [vec_fq_mat(K, s, P_inv[:w]) for s in S]
    rows = T.unfold(T.from_trace_components(Z))
    emp = Counter()
    for _ in range(trials):
        alpha = L.random(rng)
        emp[rank_q(K, T.trace_vec(alpha, rows))] += 1
    exact = Counter()
    for beta in product(K.elements(), repeat=zeta):
        c = [0] * w
        for b, row in zip(beta, A):
            if b:
                c = K.axpy(c, b, row)
        exact[rank_q(K, c)] += 1
    total = K.order ** zeta
    ex = {r: v / total for r, v in exact.items()}
    em = {r: v / trials for r, v in emp.items()}
    keys = set(ex) | set(em)
    tv = 0.5 * sum(abs(ex.get(r, 0) - em.get(r, 0)) for r in keys)
    return em, ex, tv


def code_weight_distribution(code: GabidulinCode):
    """Exhaustive rank-weight distribution {rank: count}."""
    K = code.K
    dist = Counter()
    for msg in product(K.elements(), repeat=code.k):
        dist[rank_q(K, code.encode(list(msg)))] += 1
    return dict(dist)


def full_rank_basis(code: GabidulinCode, rng=None, tries=10_000):
    """k codewords of F_q-rank n that form a basis, or None."""
    rng = rng if rng is not None else random.Random()
    K, n = code.K, code.n
    basis = []
    for _ in range(tries):
        msg = [K.random(rng) for _ in range(code.k)]
        if rank(K, basis + [msg]) == len(basis) + 1:
            c = code.encode(msg)
            if rank_q(K, c) == n:
                basis.append(msg)
                if len(basis) == code.k:
                    return [code.encode(b) for b in basis]
    return None
