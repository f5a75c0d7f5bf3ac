"""Vertically interleaved Gabidulin codes and the kernel-based decoder.

The decoder looks for the right kernel of a stacked Moore matrix.  When
the kernel is one-dimensional the error row space follows from it; a
larger kernel means every known efficient decoder fails.  The GOT key
recovery uses the same core with a differently ordered stack.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import PrimeField
from .gabidulin import Failure, GabidulinCode
from .linalg import (
    gf2_rank, inverse, moore, rank, rank_q, right_kernel, rref, vec_fq_mat,
)

__all__ = [
    "InterleavedCode",
    "InterleavedResult",
    "lemma1_stack",
    "ztilde_stack",
    "got_stack",
    "failure_rank",
    "decode_interleaved",
    "recover_from_stack",
    "fq_rank_rows",
]


@dataclass
class InterleavedResult:
    msgs: list          # u messages over F_{q^m}
    error: list         # u error rows
    P: list             # n x n over F_q; error row space maps to the first w columns
    P_inv: list
    ok: bool = True

    def __bool__(self):
        return True


class InterleavedCode:
    """IGab(u; n, k): u stacked codewords of one Gabidulin code."""

    def __init__(self, base: GabidulinCode, u: int):
        if u < 1:
            raise ValueError("u must be positive")
        self.base, self.u = base, u

    @property
    def max_radius(self):
        b = self.base
        return self.u * (b.n - b.k) // (self.u + 1)

    def encode(self, msgs):
        return [self.base.encode(x) for x in msgs]

    def decode(self, rows, w):
        return decode_interleaved(self.base, rows, w)


def _check_w(n, k, w):
    if n - w - 1 < 1 or n - k - w < 1:
        raise ValueError(f"invalid w={w}: stack blocks must be positive")


def lemma1_stack(K, g, k, rows, w):
    """[moore(g, n-w-1); moore(row_i, n-k-w) for each i]."""
    n = len(g)
    _check_w(n, k, w)
    S = moore(K, g, n - w - 1)
    for r in rows:
        S += moore(K, r, n - k - w)
    return S


def ztilde_stack(K, Z, s):
    """Row-major interleaved Moore matrix: all powers of z_1, then z_2, ..."""
    out = []
    for z in Z:
        out += moore(K, z, s)
    return out


def got_stack(K, Z, s):
    """Power-major Moore matrix M_s(Z): z_1..z_u, then z_1^q..z_u^q, ..."""
    blocks = [moore(K, z, s) for z in Z]
    return [blocks[i][j] for j in range(s) for i in range(len(Z))]


def failure_rank(K, g, k, rows, w) -> int:
    """Rank of the Lemma-1 stack; decoding fails iff it is below n-1."""
    return rank(K, lemma1_stack(K, g, k, rows, w))


def fq_rank_rows(K, rows) -> int:
    """F_q-rank of the u x n matrix over F_{q^m} expanded to um x n."""
    if not rows:
        return 0
    n = len(rows[0])
    if K.q == 2:
        # column j as one bit-vector over all u*m coordinates
        m = K.m
        cols = []
        for j in range(n):
            v = 0
            for i, r in enumerate(rows):
                v |= r[j] << (i * m)
            cols.append(v)
        return gf2_rank(cols)
    M = []
    for r in rows:
        coeffs = [K.coeffs(a) for a in r]
        M += [[c[i] for c in coeffs] for i in range(K.m)]
    return rank(PrimeField(K.q), M)


def _fq_right_kernel_of_vec(K, h):
    """Basis (rows) of {b in F_q^n : sum_l h_l b_l = 0}."""
    n = len(h)
    Fq = PrimeField(K.q)
    H = [[K.coeffs(a)[i] for a in h] for i in range(K.m)]
    return right_kernel(Fq, H, n)


def recover_from_stack(K, g, k, rows, w, stack):
    """Shared core: one-dimensional right kernel -> P, messages, error."""
    n = len(g)
    ker = right_kernel(K, stack, n)
    dim = len(ker)
    if dim != 1:
        return Failure("kernel dimension %d" % dim, kernel_dim=dim,
                       stack_rank=n - dim, phi=n - dim - (n - w - 1))
    h = ker[0]
    if rank_q(K, h) != n - w:
        return Failure("kernel vector has wrong rank", kernel_dim=1)
    Fq = PrimeField(K.q)
    B = _fq_right_kernel_of_vec(K, h)
    R, piv = rref(Fq, B, n)
    pset = set(piv)
    C = [[1 if j == c else 0 for j in range(n)] for c in range(n) if c not in pset]
    P_inv = [list(r) for r in B] + C
    P = inverse(Fq, P_inv)
    Pp = [row[w:] for row in P]
    gp = vec_fq_mat(K, g, Pp)
    try:
        code = GabidulinCode(K, gp, k)
    except ValueError:
        return Failure("punctured support not full rank", kernel_dim=1)
    msgs, errs = [], []
    full = GabidulinCode(K, g, k)
    for r in rows:
        res = code.decode(vec_fq_mat(K, r, Pp), t=0)
        if not res:
            return Failure("inconsistent punctured system", kernel_dim=1)
        msgs.append(res.msg)
        c = full.encode(res.msg)
        errs.append([K.sub(a, b) for a, b in zip(r, c)])
    if fq_rank_rows(K, errs) > w:
        return Failure("recovered error too heavy", kernel_dim=1)
    return InterleavedResult(msgs, errs, P, P_inv)


def decode_interleaved(code: GabidulinCode, rows, w):
    """Decode u received rows with a common error of F_q-rank <= w."""
    K, g, k = code.K, code.g, code.k
    stack = lemma1_stack(K, g, k, rows, w)
    return recover_from_stack(K, g, k, rows, w, stack)
