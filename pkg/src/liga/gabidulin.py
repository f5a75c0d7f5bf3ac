"""Gabidulin codes: encoding, unique decoding and error-erasure decoding.

Linearized polynomials are coefficient lists: f[j] multiplies x^{q^j}.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .field import PrimeField
from .linalg import (
    inverse, moore, rank_q, rref, right_kernel, vec_fq_mat,
)

__all__ = [
    "GabidulinCode",
    "ErasureInfo",
    "DecodeResult",
    "Failure",
    "lp_eval",
    "lp_compose",
    "lp_left_divide",
    "lp_interpolate",
    "subspace_poly",
    "column_transform",
]


class Failure:
    """Decoding failure.  Falsy, carries a reason and optional details."""

    ok = False

    def __init__(self, reason: str, **info):
        self.reason = reason
        self.info = info

    def __bool__(self):
        return False

    def __repr__(self):
        return f"Failure({self.reason!r})"


@dataclass
class DecodeResult:
    msg: list
    codeword: list
    error: list
    ok: bool = True

    def __bool__(self):
        return True


@dataclass
class ErasureInfo:
    """Known row-erasure column space (m x rho) and column-erasure row space
    (gamma x n), both over F_q."""

    A_row: list = field(default_factory=list)
    B_col: list = field(default_factory=list)

    @property
    def rho(self):
        return len(self.A_row[0]) if self.A_row and self.A_row[0] else 0

    @property
    def gamma(self):
        return len(self.B_col)


# ----------------------------------------------------- linearized polys

def lp_eval(K, f, a):
    acc, p = 0, a
    for j, c in enumerate(f):
        if j:
            p = K.frob(p, 1)
        if c:
            acc = K.add(acc, K.mul(c, p))
    return acc


def lp_compose(K, a, b):
    """(a o b)(x) = a(b(x))."""
    if not a or not b:
        return []
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if not ai:
            continue
        for j, bj in enumerate(b):
            if bj:
                out[i + j] = K.add(out[i + j], K.mul(ai, K.frob(bj, i)))
    return out


def _trim(f):
    f = list(f)
    while f and not f[-1]:
        f.pop()
    return f


def lp_left_divide(K, h, v, k):
    """f with deg_q f < k and v o f = h, or None if v does not divide h."""
    v = _trim(v)
    if not v:
        return None
    rho = len(v) - 1
    h = list(h) + [K.zero] * max(0, k + rho - len(h))
    lead_inv = K.inv(v[rho])
    f = [K.zero] * k
    for j in range(k - 1, -1, -1):
        acc = h[j + rho]
        for i in range(rho):
            idx = j + rho - i
            if idx < k and f[idx]:
                acc = K.sub(acc, K.mul(v[i], K.frob(f[idx], i)))
        f[j] = K.frob(K.mul(acc, lead_inv), -rho)
    if _trim(lp_compose(K, v, f)) != _trim(h):
        return None
    return f


def lp_interpolate(K, xs, ys):
    """Lowest-degree linearized f with f(xs_i) = ys_i (xs F_q-independent)."""
    f = []
    ann = [K.one]
    for a, b in zip(xs, ys):
        pa = lp_eval(K, ann, a)
        if not pa:
            raise ValueError("interpolation points are dependent")
        d = K.sub(b, lp_eval(K, f, a))
        if d:
            c = K.div(d, pa)
            f = f + [K.zero] * (len(ann) - len(f))
            f = [K.add(x, K.mul(c, y)) for x, y in zip(f, ann + [K.zero] * (len(f) - len(ann)))]
        ann = _ann_step(K, ann, pa)
    return f


def _ann_step(K, ann, pa):
    # ann^q - pa^{q-1} ann, vanishes additionally at a
    s = K.div(K.frob(pa, 1), pa)
    out = [K.zero] * (len(ann) + 1)
    for j, c in enumerate(ann):
        out[j + 1] = K.add(out[j + 1], K.frob(c, 1))
        out[j] = K.sub(out[j], K.mul(s, c))
    return out


def subspace_poly(K, elems):
    """Monic linearized polynomial whose roots are the F_q-span of elems."""
    ann = [K.one]
    for a in elems:
        pa = lp_eval(K, ann, a)
        if not pa:
            raise ValueError("elements are F_q-dependent")
        ann = _ann_step(K, ann, pa)
    return ann


# ------------------------------------------------------------- the code

def _fq(K):
    return PrimeField(K.q)


class GabidulinCode:
    """Gab(n, k) over F_{q^m} with evaluation vector g."""

    def __init__(self, K, g, k: int):
        g = list(g)
        n = len(g)
        if n > K.m:
            raise ValueError("need n <= m")
        if not 1 <= k <= n:
            raise ValueError("need 1 <= k <= n")
        if rank_q(K, g) != n:
            raise ValueError("evaluation vector must have rank_q = n")
        self.K, self.g, self.n, self.k = K, g, n, k
        self.radius = (n - k) // 2
        self._G = None
        self._W = {}

    @property
    def G(self):
        if self._G is None:
            self._G = moore(self.K, self.g, self.k)
        return self._G

    def encode(self, msg):
        """msg * G; msg entries in F_{q^m} (ints) or F_{q^{mu}} (tuples)."""
        msg = list(msg)
        if len(msg) != self.k:
            raise ValueError(f"message length {len(msg)} != k = {self.k}")
        if msg and isinstance(msg[0], tuple):
            rows = [self.encode([a[i] for a in msg]) for i in range(len(msg[0]))]
            return [tuple(c) for c in zip(*rows)]
        K = self.K
        out = [0] * self.n
        for a, row in zip(msg, self.G):
            if a:
                out = K.axpy(out, a, row)
        return out

    def evaluate(self, f):
        """f(g) for a linearized polynomial f of any q-degree."""
        return [lp_eval(self.K, f, a) for a in self.g]

    def _annihilator(self, t):
        # rows w with sum_i w_i g_i^{q^j} = 0 for j < k + t
        W = self._W.get(t)
        if W is None:
            W = right_kernel(self.K, moore(self.K, self.g, self.k + t), self.n)
            self._W[t] = W
        return W

    def decode(self, r, t: int | None = None):
        """Unique decoding up to rank t (default the full radius)."""
        K, n, k = self.K, self.n, self.k
        r = list(r)
        if len(r) != n:
            raise ValueError("received word has wrong length")
        if t is None:
            t = self.radius
        if t < 0 or 2 * t > n - k:
            raise ValueError("t beyond the unique decoding radius")
        W = self._annihilator(t)
        # Y[i][j] = r_i^{q^j}
        Y = []
        for a in r:
            row = [a]
            for _ in range(t):
                row.append(K.frob(row[-1], 1))
            Y.append(row)
        S = []
        for wrow in W:
            acc = [0] * (t + 1)
            for wi, yrow in zip(wrow, Y):
                if wi:
                    acc = K.axpy(acc, wi, yrow)
            S.append(acc)
        if S:
            ker = right_kernel(K, S, t + 1)
        else:
            ker = [[K.one if j == 0 else K.zero for j in range(t + 1)]]
        if not ker:
            return Failure("no error-span polynomial")
        # prefer the kernel vector of least degree
        v = min(ker, key=lambda x: len(_trim(x)))
        b = [K.dot(v, yrow) for yrow in Y]
        N = lp_interpolate(K, self.g[: k + t], b[: k + t])
        f = lp_left_divide(K, N, v, k)
        if f is None:
            return Failure("left division has a remainder")
        c = self.encode(f)
        e = [K.sub(x, y) for x, y in zip(r, c)]
        if rank_q(K, e) > t:
            return Failure("error rank exceeds radius")
        return DecodeResult(f, c, e)

    decode_unique = decode

    def decode_error_erasure(self, r, er: ErasureInfo | None = None):
        """Decode with row erasures (known column space of part of the
        error) and column erasures (known row space); needs 2t+rho+gamma <= n-k."""
        K, n, k = self.K, self.n, self.k
        if er is None or (er.rho == 0 and er.gamma == 0):
            return self.decode(r)
        r = list(r)
        rho, gamma = er.rho, er.gamma
        if rho + gamma > n - k:
            return Failure("too many erasures")
        g, y = self.g, r
        if gamma:
            T = column_transform(K.q, er.B_col, n)
            if T is None:
                raise ValueError("B_col must have full row rank")
            g = vec_fq_mat(K, g, T)[gamma:]
            y = vec_fq_mat(K, y, T)[gamma:]
        lam = [K.one]
        if rho:
            cols = [K.from_coeffs([row[j] for row in er.A_row]) for j in range(rho)]
            try:
                lam = subspace_poly(K, cols)
            except ValueError:
                raise ValueError("A_row must have full column rank") from None
            y = [lp_eval(K, lam, a) for a in y]
        if k + rho > len(g):
            return Failure("too many erasures")
        inner = GabidulinCode(K, g, k + rho)
        res = inner.decode(y)
        if not res:
            return res
        f = lp_left_divide(K, res.msg, lam, k)
        if f is None:
            return Failure("row-erasure division has a remainder")
        c = self.encode(f)
        e = [K.sub(a, b) for a, b in zip(r, c)]
        if rank_q(K, e) > rho + gamma + (n - k - rho - gamma) // 2:
            return Failure("error rank exceeds the erasure radius")
        return DecodeResult(f, c, e)


def column_transform(q, B, n):
    """Invertible T over F_q with B T = [I | 0], or None if B is rank deficient."""
    Fq = PrimeField(q)
    R, piv = rref(Fq, B, n)
    if len(piv) != len(B):
        return None
    pset = set(piv)
    extra = [[1 if j == c else 0 for j in range(n)] for c in range(n) if c not in pset]
    M = [list(row) for row in B] + extra
    return inverse(Fq, M)
