"""Linear algebra over F_q and F_{q^m}, plus rank-metric helpers.

Matrices are lists of rows.  A field object provides add/sub/mul/inv,
zero/one and the row helpers scale/axpy/dot.
"""

from __future__ import annotations

from fractions import Fraction

from .field import PrimeField

__all__ = [
    "InconsistentSystem",
    "rref",
    "rank",
    "right_kernel",
    "left_kernel",
    "solve",
    "inverse",
    "matmul",
    "vecmat",
    "transpose",
    "identity",
    "gf2_rank",
    "rank_q",
    "rank_q_ext",
    "moore",
    "gauss_binom",
    "random_invertible",
    "random_full_rank",
    "vec_fq_mat",
    "rows_fq_mat",
    "avg_interleaved_codewords",
    "log2",
    "matrix_hex",
]


class InconsistentSystem(ValueError):
    pass


def identity(F, n):
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def transpose(M):
    return [list(c) for c in zip(*M)]


def rref(F, M, ncols=None):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    R = [list(r) for r in M]
    if not R:
        return R, []
    if ncols is None:
        ncols = len(R[0])
    pivots = []
    row = 0
    nrows = len(R)
    for col in range(ncols):
        if row == nrows:
            break
        p = next((i for i in range(row, nrows) if R[i][col]), None)
        if p is None:
            continue
        R[row], R[p] = R[p], R[row]
        c = R[row][col]
        if c != F.one:
            R[row] = F.scale(F.inv(c), R[row])
        prow = R[row]
        for i in range(nrows):
            if i != row:
                e = R[i][col]
                if e:
                    R[i] = F.axpy(R[i], F.neg(e), prow)
        pivots.append(col)
        row += 1
    return R, pivots


def rank(F, M):
    return len(rref(F, M)[1])


def right_kernel(F, M, ncols=None):
    """Basis of {x : M x = 0}, one vector per free column."""
    if ncols is None:
        ncols = len(M[0]) if M else 0
    R, piv = rref(F, M, ncols)
    pset = set(piv)
    basis = []
    for f in range(ncols):
        if f in pset:
            continue
        v = [F.zero] * ncols
        v[f] = F.one
        for r, pc in enumerate(piv):
            if R[r][f]:
                v[pc] = F.neg(R[r][f])
        basis.append(v)
    return basis


def left_kernel(F, M):
    """Basis of {y : y M = 0}."""
    if not M:
        return []
    return right_kernel(F, transpose(M), len(M))


def solve(F, A, b):
    """Solve A x = b.  Returns (x, kernel_basis); raises if inconsistent."""
    n = len(A[0]) if A else 0
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = rref(F, aug, n + 1)
    if piv and piv[-1] == n:
        raise InconsistentSystem("no solution")
    x = [F.zero] * n
    for r, pc in enumerate(piv):
        x[pc] = R[r][n]
    return x, right_kernel(F, A, n)


def inverse(F, M):
    """Inverse of a square matrix, or None if singular."""
    n = len(M)
    aug = [list(r) + [F.one if i == j else F.zero for j in range(n)]
           for i, r in enumerate(M)]
    R, piv = rref(F, aug, n)
    if piv != list(range(n)):
        return None
    return [r[n:] for r in R]


def matmul(F, A, B):
    if not A:
        return []
    cols = len(B[0]) if B else 0
    out = []
    for row in A:
        acc = [F.zero] * cols
        for a, brow in zip(row, B):
            if a:
                acc = F.axpy(acc, a, brow)
        out.append(acc)
    return out


def vecmat(F, v, M):
    return matmul(F, [v], M)[0]


# ------------------------------------------------------------ F_q helpers

def gf2_rank(vs) -> int:
    """Rank over F_2 of ints viewed as bit vectors."""
    piv = {}
    r = 0
    for v in vs:
        while v:
            h = v.bit_length() - 1
            if h in piv:
                v ^= piv[h]
            else:
                piv[h] = v
                r += 1
                break
    return r


def rank_q(K, vec) -> int:
    """rank_q of a vector over F_{q^m}: dim of the F_q-span of its entries."""
    if K.q == 2:
        return gf2_rank(vec)
    rows = [K.coeffs(a) for a in vec]
    return rank(PrimeField(K.q), rows)


def rank_q_ext(L, vec) -> int:
    """rank_q of a vector over F_{q^{mu}} (tuples over F_{q^m})."""
    K = L.K
    if K.q == 2:
        m = K.m
        packed = []
        for a in vec:
            v = 0
            for i, c in enumerate(a):
                v |= c << (i * m)
            packed.append(v)
        return gf2_rank(packed)
    rows = [sum((K.coeffs(c) for c in a), []) for a in vec]
    return rank(PrimeField(K.q), rows)


def moore(K, g, s):
    """s x n Moore matrix: row i is g^{q^i}."""
    out = []
    row = list(g)
    for i in range(s):
        out.append(row)
        if i + 1 < s:
            row = [K.frob(a, 1) for a in row]
    return out


def gauss_binom(q: int, n: int, k: int) -> int:
    """Number of k-dim subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def random_invertible(q: int, n: int, rng):
    """Uniform invertible n x n matrix over F_q (rejection)."""
    Fq = PrimeField(q)
    while True:
        M = [[rng.randrange(q) for _ in range(n)] for _ in range(n)]
        if q == 2:
            ok = gf2_rank([_bits(r) for r in M]) == n
        else:
            ok = rank(Fq, M) == n
        if ok:
            return M


def random_full_rank(q: int, rows: int, cols: int, rng):
    """Uniform full-rank rows x cols matrix over F_q."""
    Fq = PrimeField(q)
    r = min(rows, cols)
    while True:
        M = [[rng.randrange(q) for _ in range(cols)] for _ in range(rows)]
        if q == 2:
            ok = gf2_rank([_bits(x) for x in M]) == r
        else:
            ok = rank(Fq, M) == r
        if ok:
            return M


def _bits(row) -> int:
    v = 0
    for j, b in enumerate(row):
        if b:
            v |= 1 << j
    return v


def vec_fq_mat(K, v, P):
    """v * P for v over F_{q^m} and P over F_q."""
    cols = len(P[0]) if P else 0
    if K.q == 2:
        out = [0] * cols
        for a, prow in zip(v, P):
            if a:
                for j, b in enumerate(prow):
                    if b:
                        out[j] ^= a
        return out
    out = [0] * cols
    for a, prow in zip(v, P):
        if a:
            for j, b in enumerate(prow):
                if b:
                    out[j] = K.add(out[j], K.mul(b, a) if b != 1 else a)
    return out


def rows_fq_mat(K, rows, P):
    return [vec_fq_mat(K, r, P) for r in rows]


def avg_interleaved_codewords(n, k, w, m, u, q) -> Fraction:
    """Average number of interleaved codewords in a rank ball of radius w-1
    around a random word, clamped below at 1 (exact)."""
    Q = q ** (m * u)
    total = 0
    prod = 1
    for i in range(w):
        total += prod * gauss_binom(q, n, i)
        prod *= Q - q ** i
    val = Fraction(q ** (m * u * k) * total, q ** (m * u * n))
    return max(val, Fraction(1))


def log2(x) -> float:
    """High-precision log2 of an int or Fraction, returned as float."""
    import mpmath
    with mpmath.workprec(256):
        x = Fraction(x)
        return float(mpmath.log(mpmath.mpf(x.numerator), 2) - mpmath.log(mpmath.mpf(x.denominator), 2))


def matrix_hex(K, M) -> str:
    """Deterministic hex dump of a matrix over F_{q^m}."""
    width = (K.m * max(1, (K.q - 1).bit_length()) + 3) // 4
    return "\n".join(" ".join(format(a, f"0{width}x") for a in row) for row in M)
