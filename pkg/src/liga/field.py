"""Finite field tower F_q ⊂ F_{q^m} ⊂ F_{q^{mu}}.

Elements of F_{q^m} are ints.  For q = 2 bit i is the coefficient of x^i;
for odd prime q the base-q digits are the coefficients.  Elements of
F_{q^{mu}} are u-tuples of F_{q^m} elements in the polynomial basis
1, b, ..., b^{u-1} of the relative extension.
"""

from __future__ import annotations

from functools import lru_cache

__all__ = [
    "PrimeField",
    "BinaryField",
    "OddField",
    "ExtField",
    "Tower",
    "tower_new",
    "base_field",
    "is_prime",
    "prime_power",
]

_SPREAD = bytes.maketrans(b"01", b"\x00\x01")
# byte -> "0"/"1" by parity; column sums stay below 256 for m < 256
_UNSPREAD = bytes.maketrans(bytes(range(256)), bytes(48 + (i & 1) for i in range(256)))


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def prime_power(q: int):
    """Return (p, e) with q = p^e, or None."""
    if q < 2:
        return None
    p = 2
    while q % p:
        p += 1
    e, r = 0, q
    while r % p == 0:
        r //= p
        e += 1
    return (p, e) if r == 1 else None


def _prime_factors(n: int):
    out, p = [], 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


class PrimeField:
    """F_p with ints 0..p-1."""

    def __init__(self, p: int):
        self.p = self.q = self.order = p
        self.m = 1
        self.zero, self.one = 0, 1

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return -a % self.p

    def mul(self, a, b):
        return a * b % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(a, -1, self.p)

    def random(self, rng):
        return rng.randrange(self.p)

    def dot(self, xs, ys):
        return sum(a * b for a, b in zip(xs, ys)) % self.p

    def scale(self, c, vec):
        return [c * b % self.p for b in vec]

    def axpy(self, y, c, x):
        p = self.p
        return [(a + c * b) % p for a, b in zip(y, x)]

    def elements(self):
        return range(self.p)

    def __repr__(self):
        return f"GF({self.p})"


# ---------------------------------------------------------------- F_{2^m}

def _clmul(a: int, b: int) -> int:
    """Carry-less product of two F_2[x] polynomials."""
    if a == 0 or b == 0:
        return 0
    if a & (a - 1) == 0:
        return b << (a.bit_length() - 1)
    if b & (b - 1) == 0:
        return a << (b.bit_length() - 1)
    sa = int.from_bytes(bin(a)[2:].encode().translate(_SPREAD), "big")
    sb = int.from_bytes(bin(b)[2:].encode().translate(_SPREAD), "big")
    prod = sa * sb
    n = (prod.bit_length() + 7) >> 3
    return int(prod.to_bytes(n, "big").translate(_UNSPREAD), 2)


def _gf2_sqr(a: int) -> int:
    return int("0".join(bin(a)[2:]), 2) if a else 0


def _gf2_mod(a: int, f: int) -> int:
    d = f.bit_length() - 1
    while a.bit_length() > d:
        a ^= f << (a.bit_length() - 1 - d)
    return a


def _gf2_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _gf2_mod(a, b)
    return a


def _gf2_irreducible(f: int) -> bool:
    d = f.bit_length() - 1
    if d < 1:
        return False
    if d == 1:
        return True
    x = 2
    # x^{2^i} mod f for i = 0..d
    pw = [x]
    for _ in range(d):
        pw.append(_gf2_mod(_gf2_sqr(pw[-1]), f))
    if pw[d] != x:
        return False
    for r in _prime_factors(d):
        if _gf2_gcd(f, pw[d // r] ^ x) != 1:
            return False
    return True


@lru_cache(maxsize=None)
def binary_modulus(m: int) -> int:
    """Smallest irreducible x^m + ... over F_2, as an int."""
    for low in range(0, 1 << m):
        f = (1 << m) | low
        if _gf2_irreducible(f):
            return f
    raise ValueError(f"no irreducible polynomial of degree {m}")


class BinaryField:
    """F_{2^m} as F_2[x]/(f)."""

    p = 2
    zero, one = 0, 1

    def __init__(self, m: int, modulus: int | None = None):
        if m < 1:
            raise ValueError("m must be positive")
        if m > 255:
            raise ValueError("m > 255 not supported")
        self.m = m
        self.q = 2
        self.order = 1 << m
        self.modulus = binary_modulus(m) if modulus is None else modulus
        self._mask = (1 << m) - 1
        self._low = self.modulus ^ (1 << m)

    def __repr__(self):
        return f"GF(2^{self.m})"

    def __eq__(self, other):
        return isinstance(other, BinaryField) and other.modulus == self.modulus

    def __hash__(self):
        return hash(("bin", self.modulus))

    def reduce(self, a: int) -> int:
        m, mask, low = self.m, self._mask, self._low
        while a >> m:
            a = (a & mask) ^ _clmul(a >> m, low)
        return a

    def add(self, a, b):
        return a ^ b

    sub = add

    def neg(self, a):
        return a

    def mul(self, a, b):
        return self.reduce(_clmul(a, b))

    def sqr(self, a):
        return self.reduce(_gf2_sqr(a))

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        # extended Euclid in F_2[x]
        r, s, g1, g2 = a, self.modulus, 1, 0
        while r != 1:
            j = r.bit_length() - s.bit_length()
            if j < 0:
                r, s, g1, g2 = s, r, g2, g1
                j = -j
            r ^= s << j
            g1 ^= g2 << j
        return self.reduce(g1)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.sqr(a)
        return r

    def frob(self, a, i: int = 1):
        """a^{q^i}; negative i gives the inverse automorphism."""
        for _ in range(i % self.m):
            a = self.reduce(_gf2_sqr(a))
        return a

    def coeffs(self, a):
        return [(a >> i) & 1 for i in range(self.m)]

    def from_coeffs(self, c):
        v = 0
        for i, b in enumerate(c):
            if b & 1:
                v |= 1 << i
        return v

    def random(self, rng):
        return rng.getrandbits(self.m)

    def elements(self):
        return range(self.order)

    def dot(self, xs, ys):
        acc = 0
        for a, b in zip(xs, ys):
            if a and b:
                acc ^= _clmul(a, b)
        return self.reduce(acc)

    def scale(self, c, vec):
        red = self.reduce
        if c == 1:
            return list(vec)
        return [red(_clmul(c, b)) if b else 0 for b in vec]

    def axpy(self, y, c, x):
        """y + c*x, elementwise."""
        red = self.reduce
        return [a ^ red(_clmul(c, b)) if b else a for a, b in zip(y, x)]


# ---------------------------------------------------------- generic polys

def _poly_trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mulmod(K, a, b, f):
    """a*b mod monic f, coefficient lists low-first."""
    if not a or not b:
        return []
    prod = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] = K.add(prod[i + j], K.mul(x, y))
    return _poly_mod(K, prod, f)


def _poly_mod(K, a, f):
    a = list(a)
    d = len(f) - 1
    for i in range(len(a) - 1, d - 1, -1):
        c = a[i]
        if c == 0:
            continue
        for j in range(d):
            if f[j]:
                a[i - d + j] = K.sub(a[i - d + j], K.mul(c, f[j]))
        a[i] = K.zero
    return _poly_trim(a[:d] if len(a) > d else a)


def _poly_divmod_gcd(K, a, b):
    a, b = _poly_trim(list(a)), _poly_trim(list(b))
    while b:
        inv = K.inv(b[-1])
        monic = [K.mul(c, inv) for c in b]
        a, b = b, _poly_mod(K, a, monic)
    return a


def _poly_powmod(K, a, e, f):
    r = [K.one]
    while e:
        if e & 1:
            r = _poly_mulmod(K, r, a, f)
        e >>= 1
        if e:
            a = _poly_mulmod(K, a, a, f)
    return r


def _poly_irreducible(K, f):
    """Rabin's test for monic f (coefficients low-first) over K."""
    d = len(f) - 1
    if d == 1:
        return True
    Q = K.order
    x = [K.zero, K.one]
    pw = [x]
    for _ in range(d):
        pw.append(_poly_powmod(K, pw[-1], Q, f))
    if _poly_trim(list(pw[d])) != x:
        return False
    for r in _prime_factors(d):
        h = list(pw[d // r]) + [K.zero] * 2
        h[1] = K.sub(h[1], K.one)
        g = _poly_divmod_gcd(K, f, h)
        if len(g) != 1:
            return False
    return True


def _graded_candidates(d, limit):
    """Monic degree-d tails (c_0..c_{d-1}) in graded order.

    Ordered by max coefficient b first, then by sum c_i * limit^i.
    """
    import itertools
    for b in range(limit):
        for tup in itertools.product(range(b + 1), repeat=d):
            c = tup[::-1]
            if max(c, default=0) == b:
                yield c


def find_modulus(K, d: int):
    """Smallest (graded order) monic irreducible of degree d over K."""
    for tail in _graded_candidates(d, K.order):
        f = list(tail) + [K.one]
        if _poly_irreducible(K, f):
            return tuple(tail)
    raise ValueError("no irreducible polynomial found")


class OddField:
    """F_{p^m} for odd prime p; ints hold base-p digits."""

    def __init__(self, p: int, m: int, modulus=None):
        self.p = self.q = p
        self.m = m
        self.order = p ** m
        self.zero, self.one = 0, 1
        self._Fp = PrimeField(p)
        if modulus is None:
            modulus = find_modulus(self._Fp, m)
        self.modulus = tuple(modulus)

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __eq__(self, other):
        return isinstance(other, OddField) and (other.p, other.modulus) == (self.p, self.modulus)

    def __hash__(self):
        return hash(("odd", self.p, self.modulus))

    def coeffs(self, a):
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, c):
        v = 0
        for x in reversed(list(c)):
            v = v * self.p + x % self.p
        return v

    def add(self, a, b):
        p = self.p
        return self.from_coeffs([(x + y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def sub(self, a, b):
        p = self.p
        return self.from_coeffs([(x - y) % p for x, y in zip(self.coeffs(a), self.coeffs(b))])

    def neg(self, a):
        return self.from_coeffs([-x % self.p for x in self.coeffs(a)])

    def mul(self, a, b):
        f = list(self.modulus) + [1]
        r = _poly_mulmod(self._Fp, _poly_trim(self.coeffs(a)), _poly_trim(self.coeffs(b)), f)
        return self.from_coeffs(r)

    def sqr(self, a):
        return self.mul(a, a)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        return self.pow(a, self.order - 2)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def frob(self, a, i: int = 1):
        for _ in range(i % self.m):
            a = self.pow(a, self.p)
        return a

    def random(self, rng):
        return rng.randrange(self.order)

    def elements(self):
        return range(self.order)

    def dot(self, xs, ys):
        acc = 0
        for a, b in zip(xs, ys):
            if a and b:
                acc = self.add(acc, self.mul(a, b))
        return acc

    def scale(self, c, vec):
        return [self.mul(c, b) for b in vec]

    def axpy(self, y, c, x):
        return [self.add(a, self.mul(c, b)) for a, b in zip(y, x)]


def base_field(q: int, m: int):
    """F_{q^m} for prime q."""
    pp = prime_power(q)
    if pp is None:
        raise ValueError(f"q={q} is not a prime power")
    if pp[1] != 1:
        raise NotImplementedError("only prime q is supported")
    if m < 1:
        raise ValueError("m must be positive")
    return BinaryField(m) if q == 2 else OddField(q, m)


# -------------------------------------------------------- F_{q^{mu}}

class ExtField:
    """Degree-u extension of K = F_{q^m}; elements are u-tuples over K."""

    def __init__(self, K, u: int, modulus=None):
        if u < 1:
            raise ValueError("u must be positive")
        self.K = K
        self.u = u
        self.order = K.order ** u
        if modulus is None:
            modulus = find_modulus(K, u) if u > 1 else (K.zero,)
        self.modulus = tuple(modulus)
        self.zero = (0,) * u
        self.one = (1,) + (0,) * (u - 1)
        # x^u = -sum c_i x^i
        self._red = [K.neg(c) for c in self.modulus]

    def __repr__(self):
        return f"{self.K!r}^{self.u}"

    def add(self, a, b):
        K = self.K
        return tuple(K.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        K = self.K
        return tuple(K.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        return tuple(self.K.neg(x) for x in a)

    def mul(self, a, b):
        K, u = self.K, self.u
        prod = [K.zero] * (2 * u - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                if y:
                    prod[i + j] = K.add(prod[i + j], K.mul(x, y))
        red = self._red
        for i in range(2 * u - 2, u - 1, -1):
            c = prod[i]
            if c == 0:
                continue
            for j in range(u):
                if red[j]:
                    prod[i - u + j] = K.add(prod[i - u + j], K.mul(c, red[j]))
        return tuple(prod[:u])

    def scalar(self, c, a):
        """c*a for c in K."""
        return tuple(self.K.mul(c, x) for x in a)

    def embed(self, c):
        return (c,) + (0,) * (self.u - 1)

    def pow(self, a, e: int):
        if e < 0:
            a, e = self.inv(a), -e
        r = self.one
        while e:
            if e & 1:
                r = self.mul(r, a)
            e >>= 1
            if e:
                a = self.mul(a, a)
        return r

    def basis(self):
        return [tuple(int(i == j) for j in range(self.u)) for i in range(self.u)]

    def inv(self, a):
        if not any(a):
            raise ZeroDivisionError("inverse of zero")
        from .linalg import solve
        # columns are a * b^j
        cols = [self.mul(a, bj) for bj in self.basis()]
        M = [[cols[j][i] for j in range(self.u)] for i in range(self.u)]
        sol = solve(self.K, M, list(self.one))
        return tuple(sol[0])

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def random(self, rng):
        return tuple(self.K.random(rng) for _ in range(self.u))

    def elements(self):
        import itertools
        return itertools.product(self.K.elements(), repeat=self.u)


class Tower:
    """F_q ⊂ F_{q^m} ⊂ F_{q^{mu}} with trace and dual-basis helpers."""

    def __init__(self, q: int, m: int, u: int):
        self.q, self.m, self.u = q, m, u
        self.Fq = PrimeField(q) if is_prime(q) else None
        self.Fqm = base_field(q, m)
        self.Fqmu = ExtField(self.Fqm, u)
        self.modulus_m = self.Fqm.modulus
        self.modulus_u = self.Fqmu.modulus
        L = self.Fqmu
        # traces of the basis elements b^j
        self._tr_basis = [self._trace_slow(bj) for bj in L.basis()]
        self._dual = None

    def __repr__(self):
        return f"Tower(q={self.q}, m={self.m}, u={self.u})"

    def _conj(self, a):
        """a^{q^m}."""
        return self.Fqmu.pow(a, self.Fqm.order)

    def _trace_slow(self, a):
        L, acc, c = self.Fqmu, self.Fqmu.zero, a
        for _ in range(self.u):
            acc = L.add(acc, c)
            c = self._conj(c)
        if any(acc[1:]):
            raise ArithmeticError("trace left F_{q^m}")
        return acc[0]

    def frob_qm(self, a, i: int = 1):
        """a^{(q^m)^i} in F_{q^{mu}}."""
        for _ in range(i % self.u):
            a = self._conj(a)
        return a

    def trace(self, a):
        """Tr_{q^{mu}/q^m}(a)."""
        return self.Fqm.dot(a, self._tr_basis)

    def trace_mul_coeffs(self, alpha):
        """tau_j = Tr(alpha * b^j), so Tr(alpha*a) = sum_j tau_j a_j."""
        L = self.Fqmu
        return [self.trace(L.mul(alpha, bj)) for bj in L.basis()]

    def trace_vec(self, alpha, rows):
        """Tr(alpha * a_l) for a vector given as u rows over F_{q^m}."""
        K = self.Fqm
        tau = self.trace_mul_coeffs(alpha)
        n = len(rows[0]) if rows else 0
        out = [0] * n
        for t, row in zip(tau, rows):
            if t:
                out = K.axpy(out, t, row)
        return out

    def dual_basis(self, basis=None):
        """Trace-dual basis of a basis of F_{q^{mu}} over F_{q^m}."""
        from .linalg import inverse
        L, K = self.Fqmu, self.Fqm
        if basis is None:
            if self._dual is not None:
                return list(self._dual)
            b = L.basis()
        else:
            b = list(basis)
        u = self.u
        G = [[self.trace(L.mul(b[i], b[j])) for j in range(u)] for i in range(u)]
        Gi = inverse(K, G)
        if Gi is None:
            raise ValueError("not a basis")
        dual = []
        for j in range(u):
            acc = L.zero
            for l in range(u):
                acc = L.add(acc, L.scalar(Gi[l][j], b[l]))
            dual.append(acc)
        if basis is None:
            self._dual = dual
        return list(dual)

    # vectors over F_{q^{mu}} as tuples <-> u x n matrices over F_{q^m}
    def unfold(self, vec):
        return [[a[i] for a in vec] for i in range(self.u)]

    def fold(self, rows):
        return [tuple(col) for col in zip(*rows)]

    def trace_components(self, vec):
        """Rows Tr(g_i * a) against the polynomial basis g_i."""
        L = self.Fqmu
        return [[self.trace(L.mul(g, a)) for a in vec] for g in L.basis()]

    def from_trace_components(self, rows):
        """Inverse of trace_components: a = sum_i row_i * g_i^*."""
        L = self.Fqmu
        dual = self.dual_basis()
        n = len(rows[0])
        out = []
        for l in range(n):
            acc = L.zero
            for i in range(self.u):
                acc = L.add(acc, L.scalar(rows[i][l], dual[i]))
            out.append(acc)
        return out

    def unfold_q(self, vec):
        """m x n matrix over F_q of a vector over F_{q^m}."""
        K = self.Fqm
        cols = [K.coeffs(a) for a in vec]
        return [[c[i] for c in cols] for i in range(self.m)]

    def fold_q(self, M):
        K = self.Fqm
        return [K.from_coeffs(col) for col in zip(*M)]


@lru_cache(maxsize=32)
def tower_new(q: int, m: int, u: int) -> Tower:
    return Tower(q, m, u)
