"""Parameter sets, the named registry and the validity checks."""

from __future__ import annotations

import json
import math
import os
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from importlib import resources

from .field import is_prime

__all__ = [
    "ParameterSet",
    "Validation",
    "validate_params",
    "load_registry",
    "get_params",
    "parse_tuple",
    "REGISTRY_ENV",
]

REGISTRY_ENV = "LIGA_PARAM_REGISTRY"


@dataclass(frozen=True)
class ParameterSet:
    q: int
    m: int
    n: int
    k: int
    u: int
    w: int
    zeta: int
    t_pub: int | None = None
    lam: int | None = None
    name: str = field(default="custom", compare=False)

    def __post_init__(self):
        if self.t_pub is None:
            object.__setattr__(self, "t_pub", max(0, (self.n - self.k - self.w) // 2))

    @property
    def t(self):
        return self.t_pub

    def as_dict(self):
        d = asdict(self)
        d["lambda"] = d.pop("lam")
        return d

    def __str__(self):
        return (f"{self.name} (q={self.q}, m={self.m}, n={self.n}, k={self.k}, "
                f"u={self.u}, w={self.w}, zeta={self.zeta}, t_pub={self.t_pub})")


@dataclass
class Validation:
    """Violations split into those that break decryption and those that
    only break the security argument."""

    correctness: list = field(default_factory=list)
    security: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def correctness_ok(self):
        return not self.correctness

    @property
    def security_ok(self):
        return not self.security

    @property
    def ok(self):
        return self.correctness_ok and self.security_ok

    @property
    def violations(self):
        return self.correctness + self.security

    def __bool__(self):
        return self.ok


def validate_params(p: ParameterSet) -> Validation:
    """Check every restriction and report all violations at once."""
    v = Validation()
    q, m, n, k, u, w, z = p.q, p.m, p.n, p.k, p.u, p.w, p.zeta
    bad = v.correctness.append
    if not is_prime(q):
        bad(f"q = {q} is not prime (only prime q is supported)")
    if n > m:
        bad(f"n <= m fails ({n} > {m})")
    if not k < n:
        bad(f"k < n fails ({k} >= {n})")
    if not 2 <= u < k:
        bad(f"2 <= u < k fails (u = {u}, k = {k})")
    if w < 1 or z < 1:
        bad("w and zeta must be positive")
    if n - k - w < 1:
        bad(f"n - k - w >= 1 fails ({n - k - w})")
    t_formula = (n - k - w) // 2
    if p.t_pub != t_formula:
        bad(f"t_pub = floor((n-k-w)/2) fails ({p.t_pub} != {t_formula})")
    if w + 2 * p.t_pub > n - k:
        bad(f"w + 2 t_pub <= n - k fails ({w + 2 * p.t_pub} > {n - k})")
    if z > u:
        bad(f"zeta <= u fails ({z} > {u})")
    if z > w:
        bad(f"zeta <= w fails ({z} > {w})")

    sec = v.security.append
    if u > 1:
        lo1 = Fraction(n - k) - Fraction(k - u, u - 1)
        if w < lo1:
            sec(f"w >= n-k-(k-u)/(u-1) = {float(lo1):g} fails (w = {w})")
    lo2 = (n - k) // 2 + 1
    if w < lo2:
        sec(f"w >= floor((n-k)/2)+1 = {lo2} fails (w = {w})")
    hi = Fraction(u * (n - k), u + 2)
    if not w < hi:
        sec(f"w < u(n-k)/(u+2) = {float(hi):g} fails (w = {w})")
    if n - k - w >= 1 and not z < Fraction(w, n - k - w):
        sec(f"zeta < w/(n-k-w) = {w}/{n - k - w} fails (zeta = {z})")
    if Fraction(z * q ** (z * w), q ** m) > Fraction(1, 2):
        sec("zeta q^(zeta w - m) <= 1/2 fails")
    bits = (k - u) * m * math.log2(q) if q > 1 else 0
    if bits < 256:
        v.notes.append(f"KEM message entropy (k-u) m log2 q = {bits:g} < 256 bits")
    return v


# --------------------------------------------------------------- registry

def _registry_text(path=None):
    path = path or os.environ.get(REGISTRY_ENV)
    if path:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    return resources.files("liga").joinpath("data/params.json").read_text("utf-8")


def load_registry(path=None) -> dict:
    """Named parameter sets; LIGA_PARAM_REGISTRY overrides the file."""
    raw = json.loads(_registry_text(path))
    out = {}
    for name, d in raw.items():
        out[name] = ParameterSet(
            q=d["q"], m=d["m"], n=d["n"], k=d["k"], u=d["u"], w=d["w"],
            zeta=d["zeta"], t_pub=d.get("t_pub"), lam=d.get("lambda"), name=name,
        )
    return out


def get_params(name: str) -> ParameterSet:
    reg = load_registry()
    if name not in reg:
        raise KeyError(f"unknown parameter set {name!r}; known: {', '.join(reg)}")
    return reg[name]


def parse_tuple(text: str) -> ParameterSet:
    """'q,m,n,k,u,w,zeta' with an optional eighth t_pub entry."""
    parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    if len(parts) not in (7, 8):
        raise ValueError("expected q,m,n,k,u,w,zeta[,t_pub]")
    q, m, n, k, u, w, z = parts[:7]
    t = parts[7] if len(parts) == 8 else None
    return ParameterSet(q, m, n, k, u, w, z, t)
