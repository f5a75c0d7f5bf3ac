"""Work-factor and weak-key calculator.

All counts are evaluated with exact integers or fractions; only the final
log2 (and the non-integer linear-algebra exponent mu) go through mpmath at
high precision.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial, gcd

import mpmath

from .linalg import avg_interleaved_codewords, gauss_binom, log2
from .params import ParameterSet

__all__ = [
    "MU",
    "SecurityReport",
    "WeakKeyReport",
    "work_factors",
    "weak_key_analysis",
    "rgd_exponent",
    "list_size_worst",
    "mrd_weight_distribution",
    "CLASSICAL",
]

MU = Fraction(2807, 1000)
_PREC = 512

# attacks entering the minimum; list bounds, the distinguisher and the
# Groebner counters are reported on the side
CLASSICAL = ("z", "ILD", "RGD_pk", "RGD_ct", "MCE", "CRSD", "ARSD", "Lin", "GCD", "alpha")


def _lg(x) -> float:
    return log2(x)


def _lgq(p):
    return math.log2(p.q)


def _phi(p):
    return min(p.zeta * (p.n - p.k - p.w), p.w)


def rgd_exponent(p: ParameterSet, w: int) -> Fraction:
    """log_q of the randomized-decoding cost without the n/64 factor.

    xi is the excess of w over half the redundancy, w - (n-k)/2: the
    dimension the decoder has to guess correctly beyond unique decoding.
    """
    m, n, k = p.m, p.n, p.k
    xi = Fraction(w) - Fraction(n - k, 2)
    extra = min(2 * xi * (Fraction(n + k, 2) - xi), Fraction(w * k))
    return m * (n - k) - w * (n + m) + w * w + extra


def _rgd_log2(p, w):
    return _lg(Fraction(p.n, 64)) + float(rgd_exponent(p, w)) * _lgq(p)


def _rgd_literal_min(p, w):
    # the exponent minimised over integer xi in [0, (n+k)/2]; kept only for
    # comparison since it reduces to xi = 0 and can go negative
    m, n, k = p.m, p.n, p.k
    best = None
    for xi in range((n + k) // 2 + 1):
        e = m * (n - k) - w * (n + m) + w * w + min(2 * xi * Fraction(n + k, 2) - 2 * xi * xi, w * k)
        best = e if best is None else min(best, e)
    return _lg(Fraction(n, 64)) + float(best) * _lgq(p)


def _gr(p):
    m, n, k, t = p.m, p.n, p.k, p.t_pub
    e = t if m * comb(n - k - 1, t) <= comb(n, t) else t + 1
    base = Fraction(((m + n) * t) ** e, factorial(e))
    return float(MU) * _lg(base)


def _wogr(p):
    """(log2 WF, case, detail)."""
    m, n, k, t, q = p.m, p.n, p.k, p.t_pub, p.q
    mu1 = float(MU - 1)
    if m * comb(n - k - 1, t) >= comb(n, t) - 1:
        pp = next((i for i in range(1, n + 1)
                   if m * comb(n - i - k - 1, t) >= comb(n - i, t) - 1), None)
        if pp is None:
            return math.inf, "over", {}
        val = _lg(m * comb(n - pp - k - 1, t)) + mu1 * _lg(comb(n - pp, t))
        return val, "over", {"p": pp}
    a = next((i for i in range(1, n + 1)
              if m * comb(n - k - 1, t) >= comb(n - i, t) - 1), None)
    hyb = math.inf
    if a is not None:
        hyb = a * t * _lgq(p) + _lg(m * comb(n - k - 1, t)) + mu1 * _lg(comb(n - a, t))
    under, best_b = math.inf, None
    mk1 = m * k + 1
    for b in range(1, t + 2):
        A = sum(comb(n, t) * comb(mk1, j) for j in range(1, b + 1))
        B = sum(m * comb(n - k - 1, t) * comb(mk1, j) for j in range(1, b + 1))
        C = sum((-1) ** (i + 1) * comb(n, t + i) * comb(m + i - 1, i) * comb(mk1, j - i)
                for j in range(1, b + 1) for i in range(1, j + 1))
        if A - 1 > B + C or B + C <= 0:
            continue
        num = B * comb(k + t + 1, t) + C * mk1 * (t + 1)
        if num <= 0:
            continue
        val = _lg(Fraction(num, B + C)) + 2 * _lg(A)
        if val < under:
            under, best_b = val, b
    if under <= hyb:
        return under, "under", {"b": best_b, "a": a, "hybrid": hyb}
    return hyb, "hybrid", {"a": a, "b": best_b, "under": under}


def list_size_worst(p: ParameterSet, tau: int):
    """log2 of the worst-case list-size bound at radius tau, or None when
    n does not divide m or gcd(n, n - tau) < 2."""
    n, m, q = p.n, p.m, p.q
    if m % n or tau >= n:
        return None
    d = gcd(n, n - tau)
    if d < 2:
        return None
    best = None
    for g in range(2, d + 1):
        if d % g:
            continue
        num = gauss_binom(q ** g, n // g, (n - tau) // g)
        val = _lg(num) - n * (tau // g - 1) * _lgq(p)
        best = val if best is None else max(best, val)
    return best


@dataclass
class WeakKeyReport:
    hypothesis_ok: bool
    hypothesis_log2: float          # log2(zeta q^(zeta w - m))
    t: int | None                   # smallest admissible min. distance
    pr_weak_log2: float | None      # Theorem-10 style bound at t
    pr_lowrank_log2: float | None   # conditional low-rank bound at t
    lam: int | None
    domain: tuple = ()

    @property
    def passes(self):
        if not self.hypothesis_ok or self.t is None or self.lam is None:
            return False
        return self.pr_weak_log2 <= -self.lam and self.pr_lowrank_log2 <= -self.lam

    def __iter__(self):
        yield self.t
        yield self.pr_weak_log2
        yield self.pr_lowrank_log2


def _pr_lowrank_log2(p, t):
    q, m, n, w, tp, z = p.q, p.m, p.n, p.w, p.t_pub, p.zeta
    with mpmath.workprec(_PREC):
        e = -Fraction(t + tp - w + 1) * (n + Fraction(t - 3 * w - tp, 2))
        val = (mpmath.mpf(q) ** (-m * z)
               + 64 * min(t, tp) ** 2 * mpmath.power(q, mpmath.mpf(e.numerator) / e.denominator))
        return float(mpmath.log(val, 2)), val


def _pr_weak(p, t) -> Fraction:
    q, m, w, z = p.q, p.m, p.w, p.zeta
    s = 0
    for i in range(t):
        prod = 1
        for j in range(i):
            prod *= q ** m - q ** j
        s += gauss_binom(q, w, i) * prod
    return Fraction(2 * (q ** (m * z) - 1), (q ** m - 1) * (q ** (m * w) - 1)) * (s - 1)


def weak_key_analysis(p: ParameterSet) -> WeakKeyReport:
    """Threshold t and the two probability bounds of the weak-key argument."""
    q, m, w, z = p.q, p.m, p.w, p.zeta
    h = Fraction(z * q ** (z * w), q ** m)
    h_ok = h <= Fraction(1, 2)
    lam = p.lam
    lo, hi = 2, w - z + 2
    t_found = None
    if lam is not None:
        with mpmath.workprec(_PREC):
            bound = mpmath.mpf(2) ** (-lam)
            for t in range(lo, hi + 1):
                if _pr_lowrank_log2(p, t)[1] <= bound:
                    t_found = t
                    break
    if t_found is None:
        return WeakKeyReport(h_ok, _lg(h), None, None, None, lam, (lo, hi))
    pw = _pr_weak(p, t_found)
    pw_log = _lg(pw) if pw > 0 else -math.inf
    return WeakKeyReport(h_ok, _lg(h), t_found, pw_log,
                         _pr_lowrank_log2(p, t_found)[0], lam, (lo, hi))


@dataclass
class SecurityReport:
    params: ParameterSet
    wf: dict                        # attack -> log2 work factor
    info: dict = field(default_factory=dict)
    weak: WeakKeyReport | None = None

    @property
    def min_wf(self):
        return min(self.wf[a] for a in CLASSICAL)

    @property
    def argmin(self):
        return min(CLASSICAL, key=lambda a: self.wf[a])

    @property
    def lam(self):
        return self.params.lam

    def margin_ok(self, margin=20):
        return self.lam is not None and self.min_wf >= self.lam + margin

    def as_dict(self):
        d = {f"WF_{a}": round(v, 6) for a, v in self.wf.items()}
        for key, v in self.info.items():
            d[key] = round(v, 6) if isinstance(v, float) else v
        d["min_classical_WF"] = round(self.min_wf, 6)
        d["argmin"] = "WF_" + self.argmin
        if self.weak is not None:
            wk = self.weak
            d["weak_hypothesis_log2"] = round(wk.hypothesis_log2, 6)
            d["weak_t"] = wk.t
            d["Pr_weak_log2"] = None if wk.pr_weak_log2 is None else round(wk.pr_weak_log2, 6)
            d["Pr_lowrank_log2"] = None if wk.pr_lowrank_log2 is None else round(wk.pr_lowrank_log2, 6)
        return d

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True)

    def to_text(self):
        lines = [str(self.params)]
        for key, v in self.as_dict().items():
            if isinstance(v, float):
                v = f"{v:.2f}"
            lines.append(f"  {key:<24} {v}")
        if self.lam is not None:
            lines.append(f"  {'target lambda+20':<24} {self.lam + 20}")
            lines.append(f"  {'margin':<24} {'ok' if self.margin_ok() else 'NOT MET'}")
            lines.append(f"  {'argmin is GCD':<24} {self.argmin == 'GCD'}")
        return "\n".join(lines)


def work_factors(p: ParameterSet) -> SecurityReport:
    q, m, n, k, u, w, z, t = p.q, p.m, p.n, p.k, p.u, p.w, p.zeta, p.t_pub
    lq = _lgq(p)
    N = avg_interleaved_codewords(n, k, w, m, u, q)
    lN = _lg(N)
    phi = _phi(p)
    wf = {}
    wf["z"] = _lg(gauss_binom(q, n, w)) - lN
    wf["ILD"] = m * (w - phi) * lq - lN
    wf["RGD_pk"] = _rgd_log2(p, w)
    wf["RGD_ct"] = _rgd_log2(p, w + t)
    wf["MCE"] = (n - w) * (w * (z + 1) - z * (n - k)) * lq
    wf["CRSD"] = _lg((n - k) ** 3 * m ** 3) + (t * -(-(k + 1) * m // n) - m) * lq
    gr = _gr(p)
    wogr, case, detail = _wogr(p)
    wf["Gr"] = gr
    wf["Wogr"] = wogr
    wf["ARSD"] = min(gr, wogr)
    wf["Lin"] = m * max(u * t + u + 1 - phi, (u + 2) * t + k + 1 - n) * lq
    wf["GCD"] = m * (u - 1) * lq + _lg(Fraction(q ** (t + 1) - 1, q - 1))
    wf["alpha"] = m * u * lq
    wf["distinguisher"] = m * z * lq
    wf["list_pk"] = m * (u - 1) * k * lq - lN
    info = {
        "log2_N": lN,
        "phi_bound": phi,
        "WF_z_lower": w * (n - w) * lq - lN,
        "wogr_case": case,
        "RGD_pk_xi_grid_min": _rgd_literal_min(p, w),
        "n_p_log2": _lg(comb(n, k + 2 * t - u + 1)),
        "d_p": (q ** (t + 1) - 1) // (q - 1),
        "overbeck_guard": Fraction(w) >= Fraction(n - k) - Fraction(k - u, u - 1),
        "gamma_spread": m * (t - u) + t * (n - t - 1),
    }
    info["n_p_d_p_ok"] = info["n_p_log2"] >= 32 and info["d_p"] >= 127
    for key, v in detail.items():
        info[f"wogr_{key}"] = v
    tau = w + t
    Lc = list_size_worst(p, tau)
    info["L_c_worst_log2"] = "n/a" if Lc is None else Lc
    return SecurityReport(p, wf, info, weak_key_analysis(p))


def mrd_weight_distribution(q: int, m: int, n: int, k: int) -> dict:
    """Rank-weight distribution {rank: count} of any [n, k] MRD code over
    F_{q^m} with n <= m (d = n - k + 1)."""
    d = n - k + 1
    out = {0: 1}
    for s in range(n - d + 1):
        tot = 0
        for j in range(s + 1):
            tot += ((-1) ** (j + s) * gauss_binom(q, d + s, d + j)
                    * q ** ((s - j) * (s - j - 1) // 2) * (q ** (m * (j + 1)) - 1))
        out[d + s] = gauss_binom(q, n, d + s) * tot
    return out
