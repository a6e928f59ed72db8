"""Volumes of toric adelic divisors from the concave transform G on [-a0, aInf],
and a brute-force count of small sections to audit them."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath

from .adelic import AdelicDivisor, NegativeDegree, _require_toric
from .exactmath import LogNumber, Q, ZERO_LOG, exp_rational, floor_exp
from .green_place import NotToric

ZERO = Fraction(0)
MAX_RANK = 24


class IrrationalCrossing(ArithmeticError):
    """A zero of G falls strictly between breakpoints at an irrational abscissa."""


class RankTooLarge(ValueError):
    pass


@dataclass(frozen=True)
class ConcaveTransform:
    lo: Fraction
    hi: Fraction
    xs: tuple  # rational breakpoints, lo and hi included
    vals: tuple  # LogNumber values of G at xs

    def value(self, x) -> LogNumber:
        x = Q(x)
        if not self.lo <= x <= self.hi:
            raise ValueError("x outside the Okounkov interval")
        for i, xi in enumerate(self.xs):
            if xi == x:
                return self.vals[i]
            if xi > x:
                x0, v0, v1 = self.xs[i - 1], self.vals[i - 1], self.vals[i]
                return v0 + (v1 - v0) * ((x - x0) / (xi - x0))
        raise AssertionError("unreachable")

    def integral(self, a=None, b=None) -> LogNumber:
        a = self.lo if a is None else Q(a)
        b = self.hi if b is None else Q(b)
        grid = [a] + [x for x in self.xs if a < x < b] + [b]
        tot = ZERO_LOG
        for x0, x1 in zip(grid, grid[1:]):
            tot = tot + (self.value(x0) + self.value(x1)) * ((x1 - x0) / 2)
        return tot

    def _crossing(self, i: int) -> Fraction:
        v0, v1 = self.vals[i], self.vals[i + 1]
        t = v0.ratio(v0 - v1)
        if t is None:
            raise IrrationalCrossing(
                f"G changes sign between {self.xs[i]} and {self.xs[i + 1]} at an irrational point")
        return self.xs[i] + t * (self.xs[i + 1] - self.xs[i])

    def _interval(self, strict: bool):
        signs = [v.sign() for v in self.vals]
        good = [i for i, s in enumerate(signs) if (s > 0 if strict else s >= 0)]
        if not good:
            return None
        i0, i1 = good[0], good[-1]
        return self._end(signs, i0, i0 - 1), self._end(signs, i1, i1 + 1)

    def _end(self, signs, i: int, j: int) -> Fraction:
        # i is the outermost good vertex, j its outside neighbour
        if j < 0 or j >= len(self.xs) or signs[i] == 0:
            return self.xs[i]
        if signs[j] == 0:
            return self.xs[j]  # only reachable when strict
        return self._crossing(min(i, j))

    def theta(self):
        """Closure of {G > 0}, or None."""
        return self._interval(strict=True)

    def nonneg_interval(self):
        """{G >= 0}, or None."""
        return self._interval(strict=False)

    def is_concave(self) -> bool:
        s = [(v1 - v0) / (x1 - x0) for x0, x1, v0, v1 in zip(self.xs, self.xs[1:], self.vals, self.vals[1:])]
        return all(a >= b for a, b in zip(s, s[1:]))

    def float_points(self) -> list[tuple[float, float]]:
        return [(float(x), float(v)) for x, v in zip(self.xs, self.vals)]


def _node_data(D: AdelicDivisor):
    """Per listed prime: (p, [(c_j, w_j, a_j)])."""
    out = []
    for p, g in D.greens:
        m = g.model
        if m.zord is None:
            raise NotToric(f"model at {p} carries no toric data")
        out.append((p, [(c, w, a) for c, w, a in zip(g.vert, m.zord, m.mult)]))
    return out


def _theta_inf(D: AdelicDivisor, x) -> LogNumber:
    return (LogNumber(D.arch.pl.legendre_inf(x)) + D.arch.offset) / 2


def _theta_p(p: int, nodes, x) -> LogNumber:
    return LogNumber.log_prime(p, min((c + x * w) / a for c, w, a in nodes))


def concave_transform(D: AdelicDivisor) -> ConcaveTransform:
    _require_toric(D)
    if D.deg < 0:
        raise NegativeDegree("Okounkov interval is empty for negative degree")
    lo, hi = -D.a0, D.ainf
    cand = {lo, hi}
    cand.update(s for s in D.arch.pl.convex_minorant().segment_slopes() if lo < s < hi)
    nodes = _node_data(D)
    for _, ns in nodes:
        for i, (ci, wi, ai) in enumerate(ns):
            for cj, wj, aj in ns[i + 1:]:
                dv = Fraction(wi, ai) - Fraction(wj, aj)
                if dv:
                    x = (cj / aj - ci / ai) / dv
                    if lo < x < hi:
                        cand.add(x)
    xs = tuple(sorted(cand))
    vals = []
    for x in xs:
        v = _theta_inf(D, x)
        for p, ns in nodes:
            v = v + _theta_p(p, ns, x)
        vals.append(v)
    return ConcaveTransform(lo, hi, xs, tuple(vals))


def volume(D: AdelicDivisor) -> LogNumber:
    ct = concave_transform(D)
    th = ct.theta()
    if th is None:
        return ZERO_LOG
    return ct.integral(*th) * 2


def volume_enclosure(D: AdelicDivisor, prec: int = 200):
    """Interval containing vol(D), also when a zero of G is irrational.

    Signs at breakpoints are decided exactly; only the crossing pieces are
    evaluated in interval arithmetic."""
    ct = concave_transform(D)
    iv = mpmath.iv
    old = iv.prec
    iv.prec = prec
    try:
        tot = iv.mpf(0)
        for x0, x1, v0, v1 in zip(ct.xs, ct.xs[1:], ct.vals, ct.vals[1:]):
            h = iv.mpf((x1 - x0).numerator) / (x1 - x0).denominator
            s0, s1 = v0.sign(), v1.sign()
            if s0 <= 0 and s1 <= 0:
                continue
            a, b = v0.to_iv(prec), v1.to_iv(prec)
            if s0 >= 0 and s1 >= 0:
                tot += (a + b) * h / 2
            else:
                # one endpoint positive, the other negative: triangle over the positive side
                top, drop = (a, v0 - v1) if s0 > 0 else (b, v1 - v0)
                tot += top * top * h / (2 * drop.to_iv(prec))
        return 2 * tot
    finally:
        iv.prec = old


def chi_volume(D: AdelicDivisor) -> LogNumber:
    return concave_transform(D).integral() * 2


# small sections

@dataclass(frozen=True)
class LatticeCountReport:
    m: int
    lower: int
    upper: int
    rank: int
    method: str  # 'exact' simplex enumeration or 'bound' when over budget

    def __post_init__(self):
        if self.lower > self.upper:
            raise AssertionError("lower count exceeds upper count")

    @property
    def log_lower(self) -> float:
        return math.log(self.lower)

    @property
    def log_upper(self) -> float:
        return math.log(self.upper)


def section_weights(D: AdelicDivisor, m: int) -> list[tuple[int, LogNumber]]:
    """(k, log W_k): W_k is the largest norm of the lattice generator N_k z^k in H^0(mD)."""
    _require_toric(D)
    nodes = _node_data(D)
    kmin = math.ceil(-m * D.a0)
    kmax = math.floor(m * D.ainf)
    out = []
    for k in range(kmin, kmax + 1):
        x = Fraction(k, m)
        L = -(LogNumber(D.arch.pl.legendre_inf(x)) + D.arch.offset) * Fraction(m, 2)
        for p, ns in nodes:
            e = math.ceil(-min((m * c + k * w) / a for c, w, a in ns))
            L = L + LogNumber.log_prime(p, e)
        out.append((k, L))
    return out


class _Budget(Exception):
    pass


def _count_rational(weights: list[Fraction], budget: int) -> int:
    den = math.lcm(*(w.denominator for w in weights))
    A = [int(w * den) for w in weights]
    nodes = [0]

    def rec(i: int, R: int) -> int:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if i == len(A) - 1:
            return 2 * (R // A[i]) + 1
        tot = rec(i + 1, R)
        for t in range(1, R // A[i] + 1):
            tot += 2 * rec(i + 1, R - t * A[i])
        return tot

    return rec(0, den)


def _count_real(logs: list[LogNumber], budget: int) -> int:
    W = [float(mpmath.exp(L.to_mpf(30))) for L in logs]
    nodes = [0]
    path: list[int] = []

    def exact_floor(i: int, R: float) -> int:
        q = R / W[i]
        f = math.floor(q)
        if min(q - f, f + 1 - q) > 1e-9:
            return f
        with mpmath.workdps(100):
            Rx = 1 - sum(t * mpmath.exp(logs[j].to_mpf(100)) for j, t in enumerate(path))
            qx = Rx / mpmath.exp(logs[i].to_mpf(100))
            fx = mpmath.floor(qx)
            if qx - fx < mpmath.mpf(10) ** -70 or fx + 1 - qx < mpmath.mpf(10) ** -70:
                fx = mpmath.nint(qx)  # exact tie: the boundary counts
            return int(fx)

    def rec(i: int, R: float) -> int:
        nodes[0] += 1
        if nodes[0] > budget:
            raise _Budget
        if i == len(W) - 1:
            return 2 * exact_floor(i, R) + 1
        T = exact_floor(i, R)
        path.append(0)
        tot = rec(i + 1, R)
        for t in range(1, T + 1):
            path[-1] = t
            tot += 2 * rec(i + 1, R - t * W[i])
        path.pop()
        return tot

    return rec(0, 1.0)


def hzero_oracle(D: AdelicDivisor, m: int, budget: int = 200_000) -> LatticeCountReport:
    """Bounds on the number of small sections of mD.

    upper: lattice points in the coefficient box; lower: lattice points in
    the simplex sum |t_k| W_k <= 1, counted exactly when the enumeration
    stays within budget, otherwise an inscribed box or the axes."""
    if m < 1:
        raise ValueError("level must be positive")
    ws = section_weights(D, m)
    if len(ws) > MAX_RANK:
        raise RankTooLarge(f"lattice rank {len(ws)} exceeds {MAX_RANK}")
    B = {k: floor_exp(-L) for k, L in ws}
    upper = 1
    for b in B.values():
        upper *= 2 * b + 1
    active = sorted((k for k, _ in ws if B[k] > 0), key=lambda k: B[k])
    if not active:
        return LatticeCountReport(m, 1, upper, len(ws), "exact")
    logs = {k: L for k, L in ws}
    lw = [logs[k] for k in active]
    rat = [exp_rational(L) for L in lw]
    try:
        if all(r is not None for r in rat):
            lower = _count_rational(rat, budget)
        else:
            lower = _count_real(lw, budget)
        method = "exact"
    except _Budget:
        r = len(active)
        box = 1
        for L in lw:
            box *= 2 * floor_exp(-L - LogNumber.log_of(r)) + 1
        lower = max(box, 1 + 2 * sum(B[k] for k in active))
        method = "bound"
    return LatticeCountReport(m, lower, upper, len(ws), method)


# box lattices

@dataclass(frozen=True)
class ChiReport:
    rank: int
    chi: LogNumber
    shift: Fraction
    chi_shifted: LogNumber
    law_holds: bool


def lattice_chi(scalings, shift=0) -> ChiReport:
    """chi of Z^r with the box norm max |x_k| / lambda_k, before and after exp(-shift)."""
    lam = [Q(s) for s in scalings]
    if any(s <= 0 for s in lam):
        raise ValueError("scalings must be positive")
    shift = Q(shift)
    # unit ball is the box prod [-1/lambda_k, 1/lambda_k]; covolume 1
    chi = sum((LogNumber.log_of(2 / s) for s in lam), ZERO_LOG)
    # rescaled norm exp(-shift) * |.|: every side grows by exp(shift)
    chi2 = sum((LogNumber.log_of(2 / s) + shift for s in lam), ZERO_LOG)
    return ChiReport(len(lam), chi, shift, chi2, chi2 == chi + shift * len(lam))


# level-wise audit

@dataclass
class VolumeLimitReport:
    volume: LogNumber
    chi_volume: LogNumber
    rows: list = field(default_factory=list)  # (m, lower, upper, 2 log(lower)/m^2, 2 log(upper)/m^2, method)
    homogeneity: dict = field(default_factory=dict)  # a -> vol(aD) == a^2 vol(D)


def volume_limit_check(D: AdelicDivisor, mmax: int, budget: int = 200_000) -> VolumeLimitReport:
    vol = volume(D)
    rep = VolumeLimitReport(vol, chi_volume(D))
    for m in range(1, mmax + 1):
        r = hzero_oracle(D, m, budget)
        rep.rows.append((m, r.lower, r.upper, 2 * r.log_lower / m ** 2, 2 * r.log_upper / m ** 2, r.method))
    for a in (1, 2, 3):
        rep.homogeneity[a] = volume(D.scale(a)) == vol * (a * a)
    return rep
