"""Exact arithmetic substrate: rationals, log-linear numbers, rational
linear algebra and piecewise-linear functions of one variable."""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

import mpmath
from sympy import factorint

MINUS_INFINITY = float("-inf")


class NonSymmetric(ValueError):
    pass


class NoSolution(ValueError):
    pass


class UnboundedSupport(ValueError):
    pass


class NoMinorant(ValueError):
    pass


_RAT = re.compile(r"^[+-]?\d+(/\d+)?$")


def Q(x) -> Fraction:
    """Coerce ints, Fractions and 'num/den' strings to Fraction.

    Floats are refused: every coefficient in this package is exact."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        s = x.strip()
        if not _RAT.match(s):
            raise ValueError(f"not a rational of the form num/den: {x!r}")
        q = Fraction(s)
        return q
    raise TypeError(f"cannot use {type(x).__name__} as an exact rational")


def fmt_q(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


@lru_cache(maxsize=4096)
def _factor(n: int) -> tuple:
    return tuple(sorted(factorint(n).items()))


def ord_p(q: Fraction, p: int) -> int:
    """p-adic valuation of a nonzero rational."""
    q = Q(q)
    if q == 0:
        raise ValueError("ord of zero")
    v = 0
    num, den = abs(q.numerator), q.denominator
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v


def rational_factorization(q: Fraction) -> dict[int, int]:
    q = Q(q)
    if q == 0:
        raise ValueError("log of zero")
    out: dict[int, int] = {}
    for p, e in _factor(abs(q.numerator)):
        out[p] = out.get(p, 0) + e
    for p, e in _factor(q.denominator):
        out[p] = out.get(p, 0) - e
    return {p: e for p, e in out.items() if e}


# ---------------------------------------------------------------- LogNumber

def _canonical_logs(logs) -> bool:
    if type(logs) is not tuple:
        return False
    last = 1
    for item in logs:
        if type(item) is not tuple or len(item) != 2:
            return False
        p, c = item
        if type(p) is not int or p <= last or type(c) is not Fraction or not c:
            return False
        last = p
    return True


@dataclass(frozen=True)
class LogNumber:
    """q0 + sum_p q_p log p with exact rational coefficients."""

    unit: Fraction = Fraction(0)
    logs: tuple = ()  # sorted ((p, q_p), ...) with q_p != 0

    def __post_init__(self):
        if type(self.unit) is not Fraction:
            object.__setattr__(self, "unit", Q(self.unit))
        if _canonical_logs(self.logs):
            return
        clean = {}
        for p, c in self.logs:
            c = Q(c)
            if c:
                clean[int(p)] = clean.get(int(p), Fraction(0)) + c
        object.__setattr__(self, "logs", tuple(sorted((p, c) for p, c in clean.items() if c)))

    @staticmethod
    def of(unit=0, logs: dict | None = None) -> "LogNumber":
        return LogNumber(Q(unit), tuple((logs or {}).items()))

    @staticmethod
    def log_of(q) -> "LogNumber":
        """log |q| for a nonzero rational q."""
        return LogNumber(Fraction(0), tuple((p, Fraction(e)) for p, e in rational_factorization(q).items()))

    @staticmethod
    def log_prime(p: int, coeff=1) -> "LogNumber":
        return LogNumber(Fraction(0), ((p, Q(coeff)),))

    def coeff(self, p: int) -> Fraction:
        for r, c in self.logs:
            if r == p:
                return c
        return Fraction(0)

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.logs)

    def is_zero(self) -> bool:
        return self.unit == 0 and not self.logs

    def is_rational(self) -> bool:
        return not self.logs

    def __add__(self, other):
        other = _as_log(other)
        if other is NotImplemented:
            return other
        d = dict(self.logs)
        for p, c in other.logs:
            d[p] = d.get(p, Fraction(0)) + c
        return LogNumber(self.unit + other.unit, tuple(d.items()))

    __radd__ = __add__

    def __neg__(self):
        return LogNumber(-self.unit, tuple((p, -c) for p, c in self.logs))

    def __sub__(self, other):
        other = _as_log(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, k):
        if isinstance(k, LogNumber):
            if k.is_rational():
                k = k.unit
            elif self.is_rational():
                return k * self.unit
            else:
                raise TypeError("product of two transcendental LogNumbers is not a LogNumber")
        k = Q(k)
        return LogNumber(self.unit * k, tuple((p, c * k) for p, c in self.logs))

    __rmul__ = __mul__

    def __truediv__(self, k):
        return self * (1 / Q(k))

    def ratio(self, other: "LogNumber") -> Fraction | None:
        """self / other when the two are Q-proportional, else None."""
        other = _as_log(other)
        if other.is_zero():
            raise ZeroDivisionError("ratio by zero LogNumber")
        if other.unit:
            r = self.unit / other.unit
        else:
            p0, c0 = other.logs[0]
            r = self.coeff(p0) / c0
        return r if self == other * r else None

    def __eq__(self, other):
        other = _as_log(other)
        if other is NotImplemented:
            return False
        return self.unit == other.unit and self.logs == other.logs

    def __hash__(self):
        return hash((self.unit, self.logs))

    def to_iv(self, prec: int = 200):
        """Rigorous enclosure as an mpmath interval at `prec` bits."""
        iv = mpmath.iv
        old = iv.prec
        iv.prec = prec
        try:
            acc = iv.mpf(self.unit.numerator) / self.unit.denominator
            for p, c in self.logs:
                acc += iv.mpf(c.numerator) / c.denominator * iv.log(p)
            return acc
        finally:
            iv.prec = old

    def sign(self) -> int:
        if self.is_zero():
            return 0
        if not self.logs:
            return 1 if self.unit > 0 else -1
        # double-precision screen; the margin dwarfs the accumulated rounding error
        approx = float(self.unit)
        scale = abs(approx)
        for p, c in self.logs:
            t = float(c) * math.log(p)
            approx += t
            scale += abs(t)
        if math.isfinite(scale) and abs(approx) > 1e-12 * scale:
            return 1 if approx > 0 else -1
        prec = 200
        while True:
            acc = self.to_iv(prec)
            lo, hi = acc.a, acc.b
            if lo > 0:
                return 1
            if hi < 0:
                return -1
            prec *= 2
            if prec > 1 << 16:  # unreachable for nonzero values (Baker)
                raise ArithmeticError(f"sign of {self} unresolved")

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def to_mpf(self, dps: int = 60):
        with mpmath.workdps(dps + 10):
            acc = mpmath.mpf(self.unit.numerator) / self.unit.denominator
            for p, c in self.logs:
                acc += mpmath.mpf(c.numerator) / c.denominator * mpmath.log(p)
            return +acc

    def __float__(self):
        return float(self.to_mpf(30))

    def render(self) -> str:
        parts = []
        if self.unit:
            parts.append(fmt_q(self.unit))
        for p, c in self.logs:
            parts.append(f"{fmt_q(c)}·log{p}")
        if not parts:
            return "0"
        out = parts[0]
        for t in parts[1:]:
            out += " - " + t[1:] if t.startswith("-") else " + " + t
        return out

    def render_float(self, digits: int = 50) -> str:
        return mpmath.nstr(self.to_mpf(digits + 10), digits)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"LogNumber({self.render()})"

    def to_json(self) -> dict:
        return {"unit": fmt_q(self.unit), "logs": {str(p): fmt_q(c) for p, c in self.logs}}

    @staticmethod
    def from_json(obj) -> "LogNumber":
        if not isinstance(obj, dict) or set(obj) - {"unit", "logs"}:
            raise ValueError(f"bad LogNumber object: {obj!r}")
        logs = obj.get("logs", {})
        for p in logs:
            if not str(p).isdigit() or len(_factor(int(p))) != 1 or _factor(int(p))[0][1] != 1:
                raise ValueError(f"log key {p!r} is not a prime")
        return LogNumber(Q(obj.get("unit", "0")), tuple((int(p), Q(c)) for p, c in logs.items()))


ZERO_LOG = LogNumber()


def _as_log(x):
    if isinstance(x, LogNumber):
        return x
    if isinstance(x, (int, Fraction)) and not isinstance(x, bool):
        return LogNumber(Fraction(x))
    return NotImplemented


# ------------------------------------------------------- rational matrices

def is_symmetric(M: Sequence[Sequence[Fraction]]) -> bool:
    n = len(M)
    return all(len(r) == n for r in M) and all(M[i][j] == M[j][i] for i in range(n) for j in range(i))


def matvec(M, x) -> list[Fraction]:
    return [sum((Q(a) * Q(b) for a, b in zip(row, x)), Fraction(0)) for row in M]


def dot(x, y) -> Fraction:
    return sum((Q(a) * Q(b) for a, b in zip(x, y)), Fraction(0))


def quad(M, x, y=None) -> Fraction:
    """x^T M y (y defaults to x)."""
    return dot(x, matvec(M, x if y is None else y))


def _rref(A: list[list[Fraction]]):
    """In-place reduced row echelon form; returns pivot columns."""
    rows, cols = len(A), len(A[0]) if A else 0
    piv = []
    r = 0
    for c in range(cols):
        k = next((i for i in range(r, rows) if A[i][c] != 0), None)
        if k is None:
            continue
        A[r], A[k] = A[k], A[r]
        inv = 1 / A[r][c]
        A[r] = [v * inv for v in A[r]]
        for i in range(rows):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [a - f * b for a, b in zip(A[i], A[r])]
        piv.append(c)
        r += 1
        if r == rows:
            break
    return piv


def nullspace(M) -> list[list[Fraction]]:
    n = len(M[0]) if M else 0
    A = [[Q(v) for v in row] for row in M]
    piv = _rref(A) if A else []
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * n
        x[f] = Fraction(1)
        for i, c in enumerate(piv):
            x[c] = -A[i][f]
        basis.append(x)
    return basis


def semidef_analyze(M) -> tuple[bool, list[list[Fraction]]]:
    """(negative semidefinite?, kernel basis) via LDL^T with symmetric pivoting.

    A zero diagonal pivot with a nonzero off-diagonal entry in its row makes
    the form indefinite, which is how the negative check fails early."""
    M = [[Q(v) for v in row] for row in M]
    if not is_symmetric(M):
        raise NonSymmetric("matrix is not symmetric")
    A = [row[:] for row in M]
    active = list(range(len(M)))
    neg = True
    while active:
        if any(A[i][i] > 0 for i in active):
            neg = False
            break
        k = min(active, key=lambda i: A[i][i])
        d = A[k][k]
        if d == 0:
            # all remaining diagonals vanish: semidefinite only if the block is zero
            neg = all(A[i][j] == 0 for i in active for j in active)
            break
        active.remove(k)
        for i in active:
            f = A[i][k] / d
            if f:
                for j in active:
                    A[i][j] -= f * A[k][j]
    return neg, nullspace(M)


def solve_consistent(M, t) -> list[Fraction]:
    """Some x with Mx = t, or NoSolution."""
    t = [Q(v) for v in t]
    if all(v == 0 for v in t):
        return [Fraction(0)] * (len(M[0]) if M else 0)
    A = [[Q(v) for v in row] + [t[i]] for i, row in enumerate(M)]
    piv = _rref(A)
    cols = len(M[0])
    if cols in piv:
        raise NoSolution("right-hand side is outside the column space")
    x = [Fraction(0)] * cols
    for i, c in enumerate(piv):
        x[c] = A[i][cols]
    return x


# -------------------------------------------------------- piecewise linear

@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function on the real line.

    Determined by values at strictly increasing rational breakpoints plus
    the two end slopes.  An affine function keeps a single anchor at 0."""

    breakpoints: tuple
    values: tuple
    left_slope: Fraction
    right_slope: Fraction

    def __post_init__(self):
        bs = tuple(Q(b) for b in self.breakpoints)
        vs = tuple(Q(v) for v in self.values)
        if len(bs) != len(vs) or not bs:
            raise ValueError("need matching, nonempty breakpoints and values")
        if any(b2 <= b1 for b1, b2 in zip(bs, bs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        ls, rs = Q(self.left_slope), Q(self.right_slope)
        bs, vs = _canonical(bs, vs, ls, rs)
        object.__setattr__(self, "breakpoints", bs)
        object.__setattr__(self, "values", vs)
        object.__setattr__(self, "left_slope", ls)
        object.__setattr__(self, "right_slope", rs)

    # constructors
    @staticmethod
    def affine(slope, intercept) -> "PLFunction":
        s = Q(slope)
        return PLFunction((Fraction(0),), (Q(intercept),), s, s)

    @staticmethod
    def constant(c) -> "PLFunction":
        return PLFunction.affine(0, c)

    @staticmethod
    def from_points(points, left_slope, right_slope) -> "PLFunction":
        pts = sorted((Q(a), Q(b)) for a, b in points)
        return PLFunction(tuple(a for a, _ in pts), tuple(b for _, b in pts), left_slope, right_slope)

    # evaluation
    def segment_slopes(self) -> list[Fraction]:
        b, v = self.breakpoints, self.values
        return [(v[i + 1] - v[i]) / (b[i + 1] - b[i]) for i in range(len(b) - 1)]

    def all_slopes(self) -> list[Fraction]:
        return [self.left_slope, *self.segment_slopes(), self.right_slope]

    def __call__(self, u) -> Fraction:
        u = Q(u)
        b, v = self.breakpoints, self.values
        if u <= b[0]:
            return v[0] + self.left_slope * (u - b[0])
        if u >= b[-1]:
            return v[-1] + self.right_slope * (u - b[-1])
        lo, hi = 0, len(b) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if b[mid] <= u:
                lo = mid
            else:
                hi = mid
        return v[lo] + (v[hi] - v[lo]) * (u - b[lo]) / (b[hi] - b[lo])

    def eval_log(self, u: LogNumber) -> LogNumber:
        """Value at a log-linear abscissa; piece chosen by exact sign tests."""
        b, v = self.breakpoints, self.values
        if u.is_rational():
            return LogNumber(self(u.unit))
        if (u - b[0]).sign() <= 0:
            return v[0] + (u - b[0]) * self.left_slope
        if (u - b[-1]).sign() >= 0:
            return v[-1] + (u - b[-1]) * self.right_slope
        lo, hi = 0, len(b) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if (u - b[mid]).sign() >= 0:
                lo = mid
            else:
                hi = mid
        s = (v[hi] - v[lo]) / (b[hi] - b[lo])
        return v[lo] + (u - b[lo]) * s

    def limit(self, side: str) -> Fraction:
        """Value at -inf ('left') or +inf ('right'); needs a zero end slope."""
        if side == "left":
            if self.left_slope != 0:
                raise ValueError("function is unbounded at -inf")
            return self.values[0]
        if self.right_slope != 0:
            raise ValueError("function is unbounded at +inf")
        return self.values[-1]

    # algebra
    def _on(self, grid) -> tuple:
        return tuple(self(u) for u in grid)

    def combine(self, other: "PLFunction", op: str) -> "PLFunction":
        if op in ("add", "sub"):
            grid = sorted(set(self.breakpoints) | set(other.breakpoints))
            sgn = 1 if op == "add" else -1
            vals = [a + sgn * b for a, b in zip(self._on(grid), other._on(grid))]
            return PLFunction(tuple(grid), tuple(vals), self.left_slope + sgn * other.left_slope,
                              self.right_slope + sgn * other.right_slope)
        if op not in ("max", "min"):
            raise ValueError(f"unknown op {op!r}")
        pick = max if op == "max" else min
        grid = sorted(set(self.breakpoints) | set(other.breakpoints))
        diff = self.combine(other, "sub")
        extra = set()
        for a, b in zip(grid, grid[1:]):
            da, db = diff(a), diff(b)
            if da * db < 0:
                extra.add(a + (b - a) * da / (da - db))
        # crossings on the two end rays
        d0 = diff(grid[0])
        if diff.left_slope != 0:
            t = grid[0] - d0 / diff.left_slope
            if t < grid[0]:
                extra.add(t)
        d1 = diff(grid[-1])
        if diff.right_slope != 0:
            t = grid[-1] - d1 / diff.right_slope
            if t > grid[-1]:
                extra.add(t)
        grid = sorted(set(grid) | extra)
        vals = [pick(a, b) for a, b in zip(self._on(grid), other._on(grid))]
        if op == "max":
            ls, rs = min(self.left_slope, other.left_slope), max(self.right_slope, other.right_slope)
        else:
            ls, rs = max(self.left_slope, other.left_slope), min(self.right_slope, other.right_slope)
        return PLFunction(tuple(grid), tuple(vals), ls, rs)

    def __add__(self, other):
        if isinstance(other, PLFunction):
            return self.combine(other, "add")
        c = Q(other)
        return PLFunction(self.breakpoints, tuple(v + c for v in self.values), self.left_slope, self.right_slope)

    def __sub__(self, other):
        if isinstance(other, PLFunction):
            return self.combine(other, "sub")
        return self + (-Q(other))

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c) -> "PLFunction":
        c = Q(c)
        return PLFunction(self.breakpoints, tuple(v * c for v in self.values), self.left_slope * c,
                          self.right_slope * c)

    def __mul__(self, c):
        return self.scale(c)

    __rmul__ = __mul__

    def max(self, other):
        return self.combine(other, "max")

    def min(self, other):
        return self.combine(other, "min")

    def compose_affine(self, a, b) -> "PLFunction":
        """u -> f(a*u + b) for a > 0."""
        a, b = Q(a), Q(b)
        if a <= 0:
            raise ValueError("need a positive dilation")
        return PLFunction(tuple((t - b) / a for t in self.breakpoints), self.values,
                          self.left_slope * a, self.right_slope * a)

    # analysis
    def is_convex(self) -> bool:
        s = self.all_slopes()
        return all(x <= y for x, y in zip(s, s[1:]))

    def jumps(self) -> list[tuple[Fraction, Fraction]]:
        """(breakpoint, slope jump) pairs; the slope-jump measure."""
        s = self.all_slopes()
        return [(b, s[i + 1] - s[i]) for i, b in enumerate(self.breakpoints) if s[i + 1] != s[i]]

    def inf(self):
        """Infimum over the line, or MINUS_INFINITY."""
        if self.left_slope > 0 or self.right_slope < 0:
            return MINUS_INFINITY
        return min(self.values)

    def legendre_inf(self, x):
        """inf_u (f(u) - x u), or MINUS_INFINITY."""
        x = Q(x)
        if self.left_slope > x or self.right_slope < x:
            return MINUS_INFINITY
        return min(v - x * b for b, v in zip(self.breakpoints, self.values))

    def integral(self, lo, hi) -> Fraction:
        lo, hi = Q(lo), Q(hi)
        if hi < lo:
            return -self.integral(hi, lo)
        grid = [lo] + [b for b in self.breakpoints if lo < b < hi] + [hi]
        return sum(((self(a) + self(b)) * (b - a) / 2 for a, b in zip(grid, grid[1:])), Fraction(0))

    def slope_pairing(self, other: "PLFunction") -> Fraction:
        """Integral of f' g' over the line; both need zero end slopes."""
        for f in (self, other):
            if f.left_slope != 0 or f.right_slope != 0:
                raise UnboundedSupport("slope pairing needs zero end slopes")
        grid = sorted(set(self.breakpoints) | set(other.breakpoints))
        tot = Fraction(0)
        for a, b in zip(grid, grid[1:]):
            sf = (self(b) - self(a)) / (b - a)
            sg = (other(b) - other(a)) / (b - a)
            tot += sf * sg * (b - a)
        return tot

    def convex_minorant(self, left_slope=None, right_slope=None) -> "PLFunction":
        """Greatest convex q <= f with the given end slopes (default: f's own)."""
        L = self.left_slope if left_slope is None else Q(left_slope)
        R = self.right_slope if right_slope is None else Q(right_slope)
        if L > R:
            raise NoMinorant("left end slope exceeds right end slope")
        if L < self.left_slope or R > self.right_slope:
            raise NoMinorant("requested end slopes make the minorant unbounded above f")
        pts = list(zip(self.breakpoints, self.values))
        hull: list = []
        for pt in pts:
            while len(hull) >= 2 and _cross(hull[-2], hull[-1], pt) <= 0:
                hull.pop()
            hull.append(pt)
        keyL = [v - L * b for b, v in hull]
        keyR = [v - R * b for b, v in hull]
        iL = keyL.index(min(keyL))
        mR = min(keyR)
        iR = max(i for i, k in enumerate(keyR) if k == mR)
        kept = hull[iL:iR + 1]
        return PLFunction(tuple(b for b, _ in kept), tuple(v for _, v in kept), L, R)

    def leq(self, other: "PLFunction") -> bool:
        d = other - self
        return d.inf() != MINUS_INFINITY and d.inf() >= 0

    def __repr__(self):
        pts = ", ".join(f"({fmt_q(b)}, {fmt_q(v)})" for b, v in zip(self.breakpoints, self.values))
        return f"PL[{fmt_q(self.left_slope)} | {pts} | {fmt_q(self.right_slope)}]"


def _cross(o, a, b) -> Fraction:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _canonical(bs, vs, ls, rs):
    if len(bs) == 1:
        if ls == rs and bs[0] != 0:
            return (Fraction(0),), (vs[0] - ls * bs[0],)
        return bs, vs
    slopes = [ls] + [(vs[i + 1] - vs[i]) / (bs[i + 1] - bs[i]) for i in range(len(bs) - 1)] + [rs]
    keep = [i for i in range(len(bs)) if slopes[i] != slopes[i + 1]]
    if not keep:
        return (Fraction(0),), (vs[0] - ls * bs[0],)
    return tuple(bs[i] for i in keep), tuple(vs[i] for i in keep)


def pl_max_all(fs: Iterable[PLFunction]) -> PLFunction:
    it = iter(fs)
    out = next(it)
    for f in it:
        out = out.max(f)
    return out


def pl_combine(f: PLFunction, g: PLFunction, op: str) -> PLFunction:
    return f.combine(g, op)


def pl_scale(f: PLFunction, c) -> PLFunction:
    return f.scale(c)


def pl_legendre_inf(f: PLFunction, x):
    return f.legendre_inf(x)


def pl_integral(f: PLFunction, lo, hi) -> Fraction:
    return f.integral(lo, hi)


def pl_slope_pairing(f: PLFunction, g: PLFunction) -> Fraction:
    return f.slope_pairing(g)


def pl_convex_minorant(f: PLFunction) -> PLFunction:
    return f.convex_minorant()


def floor_exp(x: LogNumber) -> int:
    """floor(exp(x)) exactly.

    exp(x) is rational iff x has no unit part and integer log coefficients;
    otherwise it is irrational and high-precision evaluation separates it
    from every integer."""
    if x.unit == 0 and all(c.denominator == 1 for _, c in x.logs):
        val = Fraction(1)
        for p, c in x.logs:
            val *= Fraction(p) ** int(c)
        return math.floor(val)
    dps = 60
    while True:
        with mpmath.workdps(dps):
            v = mpmath.exp(x.to_mpf(dps))
            f = mpmath.floor(v)
            if v - f > mpmath.mpf(10) ** (-dps // 2) and f + 1 - v > mpmath.mpf(10) ** (-dps // 2):
                return int(f)
        dps *= 2
        if dps > 4000:
            raise ArithmeticError("floor of exp unresolved")


def exp_rational(x: LogNumber) -> Fraction | None:
    if x.unit == 0 and all(c.denominator == 1 for _, c in x.logs):
        val = Fraction(1)
        for p, c in x.logs:
            val *= Fraction(p) ** int(c)
        return val
    return None
