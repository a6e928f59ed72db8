"""Radial Green functions on P^1(C) as PL functions of u = log|z|^2."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exactmath import MINUS_INFINITY, LogNumber, PLFunction, Q, ZERO_LOG, fmt_q

INF = "inf"


class InfiniteNorm(ValueError):
    pass


@dataclass(frozen=True)
class RadialGreen:
    """g(u) = pl(u) + offset; offset is a log-linear constant."""

    pl: PLFunction
    offset: LogNumber = ZERO_LOG

    @property
    def a0(self) -> Fraction:
        return -self.pl.left_slope

    @property
    def ainf(self) -> Fraction:
        return self.pl.right_slope

    @staticmethod
    def of(pl: PLFunction, offset: LogNumber = ZERO_LOG) -> "RadialGreen":
        return RadialGreen(pl, offset)

    def __add__(self, other: "RadialGreen") -> "RadialGreen":
        return RadialGreen(self.pl + other.pl, self.offset + other.offset)

    def __sub__(self, other: "RadialGreen") -> "RadialGreen":
        return RadialGreen(self.pl - other.pl, self.offset - other.offset)

    def scale(self, c) -> "RadialGreen":
        return RadialGreen(self.pl.scale(c), self.offset * Q(c))

    def shift(self, c) -> "RadialGreen":
        """Add a constant (rational or LogNumber)."""
        if isinstance(c, LogNumber):
            return RadialGreen(self.pl, self.offset + c)
        return RadialGreen(self.pl + Q(c), self.offset)

    def value(self, u) -> LogNumber:
        return LogNumber(self.pl(u)) + self.offset

    def to_json(self) -> dict:
        out = {
            "a0": fmt_q(self.a0),
            "aInf": fmt_q(self.ainf),
            "pieces": [{"u": fmt_q(b), "value": fmt_q(v)} for b, v in zip(self.pl.breakpoints, self.pl.values)],
            "leftSlope": fmt_q(self.pl.left_slope),
            "rightSlope": fmt_q(self.pl.right_slope),
        }
        if not self.offset.is_zero():
            out["offset"] = self.offset.to_json()
        return out

    @staticmethod
    def from_json(obj) -> "RadialGreen":
        allowed = {"a0", "aInf", "pieces", "leftSlope", "rightSlope", "offset"}
        if not isinstance(obj, dict) or set(obj) - allowed or not {"pieces", "leftSlope", "rightSlope"} <= set(obj):
            raise ValueError(f"arch object needs pieces/leftSlope/rightSlope and only {sorted(allowed)}")
        pts = []
        for pc in obj["pieces"]:
            if not isinstance(pc, dict) or set(pc) - {"u", "r", "value"} or "value" not in pc or len(pc) != 2:
                raise ValueError(f"bad piece {pc!r}")
            if "r" in pc:
                if Q(pc["r"]) != 1:
                    raise ValueError("breakpoint r must be 1: log r is irrational otherwise; use 'u'")
                u = Fraction(0)
            else:
                u = Q(pc["u"])
            pts.append((u, Q(pc["value"])))
        if not pts:
            raise ValueError("arch needs at least one piece")
        pl = PLFunction.from_points(pts, Q(obj["leftSlope"]), Q(obj["rightSlope"]))
        g = RadialGreen(pl, LogNumber.from_json(obj["offset"]) if "offset" in obj else ZERO_LOG)
        if "a0" in obj and Q(obj["a0"]) != g.a0:
            raise ValueError("a0 must equal -leftSlope")
        if "aInf" in obj and Q(obj["aInf"]) != g.ainf:
            raise ValueError("aInf must equal rightSlope")
        return g


def naive_arch(deg=1) -> RadialGreen:
    return RadialGreen(PLFunction.from_points([(0, 0)], 0, deg))


def is_psh(g: RadialGreen) -> bool:
    return g.pl.is_convex()


def psh_envelope(g: RadialGreen, a0=None, ainf=None) -> RadialGreen:
    """Greatest convex minorant, optionally with smaller horizontal coefficients."""
    L = None if a0 is None else -Q(a0)
    R = None if ainf is None else Q(ainf)
    return RadialGreen(g.pl.convex_minorant(L, R), g.offset)


def _zero_slopes(g: RadialGreen) -> None:
    if g.pl.left_slope != 0 or g.pl.right_slope != 0:
        from .exactmath import UnboundedSupport
        raise UnboundedSupport("function must have zero end slopes")


def arch_pairing(phi: RadialGreen, psi: RadialGreen) -> Fraction:
    """-(1/2) integral of phi' psi' du."""
    return -phi.pl.slope_pairing(psi.pl) / 2


def mixed_pairing(D: RadialGreen, phi: RadialGreen) -> LogNumber:
    """(1/2) integral of phi against the slope-jump measure of D."""
    _zero_slopes(phi)
    tot = ZERO_LOG
    for b, jump in D.pl.jumps():
        tot = tot + phi.value(b) * jump
    return tot / 2


def monomial_log_norm(g: RadialGreen, k) -> LogNumber:
    """log of the sup norm of z^k, i.e. -(1/2) inf_u (g(u) - k u)."""
    val = g.pl.legendre_inf(Q(k))
    if val == MINUS_INFINITY:
        raise InfiniteNorm(f"z^{k} has infinite norm: exponent outside [-a0, aInf]")
    return -(LogNumber(val) + g.offset) / 2


def eval_at_point(g: RadialGreen, x) -> LogNumber:
    """g at u = log(x^2); the toric points need a zero end slope."""
    if x == INF:
        return LogNumber(g.pl.limit("right")) + g.offset
    x = Q(x)
    if x == 0:
        return LogNumber(g.pl.limit("left")) + g.offset
    u = LogNumber.log_of(x) * 2
    return g.pl.eval_log(u) + g.offset
