"""Adelic arithmetic divisors on P^1 over Q: heights, intersections, positivity
and Zariski decompositions.

Non-toric horizontal points y carry the canonical archimedean Green function
-log|z - y|^2 + log max(1, |z|^2) + log max(1, |y|^2) on top of the radial part.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .arch_green import RadialGreen, arch_pairing, eval_at_point, mixed_pairing
from .exactmath import LogNumber, PLFunction, Q, ZERO_LOG, fmt_q, matvec, ord_p, quad, rational_factorization
from .fiber_graph import ModelMismatch, chain_order, smooth_model
from .green_place import (
    INF,
    GreenData,
    NotToric,
    green_from_json,
    green_to_json,
    is_rel_nef as green_is_rel_nef,
    lift_default,
    local_degree,
    parse_point,
    point_key,
    point_sort_key,
    projective,
    skeleton_function,
)
from .vertical_zariski import greatest_subsolution

ZERO = Fraction(0)
SCHEMA = 1


class SupportNotMovable(ValueError):
    pass


class NotIntegrable(ValueError):
    pass


class NegativeDegree(ValueError):
    pass


class EmptyUpsilon(ValueError):
    pass


class InvalidDivisor(ValueError):
    pass


@dataclass(frozen=True)
class PrincipalData:
    k: int
    c: Fraction = Fraction(1)

    def __post_init__(self):
        object.__setattr__(self, "c", Q(self.c))
        if self.c == 0:
            raise ValueError("c must be nonzero")


@dataclass(frozen=True)
class AdelicDivisor:
    horizontal: tuple  # ((point, coeff), ...) sorted, nonzero coefficients
    greens: tuple  # ((p, GreenData), ...) sorted by prime
    arch: RadialGreen

    @staticmethod
    def make(horizontal: Mapping, arch: RadialGreen, greens: Mapping | None = None) -> "AdelicDivisor":
        """Normalize and validate; Green data are rebuilt against the horizontal part."""
        hor = {}
        for x, b in horizontal.items():
            x, b = parse_point(x), Q(b)
            if b:
                hor[x] = hor.get(x, ZERO) + b
        hor = {x: b for x, b in hor.items() if b}
        if arch.a0 != hor.get(ZERO, ZERO) or arch.ainf != hor.get(INF, ZERO):
            raise InvalidDivisor("arch end slopes must match the coefficients at 0 and infinity")
        gs = {}
        for p, g in (greens or {}).items():
            g2 = GreenData.build(g.model, g.vert, hor, dict(g.spec))
            if int(p) != g.prime:
                raise InvalidDivisor(f"Green data for {p} lives over {g.prime}")
            if g2.model.size == 1 and g2.vert == (0,):
                continue  # same as the default closure
            gs[g.prime] = g2
        hsorted = tuple(sorted(hor.items(), key=lambda t: point_sort_key(t[0])))
        return AdelicDivisor(hsorted, tuple(sorted(gs.items())), arch)

    # accessors
    def coeff(self, x) -> Fraction:
        x = parse_point(x)
        for y, b in self.horizontal:
            if y == x:
                return b
        return ZERO

    @property
    def hor(self) -> dict:
        return dict(self.horizontal)

    @property
    def a0(self) -> Fraction:
        return self.coeff(ZERO)

    @property
    def ainf(self) -> Fraction:
        return self.coeff(INF)

    @property
    def deg(self) -> Fraction:
        return sum((b for _, b in self.horizontal), ZERO)

    @property
    def primes(self) -> tuple:
        return tuple(p for p, _ in self.greens)

    def nontoric(self) -> dict:
        return {x: b for x, b in self.horizontal if x not in (ZERO, INF)}

    def is_toric(self) -> bool:
        return not self.nontoric()

    def green_at(self, p: int) -> GreenData:
        for q, g in self.greens:
            if q == p:
                return g
        return GreenData.build(smooth_model(p), (0,), self.hor)

    def arch_total(self) -> PLFunction:
        """Radial part plus the curvature-equivalent of non-toric points."""
        b = sum(self.nontoric().values(), ZERO)
        return self.arch.pl + PLFunction.from_points([(0, 0)], 0, 1).scale(b) if b else self.arch.pl

    # arithmetic
    def _combine(self, other: "AdelicDivisor", sgn: int) -> "AdelicDivisor":
        hor = self.hor
        for x, b in other.horizontal:
            hor[x] = hor.get(x, ZERO) + sgn * b
        arch = self.arch + other.arch.scale(sgn)
        gs = {}
        for p in sorted(set(self.primes) | set(other.primes)):
            g1, g2 = align(self, other, p)
            vert = tuple(a + sgn * b for a, b in zip(g1.vert, g2.vert))
            spec = {**dict(g2.spec), **dict(g1.spec)}
            gs[p] = GreenData(g1.model, vert, g1.hdeg, tuple(spec.items()))
        return AdelicDivisor.make(hor, arch, gs)

    def __add__(self, other: "AdelicDivisor") -> "AdelicDivisor":
        return self._combine(other, 1)

    def __sub__(self, other: "AdelicDivisor") -> "AdelicDivisor":
        return self._combine(other, -1)

    def __neg__(self) -> "AdelicDivisor":
        return self.scale(-1)

    def scale(self, t) -> "AdelicDivisor":
        t = Q(t)
        hor = {x: t * b for x, b in self.horizontal}
        gs = {p: GreenData(g.model, tuple(t * c for c in g.vert), g.hdeg, g.spec) for p, g in self.greens}
        return AdelicDivisor.make(hor, self.arch.scale(t), gs)

    def with_arch(self, arch: RadialGreen) -> "AdelicDivisor":
        return AdelicDivisor.make(self.hor, arch, dict(self.greens))

    def with_green(self, g: GreenData) -> "AdelicDivisor":
        gs = dict(self.greens)
        gs[g.prime] = g
        return AdelicDivisor.make(self.hor, self.arch, gs)

    def add_constant(self, c) -> "AdelicDivisor":
        """D + (0, c[inf]) for a rational or LogNumber constant c."""
        return self.with_arch(self.arch.shift(c))

    def add_prime_constant(self, p: int, c) -> "AdelicDivisor":
        """D + (0, 2c log p [p]) : the vertical fiber at p with coefficient c."""
        g = self.green_at(p)
        vert = tuple(v + Q(c) * a for v, a in zip(g.vert, g.model.mult))
        return self.with_green(GreenData(g.model, vert, g.hdeg, g.spec))

    def add_vertical(self, p: int, coeffs) -> "AdelicDivisor":
        """Add a model function, with the horizontal part pulled to the given model if needed."""
        g = self.green_at(p)
        if len(coeffs) != g.model.size:
            raise ModelMismatch("coefficient vector does not match the model at this prime")
        return self.with_green(GreenData(g.model, tuple(v + Q(c) for v, c in zip(g.vert, coeffs)), g.hdeg, g.spec))

    def on_model(self, model) -> "AdelicDivisor":
        """Same divisor, with the Green data at model.prime pulled back to a finer toric model."""
        g = self.green_at(model.prime)
        if g.model == model:
            return self
        if not self.is_toric():
            raise NotToric("pull-back needs horizontal support in {0, inf}")
        return self.with_green(lift_default(g, model, self.a0, self.ainf))

    def __eq__(self, other):
        if not isinstance(other, AdelicDivisor):
            return NotImplemented
        return to_json(self) == to_json(other)

    def __hash__(self):
        return hash(serialize(self))

    def is_zero(self) -> bool:
        """True for the zero divisor on any model: with no horizontal part a
        vanishing vertical vector is the pull-back of the trivial Green function."""
        if self.horizontal or self.arch != zero_divisor().arch:
            return False
        return all(v == 0 for _, g in self.greens for v in g.vert)

    def __repr__(self):
        return f"AdelicDivisor({serialize(self, indent=None).strip()})"


def align(d1: AdelicDivisor, d2: AdelicDivisor, p: int) -> tuple[GreenData, GreenData]:
    """Green data of both divisors at p on one model (pulling back smooth data)."""
    g1, g2 = d1.green_at(p), d2.green_at(p)
    if g1.model == g2.model:
        return g1, g2
    if g1.model.size == 1 and d1.is_toric():
        return lift_default(g1, g2.model, d1.a0, d1.ainf), g2
    if g2.model.size == 1 and d2.is_toric():
        return g1, lift_default(g2, g1.model, d2.a0, d2.ainf)
    raise ModelMismatch(f"no common model at {p}")


# constructors

def zero_divisor() -> AdelicDivisor:
    return AdelicDivisor.make({}, RadialGreen(PLFunction.constant(0)))


def naive_divisor() -> AdelicDivisor:
    """H = ([inf], closures, max(0, u))."""
    return AdelicDivisor.make({INF: 1}, RadialGreen(PLFunction.from_points([(0, 0)], 0, 1)))


def toric_divisor(a0, ainf, arch_points, greens: Mapping | None = None, offset: LogNumber = ZERO_LOG) -> AdelicDivisor:
    """Toric divisor with radial Green function through the given (u, value) points."""
    pl = PLFunction.from_points(arch_points, -Q(a0), Q(ainf))
    hor = {ZERO: a0, INF: ainf}
    gs = {}
    for p, (model, vert) in (greens or {}).items():
        gs[p] = GreenData.build(model, vert, {ZERO: Q(a0), INF: Q(ainf)})
    return AdelicDivisor.make(hor, RadialGreen(pl, offset), gs)


def principal_divisor(data: PrincipalData | int, c=1) -> AdelicDivisor:
    """hat(c z^k)."""
    if not isinstance(data, PrincipalData):
        data = PrincipalData(int(data), Q(c))
    k, c = data.k, data.c
    arch = RadialGreen(PLFunction.affine(-k, 0), -LogNumber.log_of(c) * 2)
    hor = {ZERO: k, INF: -k}
    gs = {}
    for p in rational_factorization(c):
        gs[p] = GreenData.build(smooth_model(p), (ord_p(c, p),), hor)
    return AdelicDivisor.make(hor, arch, gs)


# heights

def _canonical_arch(x, y) -> LogNumber:
    """(1/2) of the canonical archimedean Green function of [y] at x."""
    (a, b), (c, d) = projective(x), projective(y)
    return -LogNumber.log_of(a * d - b * c) + LogNumber.log_of(max(abs(a), abs(b))) + LogNumber.log_of(max(abs(c), abs(d)))


def height(D: AdelicDivisor, x) -> LogNumber:
    """Global degree of D along the rational point x."""
    x = parse_point(x)
    hor = D.hor
    if x in hor:
        if x == ZERO:
            D = D + principal_divisor(1).scale(-D.a0)
        elif x == INF:
            D = D + principal_divisor(1).scale(D.ainf)
        else:
            raise SupportNotMovable(f"{point_key(x)} is in the support and no monomial moves it")
        hor = D.hor
        if x in hor:
            raise SupportNotMovable(f"{point_key(x)} still meets the support")
    tot = ZERO_LOG
    listed = set(D.primes)
    for p, g in D.greens:
        tot = tot + local_degree(g, x, hor)
    # unlisted primes: closures on the smooth model
    for y, b in hor.items():
        (a1, b1), (c1, d1) = projective(x), projective(y)
        det = a1 * d1 - b1 * c1
        for p, e in rational_factorization(Fraction(det)).items():
            if p not in listed:
                tot = tot + LogNumber.log_prime(p, b * e)
    tot = tot + eval_at_point(D.arch, x) / 2
    for y, b in D.nontoric().items():
        tot = tot + _canonical_arch(x, y) * b
    return tot


# intersection numbers

def _require_toric(*ds: AdelicDivisor) -> None:
    for d in ds:
        if not d.is_toric():
            raise NotToric("horizontal support must lie in {0, inf}")


def _perturbation(D: AdelicDivisor, g: GreenData) -> list[Fraction]:
    """Vertical coefficients of D - n H - a0 hat(z) on g's model."""
    m = g.model
    if m.zord is None:
        raise NotIntegrable(f"model at {m.prime} carries no toric data")
    n, alpha = D.deg, D.a0
    return [c - n * max(0, -w) - alpha * w for c, w in zip(g.vert, m.zord)]


def _naive_slack(model) -> list[Fraction]:
    """Fiber degrees of the naive divisor pulled back to a toric model."""
    cH = [max(0, -w) for w in model.zord]
    from .green_place import _extreme_spec
    h = [ZERO] * model.size
    h[_extreme_spec(model)[INF]] = Fraction(1)
    return [hj + v for hj, v in zip(h, matvec(model.ix, cH))]


def _arch_perturbation(D: AdelicDivisor) -> RadialGreen:
    n, alpha = D.deg, D.a0
    base = PLFunction.from_points([(0, 0)], 0, n) - PLFunction.affine(alpha, 0)
    phi = RadialGreen(D.arch.pl - base, D.arch.offset)
    if phi.pl.left_slope != 0 or phi.pl.right_slope != 0:
        raise NotIntegrable("archimedean perturbation is not bounded")
    return phi


def global_intersection(d1: AdelicDivisor, d2: AdelicDivisor) -> LogNumber:
    """deg(D1 . D2) via D = n H + a0 hat(z) + (0, Phi)."""
    _require_toric(d1, d2)
    phi1, phi2 = _arch_perturbation(d1), _arch_perturbation(d2)
    X1 = phi1.value(0) / 2
    X2 = phi2.value(0) / 2
    cross = ZERO_LOG
    for p in sorted(set(d1.primes) | set(d2.primes)):
        try:
            g1, g2 = align(d1, d2, p)
        except ModelMismatch as exc:
            raise NotIntegrable(str(exc)) from None
        e1, e2 = _perturbation(d1, g1), _perturbation(d2, g2)
        sH = _naive_slack(g1.model)
        lp = LogNumber.log_prime(p, 1)
        X1 = X1 + lp * sum((a * b for a, b in zip(e1, sH)), ZERO)
        X2 = X2 + lp * sum((a * b for a, b in zip(e2, sH)), ZERO)
        cross = cross + lp * quad(g1.model.ix, e1, e2)
    return X2 * d1.deg + X1 * d2.deg + cross + arch_pairing(phi1, phi2)


def self_intersection(D: AdelicDivisor) -> LogNumber:
    return global_intersection(D, D)


# positivity

def is_relatively_nef(D: AdelicDivisor) -> bool:
    if D.deg < 0:
        return False
    if not all(green_is_rel_nef(g) for _, g in D.greens):
        return False
    return D.arch_total().is_convex()


@dataclass(frozen=True)
class NefCertificate:
    nef: bool
    x: Fraction  # vertex of the Okounkov interval where G is smallest
    value: LogNumber  # G there: the height of the corresponding toric point

    def __bool__(self):
        return self.nef


def is_nef(D: AdelicDivisor) -> NefCertificate:
    """Nef test for relatively nef toric D.

    G is concave on [-a0, aInf], so its minimum sits at an end, and the two
    ends are the heights of the toric points 0 and inf."""
    _require_toric(D)
    from .okounkov_volume import concave_transform

    if not is_relatively_nef(D):
        ct = concave_transform(D)
        return NefCertificate(False, ct.lo, ct.value(ct.lo))
    ct = concave_transform(D)
    lo, hi = ct.value(ct.lo), ct.value(ct.hi)
    x, v = (ct.lo, lo) if lo <= hi else (ct.hi, hi)
    return NefCertificate(v.sign() >= 0, x, v)


def leq(d1: AdelicDivisor, d2: AdelicDivisor) -> bool:
    """d1 <= d2: d2 - d1 effective with nonnegative Green functions."""
    if d1.nontoric() != d2.nontoric():
        raise NotToric("comparison needs equal non-toric parts")
    diff = d2 - d1
    if any(b < 0 for _, b in diff.horizontal):
        return False
    for p, g in diff.greens:
        if any(c < 0 for c in g.vert):
            return False
    dpl = diff.arch.pl
    lo = dpl.inf()
    if lo == float("-inf"):
        return False
    return (LogNumber(lo) + diff.arch.offset).sign() >= 0


# Zariski decompositions

def relative_zariski(D: AdelicDivisor) -> tuple[AdelicDivisor, AdelicDivisor]:
    """Greatest relatively nef Q <= D with the same horizontal part."""
    if D.deg < 0:
        raise NegativeDegree("degree is negative")
    gs = {}
    for p, g in D.greens:
        res = greatest_subsolution(g.model, g.hdeg, g.vert)
        gs[p] = GreenData(g.model, res.q, g.hdeg, g.spec)
    b = sum(D.nontoric().values(), ZERO)
    if b:
        bump = PLFunction.from_points([(0, 0)], 0, 1).scale(b)
        pl = (D.arch.pl + bump).convex_minorant() - bump
    else:
        pl = D.arch.pl.convex_minorant()
    Qd = AdelicDivisor.make(D.hor, RadialGreen(pl, D.arch.offset), gs)
    return Qd, D - Qd


def local_perpendicularity(Qd: AdelicDivisor, N: AdelicDivisor) -> LogNumber:
    """deg(Q . N) for purely vertical N, place by place."""
    if N.horizontal:
        raise ValueError("N must be vertical")
    tot = ZERO_LOG
    for p in sorted(set(Qd.primes) | set(N.primes)):
        gq, gn = align(Qd, N, p)
        s = [hj + v for hj, v in zip(gq.hdeg, matvec(gq.model.ix, gq.vert))]
        tot = tot + LogNumber.log_prime(p, sum((e * sj for e, sj in zip(gn.vert, s)), ZERO))
    b = sum(Qd.nontoric().values(), ZERO)
    qarch = RadialGreen(Qd.arch_total(), Qd.arch.offset) if b else Qd.arch
    return tot + mixed_pairing(qarch, N.arch)


@dataclass(frozen=True)
class ZariskiResult:
    positive: AdelicDivisor
    negative: AdelicDivisor
    interval: tuple  # [alpha, beta] = {G >= 0}

    def __iter__(self):
        return iter((self.positive, self.negative))


def zariski_decomposition(D: AdelicDivisor) -> ZariskiResult:
    """Greatest nef Q <= D for toric D."""
    _require_toric(D)
    from .okounkov_volume import concave_transform

    if D.deg < 0:
        raise EmptyUpsilon("negative degree: no nef divisor lies below")
    ct = concave_transform(D)
    iv = ct.nonneg_interval()
    if iv is None:
        raise EmptyUpsilon("G is negative on the whole interval: no nef divisor lies below")
    alpha, beta = iv
    q0, qinf = -alpha, beta
    hor = {ZERO: q0, INF: qinf}
    gs = {}
    for p, g in D.greens:
        if chain_order(g.model) is None:
            raise NotToric(f"model at {p} is not a toric chain")
        G = skeleton_function(g, D.a0, D.ainf)
        H = G.convex_minorant(-qinf, q0)
        m = g.model
        vert = tuple(m.mult[j] * H(m.node_abscissa(j)) for j in range(m.size))
        gs[p] = GreenData.build(m, vert, hor, dict(g.spec))
    arch = RadialGreen(D.arch.pl.convex_minorant(-q0, qinf), D.arch.offset)
    Qd = AdelicDivisor.make(hor, arch, gs)
    return ZariskiResult(Qd, D - Qd, (alpha, beta))


def mu_asymptotic(D: AdelicDivisor, xi) -> Fraction | float:
    """Asymptotic multiplicity at a toric point: horizontal multiplicity of N."""
    xi = parse_point(xi)
    if xi not in (ZERO, INF):
        raise NotToric("only the toric points 0 and inf are supported")
    try:
        res = zariski_decomposition(D)
    except EmptyUpsilon:
        return float("inf")
    return res.negative.coeff(xi)


# JSON

def to_json(D: AdelicDivisor) -> dict:
    return {
        "schema": SCHEMA,
        "horizontal": {point_key(x): fmt_q(b) for x, b in D.horizontal},
        "arch": D.arch.to_json(),
        "primes": {str(p): green_to_json(g) for p, g in D.greens},
    }


def serialize(D: AdelicDivisor, indent: int | None = 2) -> str:
    return json.dumps(to_json(D), indent=indent, ensure_ascii=False) + "\n"


def from_json(obj) -> AdelicDivisor:
    allowed = {"schema", "horizontal", "arch", "primes"}
    if not isinstance(obj, dict):
        raise ValueError("divisor spec must be a JSON object")
    extra = set(obj) - allowed
    if extra:
        raise ValueError(f"unknown keys {sorted(extra)}")
    if "schema" in obj and obj["schema"] != SCHEMA:
        raise ValueError(f"unsupported schema {obj['schema']!r}")
    if "arch" not in obj:
        raise ValueError("missing arch")
    hor = {parse_point(k): Q(v) for k, v in obj.get("horizontal", {}).items()}
    arch = RadialGreen.from_json(obj["arch"])
    gs = {}
    for key, val in obj.get("primes", {}).items():
        g = green_from_json(val, hor)
        if str(g.prime) != key:
            raise ValueError(f"prime key {key} does not match fiber prime {g.prime}")
        gs[g.prime] = g
    return AdelicDivisor.make(hor, arch, gs)


def parse(text: str) -> AdelicDivisor:
    return from_json(json.loads(text))
