"""Non-archimedean Green functions given by vertical divisors on a fiber model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .exactmath import LogNumber, PLFunction, Q, fmt_q, ord_p
from .fiber_graph import FiberModel, InvalidFiber, ModelMismatch, chain_order, fiber_degrees, smooth_model

INF = "inf"


class SupportOverlap(ValueError):
    pass


class UnsupportedPoint(ValueError):
    pass


class NotToric(ValueError):
    pass


def parse_point(s):
    if isinstance(s, Fraction):
        return s
    if isinstance(s, int):
        return Fraction(s)
    if s in (INF, "∞"):
        return INF
    return Q(s)


def point_key(x) -> str:
    return INF if x == INF else fmt_q(x)


def point_sort_key(x):
    # finite points first in increasing order, then infinity
    return (1, 0) if x == INF else (0, x)


def projective(x) -> tuple[int, int]:
    if x == INF:
        return (1, 0)
    x = Q(x)
    return (x.numerator, x.denominator)


def linking(x, y, p: int) -> int:
    """Intersection number at p of the closures of x and y on the smooth model."""
    (a, b), (c, d) = projective(x), projective(y)
    det = a * d - b * c
    if det == 0:
        raise SupportOverlap("the two points coincide")
    return ord_p(Fraction(det), p)


def ord_point(x, p: int):
    """ord_p of the coordinate at x, with +/- infinity at the two toric points."""
    if x == INF:
        return float("-inf")
    if x == 0:
        return float("inf")
    return Fraction(ord_p(x, p))


@dataclass(frozen=True)
class GreenData:
    model: FiberModel
    vert: tuple
    hdeg: tuple
    spec: tuple = ()  # ((point, component index), ...)

    def __post_init__(self):
        vert = tuple(Q(v) for v in self.vert)
        hdeg = tuple(Q(v) for v in self.hdeg)
        if len(vert) != self.model.size or len(hdeg) != self.model.size:
            raise ModelMismatch("vertical or horizontal-degree vector does not match the model")
        spec = tuple(sorted(((parse_point(x), int(j)) for x, j in self.spec), key=lambda t: point_sort_key(t[0])))
        for _, j in spec:
            if self.model.mult[j] != 1:
                raise InvalidFiber("horizontal points must specialize to multiplicity-1 components")
        object.__setattr__(self, "vert", vert)
        object.__setattr__(self, "hdeg", hdeg)
        object.__setattr__(self, "spec", spec)

    @property
    def prime(self) -> int:
        return self.model.prime

    def spec_of(self, x) -> int | None:
        for y, j in self.spec:
            if y == x:
                return j
        return None

    @staticmethod
    def build(model: FiberModel, vert, horizontal: Mapping, spec: Mapping | None = None) -> "GreenData":
        """Green data whose horizontal degrees come from the divisor's coefficients."""
        sp = {parse_point(k): v for k, v in (spec or {}).items()}
        for x, j in toric_specialization(model).items():
            if x in sp and sp[x] != j:
                raise InvalidFiber(f"point {point_key(x)} must specialize to {model.names[j]}")
            sp[x] = j
        if model.size == 1:
            for x in horizontal:
                sp.setdefault(parse_point(x), 0)
        h = [Fraction(0)] * model.size
        for x, b in horizontal.items():
            x = parse_point(x)
            if Q(b) == 0:
                continue
            if x not in sp:
                raise InvalidFiber(f"no specialization given for point {point_key(x)}")
            h[sp[x]] += Q(b)
        return GreenData(model, tuple(vert), tuple(h), tuple(sp.items()))

    def is_default(self) -> bool:
        return self.model.size == 1 and self.vert == (0,)


def toric_specialization(model: FiberModel) -> dict:
    """Where 0 and infinity land on a regular toric chain (or the smooth model)."""
    if model.size == 1:
        return {Fraction(0): 0, INF: 0}
    order = chain_order(model)
    if order is None:
        return {}
    return {Fraction(0): order[-1], INF: order[0]}


def default_green(p: int, horizontal: Mapping) -> GreenData:
    return GreenData.build(smooth_model(p), (0,), horizontal)


def model_function(model: FiberModel, coeffs) -> GreenData:
    """Purely vertical data: the continuous function attached to E = sum c_j C_j."""
    return GreenData(model, tuple(coeffs), (0,) * model.size, ())


def node_value(g: GreenData, j: int) -> LogNumber:
    return LogNumber.log_prime(g.prime, 2 * g.vert[j] / g.model.mult[j])


def _same(g1: GreenData, g2: GreenData) -> None:
    if g1.model != g2.model:
        raise ModelMismatch("Green data live on different models")
    if g1.hdeg != g2.hdeg:
        raise ModelMismatch("Green data have different horizontal parts")


def green_leq(g1: GreenData, g2: GreenData) -> bool:
    _same(g1, g2)
    return all(a <= b for a, b in zip(g1.vert, g2.vert))


def green_max(g1: GreenData, g2: GreenData) -> GreenData:
    _same(g1, g2)
    return GreenData(g1.model, tuple(max(a, b) for a, b in zip(g1.vert, g2.vert)), g1.hdeg, g1.spec)


def is_rel_nef(g: GreenData) -> bool:
    return all(s >= 0 for s in fiber_degrees(g.model, g.hdeg, g.vert))


def slacks(g: GreenData) -> list[Fraction]:
    return fiber_degrees(g.model, g.hdeg, g.vert)


def is_effective(g: GreenData, horizontal: Mapping) -> bool:
    return all(c >= 0 for c in g.vert) and all(Q(b) >= 0 for b in horizontal.values())


def skeleton_function(g: GreenData, a0, ainf) -> PLFunction:
    """g/(2 log p) as a PL function of v = ord_p(z) on a toric chain."""
    m = g.model
    if chain_order(m) is None:
        raise NotToric("model is not a regular toric chain")
    pts = [(m.node_abscissa(j), g.vert[j] / m.mult[j]) for j in range(m.size)]
    return PLFunction.from_points(pts, -Q(ainf), Q(a0))


def local_degree(g: GreenData, x, horizontal: Mapping, component: int | None = None) -> LogNumber:
    """(1/2) g(x) for a rational point x outside the support, as a LogNumber."""
    x = parse_point(x)
    hor = {parse_point(k): Q(v) for k, v in horizontal.items() if Q(v) != 0}
    if x in hor:
        raise SupportOverlap(f"point {point_key(x)} lies in the horizontal support")
    p, m = g.prime, g.model
    if component is not None:
        j = component
        if m.mult[j] != 1:
            raise UnsupportedPoint("rational points meet multiplicity-1 components only")
        tot = g.vert[j]
        for y, b in hor.items():
            if g.spec_of(y) == j:
                tot += b * linking(x, y, p)
        return LogNumber.log_prime(p, tot)
    if m.size == 1:
        tot = g.vert[0] / m.mult[0]
        for y, b in hor.items():
            tot += b * linking(x, y, p)
        return LogNumber.log_prime(p, tot)
    if set(hor) <= {Fraction(0), INF} and chain_order(m) is not None:
        G = skeleton_function(g, hor.get(Fraction(0), 0), hor.get(INF, 0))
        v = ord_point(x, p)
        if v == float("inf"):
            val = G.limit("right")
        elif v == float("-inf"):
            val = G.limit("left")
        else:
            val = G(v)
        return LogNumber.log_prime(p, val)
    raise UnsupportedPoint("cannot locate the specialization of this point on the model")


def local_intersection(L: GreenData, phi: GreenData) -> LogNumber:
    """deg((H + C) . E_phi) log p for the model function phi."""
    if L.model != phi.model:
        raise ModelMismatch("Green data live on different models")
    tot = sum((e * s for e, s in zip(phi.vert, slacks(L))), Fraction(0))
    return LogNumber.log_prime(L.prime, tot)


def model_pairing(phi: GreenData, psi: GreenData) -> LogNumber:
    if phi.model != psi.model:
        raise ModelMismatch("Green data live on different models")
    M = phi.model.ix
    n = phi.model.size
    tot = sum((phi.vert[i] * M[i][j] * psi.vert[j] for i in range(n) for j in range(n)), Fraction(0))
    return LogNumber.log_prime(phi.prime, tot)


def lift_default(g: GreenData, target: FiberModel, a0, ainf) -> GreenData:
    """Pull back Green data on the smooth model to a blown-up toric model."""
    if g.model.size != 1:
        raise ModelMismatch("only smooth-model data can be pulled back here")
    if g.model.prime != target.prime:
        raise ModelMismatch("different primes")
    if target.zord is None:
        raise NotToric("target model carries no toric data")
    c0 = g.vert[0]
    G = PLFunction.from_points([(0, c0)], -Q(ainf), Q(a0))
    vert = tuple(target.mult[j] * G(target.node_abscissa(j)) for j in range(target.size))
    hor = {Fraction(0): Q(a0), INF: Q(ainf)}
    return GreenData.build(target, vert, hor, _extreme_spec(target))


def _extreme_spec(model: FiberModel) -> dict:
    sp = toric_specialization(model)
    if sp:
        return sp
    # non-chain toric data: extreme abscissae, first multiplicity-1 node wins
    vs = [model.node_abscissa(j) for j in range(model.size)]
    lo = min(j for j in range(model.size) if vs[j] == min(vs) and model.mult[j] == 1)
    hi = min(j for j in range(model.size) if vs[j] == max(vs) and model.mult[j] == 1)
    return {Fraction(0): hi, INF: lo}


def green_to_json(g: GreenData) -> dict:
    out = {"prime": g.prime, "fiber": g.model.to_json(), "vert": [fmt_q(c) for c in g.vert]}
    if g.model.size > 1:
        out["spec"] = {point_key(x): g.model.names[j] for x, j in g.spec}
    return out


def green_from_json(obj, horizontal: Mapping) -> GreenData:
    allowed = {"prime", "fiber", "vert", "spec"}
    if not isinstance(obj, dict) or set(obj) - allowed or not {"fiber", "vert"} <= set(obj):
        raise ValueError(f"prime object needs fiber/vert and only {sorted(allowed)}")
    model = FiberModel.from_json(obj["fiber"])
    if "prime" in obj and obj["prime"] != model.prime:
        raise ValueError("prime and fiber prime disagree")
    spec = {parse_point(k): model.index(v) for k, v in obj.get("spec", {}).items()}
    return GreenData.build(model, tuple(Q(c) for c in obj["vert"]), horizontal, spec)
