"""Special fibers of regular arithmetic surfaces as weighted dual graphs."""

from __future__ import annotations

import functools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .exactmath import Q, dot, fmt_q, matvec, semidef_analyze


class ModelMismatch(ValueError):
    pass


class InvalidFiber(ValueError):
    pass


@dataclass(frozen=True)
class FiberModel:
    prime: int
    mult: tuple
    ix: tuple
    names: tuple = ()
    # order of vanishing of the coordinate z along each component (P^1 only)
    zord: tuple | None = None

    def __post_init__(self):
        mult = tuple(int(a) for a in self.mult)
        ix = tuple(tuple(int(v) for v in row) for row in self.ix)
        n = len(mult)
        if n == 0 or len(ix) != n or any(len(r) != n for r in ix):
            raise InvalidFiber("intersection matrix must be square and match the multiplicities")
        if any(a <= 0 for a in mult):
            raise InvalidFiber("multiplicities must be positive integers")
        names = tuple(self.names) if self.names else tuple(f"C{i + 1}" for i in range(n))
        if len(names) != n or len(set(names)) != n:
            raise InvalidFiber("component names must be distinct, one per component")
        zord = self.zord
        if zord is None and n == 1:
            zord = (0,)
        if zord is not None:
            zord = tuple(int(w) for w in zord)
            if len(zord) != n:
                raise InvalidFiber("zord needs one entry per component")
        object.__setattr__(self, "mult", mult)
        object.__setattr__(self, "ix", ix)
        object.__setattr__(self, "names", names)
        object.__setattr__(self, "zord", zord)

    @property
    def size(self) -> int:
        return len(self.mult)

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise InvalidFiber(f"unknown component {name!r}") from None

    def node_abscissa(self, j: int) -> Fraction:
        if self.zord is None:
            raise InvalidFiber("model carries no toric data (zord)")
        return Fraction(self.zord[j], self.mult[j])

    def components_of_graph(self) -> list[list[int]]:
        seen, comps = set(), []
        for s in range(self.size):
            if s in seen:
                continue
            stack, comp = [s], []
            seen.add(s)
            while stack:
                i = stack.pop()
                comp.append(i)
                for j in range(self.size):
                    if j != i and self.ix[i][j] != 0 and j not in seen:
                        seen.add(j)
                        stack.append(j)
            comps.append(sorted(comp))
        return comps

    def to_json(self) -> dict:
        out = {"prime": self.prime, "mult": list(self.mult), "ix": [list(r) for r in self.ix],
               "names": list(self.names)}
        if self.zord is not None and not (self.size == 1 and self.zord == (0,)):
            out["zord"] = list(self.zord)
        return out

    @staticmethod
    def from_json(obj) -> "FiberModel":
        allowed = {"prime", "mult", "ix", "names", "zord"}
        if not isinstance(obj, dict) or set(obj) - allowed or not {"prime", "mult", "ix"} <= set(obj):
            raise ValueError(f"fiber object needs prime/mult/ix and only {sorted(allowed)}")
        p = obj["prime"]
        if not isinstance(p, int) or p < 2 or any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
            raise ValueError(f"fiber prime {p!r} is not prime")
        for key in ("mult", "zord"):
            if key in obj and not all(isinstance(v, int) and not isinstance(v, bool) for v in obj[key]):
                raise ValueError(f"fiber {key} must be integers")
        if not all(isinstance(v, int) for row in obj["ix"] for v in row):
            raise ValueError("intersection numbers must be integers")
        return FiberModel(p, tuple(obj["mult"]), tuple(tuple(r) for r in obj["ix"]),
                          tuple(obj.get("names", ())), tuple(obj["zord"]) if "zord" in obj else None)


@dataclass(frozen=True)
class VerticalDivisor:
    model: FiberModel
    coeffs: tuple

    def __post_init__(self):
        c = tuple(Q(v) for v in self.coeffs)
        if len(c) != self.model.size:
            raise ModelMismatch("coefficient vector length does not match the model")
        object.__setattr__(self, "coeffs", c)


@dataclass
class ValidationReport:
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def failures(self) -> list[str]:
        return [k for k, v in self.checks.items() if not v]

    def __str__(self):
        return "\n".join(f"{k}: {'PASS' if v else 'FAIL'}" for k, v in self.checks.items())


def smooth_model(p: int) -> FiberModel:
    return FiberModel(p, (1,), ((0,),), ("C1",), (0,))


def validate_fiber(m: FiberModel) -> ValidationReport:
    rep = ValidationReport()
    M = m.ix
    n = m.size
    rep.checks["symmetric"] = all(M[i][j] == M[j][i] for i in range(n) for j in range(n))
    rep.checks["offdiagonal_nonnegative"] = all(M[i][j] >= 0 for i in range(n) for j in range(n) if i != j)
    rep.checks["fiber_degree_zero"] = all(v == 0 for v in matvec(M, m.mult))
    if rep.checks["symmetric"]:
        neg, ker = semidef_analyze(M)
    else:
        neg, ker = False, []
    rep.checks["negative_semidefinite"] = neg
    connected = len(m.components_of_graph()) == 1
    rep.checks["connected"] = connected
    # kernel equals the line through the multiplicity vector
    kernel_ok = len(ker) == 1 and _proportional(ker[0], m.mult)
    rep.checks["kernel_is_fiber"] = kernel_ok
    return rep


def _proportional(x, a) -> bool:
    i = next(k for k, v in enumerate(a) if v)
    r = Q(x[i]) / a[i]
    return r != 0 and all(Q(xv) == r * av for xv, av in zip(x, a))


def vertical_pairing(e1: VerticalDivisor, e2: VerticalDivisor) -> Fraction:
    if e1.model != e2.model:
        raise ModelMismatch("divisors live on different models")
    return dot(e1.coeffs, matvec(e1.model.ix, e2.coeffs))


def degree_restriction(h: Sequence, e: VerticalDivisor, j: int) -> Fraction:
    """(H + E) . C_j = h_j + (M c)_j."""
    if len(h) != e.model.size:
        raise ModelMismatch("horizontal degree vector length does not match the model")
    return Q(h[j]) + dot(e.model.ix[j], e.coeffs)


def fiber_degrees(m: FiberModel, h: Sequence, c: Sequence) -> list[Fraction]:
    return [Q(hj) + v for hj, v in zip(h, matvec(m.ix, c))]


def blowup_point(m: FiberModel, j: int, at: str | None = None, name: str | None = None) -> FiberModel:
    """Blow up a smooth point of the fiber lying on component j only.

    `at` says which point: '0' or 'inf' for the point where the closure of
    0 (resp. infinity) meets component j, None for any other smooth point.
    The new component gets multiplicity a_j and self-intersection -1."""
    n = m.size
    a = m.mult[j]
    ix = [list(r) + [0] for r in m.ix] + [[0] * (n + 1)]
    ix[j][j] -= 1
    ix[j][n] = ix[n][j] = 1
    ix[n][n] = -1
    zord = None
    if m.zord is not None:
        shift = {"0": 1, "inf": -1, None: 0}[at]
        if shift and a != 1:
            raise InvalidFiber("a horizontal point can only meet a multiplicity-1 component")
        zord = m.zord + (m.zord[j] + shift,)
    return FiberModel(m.prime, m.mult + (a,), tuple(tuple(r) for r in ix),
                      m.names + (name or f"E{n + 1}",), zord)


def toric_chain(p: int, rays: Sequence[tuple[int, int]], names: Sequence[str] | None = None) -> FiberModel:
    """Regular toric model of P^1 over Z_p from rays (zord_j, mult_j).

    Rays are sorted by slope zord/mult; consecutive rays must form a lattice
    basis and the two end rays need multiplicity 1."""
    rays = sorted(((int(w), int(a)) for w, a in rays), key=lambda r: Fraction(r[0], r[1]))
    n = len(rays)
    for (w1, a1), (w2, a2) in zip(rays, rays[1:]):
        if w2 * a1 - w1 * a2 != 1:
            raise InvalidFiber("consecutive rays must have determinant 1 (regularity)")
    if rays[0][1] != 1 or rays[-1][1] != 1:
        raise InvalidFiber("end components of a toric chain have multiplicity 1")
    a = [r[1] for r in rays]
    ix = [[0] * n for _ in range(n)]
    for j in range(n):
        left = a[j - 1] if j > 0 else 0
        right = a[j + 1] if j < n - 1 else 0
        # fiber degree zero fixes the self-intersection
        ix[j][j] = -Fraction(left + right, a[j])
        if ix[j][j].denominator != 1:
            raise InvalidFiber("rays do not give an integral intersection matrix")
        ix[j][j] = int(ix[j][j])
        if j < n - 1:
            ix[j][j + 1] = ix[j + 1][j] = 1
    return FiberModel(p, tuple(a), tuple(tuple(r) for r in ix),
                      tuple(names) if names else tuple(f"C{i + 1}" for i in range(n)),
                      tuple(r[0] for r in rays))


@functools.lru_cache(maxsize=256)
def chain_order(m: FiberModel) -> tuple[int, ...] | None:
    """Component indices sorted along the skeleton if m is a regular toric chain."""
    if m.zord is None:
        return None
    order = sorted(range(m.size), key=m.node_abscissa)
    try:
        ref = toric_chain(m.prime, [(m.zord[j], m.mult[j]) for j in order])
    except InvalidFiber:
        return None
    permuted = tuple(tuple(m.ix[i][j] for j in order) for i in order)
    return tuple(order) if permuted == ref.ix else None


def fmt_vec(v) -> str:
    return "(" + ", ".join(fmt_q(Q(x)) for x in v) + ")"
