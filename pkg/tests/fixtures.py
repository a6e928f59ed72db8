"""Divisors shared by the test modules."""

from fractions import Fraction as F

from adelic_p1.adelic import naive_divisor, toric_divisor
from adelic_p1.exactmath import LogNumber, PLFunction
from adelic_p1.fiber_graph import blowup_point, smooth_model, toric_chain

CHAIN2 = toric_chain(2, [(0, 1), (1, 1)])  # nodes at v = 0 (inf side) and v = 1
CHAIN3 = toric_chain(3, [(0, 1), (1, 2), (1, 1)])  # nodes at v = 0, 1/2, 1
BLOWN2 = blowup_point(smooth_model(2), 0, "0", "E")  # exceptional curve where 0 meets the fiber
BLOWN3 = blowup_point(smooth_model(3), 0, "inf", "E")

TENT = PLFunction.from_points([(0, 0), (1, 1), (2, 0)], 0, 0)


def naive():
    return naive_divisor()


def naive_plus(c):
    return naive_divisor().add_constant(c)


def kink():
    """[inf] with g = max(0, u/2, u - 1)."""
    return toric_divisor(0, 1, [(0, 0), (2, 1)])


def shrunk():
    """[inf] with g = max(0, u - 4) + 3: nef part has coefficient 3/4 at infinity."""
    return toric_divisor(0, 1, [(0, 3), (4, 3)])


def double_log3():
    return naive_divisor().scale(2).add_constant(LogNumber.log_prime(3))


def two_points():
    """[0] + [inf] with g = |u| + 1."""
    return toric_divisor(1, 1, [(0, 1)])


def chain2():
    """[0] + [inf], g = |u|, the whole fiber at 2 with coefficient 1 on a two-node chain."""
    return toric_divisor(1, 1, [(0, 0)], {2: (CHAIN2, (1, 1))})


def chain3():
    """H with a convex skeleton function min-slope data on a three-node chain at 3."""
    return toric_divisor(0, 1, [(0, 0)], {3: (CHAIN3, (1, 1, F(1, 2)))})


def chain2_bare():
    """[0] + [inf] with g = |u| on the two-node chain and zero vertical part."""
    return toric_divisor(1, 1, [(0, 0)], {2: (CHAIN2, (0, 0))})


RELATIVELY_NEF = {
    "naive": naive,
    "naive+1": lambda: naive_plus(1),
    "naive-1": lambda: naive_plus(-1),
    "kink": kink,
    "shrunk": shrunk,
    "2naive+log3": double_log3,
    "two_points": two_points,
    "chain2": chain2,
    "chain3": chain3,
    "chain2_bare": chain2_bare,
}

NEF = {"naive", "naive+1", "2naive+log3", "two_points", "chain2", "chain3"}


def with_excess(D, model, coeffs, arch_bump=TENT):
    """D pulled to `model`, plus a vertical model function and an archimedean bump."""
    out = D.on_model(model).add_vertical(model.prime, coeffs)
    if arch_bump is not None:
        out = out.with_arch(type(out.arch)(out.arch.pl + arch_bump, out.arch.offset))
    return out


def zariski_family():
    """Divisors with vertical and archimedean excess over a nef or shrinkable part."""
    return {
        "naive+E+tent": with_excess(naive(), BLOWN2, (0, 1)),
        "naive+1+E+tent": with_excess(naive_plus(1), BLOWN2, (0, 1)),
        "shrunk+E3+tent": with_excess(shrunk(), BLOWN3, (0, 2)),
        "chain2+vert+tent": with_excess(chain2(), CHAIN2, (F(1, 2), 0)),
        "chain3+vert+tent": with_excess(chain3(), CHAIN3, (0, 1, 0), PLFunction.from_points([(-1, 0), (0, 2), (1, 0)], 0, 0)),
    }
