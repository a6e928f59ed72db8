"""Greatest relatively nef vertical corrections on a fixed fiber model."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .exactmath import NoSolution, Q, ord_p, solve_consistent
from .fiber_graph import FiberModel, ModelMismatch, fiber_degrees


class Infeasible(ValueError):
    pass


class NonMaximal(AssertionError):
    pass


class EmptySections(ValueError):
    pass


@dataclass(frozen=True)
class SubsolutionResult:
    q: tuple
    active_set: frozenset
    slack: tuple


def balance(m: FiberModel, target: Sequence) -> list[Fraction]:
    """x with M x = target, shifted along the fiber so that x[0] = 0."""
    t = [Q(v) for v in target]
    if len(t) != m.size:
        raise ModelMismatch("target length does not match the model")
    for comp in m.components_of_graph():
        if sum(m.mult[j] * t[j] for j in comp) != 0:
            raise Infeasible("target has nonzero degree along the fiber")
    try:
        x = solve_consistent(m.ix, t)
    except NoSolution as exc:
        raise Infeasible(str(exc)) from None
    for comp in m.components_of_graph():
        j0 = comp[0]
        r = x[j0] / m.mult[j0]
        for j in comp:
            x[j] -= r * m.mult[j]
    return x


def _solve_block(m: FiberModel, h, q, d, S: list[int], comp: list[int]) -> None:
    """Make slacks vanish on S (inside one graph component), q = d elsewhere."""
    M = m.ix
    rest = [j for j in comp if j not in S]
    rhs = [-h[i] - sum((M[i][j] * d[j] for j in rest), Fraction(0)) for i in S]
    sub = [[M[i][j] for j in S] for i in S]
    if rest:
        x = solve_consistent(sub, rhs)  # M_SS is negative definite here
        for i, v in zip(S, x):
            q[i] = v
        return
    # the whole component is active: solutions form a line q0 + t*a
    if sum(m.mult[j] * h[j] for j in comp) != 0:
        raise Infeasible("no relatively nef divisor below the bound on this component")
    try:
        x = solve_consistent(sub, rhs)
    except NoSolution:
        raise Infeasible("no relatively nef divisor below the bound on this component") from None
    t = min((d[j] - v) / m.mult[j] for j, v in zip(S, x))
    for j, v in zip(S, x):
        q[j] = v + t * m.mult[j]


def greatest_subsolution(m: FiberModel, h: Sequence, d: Sequence) -> SubsolutionResult:
    """Largest q <= d with h + M q >= 0, by the monotone active-set iteration."""
    h = [Q(v) for v in h]
    d = [Q(v) for v in d]
    n = m.size
    if len(h) != n or len(d) != n:
        raise ModelMismatch("vector length does not match the model")
    comps = m.components_of_graph()
    q = list(d)
    active: set[int] = set()
    for _ in range(n + 1):
        slack = fiber_degrees(m, h, q)
        bad = [j for j in range(n) if slack[j] < 0]
        if not bad:
            break
        active.update(bad)
        for comp in comps:
            S = [j for j in comp if j in active]
            if S:
                _solve_block(m, h, q, d, S, comp)
    slack = fiber_degrees(m, h, q)
    if any(s < 0 for s in slack):
        raise Infeasible("active-set iteration did not reach a feasible point")
    if any(qj > dj for qj, dj in zip(q, d)):
        raise NonMaximal("bound violated")
    if any(qj < dj and s != 0 for qj, dj, s in zip(q, d, slack)):
        raise NonMaximal("complementary slackness violated")
    return SubsolutionResult(tuple(q), frozenset(active), tuple(slack))


def perpendicularity_check(m: FiberModel, h: Sequence, d: Sequence, result: SubsolutionResult) -> Fraction:
    """(H + Q) . (D - Q) = sum_j (d_j - q_j) slack_j."""
    return sum(((Q(dj) - qj) * s for dj, qj, s in zip(d, result.q, result.slack)), Fraction(0))


def is_rel_nef(m: FiberModel, h: Sequence, c: Sequence) -> bool:
    return all(s >= 0 for s in fiber_degrees(m, h, c))


@dataclass(frozen=True)
class SectionalDecomposition:
    fixed_vert: tuple
    fixed_horizontal: tuple  # (at 0, at infinity)
    movable_vert: tuple
    movable_horizontal: tuple


def section_divisor(m: FiberModel, d, a0, ainf, k: int, c) -> tuple[list[Fraction], tuple]:
    """Vertical and horizontal coefficients of D + div(c z^k) on the model."""
    c = Q(c)
    if c == 0:
        raise ValueError("zero is not a section")
    v = ord_p(c, m.prime)
    if k and m.zord is None:
        raise ModelMismatch("monomials with k != 0 need the model's zord data")
    w = m.zord or (0,) * m.size
    vert = [Q(dj) + m.mult[j] * v + k * w[j] for j, dj in enumerate(d)]
    return vert, (Q(a0) + k, Q(ainf) - k)


def sectional_decomposition_local(m: FiberModel, d: Sequence, sections, a0=0, ainf=0) -> SectionalDecomposition:
    """Fixed part F = componentwise min of D + div(s) over the given sections."""
    sections = list(sections)
    if not sections:
        raise EmptySections("no sections given")
    divs = []
    for k, c in sections:
        vert, hor = section_divisor(m, d, a0, ainf, k, c)
        if min(vert) < 0 or min(hor) < 0:
            raise ValueError(f"section c*z^k with k={k}, c={c} is not effective against D")
        divs.append((vert, hor))
    fv = tuple(min(dv[0][j] for dv in divs) for j in range(m.size))
    fh = tuple(min(dv[1][i] for dv in divs) for i in range(2))
    pv = tuple(Q(dj) - f for dj, f in zip(d, fv))
    ph = (Q(a0) - fh[0], Q(ainf) - fh[1])
    return SectionalDecomposition(fv, fh, pv, ph)
