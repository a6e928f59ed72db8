"""Brute-force references used to check the fast algorithms."""

from fractions import Fraction as F
from itertools import combinations

import numpy as np

from adelic_p1.exactmath import NoSolution, solve_consistent
from adelic_p1.fiber_graph import blowup_point, smooth_model, toric_chain, FiberModel


def lp_vertex_oracle(M, h, d):
    """max sum(q) over {q <= d, h + M q >= 0} by enumerating every basic solution.

    Rows of the constraint system: e_j . q <= d_j and -M_j . q <= h_j.
    Each n-subset of the 2n rows is solved (float screen, then exactly)."""
    n = len(d)
    A = np.vstack([np.eye(n), -np.array(M, dtype=float)])
    b = np.concatenate([np.array(d, dtype=float), np.array(h, dtype=float)])
    cands = []
    for rows in combinations(range(2 * n), n):
        sub = A[list(rows)]
        if abs(np.linalg.det(sub)) < 1e-9:
            continue
        q = np.linalg.solve(sub, b[list(rows)])
        if np.all(A @ q <= b + 1e-7):
            cands.append((q.sum(), rows))
    if not cands:
        return None
    best = max(s for s, _ in cands)
    exact = []
    for s, rows in cands:
        if s < best - 1e-6:
            continue
        Ar = [[F(1) if i == j else F(0) for j in range(n)] if i < n else [-F(v) for v in M[i - n]] for i in rows]
        br = [F(d[i]) if i < n else F(h[i - n]) for i in rows]
        q = solve_consistent(Ar, br)
        if all(qj <= dj for qj, dj in zip(q, d)) and all(
                F(h[i]) + sum(F(M[i][j]) * q[j] for j in range(n)) >= 0 for i in range(n)):
            exact.append(q)
    top = max(sum(q) for q in exact)
    winners = {tuple(q) for q in exact if sum(q) == top}
    assert len(winners) == 1, "the greatest element is unique"
    return list(winners.pop())


def lp_whole_kernel_oracle(M, mult, h, d):
    """When a . h = 0 the feasible set is q0 + t a; its top point is explicit."""
    try:
        q0 = solve_consistent(M, [-F(v) for v in h])
    except NoSolution:
        return None
    t = min((F(dj) - qj) / a for dj, qj, a in zip(d, q0, mult))
    return [qj + t * a for qj, a in zip(q0, mult)]


def fiber_corpus():
    """Eleven regular fibers: smooth, cycles, toric chains and a blow-up tower."""
    p = 3
    tower = smooth_model(p)
    tower = blowup_point(tower, 0, "0")
    tower = blowup_point(tower, 1, "0")
    tower = blowup_point(tower, 2)
    return {
        "smooth": smooth_model(p),
        "I2": FiberModel(p, (1, 1), ((-2, 2), (2, -2))),
        "I3": FiberModel(p, (1, 1, 1), ((-2, 1, 1), (1, -2, 1), (1, 1, -2))),
        "I4": FiberModel(p, (1,) * 4, tuple(tuple(-2 if i == j else (1 if abs(i - j) in (1, 3) else 0)
                                                  for j in range(4)) for i in range(4))),
        "chain2": toric_chain(p, [(0, 1), (1, 1)]),
        "chain3": toric_chain(p, [(0, 1), (1, 2), (1, 1)]),
        "chain3b": toric_chain(p, [(-1, 1), (0, 1), (1, 1)]),
        "chain4": toric_chain(p, [(0, 1), (1, 3), (1, 2), (1, 1)]),
        "chain5": toric_chain(p, [(0, 1), (1, 3), (1, 2), (2, 3), (1, 1)]),
        "tower3": tower,
        "generic_blowup": blowup_point(smooth_model(p), 0),
    }
