"""Independent reference computations used by the tests.

Nothing here goes through GoldenMatrix or the package's group code.
"""
from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np

SQRT5 = math.sqrt(5)
TAU = (1 + SQRT5) / 2


def golden_float(p, q) -> float:
    return float(p) + float(q) * TAU


def num_roots(family: str, n: int) -> int:
    """|Phi| for the finite types (standard tables)."""
    if family == "A":
        return n * (n + 1)
    if family in ("B", "C"):
        return 2 * n * n
    if family == "D":
        return 2 * n * (n - 1)
    return {("E", 6): 72, ("E", 7): 126, ("E", 8): 240, ("F", 4): 48, ("G", 2): 12,
            ("H", 3): 30, ("H", 4): 120}[(family, n)]


def coxeter_number_from_roots(family: str, n: int) -> int:
    """h = |Phi| / rank."""
    return num_roots(family, n) // n


def group_order_formula(family: str, n: int) -> int:
    f = math.factorial
    if family == "A":
        return f(n + 1)
    if family in ("B", "C"):
        return 2**n * f(n)
    if family == "D":
        return 2 ** (n - 1) * f(n)
    return {("E", 6): 51840, ("F", 4): 1152, ("G", 2): 12, ("H", 3): 120, ("H", 4): 14400}[(family, n)]


def float_group_order(gens: list[np.ndarray], limit: int = 200000) -> int:
    """BFS over float matrices keyed by rounding (independent of exact code)."""
    n = gens[0].shape[0]
    key = lambda M: tuple(np.round(M, 6).ravel())
    seen = {key(np.eye(n))}
    frontier = [np.eye(n)]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = x @ g
                k = key(y)
                if k not in seen:
                    seen.add(k)
                    nxt.append(y)
        frontier = nxt
        if len(seen) > limit:
            raise RuntimeError("limit")
    return len(seen)


def float_reflection(a: np.ndarray) -> np.ndarray:
    return np.eye(len(a)) - 2 * np.outer(a, a) / (a @ a)


def d4_shells() -> dict[int, int]:
    """Brute force: integer vectors of R^4 with even sum, by squared norm."""
    out: dict[int, int] = {}
    for v in itertools.product(range(-2, 3), repeat=4):
        if sum(v) % 2 == 0:
            s = sum(x * x for x in v)
            if 0 < s <= 4:
                out[s] = out.get(s, 0) + 1
    return out


def ball_count_box(kind: str, n: int, r2) -> int:
    """Count lattice points by scanning ambient integer/rational coordinates."""
    r2 = Fraction(r2)
    b = int(math.isqrt(int(r2))) + 1
    count = 0
    if kind == "Z":
        for v in itertools.product(range(-b, b + 1), repeat=n):
            count += sum(x * x for x in v) <= r2
    elif kind == "D":
        for v in itertools.product(range(-b, b + 1), repeat=n):
            count += sum(v) % 2 == 0 and sum(x * x for x in v) <= r2
    elif kind == "A_root":
        for v in itertools.product(range(-b, b + 1), repeat=n):
            last = -sum(v)
            count += sum(x * x for x in v) + last * last <= r2
    elif kind == "A_weight":
        # A_n* is Z^(n+1) projected to the sum-zero plane; representatives with
        # last coordinate 0 cover each coset of (1, ..., 1) once.
        m = n + 1
        B = 2 * b
        for v in itertools.product(range(-B, B + 1), repeat=n):
            y = list(v) + [0]
            mean = Fraction(sum(y), m)
            count += sum((yi - mean) ** 2 for yi in y) <= r2
    return count


def parallel_projector(vectors: list[np.ndarray]) -> np.ndarray:
    B = np.array(vectors).T
    return B @ np.linalg.pinv(B)
