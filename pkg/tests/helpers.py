"""Shared test utilities: independent oracles and random curve generators.

The oracles here deliberately avoid the library code paths they are used to
check: monoid membership by brute-force closure, cone membership by
Caratheodory subset enumeration, rank by transposed elimination.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from math import gcd

from tropic.curves import TropicalCurve
from tropic.latticefan import primitive, rank, solve_exact


def monoid_closure(k: int, bound: int) -> set[tuple[int, int]]:
    """All sums of {(1,1),(k,0),(0,k)} with coordinate sum <= bound."""
    gens = [(1, 1), (k, 0), (0, k)]
    seen = {(0, 0)}
    frontier = [(0, 0)]
    while frontier:
        n1, n2 = frontier.pop()
        for g1, g2 in gens:
            m = (n1 + g1, n2 + g2)
            if m[0] + m[1] <= bound and m not in seen:
                seen.add(m)
                frontier.append(m)
    return seen


def contains_caratheodory(generators, point, dim) -> bool:
    """Cone membership by solving over every linearly independent generator subset."""
    point = [Fraction(x) for x in point]
    if all(x == 0 for x in point):
        return True
    gens = list(generators)
    if not gens:
        return False
    top = rank(gens)
    for size in range(1, top + 1):
        for subset in itertools.combinations(gens, size):
            if rank(subset) != size:
                continue
            rows = [[Fraction(g[i]) for g in subset] for i in range(dim)]
            sol = solve_exact(rows, point)
            if sol is not None and all(x >= 0 for x in sol):
                return True
    return False


def rank_by_transpose(rows) -> int:
    """Rank via elimination on the transpose: an independent pivot order."""
    rows = [list(r) for r in rows]
    if not rows:
        return 0
    ncols = len(rows[0])
    transposed = [[Fraction(rows[i][j]) for i in range(len(rows))] for j in range(ncols)]
    return rank(transposed)


def content(v) -> int:
    g = 0
    for x in v:
        g = gcd(g, abs(x))
    return g


def random_primitive(rng: random.Random, dim: int):
    while True:
        v = tuple(rng.randint(-3, 3) for _ in range(dim))
        if any(v):
            return primitive(v)


def random_balanced_trivalent_tree(
    rng: random.Random, dim: int, max_vertices: int = 6
) -> TropicalCurve:
    """Balanced genus-0 curve, every vertex trivalent, grown ray by ray."""
    while True:
        d1 = random_primitive(rng, dim)
        d2 = random_primitive(rng, dim)
        s = tuple(-(a + b) for a, b in zip(d1, d2))
        if any(s):
            break
    vertices = {"v0": tuple(Fraction(0) for _ in range(dim))}
    rays = [
        ["r0", "v0", d1, 1],
        ["r1", "v0", d2, 1],
        ["r2", "v0", primitive(s), content(s)],
    ]
    edges = []
    next_ray = 3
    target = rng.randint(1, max_vertices)
    while len(vertices) < target:
        idx = rng.randrange(len(rays))
        _, base, d, w = rays.pop(idx)
        step = Fraction(rng.randint(1, 4), rng.randint(1, 3))
        new_v = f"v{len(vertices)}"
        vertices[new_v] = tuple(p + step * x for p, x in zip(vertices[base], d))
        edges.append((f"e{len(edges)}", (base, new_v), w))
        # rebalance the new vertex: edge contributes w * (-d); rays must sum to w * d
        while True:
            e1 = random_primitive(rng, dim)
            rem = tuple(w * x - y for x, y in zip(d, e1))
            if any(rem):
                break
        rays.append([f"r{next_ray}", new_v, e1, 1])
        rays.append([f"r{next_ray + 1}", new_v, primitive(rem), content(rem)])
        next_ray += 2
    return TropicalCurve.build(
        dim,
        vertices,
        edges,
        [(rid, base, d, w) for rid, base, d, w in rays],
    )


def reachable_lattice_points(gens, members, dim, margin=3):
    """Subset of ``members`` expressible as N-combinations of ``gens``.

    BFS from the origin over lattice points whose infinity norm stays within
    the member box plus a margin (intermediate sums may step outside the box).
    """
    member_set = set(members)
    norm = max((max(abs(x) for x in m) for m in member_set), default=0) + margin
    seen = {tuple([0] * dim)}
    frontier = [tuple([0] * dim)]
    while frontier:
        p = frontier.pop()
        for g in gens:
            q = tuple(a + b for a, b in zip(p, g))
            if q not in seen and max(abs(x) for x in q) <= norm:
                seen.add(q)
                frontier.append(q)
    return member_set & seen
