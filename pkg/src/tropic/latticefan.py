"""Exact rational linear algebra, primitive lattice vectors, polyhedral cones, and fans.

Everything here is computed over arbitrary-precision rationals (``fractions.Fraction``)
or plain Python integers; no floating point enters any predicate.  Cones are stored
by generators (V-description); facet descriptions are derived on demand with the
double description method and cached.  Intended scale is small ("desk scale"):
ambient dimension <= 6 and a few dozen generators per cone.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Iterable, Literal, Sequence

from .errors import (
    DeskScaleExceeded,
    DimMismatch,
    NotInSupport,
    ValidationReport,
    ZeroDirection,
)

RatVec = tuple[Fraction, ...]
IntVec = tuple[int, ...]

# fan_validate skips itself on trusted fans larger than this many cones
FAN_VALIDATE_CONE_LIMIT = 48

# facet descriptions are only derived at desk scale
H_DESCRIPTION_MAX_DIM = 6
H_DESCRIPTION_MAX_GENERATORS = 32


# ---------------------------------------------------------------------------
# vectors


def as_ratvec(coords: Iterable) -> RatVec:
    return tuple(Fraction(c) for c in coords)


def dot(a: Sequence, b: Sequence):
    if len(a) != len(b):
        raise DimMismatch(f"dot product of lengths {len(a)} and {len(b)}")
    return sum(x * y for x, y in zip(a, b))


def primitive(v: Sequence[int]) -> IntVec:
    """Divide an integer vector by the gcd of its entries, keeping orientation."""
    w = tuple(int(c) for c in v)
    if any(c != v[i] for i, c in enumerate(w)):
        raise ValueError("primitive() expects an integer vector")
    g = 0
    for c in w:
        g = gcd(g, abs(c))
    if g == 0:
        raise ZeroDirection("zero vector has no primitive direction")
    return tuple(c // g for c in w)


def primitive_and_scale(v: Sequence) -> tuple[IntVec, Fraction]:
    """Write a nonzero rational vector as scale * primitive with scale > 0."""
    w = as_ratvec(v)
    if all(c == 0 for c in w):
        raise ZeroDirection("zero vector has no primitive direction")
    m = lcm(*(c.denominator for c in w)) if w else 1
    ints = [int(c * m) for c in w]
    d = primitive(ints)
    g = 0
    for c in ints:
        g = gcd(g, abs(c))
    return d, Fraction(g, m)


def integerize(v: Sequence) -> IntVec:
    """Scale a rational vector to the primitive integer vector on the same ray."""
    d, _ = primitive_and_scale(v)
    return d


# ---------------------------------------------------------------------------
# exact rational elimination

Matrix = Sequence[Sequence]


def _echelon(rows: Matrix) -> tuple[list[list[Fraction]], list[int]]:
    """Forward elimination; returns (echelon rows, pivot column indices)."""
    work = [[Fraction(x) for x in row] for row in rows]
    ncols = len(work[0]) if work else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, len(work)):
            if work[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        work[r], work[pivot_row] = work[pivot_row], work[r]
        p = work[r][c]
        for i in range(r + 1, len(work)):
            if work[i][c] != 0:
                f = work[i][c] / p
                for j in range(c, ncols):
                    work[i][j] -= f * work[r][j]
        pivots.append(c)
        r += 1
        if r == len(work):
            break
    return work, pivots


def rank(rows: Matrix) -> int:
    rows = [row for row in rows]
    if not rows:
        return 0
    widths = {len(row) for row in rows}
    if len(widths) != 1:
        raise DimMismatch("rows of unequal length")
    return len(_echelon(rows)[1])


def kernel_dimension(rows: Matrix, ncols: int | None = None) -> int:
    """dim ker A = #columns - rank(A), by exact elimination."""
    rows = [row for row in rows]
    if not rows:
        if ncols is None:
            raise DimMismatch("empty matrix needs an explicit column count")
        return ncols
    n = len(rows[0])
    if ncols is not None and ncols != n:
        raise DimMismatch(f"declared {ncols} columns, rows have {n}")
    return n - rank(rows)


def kernel_basis(rows: Matrix, ncols: int | None = None) -> list[RatVec]:
    """Basis of {x : A x = 0}, one vector per free column (deterministic order)."""
    rows = [row for row in rows]
    if not rows:
        if ncols is None:
            raise DimMismatch("empty matrix needs an explicit column count")
        return [tuple(Fraction(1 if j == i else 0) for j in range(ncols)) for i in range(ncols)]
    n = len(rows[0])
    ech, pivots = _echelon(rows)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        x = [Fraction(0)] * n
        x[fc] = Fraction(1)
        # back-substitute pivot variables from the bottom up
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum(ech[r][j] * x[j] for j in range(pc + 1, n))
            x[pc] = -s / ech[r][pc]
        basis.append(tuple(x))
    return basis


def solve_exact(rows: Matrix, rhs: Sequence) -> list[Fraction] | None:
    """One exact solution of A x = b, or None if inconsistent."""
    rows = [list(row) + [b] for row, b in zip(rows, rhs)]
    if not rows:
        return []
    n = len(rows[0]) - 1
    ech, pivots = _echelon(rows)
    if n in pivots:  # pivot in the augmented column
        return None
    x = [Fraction(0)] * n
    for r in range(len(pivots) - 1, -1, -1):
        pc = pivots[r]
        s = sum(ech[r][j] * x[j] for j in range(pc + 1, n))
        x[pc] = (ech[r][n] - s) / ech[r][pc]
    return x


# ---------------------------------------------------------------------------
# integer lattice algorithms


def unimodular_diagonalize(a: Sequence[Sequence[int]], nrows: int, ncols: int):
    """Diagonalize an integer matrix as U A V = S with unimodular U, V.

    Smith-style gcd-driven row/column reduction, without enforcing the
    divisibility chain on the diagonal (no use here needs it).  Fine at the
    matrix sizes this package ever sees.
    """
    s = [[int(a[i][j]) for j in range(ncols)] for i in range(nrows)]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, f):
        s[dst] = [x + f * y for x, y in zip(s[dst], s[src])]
        u[dst] = [x + f * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, f):
        for row in s:
            row[dst] += f * row[src]
        for row in v:
            row[dst] += f * row[src]

    t = 0
    while t < min(nrows, ncols):
        # locate a nonzero pivot of least magnitude
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        swap_rows(t, best[0])
        swap_cols(t, best[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if s[i][t] != 0:
                    q = s[i][t] // s[t][t]
                    add_row(i, t, -q)
                    if s[i][t] != 0:  # remainder becomes the smaller pivot
                        swap_rows(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if s[t][j] != 0:
                    q = s[t][j] // s[t][t]
                    add_col(j, t, -q)
                    if s[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
        if s[t][t] < 0:
            s[t] = [-x for x in s[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    return u, s, v


def hnf_rows(rows: Sequence[Sequence[int]], ncols: int) -> tuple[IntVec, ...]:
    """Canonical row Hermite normal form of the lattice spanned by the rows.

    Pivots are positive, entries above each pivot are reduced into
    [0, pivot); the result is the unique canonical basis of the row lattice.
    """
    work = [[int(x) for x in row] for row in rows]
    m = len(work)
    r = 0
    for c in range(ncols):
        nz = [i for i in range(r, m) if work[i][c] != 0]
        if not nz:
            continue
        while len(nz) > 1:
            nz.sort(key=lambda i: abs(work[i][c]))
            i0 = nz[0]
            for i in nz[1:]:
                q = work[i][c] // work[i0][c]
                work[i] = [a - q * b for a, b in zip(work[i], work[i0])]
            nz = [i for i in range(r, m) if work[i][c] != 0]
        i0 = nz[0]
        work[r], work[i0] = work[i0], work[r]
        if work[r][c] < 0:
            work[r] = [-a for a in work[r]]
        for i in range(r):
            q = work[i][c] // work[r][c]
            if q:
                work[i] = [a - q * b for a, b in zip(work[i], work[r])]
        r += 1
    return tuple(tuple(row) for row in work[:r])


def integer_inverse(m: Sequence[Sequence[int]]) -> list[list[int]]:
    """Exact inverse of a unimodular integer matrix."""
    n = len(m)
    cols = []
    for j in range(n):
        rhs = [1 if i == j else 0 for i in range(n)]
        x = solve_exact(m, rhs)
        if x is None:
            raise DimMismatch("matrix is singular")
        cols.append(x)
    inv = [[cols[j][i] for j in range(n)] for i in range(n)]
    out = [[int(x) for x in row] for row in inv]
    if any(Fraction(out[i][j]) != inv[i][j] for i in range(n) for j in range(n)):
        raise DimMismatch("matrix is not unimodular")
    return out


def integer_kernel_basis(a: Sequence[Sequence[int]], ncols: int) -> list[IntVec]:
    """Basis of the lattice {x in Z^n : A x = 0} (saturated by construction)."""
    nrows = len(a)
    if nrows == 0:
        return [tuple(1 if j == i else 0 for j in range(ncols)) for i in range(ncols)]
    _, s, v = unimodular_diagonalize(a, nrows, ncols)
    r = sum(1 for i in range(min(nrows, ncols)) if s[i][i] != 0)
    return [tuple(v[i][j] for i in range(ncols)) for j in range(r, ncols)]


def quotient_lattice(kill: Sequence[IntVec], dim: int):
    """Split Z^dim along the saturation of span(kill).

    Returns (sat_basis, proj_rows, lift_cols): a lattice basis of
    span(kill) ^ Z^dim, a (dim-k) x dim projection matrix whose integer kernel
    is exactly that lattice, and a dim x (dim-k) section with proj . lift = id.
    """
    k = len(kill)
    if k == 0:
        ident = [tuple(1 if j == i else 0 for j in range(dim)) for i in range(dim)]
        return [], ident, ident
    cols = [[kill[j][i] for j in range(k)] for i in range(dim)]
    u, s, _ = unimodular_diagonalize(cols, dim, k)
    r = sum(1 for i in range(min(dim, k)) if s[i][i] != 0)
    uinv = integer_inverse(u)
    sat = [tuple(uinv[i][j] for i in range(dim)) for j in range(r)]
    proj = [tuple(u[i][j] for j in range(dim)) for i in range(r, dim)]
    lift = [tuple(uinv[i][j] for j in range(r, dim)) for i in range(dim)]
    return sat, proj, lift


# ---------------------------------------------------------------------------
# cones


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone, stored as the nonnegative span of primitive generators."""

    generators: tuple[IntVec, ...]
    ambient_dim: int

    @staticmethod
    def from_rays(rays: Iterable[Sequence], ambient_dim: int) -> "Cone":
        gens = []
        for r in rays:
            if len(r) != ambient_dim:
                raise DimMismatch(f"generator {tuple(r)} in ambient dim {ambient_dim}")
            gens.append(integerize(r))
        gens = sorted(set(gens))
        return Cone(tuple(gens), ambient_dim)

    def dim(self) -> int:
        if not self.generators:
            return 0
        return rank(self.generators)


@dataclass(frozen=True)
class HRepr:
    """H-description: x in cone iff e.x = 0 for all equations and f.x >= 0 for all facets."""

    equations: tuple[IntVec, ...]
    inequalities: tuple[IntVec, ...]


def double_description(
    equations: Sequence[IntVec],
    inequalities: Sequence[IntVec],
    ambient_dim: int,
) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    """Extreme rays of {x : e.x = 0, a.x >= 0} by the incremental double description method.

    Returns (lineality_basis, rays); the cone is span(lineality) + cone(rays)
    and the rays are extreme modulo lineality.  Adjacency is decided by the
    standard combinatorial test on sets of tight constraints.
    """
    lineality: list[IntVec] = [
        tuple(1 if j == i else 0 for j in range(ambient_dim)) for i in range(ambient_dim)
    ]
    rays: list[IntVec] = []
    tight: list[set[int]] = []  # per ray, indices of processed constraints at 0
    processed = 0

    def reduce_lineality(a: IntVec, keep_pivot_as_ray: bool):
        nonlocal lineality, rays, tight
        vals = [dot(a, b) for b in lineality]
        pivot = next((i for i, v in enumerate(vals) if v != 0), None)
        if pivot is None:
            return False
        b0, v0 = lineality[pivot], vals[pivot]
        if v0 < 0:
            b0 = tuple(-c for c in b0)
            v0 = -v0
        new_lin = []
        for i, b in enumerate(lineality):
            if i == pivot:
                continue
            vb = vals[i]
            new_lin.append(primitive(tuple(v0 * x - vb * y for x, y in zip(b, b0))))
        lineality = new_lin
        fixed_rays = []
        for r in rays:
            vr = dot(a, r)
            fixed_rays.append(primitive(tuple(v0 * x - vr * y for x, y in zip(r, b0))))
        rays = fixed_rays
        for t in tight:
            t.add(processed)  # adjusted rays are tight on a
        if keep_pivot_as_ray:
            rays.append(b0)
            tight.append(set(range(processed)))  # b0 was lineality: tight on all prior
        return True

    def cut_rays(a: IntVec, keep_positive: bool):
        nonlocal rays, tight
        vals = [dot(a, r) for r in rays]
        pos = [i for i, v in enumerate(vals) if v > 0]
        zero = [i for i, v in enumerate(vals) if v == 0]
        neg = [i for i, v in enumerate(vals) if v < 0]
        new_rays: list[IntVec] = []
        new_tight: list[set[int]] = []
        if keep_positive:
            for i in pos:
                new_rays.append(rays[i])
                new_tight.append(set(tight[i]))
        for i in zero:
            new_rays.append(rays[i])
            new_tight.append(tight[i] | {processed})
        for i, j in itertools.product(pos, neg):
            common = tight[i] & tight[j]
            adjacent = not any(
                k != i and k != j and common <= tight[k] for k in range(len(rays))
            )
            if not adjacent:
                continue
            combo = tuple(vals[i] * y - vals[j] * x for x, y in zip(rays[i], rays[j]))
            new_rays.append(primitive(combo))
            new_tight.append(common | {processed})
        rays = new_rays
        tight = new_tight

    for e in equations:
        e = tuple(int(c) for c in e)
        if all(c == 0 for c in e):
            processed += 1
            continue
        if not reduce_lineality(e, keep_pivot_as_ray=False):
            cut_rays(e, keep_positive=False)
        processed += 1
    for a in inequalities:
        a = tuple(int(c) for c in a)
        if all(c == 0 for c in a):
            processed += 1
            continue
        if not reduce_lineality(a, keep_pivot_as_ray=True):
            cut_rays(a, keep_positive=True)
        processed += 1
    return tuple(sorted(lineality)), tuple(sorted(rays))


@lru_cache(maxsize=None)
def cone_halfspaces(c: Cone) -> HRepr:
    """Facet description of a V-cone: dualize via double description.

    The lineality of the dual cone {y : y.g >= 0} is span(generators)^perp,
    which yields the equations; its extreme rays are the facet normals.
    Only available at desk scale.
    """
    if c.ambient_dim > H_DESCRIPTION_MAX_DIM or len(c.generators) > H_DESCRIPTION_MAX_GENERATORS:
        raise DeskScaleExceeded(
            f"facet enumeration limited to dim <= {H_DESCRIPTION_MAX_DIM} and "
            f"{H_DESCRIPTION_MAX_GENERATORS} generators; got dim {c.ambient_dim}, "
            f"{len(c.generators)} generators"
        )
    lin, rays = double_description((), c.generators, c.ambient_dim)
    return HRepr(equations=lin, inequalities=rays)


@lru_cache(maxsize=None)
def cone_extreme(c: Cone) -> tuple[tuple[IntVec, ...], tuple[IntVec, ...]]:
    """Minimal V-description (lineality basis, extreme rays) via double dualization."""
    h = cone_halfspaces(c)
    return double_description(h.equations, h.inequalities, c.ambient_dim)


def canonical_form(c: Cone):
    """Hashable key identifying the cone as a point set.

    Extreme rays are only determined modulo the lineality space, so each is
    replaced by its orthogonal projection onto the lineality complement; the
    lineality lattice itself is canonicalized by saturation + Hermite form.
    """
    lin, rays = cone_extreme(c)
    if not lin:
        return (rays, ())
    sat, _, _ = quotient_lattice(lin, c.ambient_dim)
    canon_lin = hnf_rows(sat, c.ambient_dim)
    # Gram-based orthogonal projection of each ray off span(lin), exactly
    gram = [[Fraction(dot(a, b)) for b in lin] for a in lin]
    canon_rays = []
    for r in rays:
        rhs = [Fraction(dot(r, b)) for b in lin]
        coeffs = solve_exact(gram, rhs)
        proj = [Fraction(x) for x in r]
        for coef, b in zip(coeffs, lin):
            for i, bi in enumerate(b):
                proj[i] -= coef * bi
        canon_rays.append(integerize(proj))
    return (tuple(sorted(canon_rays)), canon_lin)


def cones_equal(c1: Cone, c2: Cone) -> bool:
    return c1.ambient_dim == c2.ambient_dim and canonical_form(c1) == canonical_form(c2)


def cone_contains(
    c: Cone,
    p: Sequence,
    mode: Literal["closure", "relative_interior"] = "closure",
) -> bool:
    """Exact membership of a rational point, in the closed cone or its relative interior.

    A point is in the relative interior iff it satisfies the span equations
    and every facet inequality strictly, equivalently it lies in the cone but
    in no proper face.
    """
    if len(p) != c.ambient_dim:
        raise DimMismatch(f"point of dim {len(p)} vs cone in dim {c.ambient_dim}")
    pt = as_ratvec(p)
    h = cone_halfspaces(c)
    if any(dot(e, pt) != 0 for e in h.equations):
        return False
    if mode == "closure":
        return all(dot(f, pt) >= 0 for f in h.inequalities)
    if mode == "relative_interior":
        return all(dot(f, pt) > 0 for f in h.inequalities)
    raise ValueError(f"unknown containment mode {mode!r}")


def cone_intersection(c1: Cone, c2: Cone) -> Cone:
    if c1.ambient_dim != c2.ambient_dim:
        raise DimMismatch("intersecting cones of different ambient dimension")
    h1, h2 = cone_halfspaces(c1), cone_halfspaces(c2)
    lin, rays = double_description(
        h1.equations + h2.equations,
        h1.inequalities + h2.inequalities,
        c1.ambient_dim,
    )
    gens = list(rays)
    for b in lin:
        gens.append(b)
        gens.append(tuple(-x for x in b))
    return Cone.from_rays(gens, c1.ambient_dim)


def cone_faces(c: Cone) -> list[Cone]:
    """All faces of the cone, each generated by the stored generators lying on it."""
    seen: dict[frozenset, Cone] = {}

    def visit(gens: tuple[IntVec, ...]):
        key = frozenset(gens)
        if key in seen:
            return
        face = Cone(tuple(sorted(set(gens))), c.ambient_dim)
        seen[key] = face
        for normal in cone_halfspaces(face).inequalities:
            sub = tuple(g for g in gens if dot(normal, g) == 0)
            visit(sub)

    visit(c.generators)
    return sorted(seen.values(), key=lambda f: (len(f.generators), f.generators))


def is_face_of(face: Cone, c: Cone) -> bool:
    """Whether ``face`` equals the face of ``c`` cut out by its tight facet normals."""
    if face.ambient_dim != c.ambient_dim:
        raise DimMismatch("face test across ambient dimensions")
    if not all(cone_contains(c, g) for g in face.generators):
        return False
    h = cone_halfspaces(c)
    tight = [n for n in h.inequalities if all(dot(n, g) == 0 for g in face.generators)]
    cut = tuple(g for g in c.generators if all(dot(n, g) == 0 for n in tight))
    return cones_equal(face, Cone(cut, c.ambient_dim))


# ---------------------------------------------------------------------------
# fans


@dataclass(frozen=True)
class Fan:
    """Collection of cones closed under faces with face-to-face intersections."""

    cones: tuple[Cone, ...]
    ambient_dim: int
    trusted_complete: bool = False

    @staticmethod
    def build(cones: Iterable[Cone], ambient_dim: int, trusted_complete: bool = False) -> "Fan":
        ordered = sorted(set(cones), key=lambda c: (len(c.generators), c.generators))
        return Fan(tuple(ordered), ambient_dim, trusted_complete)

    def rays(self) -> tuple[IntVec, ...]:
        """Primitive generators of the one-dimensional cones."""
        out = [c.generators[0] for c in self.cones if len(c.generators) == 1 and c.dim() == 1]
        return tuple(sorted(set(out)))


def fan_from_maximal(
    rays: Sequence[Sequence[int]],
    maximal: Sequence[Sequence[int]],
    ambient_dim: int,
    trusted_complete: bool = False,
) -> Fan:
    """Fan generated by simplicial maximal cones given as ray index lists.

    Face closure is taken by enumerating ray subsets, which is only correct
    for simplicial cones (linearly independent generators).
    """
    ray_vecs = [integerize(r) for r in rays]
    cones = {Cone((), ambient_dim)}
    for idx in maximal:
        subset = [ray_vecs[i] for i in idx]
        if rank(subset) != len(subset):
            raise ValueError("fan_from_maximal requires simplicial maximal cones")
        for k in range(1, len(subset) + 1):
            for combo in itertools.combinations(subset, k):
                cones.add(Cone.from_rays(combo, ambient_dim))
    return Fan.build(cones, ambient_dim, trusted_complete)


def fan_validate(f: Fan, cone_limit: int = FAN_VALIDATE_CONE_LIMIT) -> ValidationReport:
    """Check face closure and that pairwise intersections are common faces.

    Stops at the first violation.  When the fan is trusted and larger than
    ``cone_limit`` the quadratic intersection check is skipped with a warning.
    """
    report = ValidationReport()
    if f.trusted_complete and len(f.cones) > cone_limit:
        report.warnings.append(
            f"validation skipped: trusted fan with {len(f.cones)} cones exceeds limit {cone_limit}"
        )
        return report
    for c in f.cones:
        if c.ambient_dim != f.ambient_dim:
            report.add("DimMismatch", f"cone {c.generators} has ambient dim {c.ambient_dim}")
            return report
    present = {canonical_form(c) for c in f.cones}
    for c in f.cones:
        for face in cone_faces(c):
            if canonical_form(face) not in present:
                report.add(
                    "FaceClosureViolated",
                    f"face {face.generators} of cone {c.generators} is not in the fan",
                )
                return report
    for c1, c2 in itertools.combinations(f.cones, 2):
        inter = cone_intersection(c1, c2)
        if not (is_face_of(inter, c1) and is_face_of(inter, c2)):
            report.add(
                "NonFaceIntersection",
                f"cones {c1.generators} and {c2.generators} meet in {inter.generators}, "
                "which is not a common face",
            )
            return report
    return report


def smallest_containing_cone(f: Fan, p: Sequence) -> Cone:
    """The unique cone of a valid fan whose relative interior contains ``p``."""
    if len(p) != f.ambient_dim:
        raise DimMismatch(f"point of dim {len(p)} vs fan in dim {f.ambient_dim}")
    for c in f.cones:
        if cone_contains(c, p, "relative_interior"):
            return c
    raise NotInSupport(f"point {tuple(p)} is not in the support of the fan")
