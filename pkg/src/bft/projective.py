"""Finite projective spaces PG(n, q) and maps between them.

A point is a normalized coordinate tuple: the first nonzero coordinate
is 1, so each rank-1 subspace has exactly one point representative.
Subspaces are the echelon :class:`~bft.gf.Subspace` values of the
underlying GF(q)^(n+1); their projective dimension is ``pdim``.

The dual space is materialized concretely: a hyperplane of P corresponds
to the point of the dual space given by the normalized row spanning its
annihilator, and in general ``dual_subspace`` sends a pdim-k subspace to
the pdim-(n-k-1) annihilator.  Dual objects live in a ProjSpace of the
same (n, q); the pairing is the standard dot product.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .gf import GF, FieldError, Subspace


class MapError(ValueError):
    """A semilinear map that is not injective or not well formed."""


@dataclass(frozen=True)
class ProjSpace:
    """PG(n, q): the projective space of GF(q)^(n+1)."""

    n: int
    gf: GF

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"projective dimension must be >= 2, got {self.n}")

    @classmethod
    def of(cls, n: int, q: int) -> "ProjSpace":
        return cls(n, GF.of(q))

    @property
    def q(self) -> int:
        return self.gf.q

    @property
    def ambient(self) -> int:
        return self.n + 1

    def __repr__(self):
        return f"PG({self.n},{self.q})"

    def subspace(self, vectors) -> Subspace:
        return Subspace.span(self.gf, self.ambient, vectors)

    def point_space(self, point) -> Subspace:
        return Subspace.span(self.gf, self.ambient, [point])


def normalize_point(space: ProjSpace, vector) -> tuple[int, ...]:
    """Scale so the first nonzero coordinate is 1."""
    v = tuple(space.gf.check_code(x) for x in vector)
    if len(v) != space.ambient:
        raise ValueError(f"expected {space.ambient} coordinates, got {len(v)}")
    lead = next((x for x in v if x), None)
    if lead is None:
        raise ValueError("the zero vector is not a projective point")
    if lead == 1:
        return v
    s = space.gf.inv[lead]
    return tuple(space.gf.mul[s][x] for x in v)


@lru_cache(maxsize=None)
def points_of(space: ProjSpace) -> tuple[tuple[int, ...], ...]:
    """All points in lexicographic coordinate order."""
    return tuple(
        v
        for v in itertools.product(range(space.q), repeat=space.ambient)
        if any(v) and next(x for x in v if x) == 1
    )


def span_points(space: ProjSpace, points) -> Subspace:
    return space.subspace(list(points))


def is_independent(space: ProjSpace, points) -> bool:
    pts = list(points)
    return span_points(space, pts).rank == len(pts)


def points_of_subspace(space: ProjSpace, sub: Subspace) -> tuple[tuple[int, ...], ...]:
    """The points lying in a subspace, sorted lexicographically."""
    if sub.gf != space.gf or sub.ambient != space.ambient:
        raise ValueError("subspace does not live in this space")
    gf, out = space.gf, set()
    for coeffs in itertools.product(range(space.q), repeat=sub.rank):
        if not any(coeffs):
            continue
        v = [0] * space.ambient
        for c, row in zip(coeffs, sub.rows):
            if c:
                v = [gf.add[x][gf.mul[c][y]] for x, y in zip(v, row)]
        out.add(normalize_point(space, v))
    return tuple(sorted(out))


@dataclass(frozen=True)
class Base(object):
    """n + 1 points spanning the space; an unordered set stored sorted.

    The sorted order provides the canonical indexing 0..n used by
    apartments: ``points[i]`` is the i-th base point.
    """

    space: ProjSpace
    points: tuple[tuple[int, ...], ...]

    @classmethod
    def of(cls, space: ProjSpace, points) -> "Base":
        pts = tuple(sorted(normalize_point(space, p) for p in points))
        if len(set(pts)) != space.ambient:
            raise ValueError(f"a base of {space!r} needs {space.ambient} distinct points")
        if not is_independent(space, pts):
            raise ValueError("base points are linearly dependent")
        return cls(space, pts)

    def index(self, point) -> int:
        return self.points.index(tuple(point))


def standard_base(space: ProjSpace) -> Base:
    return Base.of(
        space,
        [
            tuple(1 if j == i else 0 for j in range(space.ambient))
            for i in range(space.ambient)
        ],
    )


def extend_to_base(space: ProjSpace, points=()) -> Base:
    """Complete an independent point set to a base, scanning candidate
    points in lexicographic order and keeping each one that raises the
    rank.  Deterministic; the input points are kept."""
    pts = [normalize_point(space, p) for p in points]
    if not is_independent(space, pts):
        raise ValueError("cannot extend a dependent point set to a base")
    current = span_points(space, pts)
    for cand in points_of(space):
        if len(pts) == space.ambient:
            break
        if current.contains_vector(cand):
            continue
        pts.append(cand)
        current = current.extended_by(cand)
    return Base.of(space, pts)


# ---------------------------------------------------------------- duality


def dual_subspace(space: ProjSpace, sub: Subspace) -> Subspace:
    """The annihilator, read as a subspace of the dual space.

    Inclusion-reversing and involutive; pdim k goes to pdim n - k - 1.
    """
    if sub.gf != space.gf or sub.ambient != space.ambient:
        raise ValueError("subspace does not live in this space")
    return sub.annihilator()


def dual_base(space: ProjSpace, base: Base) -> Base:
    """The base of the dual space formed by the annihilators of the
    hyperplanes spanned by all-but-one base point.

    The i-th dual base point is orthogonal to every base point except
    the i-th, so the construction is involutive up to normalization.
    """
    duals = []
    for i in range(space.ambient):
        others = base.points[:i] + base.points[i + 1 :]
        ann = span_points(space, others).annihilator()
        duals.append(normalize_point(space, ann.rows[0]))
    return Base.of(space, duals)


# ---------------------------------------------------------------- residue


@dataclass(frozen=True)
class Residue:
    """The quotient geometry of all subspaces through a fixed point.

    Realized as PG(n-1, q) on the coordinates away from the point's
    pivot column.  ``project`` is a pdim-lowering bijection from the
    subspaces through the point onto the subspaces of the quotient.
    """

    parent: ProjSpace
    point: tuple[int, ...]
    space: ProjSpace
    pivot: int

    def project(self, sub: Subspace) -> Subspace:
        if not sub.contains_vector(self.point):
            raise ValueError("subspace does not pass through the residue point")
        gf = self.parent.gf
        rows = []
        for r in sub.rows:
            c = r[self.pivot]
            if c:
                r = tuple(
                    gf.add[x][gf.neg[gf.mul[c][y]]] for x, y in zip(r, self.point)
                )
            rows.append(r[: self.pivot] + r[self.pivot + 1 :])
        return Subspace.span(gf, self.space.ambient, rows)


def residue(space: ProjSpace, point) -> Residue:
    if space.n < 3:
        raise ValueError(
            "the residue of a point is a projective space only for n >= 3"
        )
    p = normalize_point(space, point)
    pivot = next(c for c, x in enumerate(p) if x)
    return Residue(space, p, ProjSpace(space.n - 1, space.gf), pivot)


# ------------------------------------------------------------- semilinear


@dataclass(frozen=True)
class Semilinear:
    """An injective semilinear map between spaces of equal dimension.

    ``sigma`` is a field homomorphism GF(q) -> GF(q') as a code table
    (use ``GF.embedding_into`` or ``GF.frobenius``); ``matrix`` is an
    (n+1) x (n+1) matrix over the target field, applied on the right of
    row vectors.  Construction fails if sigma is not a homomorphism or
    the matrix is singular over the target field, so every instance
    preserves linear independence and induces a strong embedding of the
    point sets.
    """

    source: ProjSpace
    target: ProjSpace
    sigma: tuple[int, ...]
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.source.n != self.target.n:
            raise MapError("source and target must have equal projective dimension")
        if not self.source.gf.is_hom_into(self.target.gf, self.sigma):
            raise MapError(
                f"sigma is not a field homomorphism GF({self.source.q}) -> GF({self.target.q})"
            )
        m = self.target.ambient
        if len(self.matrix) != m or any(len(r) != m for r in self.matrix):
            raise MapError(f"matrix must be {m} x {m}")
        for r in self.matrix:
            for x in r:
                self.target.gf.check_code(x)
        if Subspace.span(self.target.gf, m, self.matrix).rank != m:
            raise MapError("matrix is singular over the target field")

    @classmethod
    def of(cls, source: ProjSpace, target: ProjSpace, matrix, sigma=None) -> "Semilinear":
        if sigma is None:
            sigma = source.gf.embedding_into(target.gf)
        return cls(source, target, tuple(sigma), tuple(tuple(r) for r in matrix))

    def apply_vector(self, v) -> tuple[int, ...]:
        gf = self.target.gf
        w = [0] * self.target.ambient
        for x, row in zip(v, self.matrix):
            s = self.sigma[x]
            if s:
                w = [gf.add[a][gf.mul[s][b]] for a, b in zip(w, row)]
        return tuple(w)

    def apply_point(self, point) -> tuple[int, ...]:
        return normalize_point(self.target, self.apply_vector(point))

    def apply_subspace(self, sub: Subspace) -> Subspace:
        if sub.gf != self.source.gf or sub.ambient != self.source.ambient:
            raise ValueError("subspace does not live in the source space")
        return Subspace.span(
            self.target.gf,
            self.target.ambient,
            [self.apply_vector(r) for r in sub.rows],
        )

    def is_surjective_on_points(self) -> bool:
        # sigma surjective onto GF(q') makes the map a collineation
        return len(set(self.sigma)) == self.target.q
