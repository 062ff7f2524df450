"""Chamber families inside a single apartment, and their intersection counts.

Fix an apartment on a base p_0, ..., p_n.  Each of its chambers corresponds
to a permutation ``perm`` of ``0..n`` (the order in which base points enter
the flag), so every family below is really a set of permutations; the
functions return the matching chambers.  Indices are 0-based positions into
the base, so valid indices are ``range(n + 1)``.

Families, for distinct indices i, j:

* ``point_family(ap, i)`` -- chambers whose 0-component is the point p_i.
* ``copoint_family(ap, i)`` -- chambers whose hyperplane omits p_i.
* ``point_copoint_family(ap, i, j)`` -- both at once (empty when i == j).
* ``max_inexact_family(ap, i, j)`` -- chambers all of whose components S
  satisfy "span(p_i, p_j) <= S or p_i not in S"; the maximal subsets of the
  apartment contained in more than one apartment are exactly these.
* ``complement_family(ap, i, j)`` -- the rest of the apartment.
* ``residual_family(ap, i, j)`` -- chambers placing i strictly inside the
  permutation, before j, with j not last.

``intersection_count`` measures overlaps of two complement families by
enumeration; ``closed_form`` returns the predicted cardinality for each of
the six relative dispositions of the two index pairs.  The two are compared
by tests and by the ``lemmas`` CLI command; disagreements are reported, not
patched over.

An *exact* subset of an apartment is one contained in no other apartment.
``is_exact_by_search`` decides this literally by searching all apartments;
``is_exact`` decides it from the subset's trace: for each i, the
intersection of the trace members through p_i must be the point p_i alone.
"""

from __future__ import annotations

import itertools
from functools import lru_cache
from math import factorial

from .buildings import Apartment, Chamber, apartments_containing
from .projective import points_of, points_of_subspace

__all__ = [
    "UndefinedCountError",
    "FamilyConsistencyError",
    "point_family",
    "copoint_family",
    "point_copoint_family",
    "residual_family",
    "max_inexact_family",
    "complement_family",
    "complement_chamber",
    "d_transform",
    "disposition",
    "intersection_count",
    "closed_form",
    "complement_adjacent",
    "star_intersections",
    "classify_adjacent_family",
    "is_exact",
    "is_exact_by_search",
]


class UndefinedCountError(ValueError):
    """The requested closed-form count is undefined at this rank."""


class FamilyConsistencyError(RuntimeError):
    """A mutually adjacent family fits neither the row nor the column shape."""


def _check_index(ap: Apartment, *indices):
    n = ap.base.space.n
    for i in indices:
        if not 0 <= i <= n:
            raise ValueError(f"index {i} out of range 0..{n}")


def _check_pair(ap: Apartment, i: int, j: int):
    _check_index(ap, i, j)
    if i == j:
        raise ValueError(f"indices must be distinct, got ({i}, {j})")


def _select(ap: Apartment, keep) -> frozenset[Chamber]:
    """Chambers of ``ap`` whose position vector satisfies ``keep``."""
    return frozenset(
        ap.chambers[k] for k, pos in enumerate(ap.positions()) if keep(pos)
    )


@lru_cache(maxsize=None)
def point_family(ap: Apartment, i: int) -> frozenset[Chamber]:
    """Chambers whose 0-component is the i-th base point.  Size n!."""
    _check_index(ap, i)
    return _select(ap, lambda pos: pos[i] == 0)


@lru_cache(maxsize=None)
def copoint_family(ap: Apartment, i: int) -> frozenset[Chamber]:
    """Chambers whose hyperplane does not contain the i-th base point.

    Equivalently: chambers through the complementary hyperplane
    span(base - {p_i}).  Size n!.
    """
    _check_index(ap, i)
    n = ap.base.space.n
    return _select(ap, lambda pos: pos[i] == n)


@lru_cache(maxsize=None)
def point_copoint_family(ap: Apartment, i: int, j: int) -> frozenset[Chamber]:
    """Chambers through p_i whose hyperplane omits p_j.

    Size (n-1)! when i != j; empty when i == j (a point cannot lie outside
    every hyperplane of its own chamber).
    """
    _check_index(ap, i, j)
    n = ap.base.space.n
    return _select(ap, lambda pos: pos[i] == 0 and pos[j] == n)


@lru_cache(maxsize=None)
def residual_family(ap: Apartment, i: int, j: int) -> frozenset[Chamber]:
    """Chambers placing i and j strictly inside the permutation, i first.

    In positions: 0 < pos(i) < pos(j) < n.  Empty when n == 2 (there is no
    room for two interior indices).
    """
    _check_pair(ap, i, j)
    n = ap.base.space.n
    return _select(ap, lambda pos: 0 < pos[i] < pos[j] < n)


@lru_cache(maxsize=None)
def max_inexact_family(ap: Apartment, i: int, j: int) -> frozenset[Chamber]:
    """Chambers all of whose components contain both of p_i, p_j or miss p_i.

    Checked literally on the component prefix sets: every proper prefix P of
    the permutation must satisfy ``{i, j} <= P or i not in P``.
    """
    _check_pair(ap, i, j)
    pair = {i, j}
    out = []
    for k, prefixes in enumerate(ap.prefix_sets()):
        if all(pair <= p or i not in p for p in prefixes):
            out.append(ap.chambers[k])
    return frozenset(out)


@lru_cache(maxsize=None)
def complement_family(ap: Apartment, i: int, j: int) -> frozenset[Chamber]:
    """The apartment minus ``max_inexact_family(ap, i, j)``."""
    _check_pair(ap, i, j)
    return ap.chamber_set - max_inexact_family(ap, i, j)


def complement_chamber(ap: Apartment, chamber: Chamber) -> Chamber:
    """The opposite chamber: component k becomes span(base - prefix_{n-k}).

    On permutations this is reversal, so it is an involution that swaps
    ``point_family(i)`` with ``copoint_family(i)`` and sends
    ``residual_family(i, j)`` onto ``residual_family(j, i)``.
    """
    perm = ap.perm_of_chamber(chamber)
    return ap.chamber_of_perm(tuple(reversed(perm)))


def d_transform(ap: Apartment, i: int, j: int, chamber: Chamber) -> Chamber:
    """Swap the roles of base points i and j in the chamber's permutation.

    A fixed-point-free involution of the apartment; it exchanges
    ``point_copoint_family(k, m) & residual_family(i, j)`` with its
    complement inside ``point_copoint_family(k, m)`` for k, m outside
    {i, j}.
    """
    _check_pair(ap, i, j)
    perm = ap.perm_of_chamber(chamber)
    swap = {i: j, j: i}
    return ap.chamber_of_perm(tuple(swap.get(v, v) for v in perm))


def _check_index_pair(pair) -> tuple[int, int]:
    i, j = pair
    if i == j:
        raise ValueError(f"index pair must have distinct entries, got {pair}")
    return i, j


def disposition(pair1, pair2) -> int:
    """Classify the relative position of two distinct index pairs, 1..6.

    With (i, j) and (k, m) both ordered pairs of distinct indices:

    1. (k, m) == (j, i)                     (the reversed pair)
    2. three indices, i == k                (same first entry)
    3. three indices, j == m                (same second entry)
    4. three indices, i == m                (first meets the other second)
    5. three indices, j == k                (second meets the other first)
    6. four distinct indices.
    """
    i, j = _check_index_pair(pair1)
    k, m = _check_index_pair(pair2)
    if (i, j) == (k, m):
        raise ValueError(f"index pairs must be distinct, got {pair1} twice")
    if (k, m) == (j, i):
        return 1
    size = len({i, j, k, m})
    if size == 4:
        return 6
    if i == k:
        return 2
    if j == m:
        return 3
    if i == m:
        return 4
    assert j == k
    return 5


def intersection_count(ap: Apartment, pair1, pair2) -> int:
    """|complement_family(pair1) & complement_family(pair2)| by enumeration."""
    disposition(pair1, pair2)  # validates the pairs
    first = complement_family(ap, *pair1)
    second = complement_family(ap, *pair2)
    return len(first & second)


def closed_form(n: int, case: int) -> int:
    """Predicted complement-family overlap for each disposition case.

    The case-6 value is undefined at n == 2, where no four distinct indices
    exist; asking for it raises :class:`UndefinedCountError`.
    """
    if n < 2:
        raise ValueError(f"rank must be at least 2, got n={n}")
    if case not in range(1, 7):
        raise ValueError(f"disposition case must be 1..6, got {case}")
    f1 = factorial(n - 1)
    if case == 1:
        return 0
    if case in (2, 3):
        value = factorial(n) + (n - 2) * f1
        if n >= 4:
            value += (n - 2) * (n - 3) * f1 // 3
        return value
    if case in (4, 5):
        value = f1 + (n - 2) * f1
        if n >= 4:
            value += (n - 2) * (n - 3) * f1 // 6
        return value
    if n == 2:
        raise UndefinedCountError("the case-6 count is not defined at n=2")
    value = factorial(n) + (n - 1) * f1
    if n >= 5:
        value += (n - 3) * (n - 4) * f1 // 4
    return value


def complement_adjacent(pair1, pair2) -> bool:
    """Whether two complement families overlap maximally: same first or same
    second index (disposition case 2 or 3)."""
    return disposition(pair1, pair2) in (2, 3)


def star_intersections(ap: Apartment, i: int):
    """Intersections of all complement families anchored at i.

    Returns the pair ``(meet of complement_family(i, j) over j != i,
    meet of complement_family(j, i) over j != i)``; these are expected to be
    ``point_family(i)`` and ``copoint_family(i)`` and are computed purely by
    enumeration so tests can compare.
    """
    _check_index(ap, i)
    n = ap.base.space.n
    others = [j for j in range(n + 1) if j != i]
    first = frozenset(ap.chamber_set)
    second = frozenset(ap.chamber_set)
    for j in others:
        first &= complement_family(ap, i, j)
        second &= complement_family(ap, j, i)
    return first, second


def classify_adjacent_family(pairs):
    """Identify a mutually adjacent family of n index pairs as a row or column.

    ``pairs`` must be n distinct, pairwise ``complement_adjacent`` index
    pairs over the index set 0..n.  The only two shapes such a family can
    take are a full row {(i, j) : j != i} or a full column {(j, i) : j != i};
    returns ``(i, "row")`` or ``(i, "column")`` accordingly and raises
    :class:`FamilyConsistencyError` for any other shape.
    """
    family = sorted(set(pairs))
    n = len(family)
    if n < 2:
        raise ValueError("need at least two index pairs")
    for pair in family:
        i, j = _check_index_pair(pair)
        if not (0 <= i <= n and 0 <= j <= n):
            raise ValueError(f"pair {pair} out of range for index set 0..{n}")
    for p1, p2 in itertools.combinations(family, 2):
        if not complement_adjacent(p1, p2):
            raise ValueError(f"pairs {p1} and {p2} are not adjacent")
    firsts = {p[0] for p in family}
    seconds = {p[1] for p in family}
    if len(firsts) == 1:
        (i,) = firsts
        if seconds == set(range(n + 1)) - {i}:
            return i, "row"
    if len(seconds) == 1:
        (i,) = seconds
        if firsts == set(range(n + 1)) - {i}:
            return i, "column"
    raise FamilyConsistencyError(
        f"family {family} is neither a full row nor a full column"
    )


# --------------------------------------------------------------- exactness


@lru_cache(maxsize=None)
def _point_masks(ap: Apartment):
    """Point set of every subspace occurring as a component in ``ap``."""
    space = ap.base.space
    return {sub: frozenset(points_of_subspace(space, sub)) for sub in ap.trace()}


def _check_subset(ap: Apartment, chambers) -> tuple[Chamber, ...]:
    subset = tuple(chambers)
    outside = [c for c in subset if c not in ap.chamber_set]
    if outside:
        raise ValueError(f"chamber {outside[0]} is not in the apartment")
    return subset


def is_exact(ap: Apartment, chambers) -> bool:
    """Trace criterion: no other apartment contains the subset.

    For each base point p_i, intersect every component subspace of the
    subset that contains p_i; the subset is exact exactly when each such
    intersection is the single point p_i.  (With no components through p_i
    the intersection is the whole space, so small subsets come out inexact,
    including the empty one.)
    """
    subset = _check_subset(ap, chambers)
    masks = _point_masks(ap)
    space = ap.base.space
    everything = frozenset(points_of(space))
    trace = {part for c in subset for part in c.parts}
    for p in ap.base.points:
        meet = everything
        for sub in trace:
            if p in masks[sub]:
                meet &= masks[sub]
        if meet != {p}:
            return False
    return True


def is_exact_by_search(ap: Apartment, chambers, force: bool = False) -> bool:
    """Decide exactness by counting the apartments containing the subset."""
    subset = _check_subset(ap, chambers)
    space = ap.base.space
    return len(apartments_containing(space, subset, force=force)) == 1
