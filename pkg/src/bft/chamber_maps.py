"""Maps of chamber sets and the recovery of the geometry behind them.

A :class:`ChamberMap` is nothing but a total table from the chambers of one
projective space to chambers of another of the same projective dimension.
``induce`` produces the two honest ways to get one from a semilinear map:
componentwise images ("direct"), or componentwise annihilators of the images
in reversed order ("dual").

The analysis direction asks: given only the table, was it induced?

* ``preserves_apartments`` checks that whole apartments land on whole
  apartments, recovering each candidate image apartment from the points of
  the image chambers (so the target never needs a full base enumeration).
* ``main_lemma_decompose`` works inside a single apartment: it transports
  each complement family through the map, identifies the image as a
  complement family of the image apartment, classifies the transported
  row/column families, and reads off a base correspondence ``sigma``
  together with its orientation case (1 = direct, 2 = dual).
* ``reconstruct`` rebuilds the point map ``g`` from chamber stars: all
  chambers through a point must map to chambers sharing a 0-component
  (direct) or an (n-1)-component (dual).  It also rebuilds the hyperplane
  map ``h``, checks ``h`` is determined by ``g``, checks incidence, and
  checks the whole table is componentwise induced by ``g``.
* ``classify`` combines these into one of five labels.

Failures carry witnesses (a base whose apartment breaks, or a pair of flags
whose images disagree) rather than a bare boolean.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Optional

from .buildings import (
    Apartment,
    Chamber,
    ScaleError,
    all_bases,
    apartment_of,
    chambers_of,
    check_chamber,
)
from .combinatorics import (
    FamilyConsistencyError,
    classify_adjacent_family,
    complement_family,
    copoint_family,
    point_family,
)
from .gf import Subspace
from .projective import (
    Base,
    MapError,
    ProjSpace,
    Semilinear,
    dual_subspace,
    is_independent,
    points_of,
    points_of_subspace,
    standard_base,
)

__all__ = [
    "AnalysisError",
    "DecompositionError",
    "ReconstructionError",
    "MixedKindError",
    "ChamberMap",
    "ApartmentCheck",
    "Decomposition",
    "StrongEmbeddingVerdict",
    "induce",
    "preserves_apartments",
    "main_lemma_decompose",
    "reconstruct",
    "verify_strong_embedding",
    "classify",
    "dual_point",
]

LABELS = (
    "collineation-direct",
    "collineation-dual",
    "strong-embedding-direct",
    "strong-embedding-dual",
    "not-apartment-preserving",
)


class AnalysisError(RuntimeError):
    """A chamber map failed a structural check; carries a witness."""

    def __init__(self, message, witness=None):
        super().__init__(message)
        self.witness = witness


class DecompositionError(AnalysisError):
    """An apartment's image does not behave like an apartment."""


class ReconstructionError(AnalysisError):
    """No single point/hyperplane map explains the chamber images."""


class MixedKindError(ReconstructionError):
    """Different stars demand different kinds (direct vs dual)."""


class ChamberMap:
    """A total mapping from the chambers of ``source`` to those of ``target``."""

    def __init__(self, source: ProjSpace, target: ProjSpace, table):
        if source.n != target.n:
            raise MapError(
                f"chamber maps need equal projective dimension, "
                f"got {source.n} and {target.n}"
            )
        self.source = source
        self.target = target
        self.table = dict(table)
        expected = set(chambers_of(source))
        missing = expected - self.table.keys()
        if missing:
            raise MapError(f"table is missing {len(missing)} source chambers")
        extra = self.table.keys() - expected
        if extra:
            raise MapError(f"table has {len(extra)} unknown source chambers")
        for image in self.table.values():
            check_chamber(target, image)

    def __call__(self, chamber: Chamber) -> Chamber:
        return self.table[chamber]

    def __repr__(self):
        return (
            f"ChamberMap(PG({self.source.n},{self.source.q}) -> "
            f"PG({self.target.n},{self.target.q}), {len(self.table)} chambers)"
        )

    def image_chambers(self) -> frozenset[Chamber]:
        return frozenset(self.table.values())

    def is_injective(self) -> bool:
        return len(self.image_chambers()) == len(self.table)

    def is_surjective(self) -> bool:
        return self.image_chambers() == set(chambers_of(self.target))


def dual_point(space: ProjSpace, hyperplane: Subspace) -> tuple[int, ...]:
    """The normalized coordinate vector of a hyperplane's annihilator line."""
    ann = dual_subspace(space, hyperplane)
    if ann.rank != 1:
        raise ValueError(f"expected a hyperplane, got rank {hyperplane.rank}")
    return ann.rows[0]


def induce(semi: Semilinear, dual: bool = False) -> ChamberMap:
    """The chamber map of a semilinear map: images, or annihilated images.

    With ``dual=False`` each flag component is replaced by its image; with
    ``dual=True`` the images are replaced by their annihilators and the flag
    is read backwards, so points and hyperplanes trade places.
    """
    table = {}
    for chamber in chambers_of(semi.source):
        parts = [semi.apply_subspace(part) for part in chamber.parts]
        if dual:
            parts = [dual_subspace(semi.target, part) for part in reversed(parts)]
        table[chamber] = Chamber(tuple(parts))
    return ChamberMap(semi.source, semi.target, table)


@dataclass(frozen=True)
class ApartmentCheck:
    ok: bool
    mode: str
    checked: int
    witness_base: Optional[Base] = None
    witness_image: Optional[frozenset] = None


def _image_apartment(f: ChamberMap, ap: Apartment):
    """The target apartment carrying the image chamber set, or a reason not.

    Returns ``(apartment, None)`` on success and ``(None, image_set)``
    when the image chamber set is not an apartment.
    """
    images = [f(c) for c in ap.chambers]
    image_set = frozenset(images)
    if len(image_set) != len(ap):
        return None, image_set
    points = {c.point for c in image_set}
    if len(points) != f.target.n + 1:
        return None, image_set
    try:
        base = Base.of(f.target, points)
    except ValueError:
        return None, image_set
    candidate = apartment_of(base)
    if image_set != candidate.chamber_set:
        return None, image_set
    return candidate, None


def _random_base(space: ProjSpace, rng: random.Random) -> Base:
    pts = list(points_of(space))
    while True:
        chosen = rng.sample(pts, space.n + 1)
        if is_independent(space, chosen):
            return Base.of(space, chosen)


def preserves_apartments(
    f: ChamberMap,
    mode: str = "exhaustive",
    k: int = 50,
    seed: int = 0,
    force: bool = False,
) -> ApartmentCheck:
    """Check that the image of every tested apartment is a target apartment.

    ``mode="exhaustive"`` sweeps every base of the source (subject to the
    enumeration cap); ``mode="sample"`` tests ``k`` seeded random bases.
    The first failing base is returned as a witness together with the
    offending image chamber set.
    """
    if mode == "exhaustive":
        bases = all_bases(f.source, force=force)
    elif mode == "sample":
        rng = random.Random(seed)
        bases = [_random_base(f.source, rng) for _ in range(k)]
    else:
        raise ValueError(f"unknown mode {mode!r}")
    for checked, base in enumerate(bases, start=1):
        candidate, image_set = _image_apartment(f, apartment_of(base))
        if candidate is None:
            return ApartmentCheck(False, mode, checked, base, image_set)
    return ApartmentCheck(True, mode, len(bases), None, None)


def main_lemma_decompose(f: ChamberMap, base: Base):
    """Read a base correspondence off one apartment's complement families.

    Returns ``(sigma, case)`` where ``sigma`` maps source base indices to
    image base indices; case 1 means point families go to point families,
    case 2 means they go to copoint families.  Raises
    :class:`DecompositionError` when any transported family fails to be a
    complement family of the image apartment, or the cases disagree.
    """
    ap = apartment_of(base)
    image_ap, image_set = _image_apartment(f, ap)
    if image_ap is None:
        raise DecompositionError(
            "the image of the apartment is not an apartment",
            witness=(base, image_set),
        )
    n = f.source.n
    pairs = [(i, j) for i in range(n + 1) for j in range(n + 1) if i != j]
    lookup = {
        frozenset(complement_family(image_ap, k, m)): (k, m) for k, m in pairs
    }
    transported = {}
    for pair in pairs:
        image = frozenset(f(c) for c in complement_family(ap, *pair))
        match = lookup.get(image)
        if match is None:
            raise DecompositionError(
                f"the image of complement family {pair} is not a complement "
                "family of the image apartment",
                witness=(base, pair),
            )
        transported[pair] = match
    sigma = []
    orientations = set()
    for i in range(n + 1):
        family = {transported[(i, j)] for j in range(n + 1) if j != i}
        try:
            index, orientation = classify_adjacent_family(family)
        except (FamilyConsistencyError, ValueError) as exc:
            raise DecompositionError(
                f"families anchored at {i} do not transport coherently: {exc}",
                witness=(base, i),
            ) from exc
        sigma.append(index)
        orientations.add(orientation)
    if len(orientations) != 1:
        raise DecompositionError(
            "point families transport with mixed orientations",
            witness=(base, tuple(sigma)),
        )
    if sorted(sigma) != list(range(n + 1)):
        raise DecompositionError(
            f"transported indices {sigma} are not a permutation",
            witness=(base, tuple(sigma)),
        )
    case = 1 if orientations == {"row"} else 2
    for i in range(n + 1):
        star = frozenset.intersection(
            *(
                frozenset(f(c) for c in complement_family(ap, i, j))
                for j in range(n + 1)
                if j != i
            )
        )
        expected = (
            point_family(image_ap, sigma[i])
            if case == 1
            else copoint_family(image_ap, sigma[i])
        )
        if star != expected:
            raise DecompositionError(
                f"star intersection at {i} does not match the transported "
                "point family",
                witness=(base, i),
            )
    return tuple(sigma), case


def _common_value(values):
    first = next(iter(values))
    return first if all(v == first for v in values) else None


def _witness_pair(star, images, key):
    """Two chambers of ``star`` whose images differ under ``key``."""
    seen = {}
    for chamber, image in zip(star, images):
        value = key(image)
        for other_value, other_chamber in seen.items():
            if other_value != value:
                return other_chamber, chamber
        seen.setdefault(value, chamber)
    return None


@dataclass
class Decomposition:
    kind: str  # "direct" or "dual"
    g: dict  # source point -> target point (direct) or target hyperplane
    h: dict  # source hyperplane -> target hyperplane (direct) or point
    sigma_by_base: dict = field(default_factory=dict)

    def g_image_size(self) -> int:
        return len(set(self.g.values()))


def reconstruct(f: ChamberMap) -> Decomposition:
    """Recover the point map behind an apartment-preserving chamber map.

    For every source point, the images of all chambers through it must share
    a 0-component (kind "direct") or an (n-1)-component (kind "dual"), the
    kind being the same for every point.  The hyperplane map is recovered
    the same way from chambers sharing a hyperplane, then three facts are
    verified: the hyperplane map is determined by the point map (join of
    point images, respectively meet of their image hyperplanes), incident
    point/hyperplane pairs stay incident, and every chamber's image is
    componentwise induced.  Violations raise :class:`ReconstructionError`
    with a witness pair of chambers.
    """
    source, target = f.source, f.target
    chambers = chambers_of(source)
    by_point = {}
    by_hyperplane = {}
    for c in chambers:
        by_point.setdefault(c.point, []).append(c)
        by_hyperplane.setdefault(c.hyperplane, []).append(c)

    g, kinds = {}, {}
    for p, star in by_point.items():
        images = [f(c) for c in star]
        common_point = _common_value([c.point for c in images])
        common_hyp = _common_value([c.hyperplane for c in images])
        if (common_point is None) == (common_hyp is None):
            if common_point is not None:
                raise ReconstructionError(
                    f"images of the chambers through {p} collapse; no unique "
                    "component map exists",
                    witness=(star[0], star[-1]),
                )
            raise ReconstructionError(
                f"chambers through {p} map to chambers sharing neither a "
                "point nor a hyperplane",
                witness=(
                    _witness_pair(star, images, lambda c: c.point),
                    _witness_pair(star, images, lambda c: c.hyperplane),
                ),
            )
        if common_point is not None:
            kinds[p], g[p] = "direct", common_point
        else:
            kinds[p], g[p] = "dual", common_hyp
    distinct = set(kinds.values())
    if len(distinct) != 1:
        direct_p = next(p for p, k in kinds.items() if k == "direct")
        dual_p = next(p for p, k in kinds.items() if k == "dual")
        raise MixedKindError(
            f"point {direct_p} reconstructs as direct but {dual_p} as dual",
            witness=(direct_p, dual_p),
        )
    kind = distinct.pop()

    h = {}
    for hyp, star in by_hyperplane.items():
        images = [f(c) for c in star]
        if kind == "direct":
            common = _common_value([c.hyperplane for c in images])
        else:
            common = _common_value([c.point for c in images])
        if common is None:
            raise ReconstructionError(
                f"chambers on hyperplane {hyp} do not share an image "
                "component of the expected kind",
                witness=(star[0], star[-1]),
            )
        h[hyp] = common

    _verify_h_from_g(f, kind, g, h)
    _verify_incidence(f, kind, g, h)
    _verify_componentwise(f, kind, g)

    sigma_by_base = {}
    try:
        bases = all_bases(source)[:5]
    except ScaleError:
        bases = (standard_base(source),)
    for base in bases:
        sigma_by_base[base] = main_lemma_decompose(f, base)

    return Decomposition(kind=kind, g=g, h=h, sigma_by_base=sigma_by_base)


def _induced_part(f: ChamberMap, kind: str, g: dict, part: Subspace) -> Subspace:
    """The image of one flag component under the reconstructed point map."""
    source, target = f.source, f.target
    pts = points_of_subspace(source, part)
    if kind == "direct":
        return target.subspace([g[p] for p in pts])
    meet = g[pts[0]]
    for p in pts[1:]:
        meet = meet.meet(g[p])
    return meet


def _verify_h_from_g(f, kind, g, h):
    for hyp, value in h.items():
        expected = _induced_part(f, kind, g, hyp)
        actual = value if kind == "direct" else f.target.point_space(value)
        if actual != expected:
            raise ReconstructionError(
                f"hyperplane map at {hyp} is not induced by the point map",
                witness=(hyp, value),
            )


def _verify_incidence(f, kind, g, h):
    for hyp, value in h.items():
        for p in points_of_subspace(f.source, hyp):
            if kind == "direct":
                ok = value.contains_vector(g[p])
            else:
                ok = g[p].contains_vector(value)
            if not ok:
                raise ReconstructionError(
                    f"images of incident pair ({p}, {hyp}) are not incident",
                    witness=(p, hyp),
                )


def _verify_componentwise(f, kind, g):
    n = f.source.n
    for chamber in chambers_of(f.source):
        image = f(chamber)
        for k, part in enumerate(chamber.parts):
            expected = _induced_part(f, kind, g, part)
            actual = image.parts[k] if kind == "direct" else image.parts[n - 1 - k]
            if actual != expected:
                raise ReconstructionError(
                    "a chamber image is not componentwise induced by the "
                    "point map",
                    witness=(chamber, image),
                )


@dataclass(frozen=True)
class StrongEmbeddingVerdict:
    ok: bool
    failures: tuple = ()


def verify_strong_embedding(
    source: ProjSpace, target: ProjSpace, g: dict
) -> StrongEmbeddingVerdict:
    """Check a point map: injective, collinearity both ways, bases to bases."""
    failures = []
    pts = points_of(source)
    if set(g.keys()) != set(pts):
        failures.append("map is not total on points")
        return StrongEmbeddingVerdict(False, tuple(failures))
    if len(set(g.values())) != len(pts):
        failures.append("map is not injective")
    lines = {source.subspace([a, b]) for a in pts for b in pts if a != b}
    for line in sorted(lines, key=lambda s: s.rows):
        image = target.subspace([g[p] for p in points_of_subspace(source, line)])
        if image.rank > 2:
            failures.append(f"line {line.rows} does not land inside a line")
            break
    for a, b, c in itertools.combinations(pts, 3):
        if source.subspace([a, b, c]).rank == 3:
            if target.subspace([g[a], g[b], g[c]]).rank != 3:
                failures.append(f"non-collinear triple {a}, {b}, {c} collapses")
                break
    try:
        bases = all_bases(source)
    except ScaleError:
        bases = (standard_base(source),)
    for base in bases:
        if not is_independent(target, [g[p] for p in base.points]):
            failures.append(f"base {base.points} does not map to a base")
            break
    return StrongEmbeddingVerdict(not failures, tuple(failures))


def classify(
    f: ChamberMap, mode: Optional[str] = None, k: int = 50, seed: int = 0
) -> str:
    """One of five labels describing where a chamber map can come from.

    Apartment preservation is checked first (exhaustively when the source is
    small, by seeded sampling otherwise); failures short-circuit to
    ``"not-apartment-preserving"``.  Otherwise the point map is
    reconstructed, and surjectivity decides collineation versus strong
    embedding.
    """
    if mode is None:
        mode = "exhaustive" if f.source.n <= 3 and f.source.q <= 3 else "sample"
    check = preserves_apartments(f, mode=mode, k=k, seed=seed)
    if not check.ok:
        return "not-apartment-preserving"
    decomposition = reconstruct(f)
    if decomposition.kind == "direct":
        point_map = decomposition.g
    else:
        point_map = {
            p: dual_point(f.target, hyp) for p, hyp in decomposition.g.items()
        }
    verdict = verify_strong_embedding(f.source, f.target, point_map)
    if not verdict.ok:
        raise ReconstructionError(
            f"reconstructed point map fails embedding checks: {verdict.failures}",
            witness=verdict.failures,
        )
    surjective = len(set(point_map.values())) == len(points_of(f.target))
    head = "collineation" if surjective else "strong-embedding"
    return f"{head}-{decomposition.kind}"
