"""The affine apartment and the affine Weyl group as exact transformations.

Group elements act on coweight coordinates by x -> Mx + t with an integer
matrix M and an integer translation vector t; equality and hashing use the
transformation data, so enumeration never solves a word problem.  The
canonical generator order is s_0 < s_1 < ... < s_r, where s_0 reflects in
the wall {theta(x) = 1} of the highest root theta, making the fundamental
alcove {x : alpha_i(x) > 0, theta(x) < 1}.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .errors import (
    BudgetExceeded,
    DimensionMismatch,
    DomainError,
    NotDominant,
    NotInGroup,
    UnknownNormalization,
)
from .rootsystems import Root, RootSystem, reflection_matrix

DEFAULT_BUDGET = 10_000_000


class MetricNormalization(Enum):
    """Scaling convention for the W-invariant apartment metric."""

    ALCOVE_DIAMETER_ONE = "alcove-diameter-one"
    STANDARD_EUCLIDEAN = "standard-euclidean"

    @classmethod
    def parse(cls, text: str) -> "MetricNormalization":
        key = text.strip().lower().replace("_", "-")
        aliases = {
            "alcove-diameter-one": cls.ALCOVE_DIAMETER_ONE,
            "alcovediameterone": cls.ALCOVE_DIAMETER_ONE,
            "alcove": cls.ALCOVE_DIAMETER_ONE,
            "standard-euclidean": cls.STANDARD_EUCLIDEAN,
            "standardeuclidean": cls.STANDARD_EUCLIDEAN,
            "euclidean": cls.STANDARD_EUCLIDEAN,
        }
        if key not in aliases:
            raise UnknownNormalization(f"unknown metric normalization {text!r}")
        return aliases[key]


@dataclass(frozen=True)
class ApartmentPoint:
    """A point of the apartment in exact-rational coweight coordinates."""

    coords: tuple[Fraction, ...]

    @classmethod
    def of(cls, values) -> "ApartmentPoint":
        return cls(tuple(Fraction(v) for v in values))

    @classmethod
    def origin(cls, rank: int) -> "ApartmentPoint":
        return cls((Fraction(0),) * rank)

    @property
    def dimension(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class AffineWeylElement:
    """An affine transformation x -> Mx + t preserving the wall configuration.

    The cached length is metadata: it does not participate in equality or
    hashing, so the same transformation reached twice compares equal.
    """

    linear: tuple[tuple[int, ...], ...]
    translation: tuple[int, ...]
    length: int | None = field(default=None, compare=False, repr=False)

    @classmethod
    def identity(cls, rank: int) -> "AffineWeylElement":
        eye = tuple(tuple(1 if j == k else 0 for k in range(rank)) for j in range(rank))
        return cls(eye, (0,) * rank, 0)

    @property
    def rank(self) -> int:
        return len(self.translation)

    def apply_coords(self, coords):
        rank = self.rank
        m, t = self.linear, self.translation
        return tuple(
            sum(m[j][k] * coords[k] for k in range(rank)) + t[j] for j in range(rank)
        )

    def apply(self, point: ApartmentPoint) -> ApartmentPoint:
        if point.dimension != self.rank:
            raise DimensionMismatch(f"point has dimension {point.dimension}, element rank {self.rank}")
        return ApartmentPoint(tuple(Fraction(v) for v in self.apply_coords(point.coords)))

    def compose(self, other: "AffineWeylElement") -> "AffineWeylElement":
        """self after other: x -> self(other(x))."""
        rank = self.rank
        a, b = self.linear, other.linear
        m = tuple(
            tuple(sum(a[j][i] * b[i][k] for i in range(rank)) for k in range(rank))
            for j in range(rank)
        )
        t = tuple(
            sum(a[j][i] * other.translation[i] for i in range(rank)) + self.translation[j]
            for j in range(rank)
        )
        return AffineWeylElement(m, t)

    def __mul__(self, other: "AffineWeylElement") -> "AffineWeylElement":
        return self.compose(other)

    def inverse(self) -> "AffineWeylElement":
        inv = _integer_matrix_inverse(self.linear)
        rank = self.rank
        t = tuple(
            -sum(inv[j][i] * self.translation[i] for i in range(rank)) for j in range(rank)
        )
        return AffineWeylElement(inv, t)

    def with_length(self, length: int) -> "AffineWeylElement":
        return AffineWeylElement(self.linear, self.translation, length)

    @property
    def is_pure_translation(self) -> bool:
        rank = self.rank
        return all(
            self.linear[j][k] == (1 if j == k else 0) for j in range(rank) for k in range(rank)
        )


def _integer_matrix_inverse(m):
    rank = len(m)
    aug = [[Fraction(m[j][k]) for k in range(rank)] + [Fraction(1 if k == j else 0) for k in range(rank)]
           for j in range(rank)]
    for col in range(rank):
        pivot = next(r for r in range(col, rank) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(rank):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    inv = []
    for j in range(rank):
        row = []
        for k in range(rank):
            val = aug[j][rank + k]
            assert val.denominator == 1, "matrix is not invertible over the integers"
            row.append(int(val))
        inv.append(tuple(row))
    return tuple(inv)


def _check_point(rs: RootSystem, x: ApartmentPoint) -> None:
    if x.dimension != rs.rank:
        raise DimensionMismatch(f"point dimension {x.dimension} != rank {rs.rank} of {rs.name}")


def affine_root_value(rs: RootSystem, alpha, n: int, x: ApartmentPoint) -> Fraction:
    """Exact value alpha(x) + n; zero exactly when x lies on the wall."""
    coords = alpha.coords if isinstance(alpha, Root) else tuple(alpha)
    if len(coords) != rs.rank:
        raise DimensionMismatch(f"root dimension {len(coords)} != rank {rs.rank}")
    _check_point(rs, x)
    if not rs.is_root(coords):
        raise DomainError(f"{coords} is not a root of {rs.name}")
    return sum((c * v for c, v in zip(coords, x.coords)), start=Fraction(0)) + n


def vertex_lattice_member(rs: RootSystem, x: ApartmentPoint) -> bool:
    """Whether every root takes an integer value at x (simple roots suffice)."""
    _check_point(rs, x)
    return all(Fraction(c).denominator == 1 for c in x.coords)


def simple_affine_reflections(rs: RootSystem) -> tuple[AffineWeylElement, ...]:
    """The r+1 generators (s_0, s_1, ..., s_r) in canonical order."""
    rank = rs.rank
    theta = rs.highest_root
    m0 = tuple(
        tuple((1 if j == k else 0) - theta.coroot[j] * theta.coords[k] for k in range(rank))
        for j in range(rank)
    )
    gens = [AffineWeylElement(m0, theta.coroot, 1)]
    zero = (0,) * rank
    for i in range(rank):
        gens.append(AffineWeylElement(reflection_matrix(rs.cartan_matrix, i), zero, 1))
    return tuple(gens)


@dataclass(frozen=True)
class AffineCensus:
    """BFS census of the affine Weyl group: counts and elements per length.

    words, when kept, holds the shortlex-minimal reduced word of each element
    (generator indices, 0 = affine reflection), aligned with elements.
    """

    type_name: str
    counts: tuple[int, ...]
    elements: tuple[tuple[AffineWeylElement, ...], ...]
    words: tuple[tuple[tuple[int, ...], ...], ...] | None = None

    @property
    def max_length(self) -> int:
        return len(self.counts) - 1

    def all_elements(self) -> Iterator[AffineWeylElement]:
        for layer in self.elements:
            yield from layer

    def length_of(self, element: AffineWeylElement) -> int | None:
        for l, layer in enumerate(self.elements):
            if element in layer:
                return l
        return None

    def to_json_dict(self) -> dict:
        return {"type": self.type_name, "lmax": self.max_length, "counts": list(self.counts)}

    def write_csv(self, stream) -> None:
        writer = csv.writer(stream)
        writer.writerow(("length", "count"))
        for l, c in enumerate(self.counts):
            writer.writerow((l, c))


def enumerate_affine_weyl(
    rs: RootSystem,
    lmax: int,
    *,
    budget: int = DEFAULT_BUDGET,
    keep_words: bool = False,
) -> AffineCensus:
    """Enumerate all elements of length <= lmax by breadth-first search.

    Expansion is right multiplication by the generators in canonical order,
    so the output (counts, element order, reduced words) is deterministic.
    """
    if lmax < 0:
        raise DomainError("lmax must be >= 0")
    gens = simple_affine_reflections(rs)
    ident = AffineWeylElement.identity(rs.rank)
    layers = [(ident,)]
    word_layers = [((),)] if keep_words else None
    seen = {ident}
    total = 1
    for depth in range(1, lmax + 1):
        layer = []
        words = [] if keep_words else None
        for idx, w in enumerate(layers[depth - 1]):
            for gi, g in enumerate(gens):
                cand = w.compose(g)
                if cand in seen:
                    continue
                total += 1
                if total > budget:
                    raise BudgetExceeded(
                        f"affine enumeration for {rs.name} passed {budget} elements at length {depth}",
                        size=total,
                    )
                seen.add(cand)
                layer.append(cand.with_length(depth))
                if keep_words:
                    words.append(word_layers[depth - 1][idx] + (gi,))
        layers.append(tuple(layer))
        if keep_words:
            word_layers.append(tuple(words))
    return AffineCensus(
        rs.name,
        tuple(len(layer) for layer in layers),
        tuple(layers),
        tuple(word_layers) if keep_words else None,
    )


def apartment_distance_sq(
    rs: RootSystem,
    x: ApartmentPoint,
    y: ApartmentPoint,
    norm: MetricNormalization = MetricNormalization.ALCOVE_DIAMETER_ONE,
) -> Fraction:
    """Exact squared distance between two apartment points."""
    _check_point(rs, x)
    _check_point(rs, y)
    if not isinstance(norm, MetricNormalization):
        raise UnknownNormalization(f"unknown metric normalization {norm!r}")
    value = rs.norm_sq(tuple(a - b for a, b in zip(x.coords, y.coords)))
    if norm is MetricNormalization.ALCOVE_DIAMETER_ONE:
        value = value / rs.alcove_diameter_sq
    return value


def apartment_distance(
    rs: RootSystem,
    x: ApartmentPoint,
    y: ApartmentPoint,
    norm: MetricNormalization = MetricNormalization.ALCOVE_DIAMETER_ONE,
) -> float:
    return math.sqrt(float(apartment_distance_sq(rs, x, y, norm)))


def scale_embed(x: ApartmentPoint, e: int) -> ApartmentPoint:
    """Multiplication by the ramification degree e, exact on coordinates."""
    if e < 1:
        raise DomainError("scale factor must be a positive integer")
    return ApartmentPoint(tuple(c * e for c in x.coords))


def extension_image(w: AffineWeylElement, e: int) -> AffineWeylElement:
    """The element in extension conventions: same linear part, translation e·t.

    A base-field uniformizer translation by mu becomes translation by e·mu,
    since the base uniformizer is the e-th power of the extension one up to
    a unit.
    """
    if e < 1:
        raise DomainError("scale factor must be a positive integer")
    return AffineWeylElement(w.linear, tuple(t * e for t in w.translation), w.length)


def check_equivariance(w: AffineWeylElement, x: ApartmentPoint, e: int) -> bool:
    """Exact check that scaling by e intertwines the two actions."""
    left = scale_embed(w.apply(x), e)
    right = extension_image(w, e).apply(scale_embed(x, e))
    return left == right


def _in_coroot_lattice(rs: RootSystem, coords: tuple[int, ...]) -> bool:
    # Solve sum_i k_i cartan[i][j] = coords[j]; membership iff k is integral.
    n = rs.rank
    aug = [
        [Fraction(rs.cartan_matrix[i][j]) for i in range(n)] + [Fraction(coords[j])]
        for j in range(n)
    ]
    for col in range(n):
        pivot = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[pivot] = aug[pivot], aug[col]
        pv = aug[col][col]
        aug[col] = [v / pv for v in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [v - factor * u for v, u in zip(aug[r], aug[col])]
    return all(aug[j][n].denominator == 1 for j in range(n))


@dataclass(frozen=True)
class TranslationLength:
    """BFS length of a pure translation plus the positive-root pairing.

    root_sum_pairing is sum over positive roots alpha of <alpha, mu>; the
    operational length is the BFS value, the pairing is reported alongside
    for comparison and never substituted for it.
    """

    bfs_length: int
    root_sum_pairing: int


def translation_length(rs: RootSystem, mu, *, budget: int = DEFAULT_BUDGET) -> TranslationLength:
    """Length of the pure translation by a dominant coroot-lattice vector."""
    values = mu.coords if isinstance(mu, ApartmentPoint) else tuple(mu)
    if len(values) != rs.rank:
        raise DimensionMismatch(f"coweight dimension {len(values)} != rank {rs.rank}")
    coords = []
    for v in values:
        fv = Fraction(v)
        if fv.denominator != 1:
            raise DomainError(f"coweight must be integral, got {v}")
        coords.append(int(fv))
    coords = tuple(coords)
    if any(c < 0 for c in coords):
        raise NotDominant(f"{coords} pairs negatively with a simple root")
    if not _in_coroot_lattice(rs, coords):
        raise NotInGroup(f"{coords} is not in the coroot lattice of {rs.name}")
    pairing = sum(t * c for t, c in zip(rs.two_rho, coords))
    target = AffineWeylElement(AffineWeylElement.identity(rs.rank).linear, coords)
    lmax = max(pairing, 0)
    while True:
        census = enumerate_affine_weyl(rs, lmax, budget=budget)
        found = census.length_of(target)
        if found is not None:
            return TranslationLength(found, pairing)
        lmax += 2  # budget inside the enumeration bounds the retries


@dataclass(frozen=True)
class DistanceLengthBand:
    """Constants with lower·l(w) - slack <= d(w·0, 0) <= upper·l(w) + slack."""

    lower: float
    upper: float
    slack: float
    lmax: int


def band_from_census(
    rs: RootSystem,
    census: AffineCensus,
    norm: MetricNormalization = MetricNormalization.ALCOVE_DIAMETER_ONE,
) -> DistanceLengthBand:
    """Fit band constants from an enumeration.

    Elements fixing the origin (the finite Weyl part, lengths up to the
    number of positive roots) force the additive slack; beyond that range
    every element moves the origin, so the lower slope is positive.
    """
    finite_max = len(rs.positive_roots)
    if census.max_length <= finite_max:
        raise DomainError(
            f"band fit needs enumeration beyond length {finite_max} for {rs.name}"
        )
    origin = ApartmentPoint.origin(rs.rank)
    upper = 0.0
    lower = math.inf
    for l, layer in enumerate(census.elements):
        if l == 0:
            continue
        for w in layer:
            d = apartment_distance(rs, ApartmentPoint.of(w.translation), origin, norm)
            ratio_up = d / l
            if ratio_up > upper:
                upper = ratio_up
            if l > finite_max:
                ratio_lo = d / (l - finite_max)
                if ratio_lo < lower:
                    lower = ratio_lo
    return DistanceLengthBand(lower, upper, lower * finite_max, census.max_length)


def fit_length_distance_band(
    rs: RootSystem,
    lmax: int,
    norm: MetricNormalization = MetricNormalization.ALCOVE_DIAMETER_ONE,
    *,
    budget: int = DEFAULT_BUDGET,
) -> DistanceLengthBand:
    return band_from_census(rs, enumerate_affine_weyl(rs, lmax, budget=budget), norm)
