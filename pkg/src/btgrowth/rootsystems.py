"""Exact root-system data for the irreducible split families A through G.

Apartment points are written in the fundamental-coweight basis, so the j-th
coordinate of a point x is the exact pairing <alpha_j, x>.  A root is stored
by its integer coefficients over the simple roots, which turns evaluating a
root on a point into a plain dot product.  Simple coroots, and the coroot
attached to every root, live in the same coweight basis; the Cartan matrix
row convention is cartan[i][j] = <alpha_j, alpha_i^vee>, so row i of the
Cartan matrix *is* the i-th simple coroot.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import prod

from .errors import BudgetExceeded, InvalidRank
from .series import IntPolynomial

DEFAULT_WEYL_BUDGET = 10_000_000

_TYPE_RE = re.compile(r"^([A-Ga-g])\s*([0-9]+)$")

_RANK_RULES = {
    "A": lambda n: n >= 1,
    "B": lambda n: n >= 2,
    "C": lambda n: n >= 2,
    "D": lambda n: n >= 3,
    "E": lambda n: n in (6, 7, 8),
    "F": lambda n: n == 4,
    "G": lambda n: n == 2,
}


@dataclass(frozen=True)
class CartanType:
    """Irreducible type: family letter A-G plus rank."""

    family: str
    rank: int

    def __post_init__(self):
        rule = _RANK_RULES.get(self.family)
        if rule is None:
            raise InvalidRank(f"unknown family {self.family!r}")
        if not rule(self.rank):
            raise InvalidRank(f"rank {self.rank} is not valid for family {self.family}")

    @classmethod
    def parse(cls, text: str) -> "CartanType":
        """Parse strings like "A2", "c2", "G 2" (family letter, decimal rank)."""
        m = _TYPE_RE.match(text.strip())
        if m is None:
            raise ValueError(f"cannot parse Cartan type from {text!r}")
        return cls(m.group(1).upper(), int(m.group(2)))

    def __str__(self) -> str:
        return f"{self.family}{self.rank}"


def _cartan_matrix(ctype: CartanType) -> tuple[tuple[int, ...], ...]:
    n = ctype.rank
    fam = ctype.family
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def bond(i, j):
        a[i][j] = -1
        a[j][i] = -1

    if fam in ("A", "B", "C"):
        for i in range(n - 1):
            bond(i, i + 1)
        if fam == "B":
            a[n - 1][n - 2] = -2  # last simple root is short
        if fam == "C":
            a[n - 2][n - 1] = -2  # last simple root is long
    elif fam == "D":
        for i in range(n - 2):
            bond(i, i + 1)
        bond(n - 3, n - 1)
    elif fam == "E":
        for i, j in ((0, 2), (2, 3), (3, 4), (1, 3)):
            bond(i, j)
        for i in range(4, n - 1):
            bond(i, i + 1)
    elif fam == "F":
        bond(0, 1)
        bond(2, 3)
        a[1][2] = -1
        a[2][1] = -2  # double bond, third root short
    else:  # G
        a[0][1] = -3
        a[1][0] = -1
    return tuple(tuple(row) for row in a)


@dataclass(frozen=True)
class Root:
    """A root with the coweight coordinates of its coroot and its height."""

    coords: tuple[int, ...]
    coroot: tuple[int, ...]
    height: int


def reflection_matrix(cartan: tuple[tuple[int, ...], ...], i: int) -> tuple[tuple[int, ...], ...]:
    """Matrix of the i-th simple reflection acting on coweight coordinates."""
    rank = len(cartan)
    m = [[1 if j == k else 0 for k in range(rank)] for j in range(rank)]
    for j in range(rank):
        m[j][i] -= cartan[i][j]
    return tuple(tuple(row) for row in m)


def _generate_root_orbit(cartan):
    """Close the simple (root, coroot) pairs under all simple reflections.

    Roots are tracked by simple-root coefficients, coroots by simple-coroot
    coefficients; both transform by integer reflection formulas.
    """
    rank = len(cartan)
    seeds = []
    for i in range(rank):
        e = tuple(1 if j == i else 0 for j in range(rank))
        seeds.append((e, e))
    seen = set(seeds)
    stack = list(seeds)
    while stack:
        c, d = stack.pop()
        for i in range(rank):
            pair_root = sum(cartan[i][j] * c[j] for j in range(rank))
            c2 = list(c)
            c2[i] -= pair_root
            pair_coroot = sum(d[j] * cartan[j][i] for j in range(rank))
            d2 = list(d)
            d2[i] -= pair_coroot
            item = (tuple(c2), tuple(d2))
            if item not in seen:
                seen.add(item)
                stack.append(item)
    return seen


class RootSystem:
    """Root data for one irreducible type, realized in coweight coordinates.

    Everything downstream relies on exact arithmetic: roots evaluate on
    apartment points by integer dot products, coroots are integer vectors,
    and the W-invariant Gram matrix is the integer matrix
    sum_{alpha > 0} coords(alpha) coords(alpha)^T.  Instances are immutable
    after construction and safe for concurrent readers.
    """

    def __init__(self, cartan_type: CartanType):
        self.cartan_type = cartan_type
        self.rank = cartan_type.rank
        self.name = str(cartan_type)
        cartan = _cartan_matrix(cartan_type)
        self.cartan_matrix = cartan
        rank = self.rank

        pairs = _generate_root_orbit(cartan)
        coroot_of = {}
        for c, d in pairs:
            assert coroot_of.setdefault(c, d) == d, "coroot not well defined"
        positive = []
        for c, d in pairs:
            if all(x >= 0 for x in c):
                cw = tuple(sum(d[i] * cartan[i][j] for i in range(rank)) for j in range(rank))
                positive.append(Root(c, cw, sum(c)))
        assert len(pairs) == 2 * len(positive)
        positive.sort(key=lambda r: (r.height, r.coords))
        self.positive_roots = tuple(positive)
        self._positive_coords = frozenset(r.coords for r in positive)

        by_coords = {r.coords: r for r in positive}
        self.simple_roots = tuple(
            by_coords[tuple(1 if j == i else 0 for j in range(rank))] for i in range(rank)
        )
        self.simple_coroots = tuple(tuple(row) for row in cartan)

        heights = Counter(r.height for r in positive)
        exps = [sum(1 for cnt in heights.values() if cnt >= i) for i in range(1, rank + 1)]
        self.exponents = tuple(sorted(exps))
        self.weyl_order = prod(m + 1 for m in self.exponents)

        sums = [0] * rank
        for r in positive:
            for j, c in enumerate(r.coords):
                sums[j] += c
        self.two_rho = tuple(sums)
        self.rho = tuple(Fraction(s, 2) for s in sums)

        self.highest_root = positive[-1]
        assert heights[self.highest_root.height] == 1, "highest root not unique"
        self.marks = self.highest_root.coords

        gram = [[0] * rank for _ in range(rank)]
        for r in positive:
            for j in range(rank):
                cj = r.coords[j]
                if cj:
                    row = gram[j]
                    for k in range(rank):
                        row[k] += cj * r.coords[k]
        self.gram = tuple(tuple(row) for row in gram)

        vertices = [tuple(Fraction(0) for _ in range(rank))]
        for i in range(rank):
            vertices.append(
                tuple(Fraction(1, self.marks[i]) if j == i else Fraction(0) for j in range(rank))
            )
        self.alcove_vertices = tuple(vertices)
        self.alcove_diameter_sq = max(
            self.norm_sq(tuple(u - v for u, v in zip(a, b)))
            for a, b in combinations(vertices, 2)
        )

    def norm_sq(self, vec) -> Fraction:
        """Quadratic form v^T G v of the W-invariant inner product, exact."""
        total = Fraction(0)
        for j, vj in enumerate(vec):
            if vj:
                row = self.gram[j]
                total += vj * sum(row[k] * vec[k] for k in range(self.rank))
        return Fraction(total)

    def is_root(self, coords: tuple[int, ...]) -> bool:
        return coords in self._positive_coords or tuple(-c for c in coords) in self._positive_coords

    def __repr__(self) -> str:
        return f"RootSystem({self.name})"


def build_root_system(ctype: CartanType | str) -> RootSystem:
    """Construct the root system for a Cartan type or a type string like "C2"."""
    if isinstance(ctype, str):
        ctype = CartanType.parse(ctype)
    return RootSystem(ctype)


def enumerate_finite_weyl(rs: RootSystem, *, budget: int = DEFAULT_WEYL_BUDGET) -> dict[int, int]:
    """Length census of the finite Weyl group by BFS over simple reflections."""
    if rs.weyl_order > budget:
        raise BudgetExceeded(
            f"finite Weyl group of {rs.name} has order {rs.weyl_order}, over budget {budget}",
            size=rs.weyl_order,
        )
    rank = rs.rank
    gens = [reflection_matrix(rs.cartan_matrix, i) for i in range(rank)]
    ident = tuple(tuple(1 if j == k else 0 for k in range(rank)) for j in range(rank))
    seen = {ident}
    census = {0: 1}
    frontier = [ident]
    depth = 0
    while frontier:
        depth += 1
        nxt = []
        for m in frontier:
            for g in gens:
                w = tuple(
                    tuple(sum(m[j][i] * g[i][k] for i in range(rank)) for k in range(rank))
                    for j in range(rank)
                )
                if w not in seen:
                    seen.add(w)
                    nxt.append(w)
        if nxt:
            census[depth] = len(nxt)
        frontier = nxt
    return census


def weyl_poincare_polynomial(rs: RootSystem) -> IntPolynomial:
    """Length generating polynomial prod_i (1 + q + ... + q^{m_i})."""
    poly = IntPolynomial((1,))
    for m in rs.exponents:
        poly = poly * IntPolynomial.geometric(m)
    return poly
