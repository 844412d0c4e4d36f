"""Rank-one building simulator: regular trees under residue and ramification growth.

Balls are generated breadth first in the extension edge metric.  Vertex roles:

  F       vertex of the original (q+1)-regular base tree
  SUB     subdivision vertex splitting an original edge into e segments
  BRANCH  vertex of a branch attached to a subdivision vertex; branches keep
          the intermediate (totally ramified) tree (q+1)-regular
  UNRAM   vertex added by the residue stage, which raises every degree to
          q^f + 1

Original vertices end up at mutual distance e times their base distance, so
the marked subtree realizes the metric embedding exactly.  Generation is
truncated at the requested radius and vertex identifiers are deterministic
path strings, so runs are reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import BudgetExceeded, DomainError

DEFAULT_VERTEX_BUDGET = 10_000_000

ROLE_F, ROLE_SUB, ROLE_BRANCH, ROLE_UNRAM = range(4)
ROLE_NAMES = ("F", "SUB", "BRANCH", "UNRAM")


@dataclass(frozen=True)
class ExtensionParams:
    """Residue cardinality q with ramification degree e and residue degree f."""

    q: int
    e: int
    f: int

    def __post_init__(self):
        if self.q < 2:
            raise DomainError("residue cardinality q must be >= 2")
        if self.e < 1 or self.f < 1:
            raise DomainError("e and f must be positive integers")

    @property
    def n(self) -> int:
        return self.e * self.f

    @property
    def q_ext(self) -> int:
        """Residue cardinality of the extension field, q^f."""
        return self.q**self.f


def alpha(t: int, radius: int) -> int:
    """Sphere count (t+1) t^(R-1) in a (t+1)-regular tree, radius >= 1."""
    if t < 2:
        raise DomainError("tree parameter must be >= 2")
    if radius <= 0:
        raise DomainError("sphere formula needs radius >= 1")
    return (t + 1) * t ** (radius - 1)


def ball_size(t: int, radius: int) -> int:
    """Closed-ball vertex count 1 + (t+1)(t^R - 1)/(t-1) in a (t+1)-regular tree."""
    if t < 2:
        raise DomainError("tree parameter must be >= 2")
    if radius < 0:
        raise DomainError("radius must be >= 0")
    return 1 + (t + 1) * (t**radius - 1) // (t - 1)


def tree_entropy_closed_form(t: int) -> float:
    """Volume growth entropy log t of a (t+1)-regular tree (natural log)."""
    if t < 2:
        raise DomainError("tree parameter must be >= 2")
    return math.log(t)


@dataclass(frozen=True)
class RoleCounts:
    """Per-depth vertex counts by role, from the exact generation recurrences."""

    f: tuple[int, ...]
    sub: tuple[int, ...]
    branch: tuple[int, ...]
    unram: tuple[int, ...]

    def sphere_total(self, depth: int) -> int:
        return self.f[depth] + self.sub[depth] + self.branch[depth] + self.unram[depth]

    def ball_f(self, radius: int) -> int:
        return sum(self.f[: radius + 1])

    def ball_eprime(self, radius: int) -> int:
        return sum(self.f[: radius + 1]) + sum(self.sub[: radius + 1]) + sum(
            self.branch[: radius + 1]
        )

    def ball_total(self, radius: int) -> int:
        return self.ball_eprime(radius) + sum(self.unram[: radius + 1])


def predicted_census(params: ExtensionParams, radius: int) -> RoleCounts:
    """Count vertices per depth and role without generating the ball.

    The recurrences mirror the generator: every base vertex starts q (q+1 at
    the basepoint) subdivision chains of e-1 SUB vertices ending in a base
    vertex; each SUB vertex roots q-1 branches; every intermediate-tree
    vertex receives q^f - q UNRAM children, and UNRAM vertices have q^f
    children of their own.
    """
    if radius < 0:
        raise DomainError("radius must be >= 0")
    q, e = params.q, params.e
    new_un = params.q_ext - q
    fc = [0] * (radius + 1)
    sub_pos = [[0] * (radius + 1) for _ in range(e)]  # index by chain position 1..e-1
    br = [0] * (radius + 1)
    un = [0] * (radius + 1)
    fc[0] = 1
    for d in range(radius):
        out_f = fc[d] * (q + 1 if d == 0 else q)
        if e == 1:
            fc[d + 1] += out_f
        else:
            sub_pos[1][d + 1] += out_f
            for j in range(1, e - 1):
                sub_pos[j + 1][d + 1] += sub_pos[j][d]
            fc[d + 1] += sub_pos[e - 1][d]
        subtot = sum(sub_pos[j][d] for j in range(1, e))
        br[d + 1] += (q - 1) * subtot + q * br[d]
        un[d + 1] += new_un * (fc[d] + subtot + br[d]) + params.q_ext * un[d]
    sub_by_depth = tuple(sum(sub_pos[j][d] for j in range(1, e)) for d in range(radius + 1))
    return RoleCounts(tuple(fc), sub_by_depth, tuple(br), tuple(un))


class TreeBall:
    """Materialized ball of the extension tree around a base-field vertex.

    Parallel arrays indexed by vertex id (creation order): parent, depth,
    role, chain position for SUB vertices, the nearest base-field ancestor,
    child count, and the child slot within the parent.  With full=False only
    the marked subtree (F and SUB vertices) is generated, which is what the
    intersection census needs; totals for the pruned parts come from
    predicted_census.
    """

    def __init__(
        self,
        params: ExtensionParams,
        radius: int,
        *,
        full: bool = True,
        budget: int = DEFAULT_VERTEX_BUDGET,
    ):
        if radius < 0:
            raise DomainError("radius must be >= 0")
        self.params = params
        self.radius = radius
        self.full = full
        predicted = predicted_census(params, radius)
        size = predicted.ball_total(radius) if full else predicted.ball_f(radius) + sum(
            predicted.sub[: radius + 1]
        )
        if size > budget:
            raise BudgetExceeded(
                f"ball of radius {radius} for (q={params.q}, e={params.e}, f={params.f}) "
                f"has {size} vertices, over budget {budget}",
                size=size,
            )
        self._generate()
        assert tuple(self._counts[ROLE_F]) == predicted.f
        assert tuple(self._counts[ROLE_SUB]) == predicted.sub

    def _generate(self):
        params = self.params
        q, e, f, radius = params.q, params.e, params.f, self.radius
        new_un = params.q_ext - q if f > 1 else 0
        parent = [-1]
        depth = [0]
        role = [ROLE_F]
        chain_pos = [0]
        f_parent = [-1]
        child_count = [0]
        child_slot = [0]
        counts = [[0] * (radius + 1) for _ in range(4)]
        counts[ROLE_F][0] = 1

        def add(par: int, rl: int, pos: int, fpar: int) -> int:
            vid = len(parent)
            parent.append(par)
            depth.append(depth[par] + 1)
            role.append(rl)
            chain_pos.append(pos)
            f_parent.append(fpar)
            child_slot.append(child_count[par])
            child_count[par] += 1
            child_count.append(0)
            counts[rl][depth[vid]] += 1
            return vid

        cursor = 0
        while cursor < len(parent):
            v = cursor
            cursor += 1
            if depth[v] >= radius:
                continue
            rl = role[v]
            if rl == ROLE_F:
                directions = q + 1 if v == 0 else q
                for _ in range(directions):
                    if e == 1:
                        add(v, ROLE_F, 0, v)
                    else:
                        add(v, ROLE_SUB, 1, v)
                if self.full:
                    for _ in range(new_un):
                        add(v, ROLE_UNRAM, 0, -1)
            elif rl == ROLE_SUB:
                if chain_pos[v] == e - 1:
                    add(v, ROLE_F, 0, f_parent[v])
                else:
                    add(v, ROLE_SUB, chain_pos[v] + 1, f_parent[v])
                if self.full:
                    for _ in range(q - 1):
                        add(v, ROLE_BRANCH, 0, -1)
                    for _ in range(new_un):
                        add(v, ROLE_UNRAM, 0, -1)
            elif rl == ROLE_BRANCH:
                for _ in range(q):
                    add(v, ROLE_BRANCH, 0, -1)
                for _ in range(new_un):
                    add(v, ROLE_UNRAM, 0, -1)
            else:  # ROLE_UNRAM
                for _ in range(params.q_ext):
                    add(v, ROLE_UNRAM, 0, -1)

        self.parent = parent
        self.depth = depth
        self.role = role
        self.chain_pos = chain_pos
        self.f_parent = f_parent
        self.child_count = child_count
        self.child_slot = child_slot
        self._counts = counts

    @property
    def vertex_count(self) -> int:
        return len(self.parent)

    def is_marked_f(self, v: int) -> bool:
        return self.role[v] == ROLE_F

    def is_marked_eprime(self, v: int) -> bool:
        return self.role[v] != ROLE_UNRAM

    def degree(self, v: int) -> int:
        return self.child_count[v] + (0 if self.parent[v] < 0 else 1)

    def interior_vertices(self):
        """Vertices all of whose neighbors were generated (depth < radius)."""
        return (v for v in range(self.vertex_count) if self.depth[v] < self.radius)

    def role_counts(self) -> RoleCounts:
        return RoleCounts(*(tuple(c) for c in self._counts))

    def path_id(self, v: int) -> str:
        parts = []
        while self.parent[v] >= 0:
            parts.append(str(self.child_slot[v]))
            v = self.parent[v]
        return "o" + "".join("/" + p for p in reversed(parts))

    def f_depth(self, v: int) -> int:
        if self.role[v] != ROLE_F:
            raise DomainError("f_depth is defined for marked base vertices only")
        return self.depth[v] // self.params.e

    def distance(self, u: int, v: int) -> int:
        """Path metric in the generated tree (extension edge units)."""
        du, dv = self.depth[u], self.depth[v]
        dist = 0
        while du > dv:
            u = self.parent[u]
            du -= 1
            dist += 1
        while dv > du:
            v = self.parent[v]
            dv -= 1
            dist += 1
        while u != v:
            u = self.parent[u]
            v = self.parent[v]
            dist += 2
        return dist

    def f_distance(self, u: int, v: int) -> int:
        """Path metric between marked base vertices in base edge units."""
        if self.role[u] != ROLE_F or self.role[v] != ROLE_F:
            raise DomainError("f_distance needs marked base vertices")
        du, dv = self.f_depth(u), self.f_depth(v)
        dist = 0
        while du > dv:
            u = self.f_parent[u]
            du -= 1
            dist += 1
        while dv > du:
            v = self.f_parent[v]
            dv -= 1
            dist += 1
        while u != v:
            u = self.f_parent[u]
            v = self.f_parent[v]
            dist += 2
        return dist

    def marked_f_vertices(self):
        return [v for v in range(self.vertex_count) if self.role[v] == ROLE_F]


@dataclass(frozen=True)
class IntersectionCensus:
    """Counts inside the radius-R extension ball around the basepoint."""

    q: int
    e: int
    f: int
    radius: int
    in_f: int
    in_f_sphere: int
    in_eprime: int
    total: int

    def to_json_dict(self) -> dict:
        return {
            "q": self.q,
            "e": self.e,
            "f": self.f,
            "R": self.radius,
            "in_F": self.in_f,
            "in_F_sphere": self.in_f_sphere,
            "in_Eprime": self.in_eprime,
            "total": self.total,
        }


def census_table(
    params: ExtensionParams, radius: int, *, budget: int = DEFAULT_VERTEX_BUDGET
) -> tuple[IntersectionCensus, ...]:
    """Censuses for every radius 0..radius from one marked-subtree BFS.

    Base-field counts come from an actual breadth-first generation of the
    marked subtree; intermediate and total counts use the exact role
    recurrences, which stay cheap even when the full ball is astronomically
    large.
    """
    marked = TreeBall(params, radius, full=False, budget=budget)
    f_by_depth = marked.role_counts().f
    predicted = predicted_census(params, radius)
    records = []
    in_f = 0
    in_eprime = 0
    total = 0
    for r in range(radius + 1):
        in_f += f_by_depth[r]
        in_eprime += predicted.f[r] + predicted.sub[r] + predicted.branch[r]
        total += predicted.sphere_total(r)
        records.append(
            IntersectionCensus(
                params.q, params.e, params.f, r, in_f, f_by_depth[r], in_eprime, total
            )
        )
    return tuple(records)


def census_intersection(
    params: ExtensionParams, radius: int, *, budget: int = DEFAULT_VERTEX_BUDGET
) -> IntersectionCensus:
    """BFS census of base-field vertices within the radius-R extension ball."""
    return census_table(params, radius, budget=budget)[radius]


def build_extension_tree(
    params: ExtensionParams, radius: int, *, budget: int = DEFAULT_VERTEX_BUDGET
) -> TreeBall:
    """Materialize the full radius-R ball of the extension tree."""
    return TreeBall(params, radius, full=True, budget=budget)


_DOT_STYLE = {
    ROLE_F: 'shape=circle, style=filled, fillcolor=black, label=""',
    ROLE_SUB: 'shape=circle, label=""',
    ROLE_BRANCH: 'shape=circle, label=""',
    ROLE_UNRAM: 'shape=circle, style=dashed, label=""',
}


def dot_text(tree: TreeBall) -> str:
    """Graphviz source for a small ball (radius <= 6)."""
    if tree.radius > 6:
        raise DomainError("DOT export is limited to balls of radius <= 6")
    lines = ["graph tree_ball {", "  node [width=0.15, fixedsize=true];"]
    for v in range(tree.vertex_count):
        lines.append(f'  "{tree.path_id(v)}" [{_DOT_STYLE[tree.role[v]]}];')
    for v in range(1, tree.vertex_count):
        lines.append(f'  "{tree.path_id(tree.parent[v])}" -- "{tree.path_id(v)}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
