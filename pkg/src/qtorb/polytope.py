"""Combinatorial simple polytopes given by vertex-facet incidence.

A vertex is identified with the set of ``n`` facets meeting there, a face
with the set of facets containing it.  Two vertices span an edge when their
facet sets share ``n - 1`` elements.  Geometric realizability is not tested;
only the necessary combinatorial conditions are.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from math import comb
from typing import Sequence


class PolytopeError(ValueError):
    pass


class GenericityError(PolytopeError):
    """The linear functional does not separate the vertices."""


@dataclass(frozen=True)
class Face:
    facet_set: frozenset
    vertex_set: frozenset

    @property
    def codim(self) -> int:
        return len(self.facet_set)

    def key(self) -> tuple:
        return (self.codim, tuple(sorted(self.facet_set)))

    def __repr__(self):
        return f"Face({sorted(self.facet_set)})"


class SimplePolytope:
    """Use :func:`build_polytope` to construct; the initializer trusts its input."""

    def __init__(self, dim: int, facet_count: int, vertex_facets: Sequence[frozenset]):
        self.dim = dim
        self.facet_count = facet_count
        self.vertex_facets = tuple(vertex_facets)

    def __repr__(self):
        return (f"SimplePolytope(dim={self.dim}, facets={self.facet_count}, "
                f"vertices={len(self.vertex_facets)})")

    def __eq__(self, other):
        return (isinstance(other, SimplePolytope) and self.dim == other.dim
                and self.facet_count == other.facet_count
                and self.vertex_facets == other.vertex_facets)

    def __hash__(self):
        return hash((self.dim, self.facet_count, self.vertex_facets))

    @property
    def vertex_count(self) -> int:
        return len(self.vertex_facets)

    @cached_property
    def _edge_partner(self) -> dict:
        """Map ``(vertex, dropped facet)`` to the neighbour across that edge."""
        by_ridge: dict[frozenset, list[int]] = {}
        for v, fs in enumerate(self.vertex_facets):
            for i in fs:
                by_ridge.setdefault(fs - {i}, []).append(v)
        out = {}
        for v, fs in enumerate(self.vertex_facets):
            for i in fs:
                a, b = by_ridge[fs - {i}]
                out[v, i] = b if a == v else a
        return out

    def neighbor(self, v: int, facet: int) -> int:
        """Vertex joined to ``v`` by the edge leaving facet ``facet``.

        That edge lies on every facet of ``v`` except ``facet``.
        """
        return self._edge_partner[v, facet]

    @cached_property
    def adjacency(self) -> tuple:
        return tuple(
            tuple(sorted(self._edge_partner[v, i] for i in fs))
            for v, fs in enumerate(self.vertex_facets)
        )

    @cached_property
    def edges(self) -> tuple:
        return tuple(sorted({(min(v, w), max(v, w))
                             for v, nbrs in enumerate(self.adjacency) for w in nbrs}))

    @cached_property
    def _face_index(self) -> dict:
        faces: dict[frozenset, set] = {}
        for v, fs in enumerate(self.vertex_facets):
            for k in range(len(fs) + 1):
                for sub in itertools.combinations(sorted(fs), k):
                    faces.setdefault(frozenset(sub), set()).add(v)
        return {s: Face(s, frozenset(vs)) for s, vs in faces.items()}

    def faces(self) -> list[Face]:
        return sorted(self._face_index.values(), key=Face.key)

    def is_face(self, facets) -> bool:
        return frozenset(facets) in self._face_index

    def face(self, facets) -> Face:
        try:
            return self._face_index[frozenset(facets)]
        except KeyError:
            raise PolytopeError(f"facets {sorted(facets)} do not meet in a face") from None

    def vertex_face(self, v: int) -> Face:
        return self._face_index[self.vertex_facets[v]]

    def f_vector(self) -> tuple:
        """Face counts by codimension ``0..n`` (so entry ``n`` counts vertices)."""
        counts = [0] * (self.dim + 1)
        for s in self._face_index:
            counts[len(s)] += 1
        return tuple(counts)

    def h_vector(self) -> tuple:
        return h_vector(self)


def build_polytope(dim: int, facet_count: int, vertex_facets) -> SimplePolytope:
    """Validate vertex-facet incidence data and build a :class:`SimplePolytope`."""
    if dim < 1:
        raise PolytopeError("dimension must be at least 1")
    verts = []
    seen = {}
    for v, fs in enumerate(vertex_facets):
        fs_list = list(fs)
        s = frozenset(fs_list)
        if len(fs_list) != dim or len(s) != dim:
            raise PolytopeError(
                f"vertex {v} has facets {fs_list}; a simple {dim}-polytope needs exactly "
                f"{dim} distinct facets at each vertex"
            )
        bad = [i for i in s if not (isinstance(i, int) and 0 <= i < facet_count)]
        if bad:
            raise PolytopeError(f"vertex {v} uses facet indices {bad} outside [0, {facet_count})")
        if s in seen:
            raise PolytopeError(f"vertices {seen[s]} and {v} have the same facets {sorted(s)}")
        seen[s] = v
        verts.append(s)
    if not verts:
        raise PolytopeError("polytope has no vertices")

    used = set().union(*verts)
    unused = sorted(set(range(facet_count)) - used)
    if unused:
        raise PolytopeError(f"facets {unused} contain no vertex")

    ridges: dict[frozenset, list[int]] = {}
    for v, s in enumerate(verts):
        for i in s:
            ridges.setdefault(s - {i}, []).append(v)
    for sub, vs in sorted(ridges.items(), key=lambda kv: sorted(kv[0])):
        if len(vs) != 2:
            raise PolytopeError(
                f"facet subset {sorted(sub)} is shared by {len(vs)} vertices {vs}; "
                f"an edge needs exactly 2"
            )

    P = SimplePolytope(dim, facet_count, verts)
    reached = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in P.adjacency[v]:
            if w not in reached:
                reached.add(w)
                stack.append(w)
    if len(reached) != len(verts):
        missing = sorted(set(range(len(verts))) - reached)
        raise PolytopeError(f"1-skeleton is disconnected; vertices {missing} unreachable from 0")
    return P


def enumerate_faces(P: SimplePolytope) -> list[Face]:
    """All faces ordered by codimension, then by sorted facet tuple."""
    return P.faces()


def h_vector(P: SimplePolytope) -> tuple:
    """Coefficients ``h_i`` of ``sum_i f_{i-1} (t-1)^{n-i} = sum_i h_i t^{n-i}``."""
    n = P.dim
    f = P.f_vector()  # f[i] = number of codim-i faces
    h = [0] * (n + 1)
    for i in range(n + 1):
        # expand f[i] * (t - 1)^(n - i); coefficient of t^(n-k) goes to h[k]
        e = n - i
        for j in range(e + 1):
            coeff = comb(e, j) * (-1) ** (e - j)
            h[n - j] += f[i] * coeff
    return tuple(h)


# ---------------------------------------------------------------------------
# geometric realizations


def _to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        raise TypeError("floating point coordinates are not accepted; use 'p/q' strings")
    return Fraction(x)


@dataclass(frozen=True)
class Realization:
    coordinates: tuple
    functional: tuple | None = None

    @classmethod
    def of(cls, coordinates, functional=None) -> "Realization":
        coords = tuple(tuple(_to_fraction(x) for x in p) for p in coordinates)
        phi = None if functional is None else tuple(_to_fraction(x) for x in functional)
        return cls(coords, phi)

    def check(self, P: SimplePolytope):
        if self.coordinates is None:
            raise PolytopeError("realization has no vertex coordinates")
        if len(self.coordinates) != P.vertex_count:
            raise PolytopeError(
                f"realization has {len(self.coordinates)} points for {P.vertex_count} vertices"
            )
        for v, p in enumerate(self.coordinates):
            if len(p) != P.dim:
                raise PolytopeError(f"vertex {v} coordinate has length {len(p)}, expected {P.dim}")
        if self.functional is not None and len(self.functional) != P.dim:
            raise PolytopeError("functional has the wrong length")

    def with_functional(self, functional) -> "Realization":
        return Realization(self.coordinates, tuple(_to_fraction(x) for x in functional))


def index_vector(P: SimplePolytope, R: Realization) -> list[tuple[int, int]]:
    """``(vertex, index)`` pairs; the index counts neighbours with smaller φ-value."""
    R.check(P)
    if R.functional is None:
        raise GenericityError("no linear functional supplied")
    values = [sum(a * b for a, b in zip(R.functional, p)) for p in R.coordinates]
    first = {}
    for v, x in enumerate(values):
        if x in first:
            raise GenericityError(
                f"functional takes the value {x} at both vertex {first[x]} and vertex {v}"
            )
        first[x] = v
    return [(v, sum(1 for u in P.adjacency[v] if values[u] < values[v]))
            for v in range(P.vertex_count)]


# ---------------------------------------------------------------------------
# stock polytopes


def simplex(n: int) -> SimplePolytope:
    """The n-simplex; vertex ``j`` misses facet ``j``."""
    verts = [frozenset(set(range(n + 1)) - {j}) for j in range(n + 1)]
    # order as lexicographic facet tuples, e.g. triangle {0,1},{0,2},{1,2}
    verts.sort(key=lambda s: sorted(s))
    return build_polytope(n, n + 1, verts)


def polygon(k: int) -> SimplePolytope:
    """Convex ``k``-gon; vertex ``j`` lies on facets ``j`` and ``j+1 mod k``."""
    if k < 3:
        raise PolytopeError("a polygon needs at least 3 sides")
    return build_polytope(2, k, [frozenset({j, (j + 1) % k}) for j in range(k)])


def product(P: SimplePolytope, Q: SimplePolytope) -> SimplePolytope:
    """Cartesian product; facets of ``Q`` are shifted by ``P.facet_count``."""
    off = P.facet_count
    verts = [a | frozenset(i + off for i in b) for a in P.vertex_facets for b in Q.vertex_facets]
    return build_polytope(P.dim + Q.dim, P.facet_count + Q.facet_count, verts)


def cube(n: int) -> SimplePolytope:
    P = segment()
    for _ in range(n - 1):
        P = product(P, segment())
    return P


def segment() -> SimplePolytope:
    return build_polytope(1, 2, [frozenset({0}), frozenset({1})])


def polygon_realization(k: int, functional=None) -> Realization:
    """Points ``(j, j^2)`` on a parabola, which are in convex position in order.

    Matches :func:`polygon`: facet ``j+1`` is the edge from point ``j`` to ``j+1``.
    """
    return Realization.of([(j, j * j) for j in range(k)], functional)


def simplex_realization(n: int, functional=None) -> Realization:
    """Standard simplex ``conv(0, e_1, ..., e_n)`` matching :func:`simplex`.

    Facet ``i < n`` is ``x_{i+1} = 0`` and facet ``n`` is ``sum x = 1``; a
    vertex missing facet ``j < n`` is ``e_{j+1}``, the one missing facet ``n``
    is the origin.
    """
    P = simplex(n)
    pts = []
    for fs in P.vertex_facets:
        (missing,) = set(range(n + 1)) - fs
        pts.append(tuple(int(missing == i) for i in range(n)) if missing < n else (0,) * n)
    return Realization.of(pts, functional)


def segment_realization(functional=None) -> Realization:
    return Realization.of([(0,), (1,)], functional)


def product_realization(R: Realization, S: Realization, functional=None) -> Realization:
    return Realization.of([p + q for p in R.coordinates for q in S.coordinates], functional)


def cube_realization(n: int, functional=None) -> Realization:
    R = segment_realization()
    for _ in range(n - 1):
        R = product_realization(R, segment_realization())
    return Realization(R.coordinates, None if functional is None else
                       tuple(_to_fraction(x) for x in functional))
