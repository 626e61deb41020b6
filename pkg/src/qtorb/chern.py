"""Vertex signs, the top Chern number and the total Chern class.

At a vertex ``v`` with facets ``i_1 < ... < i_n`` let ``e_k`` be the edge
vector from ``v`` to the neighbour off facet ``i_k``.  The sign of ``v`` is

    σ(v) = orientation * sign det[e_1 .. e_n] * det[λ_{i_1} .. λ_{i_n}]

Permuting the facets changes both determinants by the same sign, so σ(v)
does not depend on the order; for an ordering that makes the edge frame
positive it is just ``det Λ_(v)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import CohomologyClass, CohomologyRing
from .model import CombinatorialModel
from .polytope import PolytopeError, Realization


class RealizationError(PolytopeError):
    pass


@dataclass(frozen=True)
class VertexSign:
    vertex: int
    facets: tuple
    edge_frame: tuple
    frame_sign: int
    lambda_det: int
    sigma: int


def _fraction_det(rows) -> Fraction:
    n = len(rows)
    m = [list(map(Fraction, r)) for r in rows]
    det = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c]), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            det = -det
        det *= m[c][c]
        for i in range(c + 1, n):
            f = m[i][c] / m[c][c]
            m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    return det


def vertex_signs(model: CombinatorialModel, R: Realization, orientation: int = 1) -> list[VertexSign]:
    if orientation not in (1, -1):
        raise ValueError("orientation must be +1 or -1")
    P = model.polytope
    R.check(P)
    out = []
    for v, fs in enumerate(P.vertex_facets):
        facets = tuple(sorted(fs))
        origin = R.coordinates[v]
        frame = tuple(
            tuple(a - b for a, b in zip(R.coordinates[P.neighbor(v, i)], origin))
            for i in facets
        )
        # columns are the edge vectors; det of the transpose is the same
        d = _fraction_det(frame)
        if d == 0:
            raise RealizationError(f"edge frame at vertex {v} (facets {list(facets)}) is degenerate")
        frame_sign = 1 if d > 0 else -1
        ldet = model.face_matrix(facets).det()
        out.append(VertexSign(v, facets, frame, frame_sign, ldet, orientation * frame_sign * ldet))
    return out


def top_chern_number(model: CombinatorialModel, R: Realization, orientation: int = 1) -> Fraction:
    return sum((Fraction(1, s.sigma) for s in vertex_signs(model, R, orientation)), Fraction(0))


def almost_complex_necessary(model: CombinatorialModel, R: Realization,
                             orientation: int = 1) -> tuple[bool, int | None]:
    """Whether all σ(v) > 0 for one of the two orientations, and which one."""
    sig = [s.sigma for s in vertex_signs(model, R, orientation)]
    if all(s > 0 for s in sig):
        return True, orientation
    if all(s < 0 for s in sig):
        return True, -orientation
    return False, None


def total_chern_class(model: CombinatorialModel, ring: CohomologyRing) -> list[CohomologyClass]:
    """``[c_0, c_1, ..., c_n]``; ``c_j`` is the ``j``-th elementary symmetric
    polynomial in ``w_1..w_m`` reduced into the degree-``j`` basis."""
    P = model.polytope
    m = P.facet_count
    out = [ring.one()]
    for j in range(1, model.rank + 1):
        c = ring.zero(j)
        for S in itertools.combinations(range(m), j):
            if not P.is_face(S):
                continue
            mono = tuple(int(i in S) for i in range(m))
            c = c + ring.reduce(mono)
        out.append(c)
    return out
