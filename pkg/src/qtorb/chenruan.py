"""Twisted sectors and Chen-Ruan Betti tables.

A nontrivial element ``g`` of a local group ``G_F`` is written as
``a = sum q_i λ_i`` over the vectors of ``F`` with every ``q_i`` in
``[0, 1)``.  The element lives in the sector of the face spanned by the
facets with ``q_i > 0``; it is emitted once, from that face, and shifts the
Betti numbers of the characteristic subspace over that face by
``2 * sum q_i``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .cohomology import betti_numbers
from .model import CombinatorialModel, characteristic_submodel
from .polytope import Face
from .zlattice import solve_rational


@dataclass(frozen=True)
class Sector:
    face: Face
    rep: tuple
    q: tuple

    @property
    def iota(self) -> Fraction:
        return sum(self.q, Fraction(0))

    @property
    def shift(self) -> Fraction:
        return 2 * self.iota


def box_coordinates(model: CombinatorialModel, facets, a) -> tuple:
    """Fractional parts of the coordinates of ``a`` in the basis ``λ_i, i ∈ facets``."""
    cols = model.face_matrix(facets).columns()
    q = solve_rational(cols, a)
    return tuple(x - math.floor(x) for x in q)


def box_elements(model: CombinatorialModel) -> list[Sector]:
    out = []
    for F in model.polytope.faces():
        if F.codim == 0:
            continue
        data = model.local_group(F)
        if data.order == 1:
            continue
        facets = sorted(F.facet_set)
        cols = model.face_matrix(facets).columns()
        for a in data.group.coset_reps[1:]:
            q = box_coordinates(model, facets, a)
            if not all(q):
                continue  # belongs to the sector of a larger face
            rep = tuple(sum((qi * c[r] for qi, c in zip(q, cols)), Fraction(0))
                        for r in range(model.rank))
            rep = tuple(int(x) for x in rep)
            out.append(Sector(F, rep, q))
    out.sort(key=lambda s: (s.face.key(), s.q))
    return out


def sector_betti(model: CombinatorialModel, face: Face) -> tuple:
    """Even Betti numbers of the characteristic subspace over ``face``."""
    if face.codim == model.rank:
        return (1,)
    return betti_numbers(characteristic_submodel(model, face))


@dataclass(frozen=True)
class ChenRuanTable:
    entries: dict  # Fraction degree -> dimension

    @property
    def total(self) -> int:
        return sum(self.entries.values())

    def __getitem__(self, degree) -> int:
        return self.entries.get(Fraction(degree), 0)


def chen_ruan_betti(model: CombinatorialModel, sectors: list[Sector] | None = None) -> ChenRuanTable:
    table: dict = {}

    def add(deg, b):
        if b:
            table[deg] = table.get(deg, 0) + b

    for k, b in enumerate(betti_numbers(model)):
        add(Fraction(2 * k), b)
    if sectors is None:
        sectors = box_elements(model)
    for s in sectors:
        for k, b in enumerate(sector_betti(model, s.face)):
            add(2 * k + s.shift, b)
    return ChenRuanTable(dict(sorted(table.items())))
