"""Combinatorial models of quasitoric orbifolds.

A model is a simple polytope with an integer vector ``λ_i`` per facet (the
columns of the characteristic matrix), such that the vectors at every vertex
are linearly independent.  Everything the orbifold structure depends on is
read off from lattice data:

* the local group of a face is ``N*(F) / N(F)``, where ``N(F)`` is spanned by
  the face's vectors and ``N*(F)`` is its saturation;
* the orbifold fundamental group is ``Z^n / N̂`` with ``N̂`` spanned by all
  vectors, and the universal cover re-expresses the vectors in a basis of
  ``N̂``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .polytope import Face, PolytopeError, SimplePolytope, build_polytope
from .zlattice import (
    FiniteAbelianGroup,
    IntegerMatrix,
    LatticeError,
    content,
    coordinates,
    inverse_integer,
    kernel_basis,
    lattice_basis,
    quotient_group,
    saturation,
    solve_rational,
)


class ModelError(ValueError):
    pass


@dataclass(frozen=True)
class LocalGroupData:
    face: Face
    group: FiniteAbelianGroup
    nf_basis: IntegerMatrix
    sat_basis: IntegerMatrix

    @property
    def order(self) -> int:
        return self.group.order


class CombinatorialModel:
    def __init__(self, polytope: SimplePolytope, rank: int, char_matrix: IntegerMatrix):
        self.polytope = polytope
        self.rank = rank
        self.char_matrix = char_matrix

    def __repr__(self):
        return f"CombinatorialModel({self.polytope!r}, lambda={self.vectors})"

    def __eq__(self, other):
        return (isinstance(other, CombinatorialModel) and self.polytope == other.polytope
                and self.char_matrix == other.char_matrix)

    def __hash__(self):
        return hash((self.polytope, self.char_matrix))

    @property
    def n(self) -> int:
        return self.rank

    @cached_property
    def vectors(self) -> tuple:
        """Characteristic vectors ``λ_0, ..., λ_{m-1}``."""
        return tuple(self.char_matrix.columns())

    def face_matrix(self, facets) -> IntegerMatrix:
        """Columns ``λ_i`` for ``i`` in ``facets`` (sorted)."""
        return self.char_matrix.select_columns(sorted(facets))

    def vertex_det(self, v: int) -> int:
        return self.face_matrix(self.polytope.vertex_facets[v]).det()

    @cached_property
    def vertex_dets(self) -> tuple:
        return tuple(self.vertex_det(v) for v in range(self.polytope.vertex_count))

    def local_group(self, face: Face) -> LocalGroupData:
        return _local_group_cached(self, face.facet_set)


def build_model(P: SimplePolytope, n: int, char_matrix) -> CombinatorialModel:
    """Validate and build a model; ``char_matrix`` is ``n x m`` (column ``i`` is ``λ_i``)."""
    if not isinstance(char_matrix, IntegerMatrix):
        char_matrix = IntegerMatrix.from_rows(char_matrix)
    if n != P.dim:
        raise ModelError(f"lattice rank {n} differs from polytope dimension {P.dim}")
    if char_matrix.rows != n or char_matrix.cols != P.facet_count:
        raise ModelError(
            f"characteristic matrix is {char_matrix.rows}x{char_matrix.cols}, "
            f"expected {n}x{P.facet_count}"
        )
    for i, col in enumerate(char_matrix.columns()):
        if not any(col):
            raise ModelError(f"facet {i} has the zero characteristic vector")
    model = CombinatorialModel(P, n, char_matrix)
    for v, fs in enumerate(P.vertex_facets):
        if model.vertex_det(v) == 0:
            raise ModelError(
                f"vectors at vertex {v} = {{{','.join(f'F{i + 1}' for i in sorted(fs))}}} "
                f"(facets {sorted(fs)}) are linearly dependent: det 0"
            )
    return model


def model_from_vectors(P: SimplePolytope, vectors: Sequence[Sequence[int]]) -> CombinatorialModel:
    """Convenience: build from the list of per-facet vectors."""
    return build_model(P, P.dim, IntegerMatrix.from_columns(vectors, rows=P.dim))


_local_cache: dict = {}


def _local_group_cached(model: CombinatorialModel, facets: frozenset) -> LocalGroupData:
    key = (model, facets)
    hit = _local_cache.get(key)
    if hit is not None:
        return hit
    face = model.polytope.face(facets)
    n = model.rank
    nf = model.face_matrix(facets)
    if not facets:
        data = LocalGroupData(face, FiniteAbelianGroup.trivial(n), nf, IntegerMatrix.zeros(n, 0))
    else:
        sat = saturation(nf.columns(), n)
        data = LocalGroupData(face, quotient_group(sat, nf), nf, sat)
    if len(_local_cache) > 4096:
        _local_cache.clear()
    _local_cache[key] = data
    return data


def local_group(model: CombinatorialModel, face: Face) -> LocalGroupData:
    return model.local_group(face)


def singular_faces(model: CombinatorialModel) -> list[Face]:
    return [F for F in model.polytope.faces() if model.local_group(F).order > 1]


def is_primitive(model: CombinatorialModel) -> bool:
    return all(content(v) == 1 for v in model.vectors)


def pi1_orb(model: CombinatorialModel) -> FiniteAbelianGroup:
    """``Z^n`` modulo the span of all characteristic vectors."""
    return quotient_group(IntegerMatrix.identity(model.rank), model.char_matrix)


def universal_cover_model(model: CombinatorialModel) -> tuple[CombinatorialModel, IntegerMatrix]:
    """The model over ``N̂`` together with the HNF basis of ``N̂`` used for it."""
    basis = lattice_basis(model.vectors, model.rank)
    lifted = [coordinates(basis, v) for v in model.vectors]
    cover = build_model(model.polytope, model.rank,
                        IntegerMatrix.from_columns(lifted, rows=model.rank))
    return cover, basis


def is_manifold(model: CombinatorialModel) -> bool:
    # any face's facets sit inside some vertex's, so vertices suffice
    return all(abs(d) == 1 for d in model.vertex_dets)


def is_global_quotient(model: CombinatorialModel) -> bool:
    return is_manifold(universal_cover_model(model)[0])


def quotient_projection(model: CombinatorialModel, face: Face) -> IntegerMatrix:
    """Surjection ``Z^n -> Z^(n-k)`` with kernel ``N*(F)``, in canonical form.

    Its rows are the HNF basis of the annihilator of ``N*(F)``; an annihilator
    of a saturated lattice is itself saturated, so the map is onto.
    """
    sat = model.local_group(face).sat_basis
    if sat.cols == 0:
        return IntegerMatrix.identity(model.rank)
    return kernel_basis(sat.T).T


def characteristic_submodel(model: CombinatorialModel, face: Face) -> CombinatorialModel:
    """Model of the characteristic subspace over ``face``.

    Facets of the new polytope are the facets ``j`` of ``P`` with
    ``I(F) ∪ {j}`` a face, relabelled ``0, 1, ...`` in increasing order of
    ``j``; vertices keep the order they have in ``P``.
    """
    P = model.polytope
    I = face.facet_set
    k = len(I)
    if k == 0:
        return model
    if k >= P.dim:
        raise ModelError(f"face {sorted(I)} is a vertex; it has no characteristic submodel")
    J = sorted(j for j in range(P.facet_count) if j not in I and P.is_face(I | {j}))
    relabel = {j: a for a, j in enumerate(J)}
    verts = [frozenset(relabel[j] for j in fs - I)
             for fs in P.vertex_facets if I <= fs]
    try:
        Q = build_polytope(P.dim - k, len(J), verts)
    except PolytopeError as exc:
        raise ModelError(f"face {sorted(I)} is not a simple polytope: {exc}") from exc
    proj = quotient_projection(model, face)
    cols = [proj.apply(model.vectors[j]) for j in J]
    return build_model(Q, P.dim - k, IntegerMatrix.from_columns(cols, rows=P.dim - k))


def model_equivalent(m1: CombinatorialModel, m2: CombinatorialModel,
                     allow_sign_flips: bool = False):
    """Find unimodular ``θ`` with ``θ λ_i = ε_i λ'_i`` for every facet.

    ``θ`` is pinned down by the vectors at the first vertex (and, with sign
    flips, the ``2^n`` sign choices there); every other facet's sign is then
    forced, so this is an exhaustive search.  Returns ``(θ, signs)`` or
    ``None``.
    """
    P1, P2 = m1.polytope, m2.polytope
    if (P1.dim, P1.facet_count, set(P1.vertex_facets)) != (P2.dim, P2.facet_count,
                                                           set(P2.vertex_facets)):
        raise ModelError("models are defined over different polytopes or facet labelings")
    n = m1.rank
    base = sorted(P1.vertex_facets[0])
    A = m1.face_matrix(base)
    B = m2.face_matrix(base)
    if abs(A.det()) != abs(B.det()):
        return None
    sign_choices = itertools.product((1, -1), repeat=n) if allow_sign_flips else [(1,) * n]
    for eps in sign_choices:
        target = IntegerMatrix.from_columns(
            [[e * x for x in B.col(c)] for c, e in enumerate(eps)], rows=n
        )
        # θ A = target  ⇔  A^T θ^T = target^T ; solve row by row of θ
        theta_rows = []
        ok = True
        for r in range(n):
            q = solve_rational(A.T.columns(), target.row(r))
            if any(x.denominator != 1 for x in q):
                ok = False
                break
            theta_rows.append([int(x) for x in q])
        if not ok:
            continue
        theta = IntegerMatrix.from_rows(theta_rows, cols=n)
        if abs(theta.det()) != 1:
            continue
        signs = []
        for i in range(P1.facet_count):
            image = theta.apply(m1.vectors[i])
            target_i = m2.vectors[i]
            if image == tuple(target_i):
                signs.append(1)
            elif allow_sign_flips and image == tuple(-x for x in target_i):
                signs.append(-1)
            else:
                break
        else:
            return theta, signs
    return None


def apply_automorphism(model: CombinatorialModel, theta: IntegerMatrix) -> CombinatorialModel:
    """The model with every vector replaced by ``θ λ_i``."""
    inverse_integer(theta)  # raises if not unimodular
    return build_model(model.polytope, model.rank, theta @ model.char_matrix)


__all__ = [
    "CombinatorialModel", "LocalGroupData", "ModelError", "LatticeError",
    "apply_automorphism", "build_model", "characteristic_submodel", "is_global_quotient",
    "is_manifold", "is_primitive", "local_group", "model_equivalent", "model_from_vectors",
    "pi1_orb", "quotient_projection", "singular_faces", "universal_cover_model",
]
