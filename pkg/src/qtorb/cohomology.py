"""Rational cohomology of a quasitoric orbifold as a face-ring quotient.

``H*(X; Q) = Q[w_1..w_m] / (I + J)`` where ``I`` is generated by the
monomials of non-faces and ``J`` by the linear forms ``sum_j λ_ij w_j``
(rows of the characteristic matrix).  Each polynomial degree ``d`` is handled
separately by exact row reduction over Q inside the span of monomials whose
support is a face; monomials with non-face support are already zero.

Standard monomials are picked greedily in graded-lex order with
``w_1 < w_2 < ... < w_m``: a monomial is kept iff no relation has it as its
largest term.  That is the same as row reducing with columns ordered from the
largest monomial down and keeping the non-pivot columns.

Polynomial degree ``d`` is cohomological degree ``2d``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

from .model import CombinatorialModel
from .polytope import SimplePolytope, h_vector
from .zlattice import rank, rref


class CohomologyConsistencyError(RuntimeError):
    """Ring dimensions disagree with the h-vector."""


Monomial = tuple  # exponent vector of length m


def poly_degree(mono: Monomial) -> int:
    return sum(mono)


def support(mono: Monomial) -> frozenset:
    return frozenset(i for i, e in enumerate(mono) if e)


def grlex_key(mono: Monomial):
    # w_m is the most significant variable
    return (sum(mono), tuple(reversed(mono)))


def monomial_str(mono: Monomial, one_based: bool = True) -> str:
    off = 1 if one_based else 0
    parts = []
    for i, e in enumerate(mono):
        if e == 1:
            parts.append(f"w{i + off}")
        elif e:
            parts.append(f"w{i + off}^{e}")
    return "*".join(parts) or "1"


def _compositions(total: int, parts: int):
    """Tuples of ``parts`` positive integers summing to ``total``."""
    for cuts in itertools.combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(b - a for a, b in zip(bounds, bounds[1:]))


def face_monomials(P: SimplePolytope, d: int) -> list[Monomial]:
    """Degree-``d`` monomials whose support is a face, in ascending grlex order."""
    m = P.facet_count
    if d == 0:
        return [(0,) * m]
    out = []
    for F in P.faces():
        k = F.codim
        if k == 0 or k > d:
            continue
        idx = sorted(F.facet_set)
        for comp in _compositions(d, k):
            e = [0] * m
            for i, a in zip(idx, comp):
                e[i] = a
            out.append(tuple(e))
    out.sort(key=grlex_key)
    return out


def minimal_nonfaces(P: SimplePolytope) -> list[frozenset]:
    """Inclusion-minimal facet sets with empty intersection."""
    found = set()
    for F in P.faces():
        for j in range(P.facet_count):
            if j in F.facet_set:
                continue
            S = F.facet_set | {j}
            if S in found or P.is_face(S):
                continue
            if all(P.is_face(S - {i}) for i in S):
                found.add(S)
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def linear_forms(model: CombinatorialModel) -> list[tuple]:
    """Coefficient vectors of the linear relations; form ``i`` is row ``i`` of Λ."""
    return [model.char_matrix.row(i) for i in range(model.rank)]


def linear_form_str(form: Sequence[int]) -> str:
    terms = []
    for j, c in enumerate(form):
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = "" if abs(c) == 1 else f"{abs(c)}*"
        terms.append((sign, f"{mag}w{j + 1}"))
    if not terms:
        return "0"
    head = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    return " ".join([head] + [f"{s} {t}" for s, t in terms[1:]])


@dataclass(frozen=True)
class CohomologyClass:
    """Coordinates in the standard basis of one polynomial degree."""

    degree: int
    coords: tuple

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        if self.degree != other.degree:
            raise ValueError("cannot add classes of different degrees")
        return CohomologyClass(self.degree, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __rmul__(self, c) -> "CohomologyClass":
        return CohomologyClass(self.degree, tuple(Fraction(c) * x for x in self.coords))

    def __neg__(self):
        return -1 * self

    def is_zero(self) -> bool:
        return not any(self.coords)


@dataclass
class _Degree:
    monomials: list
    index: dict
    rows: list
    pivots: list
    basis: list


class CohomologyRing:
    """Graded ring with explicit standard-monomial bases; build with :func:`cohomology_ring`."""

    def __init__(self, model: CombinatorialModel):
        self.model = model
        self.n = model.rank
        self.m = model.polytope.facet_count
        self.max_poly_degree = self.n
        self._deg = [self._build_degree(d) for d in range(self.n + 2)]

    def _build_degree(self, d: int) -> _Degree:
        P = self.model.polytope
        monos = face_monomials(P, d)
        index = {mono: k for k, mono in enumerate(monos)}
        relations = []
        if d >= 1:
            for form in linear_forms(self.model):
                for mu in face_monomials(P, d - 1):
                    row = [Fraction(0)] * len(monos)
                    for j, c in enumerate(form):
                        if not c:
                            continue
                        prod = list(mu)
                        prod[j] += 1
                        k = index.get(tuple(prod))
                        if k is not None:  # otherwise the product lies in I
                            row[k] += c
                    if any(row):
                        relations.append(row)
        order = list(range(len(monos) - 1, -1, -1))  # largest monomial first
        rows, pivots = rref(relations, order) if relations else ([], [])
        pivot_set = set(pivots)
        basis = [mono for k, mono in enumerate(monos) if k not in pivot_set]
        return _Degree(monos, index, rows, pivots, basis)

    # -- structure ----------------------------------------------------------

    @property
    def dims(self) -> tuple:
        return tuple(len(self._deg[d].basis) for d in range(self.n + 1))

    @property
    def overflow_dim(self) -> int:
        """Dimension in polynomial degree ``n + 1`` (zero for a valid model)."""
        return len(self._deg[self.n + 1].basis)

    def basis(self, d: int) -> list[Monomial]:
        if d < 0 or d > self.n + 1:
            return []
        return list(self._deg[d].basis)

    def zero(self, d: int) -> CohomologyClass:
        return CohomologyClass(d, (Fraction(0),) * len(self.basis(d)))

    def one(self) -> CohomologyClass:
        return self.reduce((0,) * self.m)

    def reduce(self, mono: Monomial) -> CohomologyClass:
        mono = tuple(mono)
        if len(mono) != self.m or any(e < 0 for e in mono):
            raise ValueError(f"bad exponent vector {mono}")
        d = sum(mono)
        if d > self.n + 1:
            return CohomologyClass(d, ())
        deg = self._deg[d]
        k = deg.index.get(mono)
        if k is None:
            return self.zero(d)
        vec = [Fraction(0)] * len(deg.monomials)
        vec[k] = Fraction(1)
        for row, p in zip(deg.rows, deg.pivots):
            if vec[p]:
                f = vec[p]
                vec = [x - f * y for x, y in zip(vec, row)]
        return CohomologyClass(d, tuple(vec[deg.index[b]] for b in deg.basis))

    def reduce_polynomial(self, terms: dict, d: int) -> CohomologyClass:
        """Reduce ``{monomial: coefficient}`` (all of degree ``d``)."""
        out = self.zero(d)
        for mono, c in terms.items():
            out = out + c * self.reduce(mono)
        return out

    def generator(self, j: int) -> CohomologyClass:
        e = [0] * self.m
        e[j] = 1
        return self.reduce(tuple(e))

    def cup(self, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
        d = a.degree + b.degree
        if d > self.n:
            return CohomologyClass(d, ())
        out = self.zero(d)
        for x, ma in zip(a.coords, self.basis(a.degree)):
            if not x:
                continue
            for y, mb in zip(b.coords, self.basis(b.degree)):
                if y:
                    prod = tuple(p + q for p, q in zip(ma, mb))
                    out = out + (x * y) * self.reduce(prod)
        return out

    def basis_class(self, d: int, k: int) -> CohomologyClass:
        coords = [Fraction(0)] * len(self.basis(d))
        coords[k] = Fraction(1)
        return CohomologyClass(d, tuple(coords))

    @cached_property
    def pairing(self) -> dict:
        """``{d: matrix}`` of top-degree coefficients of basis_d[i] * basis_{n-d}[j].

        Defined relative to the chosen top basis monomial, so only its
        nondegeneracy is meaningful.
        """
        if self.dims[self.n] != 1:
            raise CohomologyConsistencyError(f"top degree has dimension {self.dims[self.n]}")
        out = {}
        for d in range(self.n + 1):
            out[d] = [[self.cup(self.basis_class(d, i), self.basis_class(self.n - d, j)).coords[0]
                       for j in range(self.dims[self.n - d])]
                      for i in range(self.dims[d])]
        return out

    def pairing_nondegenerate(self) -> bool:
        for d, mat in self.pairing.items():
            if self.dims[d] != self.dims[self.n - d]:
                return False
            if mat and rank(mat) != len(mat):
                return False
        return True

    # -- presentation -----------------------------------------------------

    def class_str(self, c: CohomologyClass) -> str:
        terms = []
        for x, mono in zip(c.coords, self.basis(c.degree)):
            if not x:
                continue
            m = monomial_str(mono)
            if x == 1:
                terms.append(m)
            elif x == -1:
                terms.append(f"-{m}")
            else:
                terms.append(f"{x}*{m}" if m != "1" else f"{x}")
        return " + ".join(terms).replace("+ -", "- ") or "0"

    def generator_relations(self) -> list[str]:
        """Each ``w_j`` written in the degree-1 standard basis."""
        return [f"w{j + 1} = {self.class_str(self.generator(j))}" for j in range(self.m)]


def cohomology_ring(model: CombinatorialModel) -> CohomologyRing:
    ring = CohomologyRing(model)
    h = h_vector(model.polytope)
    if ring.dims != h or ring.overflow_dim != 0:
        raise CohomologyConsistencyError(
            f"ring dimensions {ring.dims} (degree n+1: {ring.overflow_dim}) "
            f"do not match the h-vector {h}"
        )
    return ring


def cup(ring: CohomologyRing, a: CohomologyClass, b: CohomologyClass) -> CohomologyClass:
    return ring.cup(a, b)


def betti_numbers(model: CombinatorialModel) -> tuple:
    """Even Betti numbers ``(b_0, b_2, ..., b_2n)``; odd ones vanish."""
    return h_vector(model.polytope)


def betti_table(model: CombinatorialModel) -> dict:
    """``{degree: b_degree}`` over nonzero entries."""
    return {2 * k: b for k, b in enumerate(betti_numbers(model)) if b}
