from fractions import Fraction

import pytest

from qtorb import polytope as pt
from qtorb.chern import (
    RealizationError,
    almost_complex_necessary,
    top_chern_number,
    total_chern_class,
    vertex_signs,
)
from qtorb.cohomology import betti_numbers, cohomology_ring
from qtorb.model import is_manifold, local_group, model_from_vectors
from qtorb.polytope import Realization

import oracles
from conftest import P112_REALIZATION, SQUARE_REALIZATION, hirzebruch, random_model


def sigmas(model, R, o=1):
    return [s.sigma for s in vertex_signs(model, R, o)]


def test_segment_signs(cp1):
    R = pt.segment_realization()
    signs = vertex_signs(cp1, R)
    assert [s.sigma for s in signs] == [1, 1]
    # at the right vertex both determinants are -1
    assert (signs[1].frame_sign, signs[1].lambda_det) == (-1, -1)
    assert top_chern_number(cp1, R) == 2


def test_cp2_signs(cp2):
    R = pt.simplex_realization(2)
    assert sigmas(cp2, R) == [1, 1, 1]
    assert top_chern_number(cp2, R) == 3
    assert almost_complex_necessary(cp2, R) == (True, 1)


def test_p112_signs(p112):
    assert sigmas(p112, P112_REALIZATION) == [2, 1, 1]
    assert top_chern_number(p112, P112_REALIZATION) == Fraction(5, 2)
    assert almost_complex_necessary(p112, P112_REALIZATION) == (True, 1)


def test_teardrop_signs(teardrop):
    """Hand check: at 0 the edge points to +1 and λ = 2; at 1 the edge is -1
    and λ = -1."""
    R = pt.segment_realization()
    assert sigmas(teardrop, R) == [2, 1]
    assert top_chern_number(teardrop, R) == Fraction(3, 2)


def test_flipped_cp2_not_almost_complex(triangle):
    m = model_from_vectors(triangle, [(1, 0), (0, 1), (1, 1)])
    R = pt.simplex_realization(2)
    s = sigmas(m, R)
    assert min(s) < 0 < max(s)
    assert almost_complex_necessary(m, R) == (False, None)
    assert almost_complex_necessary(m, R, -1) == (False, None)


def test_orientation_flip(p112):
    assert sigmas(p112, P112_REALIZATION, -1) == [-2, -1, -1]
    assert top_chern_number(p112, P112_REALIZATION, -1) == Fraction(-5, 2)
    assert almost_complex_necessary(p112, P112_REALIZATION, -1) == (True, 1)


def test_degenerate_frame(cp2):
    R = Realization.of([(0, 0), (0, 1), (0, 2)])
    with pytest.raises(RealizationError, match="vertex 0"):
        vertex_signs(cp2, R)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_hirzebruch_signs(k):
    m = model_from_vectors(pt.polygon(4), hirzebruch(k))
    assert sigmas(m, SQUARE_REALIZATION) == [1, 1, 1, 1]
    assert top_chern_number(m, SQUARE_REALIZATION) == 4 == sum(betti_numbers(m))


REALIZED = [
    (pt.simplex(2), pt.simplex_realization(2)),
    (pt.polygon(4), pt.polygon_realization(4)),
    (pt.polygon(5), pt.polygon_realization(5)),
    (pt.cube(3), pt.cube_realization(3)),
    (pt.simplex(3), pt.simplex_realization(3)),
]


def test_sigma_matches_reordering_rule(rng):
    """With n >= 2 some facet order makes the edge frame positive; σ must be
    det Λ in that order."""
    for P, R in REALIZED:
        for _ in range(5):
            m = random_model(P, rng)
            for o in (1, -1):
                assert sigmas(m, R, o) == oracles.sigma_by_reordering(m, R, o)


def test_sigma_abs_is_local_group_order(rng):
    for P, R in REALIZED:
        for _ in range(5):
            m = random_model(P, rng)
            for v, s in enumerate(sigmas(m, R)):
                assert abs(s) == local_group(m, P.vertex_face(v)).order


def test_sign_flip_of_one_vector(rng):
    P, R = pt.polygon(5), pt.polygon_realization(5)
    m = random_model(P, rng)
    base = sigmas(m, R)
    for i in range(P.facet_count):
        vecs = [tuple(-x for x in v) if j == i else v for j, v in enumerate(m.vectors)]
        flipped = sigmas(model_from_vectors(P, vecs), R)
        for v, fs in enumerate(P.vertex_facets):
            assert flipped[v] == (-base[v] if i in fs else base[v])


def test_manifold_top_chern_is_euler_characteristic(rng):
    found = 0
    for P, R in REALIZED:
        for _ in range(200):
            m = random_model(P, rng, -2, 2)
            if not is_manifold(m):
                continue
            s = sigmas(m, R)
            if all(x == 1 for x in s):
                assert top_chern_number(m, R) == P.vertex_count == sum(betti_numbers(m))
                found += 1
    assert found >= 3


def test_total_chern_class(cp2, p112):
    r = cohomology_ring(cp2)
    c = total_chern_class(cp2, r)
    assert c[0] == r.one()
    assert c[1] == 3 * r.generator(0)
    assert c[2] == 3 * r.cup(r.generator(0), r.generator(0))
    r = cohomology_ring(p112)
    c = total_chern_class(p112, r)
    u = r.generator(0)
    assert c[1] == 4 * u
    assert c[2] == 5 * r.cup(u, u)
