from __future__ import annotations

import random

import pytest
from hypothesis import given

from acmpoints.corpus import build_example
from acmpoints.depth import Form, ideal_slice, is_acm
from acmpoints.hilbert import hilbert_table
from acmpoints.multidegree import box_degrees, dim_R
from acmpoints.points import PointSet, ferrers_point_set
from acmpoints.separators import (
    check_colon_property,
    drop_locus,
    minimal_separator,
    same_modulo_ideal,
    separator_degrees,
    separator_report,
    unique_degree_test,
)
from conftest import point_sets, random_point_set
from oracles import naive_hilbert


def test_dichotomy_on_20_random_sets():
    rng = random.Random(23)
    for _ in range(20):
        dims = rng.choice([(1, 1), (1, 2), (2, 2), (1, 1, 1)])
        x = random_point_set(rng, dims, rng.randint(2, 8))
        h = hilbert_table(x, strict=True)
        for k in range(len(x)):
            loc = drop_locus(x, k, hx=h)
            for i in box_degrees(loc.box):
                ix = dim_R(i, dims) - loc.hx[i]
                iy = dim_R(i, dims) - loc.hy[i]
                assert ix <= iy <= ix + 1
                assert (iy == ix + 1) == (i in loc.upset)


@given(point_sets(max_points=5))
def test_drop_locus_against_oracle(x):
    if len(x) < 2:
        return
    pts = [p.coords for p in x.points]
    for k in range(len(x)):
        loc = drop_locus(x, k)
        rest = pts[:k] + pts[k + 1:]
        for i in box_degrees(tuple(min(b, 2) for b in loc.box)):
            drop = naive_hilbert(pts, i, x.dims) - naive_hilbert(rest, i, x.dims)
            assert drop == (1 if i in loc.upset else 0)


def test_two_points_sharing_first_coordinate():
    x = PointSet.build((1, 1), [([1, 0], [1, 0]), ([1, 0], [1, 1])])
    assert separator_degrees(x, 0).degrees == ((0, 1),)
    assert separator_degrees(x, 1).degrees == ((0, 1),)


def test_two_noncollinear_points_violate():
    x = build_example("two-noncollinear").point_set
    res = unique_degree_test(x)
    assert res.kind == "Violation" and res.point == 0
    assert res.degrees == ((0, 1), (1, 0))


def test_single_point():
    x = PointSet.build((1, 2), [([1, 5], [1, 2, 3])])
    assert separator_degrees(x, 0).degrees == ((0, 0),)
    assert unique_degree_test(x).all_unique


def test_separator_through_other_coordinate():
    x = PointSet.build((1, 1), [([1, 1], [1, 1]), ([1, 2], [1, 2])])
    f = minimal_separator(x, 0, (1, 0))
    # x_1 - 2 x_0 up to scale, normalized to 1 at [1:1]
    assert list(f.coeffs) == [2, -1] and f.evaluate(x) == [1, 0]


def _separator_cases():
    cases = []
    for name in ("example4", "example3", "ferrers-443", "p1p2-11pts"):
        x = build_example(name).point_set
        for k in range(0, len(x), 3):
            for alpha in separator_degrees(x, k).degrees:
                cases.append((name, k, alpha))
    return cases


CASES = _separator_cases()


def test_at_least_20_extracted_separators():
    assert len(CASES) >= 20


@pytest.mark.parametrize("name,k,alpha", CASES)
def test_extracted_separators(name, k, alpha):
    x = build_example(name).point_set
    f = minimal_separator(x, k, alpha)
    vals = f.evaluate(x)
    assert vals[k] == 1 and all(v == 0 for t, v in enumerate(vals) if t != k)
    g = minimal_separator(x, k, alpha, reverse=True)
    assert same_modulo_ideal(f, g, x)
    assert check_colon_property(x, k, f)


def test_example4_q52_separator():
    x = build_example("example4").point_set
    k = x.find("Q_{5,2}")
    f = minimal_separator(x, k, (2, 2))
    assert f.degree == (2, 2)
    assert sum(1 for v in f.evaluate(x) if v != 0) == 1


def test_non_separator_fails_colon_property():
    x = build_example("example4").point_set
    # a cubic in the first factor through all six P_i vanishes on X
    s = ideal_slice(x, (3, 0))
    f = Form((3, 0), s.basis[0], x.dims)
    assert not check_colon_property(x, 0, f)


def test_ferrers_corner_point():
    x = ferrers_point_set((2, 1), [(1, 0), (1, 1)], [(1, 0), (1, 1)])
    k = x.find("P_1xQ_2")
    degs = separator_degrees(x, k).degrees
    assert len(degs) == 1
    f = minimal_separator(x, k, degs[0])
    assert check_colon_property(x, k, f, box=(3, 3))


def test_rejects_non_minimal_degree():
    x = build_example("example4").point_set
    with pytest.raises(ValueError):
        minimal_separator(x, x.find("Q_{5,2}"), (2, 1))


def test_acm_implies_unique_degrees_on_random_sets():
    rng = random.Random(31)
    for _ in range(30):
        dims = rng.choice([(1, 1), (1, 2), (2, 2)])
        x = random_point_set(rng, dims, rng.randint(2, 8))
        if is_acm(x).acm:
            assert unique_degree_test(x).all_unique


def test_report_shape():
    x = build_example("two-noncollinear").point_set
    doc = separator_report(x, with_forms=True)
    assert doc["points"][0]["degrees"] == [[0, 1], [1, 0]]
    assert len(doc["points"][0]["separators"]) == 2
