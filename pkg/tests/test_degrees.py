"""Coarse degrees, presets, class enumeration, refinement."""

import json

import pytest
from hypothesis import given, settings, strategies as st

from tropcount import curves, degrees
from tropcount.lattice import primitive, rank_int


def test_make_coarse_sorts_and_drops_zeros():
    cd = degrees.make_coarse(2, [((1, 1), 2), ((-1, 0), 0), ((0, -1), 2),
                                 ((-1, -1), 0), ((-1, 0), 2)])
    assert cd.values == (((-1, 0), 2), ((0, -1), 2), ((1, 1), 2))
    assert cd.value((1, 1)) == 2 and cd.value((5, 5)) == 0
    assert cd.mass == 6


def test_coarse_validation():
    with pytest.raises(ValueError):
        degrees.make_coarse(2, [((1, 0), 1)])  # unbalanced
    with pytest.raises(ValueError):
        degrees.make_coarse(2, [((2, 0), 1), ((-2, 0), 1)])  # not primitive
    with pytest.raises(ValueError):
        degrees.make_coarse(2, [((1, 0), 1), ((-1, 0), -1)])  # negative
    with pytest.raises(ValueError):
        degrees.make_coarse(2, [((1, 0), 1), ((1, 0), 1), ((-1, 0), 2)])
    with pytest.raises(ValueError):
        # unsorted values rejected by the raw constructor
        degrees.CoarseDegree(2, (((1, 0), 1), ((-1, 0), 1)))


def test_degree_set_validation():
    a = degrees.make_coarse(2, [((1, 0), 1), ((-1, 0), 1)])
    b = degrees.make_coarse(2, [((0, 1), 1), ((0, -1), 1)])
    ds = degrees.make_degree_set([b, a, a])
    assert ds.coarse_degrees == tuple(sorted((a, b), key=lambda c: c.values))
    with pytest.raises(ValueError):
        degrees.DegreeSet((a, a))


def test_coarse_of_totals():
    deg = curves.make_degree([((1, 0), 2), ((1, 0), 1), ((-1, 0), 3)])
    cd = degrees.coarse_of(deg)
    assert cd.values == (((-1, 0), 3), ((1, 0), 3))


def test_refine_coarse_partitions():
    cd = degrees.make_coarse(2, [((1, 0), 2), ((-1, 0), 2)])
    refs = degrees.refine_coarse(cd)
    # each side splits as 2 or 1+1
    assert len(refs) == 4
    assert all(degrees.coarse_of(d) == cd for d in refs)
    capped = degrees.refine_coarse(cd, max_weight=1)
    assert len(capped) == 1
    assert capped[0].entries == (((-1, 0), 1), ((-1, 0), 1),
                                 ((1, 0), 1), ((1, 0), 1))


def test_refine_count_is_product_of_partition_counts():
    # partitions: p(3) = 3, p(2) = 2
    cd = degrees.make_coarse(2, [((1, 1), 3), ((-1, -1), 3), ((1, 0), 2),
                                 ((-1, 0), 2)])
    refs = degrees.refine_coarse(cd)
    assert len(refs) == 3 * 3 * 2 * 2


def test_plane_degree():
    deg = degrees.plane_degree(3)
    assert deg.e == 9
    assert degrees.coarse_of(deg).values == (((-1, 0), 3), ((0, -1), 3),
                                             ((1, 1), 3))
    with pytest.raises(ValueError):
        degrees.plane_degree(0)


def test_preset_flag3_members():
    ds = degrees.preset_flag3(1, 2)
    assert len(ds.coarse_degrees) == 2
    k1 = degrees.make_coarse(3, [((-1, 0, 0), 1), ((0, 1, 0), 2),
                                 ((1, 0, -1), 1), ((0, -1, 0), 1),
                                 ((0, -1, 1), 1)])
    assert k1 in ds.coarse_degrees
    assert len(degrees.preset_flag3(2, 3).coarse_degrees) == 3
    assert len(degrees.preset_flag3(1, 0).coarse_degrees) == 1
    for s, t in ((-1, 0), (0, 0)):
        with pytest.raises(ValueError):
            degrees.preset_flag3(s, t)


def test_preset_octahedron_compositions():
    assert len(degrees.preset_octahedron(1).coarse_degrees) == 4
    assert len(degrees.preset_octahedron(2).coarse_degrees) == 10
    for cd in degrees.preset_octahedron(2).coarse_degrees:
        for u, c in cd.values:
            assert cd.value(tuple(-x for x in u)) == c
    with pytest.raises(ValueError):
        degrees.preset_octahedron(0)


def test_octahedron_class_set_sizes():
    for a, size in ((1, 4), (2, 12), (3, 28)):
        ds = degrees.octahedron_class_set(a)
        assert len(ds.coarse_degrees) == size
        preset = set(degrees.preset_octahedron(a).coarse_degrees)
        assert preset <= set(ds.coarse_degrees)
        for cd in ds.coarse_degrees:
            assert cd.mass == 2 * a


def test_octahedron_class_set_extras_at_two():
    ds = set(degrees.octahedron_class_set(2).coarse_degrees)
    extras = ds - set(degrees.preset_octahedron(2).coarse_degrees)
    want = {
        degrees.make_coarse(3, [((-1, 0, -1), 1), ((0, -1, 0), 1),
                                ((0, 1, 1), 1), ((1, 0, 0), 1)]),
        degrees.make_coarse(3, [((-1, 0, 0), 1), ((0, -1, -1), 1),
                                ((0, 1, 0), 1), ((1, 0, 1), 1)]),
    }
    assert extras == want
    # the extra members span all of Q^3, unlike the compositions
    for cd in extras:
        assert rank_int([v for v, _ in cd.values]) == 3


def test_enumerate_coarse_degrees_mass_constraint():
    rays = []
    for u in degrees.OCTAHEDRON_PAIRS:
        rays.append(u)
        rays.append(tuple(-c for c in u))
    ones = tuple(1 for _ in rays)
    ds = degrees.enumerate_coarse_degrees(tuple(rays), [(ones, 2)], cap=2)
    assert ds == degrees.octahedron_class_set(1)
    with pytest.raises(ValueError):
        degrees.enumerate_coarse_degrees(((1, 0), (1, 0), (-1, 0)), [], 1)
    with pytest.raises(ValueError):
        degrees.enumerate_coarse_degrees(((2, 0), (-2, 0)), [], 1)


def test_degree_set_degrees_dedup():
    ds = degrees.preset_octahedron(1)
    degs = degrees.degree_set_degrees(ds)
    assert len(degs) == 4
    assert all(d.e == 2 for d in degs)
    a2 = degrees.degree_set_degrees(degrees.preset_octahedron(2))
    a2_light = degrees.degree_set_degrees(degrees.preset_octahedron(2),
                                          max_weight=1)
    assert set(a2_light) < set(a2)


def test_coarse_json_round_trip():
    cd = degrees.make_coarse(3, [((1, 0, 1), 2), ((-1, 0, -1), 2)])
    data = json.loads(json.dumps(degrees.coarse_to_json(cd)))
    assert degrees.coarse_from_json(data) == cd
    assert degrees.coarse_from_json(data, n=3) == cd
    with pytest.raises(ValueError):
        degrees.coarse_from_json([])


def test_degree_set_json_round_trip():
    ds = degrees.preset_flag3(2, 1)
    data = json.loads(json.dumps(degrees.degree_set_to_json(ds)))
    assert degrees.degree_set_from_json(data) == ds


@st.composite
def balanced_coarse(draw):
    n = draw(st.integers(2, 3))
    k = draw(st.integers(1, 2))
    dirs = draw(st.lists(
        st.tuples(*[st.integers(-2, 2)] * n).filter(any),
        min_size=k, max_size=k, unique=True))
    entries = {}
    for v in dirs:
        u = primitive(v)[0]
        w = draw(st.integers(1, 2))
        entries[u] = entries.get(u, 0) + w
        nu = tuple(-c for c in u)
        entries[nu] = entries.get(nu, 0) + w
    return degrees.make_coarse(n, entries.items())


@given(balanced_coarse())
@settings(max_examples=40, deadline=None)
def test_refine_inverts_coarse_of(cd):
    refs = degrees.refine_coarse(cd)
    assert refs
    for deg in refs:
        assert degrees.coarse_of(deg) == cd
    assert len(set(refs)) == len(refs)
