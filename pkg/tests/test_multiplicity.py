"""Multiplicity breakdowns against hand-computed and classical values."""

from dataclasses import replace

import pytest

from tropcount import curves, degrees, engine, matching, multiplicity


def test_plane_line_multiplicity_breakdown():
    prob = engine.Problem(n=2, degrees=(degrees.plane_degree(1),),
                          constraint_bases=((), ()),
                          offsets=((0, 0), (5, 7)))
    rep = engine.count_invariant(prob)
    (curve,) = rep.per_degree[0].curves
    m = curve.multiplicity
    assert (m.weight, m.d_index, m.deltas, m.total) == (1, 1, (1, 1), 1)
    assert multiplicity.mikhalkin_multiplicity(curve.type) == 1


def test_weighted_end_doubles_the_count():
    # one trivalent vertex with a weight 2 end; the only matching
    # assignment through (0,0) and (5,1) puts the first point on it
    deg = curves.make_degree([((-1, 0), 2), ((1, 1), 1), ((1, -1), 1)])
    prob = engine.Problem(n=2, degrees=(deg,), constraint_bases=((), ()),
                          offsets=((0, 0), (5, 1)))
    rep = engine.count_invariant(prob)
    assert rep.total == 2
    (curve,) = rep.per_degree[0].curves
    m = curve.multiplicity
    assert curves.edge_weight(curve.type, curve.type.markings[0]) == 2
    assert (m.weight, m.d_index, m.total) == (1, 1, 2)
    assert sorted(m.deltas) == [1, 2]
    assert multiplicity.mikhalkin_multiplicity(curve.type) == 2


def test_weighted_bounded_edge():
    # two vertices joined by a weight 2 edge; marked on both diagonal
    # ends and on the bounded edge itself
    deg = curves.make_degree([((1, 1), 1), ((1, -1), 1),
                              ((-1, 1), 1), ((-1, -1), 1)])
    types = [t for t, _ in curves.unmarked_types(deg)]
    assert len(types) == 2
    for t in types:
        assert len(t.bounded) == 1 and t.bounded[0][2] == 2
    (t,) = [t for t in types if t.bounded[0][3][0] != 0]
    end_ids = {t.ends[i][2]: 1 + i for i in range(4)}
    marked = replace(t, markings=(end_ids[(1, 1)], end_ids[(-1, -1)], 0))
    cons = [matching.AffineConstraint((2, 2)),
            matching.AffineConstraint((-4, -1)),
            matching.AffineConstraint((-1, 0))]
    out = matching.match_constraints(marked, cons)
    assert out.status == matching.UNIQUE
    assert out.solution.lengths == (3,)
    m = multiplicity.total_multiplicity(marked, cons)
    assert (m.weight, m.d_index, m.total) == (2, 1, 4)
    assert sorted(m.deltas) == [1, 1, 2]
    assert multiplicity.mikhalkin_multiplicity(marked) == 4


def test_plane_conic_totals_match_vertex_determinants():
    prob = engine.Problem(n=2, degrees=(degrees.plane_degree(2),),
                          constraint_bases=((),) * 5)
    rep = engine.count_invariant(prob, seed=0)
    assert rep.total == 1
    for curve in rep.per_degree[0].curves:
        assert curve.multiplicity.total == \
            multiplicity.mikhalkin_multiplicity(curve.type)


def degenerate_line(entries, marks):
    deg = curves.make_degree(entries)
    ((t, _),) = curves.unmarked_types(deg)
    assert t.degenerate
    return replace(t, markings=marks)


def test_degenerate_line_multiplicity():
    t = degenerate_line([((1, 0, 0), 1), ((-1, 0, 0), 1)], (0, 0))
    cons = [matching.AffineConstraint((0, 0, 0), ((0, 1, 0),)),
            matching.AffineConstraint((2, 3, 5), ((0, 0, 1),))]
    m = multiplicity.total_multiplicity(t, cons)
    assert (m.weight, m.d_index, m.deltas, m.total) == (1, 1, (1, 1), 1)


def test_degenerate_weighted_line_multiplicity():
    t = degenerate_line([((1, 0, 0), 2), ((-1, 0, 0), 2)], (0, 0))
    cons = [matching.AffineConstraint((0, 0, 0), ((0, 1, 0),)),
            matching.AffineConstraint((2, 3, 5), ((0, 0, 1),))]
    m = multiplicity.total_multiplicity(t, cons)
    assert (m.weight, m.d_index, m.deltas, m.total) == (1, 1, (2, 2), 4)


def test_delta_index_sees_the_saturation():
    # span{(1,1,0), (1,-1,0)} has index 2 in its saturation
    t = degenerate_line([((1, 1, 0), 1), ((-1, -1, 0), 1)], (0,))
    c = matching.AffineConstraint((0, 0, 0), ((1, -1, 0),))
    assert multiplicity.delta_index(t, 0, c) == 2


def test_delta_index_rejects_direction_in_span():
    t = degenerate_line([((1, 1, 0), 1), ((-1, -1, 0), 1)], (0,))
    c = matching.AffineConstraint((0, 0, 0), ((1, 1, 0),))
    with pytest.raises(ValueError):
        multiplicity.delta_index(t, 0, c)


def test_d_index_error_paths():
    t = degenerate_line([((1, 0, 0), 1), ((-1, 0, 0), 1)], (0,))
    with pytest.raises(ValueError):
        multiplicity.d_index(t, [matching.AffineConstraint((0, 0, 0))])
    ((line, _),) = curves.unmarked_types(degrees.plane_degree(1))
    line = replace(line, markings=(0,))
    with pytest.raises(ValueError):
        # one point row against two position columns
        multiplicity.d_index(line, [matching.AffineConstraint((0, 0))])


def test_mikhalkin_error_paths():
    t = degenerate_line([((1, 0, 0), 1), ((-1, 0, 0), 1)], ())
    with pytest.raises(ValueError):
        multiplicity.mikhalkin_multiplicity(t)
    deg = curves.make_degree([((1, 0), 1), ((-1, 0), 1)])
    ((flat, _),) = curves.unmarked_types(deg)
    with pytest.raises(ValueError):
        multiplicity.mikhalkin_multiplicity(flat)
