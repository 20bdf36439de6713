import pytest

from conftest import G0_CHOICES, g_zero_extended, logistic, probabilistic_sum
from unisum.analysis.models import SegmentKind
from unisum.analysis.multifunction import check_segment_borders, extract_multifunction, segment_borders
from unisum.analysis.sections import crossing
from unisum.extended_sum.evaluate import extended_sum_uninorm
from unisum.operators.tnorms import product
from unisum.uninorms.construct import make_u_min


def test_representable_graph_is_one_decreasing_segment():
    graph = extract_multifunction(logistic(), grid_n=101)
    assert graph.e == 0.5
    assert not graph.degenerate
    assert [s.kind for s in graph.segments] == [SegmentKind.DECREASING]
    segment = graph.segments[0]
    assert (segment.x_lo, segment.x_hi) == (0.0, 1.0)
    for x, y in segment.samples:
        if 0.0 < x < 1.0:
            assert y == pytest.approx(1.0 - x, abs=1e-9)
    assert segment.samples[0] == (0.0, 1.0)
    assert segment.samples[-1] == (1.0, 0.0)


def test_u_min_graph_and_its_border_mirror():
    U = make_u_min(product(), probabilistic_sum(), 0.5)
    graph = extract_multifunction(U, grid_n=101)
    kinds = [s.kind for s in graph.segments]
    assert kinds == [
        SegmentKind.HORIZONTAL,
        SegmentKind.VERTICAL,
        SegmentKind.HORIZONTAL,
        SegmentKind.VERTICAL,
    ]
    top, drop, level, mirror = graph.segments
    assert top.y_lo == 1.0
    assert top.x_hi == pytest.approx(0.5)
    assert drop.x_lo == 0.5
    assert (drop.y_lo, drop.y_hi) == (pytest.approx(0.5, abs=1e-6), pytest.approx(1.0))
    assert level.y_lo == pytest.approx(0.5, abs=1e-6)
    # r = 1 on [0, e) is mirrored by a vertical segment on x = 1
    assert mirror.x_lo == 1.0
    for p in segment_borders(graph):
        assert min(abs(p - q) for q in (0.0, 0.5, 1.0)) <= 1e-6
    assert check_segment_borders(U, graph).passed


def test_three_block_graph(three_block):
    graph = extract_multifunction(three_block, grid_n=101)
    # r = 3/4 on [0, 1/4], decreasing through the logistic block, 0 on [3/4, 1]
    assert [s.kind for s in graph.segments] == [
        SegmentKind.VERTICAL,
        SegmentKind.HORIZONTAL,
        SegmentKind.DECREASING,
        SegmentKind.VERTICAL,
        SegmentKind.HORIZONTAL,
    ]
    head, lower, descent, drop, upper = graph.segments
    assert head.x_lo == 0.0
    assert lower.y_lo == pytest.approx(0.75, abs=1e-6)
    assert (descent.x_lo, descent.x_hi) == (pytest.approx(0.25), pytest.approx(0.75))
    assert drop.x_lo == pytest.approx(0.75)
    assert upper.y_lo == pytest.approx(0.0, abs=1e-9)


@pytest.mark.parametrize("name", ["open-b", "closed-b"])
def test_border_column_cut_short_by_g(name):
    U = extended_sum_uninorm(g_zero_extended(G0_CHOICES[name]))
    graph = extract_multifunction(U, grid_n=101)
    assert [s.kind for s in graph.segments] == [
        SegmentKind.VERTICAL,
        SegmentKind.HORIZONTAL,
        SegmentKind.VERTICAL,
        SegmentKind.HORIZONTAL,
    ]
    column = graph.segments[0]
    assert column.x_lo == 0.0
    # r(0) = 3/4 while the twin horizontal at level 0 runs over [1/2, 1]
    assert (column.y_lo, column.y_hi) == (pytest.approx(0.5, abs=1e-6), pytest.approx(0.75, abs=1e-6))
    assert graph.segments[-1].x_hi == 1.0
    # r on the upper half is bisected onto 0 and snapped there
    assert graph.segments[2].y_lo == 0.0
    assert graph.segments[-1].y_lo == graph.segments[-1].y_hi == 0.0


def test_graph_invariants(construction):
    grid_n = 101
    step = 1.0 / (grid_n - 1)
    graph = extract_multifunction(construction, grid_n=grid_n)
    segments = graph.segments
    horizontals = [s for s in segments if s.kind == SegmentKind.HORIZONTAL]
    verticals = [s for s in segments if s.kind == SegmentKind.VERTICAL]

    # non-increasing, and each segment starts where the previous one ends
    for s in segments:
        assert s.x_lo <= s.x_hi and s.y_lo <= s.y_hi
    for left, right in zip(segments, segments[1:]):
        assert right.x_lo == pytest.approx(left.x_hi, abs=step)
        assert right.y_hi == pytest.approx(left.y_lo, abs=step)

    # symmetric about the diagonal
    for h in horizontals:
        if 0.0 < h.y_lo < 1.0:
            assert any(abs(v.x_lo - h.y_lo) <= 2.0 * step for v in verticals)
    for v in verticals:
        if 0.0 < v.x_lo < 1.0:
            assert any(abs(h.y_lo - v.x_lo) <= 2.0 * step for h in horizontals)
    for s in segments:
        if s.kind != SegmentKind.DECREASING:
            continue
        for x, y in s.samples:
            if 0.0 < x < 1.0 and 0.0 < y < 1.0:
                assert crossing(construction, y) == pytest.approx(x, abs=2.0 * step)

    assert check_segment_borders(construction, graph, tol=1e-9).passed
