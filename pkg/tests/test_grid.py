from decimal import Decimal
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bkvpg.grid import (
    COLLINEAR,
    DIAGONAL,
    OUT_OF_BOUNDS,
    SELF_INTERSECTING,
    TOO_MANY_BENDS,
    ZERO_LENGTH,
    EmptyInstance,
    GridPath,
    Instance,
    InstanceError,
    derive_c,
    dumps_instance,
    grid_points,
    loads_instance,
    point_bound,
    validate_path,
)

from conftest import raw_paths


def P(*verts, pid=0, w=1):
    return GridPath(pid, w, tuple(verts))


class TestValidatePath:
    def test_one_bend_ok(self):
        r = validate_path(P((0, 0), (2, 0), (2, 1)), k=1)
        assert r.ok and r.violations == ()

    def test_diagonal(self):
        r = validate_path(P((0, 0), (1, 1)), k=1)
        assert r.kinds() == [DIAGONAL]
        assert r.violations[0].index == 0

    def test_too_many_bends(self):
        r = validate_path(P((0, 0), (0, 2), (3, 2), (3, 0)), k=1)
        assert r.kinds() == [TOO_MANY_BENDS]
        assert "found 2, allowed 1" in r.violations[0].detail

    def test_zero_length(self):
        r = validate_path(P((0, 0), (0, 0), (2, 0)), k=1)
        assert ZERO_LENGTH in r.kinds()
        assert r.violations[0].index == 0

    def test_collinear_breakpoint(self):
        r = validate_path(P((0, 0), (2, 0), (5, 0)), k=1)
        assert r.kinds() == [COLLINEAR]
        assert r.violations[0].index == 1

    def test_self_intersecting(self):
        # spiral that comes back across its own first segment
        r = validate_path(P((0, 1), (3, 1), (3, 3), (1, 3), (1, 0)), k=3)
        assert r.kinds() == [SELF_INTERSECTING]
        assert r.violations[0].index == 3

    def test_backtrack_is_self_intersecting(self):
        r = validate_path(P((0, 0), (0, 3), (0, 1)), k=1)
        assert SELF_INTERSECTING in r.kinds() or COLLINEAR in r.kinds()

    def test_out_of_bounds(self):
        r = validate_path(P((0, 0), (5, 0)), k=0, bbox=(4, 4))
        assert r.kinds() == [OUT_OF_BOUNDS]
        assert r.violations[0].index == 1

    def test_reports_every_violation(self):
        r = validate_path(P((-1, 0), (1, 1), (1, 1), (1, 4), (1, 6)), k=0)
        assert set(r.kinds()) >= {OUT_OF_BOUNDS, DIAGONAL, ZERO_LENGTH, COLLINEAR, TOO_MANY_BENDS}

    def test_single_point_ok(self):
        assert validate_path(P((3, 5)), k=0).ok

    def test_negative_weight_is_valid(self):
        assert validate_path(P((0, 0), (1, 0), w=-7), k=0).ok


class TestGridPoints:
    def test_l_shape(self):
        pts = grid_points(P((0, 0), (2, 0), (2, 1)))
        assert pts == {(0, 0), (1, 0), (2, 0), (2, 1)}

    def test_single_point(self):
        assert grid_points(P((3, 5))) == {(3, 5)}

    def test_bound_met_with_equality(self):
        pts = grid_points(P((0, 0), (0, 2), (2, 2)))
        assert len(pts) == 5 == point_bound(c=2, k=1)

    @settings(max_examples=300)
    @given(raw_paths())
    def test_counting_bound(self, kcp):
        k, c, path = kcp
        if not validate_path(path, k).ok:
            return
        c_used = max(path.segment_lengths())
        assert len(grid_points(path)) <= point_bound(c_used, path.bends)
        assert len(grid_points(path)) <= point_bound(c, k)

    @given(raw_paths())
    def test_reverse_invariant(self, kcp):
        _, _, path = kcp
        assert grid_points(path) == grid_points(path.reversed())

    @settings(max_examples=300)
    @given(raw_paths())
    def test_simple_iff_no_double_count(self, kcp):
        k, _, path = kcp
        simple = validate_path(path, k).ok
        assert simple == (len(grid_points(path)) == 1 + sum(path.segment_lengths()))


class TestDeriveC:
    def test_max_segment(self):
        paths = [P((0, 0), (1, 0), pid=0), P((0, 0), (0, 2), pid=1), P((0, 0), (3, 0), (3, 1), pid=2)]
        assert derive_c(paths) == 3

    def test_single_points_floor_to_one(self):
        assert derive_c([P((1, 1), pid=0), P((2, 2), pid=1)]) == 1

    def test_one_long_segment(self):
        assert derive_c([P((0, 0), (5, 0))]) == 5

    def test_empty(self):
        with pytest.raises(EmptyInstance):
            derive_c([])

    def test_instance_bound(self):
        inst = Instance(2, (P((0, 0), (3, 0), (3, 2)),))
        assert inst.c == 3 and inst.bound == 3 * 2 + 3 + 1


class TestInstance:
    def test_duplicate_ids(self):
        with pytest.raises(InstanceError):
            Instance(1, (P((0, 0)), P((1, 1))))

    def test_negative_k(self):
        with pytest.raises(InstanceError):
            Instance(-1, ())


class TestFileFormat:
    def test_roundtrip(self):
        text = ('{"k": 1, "paths": [{"id": 4, "weight": "3/7", "vertices": [[0,0],[2,0],[2,1]]},'
                ' {"id": 1, "weight": 2.5, "vertices": [[5,5]]}]}')
        inst = loads_instance(text)
        assert inst.k == 1
        assert inst.by_id()[4].weight == Fraction(3, 7)
        assert inst.by_id()[1].weight == Fraction(5, 2)
        again = loads_instance(dumps_instance(inst))
        assert again == inst

    def test_decimal_converted_exactly(self):
        inst = loads_instance('{"k": 0, "paths": [{"id": 0, "weight": 0.1, "vertices": [[0,0]]}]}')
        assert inst.paths[0].weight == Fraction(Decimal("0.1")) == Fraction(1, 10)

    @pytest.mark.parametrize("text", [
        '{"k": 0, "paths": [], "extra": 1}',
        '{"k": 0, "paths": [{"id": 0, "weight": 1, "vertices": [[0,0]], "color": "red"}]}',
        '{"k": 0, "paths": [{"id": 0, "weight": "x/y", "vertices": [[0,0]]}]}',
        '{"k": 0, "paths": [{"id": 0, "weight": 1, "vertices": [[0.5,0]]}]}',
        '{"k": 0, "paths": [{"id": 0, "weight": NaN, "vertices": [[0,0]]}]}',
        '{"k": "1", "paths": []}',
        '{"paths": []}',
        '[1, 2]',
        '{"k": 0,',
    ])
    def test_rejects(self, text):
        with pytest.raises(InstanceError):
            loads_instance(text)

    def test_non_integer_weight_serialized_as_ratio(self):
        inst = Instance(0, (P((0, 0), w=Fraction(1, 3)),))
        assert '"weight": "1/3"' in dumps_instance(inst)

    @given(st.fractions(max_denominator=50))
    def test_weight_roundtrip(self, w):
        inst = Instance(0, (P((0, 0), w=w),))
        assert loads_instance(dumps_instance(inst)).paths[0].weight == w
