from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from prscodes.cyclo import (
    DeltaSet,
    ambient_degree,
    check_biject,
    consecutive_run,
    cyclotomic_sets,
    delta_consecutive,
    delta_derives,
    delta_range,
    format_delta,
    longest_run,
    parse_delta,
    size_one_degrees,
)
from prscodes.errors import IndexOutOfRange, InvalidDelta, InvalidN, ShapeError

CONTEXTS = [(9, 3), (16, 4), (16, 2), (27, 3), (25, 5), (6, 4), (81, 9), (64, 4), (14, 3)]


class TestStructure:
    def test_n9_q3(self):
        ctx = cyclotomic_sets(9, 3)
        assert [c.members for c in ctx.sets] == [(0,), (1, 3), (2, 6), (4,), (5, 7), (8,)]
        assert ctx.A == (0, 1, 2, 4, 5, 8)
        assert ctx.B == (0, 3, 4, 6, 7, 8)

    def test_n16_q4(self):
        ctx = cyclotomic_sets(16, 4)
        assert [c.members for c in ctx.sets] == [
            (0,), (1, 4), (2, 8), (3, 12), (5,), (6, 9), (7, 13), (10,), (11, 14), (15,)
        ]

    def test_n81_q9_first_sets(self):
        ctx = cyclotomic_sets(81, 9)
        assert [ctx.I(a) for a in range(6)] == [
            {0}, {1, 9}, {2, 18}, {3, 27}, {4, 36}, {5, 45}
        ]
        assert sum(ctx.n(a) for a in ctx.A[:6]) == 11

    def test_ambient_degree(self):
        assert ambient_degree(9, 3) == 2
        assert ambient_degree(6, 4) == 2  # 5 | 15
        with pytest.raises(InvalidN):
            ambient_degree(1, 3)
        with pytest.raises(InvalidN):
            ambient_degree(7, 2, limit=2)

    def test_explicit_s_checked(self):
        with pytest.raises(InvalidN):
            cyclotomic_sets(9, 3, s=3)

    @pytest.mark.parametrize("N,q", CONTEXTS)
    def test_partition(self, N, q):
        ctx = cyclotomic_sets(N, q)
        seen = sorted(z for c in ctx.sets for z in c.members)
        assert seen == list(range(N))
        for c in ctx.sets:
            for z in c.members:
                if z:
                    r = z * q % (N - 1) or N - 1
                    assert r in c.members
                assert ctx.set_of(z) == c

    def test_set_of_range(self):
        with pytest.raises(IndexOutOfRange):
            cyclotomic_sets(9, 3).set_of(9)

    def test_size_one_degrees(self):
        assert size_one_degrees(cyclotomic_sets(16, 4)) == [0, 5, 10, 15]
        assert size_one_degrees(cyclotomic_sets(81, 9)) == list(range(0, 81, 10))


class TestDelta:
    def test_validation(self):
        ctx = cyclotomic_sets(9, 3)
        with pytest.raises(InvalidDelta):
            DeltaSet(ctx, frozenset())
        with pytest.raises(InvalidDelta):
            DeltaSet(ctx, frozenset({1, 2}))
        with pytest.raises(InvalidDelta):
            DeltaSet(ctx, frozenset({0, 9}))

    def test_derived_sets_n16(self):
        ctx = cyclotomic_sets(16, 4)
        D = ctx.delta({0, 1, 4, 10})
        assert D.d == 10
        assert D.prime == {0, 1, 4}
        assert D.closed == {0, 1, 4, 10}
        assert D.perp == set(range(16)) - {15, 11, 14, 5}
        with pytest.raises(ShapeError):
            delta_derives(D)

    def test_perp_of_delta4_n9(self):
        assert delta_range(cyclotomic_sets(9, 3), 4).perp == {0, 1, 2, 3}

    def test_consecutive_definition(self):
        ctx = cyclotomic_sets(16, 4)
        assert delta_consecutive(ctx, 3).members_set == {0, 1, 4, 2, 8, 3}
        assert delta_consecutive(ctx, 2).members_set == {0, 1, 4, 2}
        with pytest.raises(IndexOutOfRange):
            delta_consecutive(ctx, 10)

    def test_star_and_double_prime(self):
        ctx = cyclotomic_sets(16, 4)
        D = delta_consecutive(ctx, 2)
        # remove I_{15-0} and I_{15-1}
        assert D.star == set(range(16)) - {15, 11, 14}
        assert D.double_prime == {0, 1, 4, 2, 8}
        assert D.t == 2
        # shape detected without the hint
        assert ctx.delta({0, 1, 4, 2}).t == 2

    def test_runs(self):
        ctx = cyclotomic_sets(16, 4)
        D = ctx.delta({0, 1, 4, 10})
        assert consecutive_run(D, "full") == 2
        assert consecutive_run(D, "primed_closure") == 2
        E = delta_range(ctx, 4)
        assert consecutive_run(E, "primed_closure") == 1
        assert longest_run([]) == 0
        with pytest.raises(ValueError):
            consecutive_run(D, "other")

    @pytest.mark.parametrize("N,q", CONTEXTS)
    def test_biject_everywhere(self, N, q):
        ctx = cyclotomic_sets(N, q)
        for d in range(N):
            D = delta_range(ctx, d)
            assert all(check_biject(D, a) for a in ctx.A)

    @given(st.sampled_from(CONTEXTS), st.data())
    def test_perp_is_involution(self, nq, data):
        ctx = cyclotomic_sets(*nq)
        extra = data.draw(st.sets(st.integers(1, ctx.N - 1)))
        D = ctx.delta({0} | extra)
        back = frozenset(a for a in range(ctx.N) if ctx.neg(a) not in D.perp)
        assert back == D.members_set

    @given(st.sampled_from(CONTEXTS), st.data())
    def test_closure_is_union_of_sets(self, nq, data):
        ctx = cyclotomic_sets(*nq)
        D = ctx.delta({0} | data.draw(st.sets(st.integers(1, ctx.N - 1))))
        assert D.closed <= D.members_set
        for z in D.closed:
            assert ctx.I(z) <= D.closed


class TestParsing:
    def test_forms(self):
        ctx = cyclotomic_sets(27, 3)
        assert parse_delta(ctx, "0,1,3").members == (0, 1, 3)
        assert parse_delta(ctx, "range:d=4") == delta_range(ctx, 4)
        assert parse_delta(ctx, "consec:t=2") == delta_consecutive(ctx, 2)
        assert parse_delta(ctx, "sets:0,1,4,13").members == (0, 1, 3, 4, 9, 10, 12, 13)
        assert format_delta(parse_delta(ctx, " 0, 2 ")) == "0,2"

    def test_garbage(self):
        with pytest.raises(InvalidDelta):
            parse_delta(cyclotomic_sets(9, 3), "zero,one")
