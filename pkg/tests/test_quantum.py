from __future__ import annotations

import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from prscodes.cyclo import cyclotomic_sets, parse_delta
from prscodes.distance import DistanceReport
from prscodes.errors import HypothesisFailed, Mismatch, RuleViolated
from prscodes.galois import field_create
from prscodes.lincode import dual, from_rows, hermitian_dual, intersect
from prscodes.quantum import (
    EAQECCParams,
    affine_euclidean,
    affine_galois,
    asymmetric,
    asymmetric_hypothesis,
    css,
    hermitian,
    index_of_min,
    max_propagation,
    params_from_dict,
    propagate,
    propagation_chain,
    recipe_asymmetric_prs,
    recipe_euclidean,
    recipe_galois_qecc,
    recipe_hermitian,
    recipe_trace_hermitian,
    relative_weight,
)


def triple(p):
    return p.n, p.kappa, p.c


@st.composite
def code_pairs(draw):
    pm = draw(st.sampled_from([(2, 1), (3, 1), (2, 2)]))
    F = field_create(*pm)
    n = draw(st.integers(2, 7))
    rng = np.random.default_rng(draw(st.integers(0, 2**31)))
    k1 = draw(st.integers(1, n - 1))
    k2 = draw(st.integers(1, n - 1))
    C1 = from_rows(F, rng.integers(0, F.order, size=(k1, n)), n)
    C2 = from_rows(F, rng.integers(0, F.order, size=(k2, n)), n)
    return C1, C2


class TestGeneric:
    @settings(max_examples=40)
    @given(code_pairs())
    def test_css_invariants(self, pair):
        C1, C2 = pair
        res = css(C1, C2, distance="exact")
        assert res.kappa == C1.n - C1.k - C2.k + res.c
        assert 0 <= res.c <= C1.k
        assert res.c == C1.k - intersect(C1, dual(C2)).k
        # symmetric in the sense of hull dimensions
        assert C2.k - intersect(C2, dual(C1)).k == res.c

    @settings(max_examples=25)
    @given(code_pairs())
    def test_hermitian_invariants(self, pair):
        C, _ = pair
        if C.field.m % 2:
            return
        res = hermitian(C, distance="none")
        assert res.c == C.k - intersect(C, hermitian_dual(C)).k
        assert res.kappa == C.n - 2 * C.k + res.c

    def test_self_orthogonal_has_no_entanglement(self):
        F = field_create(2, 1)
        # [7,3] simplex code is contained in the Hamming code, its dual
        C = from_rows(F, [[1, 0, 0, 1, 0, 1, 1], [0, 1, 0, 1, 1, 1, 0], [0, 0, 1, 0, 1, 1, 1]])
        res = css(C, C, distance="exact")
        assert triple(res) == (7, 1, 0)
        assert res.delta.value == 3 and res.delta.kind == "exact"

    def test_mismatch(self):
        with pytest.raises(Mismatch):
            css(from_rows(field_create(2, 1), [[1, 1]]), from_rows(field_create(3, 1), [[1, 1]]))
        with pytest.raises(Mismatch):
            asymmetric(from_rows(field_create(2, 1), [[1, 1]]), from_rows(field_create(2, 1), [[1, 1, 1]]))

    def test_relative_weight_modes(self):
        F = field_create(2, 1)
        A = from_rows(F, [[1, 1, 0, 0], [0, 0, 1, 1]])
        B = from_rows(F, [[1, 1, 0, 0]])
        assert relative_weight(A, B, mode="exact").value == 2
        assert relative_weight(A, B, lower=2, mode="search").kind == "exact"
        rep = relative_weight(A, B, lower=1, mode="bounds")
        assert (rep.value, rep.kind) == (1, "lower_bound")
        with pytest.raises(ValueError):
            relative_weight(A, B, mode="other")

    def test_params_validation(self):
        with pytest.raises(ValueError):
            EAQECCParams(n=10, kappa=3, c=0, q="2^1", k1=4, k2=4, construction="css")
        with pytest.raises(ValueError):
            EAQECCParams(n=10, kappa=7, c=5, q="2^1", k1=4, k2=4, construction="css")


class TestEuclidean:
    def test_82_61(self):
        res = recipe_euclidean(9, 2, 81, 5)
        assert triple(res) == (82, 61, 1)
        assert res.delta.value == 7 and res.delta.kind == "lower_bound"
        assert res.label() == "[[82,61,7;1]]_9"
        assert res.certificate["sum_sizes"] == 11

    def test_affine(self):
        res = affine_euclidean(9, 2, 81, 5)
        assert triple(res) == (81, 59, 0)
        assert res.delta.value == 7

    def test_needs_p_dividing_n(self):
        with pytest.raises(HypothesisFailed) as exc:
            recipe_euclidean(3, 2, 5, 1)
        assert exc.value.condition == "p | N"


@pytest.fixture(scope="module")
def delta():
    return parse_delta(cyclotomic_sets(27, 3), "sets:0,1,4,13")


@pytest.fixture(scope="module")
def ctx256():
    return cyclotomic_sets(256, 4)


class TestGalois:
    def test_28_12(self, delta):
        res = recipe_galois_qecc(3, 27, delta, distance="exact")
        assert triple(res) == (28, 12, 0)
        assert (res.delta.value, res.delta.kind) == (6, "exact")

    def test_affine_has_entanglement(self, delta):
        res = affine_galois(3, 27, delta.members, distance="exact")
        assert triple(res) == (27, 12, 1)
        assert res.delta.value == 6

    def test_affine_without_13(self):
        members = parse_delta(cyclotomic_sets(27, 3), "sets:0,1,4").members
        res = affine_galois(3, 27, members, distance="exact")
        assert triple(res) == (27, 13, 0)
        assert res.delta.value == 5

    def test_hypotheses(self):
        ctx = cyclotomic_sets(27, 3)
        with pytest.raises(HypothesisFailed):
            recipe_galois_qecc(3, 27, parse_delta(ctx, "0,1,3"))
        with pytest.raises(HypothesisFailed):
            recipe_galois_qecc(3, 27, parse_delta(ctx, "sets:0,1,4"))
        with pytest.raises(HypothesisFailed):
            recipe_galois_qecc(4, 16, parse_delta(cyclotomic_sets(16, 4), "0"))


class TestAsymmetric:
    def test_f4(self):
        res = recipe_asymmetric_prs(4, 2, 16, 14, 15, distance="exact")
        assert triple(res) == (17, 14, 1)
        assert (res.delta_z.value, res.delta_x.value) == (3, 2)
        assert res.delta_z.kind == res.delta_x.kind == "exact"
        assert res.label() == "[[17,14,3/2;1]]_4"
        assert res.certificate["route"] == "hypothesis"

    @pytest.mark.parametrize(
        "q,N,d1,d2,expect",
        [(5, 25, 22, 23, (26, 19, 1, 4, 3)), (8, 64, 60, 63, (65, 58, 1, 5, 2)), (8, 64, 58, 62, (65, 52, 1, 7, 3))],
    )
    def test_bounds(self, q, N, d1, d2, expect):
        res = recipe_asymmetric_prs(q, 2, N, d1, d2, distance="bounds")
        assert triple(res) + (res.delta_z.value, res.delta_x.value) == expect

    def test_propagation(self):
        res = recipe_asymmetric_prs(5, 2, 25, 22, 23, distance="bounds")
        out = propagate(res, 2, rule="asym")
        assert triple(out) == (24, 19, 3)
        with pytest.raises(RuleViolated):
            propagate(res, 1, rule="sym")

    def test_maximal_representatives_required(self):
        with pytest.raises(HypothesisFailed):
            recipe_asymmetric_prs(4, 2, 16, 11, 15)

    def test_hypothesis_flag(self):
        assert asymmetric_hypothesis(cyclotomic_sets(16, 4), 14, 15)


class TestHermitian:
    def test_17_12(self):
        res = recipe_hermitian(2, 2, 16, 1, distance="exact")
        assert triple(res) == (17, 12, 1)
        assert (res.delta.value, res.delta.kind) == (3, "exact")

    @pytest.mark.parametrize("t,kappa,delta", [(1, 77, 3), (2, 73, 4), (3, 69, 5), (4, 65, 6), (5, 61, 7)])
    def test_f3_series(self, t, kappa, delta):
        res = recipe_hermitian(3, 2, 81, t)
        assert triple(res) == (82, kappa, 1)
        assert res.delta.value == delta

    def test_65_chain(self):
        res = recipe_hermitian(2, 3, 64, index_of_min(cyclotomic_sets(64, 4), 5))
        assert triple(res) == (65, 40, 1)
        chain = propagation_chain(res)
        assert len(chain) == 13
        assert [triple(p) for p in chain] == [(65 - i, 40, 1 + i) for i in range(13)]
        assert all(p.delta.value == 7 for p in chain)
        with pytest.raises(RuleViolated):
            propagate(res, 13)

    def test_17_chain(self):
        res = recipe_hermitian(2, 2, 16, 1)
        assert triple(propagate(res, 1)) == (16, 12, 2)
        assert triple(propagate(res, 2)) == (15, 12, 3)
        assert max_propagation(res) == 2
        assert chain_end(res).c == res.k1

    def test_65_58(self):
        res = recipe_hermitian(2, 3, 64, 1)
        assert triple(res) == (65, 58, 1)
        assert triple(propagate(res, 1)) == (64, 58, 2)


def chain_end(p):
    return propagation_chain(p)[-1]


class TestTraceHermitian:
    @pytest.mark.parametrize("at,kappa", [(9, 74), (10, 68), (11, 60)])
    def test_parameters(self, ctx256, at, kappa):
        res = recipe_trace_hermitian(2, 4, index_of_min(ctx256, at))
        assert triple(res) == (129, kappa, 1)
        assert res.delta.value == at + 2
        # κ = n - 2k + c with odd n and c = 1 is always even
        assert res.kappa % 2 == 0

    def test_bound_enforced(self, ctx256):
        with pytest.raises(HypothesisFailed):
            recipe_trace_hermitian(2, 4, index_of_min(ctx256, 21))


class TestSerialisation:
    def test_roundtrip(self):
        res = recipe_hermitian(2, 2, 16, 1, distance="exact")
        d = json.loads(res.to_json())
        assert set(d) == {"n", "kappa", "delta", "c", "q", "recipe", "certificate"}
        assert d["delta"]["kind"] == "exact"
        back = params_from_dict(d)
        assert back.label() == res.label()
        assert back.to_dict()["delta"]["value"] == 3

    def test_asymmetric_roundtrip(self):
        res = recipe_asymmetric_prs(5, 2, 25, 22, 23, distance="bounds")
        back = params_from_dict(json.loads(res.to_json()))
        assert back.label() == res.label() == "[[26,19,4/3;1]]_5"
        assert back.provenance["delta_z"] == "bound"

    def test_provenance(self):
        res = recipe_euclidean(9, 2, 81, 5)
        assert res.provenance == {"n": "exact", "kappa": "exact", "c": "exact", "delta": "bound"}

    def test_index_of_min(self):
        ctx = cyclotomic_sets(64, 4)
        assert index_of_min(ctx, 5) == 4
        with pytest.raises(HypothesisFailed):
            index_of_min(ctx, 4)

    def test_exact_report_from_dict(self):
        p = params_from_dict({"n": 10, "kappa": 2, "c": 0, "q": "2^1",
                              "delta": {"value": 3, "kind": "exact", "method": "support"}})
        assert p.delta == DistanceReport(3, "exact", "support")
