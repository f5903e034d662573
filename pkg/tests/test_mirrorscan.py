from __future__ import annotations

import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from lyness_mirror import mirrorscan as M
from lyness_mirror.lyness import dp2_potential, dp5_potential

FOUR = {
    "dp5": (lambda: dp5_potential().to_int_dict(), 3),
    "wQ": (lambda: M.w_Q().terms(), 5),
    "wP": (lambda: M.w_P().terms(), 4),
    "wP2": (lambda: M.w_P_bigon().terms(), 12),
}


@pytest.mark.parametrize("name", sorted(M.GOLDEN_PERIODS))
@pytest.mark.parametrize("method", ["dense", "sparse"])
def test_golden_periods(name, method):
    want = M.GOLDEN_PERIODS[name]
    assert M.period(M.named_potential(name), len(want) - 1, method=method).coeffs == want


def test_pruning_agrees_with_unpruned_on_random_potentials():
    rng = random.Random(20240501)
    vectors = [v for v in M.eps_vectors() if any(v)]
    for eps in rng.sample(vectors, 50):
        terms = M.PotentialSpec.from_eps(eps).terms()
        full = M.period(terms, 8, method="sparse", prune=False)
        assert M.period(terms, 8, method="sparse", prune=True) == full
        assert M.period(terms, 8, method="dense") == full


@pytest.mark.parametrize("name", sorted(FOUR))
@pytest.mark.parametrize("s", [3, 4, 5, 12])
def test_shift_matches_direct_computation(name, s):
    terms = dict(FOUR[name][0]())
    dim = len(next(iter(terms)))
    zero = (0,) * dim
    shifted = dict(terms)
    shifted[zero] = shifted.get(zero, 0) + s
    direct = M.period(shifted, 7)
    assert M.shift_series(M.period(terms, 7), s).coeffs == direct.coeffs


@given(st.lists(st.integers(-3, 3), min_size=3, max_size=8), st.integers(-20, 20))
def test_shift_round_trip(coeffs, s):
    p = M.PeriodSeries(tuple([1] + coeffs))
    assert M.shift_series(M.shift_series(p, s), -s).coeffs == p.coeffs
    assert M.shift_series(p, 0).coeffs == p.coeffs


def test_shift_depth_guard():
    with pytest.raises(ValueError):
        M.shift_series(M.PeriodSeries((1, 0, 2)), 1, 5)


def _random_unimodular(rng: random.Random):
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(6):
        i, j = rng.sample(range(3), 2)
        k = rng.choice([-1, 1])
        m = [[m[r][c] + (k * m[j][c] if r == i else 0) for c in range(3)] for r in range(3)]
    return m


def test_period_invariant_under_monomial_change_of_variables():
    rng = random.Random(7)
    for eps in rng.sample(M.eps_vectors()[1:], 8):
        terms = M.PotentialSpec.from_eps(eps).terms()
        a = _random_unimodular(rng)
        moved = {tuple(sum(a[r][c] * e[c] for c in range(3)) for r in range(3)): v for e, v in terms.items()}
        assert M.period(moved, 6) == M.period(terms, 6)


def test_apery_identities():
    base = M.period(dp5_potential(), 10)
    assert M.shift_series(base, 3).coeffs == tuple(M.apery(n) for n in range(11))
    base = M.period(M.w_Q().terms(), 10)
    assert M.shift_series(base, 5).coeffs == tuple(M.apery2(n) for n in range(11))
    assert M.apery(0) == 1 and M.apery(3) == 147 and M.apery2(3) == 1445


def test_degree_two_closed_form():
    assert [M.dp2_coefficient(n) for n in range(3)] == [1, 12, 420]
    got = M.period(dp2_potential() + 12, 8)
    assert got.coeffs == tuple(M.dp2_coefficient(n) for n in range(9))


def test_parameters_are_rejected():
    from lyness_mirror.lyness import chart_expansions

    with pytest.raises(ValueError):
        M.period(chart_expansions("T123", "lambda-mu")["x4"], 3)


# --- Newton polytopes -------------------------------------------------------------


def test_full_potential_is_fano():
    P = M.newton_polytope(M.w_Q().terms())
    assert P.is_fano() and P.full_dimensional
    for v in P.vertices:
        assert any(M._dot(u, v) == h for u, h in P.facets)


def test_point_is_degenerate():
    P = M.newton_polytope({(1, 0, 0): 1})
    assert P.dim == 0 and P.degenerate and not P.is_fano()


def test_planar_point_set_in_space_is_degenerate():
    P = M.polytope_of_points([(1, 0, 0), (0, 1, 0), (-1, -1, 0), (0, 0, 0)])
    assert P.dim == 2 and not P.is_fano()
    assert sorted(P.vertices) == [(-1, -1, 0), (0, 1, 0), (1, 0, 0)]


def test_f1_mirror_is_reflexive():
    P = M.newton_polytope(M.named_potential("f1"))
    assert P.is_reflexive() and P.is_fano()
    assert sorted(P.vertices) == [(-1, -1), (-1, 0), (0, -1), (1, 1)]


def test_cube_hull():
    cube = [(x, y, z) for x in (-1, 1) for y in (-1, 1) for z in (-1, 1)]
    P = M.polytope_of_points(cube + [(0, 0, 0), (1, 0, 0), (1, 1, 0)])
    assert sorted(P.vertices) == sorted(cube)
    assert len(P.facets) == 6 and P.is_reflexive()
    assert not P.is_fano() or all(M._primitive(v) == v for v in P.vertices)


@settings(max_examples=40)
@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4)), min_size=4, max_size=25))
def test_hull_contains_every_point(points):
    P = M.polytope_of_points(points)
    if not P.full_dimensional:
        return
    assert all(P.contains(p) for p in points)
    assert set(P.vertices) <= set(points)
    assert M.polytope_of_points(P.vertices).vertices == P.vertices


# --- potentials, survey, octagon ------------------------------------------------------


def test_potential_spec_parsing():
    spec = M.PotentialSpec.from_text("x1 + x2 + q1")
    assert spec.bits == "1100000010"
    assert M.PotentialSpec.from_bits(spec.bits).terms() == spec.terms()
    assert M.PotentialSpec.from_text("2*x1 + x1*x2").eps is None
    with pytest.raises(ValueError):
        M.PotentialSpec.from_eps((1, 0))


def test_survey_counts(survey_report):
    assert survey_report.total == 1024
    assert survey_report.fano_count == 705
    assert survey_report.distinct_periods == 46
    assert survey_report.distinct_by_depth[-1] == 46
    assert survey_report.distinct_by_depth[survey_report.stable_depth] == 46
    assert survey_report.distinct_by_depth[survey_report.stable_depth - 1] < 46


def test_table4_rows_have_distinct_periods(survey_report):
    buckets = {name: survey_report.bucket_of(M.table4_eps(name)) for name in M.TABLE4}
    assert all(b is not None for b in buckets.values())
    assert len({b.head for b in buckets.values()}) == 20


def test_extra_v22_potentials_share_a_bucket(survey_report):
    target = survey_report.bucket_of(M.table4_eps("V_22"))
    for text in M.V22_EXTRA:
        assert survey_report.bucket_of(M.PotentialSpec.from_text(text).eps) is target


def test_bundled_fixture_matches(survey_report):
    assert survey_report.table4 == {"V_12": True, "V_16": True, "MM_2,21": True}
    matched = {name for b in survey_report.matched_buckets for name in b.matches}
    assert matched == {"V_12", "V_16", "MM_2,21"}
    assert all(len(b.matches) == 1 for b in survey_report.matched_buckets)


def test_fixture_loading(tmp_path):
    entries = M.load_fixture()
    assert {e.name for e in entries} == {"V_12", "V_16", "MM_2,21"}
    assert all(e.source for e in entries)
    path = tmp_path / "f.json"
    path.write_text(json.dumps({"source": "test", "periods": [{"name": "A", "coeffs": [1, 0, 2]}]}))
    (entry,) = M.load_fixture(path)
    assert entry.source == "test" and entry.coeffs == (1, 0, 2)
    path.write_text(json.dumps([{"name": "B", "coeffs": [2]}]))
    with pytest.raises(ValueError):
        M.load_fixture(path)


def test_survey_json_is_deterministic(survey_report):
    a = json.dumps(survey_report.to_json(), sort_keys=True)
    b = json.dumps(survey_report.to_json(), sort_keys=True)
    assert a == b


def test_parallel_survey_matches_serial(survey_report):
    report = M.survey(6, workers=2)
    assert report.fano_count == 705
    assert report.distinct_periods == 46
    serial_heads = {b.head[:7] for b in survey_report.buckets}
    assert {b.head for b in report.buckets} == serial_heads


def test_octagon_periods_are_distinct():
    periods = M.octagon_potentials(10)
    assert len(periods) == 3
    heads = [p.coeffs for p in periods.values()]
    assert len(set(heads)) == 3
    assert all(h[0] == 1 and h[1] == 0 for h in heads)
    assert periods["2222/2222"].coeffs[:4] == (1, 0, 216, 9216)


def test_octagon_symmetry_orbit():
    # (3223/2332) and (3223/3223) are exchanged by a reflection of the octagon
    a = M.period(M.octagon_spec("3223/2332").terms(), 8)
    b = M.period(M.octagon_spec("3223/3223").terms(), 8)
    assert a.coeffs == b.coeffs


def test_octagon_spec_layout():
    spec = M.octagon_spec("2222/3223")
    coeffs = dict(spec.coeffs)
    assert coeffs["x1*x2"] == 1 and coeffs["x8*x1"] == 1
    assert [coeffs[f"x{i}"] for i in (8, 2, 6, 4)] == [3, 2, 2, 3]
    assert M.newton_polytope(spec.terms()).is_fano()


def test_complete_fixture_is_matched_row_by_row(survey_report):
    # synthetic fixture built from our own buckets: exercises matching only
    entries = [M.FixtureEntry(name, survey_report.bucket_of(M.table4_eps(name)).head[:8], "synthetic")
               for name in M.TABLE4]
    report = M.survey(8, entries)
    assert len(report.matched_buckets) == 20
    assert all(list(report.bucket_of(M.table4_eps(name)).matches) == [name] for name in M.TABLE4)
