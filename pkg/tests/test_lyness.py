from __future__ import annotations

import pytest
import sympy

from lyness_mirror import lyness as L
from lyness_mirror.exactalg import LaurentPoly


def _sympy_orbit(d: int, count: int):
    xs = list(sympy.symbols(f"z1:{d + 1}"))
    while len(xs) < count:
        k = len(xs) - d
        xs.append(sympy.cancel((1 + sum(xs[k + 1:k + d])) / xs[k]))
    return xs


def _is_laurent(expr) -> bool:
    _, den = sympy.fraction(sympy.together(expr))
    return len(sympy.Poly(den, *sorted(den.free_symbols, key=str) or [sympy.Symbol("z1")]).terms()) == 1


def _to_sympy(p: LaurentPoly, gens):
    out = 0
    for e, c in p.terms.items():
        term = c.constant_value()
        for g, k in zip(gens, e):
            term *= g ** k
        out += term
    return out


def test_dimension_two_terms():
    res = L.iterate(L.RecurrenceSpec(2), 7)
    x1, x2 = LaurentPoly.var(0, 2), LaurentPoly.var(1, 2)
    assert res.terms[2] == (1 + x2) * x1.unit_inverse()
    assert res.terms[3] * x1 * x2 == 1 + x1 + x2
    assert res.period == 5


@pytest.mark.parametrize("mode", ["plain", "full-y", "lambda-mu"])
def test_dimension_three_period(mode):
    res = L.iterate(L.RecurrenceSpec(3, mode), 11)
    assert res.period == 8
    assert res.laurent_failure_index is None


def test_dimension_four_fails_where_the_oracle_does():
    res = L.iterate(L.RecurrenceSpec(4), 40)
    assert res.laurent_failure_index == 9
    assert res.period is None
    oracle = _sympy_orbit(4, 9)
    gens = oracle[:4]
    first_bad = next(i + 1 for i, x in enumerate(oracle) if not _is_laurent(x))
    assert first_bad == 9
    for ours, theirs in zip(res.terms, oracle):
        assert sympy.simplify(_to_sympy(ours, gens) - theirs) == 0


def test_spec_validation():
    with pytest.raises(ValueError):
        L.RecurrenceSpec(1)
    with pytest.raises(ValueError):
        L.RecurrenceSpec(2, "lambda-mu")
    with pytest.raises(ValueError):
        L.RecurrenceSpec(3, "bogus")


def test_orbit_json_is_serialisable():
    data = L.iterate(L.RecurrenceSpec(2), 7).to_json()
    assert data["period"] == 5 and data["terms"][0]["value"] == "z1"


def test_all_sixteen_charts_are_laurent_and_satisfy_the_equations():
    report = L.verify_charts()
    assert len(report) == 16
    assert all(r["status"] == "pass" for r in report)


def test_chart_entries_have_integer_coefficients_in_lambda_mu():
    for chart in L.ALL_CHARTS:
        for name, p in L.chart_expansions(chart, "lambda-mu").items():
            assert p.used_params() <= {"lam", "mu"}, (chart, name)


def test_printed_exchange_relations_and_invariants():
    assert all(r["status"] == "pass" for r in L.verify_exchange_relations())
    assert all(r["status"] == "pass" for r in L.verify_q_invariants())


@pytest.mark.parametrize(
    "check",
    [L.verify_pfaffians_dp5, L.verify_quadrics_ogr, L.verify_unprojection_equations, L.verify_factorizations,
     L.verify_shift_invariance, L.verify_specialisation, L.verify_periodicity],
)
def test_identity_reports_pass(check):
    report = check()
    assert report
    failed = [r for r in report if r["status"] != "pass"]
    assert not failed, failed


def test_unprojection_has_twenty_one_equations_including_q1q2():
    eqs = L.unprojection_equations(L.chart_expansions("T123", "plain"))
    assert len(eqs) == 21
    assert any("q1*q2" in name for name, _ in eqs)


def test_quadric_report_detects_a_broken_identity():
    xs, ys = L._ring16()
    quads = L.ogr_quadrics(xs, ys)
    assert len(quads) == 10
    assert all(not q.is_zero() for _, q in quads)


def test_dp5_chart_is_cyclic():
    c1 = L.dp5_chart(1)
    assert set(c1) == {f"x{i}" for i in range(1, 6)}
    prod = c1["x1"] * c1["x2"] * c1["x3"] * c1["x4"] * c1["x5"]
    assert prod == L.dp5_potential() + 3
