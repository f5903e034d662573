from __future__ import annotations

from collections import Counter
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lyness_mirror import tropical as T
from lyness_mirror.exactalg import LaurentPoly
from lyness_mirror.fans import DP5_CONES, DP5_RAYS, V12_CONES, V12_RAYS
from lyness_mirror.lyness import chart_expansions

pts2 = st.tuples(st.integers(-20, 20), st.integers(-20, 20)).filter(any)
pts3 = st.tuples(st.integers(-9, 9), st.integers(-9, 9), st.integers(-9, 9)).filter(any)


# --- fans and pairing ---------------------------------------------------------


@given(pts2)
def test_pentagon_fan_covers_the_plane(p):
    space = T.builtin_dp5_space()
    cones = space.cones_containing(p)
    assert cones
    interior = [c for c in cones if all(a > 0 for a in space.coefficients(c, p))]
    assert len(interior) <= 1


@given(pts3)
def test_threefold_fan_covers_space(p):
    space = T.builtin_v12_space()
    cones = space.cones_containing(p)
    assert cones
    interior = [c for c in cones if all(a > 0 for a in space.coefficients(c, p))]
    assert len(interior) <= 1


def test_fans_are_complete_and_unimodular(dp5_space, v12_space):
    assert len(dp5_space.walls()) == 5
    assert len(v12_space.walls()) == 24
    for space in (dp5_space, v12_space):
        for cone in space.cones:
            assert T._is_unimodular(T._columns([space.rays[k] for k in cone]))


@pytest.mark.parametrize("name", ["dp5", "v12"])
def test_pairing_table_is_symmetric(name):
    space = T.get_space(name)
    n = len(space.rays)
    assert all(space.pairing_table[i][j] == space.pairing_table[j][i] for i in range(n) for j in range(n))


def test_pairing_examples(dp5_space, v12_space):
    assert T.pairing(dp5_space, "v1", "x3") == -1
    assert T.pairing(dp5_space, "v1", "x1") == 1
    assert T.pairing(v12_space, "v1", "x1") == 1
    assert T.halfspace_contains(dp5_space, "x3", -1, "v1")
    assert not T.halfspace_contains(dp5_space, "x3", 0, "v1")


@given(st.integers(0, 4), pts2)
def test_pairing_is_linear_on_rays_of_a_cone(k, m):
    space = T.builtin_dp5_space()
    n = space.rays[k]
    assert T.pairing(space, tuple(2 * x for x in n), m) == 2 * T.pairing(space, n, m)


# --- bending ------------------------------------------------------------------


def test_pentagon_bending_from_toric_model(dp5_space):
    walls = {dp5_space.wall_name(w): (dp5_space.cone_name(a), dp5_space.cone_name(b), m)
             for w, (a, b, m) in dp5_space.bending.items()}
    assert walls["<v1>"] == ("<v1,v2>", "<v5,v1>", ((1, 1), (0, 1)))
    assert walls["<v2>"] == ("<v1,v2>", "<v2,v3>", ((1, 0), (1, 1)))


def test_printed_bending_agrees_with_the_oracle(v12_space):
    names = list(V12_RAYS)
    cones = [tuple(names.index(r) for r in c) for c in V12_CONES]
    printed = T.printed_v12_bending(names, cones)
    derived = T.derive_bending([V12_RAYS[n] for n in names], cones, T.v12_centres(names))
    assert set(printed) == set(derived)
    for wall, (s, t, m) in printed.items():
        ds, dt, dm = derived[wall]
        assert (ds, dt, dm) == (s, t, m) or (ds, dt, dm) == (t, s, T.mat_inv(m))
    assert len(v12_space.bending) == 7


def test_transport_round_trip(v12_space):
    for wall, (s, t, _) in v12_space.bending.items():
        assert T.mat_mul(v12_space.transport(s, t), v12_space.transport(t, s)) == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_linearity_patterns(v12_space):
    lin_p = {w for w, ok in T.linearity_pattern(v12_space, T.PHI_P).items() if ok}
    lin_q = {w for w, ok in T.linearity_pattern(v12_space, T.PHI_Q).items() if ok}
    assert lin_p == {f"<v{i},w{2 - i % 2}>" for i in range(1, 9)}
    assert lin_q == {"<v1,v3>", "<v1,v7>", "<v2,v4>", "<v2,v8>", "<v3,v5>", "<v4,v6>", "<v5,v7>", "<v6,v8>"}


# --- broken lines ---------------------------------------------------------------


@pytest.mark.parametrize("label", sorted(T.FIG5_EXPANSIONS))
def test_broken_line_expansions(label, dp5_space):
    got = T.theta_expand(dp5_space.point(f"v{label[1:]}"), T.FIG5_POINT)
    assert got == LaurentPoly.parse(T.FIG5_EXPANSIONS[label], 2)


def test_broken_line_count_and_shape(dp5_space):
    lines = T.broken_lines(dp5_space.point("v3"), T.FIG5_POINT)
    assert len(lines) == 3
    for line in lines:
        assert line.monomials[0] == ((1, 0), 1)
        assert len(line.walls) == len(line.monomials) - 1


def test_broken_lines_reject_endpoints_on_walls(dp5_space):
    with pytest.raises(T.NonGenericError):
        T.broken_lines(dp5_space.point("v1"), (-1, 0))


def test_theta_of_a_cone_point_is_a_cluster_monomial():
    exps = chart_expansions("T123", "lambda-mu")
    for i in range(1, 9):
        a, b = V12_RAYS[f"v{i}"], V12_RAYS[f"v{i % 8 + 1}"]
        n = tuple(x + y for x, y in zip(a, b))
        assert T.theta_evaluate_3d(n) == exps[f"x{i}"] * exps[f"x{i % 8 + 1}"]


# --- polars and vertices --------------------------------------------------------


def test_pentagon_is_self_polar(dp5_space):
    P = T.hull(dp5_space, [f"v{i}" for i in range(1, 6)])
    assert P.lattice_points == frozenset(DP5_RAYS.values()) | {(0, 0)}
    assert T.polar(dp5_space, P.lattice_points).lattice_points == P.lattice_points
    assert len(T.vertices(P)) == 5
    assert T.is_reflexive(P)


def test_degree_two_polygon(dp5_space):
    pts = [(-1, 2), (-1, 1), (-1, 0), (0, 1), (0, -1), (1, 0), (1, -1), (2, -1), (0, 0)]
    P = T.hull(dp5_space, pts)
    assert P.lattice_points == frozenset(pts)
    assert T.vertices(P) == [(-1, 2), (2, -1)]
    Q = T.polar(dp5_space, P.lattice_points)
    assert Q.lattice_points == frozenset({(-1, -1), (0, 0), (1, 1)})
    assert T.is_reflexive(P) and T.is_reflexive(Q)
    assert [T.theta_degree(dp5_space, m, Q) for m in [(-1, -1), (1, 1), (-1, 0), (0, -1)]] == [1, 1, 2, 2]


def test_polar_requires_boundedness(dp5_space):
    with pytest.raises(T.UnboundedError):
        T.polar(dp5_space, ["v1"])


def test_first_polar_pair(v12_space):
    xs = [f"x{i}" for i in range(1, 9)]
    P, Q = T.hull(v12_space, xs), T.hull(v12_space, xs + ["q1", "q2"])
    assert P.lattice_points == frozenset(V12_RAYS[f"v{i}"] for i in range(1, 9)) | {(0, 0, 0)}
    assert Q.lattice_points == frozenset(V12_RAYS.values()) | {(0, 0, 0)}
    assert T.polar(v12_space, P.lattice_points).lattice_points == Q.lattice_points
    assert T.polar(v12_space, Q.lattice_points).lattice_points == P.lattice_points


def test_second_polar_pair(v12_space):
    P = T.hull(v12_space, ["q1", "q2"])
    Q = T.hull(v12_space, T.octagon_vertices(v12_space))
    assert len(P.lattice_points) == 3 and len(Q.lattice_points) == 17
    assert T.polar(v12_space, P.lattice_points).lattice_points == Q.lattice_points
    assert T.polar(v12_space, Q.lattice_points).lattice_points == P.lattice_points


def test_polar_points_are_integral_halfspace_members(v12_space):
    xs = [f"x{i}" for i in range(1, 9)]
    for n in T.polar_points(v12_space, xs):
        assert all(T.pairing(v12_space, n, m) >= -1 for m in xs)


@pytest.mark.slow
def test_threefold_vertices_and_reflexivity(v12_space):
    xs = [f"x{i}" for i in range(1, 9)]
    P = T.hull(v12_space, xs)
    assert T.vertices(P) == sorted(V12_RAYS[f"v{i}"] for i in range(1, 9))
    bigon = T.hull(v12_space, ["q1", "q2"])
    assert T.vertices(bigon) == sorted([V12_RAYS["w1"], V12_RAYS["w2"]])
    octagon = T.hull(v12_space, T.octagon_vertices(v12_space))
    assert T.vertices(octagon) == sorted(T.octagon_vertices(v12_space))
    assert all(T.is_reflexive(X) for X in (P, bigon, octagon))


# --- classification --------------------------------------------------------------


def test_classification_counts(reflexive_classes):
    assert len(reflexive_classes) == 23
    assert all(c.boundary_points + reflexive_classes[c.dual_index].boundary_points == 10 for c in reflexive_classes)
    assert all(reflexive_classes[c.dual_index].dual_index == i for i, c in enumerate(reflexive_classes))


def test_self_dual_classes(reflexive_classes):
    self_dual = [c for i, c in enumerate(reflexive_classes) if c.dual_index == i]
    assert len(self_dual) == 3
    assert all(c.boundary_points == 5 for c in self_dual)
    assert sorted(c.n_vertices for c in self_dual) == [3, 4, 5]


def test_classification_shape(reflexive_classes):
    assert Counter(c.n_vertices for c in reflexive_classes) == {3: 11, 2: 6, 4: 5, 5: 1}
    assert sum(c.boundary_points == 8 for c in reflexive_classes) == 1
    pentagon = frozenset(DP5_RAYS.values()) | {(0, 0)}
    assert any(frozenset(c.representative) == pentagon for c in reflexive_classes)


def test_symmetries_preserve_pairing(dp5_space):
    maps = T.dp5_symmetries()
    assert len(maps) == 10
    rays = [dp5_space.point(f"v{i}") for i in range(1, 6)]
    for f in maps:
        for a in rays:
            for b in rays:
                assert T.pairing(dp5_space, f(a), f(b)) == T.pairing(dp5_space, a, b)


def test_relabelling_is_piecewise_linear(dp5_space):
    rot = T.dp5_symmetries()[2]
    assert rot((2, 1)) == tuple(Fraction(x) for x in rot((2, 1)))
