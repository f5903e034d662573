"""Fan data shared by the scattering and tropical modules.

Two complete unimodular fans are used throughout.

* ``DP5``: the pentagon fan in the plane, rays v1..v5.
* ``V12``: a fan in three-space with rays v1..v8 and two extra rays w1, w2.
  Its coordinates are those of the chart (x1, q1, x3), with the ray of a
  cluster variable equal to minus its leading exponent in that chart.

Cyclic indices are 1-based throughout; :func:`cyc` is the only place where the
wrap-around happens.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Vector = tuple[int, ...]


def cyc(i: int, n: int) -> int:
    """Reduce a 1-based index into ``1..n``."""
    return (i - 1) % n + 1


def parity_label(i: int) -> int:
    """1 for odd indices, 2 for even ones; selects q1/q2 and w1/w2."""
    return 1 if i % 2 else 2


DP5_RAYS: dict[str, Vector] = {
    "v1": (-1, 0),
    "v2": (0, -1),
    "v3": (1, 0),
    "v4": (1, 1),
    "v5": (0, 1),
}
DP5_CONES: tuple[tuple[str, str], ...] = tuple((f"v{i}", f"v{cyc(i + 1, 5)}") for i in range(1, 6))

V12_RAYS: dict[str, Vector] = {
    "v1": (-1, 0, 0),
    "v2": (0, 1, 0),
    "v3": (0, 0, -1),
    "v4": (1, 1, 0),
    "v5": (1, 0, 0),
    "v6": (1, 1, 1),
    "v7": (0, 0, 1),
    "v8": (0, 1, 1),
    "w1": (0, -1, 0),
    "w2": (1, 2, 1),
}


def _v12_cones() -> tuple[tuple[str, str, str], ...]:
    cones = []
    for i in range(1, 9):
        cones.append((f"v{cyc(i - 1, 8)}", f"v{i}", f"v{cyc(i + 1, 8)}"))
    for i in range(1, 9):
        cones.append((f"v{i}", f"w{parity_label(i)}", f"v{cyc(i + 2, 8)}"))
    return tuple(cones)


V12_CONES = _v12_cones()

# theta-function label attached to each ray
THETA_LABEL: dict[str, str] = {f"v{i}": f"x{i}" for i in range(1, 9)} | {"w1": "q1", "w2": "q2"}
RAY_OF_THETA: dict[str, str] = {v: k for k, v in THETA_LABEL.items()}


def det(rows: Sequence[Sequence[int]]) -> int:
    """Integer determinant of a 2x2 or 3x3 matrix."""
    if len(rows) == 2:
        (a, b), (c, d) = rows
        return a * d - b * c
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def cross(u: Sequence[int], v: Sequence[int]) -> Vector:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def dot(u: Sequence, v: Sequence):
    return sum(a * b for a, b in zip(u, v))


def primitive(v: Sequence[int]) -> Vector:
    from math import gcd

    g = 0
    for x in v:
        g = gcd(g, int(x))
    if g == 0:
        raise ValueError("zero vector has no primitive direction")
    return tuple(int(x) // g for x in v)


def solve_in_basis(basis: Sequence[Sequence[int]], point: Sequence) -> tuple[Fraction, ...]:
    """Coefficients ``a`` with ``sum(a_k * basis[k]) == point`` (exact, by Cramer's rule)."""
    n = len(basis)
    cols = [list(b) for b in basis]
    m = [[cols[j][i] for j in range(n)] for i in range(n)]
    D = det(m)
    if D == 0:
        raise ValueError("degenerate cone basis")
    out = []
    for j in range(n):
        mj = [row[:] for row in m]
        for i in range(n):
            mj[i][j] = point[i]
        out.append(Fraction(det(mj)) / D)
    return tuple(out)
