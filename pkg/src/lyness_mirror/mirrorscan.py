"""Classical periods of Laurent polynomials and the survey of sub-potentials.

The classical period of a Laurent polynomial ``w`` is the series whose n-th
coefficient is the constant term of ``w**n``.  Two engines are provided.

* ``sparse``: dictionaries of exponent tuples, optionally pruning monomials
  that cannot return to the origin in the multiplications that remain.
* ``dense``: numpy arrays over the bounding box of ``N * Newt(w)``.  These use
  ``int64`` when a coefficient bound shows that no overflow is possible and
  Python integers (``dtype=object``) otherwise.

Newton polytopes are computed with an exact integer hull.
"""

from __future__ import annotations

import hashlib
import itertools
import json
import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from math import comb, gcd
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .exactalg import LaurentPoly
from .lyness import CLUSTER_NAMES, chart_expansions, dp2_potential, dp5_potential, f1_potential

log = logging.getLogger(__name__)

Exponent = tuple[int, ...]
Terms = dict[Exponent, int]


# ---------------------------------------------------------------------------
# Period series
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PeriodSeries:
    """Coefficients alpha_0..alpha_N of a classical period."""

    coeffs: tuple[int, ...]
    source: str = ""

    def __len__(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    @property
    def depth(self) -> int:
        return len(self.coeffs) - 1

    def head(self, n: int) -> tuple[int, ...]:
        """The first ``n + 1`` coefficients."""
        return self.coeffs[: n + 1]

    def to_json(self) -> dict:
        return {"coeffs": list(self.coeffs), "source": self.source}


def _int_terms(w: LaurentPoly | Mapping[Exponent, int]) -> Terms:
    if isinstance(w, LaurentPoly):
        if w.used_params():
            raise ValueError(f"period needs integer coefficients; found parameters {sorted(w.used_params())}")
        return w.to_int_dict()
    return {tuple(int(x) for x in e): int(c) for e, c in w.items() if c}


def period(w: LaurentPoly | Mapping[Exponent, int], N: int, *, method: str = "dense", prune: bool = True,
           source: str = "") -> PeriodSeries:
    """alpha_n = const(w**n) for n = 0..N."""
    if N < 0:
        raise ValueError("depth must be non-negative")
    terms = _int_terms(w)
    if not terms:
        return PeriodSeries((1,) + (0,) * N, source)
    if method == "sparse":
        coeffs = _period_sparse(terms, N, prune)
    elif method == "dense":
        coeffs = _period_dense(terms, N)
    else:
        raise ValueError(f"unknown period method {method!r}")
    return PeriodSeries(tuple(coeffs), source)


def _return_bounds(terms: Terms) -> list[tuple[Exponent, int]]:
    """Pairs (u, h) with <u, e> <= h for every exponent of ``w``.

    A monomial ``z^m`` of ``w^k`` can only contribute to a later constant term
    ``const(w^(k+r))`` if ``-m`` lies in ``r * Newt(w)``, so ``<u, -m> <= r*h``
    for every pair.  Facets are used when ``Newt(w)`` is full-dimensional;
    coordinate directions are always included.
    """
    dim = len(next(iter(terms)))
    bounds: dict[Exponent, int] = {}
    for i in range(dim):
        for s in (1, -1):
            u = tuple(s if j == i else 0 for j in range(dim))
            bounds[u] = max(s * e[i] for e in terms)
    if dim in (2, 3):
        poly = newton_polytope(terms)
        if poly.full_dimensional:
            for u, h in poly.facets:
                bounds[u] = h
    return sorted(bounds.items())


def _period_sparse(terms: Terms, N: int, prune: bool) -> list[int]:
    dim = len(next(iter(terms)))
    zero = (0,) * dim
    items = sorted(terms.items())
    bounds = _return_bounds(terms) if prune else []
    cur: Terms = {zero: 1}
    out = [1]
    for k in range(1, N + 1):
        nxt: Terms = {}
        for e, c in cur.items():
            for f, d in items:
                key = tuple(a + b for a, b in zip(e, f))
                nxt[key] = nxt.get(key, 0) + c * d
        remaining = N - k
        if prune:
            nxt = {e: c for e, c in nxt.items()
                   if c and all(-sum(a * b for a, b in zip(u, e)) <= remaining * h for u, h in bounds)}
        else:
            nxt = {e: c for e, c in nxt.items() if c}
        out.append(nxt.get(zero, 0))
        cur = nxt
    return out


def _period_dense(terms: Terms, N: int) -> list[int]:
    dim = len(next(iter(terms)))
    # the box must contain the origin even when the support does not
    lo = [min(0, min(e[i] for e in terms)) for i in range(dim)]
    hi = [max(0, max(e[i] for e in terms)) for i in range(dim)]
    shape = tuple(N * (h - l) + 1 for l, h in zip(lo, hi))
    origin = tuple(-N * l for l in lo)
    # every coefficient of w^k is bounded by (sum |c|)^k
    bound = sum(abs(c) for c in terms.values()) ** max(N, 1)
    dtype = np.int64 if bound < 2 ** 62 else object
    cur = np.zeros(shape, dtype=dtype)
    cur[origin] = 1
    out = [1]
    items = sorted(terms.items())
    for _ in range(N):
        nxt = np.zeros(shape, dtype=dtype)
        for f, c in items:
            src = tuple(slice(max(0, -s), n - max(0, s)) for s, n in zip(f, shape))
            dst = tuple(slice(max(0, s), n - max(0, -s)) for s, n in zip(f, shape))
            nxt[dst] += c * cur[src]
        cur = nxt
        out.append(int(cur[origin]))
    return out


def shift_series(p: PeriodSeries, s: int, N: int | None = None) -> PeriodSeries:
    """The period of ``w + s`` from that of ``w``.

    ``const((w + s)^n) = sum_k C(n, k) s^(n-k) const(w^k)``, the coefficient form
    of ``pi_w(t/(1 - s t)) / (1 - s t)``.
    """
    N = p.depth if N is None else N
    if N > p.depth:
        raise ValueError(f"cannot shift to depth {N}: series only has depth {p.depth}")
    a = p.coeffs
    coeffs = tuple(sum(comb(n, k) * s ** (n - k) * a[k] for k in range(n + 1)) for n in range(N + 1))
    tag = f"{p.source} shifted by {s}" if p.source else f"shifted by {s}"
    return PeriodSeries(coeffs, tag)


def apery(n: int) -> int:
    """sum_k C(n,k)^2 C(n+k,k)."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(comb(n, k) ** 2 * comb(n + k, k) for k in range(n + 1))


def apery2(n: int) -> int:
    """sum_k C(n,k)^2 C(n+k,k)^2."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return sum(comb(n, k) ** 2 * comb(n + k, k) ** 2 for k in range(n + 1))


def dp2_coefficient(n: int) -> int:
    """C(2n, n) C(4n, 2n), the period of the shifted degree-2 potential."""
    if n < 0:
        raise ValueError("n must be non-negative")
    return comb(2 * n, n) * comb(4 * n, 2 * n)


# ---------------------------------------------------------------------------
# Exact integer Newton polytopes
# ---------------------------------------------------------------------------


def _sub(a: Sequence[int], b: Sequence[int]) -> Exponent:
    return tuple(x - y for x, y in zip(a, b))


def _cross(u: Sequence[int], v: Sequence[int]) -> Exponent:
    return (u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0])


def _dot(u: Sequence[int], v: Sequence[int]) -> int:
    return sum(a * b for a, b in zip(u, v))


def _primitive(v: Sequence[int]) -> Exponent:
    g = 0
    for x in v:
        g = gcd(g, x)
    return tuple(x // g for x in v)


def _orient(a, b, c, p) -> int:
    return _dot(_cross(_sub(b, a), _sub(c, a)), _sub(p, a))


def _hull2(points: Sequence[Exponent]) -> list[Exponent]:
    """Vertices of a planar hull in counterclockwise order (collinear points dropped)."""
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def turn(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower: list[Exponent] = []
    for p in pts:
        while len(lower) >= 2 and turn(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Exponent] = []
    for p in reversed(pts):
        while len(upper) >= 2 and turn(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _hull3(pts: list[Exponent]) -> tuple[list[Exponent], list[tuple[Exponent, int]]] | None:
    """Incremental hull; returns (vertices, facets) or None when the points are coplanar."""
    p0 = pts[0]
    p1 = next((p for p in pts if p != p0), None)
    if p1 is None:
        return None
    d1 = _sub(p1, p0)
    p2 = next((p for p in pts if any(_cross(d1, _sub(p, p0)))), None)
    if p2 is None:
        return None
    p3 = next((p for p in pts if _orient(p0, p1, p2, p) != 0), None)
    if p3 is None:
        return None
    if _orient(p0, p1, p2, p3) > 0:
        p1, p2 = p2, p1
    # faces oriented so that interior points give a negative orientation
    faces = [(p0, p1, p2), (p0, p3, p1), (p1, p3, p2), (p2, p3, p0)]
    for p in pts:
        visible = [f for f in faces if _orient(*f, p) > 0]
        if not visible:
            continue
        edges = set()
        for a, b, c in visible:
            edges.update({(a, b), (b, c), (c, a)})
        horizon = [(a, b) for a, b in edges if (b, a) not in edges]
        faces = [f for f in faces if f not in visible] + [(a, b, p) for a, b in horizon]
    planes: dict[Exponent, int] = {}
    on_plane: dict[Exponent, set[Exponent]] = {}
    for a, b, c in faces:
        u = _primitive(_cross(_sub(b, a), _sub(c, a)))
        planes[u] = _dot(u, a)
    for u, h in planes.items():
        on_plane[u] = {p for p in pts if _dot(u, p) == h}
    incidence: dict[Exponent, int] = {}
    for members in on_plane.values():
        for p in members:
            incidence[p] = incidence.get(p, 0) + 1
    vertices = sorted(p for p, k in incidence.items() if k >= 3)
    return vertices, sorted(planes.items())


@dataclass(frozen=True)
class IntPolytope:
    """A lattice polytope given by its vertices, with primitive facet normals.

    ``facets`` lists pairs ``(u, h)`` with ``<u, x> <= h`` on the polytope.
    ``dim`` is the affine dimension.  Facets are only recorded when the
    polytope is full-dimensional.
    """

    ambient: int
    vertices: tuple[Exponent, ...]
    facets: tuple[tuple[Exponent, int], ...]
    dim: int

    @property
    def full_dimensional(self) -> bool:
        return self.dim == self.ambient

    @property
    def degenerate(self) -> bool:
        return not self.full_dimensional

    def contains(self, x: Sequence[int], strict: bool = False) -> bool:
        if not self.full_dimensional:
            raise ValueError("containment is only implemented for full-dimensional polytopes")
        if strict:
            return all(_dot(u, x) < h for u, h in self.facets)
        return all(_dot(u, x) <= h for u, h in self.facets)

    def is_fano(self) -> bool:
        """Full-dimensional, primitive vertices and the origin strictly inside."""
        if not self.full_dimensional:
            return False
        if any(_primitive(v) != v for v in self.vertices if any(v)):
            return False
        return all(h > 0 for _, h in self.facets)

    def is_reflexive(self) -> bool:
        """Every facet at lattice distance one from the origin."""
        return self.full_dimensional and all(h == 1 for _, h in self.facets)

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [list(v) for v in self.vertices],
            "facets": [{"normal": list(u), "offset": h} for u, h in self.facets],
            "fano": self.is_fano(),
            "degenerate": self.degenerate,
        }


IntPolytope3 = IntPolytope


def _affine_dim(pts: Sequence[Exponent]) -> int:
    if not pts:
        return -1
    rows = [list(_sub(p, pts[0])) for p in pts[1:]]
    rank = 0
    ncols = len(pts[0])
    rows = [r for r in rows if any(r)]
    for col in range(ncols):
        pivot = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                a, b = rows[rank][col], rows[i][col]
                rows[i] = [a * x - b * y for x, y in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def _extreme_points(pts: list[Exponent], dim: int) -> list[Exponent]:
    """Vertices of a lower-dimensional point set (dimension at most two)."""
    if dim <= 0:
        return pts[:1]
    if dim == 1:
        return [min(pts), max(pts)]
    # a plane: project along a coordinate that stays injective
    n = len(pts[0])
    if n == 2:
        return sorted(_hull2(pts))
    base = pts[0]
    d1 = next(_sub(p, base) for p in pts if p != base)
    d2 = next(_sub(p, base) for p in pts if any(_cross(d1, _sub(p, base))))
    normal = _cross(d1, d2)
    drop = next(i for i in range(3) if normal[i])
    keep = [i for i in range(3) if i != drop]
    proj = {tuple(p[i] for i in keep): p for p in pts}
    return sorted(proj[q] for q in _hull2(list(proj)))


def polytope_of_points(points: Iterable[Sequence[int]]) -> IntPolytope:
    pts = sorted({tuple(int(x) for x in p) for p in points})
    if not pts:
        raise ValueError("empty point set")
    ambient = len(pts[0])
    if ambient not in (2, 3):
        raise ValueError("only two- and three-dimensional polytopes are supported")
    dim = _affine_dim(pts)
    if dim < ambient:
        return IntPolytope(ambient, tuple(_extreme_points(pts, dim)), (), dim)
    if ambient == 2:
        verts = _hull2(pts)
        facets = []
        for a, b in zip(verts, verts[1:] + verts[:1]):
            u = _primitive((b[1] - a[1], a[0] - b[0]))
            facets.append((u, _dot(u, a)))
        return IntPolytope(2, tuple(sorted(verts)), tuple(sorted(facets)), 2)
    hull = _hull3(pts)
    assert hull is not None
    verts, facets = hull
    return IntPolytope(3, tuple(verts), tuple(facets), 3)


def newton_polytope(w: LaurentPoly | Mapping[Exponent, int]) -> IntPolytope:
    """The exact Newton polytope of ``w`` (two or three variables)."""
    return polytope_of_points(_int_terms(w).keys())


def is_fano(P: IntPolytope) -> bool:
    return P.is_fano()


# ---------------------------------------------------------------------------
# Potentials on the cluster variety
# ---------------------------------------------------------------------------

THETA_NAMES: tuple[str, ...] = CLUSTER_NAMES


@lru_cache(maxsize=1)
def _t123_terms() -> dict[str, Terms]:
    """x1..x8, q1, q2 in the chart T123 at lam = mu = 1, as integer dictionaries."""
    return {k: v.to_int_dict() for k, v in chart_expansions("T123", "plain").items()}


def _theta_terms(label: str) -> Terms:
    """Terms of a cluster monomial such as ``"x1"`` or ``"x1*x2"`` in T123."""
    base = _t123_terms()
    out: Terms = {(0, 0, 0): 1}
    for factor in label.split("*"):
        factor = factor.strip()
        if factor not in base:
            raise KeyError(f"unknown theta function {factor!r}")
        nxt: Terms = {}
        for e, c in out.items():
            for f, d in base[factor].items():
                key = (e[0] + f[0], e[1] + f[1], e[2] + f[2])
                nxt[key] = nxt.get(key, 0) + c * d
        out = {e: c for e, c in nxt.items() if c}
    return out


@dataclass(frozen=True)
class PotentialSpec:
    """A weighted sum of theta functions restricted to T123 at lam = mu = 1."""

    coeffs: tuple[tuple[str, int], ...]
    label: str = ""

    @classmethod
    def from_eps(cls, eps: Sequence[int]) -> PotentialSpec:
        eps = tuple(int(e) for e in eps)
        if len(eps) != 10 or any(e not in (0, 1) for e in eps):
            raise ValueError(f"eps must be a 0/1 vector of length 10, got {eps}")
        return cls(tuple((n, 1) for n, e in zip(THETA_NAMES, eps) if e))

    @classmethod
    def from_bits(cls, bits: str) -> PotentialSpec:
        return cls.from_eps([int(b) for b in bits])

    @classmethod
    def from_text(cls, text: str) -> PotentialSpec:
        """Parse ``"x1 + x2 + q1"`` or ``"2*x1 + x1*x2"``."""
        out = []
        for part in text.replace(" ", "").split("+"):
            if not part:
                continue
            head, _, rest = part.partition("*")
            if head.isdigit():
                out.append((rest, int(head)))
            else:
                out.append((part, 1))
        return cls(tuple(out))

    @property
    def eps(self) -> tuple[int, ...] | None:
        """The 0/1 vector when the potential is a plain sum of distinct generators."""
        names = dict(self.coeffs)
        if any(c != 1 for c in names.values()) or any(n not in THETA_NAMES for n in names):
            return None
        return tuple(int(n in names) for n in THETA_NAMES)

    @property
    def bits(self) -> str | None:
        e = self.eps
        return None if e is None else "".join(map(str, e))

    def text(self) -> str:
        if not self.coeffs:
            return "0"
        return " + ".join(n if c == 1 else f"{c}*{n}" for n, c in self.coeffs)

    def terms(self) -> Terms:
        out: Terms = {}
        for name, c in self.coeffs:
            for e, d in _theta_terms(name).items():
                out[e] = out.get(e, 0) + c * d
        return {e: c for e, c in out.items() if c}

    def laurent(self) -> LaurentPoly:
        return LaurentPoly.from_terms(3, self.terms())


def eps_vectors() -> list[tuple[int, ...]]:
    """All 1024 coefficient vectors, in lexicographic order."""
    return list(itertools.product((0, 1), repeat=10))


def w_Q() -> PotentialSpec:
    return PotentialSpec.from_eps((1,) * 10)


def w_P() -> PotentialSpec:
    return PotentialSpec.from_eps((1,) * 8 + (0, 0))


def w_P_bigon() -> PotentialSpec:
    """q1 + q2, the potential of the two-vertex polytope."""
    return PotentialSpec.from_eps((0,) * 8 + (1, 1))


NAMED_POTENTIALS = {
    "dp5": lambda: dp5_potential(),
    "dp2": lambda: dp2_potential(),
    "f1": lambda: f1_potential(),
    "wQ": lambda: w_Q().laurent(),
    "wP": lambda: w_P().laurent(),
    "wP2": lambda: w_P_bigon().laurent(),
}


def named_potential(name: str) -> LaurentPoly:
    """``dp5``, ``dp2``, ``f1``, ``wQ``, ``wP``, ``wP2``, ``eps:<10 bits>`` or an explicit sum."""
    if name in NAMED_POTENTIALS:
        return NAMED_POTENTIALS[name]()
    if name.startswith("eps:"):
        return PotentialSpec.from_bits(name[4:]).laurent()
    if name.startswith("octagon:"):
        return octagon_spec(name[8:]).laurent()
    return PotentialSpec.from_text(name).laurent()


TABLE4: dict[str, str] = {
    "V_12": "x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8 + q1 + q2",
    "V_14": "x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8 + q1",
    "V_16": "x1 + x2 + x3 + x4 + x5 + x6 + x7 + x8",
    "V_18": "x1 + x2 + x3 + x4 + x5 + x6 + x7",
    "V_22": "x1 + x2 + x3 + x4 + x5 + x6",
    "MM_2,9": "x1 + x2 + x3 + x6 + q1 + q2",
    "MM_2,12": "x1 + x2 + x3 + x5 + x6 + x7",
    "MM_2,13": "x1 + x2 + x3 + x4 + x6 + x7",
    "MM_2,14": "x1 + x2 + x3 + x4 + x5 + x7 + q1",
    "MM_2,16": "x1 + x2 + x3 + x6 + q1",
    "MM_2,17": "x1 + x2 + x3 + x5 + x6",
    "MM_2,20": "x1 + x2 + x3 + x4 + x7",
    "MM_2,21": "x1 + x2 + x3 + x5 + x7",
    "MM_2,22": "x1 + x2 + x3 + x6",
    "MM_3,7": "x1 + x2 + x4 + x6 + x7",
    "MM_3,10": "x1 + x2 + x3 + x5 + x7 + q1",
    "MM_3,12": "x1 + x3 + x6 + x7 + q1",
    "MM_3,13": "x1 + x5 + q2",
    "MM_3,15": "x1 + x4 + x5 + x7",
    "MM_3,20": "x1 + x4 + x6",
}

V22_EXTRA: tuple[str, ...] = (
    "x1 + x2 + x5 + x6 + q2",
    "x1 + x2 + x3 + x4 + x5 + q2",
    "x1 + x2 + q1 + q2",
    "x1 + x2 + x3 + x4 + x5 + x7",
    "x1 + x2 + x3 + x4 + x6 + q2",
)


def table4_eps(name: str) -> tuple[int, ...]:
    e = PotentialSpec.from_text(TABLE4[name]).eps
    assert e is not None
    return e


# ---------------------------------------------------------------------------
# The two-face octagon labellings
# ---------------------------------------------------------------------------

# Interior points of the two octagonal faces, read row by row from the face
# drawings (top row left to right, then the bottom row).
OCTAGON_FACES: tuple[tuple[str, str, str, str], ...] = (("x1", "x3", "x7", "x5"), ("x8", "x2", "x6", "x4"))

# Face labellings by maximal Minkowski decomposition: "2222" is the sum of four
# segments; "3223" and "2332" are the two sums of two triangles and a segment.
# Up to the dihedral symmetry of the cluster variety the pairs of face
# labellings fall into three orbits, represented below.
OCTAGON_PATTERNS: dict[str, tuple[tuple[int, ...], tuple[int, ...]]] = {
    "2222/2222": ((2, 2, 2, 2), (2, 2, 2, 2)),
    "3223/2332": ((3, 2, 2, 3), (2, 3, 3, 2)),
    "2222/3223": ((2, 2, 2, 2), (3, 2, 2, 3)),
}


def octagon_spec(pattern: str | tuple[tuple[int, ...], tuple[int, ...]]) -> PotentialSpec:
    """Vertices x_i x_(i+1) with coefficient 1, interior points x_i weighted by ``pattern``."""
    if isinstance(pattern, str):
        if pattern in OCTAGON_PATTERNS:
            pattern = OCTAGON_PATTERNS[pattern]
        else:
            a, _, b = pattern.partition("/")
            pattern = (tuple(int(c) for c in a), tuple(int(c) for c in b))
    coeffs: dict[str, int] = {}
    for face, values in zip(OCTAGON_FACES, pattern):
        if len(values) != 4:
            raise ValueError(f"each face needs four coefficients, got {values}")
        coeffs.update(zip(face, values))
    items = [(f"x{i}*x{i % 8 + 1}", 1) for i in range(1, 9)]
    items += [(f"x{i}", coeffs[f"x{i}"]) for i in range(1, 9)]
    label = "/".join("".join(map(str, v)) for v in pattern)
    return PotentialSpec(tuple(items), label)


def octagon_potentials(depth: int = 10) -> dict[str, PeriodSeries]:
    """Periods of the three octagon labellings; raises if two coincide."""
    out = {}
    for name in OCTAGON_PATTERNS:
        spec = octagon_spec(name)
        out[name] = period(spec.terms(), depth, source=f"octagon {name}")
    heads = [p.coeffs for p in out.values()]
    if len(set(heads)) != len(heads):
        raise ValueError("octagon labellings do not have pairwise distinct periods")
    return out


# ---------------------------------------------------------------------------
# Quantum-period fixtures
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FixtureEntry:
    name: str
    coeffs: tuple[int, ...]
    source: str = ""


def load_fixture(path: str | Path | None = None) -> list[FixtureEntry]:
    """Read ``[{"name", "coeffs", "source"?}, ...]``; ``None`` loads the bundled file.

    A top-level object with a ``"periods"`` list is also accepted.
    """
    if path is None:
        text = resources.files("lyness_mirror").joinpath("data/quantum_periods.json").read_text()
    else:
        text = Path(path).read_text()
    data = json.loads(text)
    default_source = ""
    if isinstance(data, dict):
        default_source = data.get("source", "")
        data = data["periods"]
    out = []
    for row in data:
        coeffs = tuple(int(c) for c in row["coeffs"])
        if not coeffs or coeffs[0] != 1:
            raise ValueError(f"fixture entry {row.get('name')!r} must start with 1")
        out.append(FixtureEntry(str(row["name"]), coeffs, row.get("source", default_source)))
    return out


def fixture_digest(entries: Sequence[FixtureEntry]) -> str:
    blob = json.dumps([[e.name, list(e.coeffs)] for e in entries], sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()


# ---------------------------------------------------------------------------
# Survey
# ---------------------------------------------------------------------------


@dataclass
class Bucket:
    head: tuple[int, ...]
    eps_vectors: list[tuple[int, ...]]
    matches: list[str] = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "period_head": list(self.head),
            "eps_vectors": ["".join(map(str, e)) for e in self.eps_vectors],
            "match": sorted(self.matches),
        }


@dataclass
class SurveyReport:
    depth: int
    total: int
    fano_count: int
    degenerate_count: int
    buckets: list[Bucket]
    distinct_by_depth: list[int]
    fixture_names: list[str] = field(default_factory=list)
    table4: dict[str, bool] = field(default_factory=dict)

    @property
    def distinct_periods(self) -> int:
        return len(self.buckets)

    @property
    def stable_depth(self) -> int:
        """Smallest depth from which the number of distinct prefixes no longer changes."""
        final = self.distinct_by_depth[-1]
        d = len(self.distinct_by_depth) - 1
        while d > 0 and self.distinct_by_depth[d - 1] == final:
            d -= 1
        return d

    @property
    def matched_buckets(self) -> list[Bucket]:
        return [b for b in self.buckets if b.matches]

    def bucket_of(self, eps: Sequence[int]) -> Bucket | None:
        eps = tuple(eps)
        return next((b for b in self.buckets if eps in b.eps_vectors), None)

    def to_json(self) -> dict:
        return {
            "depth": self.depth,
            "total": self.total,
            "fano_count": self.fano_count,
            "degenerate_count": self.degenerate_count,
            "distinct_periods": self.distinct_periods,
            "distinct_by_depth": self.distinct_by_depth,
            "stable_depth": self.stable_depth,
            "fixture": self.fixture_names,
            "matched_buckets": len(self.matched_buckets),
            "table4": self.table4,
            "buckets": [b.to_json() for b in self.buckets],
        }


def _survey_one(args: tuple[tuple[int, ...], int]) -> tuple[tuple[int, ...], bool, bool, tuple[int, ...] | None]:
    eps, depth = args
    terms = PotentialSpec.from_eps(eps).terms()
    if not terms:
        return eps, False, True, None
    poly = newton_polytope(terms)
    if not poly.is_fano():
        return eps, False, poly.degenerate, None
    return eps, True, False, period(terms, depth).coeffs


def _fixture_matches(head: tuple[int, ...], entry: FixtureEntry) -> bool:
    n = min(len(head), len(entry.coeffs))
    return head[:n] == entry.coeffs[:n]


def survey(depth: int = 10, fixture: Sequence[FixtureEntry] | None = None, workers: int = 1) -> SurveyReport:
    """Scan every 0/1 combination of the ten generators."""
    jobs = [(e, depth) for e in eps_vectors()]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_survey_one, jobs, chunksize=32))
    else:
        results = [_survey_one(j) for j in jobs]
    groups: dict[tuple[int, ...], list[tuple[int, ...]]] = {}
    fano = degenerate = 0
    for eps, ok, degen, head in results:
        degenerate += degen
        if ok:
            fano += 1
            groups.setdefault(head, []).append(eps)
    buckets = [Bucket(h, sorted(v)) for h, v in sorted(groups.items())]
    distinct = [len({b.head[: d + 1] for b in buckets}) for d in range(depth + 1)]
    report = SurveyReport(depth, len(jobs), fano, degenerate, buckets, distinct)
    if fixture:
        report.fixture_names = [e.name for e in fixture]
        for b in buckets:
            b.matches = [e.name for e in fixture if _fixture_matches(b.head, e)]
        for name in TABLE4:
            if name in report.fixture_names:
                b = report.bucket_of(table4_eps(name))
                report.table4[name] = b is not None and name in b.matches
    return report


# ---------------------------------------------------------------------------
# Verification report
# ---------------------------------------------------------------------------

GOLDEN_PERIODS: dict[str, tuple[int, ...]] = {
    "dp5": (1, 0, 10, 30, 270, 1560, 11350, 77700),
    "wQ": (1, 0, 48, 600, 13176, 276480, 6259800, 146064240),
    "wP": (1, 0, 24, 192, 2904, 40320, 611520, 9515520),
    "wP2": (1, 0, 8, 24, 240, 1440, 11960, 89040),
}


def _check(name: str, ok: bool, witness: object = None) -> dict:
    return {"identity_name": name, "status": "pass" if ok else "fail", "witness": None if ok else witness}


def verify_periods(depth: int = 10) -> list[dict]:
    report = []
    for name, want in GOLDEN_PERIODS.items():
        got = period(named_potential(name), len(want) - 1).coeffs
        report.append(_check(f"period of {name} starts {want[:4]}", got == want, list(got)))
    base = period(named_potential("dp5"), depth)
    got = shift_series(base, 3).coeffs
    report.append(_check("period of dP5 potential + 3 is the Apery series", got == tuple(apery(n) for n in range(depth + 1)), list(got)))
    base = period(named_potential("wQ"), depth)
    got = shift_series(base, 5).coeffs
    report.append(_check("period of w_Q + 5 is the squared Apery series", got == tuple(apery2(n) for n in range(depth + 1)), list(got)))
    got = period(named_potential("dp2") + 12, 8).coeffs
    report.append(_check("period of the degree-2 potential + 12 is C(2n,n) C(4n,2n)",
                         got == tuple(dp2_coefficient(n) for n in range(9)), list(got)))
    try:
        octagon_potentials(depth)
        report.append(_check("the three octagon labellings have distinct periods", True))
    except ValueError as exc:
        report.append(_check("the three octagon labellings have distinct periods", False, str(exc)))
    return report


def verify_survey(depth: int = 10, workers: int = 1) -> list[dict]:
    fixture = load_fixture()
    report = survey(depth, fixture, workers=workers)
    table_buckets = {name: report.bucket_of(table4_eps(name)) for name in TABLE4}
    heads = {b.head for b in table_buckets.values() if b is not None}
    v22 = {report.bucket_of(PotentialSpec.from_text(t).eps).head for t in V22_EXTRA + (TABLE4["V_22"],)}
    return [
        _check("705 of 1024 Newton polytopes are Fano", report.fano_count == 705, report.fano_count),
        _check("46 distinct periods", report.distinct_periods == 46, report.distinct_periods),
        _check("Table 4 potentials are Fano with 20 distinct periods", len(heads) == 20, len(heads)),
        _check("five further V22 potentials share the V22 period", len(v22) == 1, len(v22)),
        _check("bundled quantum-period heads match their Table 4 rows", all(report.table4.values()), report.table4),
    ]
