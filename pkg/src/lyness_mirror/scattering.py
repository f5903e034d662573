"""Walls, wall-crossing automorphisms and loop consistency of scattering diagrams.

Crossing a wall with primitive normal ``u`` and function ``f`` in the direction
of ``u`` acts on monomials by

    z^n  ->  z^n * f^(-<n, u>)

and the inverse automorphism is used when crossing against ``u``.  A diagram
is consistent when the composite of the crossings met by a small loop around
every codimension-2 cone (a joint) is the identity.  Because crossings are
ring automorphisms it is enough to test the coordinate monomials.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cmp_to_key, lru_cache
from typing import Mapping, Sequence

from .exactalg import LaurentFraction, LaurentPoly, param_eval
from .fans import DP5_RAYS, V12_CONES, V12_RAYS, THETA_LABEL, cross, dot, primitive

Vector = tuple[int, ...]


@dataclass(frozen=True)
class Wall:
    """A codimension-one cone carrying a wall function."""

    support: tuple[Vector, ...]
    normal: Vector
    function: LaurentPoly
    name: str = ""
    checked: bool = field(default=True, compare=False, repr=False)

    def __post_init__(self) -> None:
        if not self.checked:
            return
        for r in self.support:
            if dot(r, self.normal) != 0:
                raise ValueError(f"wall {self.name}: ray {r} is not orthogonal to the normal {self.normal}")
        if primitive(self.normal) != tuple(self.normal):
            raise ValueError(f"wall {self.name}: normal {self.normal} is not primitive")
        if self.function.constant_term() != 1:
            raise ValueError(f"wall {self.name}: function must have constant term 1")
        for e in self.function.support():
            if dot(e, self.normal) != 0:
                raise ValueError(f"wall {self.name}: exponent {e} of the function does not lie in u-perp")

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "rays": [list(r) for r in self.support],
            "normal": list(self.normal),
            "function": self.function.to_text(),
        }


@dataclass
class ScatteringDiagram:
    dim: int
    walls: list[Wall]
    rays: dict[str, Vector] = field(default_factory=dict)
    cones: tuple[tuple[str, ...], ...] = ()

    def wall(self, name: str) -> Wall:
        for w in self.walls:
            if w.name == name:
                return w
        raise KeyError(name)

    def joints(self) -> list[Vector]:
        """The codimension-two cones: the origin in the plane, the rays in space."""
        if self.dim == 2:
            return [(0, 0)]
        return sorted({r for w in self.walls for r in w.support})

    def specialise(self, assignment: Mapping[str, int]) -> ScatteringDiagram:
        walls = [Wall(w.support, w.normal, param_eval(w.function, assignment, partial=True), w.name)
                 for w in self.walls]
        return ScatteringDiagram(self.dim, walls, dict(self.rays), self.cones)

    def replace_function(self, name: str, f: LaurentPoly) -> ScatteringDiagram:
        """Swap in a new function for one wall without validation (used for mutation tests)."""
        walls = [Wall(w.support, w.normal, f, w.name, checked=False) if w.name == name else w for w in self.walls]
        return ScatteringDiagram(self.dim, walls, dict(self.rays), self.cones)

    def to_json(self) -> dict:
        return {"dim": self.dim, "walls": [w.to_json() for w in self.walls]}


# ---------------------------------------------------------------------------
# Crossing
# ---------------------------------------------------------------------------


def _cross_poly(p: LaurentPoly, w: Wall, sign: int) -> tuple[LaurentPoly, int]:
    """theta(p) as ``(numerator, k)`` meaning ``numerator / f^k``."""
    f = w.function
    powers = {e: sign * dot(e, w.normal) for e in p.support()}
    k = max([0] + list(powers.values()))
    cache: dict[int, LaurentPoly] = {}
    out = LaurentPoly(p.dim)
    for e, c in p.terms.items():
        j = k - powers[e]
        if j not in cache:
            cache[j] = f ** j
        out = out + cache[j].shift(e) * LaurentPoly.constant(p.dim, c)
    return out, k


def wall_cross(x: LaurentFraction | LaurentPoly, w: Wall, sign: int = 1) -> LaurentFraction:
    """Apply the crossing automorphism of ``w`` (``sign=-1`` for the inverse)."""
    if sign not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    x = LaurentFraction.of(x)
    num, k = _cross_poly(x.num, w, sign)
    net = -k
    den: list[tuple[LaurentPoly, int]] = []
    for g, e in x.den:
        gnum, gk = _cross_poly(g, w, sign)
        den.append((gnum, e))
        net += gk * e
    if net > 0:
        num = num * w.function ** net
    elif net < 0:
        den.append((w.function, -net))
    return LaurentFraction(num, den)


def path_ordered_product(loop: Sequence[tuple[Wall, int]], probe: LaurentPoly | LaurentFraction) -> LaurentFraction:
    """Apply the crossings of ``loop`` to ``probe`` in order (first crossing first)."""
    x = LaurentFraction.of(probe)
    for w, s in loop:
        x = wall_cross(x, w, s)
    return x


# ---------------------------------------------------------------------------
# Loops around joints
# ---------------------------------------------------------------------------


def _transverse_basis(v: Vector) -> tuple[tuple[Fraction, ...], tuple[Fraction, ...]]:
    """A basis (b1, b2) of the plane orthogonal to ``v`` with b1 x b2 a positive multiple of v."""
    trial = (1, 0, 0) if abs(v[0]) <= max(abs(v[1]), abs(v[2])) else (0, 1, 0)
    b1 = cross(v, trial)
    b2 = cross(v, b1)
    # v x b1 points along b2 up to sign; choose b2 so that b1 x b2 = c v with c > 0
    if dot(cross(b1, b2), v) < 0:
        b2 = tuple(-c for c in b2)
    return tuple(Fraction(c) for c in b1), tuple(Fraction(c) for c in b2)


def _angle_cmp(a: tuple, b: tuple) -> int:
    """Exact counterclockwise angle comparison of plane vectors, starting at the positive x-axis."""

    def half(p: tuple) -> int:
        return 0 if (p[1] > 0 or (p[1] == 0 and p[0] > 0)) else 1

    ha, hb = half(a), half(b)
    if ha != hb:
        return ha - hb
    c = a[0] * b[1] - a[1] * b[0]
    return -1 if c > 0 else (1 if c < 0 else 0)


def _raw_loop_signs(diagram: ScatteringDiagram, joint: Vector) -> list[tuple[Wall, int]]:
    entries = []
    if diagram.dim == 2:
        for w in diagram.walls:
            (r,) = w.support
            tangent = (-r[1], r[0])
            entries.append((tuple(r), w, 1 if dot(tangent, w.normal) > 0 else -1))
    else:
        b1, b2 = _transverse_basis(joint)
        for w in diagram.walls:
            if tuple(joint) not in [tuple(r) for r in w.support]:
                continue
            other = next(r for r in w.support if tuple(r) != tuple(joint))
            p = (dot(other, b1), dot(other, b2))
            tangent = cross(joint, other)
            s = dot(tangent, w.normal)
            if s == 0:
                raise ValueError(f"wall {w.name} is not transverse to the loop around {joint}")
            entries.append((p, w, 1 if s > 0 else -1))
    entries.sort(key=cmp_to_key(lambda a, b: _angle_cmp(a[0], b[0])))
    return [(w, s) for _, w, s in entries]


@lru_cache(maxsize=1)
def pinned_orientation() -> int:
    """The global orientation factor that makes the pentagon loop the identity.

    Crossings are composed first-met-first-applied.  Only one of the two
    global orientation choices closes the pentagon loop; that choice is then
    used for every diagram.
    """
    diagram = builtin_dp5()
    working = []
    for factor in (1, -1):
        loop = [(w, s * factor) for w, s in _raw_loop_signs(diagram, (0, 0))]
        probes = [LaurentPoly.var(i, 2) for i in range(2)]
        if all(path_ordered_product(loop, p) == p for p in probes):
            working.append(factor)
    if len(working) != 1:
        raise RuntimeError(f"pentagon loop does not pin the orientation: {working}")
    return working[0]


def joint_loop(diagram: ScatteringDiagram, joint: Vector) -> list[tuple[Wall, int]]:
    """Walls around ``joint`` in counterclockwise order, with crossing signs.

    The raw sign is that of the rate of change of ``<gamma(t), u>`` along the
    loop, multiplied by :func:`pinned_orientation`.
    """
    factor = pinned_orientation()
    return [(w, s * factor) for w, s in _raw_loop_signs(diagram, joint)]


def check_joint(diagram: ScatteringDiagram, joint: Vector, reverse: bool = False) -> dict:
    loop = joint_loop(diagram, joint)
    if reverse:
        loop = [(w, -s) for w, s in reversed(loop)]
    failures = []
    for i in range(diagram.dim):
        probe = LaurentPoly.var(i, diagram.dim)
        image = path_ordered_product(loop, probe)
        if image != probe:
            failures.append({"probe": probe.to_text(), "composite": image.to_text()})
    return {
        "joint": list(joint),
        "walls": [w.name for w, _ in loop],
        "signs": [s for _, s in loop],
        "consistent": not failures,
        "offending": failures,
    }


def check_consistency(diagram: ScatteringDiagram, reverse: bool = False) -> list[dict]:
    """One report entry per joint; ``consistent`` is False where a loop fails."""
    return [check_joint(diagram, j, reverse) for j in diagram.joints()]


def is_consistent(diagram: ScatteringDiagram) -> bool:
    return all(r["consistent"] for r in check_consistency(diagram))


# ---------------------------------------------------------------------------
# The two built-in diagrams
# ---------------------------------------------------------------------------

DP5_FUNCTIONS = {1: "1 + z1", 2: "1 + z2", 3: "1 + z1", 4: "1 + z1*z2", 5: "1 + z2"}

V12_FUNCTIONS: dict[str, str] = {
    "d12": "1 + z2 + z1*z2",
    "d13": "1 + z1 + z3 + mu*z1*z3",
    "d1q": "1 + z2",
    "d23": "1 + lam*z2 + lam*z2*z3",
    "d24": "1 + z2 + z1*z2 + lam*z1*z2^2",
    "d2q": "1 + lam*z1*z2^2*z3",
    "d34": "1 + lam*z1*z2 + lam*mu*z1*z2*z3",
    "d35": "1 + z1 + z3 + mu*z1*z3",
    "d3q": "1 + lam*z2",
    "d45": "1 + z2 + z1*z2",
    "d46": "1 + lam*z1*z2 + lam*mu*z1*z2*z3 + lam*mu*z1^2*z2^2*z3",
    "d4q": "1 + lam*mu*z1*z2^2*z3",
    "d56": "1 + z2*z3 + mu*z1*z2*z3",
    "d57": "1 + z1 + z3 + mu*z1*z3",
    "d5q": "1 + z2",
    "d67": "1 + lam*z1*z2 + lam*mu*z1*z2*z3",
    "d68": "1 + z2*z3 + mu*z1*z2*z3 + lam*mu*z1*z2^2*z3^2",
    "d6q": "1 + lam*z1*z2^2*z3",
    "d78": "1 + lam*z2 + lam*z2*z3",
    "d71": "1 + z1 + z3 + mu*z1*z3",
    "d7q": "1 + lam*z2",
    "d81": "1 + z2*z3 + mu*z1*z2*z3",
    "d82": "1 + lam*z2 + lam*z2*z3 + lam*z2^2*z3",
    "d8q": "1 + lam*mu*z1*z2^2*z3",
}


# Two rows as typeset in the source table.  Their middle monomial z2*z3 is not
# orthogonal to the wall normal (1, -1, 0), so no wall can carry them; the
# mutation relations give z1*z2 instead (see derive_v12_wall_function).
V12_PRINTED_VARIANTS: dict[str, str] = {
    "d34": "1 + lam*z2*z3 + lam*mu*z1*z2*z3",
    "d67": "1 + lam*z2*z3 + lam*mu*z1*z2*z3",
}


def v12_wall_rays(name: str) -> tuple[str, str]:
    """Ray labels of a wall name such as ``"d68"`` or ``"d3q"``."""
    body = name[1:]
    a, b = body[0], body[1:]
    i = int(a)
    if b == "q":
        return f"v{i}", f"w{1 if i % 2 else 2}"
    return f"v{i}", f"v{int(b)}"


def builtin_dp5() -> ScatteringDiagram:
    walls = []
    for i in range(1, 6):
        r = DP5_RAYS[f"v{i}"]
        walls.append(Wall((r,), primitive((-r[1], r[0])), LaurentPoly.parse(DP5_FUNCTIONS[i], 2), f"f{i}"))
    return ScatteringDiagram(2, walls, dict(DP5_RAYS), ())


def builtin_v12(lam: int | None = None, mu: int | None = None) -> ScatteringDiagram:
    """The 24-wall diagram on the three-dimensional fan; ``None`` keeps a parameter symbolic."""
    walls = []
    for name, text in V12_FUNCTIONS.items():
        ra, rb = v12_wall_rays(name)
        a, b = V12_RAYS[ra], V12_RAYS[rb]
        walls.append(Wall((a, b), primitive(cross(a, b)), LaurentPoly.parse(text, 3), name))
    diagram = ScatteringDiagram(3, walls, dict(V12_RAYS), V12_CONES)
    assignment = {k: v for k, v in (("lam", lam), ("mu", mu)) if v is not None}
    return diagram.specialise(assignment) if assignment else diagram


def derive_v12_wall_function(name: str, mode: str = "lambda-mu") -> LaurentPoly:
    """Read a wall function off its mutation relation.

    For the wall spanned by rays a, b separating cones <a, b, c> and <a, b, d>,
    the exchange relation ``theta_c * theta_d = R(theta_a, theta_b)`` is
    computed in the chart of <a, b, c>.  Substituting the leading monomial
    ``z^(-ray)`` of each variable and clearing the monomial denominator gives
    the function.
    """
    from .lyness import chart_expansions

    ra, rb = v12_wall_rays(name)
    cones = [c for c in V12_CONES if ra in c and rb in c]
    if len(cones) != 2:
        raise ValueError(f"wall {name} is not shared by exactly two cones")
    sigma, other = cones
    c = next(r for r in sigma if r not in (ra, rb))
    d = next(r for r in other if r not in (ra, rb))
    chart = _chart_of_cone(sigma)
    exps = chart_expansions(chart, mode)
    coords = [THETA_LABEL[r] for r in _chart_order(sigma)]
    relation = exps[THETA_LABEL[c]] * exps[THETA_LABEL[d]]
    ia, ib = coords.index(THETA_LABEL[ra]), coords.index(THETA_LABEL[rb])
    ic = coords.index(THETA_LABEL[c])
    if any(e[ic] != 0 for e in relation.support()):
        raise ValueError(f"relation for wall {name} involves the mutated variable")
    leading = {ia: V12_RAYS[ra], ib: V12_RAYS[rb]}
    out = LaurentPoly(3)
    for e, coeff in relation.terms.items():
        exp = [0, 0, 0]
        for idx, ray in leading.items():
            for j in range(3):
                exp[j] -= e[idx] * ray[j]
        out = out + LaurentPoly.monomial(exp, coeff)
    corner = tuple(min(e[j] for e in out.support()) for j in range(3))
    return out.shift(tuple(-c for c in corner))


def _chart_order(cone: tuple[str, ...]) -> tuple[str, ...]:
    """Ray labels of a cone in the coordinate order of its chart."""
    if any(r.startswith("w") for r in cone):
        a, w, b = cone
        return (a, w, b)
    return cone


def _chart_of_cone(cone: tuple[str, ...]) -> str:
    labels = [THETA_LABEL[r] for r in _chart_order(cone)]
    if labels[1].startswith("q"):
        return f"T{labels[0][1:]}q{labels[2][1:]}"
    return "T" + "".join(lab[1:] for lab in labels)


# ---------------------------------------------------------------------------
# Verification report
# ---------------------------------------------------------------------------


def _check(name: str, ok: bool, witness: object = None) -> dict:
    return {"identity_name": name, "status": "pass" if ok else "fail", "witness": None if ok else witness}


def verify_scattering() -> list[dict]:
    """Consistency of both diagrams, the mutation derivation, and a negative control."""
    report = []
    dp5 = check_consistency(builtin_dp5())
    report.append(_check("pentagon diagram is consistent", all(r["consistent"] for r in dp5),
                         [r for r in dp5 if not r["consistent"]]))
    v12 = builtin_v12()
    joints = check_consistency(v12)
    report.append(_check("24-wall diagram is consistent over Z[lam, mu]", all(r["consistent"] for r in joints),
                         [r["joint"] for r in joints if not r["consistent"]]))
    bad = [n for n, f in V12_FUNCTIONS.items() if derive_v12_wall_function(n) != LaurentPoly.parse(f, 3)]
    report.append(_check("wall functions follow from the exchange relations", not bad, bad))
    broken = v12.replace_function("d34", LaurentPoly.parse(V12_PRINTED_VARIANTS["d34"], 3))
    report.append(_check("perturbing one wall breaks consistency", not is_consistent(broken)))
    return report
