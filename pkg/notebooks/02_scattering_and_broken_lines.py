"""Wall-crossing consistency and theta functions from broken lines.

Run with ``python3 notebooks/02_scattering_and_broken_lines.py``.
"""

from __future__ import annotations

from lyness_mirror import scattering as S
from lyness_mirror import tropical as T
from lyness_mirror.exactalg import LaurentPoly

# %% The pentagon diagram: five walls, one joint, trivial monodromy.
for row in S.check_consistency(S.builtin_dp5()):
    print(row["joint"], row["walls"], row["consistent"])

# %% The 24-wall diagram is consistent with symbolic parameters...
v12 = S.builtin_v12()
print("24 walls consistent:", S.is_consistent(v12))

# %% ...but not with the wall functions as typeset for d34 and d67.
for name, text in S.V12_PRINTED_VARIANTS.items():
    broken = v12.replace_function(name, LaurentPoly.parse(text, 3))
    print(f"{name} = {text}: consistent={S.is_consistent(broken)}")

# %% Theta functions of the five pentagon rays, seen from a generic point near v1.
space = T.builtin_dp5_space()
for label in T.FIG5_EXPANSIONS:
    n = space.point("v" + label[1:])
    lines = T.broken_lines(n, T.FIG5_POINT)
    print(f"theta_{label} = {T.theta_expand(n, T.FIG5_POINT).to_text()}  ({len(lines)} broken lines)")

# %% Polar duality on the ten-ray space: the octagon and its decorated partner.
V = T.builtin_v12_space()
xs = [f"x{i}" for i in range(1, 9)]
P, Q = T.hull(V, xs), T.hull(V, xs + ["q1", "q2"])
print("polar(P) == Q:", T.polar(V, P.lattice_points).lattice_points == Q.lattice_points)
print("lattice points of P:", len(P.lattice_points), "of Q:", len(Q.lattice_points))
