"""Lyness recurrences, their periods, and the sixteen cluster charts.

Run with ``python3 notebooks/01_lyness_and_charts.py``.
"""

from __future__ import annotations

from lyness_mirror import lyness as L

# %% The d = 2 recurrence returns to its start after five steps.
orbit = L.iterate(L.RecurrenceSpec(2), 8)
for i, term in enumerate(orbit.terms, 1):
    print(f"x{i} = {term.to_text()}")
print("period:", orbit.period)

# %% d = 3 has period 8, and stays periodic with the two parameters switched on.
for mode in L.MODES:
    print(mode, L.iterate(L.RecurrenceSpec(3, mode=mode), 12).period)

# %% d = 4 stops being Laurent; the first offending index is reported.
print("d=4 first non-Laurent term:", L.iterate(L.RecurrenceSpec(4), 40).laurent_failure_index)

# %% Every chart expresses all ten cluster variables as Laurent polynomials.
exps = L.chart_expansions("T123", "lambda-mu")
for name, value in exps.items():
    print(f"{name:>3} = {value.to_text()}")
bad = [i["identity_name"] for i in L.verify_charts() if i["status"] != "pass"]
print("charts failing the ten equations:", bad or "none")
