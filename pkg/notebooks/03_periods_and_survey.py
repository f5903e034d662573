"""Classical periods, Apery numbers, and the scan over sub-potentials.

Run with ``python3 notebooks/03_periods_and_survey.py``; the survey takes a few seconds.
"""

from __future__ import annotations

from lyness_mirror import mirrorscan as M
from lyness_mirror.lyness import dp5_potential

# %% The pentagon potential shifted by 3 gives the Apery numbers for zeta(2).
base = M.period(dp5_potential(), 10)
print("period:", base.coeffs)
print("shifted:", M.shift_series(base, 3).coeffs)
print("apery:  ", tuple(M.apery(n) for n in range(11)))

# %% Each subset of the ten theta functions gives a potential; 705 have Fano Newton polytopes.
report = M.survey(8, M.load_fixture())
print("Fano:", report.fano_count, "distinct periods:", report.distinct_periods)
print("distinct periods by depth:", report.distinct_by_depth)

# %% Table rows land in twenty distinct buckets.
for name in M.TABLE4:
    bucket = report.bucket_of(M.table4_eps(name))
    print(f"{name:>8}  {bucket.head[:6]}  matched={bucket.matches}")

# %% Three decorated octagon potentials with distinct periods.
for pattern, series in M.octagon_potentials(8).items():
    print(pattern, series.coeffs)
