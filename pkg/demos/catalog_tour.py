"""Run every built-in fixture through the check runner and tabulate verdicts.

    python3 demos/catalog_tour.py
"""

from slantsub import fixtures
from slantsub.scenario import from_dict, run

for name in fixtures.names():
    result = run(from_dict(fixtures.scenario(name)))
    counts = {v: sum(r.verdict == v for r in result.reports) for v in ("pass", "fail", "inapplicable")}
    print(f"{name:9s} exit {result.exit_code}  pass {counts['pass']:2d}  fail {counts['fail']}  n/a {counts['inapplicable']:2d}  {fixtures.describe(name)}")
    for r in result.reports:
        if r.verdict == "fail":
            print(f"          FAIL {r.name}: {r.reason}")
