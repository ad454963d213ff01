"""Long-tail outlier sweep; prints medians and seed means per outlier count.

Pass a larger seed count (e.g. 200) to see the saturation of PLDiv past ~20 outliers.
"""
import sys
from pathlib import Path

from pldiv import studies

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
res = studies.run_longtail_study(seeds=seeds, metrics="pldiv")
out = Path("results")
out.mkdir(exist_ok=True)
(out / "longtail.json").write_text(res.to_json() + "\n")
print(res.table, "", *res.verdict_lines(), sep="\n")
for case, mean in res.summary["pldiv_means"].items():
    print(f"{case:14s} mean {mean:.4f}")
sys.exit(res.exit_code)
