"""Eight labelled A/B pairs with every metric; writes results/pairs.json."""
import sys
from pathlib import Path

from pldiv import studies

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
res = studies.run_pairs_study(seeds=seeds, metrics="all")
out = Path("results")
out.mkdir(exist_ok=True)
(out / "pairs.json").write_text(res.to_json() + "\n")
print(res.table, "", *res.verdict_lines(), sep="\n")
print("consistency:", res.summary["consistency"])
sys.exit(res.exit_code)
