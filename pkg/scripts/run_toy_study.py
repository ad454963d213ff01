"""Toy ordering study D1..D4 with every metric; writes results/toy.json."""
import sys
from pathlib import Path

from pldiv import studies

seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 20
res = studies.run_toy_study(seeds=seeds, metrics="all")
out = Path("results")
out.mkdir(exist_ok=True)
(out / "toy.json").write_text(res.to_json() + "\n")
print(res.table, "", *res.verdict_lines(), sep="\n")
sys.exit(res.exit_code)
