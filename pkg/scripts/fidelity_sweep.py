"""Relative error of sparse PLDiv against dense PLDiv across dimensions, sizes and seeds."""
import argparse

from pldiv import pldiv, pldiv_sparse
from pldiv.synthgen import mixture_cloud

ap = argparse.ArgumentParser()
ap.add_argument("--dims", default="2,4,6,8")
ap.add_argument("--sizes", default="1000,2000,4000")
ap.add_argument("--seeds", type=int, default=3)
ap.add_argument("--epsilons", default="0.95,10")
args = ap.parse_args()

eps_list = [float(e) for e in args.epsilons.split(",")]
print("dim      n  seed  " + "  ".join(f"eps={e:<6g}" for e in eps_list))
for dim in (int(d) for d in args.dims.split(",")):
    for n in (int(s) for s in args.sizes.split(",")):
        for seed in range(args.seeds):
            c = mixture_cloud(n, dim, seed)
            dense = pldiv(c)
            errs = [abs(pldiv_sparse(c, e) - dense) / dense for e in eps_list]
            print(f"{dim:3d} {n:6d} {seed:5d}  " + "  ".join(f"{r:10.2e}" for r in errs))
