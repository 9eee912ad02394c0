"""Cell dimensions of T°(S(P,V)) against S(P,V×V), with the closed-form counts.

    python scripts/tau_cells.py --operad lie --vars x,y --weight 4 --degree 2
"""

import argparse
import sys
import time
from dataclasses import dataclass
from math import comb
from pathlib import Path

from operadiff.adjoint import check_free_adjunction, tau_free_iso
from operadiff.operads import operad_by_name

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "tests"))
from oracles import lie_pair_cell_dim  # noqa: E402


@dataclass
class Config:
    operad: str = "com"
    vars: tuple = ("x", "y")
    weight: int = 4
    degree: int = 4
    triangles: bool = True


def closed_form(name: str, v: int, k: int, w: int):
    if name == "com":
        return comb(v + w - k - 1, w - k) * comb(v + k - 1, k)
    if name == "ass":
        return comb(w, k) * v ** w
    if name == "lie":
        return lie_pair_cell_dim(v, k, w)
    return None


def main(cfg: Config) -> int:
    P = operad_by_name(cfg.operad)
    t = time.perf_counter()
    _, cells = tau_free_iso(P, list(cfg.vars), cfg.weight, cfg.degree)
    dt = time.perf_counter() - t
    print(f"# {P.name}, V = {{{', '.join(cfg.vars)}}}, weight <= {cfg.weight}, d-degree <= {cfg.degree}")
    print(f"{'k':>3} {'w':>3} {'T°':>6} {'S(VxV)':>7} {'closed':>7} {'rank':>5}  iso")
    bad = 0
    for c in cells:
        k, w = c.key
        ref = closed_form(cfg.operad, len(cfg.vars), k, w)
        ok = c.iso and (ref is None or ref == c.target_dim)
        bad += not ok
        print(f"{k:>3} {w:>3} {c.source_dim:>6} {c.target_dim:>7} {str(ref):>7} {c.rank:>5}  {'yes' if ok else 'NO'}")
    print(f"# {len(cells)} cells in {dt:.2f}s")
    if cfg.triangles:
        rep = check_free_adjunction(P, list(cfg.vars), min(cfg.weight, 3), 1)
        print(f"# triangle identities: {'pass' if rep.ok else 'FAIL ' + ', '.join(rep.failed())}")
        bad += not rep.ok
    return 1 if bad else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--operad", default=Config.operad)
    ap.add_argument("--vars", default=",".join(Config.vars))
    ap.add_argument("--weight", type=int, default=Config.weight)
    ap.add_argument("--degree", type=int, default=Config.degree)
    ap.add_argument("--no-triangles", action="store_true")
    a = ap.parse_args()
    sys.exit(main(Config(a.operad, tuple(a.vars.split(",")), a.weight, a.degree, not a.no_triangles)))
