"""Ω_A and the low cells of T°(A) for the catalog algebras, at several weight bounds.

Shows where the filtered truncation settles: a cell is reported stable when
its dimension does not change from bound W to W + 1.

    python scripts/kahler_table.py --algebras dual,cubic,borel --weights 2,3,4,5 --degree 2
"""

import argparse
import sys
import time
from dataclasses import dataclass

from operadiff.adjoint import DUAL, FiniteSource, abullet_closed_dims, com_closed_dims, tcirc_presentation
from operadiff.catalog import ALGEBRAS
from operadiff.operads import ComOperad, PointedOperad


@dataclass
class Config:
    algebras: tuple = ("dual", "cubic", "ut2", "borel", "abelian", "module")
    weights: tuple = (2, 3, 4)
    degree: int = 2


def closed(A, D):
    if isinstance(A.operad, ComOperad):
        return com_closed_dims(A, D)
    if isinstance(A.operad, PointedOperad):
        return abullet_closed_dims(A, D)
    return None


def main(cfg: Config) -> int:
    print(f"{'algebra':<14} {'W':>2}  dims (d-degree 0..{cfg.degree})   stable        closed form   time")
    for key in cfg.algebras:
        A = ALGEBRAS[key]()
        ref = closed(A, cfg.degree)
        for W in cfg.weights:
            t = time.perf_counter()
            pres = tcirc_presentation(FiniteSource(A), DUAL, W, cfg.degree)
            dims = [pres.cell((k,)).dim for k in range(cfg.degree + 1)]
            stable = [pres.stable(k) for k in range(cfg.degree + 1)]
            dt = time.perf_counter() - t
            flag = "".join("s" if s else "-" for s in stable)
            print(f"{A.name:<14} {W:>2}  {str(dims):<24} {flag:<12} {str(ref):<13} {dt:.2f}s")
    return 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--algebras", default=",".join(Config.algebras))
    ap.add_argument("--weights", default=",".join(map(str, Config.weights)))
    ap.add_argument("--degree", type=int, default=Config.degree)
    a = ap.parse_args()
    sys.exit(main(Config(tuple(a.algebras.split(",")), tuple(int(w) for w in a.weights.split(",")), a.degree)))
