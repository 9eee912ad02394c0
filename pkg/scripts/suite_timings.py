"""Wall-clock cost of the randomized suites per operad, for sizing CI bounds.

    python scripts/suite_timings.py --arity 4 --trials 200 --maps 25
"""

import argparse
import sys
import time
from dataclasses import dataclass

from operadiff.axioms import DEFAULT_SEED, check_dc_axioms, check_lambda_axioms, check_monad_laws, check_naturality
from operadiff.operads import operad_by_name
from operadiff.ppoly import check_cdc_properties


@dataclass
class Config:
    operads: tuple = ("com", "ass", "lie", "abullet")
    arity: int = 4
    trials: int = 200
    maps: int = 25
    cdc_trials: int = 100
    seed: int = DEFAULT_SEED


def timed(fn):
    t = time.perf_counter()
    rep = fn()
    return rep.ok, time.perf_counter() - t


def main(cfg: Config) -> int:
    suites = {
        "dc": lambda P: check_dc_axioms(P, cfg.arity, cfg.trials, cfg.seed),
        "lambda": lambda P: check_lambda_axioms(P, cfg.arity, cfg.trials, cfg.seed),
        "monad": lambda P: check_monad_laws(P, cfg.arity, cfg.trials // 4, cfg.seed),
        "naturality": lambda P: check_naturality(P, cfg.maps, cfg.arity, 5, cfg.seed),
        "cdc": lambda P: check_cdc_properties(P, cfg.cdc_trials, cfg.seed),
    }
    print(f"{'operad':<22}" + "".join(f"{s:>12}" for s in suites))
    failures = 0
    totals = dict.fromkeys(suites, 0.0)
    for name in cfg.operads:
        P = operad_by_name(name)
        cells = []
        for s, fn in suites.items():
            ok, dt = timed(lambda: fn(P))
            totals[s] += dt
            failures += not ok
            cells.append(f"{dt:>10.2f}{'s ' if ok else 's!'}")
        print(f"{P.name:<22}" + "".join(cells))
    print(f"{'total':<22}" + "".join(f"{totals[s]:>10.2f}s " for s in suites))
    return 1 if failures else 0


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--arity", type=int, default=Config.arity)
    ap.add_argument("--trials", type=int, default=Config.trials)
    ap.add_argument("--maps", type=int, default=Config.maps)
    ap.add_argument("--seed", type=int, default=Config.seed)
    a = ap.parse_args()
    sys.exit(main(Config(arity=a.arity, trials=a.trials, maps=a.maps, seed=a.seed)))
