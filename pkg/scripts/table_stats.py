"""Ordered-triple class counts, magnitudes and build times for every type up to a rank.

    python scripts/table_stats.py --max-rank 8 --json stats.json
"""
from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass

from chevalley import RootSystem, full_table, parse_type
from chevalley.verify import constant_matrix


@dataclass
class StatsConfig:
    max_rank: int = 8
    repeats: int = 3
    json_out: str | None = None


@dataclass
class TypeStats:
    name: str
    rank: int
    roots: int
    classes: int
    classes_per_r3: float
    magnitudes: dict
    seconds: float


def type_names(max_rank: int) -> list[str]:
    names = [f"A{n}" for n in range(1, max_rank + 1)]
    names += [f"{f}{n}" for f in "BC" for n in range(2, max_rank + 1)]
    names += [f"D{n}" for n in range(4, max_rank + 1)]
    names += [t for t in ("G2", "F4", "E6", "E7", "E8") if int(t[1]) <= max_rank]
    return names


def measure(name: str, cfg: StatsConfig) -> TypeStats:
    best = float("inf")
    for _ in range(cfg.repeats):
        t0 = time.perf_counter()
        sys = RootSystem(parse_type(name))
        table = full_table(sys)
        best = min(best, time.perf_counter() - t0)
    N = constant_matrix(sys, table)
    mags = Counter(abs(int(x)) for x in N.ravel() if x)
    return TypeStats(name, sys.rank, sys.nroots, len(table), len(table) / sys.rank ** 3,
                     dict(sorted(mags.items())), best)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--max-rank", type=int, default=StatsConfig.max_rank)
    p.add_argument("--repeats", type=int, default=StatsConfig.repeats)
    p.add_argument("--json", dest="json_out")
    cfg = StatsConfig(**vars(p.parse_args()))

    rows = [measure(n, cfg) for n in type_names(cfg.max_rank)]
    print(f"{'type':<5} {'roots':>5} {'classes':>8} {'/r^3':>6} {'ms':>8}  |N| histogram")
    for r in rows:
        print(f"{r.name:<5} {r.roots:>5} {r.classes:>8} {r.classes_per_r3:>6.2f} "
              f"{r.seconds * 1e3:>8.2f}  {r.magnitudes}")
    if cfg.json_out:
        with open(cfg.json_out, "w") as fh:
            json.dump([asdict(r) for r in rows], fh, indent=1)


if __name__ == "__main__":
    main()
