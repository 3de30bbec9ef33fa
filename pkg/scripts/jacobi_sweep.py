"""Jacobi identity over many types: exhaustive where cheap, random triples otherwise.

    python scripts/jacobi_sweep.py --samples 1000000 --threads 4
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from chevalley import RootSystem, full_table, parse_type
from chevalley.verify import VerifyConfig, check_jacobi

DEFAULT_TYPES = ("A1 A2 A3 A4 B2 B3 B4 C2 C3 C4 D4 D5 F4 G2 E6 E7 E8").split()


@dataclass
class SweepConfig:
    types: tuple = tuple(DEFAULT_TYPES)
    exhaustive_dim: int = 60
    samples: int = 1_000_000
    seed: int = 0
    threads: int = 0


def run(cfg: SweepConfig) -> bool:
    vcfg = VerifyConfig(jacobi_exhaustive_dim=cfg.exhaustive_dim, jacobi_samples=cfg.samples,
                        seed=cfg.seed, threads=cfg.threads)
    ok = True
    total = 0.0
    for name in cfg.types:
        t0 = time.perf_counter()
        sys = RootSystem(parse_type(name))
        res = check_jacobi(sys, full_table(sys), vcfg)
        dt = time.perf_counter() - t0
        total += dt
        ok &= res.ok
        print(f"{name:<8} dim {sys.dim:>3}  {res.summary()}  {dt:6.2f} s")
        for f in res.failures:
            print("   ", f)
    print(f"total {total:.2f} s, {'all clean' if ok else 'VIOLATIONS FOUND'}")
    return ok


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("types", nargs="*", default=list(DEFAULT_TYPES))
    p.add_argument("--exhaustive-dim", type=int, default=SweepConfig.exhaustive_dim)
    p.add_argument("--samples", type=int, default=SweepConfig.samples)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    p.add_argument("--threads", type=int, default=SweepConfig.threads)
    a = p.parse_args()
    cfg = SweepConfig(tuple(a.types), a.exhaustive_dim, a.samples, a.seed, a.threads)
    raise SystemExit(0 if run(cfg) else 1)


if __name__ == "__main__":
    main()
