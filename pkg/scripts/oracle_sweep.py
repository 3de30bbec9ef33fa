"""Compare the computed constants with matrix commutators for every supported classical type.

    python scripts/oracle_sweep.py
"""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from chevalley import RootSystem, full_table, parse_type
from chevalley.oracle import SUPPORTED, frame, k_basis_by_orbit, verify_against_oracle


@dataclass
class OracleConfig:
    families: str = "AC"
    show_mismatches: int = 5


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--families", default=OracleConfig.families)
    p.add_argument("--show-mismatches", type=int, default=OracleConfig.show_mismatches)
    cfg = OracleConfig(**vars(p.parse_args()))
    failed = False
    for tag in cfg.families:
        for n in SUPPORTED[tag]:
            t0 = time.perf_counter()
            sys = RootSystem(parse_type(f"{tag}{n}"))
            fr = frame(tag, n)
            rep = verify_against_oracle(sys, None, full_table(sys), fr)
            _, conflicts = k_basis_by_orbit(fr, sys)
            dt = time.perf_counter() - t0
            failed |= not rep.ok or bool(conflicts)
            print(f"{tag}{n:<3} checked {rep.checked:>5}  mismatches {len(rep.mismatches)}  "
                  f"orbit conflicts {len(conflicts)}  {dt * 1e3:7.1f} ms")
            for m in rep.mismatches[:cfg.show_mismatches]:
                print("   ", m)
    raise SystemExit(1 if failed else 0)


if __name__ == "__main__":
    main()
