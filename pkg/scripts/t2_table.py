"""Compare the state sum with the closed 2-braid formula over a grid of (c, r)."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from qhomfly import BraidWord, colored_homfly, t2_formula


@dataclass
class GridConfig:
    c_min: int = -3
    c_max: int = 3
    r_max: int = 2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--c-min", type=int, default=GridConfig.c_min)
    ap.add_argument("--c-max", type=int, default=GridConfig.c_max)
    ap.add_argument("--r-max", type=int, default=GridConfig.r_max)
    cfg = GridConfig(**{k.replace("-", "_"): v for k, v in vars(ap.parse_args()).items()})
    print(f"{'c':>3} {'r':>2} {'equal':>6} {'seconds':>8}")
    for r in range(1, cfg.r_max + 1):
        for c in range(cfg.c_min, cfg.c_max + 1):
            b = BraidWord(2, tuple([1 if c > 0 else -1] * abs(c)))
            t = time.perf_counter()
            ok = colored_homfly(b, r) == t2_formula(c, r)
            print(f"{c:>3} {r:>2} {str(ok):>6} {time.perf_counter() - t:8.2f}")


if __name__ == "__main__":
    main()
