"""r^-2 maxdeg_q P_r for 2-braids from the closed formula."""

from __future__ import annotations

import argparse
from dataclasses import dataclass

from qhomfly.analysis import negative_twobraid_degree_formulas, slopes_from_polys
from qhomfly.oracles import t2_formula


@dataclass
class SlopeConfig:
    max_color: int = 4
    twists: tuple = (-4, -3, -2, 2, 3, 4)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-color", type=int, default=SlopeConfig.max_color)
    cfg = SlopeConfig(max_color=ap.parse_args().max_color)
    for c in cfg.twists:
        rep = slopes_from_polys({r: t2_formula(c, r) for r in range(1, cfg.max_color + 1)})
        row = ", ".join(f"r={e.r}: maxdeg {e.maxdeg_q}, ratio {e.ratio}" for e in rep.entries)
        print(f"T(2,{c}): {row}")
        if c < 0:
            forms = [negative_twobraid_degree_formulas(-c, r) for r in range(1, cfg.max_color + 1)]
            for name in forms[0]:
                hits = [f[name] == e.maxdeg_q for f, e in zip(forms, rep.entries)]
                print(f"    {name}: matches {hits}")


if __name__ == "__main__":
    main()
