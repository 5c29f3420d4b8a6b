"""Normalized heads of positive braid closures next to the unknot series."""

from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from typing import List

from qhomfly.algebra import render_laurent
from qhomfly.analysis import head, unknot_head_series
from qhomfly.diagram import parse_braid


@dataclass
class HeadConfig:
    words: List[str] = field(default_factory=lambda: ["2: 1 1", "2: 1 1 1", "2: 1 1 1 1 1", "3: 1 1 2 2"])
    max_color: int = 2


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--word", action="append", help="braid word (repeatable)")
    ap.add_argument("--max-color", type=int, default=HeadConfig.max_color)
    args = ap.parse_args()
    cfg = HeadConfig(args.word or HeadConfig().words, args.max_color)
    for r in range(1, cfg.max_color + 1):
        ref = unknot_head_series(r)
        print(f"r = {r}: unknot series " + " | ".join(render_laurent(ref.slice(k), "a") for k in range(r)))
        for w in cfg.words:
            b = parse_braid(w)
            prune = all(b.letters.count(k) >= 2 for k in set(b.letters))
            h = head(b, r, prune=prune)
            slices = " | ".join(render_laurent(s, "a") for s in h.head)
            print(f"  {w:<16} d_r={h.d_r!s:>5} f_r={h.f_r!s:>5} match={h.agrees_with(ref)}  {slices}")


if __name__ == "__main__":
    main()
