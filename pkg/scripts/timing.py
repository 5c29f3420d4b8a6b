"""Wall-clock timing of the symmetric state sum on a few braid words."""

from __future__ import annotations

import argparse
import time
from dataclasses import dataclass, field
from typing import List, Tuple

from qhomfly.diagram import parse_braid
from qhomfly.statesum import HomflyConfig, clear_caches, colored_homfly


@dataclass
class TimingConfig:
    cases: List[Tuple[str, int]] = field(default_factory=lambda: [
        ("2: 1 1 1", 3), ("2: 1 1 1 1 1", 2), ("3: 1 -2 1 -2", 2), ("3: 1 2 1 2 1 2", 2)])
    workers: int = 1


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--workers", type=int, default=TimingConfig.workers)
    cfg = TimingConfig(workers=ap.parse_args().workers)
    for w, r in cfg.cases:
        clear_caches()
        t = time.perf_counter()
        colored_homfly(parse_braid(w), r, HomflyConfig(workers=cfg.workers))
        print(f"{w:<18} r={r}  {time.perf_counter() - t:7.2f}s")


if __name__ == "__main__":
    main()
