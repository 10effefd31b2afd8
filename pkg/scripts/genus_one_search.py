"""Genus-one, one-Puiseux-pair survivors up to a degree bound.

Runs the search with a configurable filter set and prints the survivors
alongside the classification labels, followed by a tally of rejection
reasons.  Example:

    python3 scripts/genus_one_search.py --d-max 300 --threads 4
"""

import argparse
import time
from collections import Counter
from dataclasses import dataclass, field

from curvebound.classify import classify_genus_one


@dataclass
class SearchConfig:
    d_max: int = 300
    threads: int = 1
    show_rejected: bool = False
    extra: dict = field(default_factory=dict)


def run(cfg: SearchConfig) -> None:
    t0 = time.perf_counter()
    c = classify_genus_one(cfg.d_max, threads=cfg.threads)
    elapsed = time.perf_counter() - t0
    print(f"d <= {cfg.d_max}: {len(c.survivors)} survivors, {len(c.rejected)} rejected ({elapsed:.2f}s)")
    for s in c.survivors:
        print(f"  {str(s.triple):<18} {s.family:<16} {s.realizable}")
    tally = Counter(why for _, why in c.rejected)
    print("rejections by failing filters:")
    for why, n in sorted(tally.items()):
        print(f"  {why:<20} {n}")
    if cfg.show_rejected:
        for t, why in c.rejected:
            print(f"  rejected {t} by {why}")
    print("unexplained:", c.unexplained or "none")
    print("missing:", list(c.missing) or "none")


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--d-max", type=int, default=SearchConfig.d_max)
    ap.add_argument("--threads", type=int, default=SearchConfig.threads)
    ap.add_argument("--show-rejected", action="store_true")
    a = ap.parse_args()
    run(SearchConfig(a.d_max, a.threads, a.show_rejected))


if __name__ == "__main__":
    main()
