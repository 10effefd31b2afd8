"""Print the worked obstruction examples with their failing inequalities.

    python3 scripts/reproduce_examples.py [--dinv]
"""

import argparse
from dataclasses import dataclass

from curvebound.cli import report_to_table
from curvebound.obstruct import CHECK_ORDER, CurveHypothesis, ReportOptions, full_report


@dataclass(frozen=True)
class Example:
    label: str
    d: int
    g: int
    p: int
    q: int


EXAMPLES = (
    *(Example("degree 21, genus 1", 21, 1, p, q)
      for p, q in [(2, 379), (3, 190), (4, 127), (7, 64), (8, 55), (10, 43), (15, 28), (19, 22)]),
    Example("degree 7, genus 3", 7, 3, 4, 9),
    Example("degree 9, genus 8", 9, 8, 5, 11),
    Example("T(4,7) on a sextic", 6, 1, 4, 7),
    Example("BMY family, p = 11", 33, 1, 11, 100),
)


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--dinv", action="store_true", help="include the d-invariant cross-check")
    args = ap.parse_args()
    checks = set(CHECK_ORDER) if args.dinv else set(CHECK_ORDER) - {"dinvariant"}
    opts = ReportOptions(checks=frozenset(checks))
    for ex in EXAMPLES:
        print(f"== {ex.label}")
        print(report_to_table(full_report(CurveHypothesis.simple(ex.p, ex.q, ex.d, ex.g), opts)))


if __name__ == "__main__":
    main()
