"""Exact JSON and CSV encodings of reports and survivor tables.

Rationals are written as "num/den" strings and integers as JSON
integers; no float ever reaches the output.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .classify import CSV_COLUMNS, CandidateTriple, Classification, SearchRow, SurvivorTable
from .obstruct import CheckResult, CurveHypothesis, ObstructionReport, Witness
from .semigroup import GeneralSingularity, NumericalSemigroup, SimplePairSingularity

SCHEMA_VERSION = "1"


def encode_number(x: Any) -> Any:
    if x is None or isinstance(x, bool):
        return x
    if isinstance(x, int):
        return x
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    raise TypeError(f"cannot encode {x!r} exactly")


def decode_number(v: Any) -> Any:
    if v is None or isinstance(v, int):
        return v
    if isinstance(v, str):
        num, _, den = v.partition("/")
        return Fraction(int(num), int(den)) if den else int(num)
    raise ValueError(f"not an exact number: {v!r}")


def singularity_to_dict(s) -> dict:
    if isinstance(s, SimplePairSingularity):
        return {"type": "pair", "p": s.p, "q": s.q, "delta": s.delta, "mbar": s.mbar}
    return {
        "type": "semigroup",
        "generators": list(s.semigroup.generators),
        "delta": s.delta,
        "mbar": s.mbar,
    }


def singularity_from_dict(obj: dict):
    if obj["type"] == "pair":
        return SimplePairSingularity(obj["p"], obj["q"])
    return GeneralSingularity(NumericalSemigroup(tuple(obj["generators"])), obj.get("mbar"))


def report_to_dict(report: ObstructionReport) -> dict:
    h = report.hypothesis
    return {
        "schema_version": SCHEMA_VERSION,
        "hypothesis": {
            "d": h.d,
            "g": h.g,
            "singularities": [singularity_to_dict(s) for s in h.sings],
        },
        "checks": [
            {
                "name": c.name,
                "status": c.status,
                "witnesses": [
                    {
                        "indices": [encode_number(i) for i in w.indices],
                        "lhs": encode_number(w.lhs),
                        "bound_lo": encode_number(w.bound_lo),
                        "bound_hi": encode_number(w.bound_hi),
                    }
                    for w in c.witnesses
                ],
            }
            for c in report.checks
        ],
        "verdict": report.verdict,
    }


def report_from_dict(obj: dict) -> ObstructionReport:
    if obj.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {obj.get('schema_version')!r}")
    hyp = obj["hypothesis"]
    h = CurveHypothesis(hyp["d"], hyp["g"], tuple(singularity_from_dict(s) for s in hyp["singularities"]))
    checks = tuple(
        CheckResult(
            c["name"],
            c["status"],
            tuple(
                Witness(
                    tuple(decode_number(i) for i in w["indices"]),
                    decode_number(w["lhs"]),
                    decode_number(w["bound_lo"]),
                    decode_number(w["bound_hi"]),
                )
                for w in c["witnesses"]
            ),
        )
        for c in obj["checks"]
    )
    report = ObstructionReport(h, checks)
    if report.verdict != obj["verdict"]:
        raise ValueError("stored verdict disagrees with check statuses")
    return report


def dumps(obj: Any) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def report_to_json(report: ObstructionReport) -> str:
    return dumps(report_to_dict(report))


def report_from_json(text: str) -> ObstructionReport:
    return report_from_dict(json.loads(text))


def report_to_csv(report: ObstructionReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("check", "status", "indices", "lhs", "bound_lo", "bound_hi"))
    for c in report.checks:
        if not c.witnesses:
            writer.writerow((c.name, c.status, "", "", "", ""))
        for w in c.witnesses:
            writer.writerow((
                c.name,
                c.status,
                " ".join(str(encode_number(i)) for i in w.indices),
                _cell(w.lhs),
                _cell(w.bound_lo),
                _cell(w.bound_hi),
            ))
    return buf.getvalue()


def _cell(x: Any) -> str:
    x = encode_number(x)
    return "" if x is None else str(x)


# -- survivor tables -----------------------------------------------------------


def survivors_to_csv(rows: list[SearchRow]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in rows:
        t = r.triple
        writer.writerow((
            t.d, t.p, t.q, t.g,
            r.status("theorem_main"), r.status("bmy"), r.status("multiplicity"), r.status("spectrum"),
            r.verdict,
        ))
    return buf.getvalue()


def survivors_from_csv(text: str) -> list[dict]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV header {reader.fieldnames}")
    out = []
    for row in reader:
        for key in ("d", "p", "q", "genus"):
            row[key] = int(row[key])
        out.append(row)
    return out


def table_to_dict(table: SurvivorTable, include_rejected: bool = False) -> dict:
    rows = table.rows if include_rejected else table.survivors
    return {
        "schema_version": SCHEMA_VERSION,
        "genus": table.g,
        "filters": list(table.filters),
        "rows": [
            {"d": r.triple.d, "p": r.triple.p, "q": r.triple.q,
             "checks": dict(r.statuses), "verdict": r.verdict}
            for r in rows
        ],
    }


def classification_to_dict(c: Classification) -> dict:
    def triple(t: CandidateTriple) -> dict:
        return {"p": t.p, "q": t.q, "d": t.d}

    return {
        "schema_version": SCHEMA_VERSION,
        "d_max": c.d_max,
        "survivors": [
            {**triple(s.triple), "family": s.family, "realizable": s.realizable}
            for s in c.survivors
        ],
        "missing": [{"p": p, "q": q, "d": d} for p, q, d in c.missing],
        "rejected": [{**triple(t), "reason": reason} for t, reason in c.rejected],
    }
