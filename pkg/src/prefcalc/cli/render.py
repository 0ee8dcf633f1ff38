"""JSON and plain-table rendering of evaluation results.

Numbers are printed with nine decimals and trailing zeros trimmed, in both
formats, so the two encodings carry identical digits.
"""

from __future__ import annotations

import json
from typing import Any

import numpy as np

from prefcalc.axioms import AxiomReport
from prefcalc.cli.problem import BoundsResult, EvaluationReport
from prefcalc.preference import PreferenceInterval, PreferenceRelation
from prefcalc.similarity import SimilarityRelation


def fmt_num(x: float) -> str:
    s = f"{float(x):.9f}".rstrip("0").rstrip(".")
    return "0" if s in ("-0", "") else s


def dumps(obj: Any, indent: int = 2, _level: int = 0) -> str:
    """Deterministic JSON; scalar-only lists stay on one line."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)) and not isinstance(obj, float):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt_num(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {dumps(v, indent, _level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(dumps(v) for v in obj) + "]"
        items = [pad + dumps(v, indent, _level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def _table(rows: list[list[str]]) -> str:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]
    return "\n".join(lines)


def _valuation_text(val: dict[str, bool]) -> str:
    return " ".join(a if v else f"!{a}" for a, v in val.items())


def _matrix_rows(m: np.ndarray) -> list[list[str]]:
    n = m.shape[0]
    rows = [[""] + [f"w{j}" for j in range(n)]]
    for i in range(n):
        rows.append([f"w{i}"] + [fmt_num(x) for x in m[i]])
    return rows


# -- rank -----------------------------------------------------------------------


def rank_data(report: EvaluationReport) -> list[dict[str, Any]]:
    out = []
    for e in report.ranking:
        value: Any = e.value if e.upper is None else {"lower": e.value, "upper": e.upper}
        out.append({"world": e.world, "valuation": dict(e.valuation), "value": value})
    return out


def rank_table(report: EvaluationReport) -> str:
    interval = report.is_interval
    head = ["rank", "world", "valuation"] + (["lower", "upper"] if interval else ["value"])
    rows = [head]
    for k, e in enumerate(report.ranking, 1):
        vals = [fmt_num(e.value)] + ([fmt_num(e.upper)] if e.upper is not None else [])
        rows.append([str(k), str(e.world), _valuation_text(e.valuation)] + vals)
    return _table(rows)


# -- matrices -------------------------------------------------------------------------


def matrix_data(report: EvaluationReport, kind: str) -> dict[str, Any]:
    worlds = list(range(report.universe.size))
    if kind == "preference":
        pref = report.preference
        base: dict[str, Any] = {"kind": kind, "conorm": report.spec.profile.conorm_family.value, "worlds": worlds}
        if isinstance(pref, PreferenceInterval):
            t = pref.tightened()
            base["lower"] = t.lower.tolist()
            base["upper"] = t.upper.tolist()
            base["upper_raw_diagonal"] = np.diag(pref.upper).tolist()
        else:
            assert isinstance(pref, PreferenceRelation)
            base["matrix"] = pref.values.tolist()
        return base
    if kind == "similarity":
        sim = report.similarity
        if isinstance(sim, SimilarityRelation):
            return {"kind": kind, "tnorm": sim.tnorm_family.value, "worlds": worlds, "matrix": sim.values.tolist()}
        lo, hi = sim
        tn = report.spec.profile.tnorm_family.value
        return {"kind": kind, "tnorm": tn, "worlds": worlds, "lower": lo.tolist(), "upper": hi.tolist()}
    raise ValueError(f"unknown matrix kind {kind!r}")


def matrix_table(report: EvaluationReport, kind: str) -> str:
    data = matrix_data(report, kind)
    blocks = []
    for key in ("matrix", "lower", "upper"):
        if key in data:
            title = kind if key == "matrix" else f"{kind} ({key})"
            blocks.append(title + "\n" + _table(_matrix_rows(np.array(data[key]))))
    return "\n\n".join(blocks)


# -- bounds -----------------------------------------------------------------------------


def bounds_data(b: BoundsResult) -> dict[str, Any]:
    out: dict[str, Any] = {"of": b.of}
    if b.given is not None:
        out["given"] = b.given
    out["necessary"] = b.necessary
    out["possible"] = b.possible
    if b.resemblance is not None:
        out["resemblance"] = {"lower": b.resemblance[0], "upper": b.resemblance[1]}
    return out


def bounds_table(b: BoundsResult) -> str:
    rows = [["of", b.of]]
    if b.given is not None:
        rows.append(["given", b.given])
    rows += [["necessary", fmt_num(b.necessary)], ["possible", fmt_num(b.possible)]]
    if b.resemblance is not None:
        rows += [
            ["resemblance.lower", fmt_num(b.resemblance[0])],
            ["resemblance.upper", fmt_num(b.resemblance[1])],
        ]
    return _table(rows)


# -- check ----------------------------------------------------------------------------------


def check_data(reports: list[AxiomReport], notes: list[str], **header: Any) -> dict[str, Any]:
    return {
        "pass": all(r.passed for r in reports),
        **header,
        "reports": [r.to_dict() for r in reports],
        "notes": notes,
    }


def check_table(reports: list[AxiomReport], notes: list[str]) -> str:
    rows = [["status", "subject", "axiom", "witness"]]
    for r in reports:
        for c in r.checks:
            w = "" if c.witness is None else " ".join(
                fmt_num(x) if isinstance(x, float) else str(x) for x in c.witness
            )
            rows.append(["PASS" if c.passed else "FAIL", r.subject, c.axiom, w])
    text = _table(rows)
    all_notes = notes + [n for r in reports for n in r.notes]
    if all_notes:
        text += "\n\nnotes:\n" + "\n".join(f"- {n}" for n in all_notes)
    overall = "PASS" if all(r.passed for r in reports) else "FAIL"
    return text + f"\n\noverall: {overall}"
