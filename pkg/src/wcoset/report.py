"""Report serialization: canonical JSON, CSV flattening, aligned text.

JSON output is byte-stable for identical inputs: keys are sorted, indentation
fixed, and a trailing newline appended, so parsing and re-rendering an emitted
report reproduces it byte for byte.
"""

from __future__ import annotations

import json

from .verify import Report


def report_obj(report: Report, command: str | None = None) -> dict:
    per_degree = []
    for p in report.per_degree:
        if p.dim_right is None:
            per_degree.append({"degree": p.degree, "dim": p.dim_left,
                               "equal": True})
        else:
            per_degree.append({"degree": p.degree, "dim_left": p.dim_left,
                               "dim_right": p.dim_right, "equal": p.equal})
    return {
        "command": command or report.suite,
        "inputs": {k: str(v) for k, v in sorted(report.inputs.items())},
        "items": [{"id": i.id, "expected": i.expected, "computed": i.computed,
                   "equal": i.equal} for i in report.items],
        "per_degree": per_degree,
        "status": report.status,
    }


def render_json(obj: dict) -> bytes:
    return (json.dumps(obj, indent=2, sort_keys=True) + "\n").encode("utf-8")


def render_csv(obj: dict) -> bytes:
    rows = obj.get("per_degree", [])
    two_sided = any("dim_left" in r for r in rows)
    if two_sided:
        lines = ["degree,dim_left,dim_right,equal"]
        for r in rows:
            lines.append(f"{r['degree']},{r['dim_left']},{r['dim_right']},"
                         f"{str(r['equal']).lower()}")
    else:
        lines = ["degree,dim"]
        for r in rows:
            lines.append(f"{r['degree']},{r['dim']}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def render_text(obj: dict) -> bytes:
    lines = [f"suite: {obj['command']}"]
    if obj["inputs"]:
        lines.append("inputs: " + ", ".join(f"{k}={v}" for k, v in obj["inputs"].items()))
    if obj["items"]:
        width = max(len(i["id"]) for i in obj["items"])
        for i in obj["items"]:
            mark = "ok " if i["equal"] else "FAIL"
            lines.append(f"  [{mark}] {i['id']:<{width}}  expected={i['expected']}"
                         f"  computed={i['computed']}")
    if obj["per_degree"]:
        for r in obj["per_degree"]:
            if "dim" in r:
                lines.append(f"  degree {r['degree']:>2}: dim {r['dim']}")
            else:
                mark = "ok " if r["equal"] else "FAIL"
                lines.append(f"  [{mark}] degree {r['degree']:>2}: "
                             f"{r['dim_left']} | {r['dim_right']}")
    lines.append(f"status: {obj['status']}")
    return ("\n".join(lines) + "\n").encode("utf-8")


def emit_report(report: Report, fmt: str = "json", command: str | None = None) -> bytes:
    obj = report_obj(report, command)
    if fmt == "json":
        return render_json(obj)
    if fmt == "csv":
        return render_csv(obj)
    if fmt == "text":
        return render_text(obj)
    raise ValueError(f"unknown format {fmt!r}")
