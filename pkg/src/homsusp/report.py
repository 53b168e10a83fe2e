"""Report serialization: byte-stable JSON and a plain-text rendering."""

from __future__ import annotations

import json

from .analyzer import VERDICT_FIELDS, Report

UNKNOWN = "unknown"


def _value(v):
    return UNKNOWN if v is None else v


def report_to_dict(report: Report) -> dict:
    report.validate()
    return {
        "kind": report.kind,
        "dim": report.dim,
        "smooth": _value(report.smooth),
        "homogeneous_variety": _value(report.homogeneous_variety),
        "picard_rank": _value(report.picard_rank),
        "homogeneous_space": _value(report.homogeneous_space),
        "reasons": [{"field": r.field, "rule": r.rule, "detail": r.detail} for r in report.reasons],
        "assumptions": list(report.assumptions),
        "notes": list(report.notes),
        "details": report.details,
    }


def emit_report(report: Report, format: str = "text") -> str:
    if format == "json":
        return json.dumps(report_to_dict(report), indent=2, sort_keys=False, default=str) + "\n"
    if format != "text":
        raise ValueError(f"unknown format {format!r}")
    report.validate()
    lines = [f"{report.kind} of dimension {report.dim}", ""]
    labels = {
        "smooth": "Smooth",
        "homogeneous_variety": "Homogeneous variety",
        "picard_rank": "Picard rank",
        "homogeneous_space": "Homogeneous space",
    }
    for name in VERDICT_FIELDS:
        value = getattr(report, name)
        shown = UNKNOWN if value is None else ("yes" if value is True else "no" if value is False else value)
        lines.append(f"{labels[name]}: {shown}")
        for r in report.reasons:
            if r.field == name:
                lines.append(f"  [{r.rule}] {r.detail}")
        lines.append("")
    if "first_failing_level" in report.details:
        lines.append(f"first failing level: {report.details['first_failing_level']}")
    if "label" in report.details:
        lines.append(f"classification: {report.details['label']}")
    for a in report.assumptions:
        lines.append(f"assumption: {a}")
    for n in report.notes:
        lines.append(f"note: {n}")
    return "\n".join(lines).rstrip() + "\n"
