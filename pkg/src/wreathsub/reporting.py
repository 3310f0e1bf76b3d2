"""Report dictionaries and their json/text rendering."""

from __future__ import annotations

import json
from typing import Iterable, List


def check(name: str, ok: bool, witness=None) -> dict:
    return {"name": name, "pass": bool(ok), "witness": witness}


def checks_report(checks: Iterable[dict], **extra) -> dict:
    report = dict(extra)
    report["checks"] = list(checks)
    return report


def all_passed(report: dict) -> bool:
    return all(c["pass"] for c in report.get("checks", ()))


def _witness(w) -> str:
    return json.dumps(w, separators=(",", ":"))


def _checks_text(checks: List[dict]) -> List[str]:
    lines = []
    for c in checks:
        status = "PASS" if c["pass"] else "FAIL"
        line = f"  {status}  {c['name']}"
        if not c["pass"] and c.get("witness") is not None:
            line += "  witness=" + _witness(c["witness"])
        lines.append(line)
    failed = sum(not c["pass"] for c in checks)
    if failed:
        lines.append(f"{failed} of {len(checks)} checks failed")
    else:
        lines.append(f"all checks passed ({len(checks)} checks)")
    return lines


def render_text(report: dict) -> str:
    lines = []
    if "basis" in report:
        lines.append(f"rank: {report['rank']}")
        for i, b in enumerate(report["basis"]):
            lines.append(f"  b{i} = {b['word']}    (coset {b['coset']}, generator {b['generator']})")
    if "transversals" in report:
        lines.append(f"alpha0: {report['alpha0']}")
        for a, T in enumerate(report["transversals"]):
            lines.append(f"T_{a}: " + " | ".join(T))
        for a, ds in enumerate(report["double_cosets"]):
            for d in ds:
                lines.append(f"  D_{a}: rep {d['rep']}  length {d['length']}  cosets {d['cosets']}")
    if "free_basis" in report:
        counts = report["counts"]
        lines.append(f"index: {counts['index']}")
        lines.append(f"alpha0: {report['alpha0']}")
        lines.append(f"double cosets per factor: {counts['double_cosets']}")
        lines.append(f"finite factors: {len(report['factors'])}")
        for fac in report["factors"]:
            lines.append(f"  factor {fac['alpha']} at u = {fac['u']}: order {fac['order']}, "
                         f"generators {', '.join(fac['generators'])}")
        lines.append(f"|Z| = {counts['free_rank']}")
        for z in report["free_basis"]:
            lines.append(f"  z = {z['word']}    (coset {z['coset']}, factor {z['alpha']})")
        if "euler_characteristic" in counts:
            lines.append(f"euler characteristic: {counts['euler_characteristic']}")
    if "tokens" in report:
        lines.append(f"word: {report['word']}")
        lines.append("tokens: " + (" ".join(t["token"] for t in report["tokens"]) or "(empty)"))
        lines.append(f"evaluates to: {report['evaluates_to']}")
    if "f" in report and "p" in report:
        lines.append(f"p = {report['p']}")
        for i, w in enumerate(report["f"]):
            lines.append(f"  f({i}) = {w}")
    if "sections" in report:
        for sec in report["sections"]:
            lines.append(f"[{sec['name']}]")
            lines.extend(_checks_text(sec["checks"]))
    if "checks" in report:
        lines.extend(_checks_text(report["checks"]))
    return "\n".join(lines) + "\n"


def render_report(report: dict, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "text":
        return render_text(report)
    raise ValueError(f"unknown format {fmt!r}")
