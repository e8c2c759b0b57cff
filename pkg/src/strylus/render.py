"""Text and JSON reports of analysis results."""

from __future__ import annotations

import json

from .analyzer import AbstractState, AnalysisConfig, AnalysisResult
from .syntax import walk
from .values import value_to_json


def _label_key(label: str) -> int:
    return int(label[1:])


def state_to_json(s: AbstractState) -> dict | None:
    if not s.reachable:
        return None
    return {name: value_to_json(s.env[name]) for name in sorted(s.env)}


def result_to_json(result: AnalysisResult, cfg: AnalysisConfig, source: str = "") -> dict:
    kinds = {st.label: type(st).__name__ for st in walk(result.program.root)}
    labels = {}
    for label in sorted(result.program.labels, key=_label_key):
        span = result.program.labels[label]
        unreached = AbstractState.unreachable()
        labels[label] = {
            "kind": kinds[label],
            "line": span[0] if span else None,
            "col": span[1] if span else None,
            "pre": state_to_json(result.pre.get(label, unreached)),
            "post": state_to_json(result.post.get(label, unreached)),
        }
    return {
        "source": source,
        "config": {
            "widen_n": cfg.widen_n,
            "widen_delay": cfg.widen_delay,
            "max_iters": cfg.max_iters,
        },
        "labels": labels,
        "evals": [
            {"alias": alias, "label": label, "value": value_to_json(v)}
            for alias, label, v in result.eval_values()
        ],
        "diagnostics": list(result.diagnostics),
    }


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, ensure_ascii=False) + "\n"


def _state_lines(s: AbstractState, indent: str) -> list[str]:
    if not s.reachable:
        return [f"{indent}unreachable"]
    if not s.env:
        return [f"{indent}(no variables)"]
    return [f"{indent}{name} : {s.env[name]}" for name in sorted(s.env)]


def result_to_text(result: AnalysisResult) -> str:
    lines = []
    kinds = {st.label: type(st).__name__ for st in walk(result.program.root)}
    unreached = AbstractState.unreachable()
    for label in sorted(result.program.labels, key=_label_key):
        span = result.program.labels[label]
        where = f"line {span[0]}, col {span[1]}" if span else "synthetic"
        lines.append(f"{label} {kinds[label]} ({where})")
        lines.append("  before:")
        lines.extend(_state_lines(result.pre.get(label, unreached), "    "))
        lines.append("  after:")
        lines.extend(_state_lines(result.post.get(label, unreached), "    "))
    final = result.final_state()
    lines.append("final:")
    lines.extend(_state_lines(final, "    "))
    for alias, label, v in result.eval_values():
        lines.append(f"{alias} at {label}: {v}")
    return "\n".join(lines) + "\n"
