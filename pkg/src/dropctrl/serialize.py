"""File formats: matrices, automata, polytopes, systems, weights, reports.

Matrices travel as JSON {"rows": n, "cols": m, "data": [...]} (row major)
or as plain CSV.  Floats are written with repr, the shortest decimal that
round-trips binary64 exactly.  Non-finite worst-case values appear as the
strings "inf" / "-inf" in JSON and CSV so the documents stay standard.
"""

from __future__ import annotations

import csv
import io
import json
import math
from typing import Any

import numpy as np

from .automata import Automaton, Edge
from .lqr import LqrWeights
from .systems import SwitchedLinearSystem
from .worstcase import Polytope, WorstCaseReport

__all__ = [
    "matrix_to_dict",
    "matrix_from_dict",
    "matrix_to_csv",
    "matrix_from_csv",
    "load_matrix",
    "save_matrix",
    "vector_from_any",
    "load_vector",
    "automaton_to_dict",
    "automaton_from_dict",
    "load_automaton",
    "save_automaton",
    "polytope_from_dict",
    "load_polytope",
    "system_from_dict",
    "load_system",
    "weights_from_dict",
    "load_weights",
    "report_to_dict",
    "report_csv",
    "REPORT_CSV_HEADER",
]

REPORT_CSV_HEADER = ["problem", "mode", "worst_value", "argmax_signal", "wallclock"]


def _float_cell(x: float) -> str:
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return repr(float(x))


def _json_value(x: float | None) -> Any:
    if x is None:
        return None
    if math.isfinite(x):
        return float(x)
    return "inf" if x > 0 else "-inf"


def matrix_to_dict(M) -> dict:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return {"rows": M.shape[0], "cols": M.shape[1], "data": [float(v) for v in M.ravel()]}


def matrix_from_dict(d: dict) -> np.ndarray:
    try:
        rows, cols, data = int(d["rows"]), int(d["cols"]), d["data"]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"matrix object needs rows/cols/data fields: {exc}") from exc
    if len(data) != rows * cols:
        raise ValueError(f"matrix data has {len(data)} entries, expected {rows * cols}")
    return np.array(data, dtype=float).reshape(rows, cols)


def matrix_to_csv(M) -> str:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    return "\n".join(",".join(_float_cell(v) for v in row) for row in M) + "\n"


def matrix_from_csv(text: str) -> np.ndarray:
    rows = []
    for lineno, line in enumerate(text.strip().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError as exc:
            raise ValueError(f"CSV line {lineno}: {exc}") from exc
    if not rows or any(len(r) != len(rows[0]) for r in rows):
        raise ValueError("CSV matrix must be rectangular and nonempty")
    return np.array(rows, dtype=float)


def save_matrix(M, path: str) -> None:
    if str(path).endswith(".csv"):
        with open(path, "w") as fh:
            fh.write(matrix_to_csv(M))
    else:
        with open(path, "w") as fh:
            json.dump(matrix_to_dict(M), fh)


def load_matrix(path: str) -> np.ndarray:
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".csv"):
        return matrix_from_csv(text)
    return matrix_from_dict(json.loads(text))


def _coerce_matrix(obj, name: str) -> np.ndarray:
    if isinstance(obj, dict):
        return matrix_from_dict(obj)
    arr = np.asarray(obj, dtype=float)
    if arr.ndim != 2:
        raise ValueError(
            f"{name} must be a nested list of rows or a rows/cols/data object"
        )
    return arr


def vector_from_any(obj) -> np.ndarray:
    """Accept the matrix dict, a nested list, or a flat list; return 1-D."""
    if isinstance(obj, dict):
        return matrix_from_dict(obj).ravel()
    return np.asarray(obj, dtype=float).ravel()


def load_vector(path: str) -> np.ndarray:
    with open(path) as fh:
        text = fh.read()
    if str(path).endswith(".csv"):
        return matrix_from_csv(text).ravel()
    return vector_from_any(json.loads(text))


def automaton_to_dict(a: Automaton) -> dict:
    return {
        "nodes": sorted(a.nodes),
        "start": sorted(a.start_nodes),
        "edges": [{"from": e.src, "to": e.dst, "label": e.label} for e in a.edges],
    }


def automaton_from_dict(d: dict) -> Automaton:
    try:
        nodes = d["nodes"]
        start = d["start"]
        edges = [Edge(int(e["from"]), int(e["to"]), str(e["label"])) for e in d["edges"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"automaton object needs nodes/start/edges fields: {exc}") from exc
    return Automaton(nodes, edges, start)


def load_automaton(path: str) -> Automaton:
    with open(path) as fh:
        return automaton_from_dict(json.load(fh))


def save_automaton(a: Automaton, path: str) -> None:
    with open(path, "w") as fh:
        json.dump(automaton_to_dict(a), fh, indent=2)


def polytope_from_dict(d: dict) -> Polytope:
    if isinstance(d, dict):
        if "vertices" not in d:
            raise ValueError("polytope object needs a 'vertices' field")
        return Polytope(vertices=np.array(d["vertices"], dtype=float))
    return Polytope(vertices=np.array(d, dtype=float))


def load_polytope(path: str) -> Polytope:
    with open(path) as fh:
        return polytope_from_dict(json.load(fh))


def system_from_dict(d: dict) -> SwitchedLinearSystem:
    try:
        A = _coerce_matrix(d["A"], "A")
        B = _coerce_matrix(d["B"], "B")
        C = _coerce_matrix(d["C"], "C")
    except KeyError as exc:
        raise ValueError(f"system object needs A/B/C fields: missing {exc}") from exc
    return SwitchedLinearSystem(A, B, C)


def load_system(path: str) -> SwitchedLinearSystem:
    with open(path) as fh:
        return system_from_dict(json.load(fh))


def weights_from_dict(d: dict) -> LqrWeights:
    try:
        return LqrWeights(
            _coerce_matrix(d["Q"], "Q"),
            _coerce_matrix(d["R"], "R"),
            _coerce_matrix(d["Qf"], "Qf"),
            int(d["T"]),
        )
    except KeyError as exc:
        raise ValueError(f"weights object needs Q/R/Qf/T fields: missing {exc}") from exc


def load_weights(path: str) -> LqrWeights:
    with open(path) as fh:
        return weights_from_dict(json.load(fh))


def report_to_dict(report: WorstCaseReport) -> dict:
    return {
        "problem": report.problem,
        "mode": report.mode,
        "worst_value": _json_value(report.worst_value),
        "argmax_signal": None if report.argmax_signal is None else str(report.argmax_signal),
        "feasible": report.feasible,
        "wallclock": report.wallclock,
        "info": {k: _json_value(v) if isinstance(v, float) else v for k, v in report.info.items()},
        "per_signal": [
            {"signal": str(e.signal), "value": _json_value(e.value), "status": e.status}
            for e in report.per_signal
        ],
    }


def report_csv(report: WorstCaseReport, per_signal: bool = False) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf)
    writer.writerow(REPORT_CSV_HEADER)
    writer.writerow(
        [
            report.problem,
            report.mode,
            _float_cell(report.worst_value),
            "" if report.argmax_signal is None else str(report.argmax_signal),
            repr(report.wallclock),
        ]
    )
    if per_signal:
        writer.writerow([])
        writer.writerow(["signal", "value", "status"])
        for e in report.per_signal:
            writer.writerow([str(e.signal), _float_cell(e.value), e.status])
    return buf.getvalue()
