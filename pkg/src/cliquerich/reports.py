"""CSV and JSON emission for every report type."""

from __future__ import annotations

import csv
import io
import json
from typing import Iterable

from .errors import CliqueRichError
from .pipeline import PipelineTrace


def csv_text(rows: Iterable[Iterable]) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\r\n")
    for row in rows:
        writer.writerow(["" if x is None else x for x in row])
    return out.getvalue()


def dict_rows_csv(records: list[dict]) -> str:
    if not records:
        return ""
    header = list(records[0])
    return csv_text([header] + [[r.get(h) for h in header] for r in records])


def json_text(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def emit_trace_csv(trace: PipelineTrace) -> str:
    """Vertex-by-iteration matrix of participation values.

    Header: ``vertex,label,iter_0,...,iter_m,supernode``; one row per
    vertex of the input graph, the last column 1 for SUpernodes.
    """
    if not trace.records:
        raise CliqueRichError("trace has no iterations")
    header = ["vertex", "label"] + [f"iter_{r.iteration}" for r in trace.records] + ["supernode"]
    members = set(trace.supernodes)
    rows = [header]
    for v in range(trace.n):
        label = trace.labels[v] if trace.labels is not None else str(v)
        rows.append(
            [v, label]
            + [int(r.vertex_counts[v]) for r in trace.records]
            + [1 if v in members else 0]
        )
    return csv_text(rows)
